"""Exceptions raised by earthquake_lab."""


class EarthquakeLabError(ValueError):
    """Base class for all library errors."""


class NotHyperbolic(EarthquakeLabError):
    pass


class NotTransverse(EarthquakeLabError):
    pass


class NonSpacelikeDelta(EarthquakeLabError):
    pass


class NoInterpolation(EarthquakeLabError):
    pass


class DegenerateInput(EarthquakeLabError):
    pass


class OutOfDomain(EarthquakeLabError):
    pass


class DegenerateQuadruple(EarthquakeLabError):
    pass


class OnLeaf(EarthquakeLabError):
    pass
