"""Infinitesimal earthquakes of vector fields on the circle.

Given a circle vector field through its support function, the package
builds the convex and concave envelopes over the Klein disk, reads off the
left and right earthquake extensions and their bending laminations, and
estimates the width, cross-ratio and Thurston norms.
"""

from .envelope import EnvelopePair, Side, build, eval_lower, eval_upper, support_planes_at
from .earthquake import EarthquakeField, EqSide, eval_eq
from .field import Killing, PiecewiseAffine, Sampled, TrigPoly, act, normalize3
from .lamination import MeasuredLamination, from_envelope
from .norms import cross_ratio_norm, verify_th2, width

__version__ = "0.1.0"

__all__ = [
    "EnvelopePair", "Side", "build", "eval_lower", "eval_upper", "support_planes_at",
    "EarthquakeField", "EqSide", "eval_eq",
    "Killing", "PiecewiseAffine", "Sampled", "TrigPoly", "act", "normalize3",
    "MeasuredLamination", "from_envelope",
    "cross_ratio_norm", "verify_th2", "width",
]
