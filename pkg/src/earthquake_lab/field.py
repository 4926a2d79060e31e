"""Vector fields on the circle, stored through their support functions.

A field X on S^1 is written X(z) = i z phi(z); ``phi`` is its support
function.  Four concrete representations are provided:

* :class:`Killing` -- restriction of a Killing field, phi(z) = <(1, z), sigma>;
* :class:`PiecewiseAffine` -- Killing on each arc of a partition of the circle;
* :class:`TrigPoly` -- a trigonometric polynomial;
* :class:`Sampled` -- tabulated values, linearly interpolated in the angle or
  defined only at the nodes (for semicontinuous fields with atoms).

Angles are radians.  All evaluation methods accept arrays.
"""

from __future__ import annotations

from dataclasses import dataclass, field as dc_field

import numpy as np

from . import mink
from .errors import NoInterpolation

TWO_PI = 2.0 * np.pi
EPS_PW = 1e-9
NODE_TOL = 1e-12


class CircleField:
    """Common interface of the support-function representations."""

    continuous = True

    def support(self, theta):
        raise NotImplementedError

    def field(self, theta):
        """Euclidean components of X at the circle point of angle theta."""
        phi = np.asarray(self.support(theta), dtype=float)
        theta = np.asarray(theta, dtype=float)
        return phi[..., None] * np.stack([-np.sin(theta), np.cos(theta)], axis=-1)

    def breakpoints(self):
        """Angles that must be sampled for an exact discrete envelope."""
        return np.empty(0)

    def node_values(self, thetas):
        return self.support(thetas)

    def __call__(self, theta):
        return self.support(theta)


@dataclass(frozen=True, eq=False)
class Killing(CircleField):
    sigma: np.ndarray

    def __post_init__(self):
        object.__setattr__(self, "sigma", np.asarray(self.sigma, dtype=float).reshape(3))

    def support(self, theta):
        theta = np.asarray(theta, dtype=float)
        s0, s1, s2 = self.sigma
        return -s0 + s1 * np.cos(theta) + s2 * np.sin(theta)


@dataclass(frozen=True, eq=False)
class PiecewiseAffine(CircleField):
    """Support function <(1, z), planes[i]> on the arc [bounds[i], bounds[i+1]).

    ``bounds`` is strictly increasing with total span below 2π; the last arc
    wraps around to bounds[0] + 2π.
    """

    planes: np.ndarray
    bounds: np.ndarray
    continuous: bool = True

    def __post_init__(self):
        planes = np.asarray(self.planes, dtype=float).reshape(-1, 3)
        bounds = np.asarray(self.bounds, dtype=float).reshape(-1)
        if len(planes) != len(bounds) or len(planes) == 0:
            raise ValueError("need one plane per arc")
        if np.any(np.diff(bounds) <= 0) or bounds[-1] - bounds[0] >= TWO_PI:
            raise ValueError("arc bounds must be strictly increasing within one turn")
        object.__setattr__(self, "planes", planes)
        object.__setattr__(self, "bounds", bounds)
        if self.continuous:
            for i in range(len(planes)):
                j = (i + 1) % len(planes)
                b = bounds[j]
                jump = Killing(planes[i]).support(b) - Killing(planes[j]).support(b)
                if abs(jump) > EPS_PW:
                    raise ValueError("discontinuity %.3g at arc bound %.6f" % (jump, b))

    def arc_index(self, theta):
        t = np.mod(np.asarray(theta, dtype=float) - self.bounds[0], TWO_PI)
        idx = np.searchsorted(self.bounds - self.bounds[0], t, side="right") - 1
        return np.clip(idx, 0, len(self.bounds) - 1)

    def support(self, theta):
        theta = np.asarray(theta, dtype=float)
        s = self.planes[self.arc_index(theta)]
        return -s[..., 0] + s[..., 1] * np.cos(theta) + s[..., 2] * np.sin(theta)

    def breakpoints(self):
        return np.mod(self.bounds, TWO_PI)


@dataclass(frozen=True, eq=False)
class TrigPoly(CircleField):
    """c0 + sum_k cos_coeffs[k-1] cos(k θ) + sin_coeffs[k-1] sin(k θ)."""

    c0: float
    cos_coeffs: np.ndarray = dc_field(default_factory=lambda: np.zeros(0))
    sin_coeffs: np.ndarray = dc_field(default_factory=lambda: np.zeros(0))

    def __post_init__(self):
        a = np.asarray(self.cos_coeffs, dtype=float).reshape(-1)
        b = np.asarray(self.sin_coeffs, dtype=float).reshape(-1)
        n = max(len(a), len(b))
        object.__setattr__(self, "cos_coeffs", np.pad(a, (0, n - len(a))))
        object.__setattr__(self, "sin_coeffs", np.pad(b, (0, n - len(b))))
        object.__setattr__(self, "c0", float(self.c0))

    @property
    def degree(self):
        return len(self.cos_coeffs)

    def support(self, theta):
        theta = np.asarray(theta, dtype=float)
        out = np.full(theta.shape, self.c0)
        for k, (a, b) in enumerate(zip(self.cos_coeffs, self.sin_coeffs), start=1):
            out = out + a * np.cos(k * theta) + b * np.sin(k * theta)
        return out

    def plus_killing(self, sigma):
        s0, s1, s2 = np.asarray(sigma, dtype=float)
        a = np.pad(self.cos_coeffs, (0, max(0, 1 - self.degree)))
        b = np.pad(self.sin_coeffs, (0, max(0, 1 - self.degree)))
        a[0] += s1
        b[0] += s2
        return TrigPoly(self.c0 - s0, a, b)


@dataclass(frozen=True, eq=False)
class Sampled(CircleField):
    """Tabulated support function.

    With ``interp="linear"`` values are interpolated periodically in the angle.
    With ``interp="none"`` the field is only defined at the nodes; ``atoms``
    lists node indices carrying isolated values (semicontinuous fields).
    """

    thetas: np.ndarray
    phis: np.ndarray
    interp: str = "linear"
    atoms: tuple = ()

    def __post_init__(self):
        th = np.asarray(self.thetas, dtype=float).reshape(-1)
        ph = np.asarray(self.phis, dtype=float).reshape(-1)
        if len(th) != len(ph) or len(th) < 3:
            raise ValueError("need at least 3 nodes with one value each")
        if np.any(np.diff(th) <= 0) or th[-1] - th[0] >= TWO_PI:
            raise ValueError("nodes must be strictly increasing within one turn")
        if self.interp not in ("linear", "none"):
            raise ValueError("interp must be 'linear' or 'none'")
        object.__setattr__(self, "thetas", th)
        object.__setattr__(self, "phis", ph)
        object.__setattr__(self, "atoms", tuple(int(i) for i in self.atoms))

    @property
    def continuous(self):
        return self.interp == "linear" and not self.atoms

    def node_index(self, theta):
        """Index of the node at angle theta, or -1 when theta is off-node."""
        t = np.mod(np.asarray(theta, dtype=float) - self.thetas[0], TWO_PI) + self.thetas[0]
        idx = np.clip(np.searchsorted(self.thetas, t), 0, len(self.thetas) - 1)
        best = idx.copy()
        for cand in (idx - 1, (idx + 1) % len(self.thetas), np.zeros_like(idx)):
            d_best = _angle_gap(self.thetas[best], t)
            d_cand = _angle_gap(self.thetas[cand], t)
            best = np.where(d_cand < d_best, cand, best)
        return np.where(_angle_gap(self.thetas[best], t) <= NODE_TOL, best, -1)

    def support(self, theta):
        theta = np.asarray(theta, dtype=float)
        if self.interp == "linear":
            return np.interp(np.mod(theta, TWO_PI), np.mod(self.thetas, TWO_PI)[self._order],
                             self.phis[self._order], period=TWO_PI)
        idx = self.node_index(theta)
        if np.any(idx < 0):
            raise NoInterpolation("field without interpolation queried off its nodes")
        return self.phis[idx]

    @property
    def _order(self):
        return np.argsort(np.mod(self.thetas, TWO_PI), kind="stable")

    def breakpoints(self):
        return np.mod(self.thetas, TWO_PI)


def _angle_gap(a, b):
    d = np.mod(np.asarray(a) - np.asarray(b), TWO_PI)
    return np.minimum(d, TWO_PI - d)


def support_at(f, theta):
    return f.support(theta)


def field_at(f, theta):
    return f.field(theta)


def add_killing(f, sigma):
    """The field f + Λ(sigma), in the same representation as f."""
    sigma = np.asarray(sigma, dtype=float)
    if isinstance(f, Killing):
        return Killing(f.sigma + sigma)
    if isinstance(f, PiecewiseAffine):
        return PiecewiseAffine(f.planes + sigma, f.bounds, f.continuous)
    if isinstance(f, TrigPoly):
        return f.plus_killing(sigma)
    if isinstance(f, Sampled):
        return Sampled(f.thetas, f.phis + Killing(sigma).support(f.thetas), f.interp, f.atoms)
    raise TypeError(type(f))


def scaled(f, t):
    """The field t·f."""
    if isinstance(f, Killing):
        return Killing(t * f.sigma)
    if isinstance(f, PiecewiseAffine):
        return PiecewiseAffine(t * f.planes, f.bounds, f.continuous)
    if isinstance(f, TrigPoly):
        return TrigPoly(t * f.c0, t * f.cos_coeffs, t * f.sin_coeffs)
    if isinstance(f, Sampled):
        return Sampled(f.thetas, t * f.phis, f.interp, f.atoms)
    raise TypeError(type(f))


def _transport_bounds(A, bounds):
    images = mink.boundary_action(A, bounds)
    steps = np.mod(np.diff(images), TWO_PI)
    return images[0] + np.concatenate([[0.0], np.cumsum(steps)])


def act(f, A, v=None, n_nodes=4096):
    """The field A_*f + Λ(v).

    Killing and piecewise-affine inputs stay exact.  Trigonometric and sampled
    inputs become :class:`Sampled` on the pushed-forward node set (a uniform
    grid of ``n_nodes`` angles for trigonometric polynomials).
    """
    A = np.asarray(A, dtype=float)
    v = np.zeros(3) if v is None else np.asarray(v, dtype=float)
    if np.array_equal(A, np.eye(3)):
        return add_killing(f, v)
    if isinstance(f, Killing):
        return Killing(A @ f.sigma + v)
    if isinstance(f, PiecewiseAffine):
        return PiecewiseAffine(f.planes @ A.T + v, _transport_bounds(A, f.bounds), f.continuous)
    if isinstance(f, TrigPoly):
        thetas = np.arange(n_nodes) * (TWO_PI / n_nodes)
        src = Sampled(thetas, f.support(thetas))
    elif isinstance(f, Sampled):
        src = f
    else:
        raise TypeError(type(f))
    images = mink.boundary_action(A, src.thetas)
    values = src.phis / mink.conformal_factor(A, src.thetas) + Killing(v).support(images)
    order = np.argsort(images, kind="stable")
    rank = np.empty_like(order)
    rank[order] = np.arange(len(order))
    atoms = tuple(sorted(int(rank[i]) for i in src.atoms))
    return Sampled(images[order], values[order], src.interp, atoms)


def killing_through(a, b, c):
    """sigma with support values a, b, c at the angles 0, π/2, π."""
    return np.array([-(a + c) / 2.0, (a - c) / 2.0, b - (a + c) / 2.0])


def normalize3(f):
    """Subtract the Killing field matching f at the angles 0, π/2, π.

    Returns the normalized field (vanishing at those three points) and the
    subtracted Minkowski vector.
    """
    a, b, c = (float(f.support(t)) for t in (0.0, np.pi / 2, np.pi))
    sigma = killing_through(a, b, c)
    return add_killing(f, -sigma), sigma
