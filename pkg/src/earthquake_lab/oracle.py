"""Independent references for the tests.

Nothing here uses the hull, the point-location index or the closed-form
Jacobian: Killing fields are evaluated from their expanded coordinate
formula, envelopes by enumerating sample triples, earthquakes by taking the
argmax of finitely many planes, pushforwards by central differences.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations

import numpy as np

from .errors import OnLeaf, OutOfDomain
from .field import TWO_PI, PiecewiseAffine, Sampled


def killing_closed_form(sigma, p):
    """Killing field of sigma at the Klein point p, expanded by hand."""
    s0, s1, s2 = np.asarray(sigma, dtype=float)
    x, y = np.asarray(p, dtype=float)[..., 0], np.asarray(p, dtype=float)[..., 1]
    t = x * s2 - y * s1
    return np.stack([x * t + y * s0 - s2, y * t + s1 - x * s0], axis=-1)


def simple_eq_oracle(b, p):
    """Simple earthquake along the horizontal diameter with weight b (leaf value b/2)."""
    p = np.asarray(p, dtype=float)
    x, y = p[..., 0], p[..., 1]
    scale = np.where(y > 0, b, np.where(y < 0, 0.0, b / 2.0))
    return scale[..., None] * np.stack([x * x - 1.0, x * y], axis=-1)


@dataclass(frozen=True)
class FiniteEarthquakeSpec:
    """Planes whose pointwise max (Left) or min (Right) is the envelope."""

    planes: np.ndarray
    side: str = "left"

    def values(self, p):
        p = np.asarray(p, dtype=float)
        s = np.asarray(self.planes, dtype=float)
        return -s[:, 0] + p[..., None, 0] * s[:, 1] + p[..., None, 1] * s[:, 2]

    def support(self, theta):
        z = np.stack([np.cos(theta), np.sin(theta)], axis=-1)
        v = self.values(z)
        return v.max(axis=-1) if self.side == "left" else v.min(axis=-1)


def active_index(spec, p, tie=1e-12):
    v = spec.values(p)
    if spec.side != "left":
        v = -v
    order = np.argsort(-v)
    if len(order) > 1 and v[order[0]] - v[order[1]] <= tie * (1.0 + abs(v[order[0]])):
        raise OnLeaf("point lies on a leaf of the finite earthquake")
    return int(order[0])


def finite_eq_oracle(spec, p):
    """Killing field of the active plane at p."""
    return killing_closed_form(spec.planes[active_index(spec, p)], p)


def chord_normal(alpha, beta):
    """Unit spacelike vector whose axis is the chord from alpha to beta, negative at the origin."""
    mu, half = 0.5 * (alpha + beta), 0.5 * (beta - alpha)
    n = np.array([np.cos(half), np.cos(mu), np.sin(mu)]) / abs(np.sin(half))
    return n if n[0] > 0 else -n


def _random_matching(rng, idx):
    """Random non-crossing perfect matching of the cyclically ordered indices."""
    if not idx:
        return []
    j = 2 * int(rng.integers(0, len(idx) // 2)) + 1
    return [(idx[0], idx[j])] + _random_matching(rng, idx[1:j]) + _random_matching(rng, idx[j + 1:])


def random_finite_spec(rng, k_max=6, side="left", min_arc=0.05, bound=2.0, tries=10000):
    """Random finite earthquake with at most k_max planes, entries in [-bound, bound].

    Disjoint chords with positive weights are drawn first; the plane of a
    region is sigma0 plus the weighted normals of the chords separating it
    from the origin, so the pointwise max of the planes is convex and has no
    vertex inside the disk.  Returns the spec and its exact field.
    """
    for _ in range(tries):
        m = int(rng.integers(1, k_max))
        ends = np.sort(rng.uniform(0.0, TWO_PI, 2 * m))
        gaps = np.diff(np.append(ends, ends[0] + TWO_PI))
        if np.min(gaps) < min_arc:
            continue
        pairs = _random_matching(rng, list(range(2 * m)))
        normals = np.array([chord_normal(ends[i], ends[j]) for i, j in pairs])
        weights = rng.uniform(0.1, 1.0, m)
        sigma0 = rng.uniform(-0.5, 0.5, 3)
        mids = ends + 0.5 * gaps
        z = np.stack([np.ones_like(mids), np.cos(mids), np.sin(mids)], axis=-1)
        positive = (-z[:, :1] * normals[:, 0] + z[:, 1:2] * normals[:, 1] + z[:, 2:] * normals[:, 2]) > 0
        arc_planes = sigma0 + positive.astype(float) @ (weights[:, None] * normals)
        if np.max(np.abs(arc_planes)) > bound:
            continue
        planes = np.unique(np.round(arc_planes, 14), axis=0)
        sign = 1.0 if side == "left" else -1.0
        spec = FiniteEarthquakeSpec(sign * planes, side)
        return spec, PiecewiseAffine(sign * arc_planes, ends)
    raise RuntimeError("no admissible finite earthquake found")


def _interior_vertex(spec):
    """True when three active planes of the spec meet inside the disk."""
    planes = np.asarray(spec.planes, dtype=float)
    for i, j, k in combinations(range(len(planes)), 3):
        d1, d2 = planes[j] - planes[i], planes[k] - planes[i]
        M = np.array([[d1[1], d1[2]], [d2[1], d2[2]]])
        if abs(np.linalg.det(M)) < 1e-14:
            continue
        eta = np.linalg.solve(M, [d1[0], d2[0]])
        if eta @ eta >= 1.0:
            continue
        v = spec.values(eta)
        top = v.max() if spec.side == "left" else v.min()
        if abs(v[i] - top) <= 1e-9 * (1.0 + abs(top)):
            return True
    return False


def oracle_nodes(f, M):
    """M uniform angles plus exact breakpoints (or the nodes of a field without interpolation)."""
    if isinstance(f, Sampled) and f.interp == "none":
        return np.array(f.thetas)
    th = np.concatenate([np.arange(M) * (TWO_PI / M), np.mod(f.breakpoints(), TWO_PI)])
    th = np.sort(np.mod(th, TWO_PI))
    keep = np.append(True, np.diff(th) > 1e-12)
    return th[keep]


def envelope_oracle(f, p, M=40, nodes=None, tol=1e-10):
    """Brute-force convex envelope at p: best plane through three samples below all samples."""
    th = oracle_nodes(f, M) if nodes is None else np.asarray(nodes, dtype=float)
    phi = f.support(th)
    x, y = np.cos(th), np.sin(th)
    tri = np.array(list(combinations(range(len(th)), 3)))
    A = np.stack([np.ones(tri.shape), x[tri], y[tri]], axis=-1)
    ok = np.abs(np.linalg.det(A)) > 1e-14
    coef = np.linalg.solve(A[ok], phi[tri[ok]][..., None])[..., 0]
    below = coef[:, :1] + coef[:, 1:2] * x + coef[:, 2:3] * y <= phi + tol * (1.0 + np.abs(phi))
    good = coef[np.all(below, axis=1)]
    p = np.asarray(p, dtype=float)
    return float(np.max(good[:, 0] + good[:, 1] * p[0] + good[:, 2] * p[1]))


def pushforward_fd(A, p, v, h=1e-5):
    """Central difference of the Klein action of A at p in direction v."""
    A = np.asarray(A, dtype=float)
    p = np.asarray(p, dtype=float)
    v = np.asarray(v, dtype=float)
    for q in (p + h * v, p - h * v):
        if q @ q >= 1.0:
            raise OutOfDomain("difference stencil leaves the disk")

    def act(q):
        w = A @ np.array([1.0, q[0], q[1]])
        return w[1:] / w[0]

    return (act(p + h * v) - act(p - h * v)) / (2.0 * h)
