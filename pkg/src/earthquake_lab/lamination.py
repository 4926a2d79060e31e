"""Measured bending laminations: leaves, transverse measures, Thurston norm.

Leaves are complete geodesics, i.e. Klein chords between two ideal points,
each carrying a positive weight.  Arcs are open geodesic segments: an arc
whose endpoint sits on a leaf does not count as crossing it.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from . import envelope as env
from . import mink
from .errors import OutOfDomain

MIN_SEPARATION = 1e-9
CHUNK = 1 << 22


@dataclass(frozen=True)
class Leaf:
    a_theta: float
    b_theta: float
    weight: float


@dataclass(frozen=True)
class MeasuredLamination:
    leaves: tuple = ()

    def __post_init__(self):
        object.__setattr__(self, "leaves", tuple(self.leaves))
        for leaf in self.leaves:
            gap = abs(np.mod(leaf.b_theta - leaf.a_theta + np.pi, 2 * np.pi) - np.pi)
            if gap < MIN_SEPARATION:
                raise ValueError("leaf endpoints coincide")
            if leaf.weight <= 0:
                raise ValueError("leaf weights must be positive")

    def __len__(self):
        return len(self.leaves)

    @property
    def weights(self):
        return np.array([leaf.weight for leaf in self.leaves])

    @property
    def endpoints(self):
        """Array (L, 2, 2) of chord endpoints."""
        if not self.leaves:
            return np.empty((0, 2, 2))
        th = np.array([[leaf.a_theta, leaf.b_theta] for leaf in self.leaves])
        return mink.circle_point(th)

    @property
    def total_mass(self):
        return float(np.sum(self.weights)) if self.leaves else 0.0


def from_envelope(e, side=env.Side.LOWER):
    """Bending lamination of one envelope side; empty for flat envelopes."""
    if e.is_flat:
        return MeasuredLamination()
    return MeasuredLamination(
        Leaf(edge.a_theta, edge.b_theta, edge.weight) for edge in env.bending_edges(e, side)
    )


def transport(lam, A):
    """Image of the lamination under the isometry A."""
    leaves = []
    for leaf in lam.leaves:
        a, b = mink.boundary_action(A, np.array([leaf.a_theta, leaf.b_theta]))
        leaves.append(Leaf(float(min(a, b)), float(max(a, b)), leaf.weight))
    return MeasuredLamination(leaves)


def _strictly_inside(t, lo, hi):
    """t strictly inside the counter-clockwise arc from lo to hi."""
    span = np.mod(hi - lo, 2 * np.pi)
    rel = np.mod(t - lo, 2 * np.pi)
    return (rel > 0) & (rel < span)


def is_disjoint(lam):
    """True when no two chords cross inside the open disk."""
    if len(lam) < 2:
        return True
    th = np.array([[leaf.a_theta, leaf.b_theta] for leaf in lam.leaves])
    a, b = th[:, 0], th[:, 1]
    for k in range(len(th) - 1):
        c, d = a[k + 1:], b[k + 1:]
        shared = (np.abs(np.mod(c - a[k] + np.pi, 2 * np.pi) - np.pi) < MIN_SEPARATION) | (
            np.abs(np.mod(c - b[k] + np.pi, 2 * np.pi) - np.pi) < MIN_SEPARATION) | (
            np.abs(np.mod(d - a[k] + np.pi, 2 * np.pi) - np.pi) < MIN_SEPARATION) | (
            np.abs(np.mod(d - b[k] + np.pi, 2 * np.pi) - np.pi) < MIN_SEPARATION)
        cross = _strictly_inside(c, a[k], b[k]) != _strictly_inside(d, a[k], b[k])
        if np.any(cross & ~shared):
            return False
    return True


def hyperbolic_arc(mid, direction, length=1.0):
    """Endpoints of the geodesic segment of given length centred at mid.

    Works on the hyperboloid: P cosh(s) + u sinh(s) with u the unit tangent
    at P = lift(mid) pointing along ``direction``.
    """
    mid = np.asarray(mid, dtype=float)
    direction = np.asarray(direction, dtype=float)
    if np.any(np.sum(mid * mid, axis=-1) >= 1.0):
        raise OutOfDomain("arc midpoint outside the disk")
    P = mink.lift(mid)
    s = np.sqrt(1.0 - np.sum(mid * mid, axis=-1))[..., None]
    dot = np.sum(mid * direction, axis=-1)[..., None]
    tangent = np.concatenate([np.zeros_like(s), direction], axis=-1) / s + mink.homogenize(mid) * dot / s**3
    u = tangent / np.sqrt(mink.inner(tangent, tangent))[..., None]
    half = 0.5 * np.asarray(length, dtype=float)[..., None] if np.ndim(length) else 0.5 * length
    p = mink.radial_projection(P * np.cosh(half) - u * np.sinh(half))
    q = mink.radial_projection(P * np.cosh(half) + u * np.sinh(half))
    return p, q


def _orient(a, b, c):
    return (b[..., 0] - a[..., 0]) * (c[..., 1] - a[..., 1]) - (b[..., 1] - a[..., 1]) * (c[..., 0] - a[..., 0])


def crossing_matrix(lam, p, q):
    """Boolean (M, L): does the open arc p[m] -> q[m] cross leaf l."""
    ends = lam.endpoints
    a, b = ends[None, :, 0], ends[None, :, 1]
    p, q = np.asarray(p)[:, None], np.asarray(q)[:, None]
    o1 = np.sign(_orient(a, b, p))
    o2 = np.sign(_orient(a, b, q))
    o3 = np.sign(_orient(p, q, a))
    o4 = np.sign(_orient(p, q, b))
    return (o1 * o2 < 0) & (o3 * o4 < 0)


def transverse_measures(lam, p, q):
    """Transverse measure of many arcs at once, arrays of shape (M, 2)."""
    p = np.asarray(p, dtype=float).reshape(-1, 2)
    q = np.asarray(q, dtype=float).reshape(-1, 2)
    if len(lam) == 0:
        return np.zeros(len(p))
    w = lam.weights
    out = np.empty(len(p))
    step = max(1, CHUNK // len(lam))
    for start in range(0, len(p), step):
        sl = slice(start, start + step)
        out[sl] = crossing_matrix(lam, p[sl], q[sl]) @ w
    return out


def transverse_measure(lam, arc):
    """Measure of one arc given as its endpoint pair (p, q)."""
    p, q = arc
    return float(transverse_measures(lam, p, q)[0])


def _leaf_arcs(lam, cap=1024):
    """Unit arcs orthogonal to the leaves, centred on and next to their closest point to the origin.

    At most ``cap`` leaves are used, the heaviest ones first.
    """
    ends = lam.endpoints
    if len(ends) > cap:
        ends = ends[np.sort(np.argsort(-lam.weights, kind="stable")[:cap])]
    mid = 0.5 * (ends[:, 0] + ends[:, 1])
    chord = ends[:, 1] - ends[:, 0]
    normal = np.stack([-chord[:, 1], chord[:, 0]], axis=-1)
    normal /= np.linalg.norm(normal, axis=-1, keepdims=True)
    r = np.linalg.norm(mid, axis=-1)
    # mid is the Euclidean (and hyperbolic) foot of the perpendicular from the origin
    mids, dirs = [mid], [normal]
    for shift in (-0.5, 0.5):
        # move the centre by a hyperbolic distance along the normal geodesic through mid
        p, q = hyperbolic_arc(mid * (r < 1)[:, None], normal, 2 * abs(shift))
        mids.append(p if shift < 0 else q)
        dirs.append(normal)
    return np.concatenate(mids), np.concatenate(dirs)


@dataclass(frozen=True)
class ThurstonEstimate:
    value: float
    arc: tuple
    mids: np.ndarray
    dirs: np.ndarray
    measures: np.ndarray


def _random_arcs(rng, n):
    rho = rng.uniform(0.0, 3.0, n)
    ang = rng.uniform(0, 2 * np.pi, n)
    mids = np.tanh(rho)[:, None] * np.stack([np.cos(ang), np.sin(ang)], axis=-1)
    phi = rng.uniform(0, np.pi, n)
    return mids, np.stack([np.cos(phi), np.sin(phi)], axis=-1)


def _shift_mid(mid, direction, dist):
    p, q = hyperbolic_arc(mid, direction, 2 * np.abs(dist))
    return np.where((dist >= 0)[..., None], q, p)


def thurston_search(lam, n_samples=2000, refine_iters=5, seed=0, top=8):
    """Largest transverse measure of unit arcs among seeded candidates, with local refinement."""
    if len(lam) == 0:
        z = np.zeros((1, 2))
        return ThurstonEstimate(0.0, (z[0], z[0]), z, np.array([[1.0, 0.0]]), np.zeros(1))
    rng = np.random.default_rng(seed)
    m1, d1 = _leaf_arcs(lam)
    m2, d2 = _random_arcs(rng, n_samples)
    mids = np.concatenate([m1, m2])
    dirs = np.concatenate([d1, d2])
    meas = transverse_measures(lam, *hyperbolic_arc(mids, dirs))
    all_m, all_d, all_v = [mids], [dirs], [meas]
    order = np.argsort(-meas, kind="stable")[:top]
    best_m, best_d, best_v = mids[order], dirs[order], meas[order]
    step = 0.25
    for _ in range(refine_iters):
        for _ in range(8):
            k = len(best_m)
            along = rng.normal(0.0, step, k)
            across = rng.normal(0.0, step, k)
            perp = np.stack([-best_d[:, 1], best_d[:, 0]], axis=-1)
            cand_m = _shift_mid(_shift_mid(best_m, best_d, along), perp, across)
            cand_m *= np.minimum(1.0, 0.999999 / np.linalg.norm(cand_m, axis=-1, keepdims=True))
            turn = rng.normal(0.0, step, k)
            c, s = np.cos(turn), np.sin(turn)
            cand_d = np.stack([c * best_d[:, 0] - s * best_d[:, 1], s * best_d[:, 0] + c * best_d[:, 1]], axis=-1)
            cand_v = transverse_measures(lam, *hyperbolic_arc(cand_m, cand_d))
            all_m.append(cand_m)
            all_d.append(cand_d)
            all_v.append(cand_v)
            better = cand_v > best_v
            best_m[better], best_d[better], best_v[better] = cand_m[better], cand_d[better], cand_v[better]
        step *= 0.5
    mids, dirs, meas = np.concatenate(all_m), np.concatenate(all_d), np.concatenate(all_v)
    k = int(np.argmax(meas))
    p, q = hyperbolic_arc(mids[k], dirs[k])
    return ThurstonEstimate(float(meas[k]), (p, q), mids, dirs, meas)


def thurston_norm(lam, n_samples=2000, refine_iters=5, seed=0):
    """Lower-bound estimate of the Thurston norm (sup over unit arcs)."""
    return thurston_search(lam, n_samples, refine_iters, seed).value


def sigma_gap_bound(e, side, mids, dirs):
    """max over arcs of |sigma(q) - sigma(p)|, which dominates each arc's transverse measure."""
    hull = e.hull(side)
    p, q = hyperbolic_arc(mids, dirs)
    keep = (np.sum(p * p, axis=-1) < (1 - 1e-9) ** 2) & (np.sum(q * q, axis=-1) < (1 - 1e-9) ** 2)
    if not np.any(keep):
        return 0.0
    d = hull.sigmas[hull.locate(q[keep])] - hull.sigmas[hull.locate(p[keep])]
    return float(np.max(mink.norm(d)))


def to_json(lam, side, N):
    return {
        "leaves": [{"a_theta": l.a_theta, "b_theta": l.b_theta, "weight": l.weight} for l in lam.leaves],
        "side": side,
        "N": N,
    }


def from_json(doc):
    return MeasuredLamination(Leaf(float(d["a_theta"]), float(d["b_theta"]), float(d["weight"]))
                              for d in doc["leaves"])
