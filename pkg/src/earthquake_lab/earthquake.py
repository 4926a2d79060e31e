"""Infinitesimal earthquakes read off the envelopes.

At a point p of the disk the left earthquake E^- is the Killing field of the
support plane of the convex envelope above p, and the right earthquake E^+
uses the concave envelope.  On a bending edge two support planes exist; the
edge policy decides which combination of them is used.
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum

import numpy as np

from . import envelope as env
from . import mink
from .errors import NonSpacelikeDelta, NotTransverse, OnLeaf


class EqSide(Enum):
    LEFT = "left"
    RIGHT = "right"

    @property
    def hull_side(self):
        return env.Side.LOWER if self is EqSide.LEFT else env.Side.UPPER


class Orientation(Enum):
    LEFT = "left"
    RIGHT = "right"
    ZERO = "zero"


@dataclass(frozen=True)
class Blend:
    """sigma = (1 - s) * sigma1 + s * sigma2 on a bending edge."""

    s: float

    def __post_init__(self):
        if not 0.0 <= self.s <= 1.0:
            raise ValueError("blend parameter must lie in [0, 1]")

    def mix(self, sigma1, sigma2):
        return (1.0 - self.s) * np.asarray(sigma1) + self.s * np.asarray(sigma2)


def Medial():
    return Blend(0.5)


def ExtremeFirst():
    return Blend(0.0)


def ExtremeSecond():
    return Blend(1.0)


ALL_POLICIES = {"medial": Medial(), "first": ExtremeFirst(), "second": ExtremeSecond()}
# one interior blend stands in for the Blend family when comparing policies
COMPARED_POLICIES = {**ALL_POLICIES, "blend=0.3": Blend(0.3)}


def parse_policy(text):
    """'medial', 'first', 'second' or 'blend=S'."""
    if text in ALL_POLICIES:
        return ALL_POLICIES[text]
    if text.startswith("blend="):
        return Blend(float(text.split("=", 1)[1]))
    raise ValueError("unknown edge policy %r" % text)


def policy_name(policy):
    for name, p in ALL_POLICIES.items():
        if p == policy:
            return name
    return "blend=%r" % policy.s


@dataclass(frozen=True)
class EarthquakeField:
    envelope: env.EnvelopePair
    side: EqSide = EqSide.LEFT
    policy: Blend = Blend(0.5)

    @property
    def hull(self):
        return self.envelope.hull(self.side.hull_side)

    def sigma_at(self, pts):
        """Minkowski vector of the Killing field used at each point."""
        pts = np.asarray(pts, dtype=float)
        mink.check_disk(pts)
        flat = pts.reshape(-1, 2)
        h = self.hull
        facets = h.locate(flat)
        sig = h.sigmas[facets].copy()
        hits = h.edge_hits(flat, facets)
        count = np.sum(hits >= 0, axis=-1)
        for n in np.nonzero(count == 1)[0]:
            edge = h.edges[int(hits[n][hits[n] >= 0][0])]
            sig[n] = self.policy.mix(edge.sigma_left, edge.sigma_right)
        for n in np.nonzero(count > 1)[0]:
            sigmas = env.support_planes_at(self.envelope, flat[n], self.side.hull_side).sigmas
            sig[n] = self.policy.mix(sigmas[0], sigmas[-1])
        return sig.reshape(pts.shape[:-1] + (3,))

    def __call__(self, pts):
        return eval_eq(self, pts)


def eval_eq(eq, pts):
    """E(p) = killing_eval(sigma(p), p)."""
    pts = np.asarray(pts, dtype=float)
    return mink.killing_eval(eq.sigma_at(pts), pts)


@dataclass(frozen=True)
class ComparisonField:
    delta: np.ndarray
    axis: tuple | None
    orientation: Orientation
    crossing: np.ndarray | None = None


def orientation_of(delta, p1, p2):
    """Classify the translation of the Killing field delta seen from p1 towards p2.

    Causal type is tested on delta rescaled to unit Euclidean norm, so that
    small bending angles are not mistaken for parabolic fields.
    """
    precise = np.asarray(delta)
    if precise.dtype != np.longdouble:
        precise = precise.astype(float)
    delta = precise.astype(float)
    p1 = np.asarray(p1, dtype=float)
    p2 = np.asarray(p2, dtype=float)
    size = np.sqrt(np.sum(precise * precise))
    if size <= mink.EPS_CAUSAL:
        return ComparisonField(delta, None, Orientation.ZERO)
    unit = (precise / size).astype(float)
    kind = mink.classify(unit)
    if kind is not mink.KillingType.HYPERBOLIC:
        raise NonSpacelikeDelta("comparison field is %s: %r" % (kind.value, delta))
    f1 = mink.inner(mink.homogenize(p1), unit)
    f2 = mink.inner(mink.homogenize(p2), unit)
    if f1 * f2 > 0 or f1 == f2:
        raise NotTransverse("segment p1 -> p2 does not cross the axis of the comparison field")
    x0 = p1 + (f1 / (f1 - f2)) * (p2 - p1)
    v = p2 - p1
    w = mink.killing_eval(unit, x0)
    det = v[0] * w[1] - v[1] * w[0]
    orient = Orientation.LEFT if det > 0 else Orientation.RIGHT
    return ComparisonField(delta, mink.axis_endpoints(precise / size), orient, x0)


def comparison(eq, p1, p2):
    """Comparison field sigma(p2) - sigma(p1) between two strata."""
    s = []
    for p in (p1, p2):
        planes = env.support_planes_at(eq.envelope, p, eq.side.hull_side)
        if not isinstance(planes, env.Unique):
            raise OnLeaf("comparison points must lie inside strata")
        s.append(planes.sigma)
    return orientation_of(s[1] - s[0], p1, p2)


def facet_centroid(hull, facet):
    return hull._pts[hull.triangles[facet]].mean(axis=0)


def edge_comparison(eq, edge):
    """Comparison across one bending edge, from the right facet to the left facet."""
    h = eq.hull
    p1 = facet_centroid(h, edge.facet_right)
    p2 = facet_centroid(h, edge.facet_left)
    delta = h.sigmas_ld[edge.facet_left] - h.sigmas_ld[edge.facet_right]
    return orientation_of(delta, p1, p2)


def axis_chord_error(cmp, edge):
    """Largest distance between the ideal endpoints of the comparison axis and the edge chord."""
    axis = mink.circle_point(np.array(cmp.axis))
    ends = edge.endpoints
    direct = np.max(np.linalg.norm(axis - ends, axis=1))
    swapped = np.max(np.linalg.norm(axis[::-1] - ends, axis=1))
    return min(direct, swapped)


def boundary_trace(eq, theta, radii):
    """E at the points r * z(theta), one row per radius."""
    pts = np.asarray(radii, dtype=float)[:, None] * mink.circle_point(theta)[None, :]
    return eval_eq(eq, pts)


def boundary_error(eq, f, thetas, r):
    """sup over thetas of |E(r z) - X(z)|."""
    thetas = np.asarray(thetas, dtype=float)
    pts = r * mink.circle_point(thetas)
    return float(np.max(np.linalg.norm(eval_eq(eq, pts) - f.field(thetas), axis=-1)))


@dataclass(frozen=True)
class PolicyReport:
    kind: str
    values: dict
    agree: bool


def policy_compare(source, N, p, side=EqSide.LEFT):
    """Evaluate E at p under every edge policy.

    ``source`` is a field (an envelope is built with N nodes) or a ready envelope.
    """
    e = source if isinstance(source, env.EnvelopePair) else env.build(source, N)
    planes = env.support_planes_at(e, p, side.hull_side)
    values = {}
    for name, policy in COMPARED_POLICIES.items():
        values[name] = eval_eq(EarthquakeField(e, side, policy), p)
    ref = values["medial"]
    agree = all(np.array_equal(v, ref) for v in values.values())
    return PolicyReport(type(planes).__name__.lower(), values, agree)
