"""Lower (convex) and upper (concave) envelopes of a support function.

The graph of phi over the circle sits on the vertical cylinder over S^1, so
its 3D convex hull splits into a lower and an upper polyhedral surface.  The
lower one is the graph of the convex envelope phi^-, the upper one the graph
of the concave envelope phi^+.  Each triangle of either surface carries the
Minkowski dual sigma of its plane.

Triangles sharing an edge whose plane angle exceeds ``EPS_BEND`` meet along a
bending edge; the other triangles are grouped into flat pieces.
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum

import numpy as np
from matplotlib.tri import Triangulation, TrapezoidMapTriFinder
from scipy.spatial import ConvexHull, QhullError

from . import mink
from .errors import DegenerateInput, NoInterpolation
from .field import TWO_PI, Sampled

EPS_BEND = 1e-7
EPS_VERT = 1e-12
EPS_EDGE = 1e-12
EPS_NODE = 1e-12


class Side(Enum):
    LOWER = "lower"
    UPPER = "upper"


@dataclass(frozen=True)
class BendingEdge:
    edge_id: int
    i: int
    j: int
    a_theta: float
    b_theta: float
    facet_left: int
    facet_right: int
    sigma_left: np.ndarray
    sigma_right: np.ndarray
    weight: float

    @property
    def endpoints(self):
        return mink.circle_point(np.array([self.a_theta, self.b_theta]))


@dataclass(frozen=True)
class FlatPiece:
    sigma: np.ndarray
    facet_ids: tuple
    vertex_ids: tuple


@dataclass(frozen=True)
class Unique:
    sigma: np.ndarray
    facet: int


@dataclass(frozen=True)
class Edge:
    sigma1: np.ndarray
    sigma2: np.ndarray
    edge_id: int


@dataclass(frozen=True)
class Vertex:
    sigmas: tuple


def _plane_through(xyz):
    """Duals of the planes through triangles of points, solved in extended precision."""
    p = np.asarray(xyz, dtype=np.longdouble)
    x, y, z = p[..., 0], p[..., 1], p[..., 2]
    # a + b*x + c*y = z at the three vertices (Cramer's rule)
    x1, x2 = x[..., 1] - x[..., 0], x[..., 2] - x[..., 0]
    y1, y2 = y[..., 1] - y[..., 0], y[..., 2] - y[..., 0]
    z1, z2 = z[..., 1] - z[..., 0], z[..., 2] - z[..., 0]
    det = x1 * y2 - x2 * y1
    b = (z1 * y2 - z2 * y1) / det
    c = (x1 * z2 - x2 * z1) / det
    a = z[..., 0] - b * x[..., 0] - c * y[..., 0]
    return np.stack([-a, b, c], axis=-1)


class HullSide:
    """One envelope surface: triangles, planes, bending edges, point location."""

    def __init__(self, side, nodes, tris, sigmas):
        self.side = side
        # extended-precision duals are kept for comparison axes of tiny bends
        self.sigmas_ld = np.asarray(sigmas, dtype=np.longdouble)
        sigmas = self.sigmas_ld.astype(float)
        self.nodes = nodes
        pts = mink.circle_point(nodes)
        # counter-clockwise triangles for the point-location structure
        d1 = pts[tris[:, 1]] - pts[tris[:, 0]]
        d2 = pts[tris[:, 2]] - pts[tris[:, 0]]
        cw = d1[:, 0] * d2[:, 1] - d1[:, 1] * d2[:, 0] < 0
        tris = tris.copy()
        tris[cw] = tris[cw][:, [0, 2, 1]]
        self.triangles = tris
        self.sigmas = sigmas
        self._pts = pts
        self.area = 0.5 * np.abs(d1[:, 0] * d2[:, 1] - d1[:, 1] * d2[:, 0])
        self._build_edges()
        self._tri = Triangulation(pts[:, 0], pts[:, 1], tris)
        self._finder = TrapezoidMapTriFinder(self._tri)

    def _build_edges(self):
        owners = {}
        for f, tri in enumerate(self.triangles):
            for k in range(3):
                i, j = sorted((int(tri[k]), int(tri[(k + 1) % 3])))
                owners.setdefault((i, j), []).append((f, int(tri[(k + 2) % 3])))
        parent = list(range(len(self.triangles)))

        def find(a):
            while parent[a] != a:
                parent[a] = parent[parent[a]]
                a = parent[a]
            return a

        edges = []
        self.edge_of = {}
        for (i, j), own in sorted(owners.items()):
            if len(own) != 2:
                continue
            (fa, ka), (fb, kb) = own
            diff = self.sigmas_ld[fa] - self.sigmas_ld[fb]
            q = -diff[0] * diff[0] + diff[1] * diff[1] + diff[2] * diff[2]
            weight = float(np.sqrt(max(q, 0)))
            if weight <= EPS_BEND:
                parent[find(fa)] = find(fb)
                continue
            zi, zj = self._pts[i], self._pts[j]
            d = zj - zi
            rel = self._pts[ka] - zi
            if d[0] * rel[1] - d[1] * rel[0] < 0:
                fa, fb = fb, fa
            edge = BendingEdge(len(edges), i, j, float(self.nodes[i]), float(self.nodes[j]),
                               fa, fb, self.sigmas[fa], self.sigmas[fb], weight)
            edges.append(edge)
            self.edge_of[(i, j)] = edge
        self.edges = edges
        groups = {}
        for f in range(len(self.triangles)):
            groups.setdefault(find(f), []).append(f)
        pieces = []
        for members in sorted(groups.values()):
            big = max(members, key=lambda f: self.area[f])
            verts = sorted({int(v) for f in members for v in self.triangles[f]})
            pieces.append(FlatPiece(self.sigmas[big], tuple(members), tuple(verts)))
        self.pieces = pieces
        self.piece_of = np.empty(len(self.triangles), dtype=int)
        for k, piece in enumerate(pieces):
            self.piece_of[list(piece.facet_ids)] = k

    def _best(self, pts):
        vals = mink.homogenize(pts) @ (self.sigmas * np.array([-1.0, 1.0, 1.0])).T
        return np.argmax(vals, axis=-1) if self.side is Side.LOWER else np.argmin(vals, axis=-1)

    def locate(self, pts):
        """Facet index under each point (argmax/argmin of planes outside the polygon)."""
        pts = np.asarray(pts, dtype=float)
        flat = pts.reshape(-1, 2)
        f = np.asarray(self._finder(flat[:, 0], flat[:, 1]), dtype=int)
        miss = f < 0
        if np.any(miss):
            f[miss] = self._best(flat[miss])
        return f.reshape(pts.shape[:-1])

    def edge_hits(self, pts, facets):
        """Bending edges of the located facet within EPS_EDGE of each point.

        Returns an array of shape (..., 3) of edge ids, -1 where absent.
        """
        pts = np.asarray(pts, dtype=float)
        out = np.full(pts.shape[:-1] + (3,), -1, dtype=int)
        tri = self.triangles[facets]
        for k in range(3):
            i = tri[..., k]
            j = tri[..., (k + 1) % 3]
            a, b = self._pts[i], self._pts[j]
            d = b - a
            rel = pts - a
            dist = np.abs(d[..., 0] * rel[..., 1] - d[..., 1] * rel[..., 0]) / np.hypot(d[..., 0], d[..., 1])
            near = dist <= EPS_EDGE
            if not np.any(near):
                continue
            lo, hi = np.minimum(i, j), np.maximum(i, j)
            for idx in zip(*np.nonzero(near)):
                edge = self.edge_of.get((int(lo[idx]), int(hi[idx])))
                if edge is not None:
                    out[idx + (k,)] = edge.edge_id
        return out

    def value(self, pts):
        f = self.locate(pts)
        return mink.inner(mink.homogenize(pts), self.sigmas[f])


class EnvelopePair:
    """Lower and upper envelopes of one field sampled at a fixed node set."""

    def __init__(self, nodes, phis, lower, upper, flat_sigma=None):
        self.nodes = nodes
        self.phis = phis
        self.lower = lower
        self.upper = upper
        self.flat_sigma = flat_sigma
        self.N = len(nodes)

    @property
    def is_flat(self):
        return self.flat_sigma is not None

    def hull(self, side):
        return self.lower if Side(side) is Side.LOWER else self.upper

    @property
    def samples(self):
        z = mink.circle_point(self.nodes)
        return np.column_stack([z, self.phis])


def _merge_nodes(groups):
    """Sorted angles in [0, 2π), keeping the first of any cluster closer than EPS_NODE."""
    kept = []
    for g in groups:
        kept.append(np.mod(np.asarray(g, dtype=float).reshape(-1), TWO_PI))
    allv = np.concatenate(kept) if kept else np.empty(0)
    prio = np.concatenate([np.full(len(k), p) for p, k in enumerate(kept)]) if kept else np.empty(0)
    order = np.lexsort((prio, allv))
    allv, prio = allv[order], prio[order]
    out = []
    out_prio = []
    for t, p in zip(allv, prio):
        if out and t - out[-1] <= EPS_NODE:
            if p < out_prio[-1]:
                out[-1], out_prio[-1] = t, p
            continue
        out.append(t)
        out_prio.append(p)
    if len(out) > 1 and out[0] + TWO_PI - out[-1] <= EPS_NODE:
        out.pop()
    return np.array(out)


def node_set(f, N=4096, extra_nodes=()):
    if isinstance(f, Sampled) and f.interp == "none":
        return _merge_nodes([f.thetas])
    uniform = np.arange(N) * (TWO_PI / N)
    return _merge_nodes([np.asarray(extra_nodes, dtype=float), f.breakpoints(), uniform])


def _flat_side(side, nodes, sigma):
    # fan triangulation of the inscribed polygon, all on one plane
    n = len(nodes)
    tris = np.column_stack([np.zeros(n - 2, dtype=int), np.arange(1, n - 1), np.arange(2, n)])
    return HullSide(side, nodes, tris, np.tile(sigma, (n - 2, 1)))


def build(f, N=4096, extra_nodes=(), require_bending=False):
    """Envelopes of the field f sampled at N uniform nodes plus extra nodes.

    Breakpoints of piecewise-affine and linearly interpolated fields are added
    automatically.  A field without interpolation is sampled at its own nodes.
    """
    if N < 8:
        raise ValueError("N must be at least 8")
    nodes = node_set(f, N, extra_nodes)
    if isinstance(f, Sampled) and f.interp == "none":
        bad = f.node_index(np.asarray(extra_nodes, dtype=float)) < 0 if len(extra_nodes) else []
        if np.any(bad):
            raise NoInterpolation("extra nodes of a field without interpolation must be nodes")
    phis = np.asarray(f.support(nodes), dtype=float)
    z = mink.circle_point(nodes)
    eps_hull = 1e-9 * (1.0 + np.max(np.abs(phis)))

    design = np.column_stack([np.ones_like(nodes), z])
    coef, *_ = np.linalg.lstsq(design, phis, rcond=None)
    if np.max(np.abs(design @ coef - phis)) <= eps_hull:
        if require_bending:
            raise DegenerateInput("samples are coplanar: the field is Killing and has no bending")
        sigma = np.array([-coef[0], coef[1], coef[2]])
        return EnvelopePair(nodes, phis, _flat_side(Side.LOWER, nodes, sigma),
                            _flat_side(Side.UPPER, nodes, sigma), flat_sigma=sigma)

    pts = np.column_stack([z, phis])
    try:
        hull = ConvexHull(pts)
    except QhullError as exc:
        raise DegenerateInput("convex hull failed: %s" % exc) from exc
    nz = hull.equations[:, 2]
    sides = []
    for side, mask in ((Side.LOWER, nz < -EPS_VERT), (Side.UPPER, nz > EPS_VERT)):
        tris = hull.simplices[mask]
        sides.append(HullSide(side, nodes, tris, _plane_through(pts[tris])))
    return EnvelopePair(nodes, phis, *sides)


def _check(p):
    p = np.asarray(p, dtype=float)
    mink.check_disk(p)
    return p


def eval_lower(e, p):
    return e.lower.value(_check(p))


def eval_upper(e, p):
    return e.upper.value(_check(p))


def eval_side(e, p, side):
    return e.hull(side).value(_check(p))


def support_planes_at(e, p, side=Side.LOWER):
    """Support planes of one envelope above the point p."""
    p = _check(p)
    h = e.hull(side)
    f = int(h.locate(p))
    hits = [int(k) for k in h.edge_hits(p[None], np.array([f]))[0] if k >= 0]
    if not hits:
        return Unique(h.sigmas[f], f)
    if len(hits) == 1:
        edge = h.edges[hits[0]]
        return Edge(edge.sigma_left, edge.sigma_right, edge.edge_id)
    facets = sorted({g for k in hits for g in (h.edges[k].facet_left, h.edges[k].facet_right)},
                    key=lambda g: np.arctan2(*(h._pts[h.triangles[g]].mean(axis=0) - p)[::-1]))
    return Vertex(tuple(h.sigmas[g] for g in facets))


def bending_edges(e, side=Side.LOWER):
    return list(e.hull(side).edges)


def flat_pieces(e, side=Side.LOWER):
    return list(e.hull(side).pieces)
