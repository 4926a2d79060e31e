"""Width, cross-ratio norm, and the comparison inequalities between them.

All three quantities are suprema; the estimators below evaluate them over
growing candidate sets and therefore return lower bounds.  Verdicts allow a
relative slack ``delta`` for that one-sided error.
"""

from __future__ import annotations

from dataclasses import asdict, dataclass

import numpy as np
from scipy.optimize import minimize
from scipy.stats import qmc

from . import envelope as env
from . import lamination as lamlib
from . import mink
from .errors import DegenerateQuadruple
from .field import TWO_PI, add_killing

C_LEFT = float((1.0 - np.tanh(1.0)) / (2.0 * np.sqrt(2.0)))
C_RIGHT = 8.0 / 3.0
C_FAN_HU = 4.0 / 3.0
R_MAX = 1.0 - 1e-6
DEGENERATE = 1e-12
# the search keeps quadruple points this far apart to avoid cancellation noise
SEARCH_GAP = 1e-6


def width_function(e, pts):
    """F = (phi^+ - phi^-) / sqrt(1 - |eta|^2)."""
    pts = np.asarray(pts, dtype=float)
    gap = e.upper.value(pts) - e.lower.value(pts)
    return gap / np.sqrt(1.0 - np.sum(pts * pts, axis=-1))


def width(e, grid_n=256, refine_iters=5):
    """Estimate of the width and a point where it is attained."""
    if e.is_flat:
        return 0.0, np.zeros(2)
    radii = np.linspace(0.0, R_MAX, grid_n)
    angles = np.arange(grid_n) * (TWO_PI / grid_n)
    pts = radii[:, None, None] * mink.circle_point(angles)[None, :, :]
    vals = width_function(e, pts)
    i, j = np.unravel_index(int(np.argmax(vals)), vals.shape)
    best_v, best_p = float(vals[i, j]), pts[i, j]
    direction = mink.circle_point(angles[j])

    # golden-section search on the radius along the best ray
    lo, hi = radii[max(i - 1, 0)], radii[min(i + 1, grid_n - 1)]
    g = (np.sqrt(5.0) - 1.0) / 2.0

    def along(r):
        return float(width_function(e, r * direction))

    c, d = hi - g * (hi - lo), lo + g * (hi - lo)
    fc, fd = along(c), along(d)
    for _ in range(4 * refine_iters):
        if fc > fd:
            hi, d, fd = d, c, fc
            c = hi - g * (hi - lo)
            fc = along(c)
        else:
            lo, c, fc = c, d, fd
            d = lo + g * (hi - lo)
            fd = along(d)
        for r, v in ((c, fc), (d, fd)):
            if v > best_v:
                best_v, best_p = v, r * direction

    def negf(x):
        if x @ x > R_MAX * R_MAX:
            return 0.0
        return -float(width_function(e, x))

    res = minimize(negf, best_p, method="Nelder-Mead",
                   options={"maxfev": 200, "xatol": 1e-9, "fatol": 1e-12,
                            "initial_simplex": best_p + np.array([[0, 0], [1e-3, 0], [0, 1e-3]])})
    if -res.fun > best_v:
        best_v, best_p = float(-res.fun), np.asarray(res.x)
    return best_v, best_p


def _complex(theta):
    return np.exp(1j * np.asarray(theta, dtype=float))


def vector_field_complex(f, theta):
    """X(z) = i z phi(z) as complex numbers."""
    z = _complex(theta)
    return 1j * z * f.support(theta)


def solve_fourth_point(a, b, c):
    """The point d with cr(a, b, c, d) = 1 (complex inputs, broadcasting)."""
    a, b, c = (np.asarray(x, dtype=complex) for x in (a, b, c))
    den = (b - a) - (c - b)
    if np.any(np.abs(den) < 1e-14):
        raise DegenerateQuadruple("no fourth point: denominator vanishes")
    return ((b - a) * c - (c - b) * a) / den


def cross_ratio(a, b, c, d):
    return (b - a) * (d - c) / ((c - b) * (d - a))


def _xq(Xa, Xb, Xc, Xd, a, b, c, d):
    return (Xb - Xa) / (b - a) - (Xc - Xb) / (c - b) + (Xd - Xc) / (d - c) - (Xa - Xd) / (a - d)


def cross_ratio_value(f, Q):
    """|X[Q]| for the quadruple Q = (a, b, c, d) of angles."""
    th = np.asarray(Q, dtype=float)
    z = _complex(th)
    for i in range(4):
        for j in range(i + 1, 4):
            if np.any(np.abs(z[..., i] - z[..., j]) < DEGENERATE):
                raise DegenerateQuadruple("quadruple has coincident points")
    X = vector_field_complex(f, th)
    return np.abs(_xq(*(X[..., k] for k in range(4)), *(z[..., k] for k in range(4))))


def _values_from_triples(f, abc):
    """|X[Q]| for angle triples, with d solved; invalid triples give 0."""
    abc = np.asarray(abc, dtype=float)
    z = _complex(abc)
    a, b, c = z[..., 0], z[..., 1], z[..., 2]
    den = (b - a) - (c - b)
    ok = (np.abs(den) >= 1e-14) & (np.abs(a - b) >= SEARCH_GAP) & (np.abs(b - c) >= SEARCH_GAP) & (
        np.abs(a - c) >= SEARCH_GAP)
    d = np.where(ok, ((b - a) * c - (c - b) * a) / np.where(ok, den, 1.0), 0.0)
    d = d / np.where(np.abs(d) > 0, np.abs(d), 1.0)
    ok &= (np.abs(d - a) >= SEARCH_GAP) & (np.abs(d - c) >= SEARCH_GAP) & (np.abs(d - b) >= SEARCH_GAP)
    th_d = np.angle(d)
    Xa, Xb, Xc = (vector_field_complex(f, abc[..., k]) for k in range(3))
    Xd = vector_field_complex(f, th_d)
    with np.errstate(all="ignore"):
        v = np.abs(_xq(Xa, Xb, Xc, Xd, a, b, c, np.where(ok, d, 2.0)))
    return np.where(ok & np.isfinite(v), v, 0.0), np.mod(th_d, TWO_PI)


def cross_ratio_norm(f, n_samples=20000, refine_iters=5, seed=0):
    """Estimate of sup |X[Q]| over cr(Q) = 1, and the best quadruple (angles)."""
    rng = np.random.default_rng(seed)
    half = n_samples // 2
    m = max(int(np.ceil(np.log2(max(half, 1)))), 0)
    sob = qmc.Sobol(d=3, scramble=True, seed=rng).random_base2(m)[:half] * TWO_PI
    uni = rng.uniform(0.0, TWO_PI, (n_samples - half, 3))
    abc = np.sort(np.concatenate([sob, uni]), axis=-1)
    vals, _ = _values_from_triples(f, abc)
    order = np.argsort(-vals, kind="stable")[:max(refine_iters, 1)]
    best_v = float(vals[order[0]])
    best = abc[order[0]]
    for k in order:
        res = minimize(lambda x: -float(_values_from_triples(f, x[None])[0][0]), abc[k],
                       method="Nelder-Mead", options={"maxfev": 200, "xatol": 1e-10, "fatol": 1e-12})
        if -res.fun > best_v:
            best_v, best = float(-res.fun), np.asarray(res.x)
    _, d = _values_from_triples(f, best[None])
    quad = tuple(float(t) for t in np.mod(np.append(best, d), TWO_PI))
    return best_v, quad


def _dense_thetas(f, n=8192):
    return np.sort(np.mod(np.concatenate([np.arange(n) * (TWO_PI / n), f.breakpoints()]), TWO_PI))


@dataclass(frozen=True)
class CheckReport:
    ok: bool
    lhs: float
    rhs: float


def fan_hu_check(f, n_samples=20000, refine_iters=5, seed=0, slack=0.05, cr_est=None):
    """max |phi| of the three-point normalized field against (4/3) times the cross-ratio norm."""
    from .field import normalize3

    g, _ = normalize3(f)
    lhs = float(np.max(np.abs(g.support(_dense_thetas(g)))))
    if cr_est is None:
        cr_est = cross_ratio_norm(g, n_samples, refine_iters, seed)[0]
    rhs = C_FAN_HU * cr_est * (1.0 + slack)
    return CheckReport(lhs <= rhs + 1e-12, lhs, rhs)


def normalized_at(f, sigma, p, thetas):
    """Support values of the field f - Λ(sigma), recentred so that p goes to the origin.

    Returned values are listed at the images of ``thetas``.
    """
    g = add_killing(f, -np.asarray(sigma, dtype=float))
    A = mink.isometry_to_origin(p)
    return g.support(thetas) / mink.conformal_factor(A, thetas)


def phi_vs_width_check(f, e=None, N=4096, grid_n=256, refine_iters=5, slack=0.05, width_est=None):
    """Check phi <= 2 w after normalizing at the width maximizer.

    On a bending edge both extreme support planes are tried; the report keeps
    the larger (least favourable) maximum.
    """
    if e is None:
        e = env.build(f, N)
    w, p = width(e, grid_n, refine_iters) if width_est is None else width_est
    planes = env.support_planes_at(e, p, env.Side.LOWER)
    if isinstance(planes, env.Unique):
        cands = [planes.sigma]
    elif isinstance(planes, env.Edge):
        cands = [planes.sigma1, planes.sigma2]
    else:
        cands = list(planes.sigmas)
    thetas = _dense_thetas(f)
    lhs = max(float(np.max(normalized_at(f, s, p, thetas))) for s in cands)
    rhs = 2.0 * w * (1.0 + slack)
    return CheckReport(lhs <= rhs + 1e-12, lhs, rhs)


@dataclass(frozen=True)
class NormReport:
    width_est: float
    width_argmax: tuple
    cr_est: float
    cr_arg: tuple
    thurston_lower_est: float
    thurston_upper: float
    th2_left_ok: bool
    th2_right_ok: bool
    slack: float
    left_margin: float
    right_margin: float
    c_left: float = C_LEFT
    c_right: float = C_RIGHT

    def to_json(self):
        doc = asdict(self)
        doc["width_argmax"] = list(self.width_argmax)
        doc["cr_arg"] = list(self.cr_arg)
        return doc

    @property
    def ok(self):
        return self.th2_left_ok and self.th2_right_ok


def verify_th2(f, N=4096, grid_n=256, cr_samples=20000, seed=0, refine_iters=5, slack=0.05,
               e=None, thurston_samples=2000):
    """Width, cross-ratio norm, Thurston norm of the left lamination, and both inequalities."""
    if e is None:
        e = env.build(f, N)
    w, p = width(e, grid_n, refine_iters)
    cr, quad = cross_ratio_norm(f, cr_samples, refine_iters, seed)
    lam = lamlib.from_envelope(e, env.Side.LOWER)
    est = lamlib.thurston_search(lam, thurston_samples, refine_iters, seed)
    upper = lamlib.sigma_gap_bound(e, env.Side.LOWER, est.mids, est.dirs) if len(lam) else 0.0
    left_lhs = C_LEFT * est.value
    right_rhs = C_RIGHT * cr
    return NormReport(
        width_est=float(w),
        width_argmax=tuple(float(x) for x in p),
        cr_est=float(cr),
        cr_arg=quad,
        thurston_lower_est=float(est.value),
        thurston_upper=float(max(upper, est.value)),
        th2_left_ok=bool(left_lhs <= w * (1.0 + slack) + 1e-12),
        th2_right_ok=bool(w <= right_rhs * (1.0 + slack) + 1e-12),
        slack=slack,
        left_margin=float(w - left_lhs),
        right_margin=float(right_rhs - w),
    )
