"""Minkowski space R^{1,2}, Killing fields of the hyperbolic plane, Klein model.

Vectors are numpy arrays whose last axis has length 3 (coordinates in the
(-,+,+) basis); points of the Klein disk and tangent vectors are arrays whose
last axis has length 2.  Every function broadcasts over leading axes.

A vector ``sigma`` doubles as a Killing field through ``y -> y ⊠ sigma``.
"""

from __future__ import annotations

import contextlib
from enum import Enum

import numpy as np
import scipy.linalg

from .errors import NotHyperbolic, OutOfDomain

EPS_CAUSAL = 1e-10
EPS_MAT = 1e-10
EPS_DISK = 1e-12

J = np.diag([-1.0, 1.0, 1.0])
E0 = np.array([1.0, 0.0, 0.0])

# flipped only by the mutation smoke test of the verify command
_killing_sign = 1.0


class KillingType(Enum):
    HYPERBOLIC = "hyperbolic"
    PARABOLIC = "parabolic"
    ELLIPTIC = "elliptic"
    ZERO = "zero"


def inner(x, y):
    """Minkowski bilinear form -x0*y0 + x1*y1 + x2*y2."""
    x = np.asarray(x, dtype=float)
    y = np.asarray(y, dtype=float)
    return -x[..., 0] * y[..., 0] + x[..., 1] * y[..., 1] + x[..., 2] * y[..., 2]


def norm(x):
    """Minkowski length of a spacelike vector (0 for non-spacelike)."""
    return np.sqrt(np.maximum(inner(x, x), 0.0))


def cross(x, y):
    """Minkowski cross product: <x ⊠ y, v> = det(x, y, v) for all v."""
    c = np.cross(np.asarray(x, dtype=float), np.asarray(y, dtype=float))
    c[..., 0] *= -1.0
    return c


def lam(sigma):
    """Matrix of the infinitesimal isometry y -> y ⊠ sigma."""
    s0, s1, s2 = np.asarray(sigma, dtype=float)
    skew = np.array([[0.0, -s2, s1], [s2, 0.0, -s0], [-s1, s0, 0.0]])
    return -J @ skew


def exp_killing(sigma, t=1.0):
    """One-parameter isometry exp(t Λ(sigma)) as a 3x3 matrix."""
    return scipy.linalg.expm(t * lam(sigma))


def is_isometry(A, tol=EPS_MAT):
    A = np.asarray(A, dtype=float)
    return (
        np.allclose(A.T @ J @ A, J, atol=tol, rtol=0.0)
        and abs(np.linalg.det(A) - 1.0) <= tol * 10
        and A[0, 0] > 0
    )


def rotation(angle):
    c, s = np.cos(angle), np.sin(angle)
    return np.array([[1.0, 0.0, 0.0], [0.0, c, -s], [0.0, s, c]])


def boost(rapidity, direction=0.0):
    """Hyperbolic translation by `rapidity` moving the origin toward angle `direction`."""
    ch, sh = np.cosh(rapidity), np.sinh(rapidity)
    B = np.array([[ch, sh, 0.0], [sh, ch, 0.0], [0.0, 0.0, 1.0]])
    R = rotation(direction)
    return R @ B @ R.T


def random_isometry(rng, max_rapidity=1.0):
    """Random orientation preserving isometry with boost rapidity <= max_rapidity."""
    return rotation(rng.uniform(0, 2 * np.pi)) @ boost(
        rng.uniform(0, max_rapidity), rng.uniform(0, 2 * np.pi)
    )


def isometry_to_origin(p):
    """Pure boost sending the Klein point p to the origin."""
    p = np.asarray(p, dtype=float)
    r = np.hypot(*p)
    if r == 0:
        return np.eye(3)
    return boost(-np.arctanh(r), np.arctan2(p[1], p[0]))


def classify(sigma, eps=EPS_CAUSAL):
    sigma = np.asarray(sigma, dtype=float)
    if np.linalg.norm(sigma) <= eps:
        return KillingType.ZERO
    q = inner(sigma, sigma)
    if q > eps:
        return KillingType.HYPERBOLIC
    if q < -eps:
        return KillingType.ELLIPTIC
    return KillingType.PARABOLIC


def circle_point(theta):
    theta = np.asarray(theta, dtype=float)
    return np.stack([np.cos(theta), np.sin(theta)], axis=-1)


def homogenize(eta):
    """(eta1, eta2) -> (1, eta1, eta2)."""
    eta = np.asarray(eta, dtype=float)
    return np.concatenate([np.ones(eta.shape[:-1] + (1,)), eta], axis=-1)


def radial_projection(x):
    x = np.asarray(x, dtype=float)
    return x[..., 1:] / x[..., :1]


def radial_diff(p, v):
    """Differential of the radial projection at (1, p) applied to v."""
    p = np.asarray(p, dtype=float)
    v = np.asarray(v, dtype=float)
    return v[..., 1:] - p * v[..., :1]


def killing_eval(sigma, p):
    """Killing field Λ(sigma) at the Klein point p."""
    p = np.asarray(p, dtype=float)
    return _killing_sign * radial_diff(p, cross(homogenize(p), sigma))


@contextlib.contextmanager
def inject_sign_fault():
    """Flip the sign of killing_eval inside the block (mutation testing only)."""
    global _killing_sign
    _killing_sign = -1.0
    try:
        yield
    finally:
        _killing_sign = 1.0


def check_disk(p, margin=EPS_DISK):
    p = np.asarray(p, dtype=float)
    if np.any(np.sum(p * p, axis=-1) > (1.0 - margin) ** 2):
        raise OutOfDomain("point outside the disk of radius 1 - %g" % margin)


def klein_action(A, eta):
    """Image of Klein points under the isometry A."""
    return radial_projection(homogenize(eta) @ np.asarray(A, dtype=float).T)


def klein_jacobian(A, eta):
    """Closed-form Jacobian of eta -> klein_action(A, eta), shape (..., 2, 2)."""
    A = np.asarray(A, dtype=float)
    u = homogenize(eta) @ A.T
    image = u[..., 1:] / u[..., :1]
    jac = A[1:, 1:] - image[..., :, None] * A[0, 1:][None, :]
    return jac / u[..., :1, None]


def pushforward(A, eta, vec):
    """Push the tangent vector `vec` at `eta` forward by the isometry A."""
    return np.einsum("...ij,...j->...i", klein_jacobian(A, eta), np.asarray(vec, dtype=float))


def boundary_action(A, theta):
    """Action of A on the circle at infinity, angles in [0, 2π)."""
    w = homogenize(circle_point(theta)) @ np.asarray(A, dtype=float).T
    return np.mod(np.arctan2(w[..., 2], w[..., 1]), 2 * np.pi)


def conformal_factor(A, theta):
    """First coordinate of A·(1, z): the rescaling of support values under A."""
    w = homogenize(circle_point(theta)) @ np.asarray(A, dtype=float).T
    return w[..., 0]


def axis_endpoints(sigma):
    """Ideal endpoints (angles) of the chord {eta : <(1, eta), sigma> = 0}.

    The chord is computed from its closest point to the origin and its
    half-length, which stays accurate for chords close to the boundary.
    """
    sigma = np.asarray(sigma)
    if sigma.dtype != np.longdouble:
        sigma = sigma.astype(float)
    if classify(sigma.astype(float)) is not KillingType.HYPERBOLIC:
        raise NotHyperbolic("axis requires a spacelike vector, got %r" % (sigma,))
    s0, s1, s2 = sigma
    r2 = s1 * s1 + s2 * s2
    mid = (s0 / r2) * np.array([s1, s2])
    half = np.sqrt(-s0 * s0 + r2) / r2
    tangent = np.array([-s2, s1])
    a, b = mid - half * tangent, mid + half * tangent
    angles = np.mod(np.arctan2(np.array([a[1], b[1]]), np.array([a[0], b[0]])), 2 * np.pi)
    return tuple(sorted(float(t) for t in angles))


def lift(eta):
    """Klein point -> point of the hyperboloid."""
    eta = np.asarray(eta, dtype=float)
    return homogenize(eta) / np.sqrt(1.0 - np.sum(eta * eta, axis=-1))[..., None]


def hyperbolic_distance(p, q):
    return np.arccosh(np.maximum(-inner(lift(p), lift(q)), 1.0))
