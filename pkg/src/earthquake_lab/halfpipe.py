"""Half-pipe space in the Klein chart D^2 x R and its duality with R^{1,2}.

A vector sigma of Minkowski space is identified with the non-vertical plane
t = <(1, eta), sigma>, i.e. the graph of the affine function
eta -> -sigma0 + sigma1*eta1 + sigma2*eta2.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from . import mink
from .errors import NotTransverse

EPS_DISK = 1e-12


def dual_plane_coeffs(sigma):
    """Coefficients (alpha, beta, gamma) of t = alpha + beta*eta1 + gamma*eta2."""
    s = np.asarray(sigma, dtype=float)
    return -s[..., 0], s[..., 1], s[..., 2]


def coeffs_to_dual(alpha, beta, gamma):
    return np.stack(np.broadcast_arrays(-np.asarray(alpha, float), beta, gamma), axis=-1).astype(float)


def plane_value(sigma, eta):
    """Height of the dual plane of sigma above eta."""
    return mink.inner(mink.homogenize(eta), sigma)


def height(base, t):
    """Height function L = t / sqrt(1 - |eta|^2) in the Klein chart."""
    base = np.asarray(base, dtype=float)
    return np.asarray(t, dtype=float) / np.sqrt(1.0 - np.sum(base * base, axis=-1))


@dataclass(frozen=True)
class HpIsometry:
    """Isometry Is(A, v) of Half-pipe space, dual to the Minkowski isometry (A, v)."""

    A: np.ndarray
    v: np.ndarray

    @classmethod
    def identity(cls):
        return cls(np.eye(3), np.zeros(3))

    def compose(self, other):
        """self ∘ other, matching (A, v)(B, w) = (AB, v + Aw) in Isom(R^{1,2})."""
        return HpIsometry(self.A @ other.A, self.v + self.A @ other.v)

    def apply(self, base, t):
        """Image of the Half-pipe point(s) (base, t)."""
        base = np.asarray(base, dtype=float)
        u = mink.homogenize(base) @ self.A.T
        image = u[..., 1:] / u[..., :1]
        return image, np.asarray(t, dtype=float) / u[..., 0] + plane_value(self.v, image)


def hp_apply(iso, base, t):
    return iso.apply(base, t)


def plane_angle(v1, v2, eps=mink.EPS_CAUSAL):
    """Angle between the dual planes of v1 and v2 (Minkowski length of v1 - v2)."""
    d = np.asarray(v1, dtype=float) - np.asarray(v2, dtype=float)
    q = mink.inner(d, d)
    if np.any(q < -eps):
        raise NotTransverse("planes do not meet in a spacelike geodesic: <d,d> = %r" % (q,))
    return np.sqrt(np.maximum(q, 0.0))
