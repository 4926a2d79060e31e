"""Seeded test fields shared by the test suite, the verifier and the demos."""

from __future__ import annotations

import numpy as np

from .field import TWO_PI, PiecewiseAffine, Sampled, TrigPoly


def trig_field(seed, max_degree=5):
    """Trigonometric polynomial of degree <= max_degree, coefficients uniform in [-1, 1]."""
    rng = np.random.default_rng([seed, 7919])
    deg = int(rng.integers(2, max_degree + 1))
    return TrigPoly(rng.uniform(-1, 1), rng.uniform(-1, 1, deg), rng.uniform(-1, 1, deg))


def trig_corpus(n=20, max_degree=5, seed=0):
    return [trig_field(seed * 100003 + k, max_degree) for k in range(n)]


def simple_earthquake(b=1.0):
    """Support function max(0, b sin θ): one leaf along the horizontal diameter."""
    return PiecewiseAffine([(0.0, 0.0, b), (0.0, 0.0, 0.0)], [0.0, np.pi])


def dip_atom(n=1024, depth=-1.0):
    """Zero support function with a single lower atom at θ = 0."""
    thetas = np.arange(n) * (TWO_PI / n)
    phis = np.zeros(n)
    phis[0] = depth
    return Sampled(thetas, phis, interp="none", atoms=(0,))
