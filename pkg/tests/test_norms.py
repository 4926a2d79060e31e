import numpy as np
import pytest

from earthquake_lab import corpus, mink, norms
from earthquake_lab import envelope as env
from earthquake_lab.errors import DegenerateQuadruple
from earthquake_lab.field import Killing, TrigPoly, act, add_killing, scaled


def test_constants():
    assert norms.C_LEFT == pytest.approx((1 - np.tanh(1)) / (2 * np.sqrt(2)), rel=1e-15)
    assert norms.C_LEFT == pytest.approx(0.0842892, abs=1e-7)
    assert norms.C_RIGHT == 8 / 3 and norms.C_FAN_HU == 4 / 3


def test_width_killing():
    assert norms.width(env.build(Killing([0.2, 0.1, -0.3]), 64))[0] == 0.0


def test_width_simple(simple_env):
    w, p = norms.width(simple_env, 64, 3)
    assert w >= 0.5 - 1e-3
    assert w <= 0.5 + 1e-9


def test_width_invariance(rng):
    f = corpus.trig_field(6)
    w0 = norms.width(env.build(f, 2048), 96, 3)[0]
    A = mink.random_isometry(rng, 1.0)
    g = act(f, A, rng.normal(size=3), n_nodes=2048)
    w1 = norms.width(env.build(g, 2048), 96, 3)[0]
    assert abs(w1 - w0) <= 2e-3 * w0


def test_fourth_point():
    d = norms.solve_fourth_point(1, 1j, -1)
    assert d == pytest.approx(-1j)
    a, b, c = np.exp(1j * np.array([0.2, 1.1, 2.5]))
    assert norms.cross_ratio(a, b, c, norms.solve_fourth_point(a, b, c)) == pytest.approx(1.0)
    with pytest.raises(DegenerateQuadruple):
        norms.solve_fourth_point(1, 1, 1)


def test_cross_ratio_value_killing(rng):
    Q = np.sort(rng.uniform(0, 2 * np.pi, (100, 3)), axis=1)
    d = np.angle(norms.solve_fourth_point(*np.exp(1j * Q.T)))
    quads = np.column_stack([Q, d])
    assert np.max(norms.cross_ratio_value(Killing(rng.normal(size=3)), quads)) <= 1e-9


def _trig_sum(f, g):
    n = max(f.degree, g.degree)
    pad = lambda c: np.pad(c, (0, n - len(c)))
    return TrigPoly(f.c0 + g.c0, pad(f.cos_coeffs) + pad(g.cos_coeffs), pad(f.sin_coeffs) + pad(g.sin_coeffs))


def _xq(f, Q):
    Q = np.asarray(Q)
    return norms._xq(*norms.vector_field_complex(f, Q), *np.exp(1j * Q))


def test_cross_ratio_linear(rng):
    f, g = corpus.trig_field(1), corpus.trig_field(2)
    abc = np.array([0.3, 1.4, 2.0])
    Q = np.append(abc, np.angle(norms.solve_fourth_point(*np.exp(1j * abc))))
    assert _xq(_trig_sum(f, g), Q) == pytest.approx(_xq(f, Q) + _xq(g, Q))
    assert norms.cross_ratio_value(scaled(f, -3.0), Q) == pytest.approx(3 * abs(_xq(f, Q)))
    shifted = add_killing(f, rng.normal(size=3))
    assert norms.cross_ratio_value(shifted, Q) == pytest.approx(abs(_xq(f, Q)), abs=1e-12)


def test_cross_ratio_degenerate():
    with pytest.raises(DegenerateQuadruple):
        norms.cross_ratio_value(corpus.trig_field(0), (0.1, 0.1, 1.0, 2.0))


def test_cross_ratio_norm_killing():
    assert norms.cross_ratio_norm(Killing([0.3, -0.2, 0.9]), 2000, 2)[0] <= 1e-8


def test_cross_ratio_norm_scales():
    f = corpus.trig_field(3)
    a = norms.cross_ratio_norm(f, 2000, 2, seed=1)[0]
    b = norms.cross_ratio_norm(scaled(f, 2.0), 2000, 2, seed=1)[0]
    assert b == pytest.approx(2 * a, rel=1e-9)


def test_verify_killing():
    rep = norms.verify_th2(Killing([0.1, 0.4, -0.2]), N=128, grid_n=32, cr_samples=1000, refine_iters=1)
    assert rep.ok
    assert rep.width_est == 0.0 and rep.thurston_lower_est == 0.0 and rep.cr_est <= 1e-8


def test_verify_simple():
    rep = norms.verify_th2(corpus.simple_earthquake(), N=512, grid_n=64, cr_samples=2000, refine_iters=3)
    assert rep.ok
    assert rep.thurston_lower_est == pytest.approx(1.0, abs=1e-6)
    assert rep.left_margin >= 0.4
    doc = rep.to_json()
    assert doc["c_left"] == norms.C_LEFT and isinstance(doc["width_argmax"], list)


def test_fan_hu_killing():
    rep = norms.fan_hu_check(Killing([0.5, 0.2, 0.1]), 1000, 1)
    assert rep.ok and rep.lhs <= 1e-14


def test_fan_hu_homogeneous():
    f = corpus.trig_field(4)
    a = norms.fan_hu_check(f, 2000, 2, seed=3)
    b = norms.fan_hu_check(scaled(f, -2.5), 2000, 2, seed=3)
    assert a.ok == b.ok
    assert b.lhs == pytest.approx(2.5 * a.lhs) and b.rhs == pytest.approx(2.5 * a.rhs)


def test_phi_vs_width_simple(simple_env):
    rep = norms.phi_vs_width_check(corpus.simple_earthquake(), simple_env, grid_n=64, refine_iters=3)
    assert rep.ok
    assert rep.lhs == pytest.approx(1.0, abs=1e-6)
    assert rep.lhs >= rep.rhs / 1.1


def test_normalized_at_origin_is_subtraction():
    f = corpus.trig_field(5)
    th = np.linspace(0, 6, 11)
    s = np.array([0.1, 0.2, 0.3])
    np.testing.assert_allclose(norms.normalized_at(f, s, [0, 0], th), f.support(th) - Killing(s).support(th))
