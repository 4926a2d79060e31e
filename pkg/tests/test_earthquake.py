import numpy as np
import pytest

from earthquake_lab import corpus, mink, oracle
from earthquake_lab import earthquake as eqm
from earthquake_lab import envelope as env
from earthquake_lab.errors import NonSpacelikeDelta, NotTransverse, OnLeaf
from earthquake_lab.field import Killing, scaled

LEFT, RIGHT = eqm.EqSide.LEFT, eqm.EqSide.RIGHT


def test_killing_fixed_point(rng):
    s = rng.uniform(-1, 1, 3)
    e = env.build(Killing(s), 256)
    p = rng.uniform(-0.7, 0.7, (200, 2))
    for side in eqm.EqSide:
        np.testing.assert_allclose(eqm.eval_eq(eqm.EarthquakeField(e, side), p), mink.killing_eval(s, p), atol=1e-12)


def test_simple_earthquake_values(simple_env):
    eq = eqm.EarthquakeField(simple_env, LEFT)
    np.testing.assert_allclose(eq([0, 0.5]), [-1, 0], atol=1e-12)
    np.testing.assert_allclose(eq([0, -0.5]), [0, 0], atol=1e-12)
    np.testing.assert_allclose(eq([0, 0]), [-0.5, 0], atol=1e-12)


def test_simple_earthquake_matches_closed_form(simple_env, rng):
    eq = eqm.EarthquakeField(simple_env, LEFT)
    p = rng.uniform(-0.7, 0.7, (300, 2))
    p = np.vstack([p, [[0.3, 0.0], [-0.6, 0.0]]])
    np.testing.assert_allclose(eq(p), oracle.simple_eq_oracle(1.0, p), atol=1e-12)


def test_comparison_simple_left(simple_env):
    cmp = eqm.comparison(eqm.EarthquakeField(simple_env, LEFT), [0, -0.5], [0, 0.5])
    np.testing.assert_allclose(cmp.delta, [0, 0, 1], atol=1e-12)
    np.testing.assert_allclose(cmp.axis, [0, np.pi], atol=1e-12)
    assert cmp.orientation is eqm.Orientation.LEFT


def test_comparison_mirrored_right():
    e = env.build(scaled(corpus.simple_earthquake(), -1.0), 1024)
    cmp = eqm.comparison(eqm.EarthquakeField(e, RIGHT), [0, -0.5], [0, 0.5])
    np.testing.assert_allclose(cmp.delta, [0, 0, -1], atol=1e-12)
    assert cmp.orientation is eqm.Orientation.RIGHT


def test_comparison_same_piece_is_zero(simple_env):
    cmp = eqm.comparison(eqm.EarthquakeField(simple_env, LEFT), [0.1, 0.3], [-0.2, 0.6])
    assert cmp.orientation is eqm.Orientation.ZERO


def test_comparison_on_leaf_rejected(simple_env):
    with pytest.raises(OnLeaf):
        eqm.comparison(eqm.EarthquakeField(simple_env, LEFT), [0, 0], [0, 0.5])


def test_orientation_errors():
    with pytest.raises(NonSpacelikeDelta):
        eqm.orientation_of([1, 0, 0], [0, -0.5], [0, 0.5])
    with pytest.raises(NotTransverse):
        eqm.orientation_of([0, 0, 1], [0, 0.2], [0, 0.5])


def test_orientation_reverses_with_direction():
    a = eqm.orientation_of([0, 0, 1], [0, -0.5], [0, 0.5]).orientation
    b = eqm.orientation_of([0, 0, -1], [0, 0.5], [0, -0.5]).orientation
    assert a is b is eqm.Orientation.LEFT


def test_edge_orientations(trig_env):
    _, e = trig_env
    for side, want in ((LEFT, eqm.Orientation.LEFT), (RIGHT, eqm.Orientation.RIGHT)):
        eq = eqm.EarthquakeField(e, side)
        for edge in eq.hull.edges:
            cmp = eqm.edge_comparison(eq, edge)
            assert cmp.orientation is want
            assert eqm.axis_chord_error(cmp, edge) <= 1e-8


def test_boundary_trace_simple(simple_env):
    eq = eqm.EarthquakeField(simple_env, LEFT)
    radii = [0.9, 0.99, 0.999]
    np.testing.assert_allclose(eqm.boundary_trace(eq, np.pi / 2, radii), [[-1, 0]] * 3, atol=1e-12)
    t = np.pi / 3
    err = np.linalg.norm(eqm.boundary_trace(eq, t, radii) - corpus.simple_earthquake().field(t), axis=1)
    assert np.all(np.diff(err) < 0) and err[-1] < 1e-3


def test_boundary_trace_killing():
    s = np.array([0.4, -0.2, 0.7])
    eq = eqm.EarthquakeField(env.build(Killing(s), 64))
    tr = eqm.boundary_trace(eq, 1.0, [0.5, 0.9])
    np.testing.assert_allclose(tr, mink.killing_eval(s, np.array([0.5, 0.9])[:, None] * mink.circle_point(1.0)))


def test_policy_compare(simple_env):
    rep = eqm.policy_compare(simple_env, None, np.array([0.2, 0.4]))
    assert rep.kind == "unique" and rep.agree
    rep = eqm.policy_compare(simple_env, None, np.array([0.3, 0.0]))
    assert rep.kind == "edge" and not rep.agree
    v = rep.values
    np.testing.assert_allclose(v["medial"], 0.5 * (v["first"] + v["second"]), atol=1e-14)
    np.testing.assert_allclose(v["blend=0.3"], 0.7 * v["first"] + 0.3 * v["second"], atol=1e-14)
    rep = eqm.policy_compare(Killing([0.1, 0.2, 0.3]), 64, np.array([0.0, 0.0]))
    assert rep.agree


def test_first_extreme_is_right_facet(simple_env):
    # ExtremeFirst uses the plane of the facet on the right of the chord a -> b
    (edge,) = env.bending_edges(simple_env)
    eq = eqm.EarthquakeField(simple_env, LEFT, eqm.ExtremeFirst())
    np.testing.assert_allclose(eq.sigma_at([0.2, 0.0]), edge.sigma_left, atol=1e-14)


def test_parse_policy():
    assert eqm.parse_policy("medial") == eqm.Medial()
    assert eqm.parse_policy("blend=0.25") == eqm.Blend(0.25)
    assert eqm.policy_name(eqm.Blend(0.25)) == "blend=0.25"
    with pytest.raises(ValueError):
        eqm.parse_policy("blend=2")
    with pytest.raises(ValueError):
        eqm.parse_policy("fancy")


def test_equivariance(rng):
    # E of A_*X equals A_* E of X
    from earthquake_lab.field import act

    s_lo = corpus.simple_earthquake()
    A = mink.random_isometry(rng, 0.8)
    e1 = env.build(s_lo, 512)
    e2 = env.build(act(s_lo, A), 512)
    p = rng.uniform(-0.5, 0.5, (50, 2))
    lhs = eqm.eval_eq(eqm.EarthquakeField(e2), mink.klein_action(A, p))
    rhs = mink.pushforward(A, p, eqm.eval_eq(eqm.EarthquakeField(e1), p))
    np.testing.assert_allclose(lhs, rhs, atol=1e-10)
