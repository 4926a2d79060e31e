import numpy as np
import pytest

from earthquake_lab import corpus, mink, oracle
from earthquake_lab import envelope as env
from earthquake_lab.errors import DegenerateInput, OutOfDomain
from earthquake_lab.field import Killing, PiecewiseAffine


def two_leaf_field(c=0.5):
    """max of 0, eta2 and eta2 + n(eta), n the unit normal of the chord eta2 = c."""
    n = np.array([c, 0.0, 1.0]) / np.sqrt(1 - c * c)
    s = np.arcsin(c)
    planes = [[0, 0, 1], [0, 0, 1] + n, [0, 0, 1], [0, 0, 0]]
    return PiecewiseAffine(planes, [0.0, s, np.pi - s, np.pi])


def test_killing_is_flat(rng):
    s = np.array([0.2, -0.5, 0.3])
    e = env.build(Killing(s), 256)
    assert e.is_flat
    assert env.bending_edges(e) == [] and env.bending_edges(e, env.Side.UPPER) == []
    p = rng.uniform(-0.6, 0.6, (30, 2))
    want = mink.inner(mink.homogenize(p), s)
    np.testing.assert_allclose(env.eval_lower(e, p), want, atol=1e-14)
    np.testing.assert_allclose(env.eval_upper(e, p), want, atol=1e-14)
    planes = env.support_planes_at(e, p[0])
    assert isinstance(planes, env.Unique)
    np.testing.assert_allclose(planes.sigma, s, atol=1e-14)


def test_killing_require_bending():
    with pytest.raises(DegenerateInput):
        env.build(Killing([0, 1, 0]), 64, require_bending=True)


def test_simple_earthquake_structure(simple_env):
    e = simple_env
    pieces = env.flat_pieces(e)
    assert len(pieces) == 2
    sig = sorted(tuple(np.round(p.sigma, 12)) for p in pieces)
    assert sig == [(0, 0, 0), (0, 0, 1)]
    (edge,) = env.bending_edges(e)
    assert edge.weight == pytest.approx(1.0, abs=1e-9)
    np.testing.assert_allclose(sorted([edge.a_theta, edge.b_theta]), [0, np.pi], atol=1e-12)


def test_simple_earthquake_values(simple_env):
    assert env.eval_lower(simple_env, [0, 0.5]) == pytest.approx(0.5)
    assert env.eval_upper(simple_env, [0, 0]) == pytest.approx(0.5)
    assert env.eval_lower(simple_env, [0.3, -0.4]) == pytest.approx(0.0)


def test_simple_earthquake_support_planes(simple_env):
    u = env.support_planes_at(simple_env, [0, 0.5])
    assert isinstance(u, env.Unique)
    np.testing.assert_allclose(u.sigma, [0, 0, 1], atol=1e-12)
    ed = env.support_planes_at(simple_env, [0, 0])
    assert isinstance(ed, env.Edge)
    pair = sorted([tuple(np.round(ed.sigma1, 12)), tuple(np.round(ed.sigma2, 12))])
    assert pair == [(0, 0, 0), (0, 0, 1)]


def test_dip_atom_cone():
    e = env.build(corpus.dip_atom(1024))
    assert env.eval_lower(e, [0, 0]) == pytest.approx(-0.5, abs=1e-12)
    for r in (0.2, 0.6, 0.95):
        assert env.eval_lower(e, [r, 0]) == pytest.approx(-(1 + r) / 2, abs=1e-12)


def test_two_leaf_lamination():
    e = env.build(two_leaf_field(), 2048)
    w = sorted(edge.weight for edge in env.bending_edges(e))
    np.testing.assert_allclose(w, [1, 1], atol=1e-9)


def test_lower_below_upper_and_boundary_values(trig_env):
    f, e = trig_env
    r = np.sqrt(np.random.default_rng(0).uniform(0, 0.98, 500))
    t = np.random.default_rng(1).uniform(0, 2 * np.pi, 500)
    p = r[:, None] * mink.circle_point(t)
    assert np.all(env.eval_lower(e, p) <= env.eval_upper(e, p) + 1e-12)
    z = mink.circle_point(e.nodes)
    np.testing.assert_allclose(env.eval_lower(e, 0.9999999 * z), f.support(e.nodes), atol=1e-5)


def test_lower_is_convex(trig_env):
    _, e = trig_env
    rng = np.random.default_rng(3)
    a, b = rng.uniform(-0.6, 0.6, (2, 300, 2))
    t = rng.uniform(0, 1, (300, 1))
    mid = env.eval_lower(e, (1 - t) * a + t * b)
    chord = (1 - t[:, 0]) * env.eval_lower(e, a) + t[:, 0] * env.eval_lower(e, b)
    assert np.all(mid <= chord + 1e-12)
    top = env.eval_upper(e, (1 - t) * a + t * b)
    chord = (1 - t[:, 0]) * env.eval_upper(e, a) + t[:, 0] * env.eval_upper(e, b)
    assert np.all(top >= chord - 1e-12)


def test_matches_brute_force_oracle():
    f = corpus.trig_field(5)
    e = env.build(f, 30)
    for p in ([0.1, 0.2], [-0.5, 0.3], [0.0, -0.7]):
        assert env.eval_lower(e, p) == pytest.approx(oracle.envelope_oracle(f, p, nodes=e.nodes), abs=1e-10)


def test_bending_chords_disjoint(trig_env):
    from earthquake_lab import lamination as lamlib

    _, e = trig_env
    for side in env.Side:
        assert lamlib.is_disjoint(lamlib.from_envelope(e, side))


def test_bending_weight_is_plane_angle(trig_env):
    from earthquake_lab import halfpipe as hp

    _, e = trig_env
    for edge in env.bending_edges(e)[:40]:
        assert edge.weight == pytest.approx(float(hp.plane_angle(edge.sigma_left, edge.sigma_right)), rel=1e-9)


def test_exact_breakpoints_included():
    f = corpus.simple_earthquake()
    nodes = env.node_set(f, 10)
    assert np.any(np.abs(nodes - np.pi) < 1e-15)


def test_input_validation(simple_env):
    with pytest.raises(ValueError):
        env.build(corpus.trig_field(0), 4)
    with pytest.raises(OutOfDomain):
        env.eval_lower(simple_env, [1.0, 0.0])
