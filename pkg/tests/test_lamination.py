import json

import numpy as np
import pytest

from earthquake_lab import corpus, mink
from earthquake_lab import envelope as env
from earthquake_lab import lamination as lamlib
from earthquake_lab.field import Killing
from earthquake_lab.lamination import Leaf, MeasuredLamination


def vertical_pair(c, w=(1.0, 1.0)):
    """Leaves on the chords x = -c and x = c."""
    a = np.arccos(c)
    return MeasuredLamination([Leaf(-a % (2 * np.pi), a, w[0]), Leaf(np.pi - a, np.pi + a, w[1])])


def test_killing_is_empty():
    lam = lamlib.from_envelope(env.build(Killing([0.1, 0.2, 0.3]), 64))
    assert len(lam) == 0 and lam.total_mass == 0.0
    assert lamlib.thurston_norm(lam) == 0.0


def test_simple_earthquake_leaf(simple_env):
    lam = lamlib.from_envelope(simple_env)
    assert len(lam) == 1
    assert lam.weights[0] == pytest.approx(1.0, abs=1e-9)
    ends = lam.endpoints[0]
    np.testing.assert_allclose(sorted(ends[:, 0]), [-1, 1], atol=1e-12)
    np.testing.assert_allclose(ends[:, 1], 0, atol=1e-12)


def test_transverse_measure_examples(simple_env):
    lam = lamlib.from_envelope(simple_env)
    assert lamlib.transverse_measure(lam, lamlib.hyperbolic_arc([0, 0], [0, 1])) == pytest.approx(1.0)
    assert lamlib.transverse_measure(lam, ([0.1, 0.2], [0.3, 0.6])) == 0.0
    assert lamlib.transverse_measure(MeasuredLamination(), ([0, -0.5], [0, 0.5])) == 0.0


def test_crossing_needs_endpoints_on_both_sides(simple_env):
    lam = lamlib.from_envelope(simple_env)
    assert lamlib.transverse_measure(lam, ([0.0, 1e-9], [0.0, 0.5])) == 0.0
    assert lamlib.transverse_measure(lam, ([0.0, -1e-9], [0.0, 0.5])) == 1.0


def test_hyperbolic_arc():
    p, q = lamlib.hyperbolic_arc([0, 0], [1, 0], 2.0)
    np.testing.assert_allclose(p, [-np.tanh(1), 0], atol=1e-15)
    np.testing.assert_allclose(q, [np.tanh(1), 0], atol=1e-15)
    p, q = lamlib.hyperbolic_arc([0.3, 0.1], [0.2, 1.0], 0.0)
    np.testing.assert_allclose(p, [0.3, 0.1])
    np.testing.assert_allclose(q, [0.3, 0.1])


def test_hyperbolic_arc_has_requested_length(rng):
    mids = rng.uniform(-0.6, 0.6, (20, 2))
    dirs = rng.normal(size=(20, 2))
    p, q = lamlib.hyperbolic_arc(mids, dirs, 1.0)
    np.testing.assert_allclose(mink.hyperbolic_distance(p, q), 1.0, atol=1e-9)
    np.testing.assert_allclose(mink.hyperbolic_distance(p, mids), 0.5, atol=1e-9)


def test_thurston_single_leaf():
    lam = MeasuredLamination([Leaf(0.3, 2.9, 0.7)])
    assert lamlib.thurston_norm(lam) == pytest.approx(0.7)


def test_thurston_far_apart_leaves():
    c = np.tanh(0.6)  # leaves at hyperbolic distance 1.2
    assert lamlib.thurston_norm(vertical_pair(c)) == pytest.approx(1.0)


def test_thurston_close_leaves():
    c = np.tanh(0.4)  # distance 0.8, a unit arc crosses both
    assert lamlib.thurston_norm(vertical_pair(c)) == pytest.approx(2.0)


def test_sigma_gap_dominates_measure(trig_env):
    _, e = trig_env
    lam = lamlib.from_envelope(e)
    est = lamlib.thurston_search(lam, n_samples=500, refine_iters=2)
    assert lamlib.sigma_gap_bound(e, env.Side.LOWER, est.mids, est.dirs) >= est.value - 1e-12


def test_transport_preserves_measures(trig_env, rng):
    _, e = trig_env
    lam = lamlib.from_envelope(e)
    A = mink.random_isometry(rng, 0.8)
    moved = lamlib.transport(lam, A)
    assert lamlib.is_disjoint(moved)
    mids = rng.uniform(-0.5, 0.5, (200, 2))
    p, q = lamlib.hyperbolic_arc(mids, rng.normal(size=(200, 2)))
    np.testing.assert_allclose(lamlib.transverse_measures(moved, mink.klein_action(A, p), mink.klein_action(A, q)),
                               lamlib.transverse_measures(lam, p, q), atol=1e-12)


def test_is_disjoint_detects_crossings():
    assert not lamlib.is_disjoint(MeasuredLamination([Leaf(0, np.pi, 1), Leaf(np.pi / 2, 3 * np.pi / 2, 1)]))
    assert lamlib.is_disjoint(vertical_pair(0.5))


def test_leaf_validation():
    with pytest.raises(ValueError):
        MeasuredLamination([Leaf(1.0, 1.0, 1.0)])
    with pytest.raises(ValueError):
        MeasuredLamination([Leaf(0.0, 1.0, 0.0)])


def test_json_round_trip(simple_env):
    lam = lamlib.from_envelope(simple_env)
    doc = json.loads(json.dumps(lamlib.to_json(lam, "left", 1024)))
    assert doc["side"] == "left" and doc["N"] == 1024
    back = lamlib.from_json(doc)
    assert back.leaves == lam.leaves


def test_refinement_stable():
    f = corpus.trig_field(2)
    a = lamlib.from_envelope(env.build(f, 1024)).total_mass
    b = lamlib.from_envelope(env.build(f, 2048)).total_mass
    assert abs(a - b) <= 0.02 * b
