"""Property suites run by ``earthquake-lab verify``.

Each suite returns a :class:`SuiteResult`.  Sizes are scaled down by the
``quick`` flag so that the whole table runs in seconds.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from . import corpus, mink, oracle
from . import earthquake as eqm
from . import envelope as env
from . import norms
from .field import Killing


@dataclass(frozen=True)
class SuiteResult:
    name: str
    ok: bool
    detail: str


def suite_kernel(rng, quick):
    n = 1000 if quick else 10000
    x, y = rng.normal(size=(2, n, 3))
    c = mink.cross(x, y)
    ortho = max(np.max(np.abs(mink.inner(c, x))), np.max(np.abs(mink.inner(c, y))))
    th = rng.uniform(0, 2 * np.pi, n)
    z = mink.circle_point(th)
    lhs = mink.inner(mink.homogenize(z), x)
    v = np.concatenate([np.zeros((n, 1)), np.stack([-z[:, 1], z[:, 0]], axis=-1)], axis=-1)
    rhs = mink.inner(mink.cross(mink.homogenize(z), x), v)
    ident = np.max(np.abs(lhs - rhs))
    worst = 0.0
    for _ in range(100 if quick else 1000):
        A = mink.random_isometry(rng, 1.0)
        s = rng.normal(size=3)
        p = rng.uniform(-0.6, 0.6, 2)
        left = mink.killing_eval(A @ s, mink.klein_action(A, p))
        right = mink.pushforward(A, p, mink.killing_eval(s, p))
        worst = max(worst, np.max(np.abs(left - right)))
    ok = ortho <= 1e-12 * 10 and ident <= 1e-12 * 10 and worst <= 1e-9
    return SuiteResult("minkowski kernel", bool(ok),
                       "orth %.1e  identity %.1e  equivariance %.1e" % (ortho, ident, worst))


def suite_killing(rng, quick):
    worst = 0.0
    pts = rng.uniform(-0.7, 0.7, (1000, 2))
    for _ in range(5 if quick else 20):
        s = rng.uniform(-1, 1, 3)
        e = env.build(Killing(s), 256)
        for side in eqm.EqSide:
            got = eqm.eval_eq(eqm.EarthquakeField(e, side), pts)
            worst = max(worst, np.max(np.abs(got - mink.killing_eval(s, pts))))
    return SuiteResult("killing fixed point", worst <= 1e-9, "max error %.1e" % worst)


def suite_oracle(rng, quick):
    worst = 0.0
    worst_env = 0.0
    for k in range(5 if quick else 50):
        side = "left" if k % 2 == 0 else "right"
        spec, f = oracle.random_finite_spec(rng, side=side)
        e = env.build(f, 1024 if quick else 4096)
        eq = eqm.EarthquakeField(e, eqm.EqSide.LEFT if side == "left" else eqm.EqSide.RIGHT)
        pts = []
        while len(pts) < 20:
            p = rng.uniform(-0.7, 0.7, 2)
            v = np.sort(spec.values(p))
            if v[-1] - v[-2] > 1e-6:
                pts.append(p)
        pts = np.array(pts)
        want = np.array([oracle.finite_eq_oracle(spec, p) for p in pts])
        worst = max(worst, np.max(np.abs(eqm.eval_eq(eq, pts) - want)))
        if side == "left":
            small = env.build(f, 24)
            for p in pts[:3]:
                ref = oracle.envelope_oracle(f, p, nodes=small.nodes)
                worst_env = max(worst_env, abs(ref - float(env.eval_lower(small, p))))
    ok = worst <= 1e-6 and worst_env <= 1e-9
    return SuiteResult("oracle equivalence", bool(ok), "field %.1e  envelope %.1e" % (worst, worst_env))


def suite_orientation(rng, quick):
    fields = corpus.trig_corpus(3 if quick else 20)
    n = 1024 if quick else 4096
    bad = 0
    total = 0
    axis = 0.0
    for f in fields:
        e = env.build(f, n)
        for side, want in ((eqm.EqSide.LEFT, eqm.Orientation.LEFT), (eqm.EqSide.RIGHT, eqm.Orientation.RIGHT)):
            eq = eqm.EarthquakeField(e, side)
            for edge in eq.hull.edges:
                total += 1
                try:
                    cmp = eqm.edge_comparison(eq, edge)
                except Exception:
                    bad += 1
                    continue
                bad += cmp.orientation is not want
                axis = max(axis, eqm.axis_chord_error(cmp, edge))
    ok = bad == 0 and axis <= 1e-8
    return SuiteResult("left/right orientation", ok, "%d/%d edges wrong, axis %.1e" % (bad, total, axis))


def suite_boundary(rng, quick):
    fields = corpus.trig_corpus(3 if quick else 20)
    thetas = np.arange(64) * (2 * np.pi / 64)
    worst3 = 0.0
    monotone = True
    for f in fields:
        eq = eqm.EarthquakeField(env.build(f, 4096))
        errs = [eqm.boundary_error(eq, f, thetas, 1 - 10.0 ** -k) for k in (1, 2, 3)]
        monotone &= errs[0] > errs[1] > errs[2]
        worst3 = max(worst3, errs[2])
    d = corpus.dip_atom(1024)
    e = env.build(d)
    radial = abs(float(env.eval_lower(e, [0.999, 0.0])) + 1.0)
    ok = monotone and worst3 <= 5e-2 and radial <= 2e-3
    return SuiteResult("boundary extension", bool(ok),
                       "k=3 error %.2e, decreasing %s, radial %.1e" % (worst3, monotone, radial))


def suite_th2(rng, quick):
    fields = [corpus.simple_earthquake()] + corpus.trig_corpus(2 if quick else 5)
    bad = []
    for k, f in enumerate(fields):
        rep = norms.verify_th2(f, N=1024 if quick else 4096, grid_n=64 if quick else 256,
                               cr_samples=2000 if quick else 20000)
        if not rep.ok:
            bad.append(k)
    return SuiteResult("TH2 inequalities", not bad, "failures %s" % bad)


def suite_policy(rng, quick):
    f = corpus.trig_field(3)
    e = env.build(f, 1024)
    fields = {name: eqm.EarthquakeField(e, eqm.EqSide.LEFT, p) for name, p in eqm.COMPARED_POLICIES.items()}
    pts = rng.uniform(-0.7, 0.7, (200 if quick else 1000, 2))
    vals = [eqm.eval_eq(q, pts) for q in fields.values()]
    agree = all(np.array_equal(vals[0], v) for v in vals[1:])
    affine = 0.0
    for edge in e.lower.edges[:50]:
        p = 0.5 * (edge.endpoints[0] + edge.endpoints[1])
        s = [eqm.eval_eq(eqm.EarthquakeField(e, eqm.EqSide.LEFT, eqm.Blend(t)), p) for t in (0.0, 0.3, 1.0)]
        affine = max(affine, np.max(np.abs(s[1] - (0.7 * s[0] + 0.3 * s[2]))))
    ok = agree and affine <= 1e-10
    return SuiteResult("edge policies", bool(ok), "interior agree %s, blend affinity %.1e" % (agree, affine))


SUITES = [suite_kernel, suite_killing, suite_oracle, suite_orientation, suite_boundary, suite_th2, suite_policy]


def run_all(quick=False, seed=0):
    rng = np.random.default_rng(seed)
    results = []
    for suite in SUITES:
        try:
            results.append(suite(rng, quick))
        except Exception as exc:  # a crash counts as a failure
            results.append(SuiteResult(suite.__name__[6:], False, "error: %s" % exc))
    return results
