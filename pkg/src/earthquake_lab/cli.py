"""Command-line interface: ``earthquake-lab <command> SPEC [options]``.

Exit codes:
  0  success
  1  verify: at least one property suite failed
  2  the field spec could not be parsed or validated
  3  degenerate input (coplanar samples while bending structure was required)
  4  norms: an inequality verdict is false beyond the declared slack
"""

from __future__ import annotations

import argparse
import csv
import json
import sys

import jsonschema
import numpy as np

from . import earthquake as eqm
from . import envelope as env
from . import lamination as lamlib
from . import mink, norms, verify
from .errors import DegenerateInput, EarthquakeLabError
from .field import Killing, PiecewiseAffine, Sampled, TrigPoly

EXIT_OK, EXIT_VERIFY, EXIT_PARSE, EXIT_DEGENERATE, EXIT_INEQUALITY = 0, 1, 2, 3, 4

_NUM = {"type": "number"}
_NUMS = {"type": "array", "items": _NUM}
SPEC_SCHEMA = {
    "type": "object",
    "required": ["type"],
    "oneOf": [
        {"properties": {"type": {"const": "killing"},
                        "sigma": {"type": "array", "items": _NUM, "minItems": 3, "maxItems": 3}},
         "required": ["sigma"]},
        {"properties": {"type": {"const": "piecewise-affine"},
                        "planes": {"type": "array", "minItems": 1,
                                   "items": {"type": "array", "items": _NUM, "minItems": 3, "maxItems": 3}},
                        "arc_bounds": _NUMS,
                        "continuous": {"type": "boolean"}},
         "required": ["planes", "arc_bounds"]},
        {"properties": {"type": {"const": "trig"}, "c0": _NUM, "cos": _NUMS, "sin": _NUMS},
         "required": ["c0"]},
        {"properties": {"type": {"const": "samples"}, "theta": _NUMS, "phi": _NUMS,
                        "interp": {"enum": ["linear", "none"]},
                        "atoms": {"type": "array", "items": {"type": "integer", "minimum": 0}}},
         "required": ["theta", "phi"]},
    ],
}


class SpecError(Exception):
    pass


def field_from_spec(doc):
    """Build a circle field from a parsed spec document."""
    try:
        jsonschema.validate(doc, SPEC_SCHEMA)
    except jsonschema.ValidationError as exc:
        raise SpecError(exc.message) from exc
    kind = doc["type"]
    try:
        if kind == "killing":
            return Killing(doc["sigma"])
        if kind == "piecewise-affine":
            bounds = np.asarray(doc["arc_bounds"], dtype=float)
            if np.any(bounds < 0) or np.any(bounds >= 2 * np.pi):
                raise SpecError("arc bounds must lie in [0, 2π)")
            return PiecewiseAffine(doc["planes"], bounds, doc.get("continuous", True))
        if kind == "trig":
            return TrigPoly(doc["c0"], doc.get("cos", []), doc.get("sin", []))
        return Sampled(doc["theta"], doc["phi"], doc.get("interp", "linear"), doc.get("atoms", ()))
    except (ValueError, IndexError) as exc:
        raise SpecError(str(exc)) from exc


def load_spec(path):
    try:
        with open(path, encoding="utf-8") as fh:
            doc = json.load(fh)
    except (OSError, json.JSONDecodeError) as exc:
        raise SpecError(str(exc)) from exc
    return field_from_spec(doc)


def _fmt(x):
    return format(float(x), ".17g")


def _sides(choice):
    return [eqm.EqSide.LEFT, eqm.EqSide.RIGHT] if choice == "both" else [eqm.EqSide(choice)]


def polar_grid(n):
    """Origin followed by n rings of n points, radii up to 0.99."""
    radii = 0.99 * np.arange(1, n + 1) / n
    angles = np.arange(n) * (2 * np.pi / n)
    ring = radii[:, None, None] * mink.circle_point(angles)[None, :, :]
    return np.concatenate([np.zeros((1, 2)), ring.reshape(-1, 2)])


def _open_out(path):
    return sys.stdout if path in (None, "-") else open(path, "w", encoding="utf-8", newline="")


def _build(args, f):
    return env.build(f, args.n, require_bending=args.require_bending)


def cmd_extend(args, f):
    e = _build(args, f)
    policy = eqm.parse_policy(args.policy)
    pts = polar_grid(args.grid)
    out = _open_out(args.out)
    try:
        w = csv.writer(out, lineterminator="\n")
        w.writerow(["eta1", "eta2", "E1", "E2", "side", "policy"])
        for side in _sides(args.side):
            vals = eqm.eval_eq(eqm.EarthquakeField(e, side, policy), pts)
            name = eqm.policy_name(policy)
            for p, v in zip(pts, vals):
                w.writerow([_fmt(p[0]), _fmt(p[1]), _fmt(v[0]), _fmt(v[1]), side.value, name])
    finally:
        if out is not sys.stdout:
            out.close()
    return EXIT_OK


def _write_json(doc, path):
    text = json.dumps(doc, indent=2, sort_keys=True) + "\n"
    out = _open_out(path)
    try:
        out.write(text)
    finally:
        if out is not sys.stdout:
            out.close()


def cmd_lamination(args, f):
    e = _build(args, f)
    docs = []
    for side in _sides(args.side):
        lam = lamlib.from_envelope(e, side.hull_side)
        docs.append(lamlib.to_json(lam, side.value, e.N))
    _write_json(docs[0] if len(docs) == 1 else {"sides": docs}, args.out)
    return EXIT_OK


def cmd_norms(args, f):
    e = _build(args, f)
    rep = norms.verify_th2(f, N=args.n, grid_n=args.grid, cr_samples=args.cr_samples, seed=args.seed,
                           refine_iters=args.refine_iters, slack=args.slack, e=e)
    _write_json(rep.to_json(), args.out)
    return EXIT_OK if rep.ok else EXIT_INEQUALITY


def render_svg(f, e, n_arrows=13):
    """Unit circle, left lamination, left earthquake arrows and the width maximizer."""
    lines = ['<?xml version="1.0" encoding="UTF-8"?>',
             '<svg xmlns="http://www.w3.org/2000/svg" version="1.1" width="600" height="600" '
             'viewBox="-1.1 -1.1 2.2 2.2">',
             '<g transform="scale(1,-1)">',
             '<circle cx="0" cy="0" r="1" fill="none" stroke="black" stroke-width="0.005"/>']
    lam = lamlib.from_envelope(e, env.Side.LOWER)
    if len(lam):
        top = float(np.max(lam.weights))
        for leaf, ends in zip(lam.leaves, lam.endpoints):
            sw = 0.002 + 0.018 * leaf.weight / top
            lines.append('<line x1="%.6f" y1="%.6f" x2="%.6f" y2="%.6f" stroke="firebrick" '
                         'stroke-width="%.6f"/>' % (ends[0, 0], ends[0, 1], ends[1, 0], ends[1, 1], sw))
    xs = np.linspace(-0.9, 0.9, n_arrows)
    grid = np.array([(x, y) for y in xs for x in xs if x * x + y * y < 0.85])
    vec = eqm.eval_eq(eqm.EarthquakeField(e, eqm.EqSide.LEFT), grid)
    size = float(np.max(np.linalg.norm(vec, axis=1))) if len(vec) else 0.0
    scale = 0.12 / size if size > 0 else 0.0
    for p, v in zip(grid, vec):
        q = p + scale * v
        lines.append('<line x1="%.6f" y1="%.6f" x2="%.6f" y2="%.6f" stroke="steelblue" '
                     'stroke-width="0.006"/>' % (p[0], p[1], q[0], q[1]))
        lines.append('<circle cx="%.6f" cy="%.6f" r="0.008" fill="steelblue"/>' % (q[0], q[1]))
    if not e.is_flat:
        _, arg = norms.width(e, 64, 2)
        lines.append('<circle cx="%.6f" cy="%.6f" r="0.025" fill="none" stroke="darkgreen" '
                     'stroke-width="0.008"/>' % (arg[0], arg[1]))
    lines += ["</g>", "</svg>", ""]
    return "\n".join(lines)


def cmd_render(args, f):
    e = _build(args, f)
    svg = render_svg(f, e)
    out = _open_out(args.out)
    try:
        out.write(svg)
    finally:
        if out is not sys.stdout:
            out.close()
    return EXIT_OK


def cmd_verify(args):
    def run():
        return verify.run_all(quick=args.quick, seed=args.seed)

    if args.inject_fault:
        with mink.inject_sign_fault():
            results = run()
    else:
        results = run()
    width = max(len(r.name) for r in results)
    for r in results:
        print("%-*s  %s  %s" % (width, r.name, "PASS" if r.ok else "FAIL", r.detail))
    return EXIT_OK if all(r.ok for r in results) else EXIT_VERIFY


def build_parser():
    parser = argparse.ArgumentParser(
        prog="earthquake-lab",
        description="Infinitesimal earthquakes of circle vector fields.",
        epilog="exit codes: 0 ok, 1 verify failure, 2 spec parse error, "
               "3 degenerate input, 4 inequality violated",
        formatter_class=argparse.RawDescriptionHelpFormatter,
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p, grid_default=256):
        p.add_argument("spec", help="JSON field spec")
        p.add_argument("--n", type=int, default=4096, help="number of uniform boundary samples")
        p.add_argument("--side", choices=["left", "right", "both"], default="left")
        p.add_argument("--grid", type=int, default=grid_default, help="polar grid size")
        p.add_argument("--policy", default="medial", help="medial | first | second | blend=S")
        p.add_argument("--seed", type=int, default=0)
        p.add_argument("--out", default="-", help="output path (default stdout)")
        p.add_argument("--require-bending", action="store_true",
                       help="fail with exit 3 when the field is Killing")

    common(sub.add_parser("extend", help="evaluate the earthquake extension on a polar grid"), 32)
    common(sub.add_parser("lamination", help="write the bending lamination as JSON"))
    p = sub.add_parser("norms", help="width, cross-ratio and Thurston norms with TH2 verdicts")
    common(p)
    p.add_argument("--cr-samples", type=int, default=20000)
    p.add_argument("--refine-iters", type=int, default=5)
    p.add_argument("--slack", type=float, default=0.05)
    common(sub.add_parser("render", help="write an SVG picture"))
    p = sub.add_parser("verify", help="run the property suites")
    p.add_argument("--quick", action="store_true", help="reduced sample counts")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--inject-fault", action="store_true", help=argparse.SUPPRESS)
    return parser


COMMANDS = {"extend": cmd_extend, "lamination": cmd_lamination, "norms": cmd_norms, "render": cmd_render}


def main(argv=None):
    parser = build_parser()
    args = parser.parse_args(argv)
    if args.command == "verify":
        return cmd_verify(args)
    for name in ("n", "grid"):
        if getattr(args, name) <= 0:
            parser.error("--%s must be positive" % name)
    try:
        eqm.parse_policy(args.policy)
    except ValueError as exc:
        parser.error(str(exc))
    try:
        f = load_spec(args.spec)
    except SpecError as exc:
        print("earthquake-lab: invalid field spec: %s" % exc, file=sys.stderr)
        return EXIT_PARSE
    try:
        return COMMANDS[args.command](args, f)
    except DegenerateInput as exc:
        print("earthquake-lab: degenerate input: %s" % exc, file=sys.stderr)
        return EXIT_DEGENERATE
    except EarthquakeLabError as exc:
        print("earthquake-lab: %s" % exc, file=sys.stderr)
        return EXIT_DEGENERATE
