"""Command-line surface: classify, derive, mul, polar, rotate, check.

Forms are given with --form as a path to a JSON descriptor or as inline
JSON ({"metric": [[...]]} or {"coeffs": {"A": ...}}).  Output is JSON;
point batches may also be CSV.  Rejected inputs exit with code 2 and a
machine-readable error object.
"""

from __future__ import annotations

import argparse
import json
import math
import os
import sys

import numpy as np

from . import algebra, oracles, rotations, structure
from .algebra import System
from .forms import FormError, form_from_json


def _load_form(spec):
    if spec is None:
        raise FormError("--form is required")
    text = spec
    if os.path.exists(spec):
        with open(spec) as fh:
            text = fh.read()
    return form_from_json(text)


def _emit(payload, out=None):
    text = json.dumps(payload, indent=2, sort_keys=True)
    if out:
        with open(out, "w") as fh:
            fh.write(text + "\n")
    else:
        print(text)


def _system_header(system):
    return {
        "form": system.form.to_json(),
        "constants": system.constants.to_json(),
    }


def cmd_classify(args):
    form = _load_form(args.form)
    _emit(form.to_json(), args.out)
    return 0


def cmd_derive(args):
    form = _load_form(args.form)
    sc = structure.derive_constants(form)
    table = structure.multiplication_table(sc, form)
    _emit({
        "constants": sc.to_json(),
        "table": table.tolist(),
        "residuals": structure.identity_residuals(sc, form).tolist(),
    }, args.out)
    return 0


def _parse_number(text):
    obj = json.loads(text)
    if isinstance(obj, list):
        obj = dict(zip("sijk", obj))
    return obj


def cmd_mul(args):
    system = System.from_form(_load_form(args.form))
    q = algebra.number_from_json(system, _parse_number(args.q))
    p = algebra.number_from_json(system, _parse_number(args.p))
    out = algebra.multiply(q, p)
    _emit({**_system_header(system), "product": out.to_json()}, args.out)
    return 0


def cmd_polar(args):
    system = System.from_form(_load_form(args.form))
    q = algebra.number_from_json(system, _parse_number(args.q))
    pf = algebra.polar_decompose(q)
    back = algebra.from_polar(system, pf)
    _emit({
        **_system_header(system),
        "polar": pf.to_json(),
        "reconstruction": back.to_json(),
        "character": algebra.character(q),
        "norm": algebra.norm(q),
    }, args.out)
    return 0


def _read_points(path):
    pts = []
    with open(path) as fh:
        for line in fh:
            line = line.strip()
            if not line:
                continue
            pts.append([float(tok) for tok in line.split(",")])
    return np.asarray(pts, dtype=float)


def cmd_rotate(args):
    system = System.from_form(_load_form(args.form))
    axis = np.array([float(tok) for tok in args.axis.split(",")])
    theta = math.radians(args.angle) if args.degrees else args.angle
    if args.method == "rodrigues":
        rot = rotations.rodrigues(system, axis, theta,
                                  normalize=args.normalize_axis)
    elif args.method == "cayley":
        rot = rotations.cayley(system, axis)
    else:
        val = system.form_value(axis)
        if val >= -1e-12:
            raise FormError(
                "sandwich needs a circular-type axis (form value < 0)")
        unit = axis / math.sqrt(-val)
        half = theta / 2.0
        q = system.from_components(
            np.concatenate([[math.cos(half)], math.sin(half) * unit]))
        _, rot = rotations.sandwich_rotation(q)
    payload = {**_system_header(system), "rotation": rot.to_json()}
    if args.points:
        pts, drift = rotations.rotate_points(system, rot, _read_points(args.points))
        payload["form_drift"] = drift
        if args.out and args.out.endswith(".csv"):
            with open(args.out, "w") as fh:
                for row in pts:
                    fh.write(",".join(repr(float(x)) for x in row) + "\n")
            print(json.dumps({"rotation": rot.to_json(), "form_drift": drift},
                             indent=2, sort_keys=True))
            return 0
        payload["points"] = pts.tolist()
    _emit(payload, args.out)
    return 0


def cmd_check(args):
    form = _load_form(args.form)
    reports = oracles.run_property_suite(form, samples=args.samples,
                                         seed=args.seed)
    ok = all(r.passed for r in reports)
    if args.json:
        _emit({"passed": ok, "properties": [r.to_json() for r in reports]},
              args.out)
    else:
        for r in reports:
            status = "pass" if r.passed else "FAIL"
            print(f"{status}  {r.name:32s} max_residual={r.max_residual:.3e} "
                  f"tol={r.tolerance:.1e} samples={r.samples}")
    return 0 if ok else 1


def build_parser():
    parser = argparse.ArgumentParser(
        prog="quadnum",
        description="Number systems of ternary quadratic forms and "
                    "quadric-preserving rotations.")
    sub = parser.add_subparsers(dest="command", required=True)

    def add(name, fn, **kwargs):
        p = sub.add_parser(name, **kwargs)
        p.add_argument("--form", required=True,
                       help="path to JSON form descriptor, or inline JSON")
        p.add_argument("--out", help="write JSON output to this path")
        p.set_defaults(fn=fn)
        return p

    add("classify", cmd_classify, help="signature, class, delta, eigenvalues")
    add("derive", cmd_derive, help="structure constants and basis table")

    p = add("mul", cmd_mul, help="multiply two numbers")
    p.add_argument("q", help='left factor, e.g. \'{"s":1,"i":0,"j":0,"k":0}\'')
    p.add_argument("p", help="right factor, same format")

    p = add("polar", cmd_polar, help="polar decomposition of a number")
    p.add_argument("q", help="number as JSON")

    p = add("rotate", cmd_rotate, help="build and apply a rotation")
    p.add_argument("--axis", required=True, help="x,y,z")
    p.add_argument("--angle", type=float, default=0.0, help="radians")
    p.add_argument("--degrees", action="store_true",
                   help="interpret --angle in degrees")
    p.add_argument("--method", choices=("sandwich", "rodrigues", "cayley"),
                   default="rodrigues")
    p.add_argument("--normalize-axis", action="store_true",
                   help="normalize a non-lightlike axis before dispatch")
    p.add_argument("--points", help="CSV of points, one x,y,z per line")

    p = add("check", cmd_check, help="run the property suite")
    p.add_argument("--samples", type=int, default=200)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--json", action="store_true")

    return parser


def main(argv=None):
    args = build_parser().parse_args(argv)
    try:
        return args.fn(args)
    except FormError as exc:
        print(json.dumps(exc.to_json()), file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
