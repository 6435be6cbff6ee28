"""The ``cproj`` batch verification front end.

Subcommands::

    cproj table   --n-min 2 --n-max 6 [--out report.json]
    cproj verify  --model type2 --n 3 [--model all] [--jobs N] [--fast] [--out ...]
    cproj prolong --type II --n 3 [--out ...]
    cproj algebra --name s | --manifest path [--lam VALUE|symbolic]
                  [--deform TYPE --n N] [--out ...]
    cproj metric  --model submax-metric --n 2 [--signs +-] [--out ...]

Every run prints one line per check and writes an optional JSON report; the
exit status is 0 exactly when every check passes.  The environment variable
CPROJ_CATALOG overrides the built-in manifest directory.
"""

from __future__ import annotations

import argparse
import os
import sys
import time

from . import verify
from .report import Check, make_report, print_report, write_report


def _emit(args, command, checks, started):
    rep = make_report(command, checks, started)
    print_report(rep)
    if getattr(args, "out", None):
        write_report(rep, args.out)
    return 0 if rep["pass"] else 1


def cmd_table(args):
    started = time.time()
    rows, checks = verify.table_battery(args.n_min, args.n_max)
    for row in rows:
        cells = " ".join(f"{t}={row.bounds[t]}" for t in ("I", "II", "III", "IV"))
        line = f"n={row.n}: {cells}  submax={row.overall}"
        if row.advisories:
            line += f"  ({'; '.join(row.advisories)})"
        print(line)
    return _emit(args, f"table --n-min {args.n_min} --n-max {args.n_max}", checks, started)


MODEL_NS = {
    "flat": (2,),
    "type1": (3,),
    "type1-n2": (2,),
    "type2": (2, 3),
    "type3": (3,),
    "type3-n2": (2,),
    "nonminimal": (2,),
    "submax-metric": (2,),
    "cp1xc": (2,),
}


def _verify_one(name, n, fast, max_degree=None):
    spec, checks = verify.model_battery(name, n)
    _, sym_checks = verify.symmetry_battery(
        name, n, stabilize=not fast, spec=spec, max_degree=max_degree
    )
    checks.extend(sym_checks)
    if spec.metric is not None:
        checks.extend(verify.metric_battery(name, n, stabilize=not fast))
    return checks


def _battery_for_spec(spec, fast, max_degree=None):
    _, checks = verify.model_battery(None, None, spec=spec)
    if spec.expect("symmetry_dim") is not None:
        _, sym_checks = verify.symmetry_battery(
            None, None, stabilize=not fast, spec=spec, max_degree=max_degree
        )
        checks.extend(sym_checks)
    return checks


def cmd_verify(args):
    started = time.time()
    if args.model == "all":
        jobs = [(m, n) for m, ns in MODEL_NS.items() for n in ns]
    elif os.path.exists(args.model):
        # a manifest path: run the tensor battery directly on the file
        from .catalog import ManifestError, parse_model_manifest
        from .verify import symmetry_battery

        try:
            with open(args.model, "r", encoding="ascii") as fh:
                spec = parse_model_manifest(fh.read(), n=args.n)
        except ManifestError as exc:
            print(f"manifest error: {exc}", file=sys.stderr)
            return 2
        checks = _battery_for_spec(spec, fast=args.fast, max_degree=args.max_degree)
        return _emit(args, f"verify --model {args.model}", checks, started)
    else:
        from .catalog import MODEL_NAMES

        if args.model not in MODEL_NAMES:
            print(f"unknown model {args.model!r}; available: {MODEL_NAMES}", file=sys.stderr)
            return 2
        jobs = [(args.model, args.n)]
    checks = []
    if args.jobs > 1 and len(jobs) > 1:
        from concurrent.futures import ProcessPoolExecutor

        with ProcessPoolExecutor(max_workers=args.jobs) as ex:
            futs = [
                (m, n, ex.submit(_verify_one, m, n, args.fast, args.max_degree))
                for m, n in jobs
            ]
            for m, n, fut in futs:
                got = fut.result()
                for c in got:
                    c.check = f"{m}[n={n}] {c.check}"
                checks.extend(got)
    else:
        for m, n in jobs:
            got = _verify_one(m, n, args.fast, args.max_degree)
            for c in got:
                c.check = f"{m}[n={n}] {c.check}"
            checks.extend(got)
    return _emit(args, f"verify --model {args.model} --n {args.n}", checks, started)


def cmd_prolong(args):
    started = time.time()
    checks = verify.prolong_battery(args.type, args.n)
    return _emit(args, f"prolong --type {args.type} --n {args.n}", checks, started)


def cmd_algebra(args):
    started = time.time()
    checks = []
    if args.manifest:
        from .algebras import parse_algebra_manifest
        from .parse import ParseError

        try:
            with open(args.manifest, "r", encoding="ascii") as fh:
                alg = parse_algebra_manifest(fh.read())
        except (OSError, ParseError) as exc:
            print(f"manifest error: {exc}", file=sys.stderr)
            return 2
        res = alg.jacobi_residual()
        checks.append(
            Check(
                f"{alg.name}: Jacobi identity",
                "jacobi",
                "empty residual",
                "empty residual" if not res else f"{len(res)} nonzero triples",
                not res,
                "recomputed",
            )
        )
    elif args.name:
        checks.extend(verify.algebra_battery(args.name, lam=args.lam))
    if args.deform:
        checks.extend(verify.deformation_battery(args.deform, args.n))
    if not checks:
        print("nothing to do: pass --name, --manifest, or --deform", file=sys.stderr)
        return 2
    return _emit(args, "algebra", checks, started)


def cmd_metric(args):
    started = time.time()
    signs = None
    if args.signs:
        signs = tuple(1 if ch == "+" else -1 for ch in args.signs)
    checks = verify.metric_battery(args.model, args.n, signs=signs, stabilize=not args.fast)
    return _emit(args, f"metric --model {args.model} --n {args.n}", checks, started)


def build_parser():
    p = argparse.ArgumentParser(
        prog="cproj",
        description="exact verification of c-projective symmetry claims",
    )
    sub = p.add_subparsers(dest="command", required=True)

    t = sub.add_parser("table", help="dimension-bound table, both routes")
    t.add_argument("--n-min", type=int, default=2)
    t.add_argument("--n-max", type=int, default=6)
    t.add_argument("--out")
    t.set_defaults(fn=cmd_table)

    v = sub.add_parser("verify", help="full battery for one model (or all)")
    v.add_argument("--model", required=True)
    v.add_argument("--n", type=int, default=None)
    v.add_argument("--max-degree", type=int, default=None,
                   help="override the model's recorded ansatz degree")
    v.add_argument("--jobs", type=int, default=1)
    v.add_argument("--fast", action="store_true", help="skip stabilization runs")
    v.add_argument("--out")
    v.set_defaults(fn=cmd_verify)

    pr = sub.add_parser("prolong", help="annihilator and prolongation for a type")
    pr.add_argument("--type", required=True, choices=["I", "II", "III", "IV"])
    pr.add_argument("--n", type=int, required=True)
    pr.add_argument("--out")
    pr.set_defaults(fn=cmd_prolong)

    a = sub.add_parser("algebra", help="structure-constant algebra checks")
    a.add_argument("--name")
    a.add_argument("--manifest")
    a.add_argument("--lam", default=None)
    a.add_argument("--deform", choices=["I", "II", "III", "IV"])
    a.add_argument("--n", type=int, default=2)
    a.add_argument("--out")
    a.set_defaults(fn=cmd_algebra)

    m = sub.add_parser("metric", help="pseudo-Kahler battery for a metric model")
    m.add_argument("--model", default="submax-metric")
    m.add_argument("--n", type=int, default=2)
    m.add_argument("--signs", default=None, help="sign pattern like '+-' for k>=3")
    m.add_argument("--fast", action="store_true")
    m.add_argument("--out")
    m.set_defaults(fn=cmd_metric)
    return p


def main(argv=None):
    args = build_parser().parse_args(argv)
    try:
        return args.fn(args)
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
