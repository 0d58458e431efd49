"""Command-line front end: ``bjortho {check, approx, verify, repro}``.

Exit codes: 0 all pass, 1 property failure, 2 usage or parse error.
"""
from __future__ import annotations

import argparse
import csv
import io
import json
import sys

from .approx import SubspaceBasis, best_approx
from .bochner import bochner_from_dict
from .errors import (DegenerateBasis, InvalidArgument, NoSupportFunctional,
                     UncertifiedSolution, UnsupportedSpace)
from .ortho import CRITERIA, bj_check, bj_direct
from .repro import EXAMPLES, run_repro
from .suites import CSV_COLUMNS, ORACLE_TOL, SUITES, RunConfig, run_suite

EXIT_OK, EXIT_FAIL, EXIT_USAGE = 0, 1, 2


class UsageError(Exception):
    pass


def _load_json(path: str):
    try:
        text = sys.stdin.read() if path == "-" else open(path, encoding="utf-8").read()
    except OSError as exc:
        raise UsageError(f"cannot read {path}: {exc.strerror}") from exc
    try:
        return json.loads(text)
    except json.JSONDecodeError as exc:
        raise UsageError(f"{path}: parse error at line {exc.lineno}, "
                         f"column {exc.colno}: {exc.msg}") from exc


def _parse_p_list(text: str | None) -> tuple | None:
    if text is None:
        return None
    try:
        return tuple(float(s) for s in text.split(",") if s.strip())
    except ValueError as exc:
        raise UsageError(f"--p expects numbers separated by commas, got {text!r}") from exc


def _single_p(args, doc) -> float:
    if args.p is not None:
        ps = _parse_p_list(args.p)
        if len(ps) != 1:
            raise UsageError("this subcommand takes a single --p")
        return ps[0]
    if "p" not in doc:
        raise UsageError("p missing: give --p or a \"p\" field in the input")
    return float(doc["p"])


def _function(doc, key):
    if key not in doc:
        raise InvalidArgument(f"input lacks field {key!r}")
    return bochner_from_dict(doc[key])


def _emit(args, payload: dict, rows: list | None = None, columns=None):
    if args.format == "csv" and rows is not None:
        buf = io.StringIO()
        w = csv.DictWriter(buf, fieldnames=list(columns), extrasaction="ignore",
                           lineterminator="\n")
        w.writeheader()
        for r in rows:
            w.writerow({k: (repr(v) if isinstance(v, float) else v)
                        for k, v in r.items()})
        text = buf.getvalue()
    else:
        text = json.dumps(payload, indent=2, sort_keys=False) + "\n"
    if args.out == "-":
        sys.stdout.write(text)
    else:
        with open(args.out, "w", encoding="utf-8") as fh:
            fh.write(text)


def _tol(args, default):
    return default if args.tol is None else args.tol


def cmd_check(args) -> int:
    doc = _load_json(args.input)
    if not isinstance(doc, dict):
        raise InvalidArgument("check input must be an object with f, g and p")
    f, g = _function(doc, "f"), _function(doc, "g")
    p = _single_p(args, doc)
    criterion = args.criterion or doc.get("criterion", "auto")
    if criterion not in CRITERIA:
        raise UsageError(f"unknown criterion {criterion!r}")
    eps_zero = float(doc.get("eps_zero", 0.0))
    tol = _tol(args, 1e-9)
    cert = bj_check(f, g, p, criterion, eps_zero, tol)
    oracle = bj_direct(f, g, p, ORACLE_TOL)
    agree = cert.orthogonal == oracle.orthogonal
    payload = {"p": p, "criterion": cert.to_dict(), "oracle": oracle.to_dict(),
               "agreement": agree}
    rows = [{"name": n, **c.to_dict()} for n, c in (("criterion", cert), ("oracle", oracle))]
    _emit(args, payload, rows, ("name", "criterion", "verdict", "orthogonal",
                                "lhs", "rhs", "tolerance", "scale"))
    return EXIT_OK if agree else EXIT_FAIL


def cmd_approx(args) -> int:
    doc = _load_json(args.input)
    if not isinstance(doc, dict):
        raise InvalidArgument("approx input must be an object with f, basis and p")
    f = _function(doc, "f")
    basis = doc.get("basis")
    if not isinstance(basis, list) or not basis:
        raise InvalidArgument("input needs a non-empty \"basis\" list")
    G = SubspaceBasis(tuple(bochner_from_dict(b) for b in basis))
    p = _single_p(args, doc)
    eps_zero = doc.get("eps_zero")
    try:
        res = best_approx(f, G, p, tol=_tol(args, 1e-6),
                          eps_zero=None if eps_zero is None else float(eps_zero))
    except UncertifiedSolution as exc:
        res = exc.result
    payload = res.to_dict()
    rows = [{"index": j, "coefficient": c, "optimality_residual": r}
            for j, (c, r) in enumerate(zip(payload["coefficients"],
                                           payload["optimality_residuals"]))]
    _emit(args, payload, rows, ("index", "coefficient", "optimality_residual"))
    return EXIT_OK if res.certified else EXIT_FAIL


def cmd_verify(args) -> int:
    suite = args.suite_pos or args.suite
    if suite is None:
        raise UsageError(f"verify needs a suite: one of {', '.join(SUITES)}")
    cfg = RunConfig(seed=args.seed, trials=args.trials, tol=_tol(args, 1e-6),
                    p_list=_parse_p_list(args.p), output=args.out,
                    format=args.format)
    rep = run_suite(suite, cfg)
    summary = rep.summary()
    _emit(args, {"summary": summary, "rows": rep.rows}, rep.rows,
          CSV_COLUMNS + ("status",))
    if args.format == "csv" or args.out != "-":
        print(json.dumps(summary), file=sys.stderr)
    return EXIT_OK if rep.passed else EXIT_FAIL


def cmd_repro(args) -> int:
    rep = run_repro(args.example)
    out = rep.to_dict()
    _emit(args, out, out["quantities"], ("name", "value", "expected", "ok"))
    return EXIT_OK if rep.passed else EXIT_FAIL


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--p", help="exponent; verify takes a comma list")
    common.add_argument("--tol", type=float, help="relative tolerance")
    common.add_argument("--format", choices=("json", "csv"), default="json")
    common.add_argument("--out", default="-", metavar="PATH",
                        help="output file, '-' for stdout (default)")

    ap = argparse.ArgumentParser(prog="bjortho", description=__doc__.splitlines()[0])
    sub = ap.add_subparsers(dest="command", required=True)

    c = sub.add_parser("check", parents=[common],
                       help="test f _|_ g with a criterion and the direct oracle")
    c.add_argument("input", help="JSON file with f, g (and optionally p, criterion)")
    c.add_argument("--criterion", choices=CRITERIA)
    c.set_defaults(run=cmd_check)

    a = sub.add_parser("approx", parents=[common],
                       help="best approximation of f from span(basis)")
    a.add_argument("input", help="JSON file with f, basis (and optionally p)")
    a.set_defaults(run=cmd_approx)

    v = sub.add_parser("verify", parents=[common], help="run a randomized property suite")
    v.add_argument("suite_pos", nargs="?", choices=SUITES, metavar="SUITE")
    v.add_argument("--suite", choices=SUITES)
    v.add_argument("--trials", type=int, default=100)
    v.add_argument("--seed", type=int, default=0)
    v.set_defaults(run=cmd_verify)

    r = sub.add_parser("repro", parents=[common], help="reproduce a worked counterexample")
    r.add_argument("example", choices=EXAMPLES)
    r.set_defaults(run=cmd_repro)
    return ap


def main(argv=None) -> int:
    ap = build_parser()
    try:
        args = ap.parse_args(argv)
    except SystemExit as exc:
        return EXIT_USAGE if exc.code else EXIT_OK
    try:
        return args.run(args)
    except (UsageError, InvalidArgument, NoSupportFunctional, UnsupportedSpace,
            DegenerateBasis) as exc:
        print(f"bjortho: error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
