"""Command-line front end.

Subcommands: check (axiom report for a triple document), distance (between
two pure states), m2-sweep (closed form vs solver on the equatorial grid),
sm (sheet distances over Higgs values), neutrinos (extension analysis).
Exit codes: 0 success, 1 domain failure (failed axiom, inadmissible
extension), 2 input error.
"""
from __future__ import annotations

import argparse
import csv
import dataclasses
import json
import math
import os
import sys
from concurrent.futures import ThreadPoolExecutor

import numpy as np

from .distance import SolverOptions, closed_form_m2, spectral_distance
from .models import equatorial_state, m2_triple
from .serialization import ParseError, load_triple, parse_complex, parse_state_spec
from .standard_model import (DEFAULT_HIGGS_GRID, HiggsDoublet, NeutrinoExtension,
                             build_internal_triple, default_params, g_tt,
                             higgs_fluctuation, neutrino_extension_analysis,
                             params_from_document, predicted_sheet_distance,
                             sheet_distance)
from .triple import run_all_checks

__all__ = ["main"]


def _max_workers(tasks: int) -> int:
    cap = os.environ.get("NCTK_THREADS")
    if cap is not None:
        try:
            return max(1, min(tasks, int(cap)))
        except ValueError:
            pass
    return max(1, min(tasks, os.cpu_count() or 1))


def _add_solver_flags(p: argparse.ArgumentParser) -> None:
    p.add_argument("--seed", type=int, default=42, help="solver RNG seed")
    p.add_argument("--restarts", type=int, default=None, help="solver restart count")
    p.add_argument("--max-iter", type=int, default=None, help="solver iteration budget")
    p.add_argument("--tol", type=float, default=None, help="solver convergence tolerance")


def _solver_options(args) -> SolverOptions:
    opts = SolverOptions(seed=args.seed)
    overrides = {}
    if args.restarts is not None:
        overrides["restarts"] = args.restarts
    if args.max_iter is not None:
        overrides["max_iterations"] = args.max_iter
    if args.tol is not None:
        overrides["tolerance"] = args.tol
    return dataclasses.replace(opts, **overrides) if overrides else opts


def _fmt(x: float) -> str:
    if math.isinf(x):
        return "inf"
    return f"{x:.12g}"


def _fmt_c(z) -> str:
    z = complex(z)
    if z.imag == 0:
        return _fmt(z.real)
    if z.real == 0:
        return f"{_fmt(z.imag)}i"
    sign = "+" if z.imag > 0 else "-"
    return f"{_fmt(z.real)}{sign}{_fmt(abs(z.imag))}i"


def _fail(message: str) -> int:
    print(f"error: {message}", file=sys.stderr)
    return 2


def _write_csv(path: str | None, header: list[str], rows: list[list], append: bool = False) -> None:
    if path is None:
        w = csv.writer(sys.stdout)
        w.writerow(header)
        w.writerows(rows)
        return
    mode = "a" if append and os.path.exists(path) and os.path.getsize(path) > 0 else "w"
    with open(path, mode, encoding="utf-8", newline="") as f:
        w = csv.writer(f)
        if mode == "w":
            w.writerow(header)
        w.writerows(rows)


def cmd_check(args) -> int:
    try:
        t = load_triple(args.triple)
    except (OSError, ParseError) as exc:
        return _fail(str(exc))
    report = run_all_checks(t)
    if args.json:
        print(json.dumps(report.to_dict(), indent=2))
    else:
        print(f"{'check':<22} {'status':<6} {'residual':<12} tolerance")
        for c in report:
            status = "pass" if c.passed else "FAIL"
            line = f"{c.name:<22} {status:<6} {c.residual:<12.3e} {c.tolerance:.1e}"
            if c.witness and not c.passed:
                line += f"  ({c.witness})"
            print(line)
    return 0 if report.all_passed else 1


def cmd_distance(args) -> int:
    try:
        t = load_triple(args.triple)
        if len(args.state) != 2:
            raise ParseError("state", "exactly two --state specs are required")
        s1 = parse_state_spec(args.state[0], "state[0]")
        s2 = parse_state_spec(args.state[1], "state[1]")
    except (OSError, ParseError) as exc:
        return _fail(str(exc))
    try:
        result = spectral_distance(t, s1, s2, _solver_options(args))
    except ValueError as exc:
        return _fail(str(exc))
    if args.json:
        print(json.dumps(result.to_dict(), indent=2))
    else:
        print(f"distance            {_fmt(result.value)}")
        print(f"achieved constraint {_fmt(result.achieved_constraint)}")
        print(f"iterations          {result.iterations}")
        print(f"restarts            {result.restarts_used}")
        print(f"converged           {str(result.converged).lower()}")
    if args.csv:
        _write_csv(args.csv,
                   ["triple", "state1", "state2", "value", "achieved_constraint",
                    "iterations", "converged"],
                   [[args.triple, args.state[0], args.state[1], _fmt(result.value),
                     _fmt(result.achieved_constraint), result.iterations,
                     str(result.converged).lower()]],
                   append=True)
    return 0


def cmd_m2_sweep(args) -> int:
    if not (math.isfinite(args.d1) and math.isfinite(args.d2)) or args.d1 == args.d2:
        return _fail("d1 and d2 must be finite and distinct")
    if args.grid < 1:
        return _fail("grid must be positive")
    opts = _solver_options(args)
    t = m2_triple(args.d1, args.d2)
    thetas = np.linspace(0.0, 2.0 * math.pi, args.grid, endpoint=False)

    def run(pair):
        th1, th2 = pair
        s1, s2 = equatorial_state(th1), equatorial_state(th2)
        cf = closed_form_m2(args.d1, args.d2, s1.vector, s2.vector)
        sol = spectral_distance(t, s1, s2, opts).value
        return [th1, th2, cf, sol, abs(cf - sol)]

    pairs = [(t1, t2) for t1 in thetas for t2 in thetas]
    with ThreadPoolExecutor(max_workers=_max_workers(len(pairs))) as pool:
        rows = list(pool.map(run, pairs))
    max_err = max(r[4] for r in rows)
    out = [[_fmt(v) for v in row] for row in rows]
    _write_csv(args.csv, ["theta1", "theta2", "closed_form", "solver", "abs_err"], out)
    if args.json:
        print(json.dumps({"rows": len(rows), "max_abs_err": max_err}))
    else:
        print(f"max abs err {_fmt(max_err)} over {len(rows)} pairs", file=sys.stderr)
    return 0


def _parse_higgs(spec: str) -> HiggsDoublet:
    parts = spec.split(",")
    if len(parts) != 2:
        raise ParseError("higgs", "expected 'h1,h2'")
    return HiggsDoublet(parse_complex(parts[0], "higgs.h1"),
                        parse_complex(parts[1], "higgs.h2"))


def cmd_sm(args) -> int:
    try:
        if args.masses:
            with open(args.masses, "r", encoding="utf-8") as f:
                params = params_from_document(json.load(f))
        else:
            params = default_params()
        values = ([_parse_higgs(s) for s in args.higgs]
                  if args.higgs else list(DEFAULT_HIGGS_GRID))
    except (OSError, json.JSONDecodeError, ParseError, ValueError) as exc:
        return _fail(str(exc))
    opts = _solver_options(args)
    base = build_internal_triple(params)

    def run(h: HiggsDoublet):
        fluct = higgs_fluctuation(base, h)
        solved = sheet_distance(fluct, h, opts).value
        predicted = predicted_sheet_distance(params, h)
        if math.isinf(predicted):
            rel = 0.0 if math.isinf(solved) else math.inf
        else:
            rel = abs(solved - predicted) / predicted
        return [h.h1, h.h2, g_tt(params, h), predicted, solved, rel]

    with ThreadPoolExecutor(max_workers=_max_workers(len(values))) as pool:
        rows = list(pool.map(run, values))
    max_rel = max(r[5] for r in rows)
    out = [[_fmt_c(r[0]), _fmt_c(r[1])] + [_fmt(v) for v in r[2:]] for r in rows]
    _write_csv(args.csv, ["h1", "h2", "g_tt", "predicted", "solver", "rel_err"], out)
    if args.json:
        print(json.dumps({"rows": len(rows), "max_rel_err": max_rel}))
    else:
        print(f"max relative deviation {_fmt(max_rel)} over {len(rows)} Higgs values",
              file=sys.stderr)
    return 0


def cmd_neutrinos(args) -> int:
    eps = []
    if args.epsilons:
        try:
            eps = [int(x) for x in args.epsilons.split(",")]
        except ValueError:
            return _fail(f"invalid epsilon list {args.epsilons!r}")
    elif args.alpha:
        eps = [2] * args.alpha
    if args.alpha is not None and len(eps) != args.alpha:
        return _fail(f"alpha = {args.alpha} but {len(eps)} epsilons given")
    masses = None
    if args.masses:
        try:
            masses = [float(x) for x in args.masses.split(",")]
        except ValueError:
            return _fail(f"invalid mass list {args.masses!r}")
    try:
        ext = NeutrinoExtension(tuple(eps), tuple(masses) if masses else None)
    except ValueError as exc:
        return _fail(str(exc))
    report = neutrino_extension_analysis(ext)
    if args.json:
        print(json.dumps(report.to_dict(), indent=2))
    else:
        print(f"alpha {ext.alpha}  epsilons {list(ext.epsilons)}  masses {list(ext.masses)}")
        print("intersection matrix (C, H, M3):")
        for row in report.intersection_symbolic:
            print("  " + " ".join(f"{x:4d}" for x in row))
        print(f"determinant           {report.determinant}")
        print(f"determinant (massive) {report.determinant_effective}")
        print(f"duality holds         {str(report.poincare_holds).lower()}")
        print(f"grading obstructed    {str(report.grading_obstructed).lower()}")
        for i, b in enumerate(report.grading_blocks):
            print(f"  block {i}: epsilon {b['epsilon']}, grading residual >= "
                  f"{_fmt(b['residual_lower_bound'])}")
        print(f"admissible            {str(report.admissible).lower()}")
        if report.massless_escape:
            print("admissible via a massless entry in a three-neutrino extension")
    return 0 if report.admissible else 1


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="nctk",
                                     description="finite noncommutative geometries: "
                                                 "axiom checks and spectral distances")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("check", help="axiom report for a triple document")
    p.add_argument("triple", help="path to a triple JSON document")
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=cmd_check)

    p = sub.add_parser("distance", help="spectral distance between two pure states")
    p.add_argument("triple", help="path to a triple JSON document")
    p.add_argument("--state", action="append", default=[],
                   help="state spec 'component:v1,v2,...' (give twice)")
    p.add_argument("--json", action="store_true")
    p.add_argument("--csv", default=None, help="append a result row to this CSV file")
    _add_solver_flags(p)
    p.set_defaults(func=cmd_distance)

    p = sub.add_parser("m2-sweep", help="equatorial closed form vs solver sweep")
    p.add_argument("d1", type=float)
    p.add_argument("d2", type=float)
    p.add_argument("--grid", type=int, default=8, help="angles per axis")
    p.add_argument("--json", action="store_true")
    p.add_argument("--csv", default=None, help="output CSV path (stdout when absent)")
    _add_solver_flags(p)
    p.set_defaults(func=cmd_m2_sweep)

    p = sub.add_parser("sm", help="sheet distances of the internal geometry")
    p.add_argument("--masses", default=None, help="mass-parameter JSON file")
    p.add_argument("--higgs", action="append", default=[],
                   help="Higgs value 'h1,h2' with complex literals (repeatable)")
    p.add_argument("--json", action="store_true")
    p.add_argument("--csv", default=None, help="output CSV path (stdout when absent)")
    _add_solver_flags(p)
    p.set_defaults(func=cmd_sm)

    p = sub.add_parser("neutrinos", help="sterile-extension duality analysis")
    p.add_argument("--alpha", type=int, default=None, help="number of added neutrinos")
    p.add_argument("--epsilons", default=None,
                   help="comma list from {1,2} (1 Majorana-type, 2 Dirac-type)")
    p.add_argument("--masses", default=None, help="comma list of nonnegative masses")
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=cmd_neutrinos)

    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    return args.func(args)


if __name__ == "__main__":
    sys.exit(main())
