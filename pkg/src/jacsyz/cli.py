"""Command line front end.

Exit status: 0 on success, 1 for input errors (including failed
transversality or an incomplete singular point list), 2 when two computations
that must agree do not.
"""
from __future__ import annotations

import argparse
import sys
from typing import Sequence

from .errors import InconsistencyError, InputError
from .localsing import CertificateError
from .milnor import StabilizationError, milnor_table, smooth_hilbert, socle_degree
from .parser import ProblemInput, load_problem
from .report import (
    analyze,
    analyze_points,
    choose_coordinates,
    dumps,
    format_report,
    max_scan_degree,
    parse_m_range,
)
from .syzygy import ar_basis, audit_corollary_B, duality_degree, koszul_dim, split_basis

EXIT_OK, EXIT_INPUT, EXIT_INCONSISTENT = 0, 1, 2


def _chart(problem: ProblemInput, text: str | None) -> int | None:
    if text is None:
        return None
    if text in problem.variables:
        return problem.variables.index(text)
    try:
        c = int(text)
    except ValueError:
        raise InputError(f"unknown chart {text!r}; use a variable name or index") from None
    if not 0 <= c < len(problem.variables):
        raise InputError(f"chart index {c} out of range")
    return c


def cmd_analyze(args, out) -> int:
    problem = load_problem(args.input)
    m_range = parse_m_range(args.m_range) if args.m_range else None
    report = analyze(problem, m_range, _chart(problem, args.chart), args.seed)
    if args.json:
        with open(args.json, "w", encoding="utf-8") as fh:
            fh.write(dumps(report))
    print(format_report(report), file=out)
    return EXIT_OK if report["certificates"]["consistent"] else EXIT_INCONSISTENT


def cmd_hilbert(args, out) -> int:
    problem = load_problem(args.input)
    f = problem.f
    n, N = f.num_vars - 1, f.degree
    k_max = args.k_max if args.k_max is not None else socle_degree(n, N) + n + 1
    table = milnor_table(f, k_max)
    print(" ".join(map(str, table.values)) + " ...", file=out)
    print("smooth: " + " ".join(str(smooth_hilbert(n, N, k)) for k in range(k_max + 1)), file=out)
    print(f"tau(V) = {table.stable_value} (stable from degree {table.stable_from})", file=out)
    return EXIT_OK


def cmd_syzygies(args, out) -> int:
    problem = load_problem(args.input)
    basis = ar_basis(problem.f, args.degree)
    kr = koszul_dim(problem.f, args.degree)
    print(f"dim AR = {len(basis)}, dim KR = {kr}, dim ER = {len(basis) - kr}", file=out)
    for k, s in enumerate(basis, 1):
        print(f"s_{k} = {s.format(problem.variables)}", file=out)
    return EXIT_OK


def cmd_split(args, out) -> int:
    problem = load_problem(args.input)
    records = analyze_points(problem)
    coords = choose_coordinates(problem, records, _chart(problem, args.chart), args.seed)
    names = problem.variables
    res = split_basis(coords.f, args.degree, coords.records, coords.chart)
    if coords.matrix is not None:
        print(f"coordinates changed by {coords.matrix}; f = {coords.f.format(names)}", file=out)
    ar, kr, er = res.dims
    print(f"chart {names[coords.chart]}: dim AR = {ar}, dim KR = {kr}, dim ER = {er}, "
          f"kernel = {res.kernel_dim}", file=out)
    if not res.kernel_matches_kr:
        print("strict inclusion: the projection kernel is larger than KR", file=out)
    for s in res.kr_basis:
        print(f"KR: {s.format(names)}", file=out)
    for s in res.er_representatives:
        print(f"ER: {s.format(names)}", file=out)
    return EXIT_OK


def cmd_local(args, out) -> int:
    problem = load_problem(args.input)
    records = analyze_points(problem)
    if not 1 <= args.point <= len(records):
        raise InputError(f"point index {args.point} out of range 1..{len(records)}")
    r = records[args.point - 1]
    print(f"mu={r.mu} tau={r.tau} WH={'yes' if r.is_wh else 'no'}", file=out)
    return EXIT_OK


def cmd_audit(args, out) -> int:
    problem = load_problem(args.input)
    records = analyze_points(problem)
    d = duality_degree(problem.f)
    lo, hi = parse_m_range(args.m_range) if args.m_range else (0, d)
    hi = min(hi, max_scan_degree(problem.f))
    rep = audit_corollary_B(problem.f, records, range(lo, hi + 1))
    for row in rep.rows:
        parts = [f"{name}: {lhs} <= {rhs}" for name, (lhs, rhs) in row.checks().items()]
        print(f"m={row.m}: " + ", ".join(parts), file=out)
    if not rep.ok:
        for m, name, lhs, rhs in rep.violations:
            print(f"VIOLATION m={m} {name}: {lhs} > {rhs}", file=out)
        return EXIT_INCONSISTENT
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="jacsyz", description="Jacobian syzygies of projective hypersurfaces")
    sub = p.add_subparsers(dest="command", required=True)

    a = sub.add_parser("analyze", help="full report")
    a.add_argument("input")
    a.add_argument("--m-range", help="degree range a..b")
    a.add_argument("--chart", help="variable name or index of the hyperplane x_c = 0")
    a.add_argument("--seed", type=int, default=0)
    a.add_argument("--json", help="write the JSON report here")
    a.set_defaults(func=cmd_analyze)

    h = sub.add_parser("hilbert", help="Hilbert function of the Milnor algebra")
    h.add_argument("input")
    h.add_argument("--k-max", type=int)
    h.set_defaults(func=cmd_hilbert)

    s = sub.add_parser("syzygies", help="basis of AR(f)_m")
    s.add_argument("input")
    s.add_argument("--degree", type=int, required=True)
    s.set_defaults(func=cmd_syzygies)

    sp = sub.add_parser("split", help="split AR(f)_m into KR and ER parts")
    sp.add_argument("input")
    sp.add_argument("--degree", type=int, required=True)
    sp.add_argument("--chart")
    sp.add_argument("--seed", type=int, default=0)
    sp.set_defaults(func=cmd_split)

    lo = sub.add_parser("local", help="Milnor and Tjurina numbers at a point")
    lo.add_argument("input")
    lo.add_argument("--point", type=int, required=True, help="1-based point index")
    lo.set_defaults(func=cmd_local)

    au = sub.add_parser("audit", help="check the inequalities bounded by mu(V)")
    au.add_argument("input")
    au.add_argument("--m-range")
    au.set_defaults(func=cmd_audit)
    return p


def main(argv: Sequence[str] | None = None, out=None) -> int:
    out = out or sys.stdout
    args = build_parser().parse_args(argv)
    try:
        return args.func(args, out)
    except (InputError, StabilizationError, CertificateError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except InconsistencyError as exc:
        print(f"inconsistency: {exc}", file=sys.stderr)
        return EXIT_INCONSISTENT


if __name__ == "__main__":
    sys.exit(main())
