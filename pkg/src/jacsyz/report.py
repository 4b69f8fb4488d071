"""End-to-end analysis of one hypersurface, assembled into a JSON-ready report."""
from __future__ import annotations

import json
import os
from dataclasses import dataclass
from fractions import Fraction
from importlib import resources
from typing import Sequence

from .errors import InconsistencyError, InputError, TransversalityError
from .exactalg import RatMatrix
from .localsing import CertificateError, NotSingularError, SingularPointRecord, analyze_point
from .milnor import StabilizationError, milnor_table, smooth_hilbert, socle_degree
from .parser import ProblemInput
from .polyring import HomogeneousPoly, euler_check, linear_change
from .syzygy import (
    audit_corollary_B,
    defect,
    duality_degree,
    find_transversal_coordinates,
    ideal_piece_dim,
    matrix_dims,
    prop1_dims,
    split_basis,
    transform_points,
    transversality_reason,
)

__all__ = ["Coordinates", "analyze", "analyze_points", "choose_coordinates", "max_scan_degree",
           "load_schema", "dumps", "format_report"]

SCHEMA_VERSION = 1


def _q(x) -> str:
    return str(Fraction(x))


def _point(q: Sequence) -> list[str]:
    return [_q(x) for x in q]


def max_scan_degree(f: HomogeneousPoly) -> int:
    """Upper limit for degree scans: ``SYZYGY_MAX_DEGREE`` or nN - 2n - 1 + 2."""
    env = os.environ.get("SYZYGY_MAX_DEGREE")
    if env is not None and env.strip():
        try:
            return int(env)
        except ValueError:
            raise InputError(f"SYZYGY_MAX_DEGREE must be an integer, got {env!r}") from None
    return duality_degree(f) + 2


def parse_m_range(text: str) -> tuple[int, int]:
    try:
        a, b = text.split("..")
        lo, hi = int(a), int(b)
    except ValueError:
        raise InputError(f"degree range must look like a..b, got {text!r}") from None
    if lo < 0 or hi < lo:
        raise InputError(f"bad degree range {text!r}")
    return lo, hi


def analyze_points(problem: ProblemInput, f: HomogeneousPoly | None = None,
                   points: Sequence | None = None) -> list[SingularPointRecord]:
    f = problem.f if f is None else f
    points = problem.singular_points if points is None else points
    records = []
    for k, q in enumerate(points, 1):
        try:
            records.append(analyze_point(f, q))
        except (NotSingularError, CertificateError) as exc:
            raise InputError(f"point {k}: {exc}") from None
    return records


@dataclass(frozen=True)
class Coordinates:
    """Coordinate system used for the splitting (possibly after a change)."""
    f: HomogeneousPoly
    records: tuple[SingularPointRecord, ...]
    chart: int
    matrix: RatMatrix | None


def choose_coordinates(problem: ProblemInput, records: Sequence[SingularPointRecord],
                       chart: int | None = None, seed: int = 0) -> Coordinates:
    """Pick a transversal chart, changing coordinates when no coordinate hyperplane works."""
    f = problem.f
    pts = [r.point for r in records]
    if chart is not None:
        reason = transversality_reason(f, chart, pts)
        if reason is not None:
            raise TransversalityError(
                f"transversality check failed: {reason}; choose another chart or omit --chart "
                "to search for transversal coordinates")
        return Coordinates(f, tuple(records), chart, None)
    for c in range(f.num_vars):
        if transversality_reason(f, c, pts) is None:
            return Coordinates(f, tuple(records), c, None)
    A = find_transversal_coordinates(f, pts, seed=seed)
    g = linear_change(f, A)
    new_records = analyze_points(problem, g, transform_points(pts, A))
    return Coordinates(g, tuple(new_records), 0, A)


def _hilbert_section(f: HomogeneousPoly, k_max: int):
    n, N = f.num_vars - 1, f.degree
    try:
        table = milnor_table(f, k_max)
    except StabilizationError as exc:
        raise InputError(str(exc)) from None
    smooth = [smooth_hilbert(n, N, k) for k in range(k_max + 1)]
    return table, smooth


def analyze(problem: ProblemInput, m_range: tuple[int, int] | None = None,
            chart: int | None = None, seed: int = 0) -> dict:
    """Run the full pipeline; inconsistencies are collected, not raised."""
    f = problem.f
    names = problem.variables
    n, N = f.num_vars - 1, f.degree
    d = duality_degree(f)
    T = socle_degree(n, N)
    cap = max_scan_degree(f)
    lo, hi = m_range if m_range is not None else (0, cap)
    clamped = hi > cap
    hi = min(hi, cap)
    degrees = list(range(lo, hi + 1))
    problems: list[str] = []

    k_max = max(T + n + 1, hi + N - 1)
    table, smooth = _hilbert_section(f, k_max)
    records = analyze_points(problem)
    tau_sum = sum(r.tau for r in records)
    mu_total = sum(r.mu for r in records)
    if tau_sum != table.stable_value:
        raise InputError(
            f"singular point list incomplete: the supplied points give tau = {tau_sum}, "
            f"but dim M(f)_k stabilizes at tau(V) = {table.stable_value}")
    all_wh = all(r.is_wh for r in records)

    degree_rows = []
    for m in degrees:
        ar, kr, er = prop1_dims(f, m)
        mat = matrix_dims(f, m)
        if mat != (ar, kr, er):
            problems.append(f"degree {m}: formula dims {(ar, kr, er)} differ from matrix dims {mat}")
        dim_i, quo = ideal_piece_dim(f, records, m)
        row = {"m": m, "ar": mat[0], "kr": mat[1], "er": mat[2],
               "formula": {"ar": ar, "kr": kr, "er": er},
               "ideal_dim": dim_i, "quotient_dim": quo}
        if all_wh and records:
            if er > quo:
                problems.append(f"degree {m}: dim ER = {er} exceeds dim S_m/I_m = {quo}")
            if m >= n * (N - 2) and er != quo:
                problems.append(f"degree {m}: dim ER = {er} differs from dim S_m/I_m = {quo} for m >= n(N-2)")
        degree_rows.append(row)

    coords = choose_coordinates(problem, records, chart, seed)
    split_rows = []
    strict = []
    for m in degrees:
        try:
            res = split_basis(coords.f, m, coords.records, coords.chart)
        except InconsistencyError as exc:
            problems.append(str(exc))
            continue
        if all_wh and not res.kernel_matches_kr:
            problems.append(f"degree {m}: projection kernel is larger than KR although every point is weighted homogeneous")
        if res.strict_inclusion:
            strict.append(m)
        split_rows.append({
            "m": m,
            "kernel_dim": res.kernel_dim,
            "kr_dim": res.dims[1],
            "kernel_matches_kr": res.kernel_matches_kr,
            "er_representatives": [s.format(names) for s in res.er_representatives],
            "kr_basis": [s.format(names) for s in res.kr_basis],
        })

    defect_rows = []
    for m in degrees:
        row = defect(f, records, m)
        defect_rows.append({"m": m, "quotient_dim": row.quotient_dim, "defect": row.defect,
                            "dual_degree": row.dual_degree, "er_dual": row.er_dual})
        if all_wh and records and 0 <= m <= d and row.defect != row.er_dual:
            problems.append(f"degree {m}: defect {row.defect} differs from dim ER in degree {row.dual_degree} = {row.er_dual}")

    if all_wh:
        rep = audit_corollary_B(f, records, [m for m in degrees if m <= d])
        for m, name, lhs, rhs in rep.violations:
            problems.append(f"degree {m}: inequality {name} fails: {lhs} > {rhs}")
        audit = {"status": "ok" if rep.ok else "violated", "mu": rep.mu, "rows": [
            {"m": r.m, "checks": {k: {"lhs": lhs, "rhs": rhs, "margin": rhs - lhs}
                                  for k, (lhs, rhs) in r.checks().items()}}
            for r in rep.rows]}
    else:
        audit = {"status": "skipped", "mu": mu_total,
                 "reason": "not every singularity is weighted homogeneous", "rows": []}

    euler = euler_check(f)
    if not euler:
        problems.append("Euler identity fails")

    return {
        "input": {
            "variables": list(names),
            "f": f.format(names),
            "n": n,
            "N": N,
            "points": [_point(q) for q in problem.singular_points],
            "m_range": [lo, hi],
            "m_range_clamped": clamped,
            "seed": seed,
        },
        "hilbert": {
            "milnor": list(table.values),
            "smooth": smooth,
            "tau": table.stable_value,
            "stable_from": table.stable_from,
            "T": T,
        },
        "points": [
            {"point": _point(r.point), "chart": names[r.chart], "mu": r.mu, "tau": r.tau,
             "weighted_homogeneous": r.is_wh, "cobasis": [_fmt_exp(e) for e in r.tjurina.monomial_cobasis]}
            for r in records
        ],
        "degrees": degree_rows,
        "split": {
            "chart": names[coords.chart],
            "coordinate_change": None if coords.matrix is None else
            [[_q(coords.matrix[i, j]) for j in range(coords.matrix.cols)] for i in range(coords.matrix.rows)],
            "f": coords.f.format(names),
            "all_weighted_homogeneous": all_wh,
            "strict_inclusion_degrees": strict,
            "rows": split_rows,
        },
        "audit": audit,
        "certificates": {
            "euler": euler,
            "completeness": {"sum_tau": tau_sum, "tau_V": table.stable_value, "ok": tau_sum == table.stable_value},
            "stabilization": {"window": n + 1, "from": table.stable_from, "value": table.stable_value},
            "local_truncation": [r.tjurina.truncation_order for r in records],
            "mu_V": mu_total,
            "duality_degree": d,
            "inconsistencies": problems,
            "consistent": not problems,
        },
    }


def _fmt_exp(e) -> str:
    return "*".join(f"y{i + 1}^{k}" if k > 1 else f"y{i + 1}" for i, k in enumerate(e) if k) or "1"


def dumps(report: dict) -> str:
    return json.dumps(report, indent=2, ensure_ascii=False) + "\n"


def load_schema() -> dict:
    text = resources.files(__package__).joinpath("report.schema.json").read_text(encoding="utf-8")
    return json.loads(text)


def format_report(report: dict) -> str:
    inp, hil, spl = report["input"], report["hilbert"], report["split"]
    lines = [
        f"f = {inp['f']}   (n = {inp['n']}, N = {inp['N']})",
        "M(f): " + " ".join(map(str, hil["milnor"])) + " ...",
        "M(g): " + " ".join(map(str, hil["smooth"])),
        f"tau(V) = {hil['tau']} (stable from degree {hil['stable_from']}), mu(V) = {report['certificates']['mu_V']}",
    ]
    for k, p in enumerate(report["points"], 1):
        lines.append(f"point {k} ({':'.join(p['point'])}): mu={p['mu']} tau={p['tau']} "
                     f"WH={'yes' if p['weighted_homogeneous'] else 'no'}")
    lines.append("")
    lines.append(" m   AR   KR   ER  S/I  kernel")
    by_m = {r["m"]: r for r in spl["rows"]}
    for r in report["degrees"]:
        s = by_m.get(r["m"])
        k = "" if s is None else f"{s['kernel_dim']}{'' if s['kernel_matches_kr'] else ' (> KR)'}"
        lines.append(f"{r['m']:2d} {r['ar']:4d} {r['kr']:4d} {r['er']:4d} {r['quotient_dim']:4d}  {k}")
    lines.append("")
    change = "" if spl["coordinate_change"] is None else " after a coordinate change"
    lines.append(f"splitting chart: {spl['chart']}{change}")
    if spl["strict_inclusion_degrees"]:
        lines.append("strict inclusion KR < ker p in degrees " + ", ".join(map(str, spl["strict_inclusion_degrees"])))
    aud = report["audit"]
    lines.append(f"inequality audit: {aud['status']}")
    cert = report["certificates"]
    lines.append(f"completeness: sum tau_q = {cert['completeness']['sum_tau']} = tau(V)")
    if cert["inconsistencies"]:
        lines.append("INCONSISTENT:")
        lines.extend("  " + p for p in cert["inconsistencies"])
    return "\n".join(lines)
