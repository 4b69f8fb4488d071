"""Graded Jacobian syzygies and their Koszul / essential splitting.

For a form f of degree N in n+1 variables with partials f_0..f_n:

* AR(f)_m: tuples (a_0..a_n) of degree-m forms with sum a_i f_i = 0,
* KR(f)_m: the span of the Koszul relations b*(f_j e_i - f_i e_j),
* ER(f)_m = AR(f)_m / KR(f)_m.

A syzygy tuple is stored as a coordinate vector in S_m^{n+1}: slot i occupies
columns ``i*dim S_m .. (i+1)*dim S_m - 1`` in monomial-basis order.

When the hyperplane x_c = 0 is transversal to V and every singular point is
weighted homogeneous, a syzygy is Koszul exactly when its c-th component
vanishes on the singular subscheme.  :func:`split_basis` uses this to split an
AR basis into a KR basis plus ER representatives, checking the result against
the Koszul span computed directly.
"""
from __future__ import annotations

import random
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from math import comb
from typing import Iterable, Sequence

from .errors import InconsistencyError, InputError, TransversalityError
from .exactalg import RatMatrix, RowSpace, inverse, nullspace_from_reduced, rank
from .localsing import SingularPointRecord, tjurina_functionals
from .milnor import (
    hyperplane_section_smooth,
    jacobian_partials,
    milnor_dim,
    smooth_hilbert,
    socle_degree,
)
from .polyring import (
    HomogeneousPoly,
    evaluate,
    linear_change,
    monomial_basis,
    monomial_index,
    variable_names,
)

__all__ = [
    "SyzygyVector",
    "SplitResult",
    "DefectRow",
    "AuditRow",
    "AuditReport",
    "ar_basis",
    "koszul_generators",
    "koszul_dim",
    "koszul_space",
    "prop1_dims",
    "matrix_dims",
    "transversality_check",
    "transversality_reason",
    "find_transversal_coordinates",
    "transform_points",
    "ideal_piece_dim",
    "projection_kernel",
    "split_basis",
    "defect",
    "audit_corollary_B",
    "verify_syzygy",
    "duality_degree",
]


def duality_degree(f: HomogeneousPoly) -> int:
    """nN - 2n - 1, the degree pairing ER(f)_m with the defect in the dual degree."""
    n = f.num_vars - 1
    return n * f.degree - 2 * n - 1


@dataclass(frozen=True)
class SyzygyVector:
    m: int
    components: tuple[HomogeneousPoly, ...]

    def __post_init__(self):
        for a in self.components:
            if not a.is_zero() and a.degree != self.m:
                raise ValueError(f"component {a} is not of degree {self.m}")

    @classmethod
    def checked(cls, f: HomogeneousPoly, components: Sequence[HomogeneousPoly]) -> "SyzygyVector":
        comps = tuple(components)
        m = next((a.degree for a in comps if not a.is_zero()), 0)
        s = cls(m, tuple(HomogeneousPoly(a.num_vars, m, a.terms) for a in comps))
        if not verify_syzygy(f, s):
            raise InputError("components do not satisfy sum a_i f_i = 0")
        return s

    @classmethod
    def from_vector(cls, num_vars: int, m: int, vec) -> "SyzygyVector":
        size = len(monomial_basis(num_vars, m))
        if isinstance(vec, dict):
            dense = [Fraction(0)] * (size * num_vars)
            for j, v in vec.items():
                dense[j] = v
            vec = dense
        return cls(m, tuple(
            HomogeneousPoly.from_vector(num_vars, m, vec[i * size:(i + 1) * size])
            for i in range(num_vars)
        ))

    @property
    def num_vars(self) -> int:
        return len(self.components)

    def to_sparse(self) -> dict[int, Fraction]:
        size = len(monomial_basis(self.num_vars, self.m))
        out: dict[int, Fraction] = {}
        for i, a in enumerate(self.components):
            if not a.is_zero():
                out.update(a.to_sparse(i * size))
        return out

    def is_zero(self) -> bool:
        return all(a.is_zero() for a in self.components)

    def __add__(self, other: "SyzygyVector") -> "SyzygyVector":
        return SyzygyVector(self.m, tuple(
            HomogeneousPoly(a.num_vars, self.m, (a + b).terms)
            for a, b in zip(self.components, other.components)
        ))

    def __neg__(self) -> "SyzygyVector":
        return self * -1

    def __sub__(self, other: "SyzygyVector") -> "SyzygyVector":
        return self + (-other)

    def __mul__(self, c) -> "SyzygyVector":
        if isinstance(c, HomogeneousPoly):
            return SyzygyVector(self.m + c.degree, tuple(
                HomogeneousPoly(a.num_vars, self.m + c.degree, (a * c).terms) for a in self.components))
        return SyzygyVector(self.m, tuple(a * c for a in self.components))

    __rmul__ = __mul__

    def evaluate(self, point: Sequence) -> tuple[Fraction, ...]:
        return tuple(evaluate(a, point) for a in self.components)

    def format(self, names: Sequence[str] | None = None) -> str:
        return "(" + ", ".join(a.format(names) for a in self.components) + ")"

    def __str__(self) -> str:
        return self.format()


def verify_syzygy(f: HomogeneousPoly, s) -> bool:
    """Exact check of sum_i a_i * df/dx_i == 0."""
    comps = s.components if isinstance(s, SyzygyVector) else tuple(s)
    if len(comps) != f.num_vars:
        raise ValueError(f"expected {f.num_vars} components, got {len(comps)}")
    degrees = {a.degree for a in comps if not a.is_zero()}
    if len(degrees) > 1:
        raise ValueError("syzygy components must share one degree")
    total = None
    for a, fi in zip(comps, jacobian_partials(f)):
        term = a * fi
        total = term if total is None else total + term
    return total.is_zero()


def _slot_size(f: HomogeneousPoly, m: int) -> int:
    return comb(f.num_vars - 1 + m, m) if m >= 0 else 0


def _ar_rows(f: HomogeneousPoly, m: int) -> list[dict[int, Fraction]]:
    """Rows of the map S_m^{n+1} -> S_{m+N-1}, (a_i) -> sum a_i f_i."""
    nv = f.num_vars
    target = monomial_index(nv, m + f.degree - 1)
    size = _slot_size(f, m)
    rows: dict[int, dict[int, Fraction]] = {}
    for i, fi in enumerate(jacobian_partials(f)):
        for k, mono in enumerate(monomial_basis(nv, m)):
            col = i * size + k
            for e, c in fi.terms.items():
                r = target[tuple(a + b for a, b in zip(mono, e))]
                rows.setdefault(r, {})[col] = c
    return [rows[r] for r in sorted(rows)]


@lru_cache(maxsize=256)
def _ar_vectors(f: HomogeneousPoly, m: int) -> tuple[tuple[Fraction, ...], ...]:
    if m < 0:
        return ()
    ncols = f.num_vars * _slot_size(f, m)
    space = RowSpace(ncols)
    for row in _ar_rows(f, m):
        space.add(row)
    return tuple(tuple(v) for v in nullspace_from_reduced(space.reduced_rows(), ncols))


def ar_basis(f: HomogeneousPoly, m: int) -> list[SyzygyVector]:
    """Deterministic basis of AR(f)_m from the kernel of the multiplication map."""
    return [SyzygyVector.from_vector(f.num_vars, m, v) for v in _ar_vectors(f, m)]


def koszul_generators(f: HomogeneousPoly, m: int) -> list[SyzygyVector]:
    """Monomial multiples of the Koszul relations f_j e_i - f_i e_j landing in degree m."""
    nv = f.num_vars
    d = m - (f.degree - 1)
    if d < 0:
        return []
    parts = jacobian_partials(f)
    zero = HomogeneousPoly.zero(nv, m)
    out = []
    for i in range(nv):
        for j in range(i + 1, nv):
            for b in monomial_basis(nv, d):
                comps = [zero] * nv
                comps[i] = parts[j].mul_monomial(b)
                comps[j] = -parts[i].mul_monomial(b)
                comps = [HomogeneousPoly(nv, m, c.terms) for c in comps]
                out.append(SyzygyVector(m, tuple(comps)))
    return out


@lru_cache(maxsize=256)
def koszul_space(f: HomogeneousPoly, m: int) -> RowSpace:
    space = RowSpace(f.num_vars * _slot_size(f, m))
    for s in koszul_generators(f, m):
        space.add(s.to_sparse())
    return space


def koszul_dim(f: HomogeneousPoly, m: int) -> int:
    return koszul_space(f, m).rank if m >= 0 else 0


def prop1_dims(f: HomogeneousPoly, m: int) -> tuple[int, int, int]:
    """(dim AR, dim KR, dim ER) in degree m from Milnor algebra dimensions."""
    if m < 0:
        return 0, 0, 0
    n = f.num_vars - 1
    N = f.degree
    base = (n + 1) * comb(n + m, n) - comb(n + m + N - 1, n)
    mf = milnor_dim(f, m + N - 1)
    mg = smooth_hilbert(n, N, m + N - 1)
    return base + mf, base + mg, mf - mg


def matrix_dims(f: HomogeneousPoly, m: int) -> tuple[int, int, int]:
    """(dim AR, dim KR, dim ER) in degree m from kernel and span ranks."""
    ar = len(_ar_vectors(f, m))
    kr = koszul_dim(f, m)
    return ar, kr, ar - kr


# transversality

def transversality_reason(f: HomogeneousPoly, c: int, points: Iterable[Sequence]) -> str | None:
    """None when x_c = 0 is transversal to V, else a description of the failure."""
    names = _names(f)
    for q in points:
        if Fraction(q[c]) == 0:
            return (f"singular point {_fmt_point(q)} lies on the hyperplane {names[c]}=0, "
                    f"so {names[c]}=0 is not transversal to V")
    if not hyperplane_section_smooth(f, c):
        return f"the section of V by {names[c]}=0 is singular, so {names[c]}=0 is not transversal to V"
    return None


def transversality_check(f: HomogeneousPoly, c: int, points: Iterable[Sequence]) -> bool:
    return transversality_reason(f, c, points) is None


def transform_points(points: Iterable[Sequence], A) -> list[tuple[Fraction, ...]]:
    """Images of points under the change x -> f(A x): q is sent to A^{-1} q."""
    A = A if isinstance(A, RatMatrix) else RatMatrix.from_rows(A)
    Ainv = inverse(A)
    return [tuple(Ainv.matvec([Fraction(x) for x in q])) for q in points]


def find_transversal_coordinates(f: HomogeneousPoly, points: Sequence[Sequence], seed: int = 0,
                                 trials: int = 100, bound: int = 2) -> RatMatrix:
    """Seeded search for A making every coordinate hyperplane transversal to f(A x) = 0.

    The identity is tried first; then random matrices with entries in
    [-bound, bound].
    """
    n1 = f.num_vars
    rng = random.Random(seed)
    last = None
    for trial in range(trials):
        if trial == 0:
            A = RatMatrix.identity(n1)
        else:
            A = RatMatrix(n1, n1, [rng.randint(-bound, bound) for _ in range(n1 * n1)])
            if rank(A) < n1:
                last = "random matrix was singular"
                continue
        g = linear_change(f, A)
        pts = transform_points(points, A)
        for c in range(n1):
            last = transversality_reason(g, c, pts)
            if last is not None:
                break
        else:
            return A
    raise TransversalityError(
        f"no transversal coordinate system found in {trials} trials (last failure: {last})"
    )


# singular subscheme

def _functional_row(records: Sequence[SingularPointRecord], h: HomogeneousPoly) -> list[Fraction]:
    out: list[Fraction] = []
    for r in records:
        out.extend(tjurina_functionals(r, h))
    return out


def ideal_piece_dim(f: HomogeneousPoly, records: Sequence[SingularPointRecord], m: int) -> tuple[int, int]:
    """(dim I_m, dim S_m / I_m), with I the ideal of the singular subscheme."""
    if m < 0:
        return 0, 0
    basis = monomial_basis(f.num_vars, m)
    total = sum(r.tau for r in records)
    space = RowSpace(total)
    for e in basis:
        space.add(_functional_row(records, HomogeneousPoly.monomial(e)))
    q = space.rank
    return len(basis) - q, q


def _evaluation_columns(basis: Sequence[SyzygyVector], records, slot: int) -> list[list[Fraction]]:
    return [_functional_row(records, s.components[slot]) for s in basis]


def _kernel_coords(columns: list[list[Fraction]]) -> tuple[list[list[Fraction]], list[int]]:
    """Kernel basis and pivot columns of the matrix whose columns are given."""
    k = len(columns)
    nrows = len(columns[0]) if columns else 0
    space = RowSpace(k)
    for i in range(nrows):
        space.add([col[i] for col in columns])
    reduced = space.reduced_rows()
    return nullspace_from_reduced(reduced, k), [p for p, _ in reduced]


def _combine(basis: Sequence[SyzygyVector], coeffs: Sequence[Fraction], f: HomogeneousPoly, m: int) -> SyzygyVector:
    acc: dict[int, Fraction] = {}
    for c, s in zip(coeffs, basis):
        if c:
            for j, v in s.to_sparse().items():
                acc[j] = acc.get(j, 0) + c * v
    return SyzygyVector.from_vector(f.num_vars, m, {j: v for j, v in acc.items() if v})


def projection_kernel(f: HomogeneousPoly, m: int, records: Sequence[SingularPointRecord],
                      slot: int) -> list[SyzygyVector]:
    """Basis of the kernel of AR(f)_m -> S_m/I_m, (a_0..a_n) -> [a_slot]."""
    basis = ar_basis(f, m)
    if not basis:
        return []
    if not records:
        return basis
    kernel, _ = _kernel_coords(_evaluation_columns(basis, records, slot))
    return [_combine(basis, v, f, m) for v in kernel]


@dataclass(frozen=True)
class SplitResult:
    m: int
    chart: int
    kr_basis: tuple[SyzygyVector, ...]
    er_representatives: tuple[SyzygyVector, ...]
    dims: tuple[int, int, int]
    kernel_basis: tuple[SyzygyVector, ...]
    wh_verdict: tuple[bool, ...]
    kernel_matches_kr: bool

    @property
    def kernel_dim(self) -> int:
        return len(self.kernel_basis)

    @property
    def strict_inclusion(self) -> bool:
        return self.kernel_dim > self.dims[1]


def split_basis(f: HomogeneousPoly, m: int, records: Sequence[SingularPointRecord],
                chart: int = 0) -> SplitResult:
    """Split AR(f)_m into a Koszul basis and essential representatives.

    The kernel of the evaluation of the ``chart``-th component on the singular
    subscheme always contains KR(f)_m; it equals KR(f)_m when every singular
    point is weighted homogeneous.  When it does, the kernel basis is the KR
    basis.  Otherwise the KR basis is taken from the Koszul span directly and
    ``kernel_basis`` records the larger kernel.  ER representatives are the
    AR basis elements that greedily complete the KR basis, in basis order.
    """
    reason = transversality_reason(f, chart, [r.point for r in records])
    if reason is not None:
        raise TransversalityError(
            f"{reason}; choose another chart or use find_transversal_coordinates")
    basis = ar_basis(f, m)
    kspace = koszul_space(f, m)
    kdim = kspace.rank
    wh = tuple(r.is_wh for r in records)
    if basis and records:
        kernel_coords, _ = _kernel_coords(_evaluation_columns(basis, records, chart))
    else:
        kernel_coords = [[Fraction(int(i == j)) for j in range(len(basis))] for i in range(len(basis))]
    kernel = [_combine(basis, v, f, m) for v in kernel_coords]
    if len(kernel) < kdim:
        raise InconsistencyError(
            f"degree {m}: projection kernel has dimension {len(kernel)} < dim KR = {kdim}")
    for s in koszul_generators(f, m):
        if records and any(_functional_row(records, s.components[chart])):
            raise InconsistencyError(f"degree {m}: a Koszul relation is not in the projection kernel")
    matches = len(kernel) == kdim
    if matches:
        for s in kernel:
            if not kspace.contains(s.to_sparse()):
                raise InconsistencyError(f"degree {m}: kernel element {s} is not Koszul")
        kr = kernel
    else:
        kr = [SyzygyVector.from_vector(f.num_vars, m, row) for _, row in kspace.reduced_rows()]
    span = kspace.copy()
    er = [s for s in basis if span.add(s.to_sparse())]
    ar = len(basis)
    if len(kr) + len(er) != ar:
        raise InconsistencyError(f"degree {m}: KR basis and ER representatives do not span AR")
    return SplitResult(m, chart, tuple(kr), tuple(er), (ar, kdim, ar - kdim),
                       tuple(kernel), wh, matches)


# defects and inequalities

@dataclass(frozen=True)
class DefectRow:
    m: int
    quotient_dim: int
    defect: int
    dual_degree: int
    er_dual: int


def global_milnor(records: Sequence[SingularPointRecord]) -> int:
    return sum(r.mu for r in records)


def defect(f: HomogeneousPoly, records: Sequence[SingularPointRecord], m: int) -> DefectRow:
    """defect_m Y = mu(V) - dim S_m/I_m, paired with dim ER(f) in the dual degree."""
    _, q = ideal_piece_dim(f, records, m)
    dual = duality_degree(f) - m
    return DefectRow(m, q, global_milnor(records) - q, dual, prop1_dims(f, dual)[2])


@dataclass(frozen=True)
class AuditRow:
    m: int
    er_sum: tuple[int, int]              # (dim ER_m + dim ER_dual, mu)
    er_half: tuple[int, int] | None      # (dim ER_m, floor(mu/2)) when m <= d/2
    defect_sum: tuple[int, int]          # (defect_m + defect_dual, mu)
    milnor_sum: tuple[int, int]          # (M(f)_m + M(f)_{T-m} - 2 M(g)_m, mu)

    def checks(self) -> dict[str, tuple[int, int]]:
        out = {"er_sum": self.er_sum, "defect_sum": self.defect_sum, "milnor_sum": self.milnor_sum}
        if self.er_half is not None:
            out["er_half"] = self.er_half
        return out

    @property
    def ok(self) -> bool:
        return all(lhs <= rhs for lhs, rhs in self.checks().values())


@dataclass(frozen=True)
class AuditReport:
    mu: int
    rows: tuple[AuditRow, ...]

    @property
    def violations(self) -> list[tuple[int, str, int, int]]:
        return [(r.m, name, lhs, rhs) for r in self.rows
                for name, (lhs, rhs) in r.checks().items() if lhs > rhs]

    @property
    def ok(self) -> bool:
        return not self.violations


def audit_corollary_B(f: HomogeneousPoly, records: Sequence[SingularPointRecord],
                      m_range: Iterable[int]) -> AuditReport:
    """Evaluate the three upper bounds by mu(V) that hold for weighted homogeneous singularities."""
    if not all(r.is_wh for r in records):
        raise InputError("the inequalities need every singularity to be weighted homogeneous")
    n = f.num_vars - 1
    N = f.degree
    d = duality_degree(f)
    T = socle_degree(n, N)
    mu = global_milnor(records)
    rows = []
    for m in m_range:
        er_m = prop1_dims(f, m)[2]
        er_dual = prop1_dims(f, d - m)[2]
        half = (er_m, mu // 2) if 2 * m <= d else None
        def_m = defect(f, records, m).defect
        def_dual = defect(f, records, d - m).defect
        lhs3 = milnor_dim(f, m) + milnor_dim(f, T - m) - 2 * smooth_hilbert(n, N, m)
        rows.append(AuditRow(m, (er_m + er_dual, mu), half, (def_m + def_dual, mu), (lhs3, mu)))
    return AuditReport(mu, tuple(rows))


def _names(f: HomogeneousPoly):
    return variable_names(f.num_vars)


def _fmt_point(q) -> str:
    return "(" + ":".join(str(Fraction(x)) for x in q) + ")"
