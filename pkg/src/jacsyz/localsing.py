"""Local algebra at isolated hypersurface singularities.

Quotients of the local ring O_n by the Jacobian ideal J_g or the Tjurina
ideal (g) + J_g are computed in the truncated ring of polynomials of degree
< D.  D grows until a Nakayama certificate holds: some degree k < D has every
monomial of degree k among the leading monomials of the truncated ideal.  Then
m^k lies in the ideal and the truncated quotient is the true one.

Columns of the truncated ring are ordered by increasing degree (grevlex within
a degree), so leading monomials are the lowest-degree terms.  The quotient
basis is the set of monomials that never occur as leading monomials.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from math import comb
from typing import Sequence

from .exactalg import RowSpace
from .polyring import Exponent, HomogeneousPoly, Poly, local_germ, monomial_basis

__all__ = [
    "CertificateError",
    "NotSingularError",
    "LocalGerm",
    "LocalQuotientBasis",
    "SingularPointRecord",
    "local_quotient",
    "milnor_tjurina",
    "is_weighted_homogeneous",
    "analyze_point",
    "default_chart",
    "tjurina_functionals",
]

DEFAULT_MAX_ORDER = 24


class NotSingularError(ValueError):
    pass


class CertificateError(ArithmeticError):
    pass


@dataclass(frozen=True)
class LocalGerm:
    poly: Poly

    def __post_init__(self):
        if self.poly.order() < 2 and not self.poly.is_zero():
            low = self.poly.truncate(2)
            if not low.is_zero():
                raise NotSingularError(
                    f"germ has nonzero constant or linear part ({low}); the point is not singular"
                )

    @property
    def num_vars(self) -> int:
        return self.poly.num_vars

    def jacobian(self) -> list[Poly]:
        return [self.poly.derivative(i) for i in range(self.num_vars)]


@dataclass(frozen=True)
class LocalQuotientBasis:
    truncation_order: int
    monomial_cobasis: tuple[Exponent, ...]
    certificate_degree: int
    # reduced echelon rows of the truncated ideal, keyed by pivot column
    reduced: tuple[tuple[int, tuple[tuple[int, Fraction], ...]], ...]
    columns: tuple[Exponent, ...]

    @property
    def dimension(self) -> int:
        return len(self.monomial_cobasis)

    def normal_form(self, h: Poly) -> tuple[Fraction, ...]:
        """Coordinates of ``h`` modulo the ideal on the monomial cobasis."""
        D = self.truncation_order
        col = self._column_index
        v: dict[int, Fraction] = {col[e]: c for e, c in h.terms.items() if sum(e) < D}
        for p, row in self.reduced:
            a = v.get(p)
            if a:
                for j, c in row:
                    nv = v.get(j, 0) - a * c
                    if nv:
                        v[j] = nv
                    else:
                        v.pop(j, None)
        return tuple(v.get(col[e], Fraction(0)) for e in self.monomial_cobasis)

    @property
    def _column_index(self) -> dict[Exponent, int]:
        idx = self.__dict__.get("_colidx")
        if idx is None:
            idx = {e: i for i, e in enumerate(self.columns)}
            object.__setattr__(self, "_colidx", idx)
        return idx


def _columns(n: int, D: int) -> tuple[Exponent, ...]:
    return tuple(e for d in range(D) for e in monomial_basis(n, d))


def _truncated_quotient(gens: Sequence[Poly], n: int, D: int):
    cols = _columns(n, D)
    col = {e: i for i, e in enumerate(cols)}
    space = RowSpace(len(cols))
    for g in gens:
        g = g.truncate(D)
        if g.is_zero():
            continue
        for d in range(D - g.order()):
            for a in monomial_basis(n, d):
                row = {}
                for e, c in g.terms.items():
                    s = tuple(i + j for i, j in zip(a, e))
                    if sum(s) < D:
                        row[col[s]] = c
                if row:
                    space.add(row)
    pivots = set(space.pivots)
    cert = None
    start = 0
    for d in range(D):
        size = len(monomial_basis(n, d))
        if all(start + i in pivots for i in range(size)):
            cert = d
            break
        start += size
    return space, cols, pivots, cert


def local_quotient(g: LocalGerm, include_g: bool, *, order: int | None = None,
                   max_order: int = DEFAULT_MAX_ORDER) -> LocalQuotientBasis:
    """Basis of O_n / J_g (``include_g=False``) or O_n / (g, J_g).

    With ``order`` the truncation is fixed at that D (the certificate must
    still hold); otherwise D is increased from 2 up to ``max_order``.
    """
    n = g.num_vars
    gens = g.jacobian() + ([g.poly] if include_g else [])
    orders = [order] if order is not None else range(2, max_order + 1)
    for D in orders:
        space, cols, pivots, cert = _truncated_quotient(gens, n, D)
        if cert is None:
            continue
        reduced = tuple((p, tuple(row.items())) for p, row in space.reduced_rows())
        cobasis = tuple(e for i, e in enumerate(cols) if i not in pivots)
        return LocalQuotientBasis(D, cobasis, cert, reduced, cols)
    raise CertificateError(
        f"isolated-singularity certificate failed (truncation order up to {orders[-1]})"
    )


def milnor_tjurina(germ: LocalGerm, **kw) -> tuple[int, int]:
    mu = local_quotient(germ, False, **kw).dimension
    tau = local_quotient(germ, True, **kw).dimension
    return mu, tau


def is_weighted_homogeneous(germ: LocalGerm, **kw) -> bool:
    """Saito's criterion: an isolated germ is weighted homogeneous iff mu == tau."""
    mu, tau = milnor_tjurina(germ, **kw)
    return mu == tau


@dataclass(frozen=True)
class SingularPointRecord:
    point: tuple[Fraction, ...]
    chart: int
    germ: LocalGerm
    mu: int
    tau: int
    tjurina: LocalQuotientBasis
    _monomial_cache: dict = field(default_factory=dict, compare=False, repr=False)

    @property
    def is_wh(self) -> bool:
        return self.mu == self.tau

    @property
    def normalized_point(self) -> tuple[Fraction, ...]:
        c = self.point[self.chart]
        return tuple(x / c for x in self.point)

    def monomial_functionals(self, e: Exponent) -> tuple[Fraction, ...]:
        """Functionals of the monomial x^e, cached."""
        out = self._monomial_cache.get(e)
        if out is None:
            germ = _monomial_germ(e, self.chart, self.normalized_point, self.tjurina.truncation_order)
            out = self.tjurina.normal_form(germ)
            self._monomial_cache[e] = out
        return out


def _monomial_germ(e: Exponent, chart: int, q: Sequence[Fraction], D: int) -> Poly:
    """Germ of x^e at q (with q[chart] == 1), truncated below degree D."""
    rest = [(k, x) for i, (k, x) in enumerate(zip(e, q)) if i != chart]
    n = len(rest)
    terms: dict[Exponent, Fraction] = {(0,) * n: Fraction(1)}
    for i, (k, x) in enumerate(rest):
        if not k:
            continue
        factor = [(j, comb(k, j) * x ** (k - j)) for j in range(min(k, D - 1) + 1)]
        factor = [(j, c) for j, c in factor if c]
        new: dict[Exponent, Fraction] = {}
        for t, c in terms.items():
            deg = sum(t)
            for j, a in factor:
                if deg + j >= D:
                    break
                u = t[:i] + (t[i] + j,) + t[i + 1:]
                new[u] = new.get(u, 0) + c * a
        terms = new
    return Poly(n, terms)


def default_chart(point: Sequence) -> int:
    """First coordinate that does not vanish."""
    for i, x in enumerate(point):
        if x:
            return i
    raise ValueError("the zero vector is not a projective point")


def analyze_point(f: HomogeneousPoly, point: Sequence, chart: int | None = None,
                  **kw) -> SingularPointRecord:
    point = tuple(Fraction(x) for x in point)
    if chart is None:
        chart = default_chart(point)
    germ = LocalGerm(local_germ(f, chart, point))
    mu_basis = local_quotient(germ, False, **kw)
    tj_basis = local_quotient(germ, True, **kw)
    return SingularPointRecord(point, chart, germ, mu_basis.dimension, tj_basis.dimension, tj_basis)


def tjurina_functionals(record: SingularPointRecord, h: Poly, chart: int | None = None) -> tuple[Fraction, ...]:
    """Normal-form coefficients of the germ of ``h`` at the point modulo (g, J_g).

    All of them vanish exactly when ``h`` lies locally in the ideal of the
    singular subscheme.
    """
    if chart is not None and chart != record.chart:
        raise ValueError(f"chart mismatch: record uses chart {record.chart}, got {chart}")
    if h.num_vars != len(record.point):
        raise ValueError("polynomial and point live in different rings")
    out = [Fraction(0)] * record.tau
    for e, c in h.terms.items():
        for k, v in enumerate(record.monomial_functionals(e)):
            if v:
                out[k] += c * v
    return tuple(out)
