"""Sparse polynomials with exact rational coefficients.

A polynomial is a mapping from exponent tuples to nonzero
:class:`~fractions.Fraction` coefficients.  :class:`Poly` allows mixed
degrees (affine charts, local germs); :class:`HomogeneousPoly` pins a single
total degree, which is kept even for the zero polynomial.

Monomials of a fixed degree are ordered by degree reverse lexicographic order,
largest first: ``x0^d`` leads and ``x_n^d`` comes last.
"""
from __future__ import annotations

from fractions import Fraction
from functools import lru_cache
from itertools import combinations_with_replacement
from math import comb
from typing import Iterable, Mapping, Sequence

from .exactalg import RatMatrix, rank

Exponent = tuple[int, ...]

__all__ = [
    "Poly",
    "HomogeneousPoly",
    "AffinePoly",
    "monomial_basis",
    "monomial_index",
    "grevlex_key",
    "partial_derivative",
    "evaluate",
    "euler_check",
    "linear_change",
    "local_germ",
    "restrict_to_hyperplane",
    "variable_names",
]


def grevlex_key(e: Exponent):
    """Sort key such that ascending order is descending grevlex."""
    return (-sum(e), tuple(reversed(e)))


@lru_cache(maxsize=None)
def monomial_basis(num_vars: int, degree: int) -> tuple[Exponent, ...]:
    """All exponent vectors of the given total degree, largest first in grevlex."""
    if degree < 0 or num_vars < 0:
        return ()
    if num_vars == 0:
        return ((),) if degree == 0 else ()
    out = []
    for combo in combinations_with_replacement(range(num_vars), degree):
        e = [0] * num_vars
        for i in combo:
            e[i] += 1
        out.append(tuple(e))
    out.sort(key=grevlex_key)
    assert len(out) == comb(num_vars - 1 + degree, degree)
    return tuple(out)


@lru_cache(maxsize=None)
def monomial_index(num_vars: int, degree: int) -> dict[Exponent, int]:
    return {e: i for i, e in enumerate(monomial_basis(num_vars, degree))}


def variable_names(num_vars: int) -> tuple[str, ...]:
    if num_vars == 4:
        return ("x", "y", "z", "w")
    if num_vars <= 3:
        return ("x", "y", "z")[:num_vars]
    return tuple(f"x{i}" for i in range(num_vars))


def _add_exp(a: Exponent, b: Exponent) -> Exponent:
    return tuple(i + j for i, j in zip(a, b))


class Poly:
    """Sparse polynomial in ``num_vars`` variables, any degrees."""

    __slots__ = ("num_vars", "terms", "_hash")

    def __init__(self, num_vars: int, terms: Mapping[Exponent, object] | None = None):
        self.num_vars = num_vars
        clean = {}
        for e, c in (terms or {}).items():
            e = tuple(int(i) for i in e)
            if len(e) != num_vars or min(e, default=0) < 0:
                raise ValueError(f"bad exponent {e} for {num_vars} variables")
            c = c if isinstance(c, Fraction) else Fraction(c)
            if c:
                clean[e] = clean.get(e, 0) + c
        self.terms: dict[Exponent, Fraction] = {e: c for e, c in clean.items() if c}
        self._hash = None

    # construction helpers
    @classmethod
    def constant(cls, num_vars: int, c) -> "Poly":
        return cls(num_vars, {(0,) * num_vars: c})

    @classmethod
    def variable(cls, num_vars: int, i: int) -> "Poly":
        e = [0] * num_vars
        e[i] = 1
        return cls(num_vars, {tuple(e): 1})

    def _make(self, terms: dict) -> "Poly":
        return Poly(self.num_vars, terms)

    # basic queries
    def is_zero(self) -> bool:
        return not self.terms

    def total_degree(self) -> int:
        return max((sum(e) for e in self.terms), default=0)

    def order(self) -> int:
        """Lowest degree of a term; 0 for the zero polynomial."""
        return min((sum(e) for e in self.terms), default=0)

    def is_homogeneous(self) -> bool:
        return len({sum(e) for e in self.terms}) <= 1

    def homogeneous_part(self, d: int) -> "Poly":
        return Poly(self.num_vars, {e: c for e, c in self.terms.items() if sum(e) == d})

    def truncate(self, D: int) -> "Poly":
        """Drop every term of degree ``>= D``."""
        return Poly(self.num_vars, {e: c for e, c in self.terms.items() if sum(e) < D})

    def coefficient(self, e: Exponent) -> Fraction:
        return self.terms.get(tuple(e), Fraction(0))

    def sorted_terms(self) -> list[tuple[Exponent, Fraction]]:
        return sorted(self.terms.items(), key=lambda t: grevlex_key(t[0]))

    # arithmetic
    def _coerce(self, other) -> "Poly":
        if isinstance(other, Poly):
            if other.num_vars != self.num_vars:
                raise ValueError("polynomials live in different rings")
            return other
        return Poly.constant(self.num_vars, other)

    def __add__(self, other):
        other = self._coerce(other)
        t = dict(self.terms)
        for e, c in other.terms.items():
            t[e] = t.get(e, 0) + c
        return Poly(self.num_vars, t)

    __radd__ = __add__

    def __neg__(self):
        return Poly(self.num_vars, {e: -c for e, c in self.terms.items()})

    def __sub__(self, other):
        return self + (-self._coerce(other))

    def __rsub__(self, other):
        return self._coerce(other) - self

    def __mul__(self, other):
        if not isinstance(other, Poly):
            c = Fraction(other)
            return Poly(self.num_vars, {e: c * v for e, v in self.terms.items()})
        other = self._coerce(other)
        t: dict[Exponent, Fraction] = {}
        for e1, c1 in self.terms.items():
            for e2, c2 in other.terms.items():
                e = _add_exp(e1, e2)
                t[e] = t.get(e, 0) + c1 * c2
        return Poly(self.num_vars, t)

    def __rmul__(self, other):
        return self * other

    def __pow__(self, k: int):
        if not isinstance(k, int) or k < 0:
            raise ValueError("exponent must be a non-negative integer")
        result = Poly.constant(self.num_vars, 1)
        base = Poly(self.num_vars, self.terms)
        while k:
            if k & 1:
                result = result * base
            k >>= 1
            if k:
                base = base * base
        return result

    def mul_monomial(self, e: Exponent, c=1) -> "Poly":
        c = Fraction(c)
        return Poly(self.num_vars, {_add_exp(e, e2): c * v for e2, v in self.terms.items()})

    def derivative(self, i: int) -> "Poly":
        t = {}
        for e, c in self.terms.items():
            if e[i]:
                d = list(e)
                d[i] -= 1
                t[tuple(d)] = c * e[i]
        return Poly(self.num_vars, t)

    def __call__(self, *point):
        return evaluate(self, point)

    def __eq__(self, other) -> bool:
        if isinstance(other, Poly):
            return self.num_vars == other.num_vars and self.terms == other.terms
        if not self.terms:
            return other == 0
        return self.terms == {(0,) * self.num_vars: other}

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash((self.num_vars, frozenset(self.terms.items())))
        return self._hash

    def format(self, names: Sequence[str] | None = None) -> str:
        names = names or variable_names(self.num_vars)
        if not self.terms:
            return "0"
        parts = []
        for e, c in self.sorted_terms():
            mono = "*".join(
                n if k == 1 else f"{n}^{k}" for n, k in zip(names, e) if k
            )
            sign = "-" if c < 0 else "+"
            a = abs(c)
            if not mono:
                body = str(a)
            elif a == 1:
                body = mono
            else:
                body = f"{a}*{mono}"
            parts.append((sign, body))
        first_sign, first = parts[0]
        out = ("-" if first_sign == "-" else "") + first
        for sign, body in parts[1:]:
            out += f" {sign} {body}"
        return out

    def __str__(self) -> str:
        return self.format()

    def __repr__(self) -> str:
        return f"{type(self).__name__}({self.format()!r})"


AffinePoly = Poly


class HomogeneousPoly(Poly):
    """Form of a fixed total degree; the zero form keeps a nominal degree."""

    __slots__ = ("degree",)

    def __init__(self, num_vars: int, degree: int, terms: Mapping[Exponent, object] | None = None):
        super().__init__(num_vars, terms)
        bad = [e for e in self.terms if sum(e) != degree]
        if bad:
            raise ValueError(f"terms {bad} are not of degree {degree}")
        self.degree = degree

    @classmethod
    def from_poly(cls, p: Poly, degree: int | None = None) -> "HomogeneousPoly":
        if degree is None:
            degrees = {sum(e) for e in p.terms}
            if len(degrees) > 1:
                raise ValueError("polynomial is not homogeneous")
            degree = degrees.pop() if degrees else 0
        return cls(p.num_vars, degree, p.terms)

    @classmethod
    def zero(cls, num_vars: int, degree: int) -> "HomogeneousPoly":
        return cls(num_vars, degree)

    @classmethod
    def constant(cls, num_vars: int, c) -> "HomogeneousPoly":
        return cls(num_vars, 0, {(0,) * num_vars: c})

    @classmethod
    def variable(cls, num_vars: int, i: int) -> "HomogeneousPoly":
        return cls.from_poly(Poly.variable(num_vars, i))

    @classmethod
    def monomial(cls, e: Exponent, c=1) -> "HomogeneousPoly":
        return cls(len(e), sum(e), {tuple(e): c})

    @classmethod
    def from_vector(cls, num_vars: int, degree: int, vec: Sequence) -> "HomogeneousPoly":
        """Inverse of :meth:`to_vector`."""
        basis = monomial_basis(num_vars, degree)
        return cls(num_vars, degree, {e: c for e, c in zip(basis, vec) if c})

    def to_vector(self) -> list[Fraction]:
        idx = monomial_index(self.num_vars, self.degree)
        v = [Fraction(0)] * len(idx)
        for e, c in self.terms.items():
            v[idx[e]] = c
        return v

    def to_sparse(self, offset: int = 0) -> dict[int, Fraction]:
        idx = monomial_index(self.num_vars, self.degree)
        return {offset + idx[e]: c for e, c in self.terms.items()}

    def __add__(self, other):
        if isinstance(other, HomogeneousPoly):
            if other.degree != self.degree and not (self.is_zero() or other.is_zero()):
                raise ValueError("adding forms of different degrees")
            deg = self.degree if not self.is_zero() else other.degree
            return HomogeneousPoly(self.num_vars, deg, Poly.__add__(self, other).terms)
        return Poly.__add__(self, other)

    __radd__ = __add__

    def __neg__(self):
        return HomogeneousPoly(self.num_vars, self.degree, {e: -c for e, c in self.terms.items()})

    def __sub__(self, other):
        if isinstance(other, HomogeneousPoly):
            return self + (-other)
        return Poly.__sub__(self, other)

    def __mul__(self, other):
        if isinstance(other, HomogeneousPoly):
            return HomogeneousPoly(self.num_vars, self.degree + other.degree,
                                   Poly.__mul__(self, other).terms)
        if isinstance(other, Poly):
            return Poly.__mul__(self, other)
        return HomogeneousPoly(self.num_vars, self.degree, Poly.__mul__(self, other).terms)

    def __rmul__(self, other):
        return self * other

    def __pow__(self, k: int):
        return HomogeneousPoly(self.num_vars, self.degree * k, Poly.__pow__(self, k).terms)

    def mul_monomial(self, e: Exponent, c=1) -> "HomogeneousPoly":
        return HomogeneousPoly(self.num_vars, self.degree + sum(e),
                               Poly.mul_monomial(self, e, c).terms)

    def derivative(self, i: int) -> "HomogeneousPoly":
        return partial_derivative(self, i)

    def __eq__(self, other) -> bool:
        if isinstance(other, HomogeneousPoly) and not (self.is_zero() and other.is_zero()):
            return self.degree == other.degree and Poly.__eq__(self, other)
        return Poly.__eq__(self, other)

    __hash__ = Poly.__hash__


def partial_derivative(p: HomogeneousPoly, i: int) -> HomogeneousPoly:
    """Partial derivative in the ``i``-th variable; degree drops by one (floored at 0)."""
    d = Poly.derivative(p, i)
    return HomogeneousPoly(p.num_vars, max(p.degree - 1, 0), d.terms)


def evaluate(p: Poly, point: Sequence) -> Fraction:
    if len(point) != p.num_vars:
        raise ValueError(f"point has {len(point)} coordinates, expected {p.num_vars}")
    pt = [Fraction(x) for x in point]
    total = Fraction(0)
    for e, c in p.terms.items():
        v = c
        for x, k in zip(pt, e):
            if k:
                v *= x ** k
                if not v:
                    break
        total += v
    return total


def euler_check(f: Poly) -> bool:
    """True iff sum_i x_i * df/dx_i == N * f, with N the top total degree."""
    N = f.degree if isinstance(f, HomogeneousPoly) else f.total_degree()
    lhs = Poly(f.num_vars)
    for i in range(f.num_vars):
        lhs = lhs + Poly.variable(f.num_vars, i) * Poly.derivative(f, i)
    return Poly.__eq__(lhs, Poly.__mul__(f, N))


def _as_matrix(A) -> RatMatrix:
    return A if isinstance(A, RatMatrix) else RatMatrix.from_rows(A)


def linear_change(f: Poly, A) -> Poly:
    """Compose with a linear map: the result is ``x -> f(A x)``."""
    A = _as_matrix(A)
    n = f.num_vars
    if A.rows != n or A.cols != n:
        raise ValueError(f"coordinate change must be {n}x{n}")
    if rank(A) < n:
        raise ValueError("non-invertible coordinate change")
    forms = [Poly(n, {tuple(int(j == k) for k in range(n)): A[i, j] for j in range(n)})
             for i in range(n)]
    powers: dict[tuple[int, int], Poly] = {}

    def power(i: int, k: int) -> Poly:
        if (i, k) not in powers:
            powers[(i, k)] = forms[i] ** k
        return powers[(i, k)]

    out = Poly(n)
    for e, c in f.sorted_terms():
        term = Poly.constant(n, c)
        for i, k in enumerate(e):
            if k:
                term = term * power(i, k)
        out = out + term
    if isinstance(f, HomogeneousPoly):
        return HomogeneousPoly(n, f.degree, out.terms)
    return out


def restrict_to_hyperplane(f: HomogeneousPoly, c: int) -> HomogeneousPoly:
    """Set ``x_c = 0`` and drop that variable."""
    terms = {e[:c] + e[c + 1:]: v for e, v in f.terms.items() if e[c] == 0}
    return HomogeneousPoly(f.num_vars - 1, f.degree, terms)


def local_germ(f: Poly, chart: int, q: Sequence) -> Poly:
    """Affine germ of ``f`` at the projective point ``q`` in the chart ``x_chart = 1``.

    ``q`` is rescaled so ``q[chart] == 1``; the remaining coordinates become the
    new origin.  Variables of the result are the original ones with ``x_chart``
    removed, in order.
    """
    q = [Fraction(x) for x in q]
    if len(q) != f.num_vars:
        raise ValueError(f"point has {len(q)} coordinates, expected {f.num_vars}")
    if q[chart] == 0:
        raise ValueError("point not in chart")
    q = [x / q[chart] for x in q]
    shift = [x for k, x in enumerate(q) if k != chart]
    n = f.num_vars - 1
    lin = [Poly(n, {tuple(int(j == k) for j in range(n)): 1, (0,) * n: s})
           for k, s in enumerate(shift)]
    powers: dict[tuple[int, int], Poly] = {}
    out = Poly(n)
    for e, c in f.terms.items():
        term = Poly.constant(n, c)
        rest = e[:chart] + e[chart + 1:]
        for i, k in enumerate(rest):
            if k:
                if (i, k) not in powers:
                    powers[(i, k)] = lin[i] ** k
                term = term * powers[(i, k)]
        out = out + term
    return out
