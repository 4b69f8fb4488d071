"""Exact linear algebra over the rationals.

Public entry points work on :class:`RatMatrix` (dense, row-major
:class:`fractions.Fraction` entries).  Internally every row is cleared of
denominators and eliminated fraction-free on sparse integer rows, removing
the row content after each step so intermediate integers stay small.  A final
division pass turns the reduced rows back into rationals.
"""
from __future__ import annotations

from fractions import Fraction
from math import gcd, lcm
from typing import Iterable, Mapping, Sequence

__all__ = [
    "RatMatrix",
    "RowSpace",
    "rank",
    "rref",
    "nullspace_basis",
    "sparse_int_row",
    "inverse",
]


def _frac(x) -> Fraction:
    return x if isinstance(x, Fraction) else Fraction(x)


class RatMatrix:
    """Immutable dense matrix of rationals."""

    __slots__ = ("rows", "cols", "entries")

    def __init__(self, rows: int, cols: int, entries: Iterable = ()):
        entries = tuple(_frac(e) for e in entries)
        if len(entries) != rows * cols:
            raise ValueError(
                f"expected {rows * cols} entries for a {rows}x{cols} matrix, got {len(entries)}"
            )
        self.rows = rows
        self.cols = cols
        self.entries = entries

    @classmethod
    def from_rows(cls, rows: Sequence[Sequence], cols: int | None = None) -> "RatMatrix":
        rows = [list(r) for r in rows]
        if cols is None:
            cols = len(rows[0]) if rows else 0
        for r in rows:
            if len(r) != cols:
                raise ValueError("ragged rows")
        return cls(len(rows), cols, (e for r in rows for e in r))

    @classmethod
    def zeros(cls, rows: int, cols: int) -> "RatMatrix":
        return cls(rows, cols, [0] * (rows * cols))

    @classmethod
    def identity(cls, n: int) -> "RatMatrix":
        return cls(n, n, [1 if i == j else 0 for i in range(n) for j in range(n)])

    def __getitem__(self, ij):
        i, j = ij
        return self.entries[i * self.cols + j]

    def row(self, i: int) -> tuple[Fraction, ...]:
        return self.entries[i * self.cols:(i + 1) * self.cols]

    def to_rows(self) -> list[list[Fraction]]:
        return [list(self.row(i)) for i in range(self.rows)]

    def transpose(self) -> "RatMatrix":
        return RatMatrix(
            self.cols, self.rows,
            (self[i, j] for j in range(self.cols) for i in range(self.rows)),
        )

    def matvec(self, v: Sequence) -> list[Fraction]:
        if len(v) != self.cols:
            raise ValueError("dimension mismatch")
        return [sum((a * b for a, b in zip(self.row(i), v) if a and b), Fraction(0))
                for i in range(self.rows)]

    def __matmul__(self, other: "RatMatrix") -> "RatMatrix":
        if self.cols != other.rows:
            raise ValueError("dimension mismatch")
        cols_t = [other.transpose().row(j) for j in range(other.cols)]
        return RatMatrix(self.rows, other.cols, (
            sum((a * b for a, b in zip(self.row(i), c) if a and b), Fraction(0))
            for i in range(self.rows) for c in cols_t
        ))

    def __eq__(self, other) -> bool:
        if not isinstance(other, RatMatrix):
            return NotImplemented
        return (self.rows, self.cols, self.entries) == (other.rows, other.cols, other.entries)

    def __hash__(self) -> int:
        return hash((self.rows, self.cols, self.entries))

    def __repr__(self) -> str:
        body = "; ".join(" ".join(str(x) for x in self.row(i)) for i in range(self.rows))
        return f"RatMatrix({self.rows}x{self.cols}: [{body}])"


def sparse_int_row(row) -> dict[int, int]:
    """Primitive integer row proportional to ``row``.

    ``row`` is either a dense sequence or a ``{column: value}`` mapping.  The
    result has no zero entries, coprime entries and a positive leading entry.
    """
    items = row.items() if isinstance(row, Mapping) else enumerate(row)
    fr = {j: _frac(v) for j, v in items if v}
    if not fr:
        return {}
    den = lcm(*(v.denominator for v in fr.values()))
    out = {j: v.numerator * (den // v.denominator) for j, v in fr.items()}
    return _primitive(out)


def _primitive(row: dict[int, int]) -> dict[int, int]:
    if not row:
        return row
    c = gcd(*row.values())
    if row[min(row)] < 0:
        c = -c
    if c != 1:
        row = {j: v // c for j, v in row.items()}
    return row


def _eliminate(row: dict[int, int], prow: dict[int, int], col: int) -> dict[int, int]:
    """Return a primitive multiple of ``row`` with column ``col`` cleared by ``prow``."""
    a, b = prow[col], row[col]
    g = gcd(a, b)
    ca, cb = a // g, b // g
    if ca < 0:
        ca, cb = -ca, -cb
    new = {j: ca * v for j, v in row.items()} if ca != 1 else dict(row)
    for j, v in prow.items():
        nv = new.get(j, 0) - cb * v
        if nv:
            new[j] = nv
        else:
            new.pop(j, None)
    return _primitive(new)


class RowSpace:
    """Incrementally maintained echelon basis of a span of rational rows.

    Rows are stored as primitive sparse integer vectors keyed by their pivot
    (leftmost nonzero) column.  Useful for rank counting and span-membership
    tests without ever materialising the full matrix.
    """

    def __init__(self, ncols: int):
        self.ncols = ncols
        self._pivots: dict[int, dict[int, int]] = {}

    @property
    def rank(self) -> int:
        return len(self._pivots)

    @property
    def pivots(self) -> list[int]:
        return sorted(self._pivots)

    def _reduce(self, row: dict[int, int]) -> dict[int, int]:
        pivots = self._pivots
        while row:
            lead = min(row)
            prow = pivots.get(lead)
            if prow is None:
                return row
            row = _eliminate(row, prow, lead)
        return row

    def add(self, row) -> bool:
        """Insert ``row``; return True when it enlarged the span."""
        r = self._reduce(sparse_int_row(row))
        if not r:
            return False
        self._pivots[min(r)] = r
        return True

    def extend(self, rows: Iterable) -> int:
        return sum(1 for r in rows if self.add(r))

    def contains(self, row) -> bool:
        return not self._reduce(sparse_int_row(row))

    def copy(self) -> "RowSpace":
        other = RowSpace(self.ncols)
        other._pivots = dict(self._pivots)
        return other

    def reduced_rows(self) -> list[tuple[int, dict[int, Fraction]]]:
        """Rows of the reduced echelon form as ``(pivot, {col: Fraction})``, by pivot."""
        order = sorted(self._pivots)
        done: dict[int, dict[int, int]] = {}
        for p in reversed(order):
            row = self._pivots[p]
            for q in order:
                if q > p and q in row:
                    row = _eliminate(row, done[q], q)
            done[p] = row
        out = []
        for p in order:
            row = done[p]
            lead = row[p]
            out.append((p, {j: Fraction(v, lead) for j, v in sorted(row.items())}))
        return out


def _rowspace_of(M: RatMatrix | Sequence[Sequence]) -> tuple[RowSpace, int, int]:
    if not isinstance(M, RatMatrix):
        M = RatMatrix.from_rows(M)
    space = RowSpace(M.cols)
    for i in range(M.rows):
        space.add(M.row(i))
    return space, M.rows, M.cols


def rank(M: RatMatrix | Sequence[Sequence]) -> int:
    """Exact rank over the rationals."""
    return _rowspace_of(M)[0].rank


def rref(M: RatMatrix | Sequence[Sequence]) -> tuple[RatMatrix, list[int]]:
    """Reduced row echelon form and the pivot columns.

    The result has the same shape as ``M``; zero rows come last.
    """
    space, nrows, ncols = _rowspace_of(M)
    dense = []
    pivots = []
    for p, row in space.reduced_rows():
        pivots.append(p)
        r = [Fraction(0)] * ncols
        for j, v in row.items():
            r[j] = v
        dense.append(r)
    dense.extend([Fraction(0)] * ncols for _ in range(nrows - len(dense)))
    return RatMatrix(nrows, ncols, (e for r in dense for e in r)), pivots


def nullspace_from_reduced(reduced: list[tuple[int, dict[int, Fraction]]],
                           ncols: int) -> list[list[Fraction]]:
    pivot_cols = {p for p, _ in reduced}
    basis = []
    for free in range(ncols):
        if free in pivot_cols:
            continue
        v = [Fraction(0)] * ncols
        v[free] = Fraction(1)
        for p, row in reduced:
            c = row.get(free)
            if c:
                v[p] = -c
        basis.append(v)
    return basis


def nullspace_basis(M: RatMatrix | Sequence[Sequence]) -> list[list[Fraction]]:
    """Basis of the right kernel of ``M``.

    One vector per free column, in increasing column order: the free variable
    is set to 1, the other free variables to 0, and the pivot variables are
    read off the reduced echelon form.
    """
    space, _, ncols = _rowspace_of(M)
    return nullspace_from_reduced(space.reduced_rows(), ncols)


def inverse(M: RatMatrix) -> RatMatrix:
    """Inverse of a square matrix; raises ``ValueError`` when singular."""
    n = M.rows
    if M.cols != n:
        raise ValueError("inverse of a non-square matrix")
    aug = [list(M.row(i)) + [int(i == j) for j in range(n)] for i in range(n)]
    R, pivots = rref(aug)
    if pivots[:n] != list(range(n)):
        raise ValueError("matrix is singular")
    return RatMatrix(n, n, (R[i, n + j] for i in range(n) for j in range(n)))
