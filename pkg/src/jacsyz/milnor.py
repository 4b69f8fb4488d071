"""Graded pieces of Jacobian ideals and Hilbert functions of Milnor algebras."""
from __future__ import annotations

from dataclasses import dataclass, field
from math import comb

from .exactalg import RowSpace
from .polyring import HomogeneousPoly, monomial_basis, monomial_index, partial_derivative, restrict_to_hyperplane

__all__ = [
    "HilbertTable",
    "StabilizationError",
    "jacobian_partials",
    "jacobian_piece_dim",
    "milnor_dim",
    "milnor_hilbert",
    "smooth_hilbert",
    "smooth_hilbert_series",
    "projective_smoothness",
    "stabilized_tjurina",
    "socle_degree",
]


class StabilizationError(ArithmeticError):
    """Raised when dim M(f)_k fails to settle inside the scan window."""


@dataclass(frozen=True)
class HilbertTable:
    values: tuple[int, ...]
    stable_value: int | None = None
    stable_from: int | None = None
    notes: tuple[str, ...] = field(default=())

    def __getitem__(self, k: int) -> int:
        if k < 0:
            return 0
        if k < len(self.values):
            return self.values[k]
        if self.stable_value is not None:
            return self.stable_value
        raise IndexError(f"degree {k} beyond the computed range 0..{len(self.values) - 1}")

    @property
    def k_max(self) -> int:
        return len(self.values) - 1


def jacobian_partials(f: HomogeneousPoly) -> list[HomogeneousPoly]:
    return [partial_derivative(f, i) for i in range(f.num_vars)]


def _span_rows(gens: list[HomogeneousPoly], k: int):
    """Rows b*g for every generator g and every monomial b with deg(b*g) = k."""
    nv = gens[0].num_vars if gens else 0
    idx = monomial_index(nv, k)
    for g in gens:
        if g.is_zero() or g.degree > k:
            continue
        for b in monomial_basis(nv, k - g.degree):
            yield {idx[tuple(i + j for i, j in zip(b, e))]: c for e, c in g.terms.items()}


def jacobian_piece_dim(f: HomogeneousPoly, k: int) -> int:
    """dim (J_f)_k, the rank of (b_0..b_n) -> sum b_i f_i from S_{k-N+1}^{n+1} to S_k."""
    if k < f.degree - 1:
        return 0
    space = RowSpace(comb(f.num_vars - 1 + k, k))
    full = space.ncols
    for row in _span_rows(jacobian_partials(f), k):
        space.add(row)
        if space.rank == full:
            break
    return space.rank


def milnor_dim(f: HomogeneousPoly, k: int) -> int:
    if k < 0:
        return 0
    return comb(f.num_vars - 1 + k, k) - jacobian_piece_dim(f, k)


def milnor_hilbert(f: HomogeneousPoly, k_max: int) -> HilbertTable:
    """dim M(f)_k for k = 0..k_max (no stabilization metadata)."""
    return HilbertTable(tuple(milnor_dim(f, k) for k in range(k_max + 1)))


def smooth_hilbert_series(n: int, N: int) -> list[int]:
    """Coefficients of ((1 - t^(N-1)) / (1 - t))^(n+1), up to the socle degree."""
    if N < 2:
        raise ValueError("degree N must be at least 2")
    block = [1] * (N - 1)
    series = [1]
    for _ in range(n + 1):
        out = [0] * (len(series) + len(block) - 1)
        for i, a in enumerate(series):
            for j, b in enumerate(block):
                out[i + j] += a * b
        series = out
    return series


def smooth_hilbert(n: int, N: int, k: int) -> int:
    """dim M(g)_k for a smooth hypersurface g of degree N in P^n."""
    if k < 0:
        return 0
    series = smooth_hilbert_series(n, N)
    return series[k] if k < len(series) else 0


def socle_degree(n: int, N: int) -> int:
    """T = (n+1)(N-2), top degree of the Milnor algebra of a smooth hypersurface."""
    return (n + 1) * (N - 2)


def projective_smoothness(h: HomogeneousPoly) -> bool:
    """Whether ``h = 0`` is a smooth hypersurface in its projective space.

    Uses that the Milnor algebra vanishes in degree v(deg - 2) + 1 (v the
    number of variables) exactly when the partials have no common projective
    zero; a standard graded algebra that vanishes in one degree vanishes in
    every higher degree.
    """
    if h.degree <= 1:
        return True
    if h.is_zero():
        return False
    v = h.num_vars
    return milnor_dim(h, v * (h.degree - 2) + 1) == 0


def hyperplane_section_smooth(f: HomogeneousPoly, c: int) -> bool:
    """Smoothness of ``f`` restricted to ``x_c = 0``."""
    h = restrict_to_hyperplane(f, c)
    if h.is_zero():
        return False
    return projective_smoothness(h)


def stabilized_tjurina(f: HomogeneousPoly, *, table: dict[int, int] | None = None) -> tuple[int, int]:
    """Plateau value of dim M(f)_k, i.e. the global Tjurina number tau(V).

    Scans upward from T = (n+1)(N-2) until n+1 consecutive degrees give the
    same value.  Returns ``(tau, first degree of the window)``.  ``table`` is
    an optional cache of already computed values and is filled in place.
    """
    n = f.num_vars - 1
    N = f.degree
    T = socle_degree(n, N)
    window = n + 1
    cutoff = T + 3 * (n + 1)
    cache = table if table is not None else {}
    run_start, run_value = None, None
    for k in range(T, cutoff + 1):
        if k not in cache:
            cache[k] = milnor_dim(f, k)
        v = cache[k]
        if v != run_value:
            run_start, run_value = k, v
        if k - run_start + 1 >= window:
            return run_value, run_start
    raise StabilizationError("no stabilization: singularities may be non-isolated")


def milnor_table(f: HomogeneousPoly, k_max: int) -> HilbertTable:
    """Hilbert table through ``k_max`` with the certified plateau attached."""
    cache: dict[int, int] = {}
    tau, start = stabilized_tjurina(f, table=cache)
    values = []
    for k in range(k_max + 1):
        if k not in cache:
            cache[k] = milnor_dim(f, k)
        values.append(cache[k])
    return HilbertTable(tuple(values), tau, start,
                        ("plateau certified by a window of n+1 equal values starting at T",))
