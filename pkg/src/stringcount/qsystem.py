"""Generating series of R(nu, N) and the canonical Q-system solution."""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from math import ceil
from typing import Iterator

from .algebra import AlgebraData, g_kernel
from .series import TruncSeries
from .strings import SparseArray, r_number


@lru_cache(maxsize=None)
def _partitions(w: int, largest: int | None = None) -> tuple[tuple[tuple[int, int], ...], ...]:
    """Partitions of w as tuples of (part, multiplicity), parts decreasing."""
    if largest is None:
        largest = w
    if w == 0:
        return ((),)
    out = []
    for part in range(min(w, largest), 0, -1):
        for mult in range(w // part, 0, -1):
            for rest in _partitions(w - part * mult, part - 1):
                out.append(((part, mult),) + rest)
    return tuple(out)


@dataclass(frozen=True)
class PatternEnumerator:
    """All string patterns N in n colors with weight(N) <= cap."""

    n: int
    cap: int

    def __iter__(self) -> Iterator[SparseArray]:
        return iter(_patterns(self.n, self.cap))

    def __len__(self) -> int:
        return len(_patterns(self.n, self.cap))


@lru_cache(maxsize=None)
def _patterns(n: int, cap: int) -> tuple[SparseArray, ...]:
    per_color = [[] for _ in range(cap + 1)]
    for w in range(cap + 1):
        per_color[w] = _partitions(w)

    out: list[SparseArray] = []

    def rec(a: int, budget: int, acc: list) -> None:
        if a > n:
            out.append(SparseArray(acc))
            return
        for w in range(budget + 1):
            for part in per_color[w]:
                rec(a + 1, budget - w, acc + [((a, m), c) for m, c in part])

    rec(1, cap, [])
    return tuple(out)


def r_series(alg: AlgebraData, nu: SparseArray, D: int) -> TruncSeries:
    """sum_N R(nu, N) prod_a y_a^{M_a(N)}, truncated at total degree D."""
    if D < 0:
        raise ValueError("degree cap must be nonnegative")
    coeffs: dict[tuple[int, ...], int] = {}
    for N in _patterns(alg.n, D):
        R = r_number(alg, nu, N)
        if R:
            e = tuple(N.color_weight(a) for a in range(1, alg.n + 1))
            coeffs[e] = coeffs.get(e, 0) + R
    return TruncSeries(alg.n, D, coeffs)


@lru_cache(maxsize=None)
def canonical_q(alg: AlgebraData, a: int, m: int, D: int) -> TruncSeries:
    """Q^(a)_m of the canonical solution, as the series of the unit datum."""
    if m == 0:
        return TruncSeries.one(alg.n, D)
    return r_series(alg, SparseArray.unit(a, m), D)


def kernel_range(alg: AlgebraData, m: int) -> int:
    return ceil(max(alg.d) * (m + 1))


def kernel_row(alg: AlgebraData, a: int, m: int) -> dict[tuple[int, int], int]:
    """Nonzero G_{am,bk}, asserting none lies beyond the product range."""
    kmax = kernel_range(alg, m)
    row = {}
    for b in range(1, alg.n + 1):
        for k in range(1, 2 * kmax + 3):
            g = g_kernel(alg, a, m, b, k)
            if g and k > kmax:
                raise AssertionError(f"kernel entry G[{a}{m},{b}{k}] outside product range")
            if g:
                row[(b, k)] = g
    return row


def q_system_residual(alg: AlgebraData, a: int, m: int, D: int) -> TruncSeries:
    """Q_m^2 - Q_{m+1} Q_{m-1} - y_a^m Q_m^2 prod (Q^(b)_k)^G; zero for the canonical solution."""
    if m < 1:
        raise ValueError("residual is defined for m >= 1")
    Qm = canonical_q(alg, a, m, D)
    prod = TruncSeries.one(alg.n, D)
    for (b, k), g in kernel_row(alg, a, m).items():
        prod = prod * canonical_q(alg, b, k, D) ** g
    ya_m = TruncSeries.variable(alg.n, D, a, m)
    square = Qm * Qm
    return square - canonical_q(alg, a, m + 1, D) * canonical_q(alg, a, m - 1, D) - ya_m * square * prod


def verify_multiplicativity(alg: AlgebraData, nu1: SparseArray, nu2: SparseArray, D: int) -> bool:
    return r_series(alg, nu1 + nu2, D) == r_series(alg, nu1, D) * r_series(alg, nu2, D)


@dataclass(frozen=True)
class Convergence:
    stable: bool
    m0: int | None
    limit: TruncSeries | None


def convergence(alg: AlgebraData, a: int, D: int, m_max: int) -> Convergence:
    """Smallest m0 with Q^(a)_m constant for m0 <= m <= m_max (needs two equal terms)."""
    qs = [canonical_q(alg, a, m, D) for m in range(0, m_max + 1)]
    m0 = m_max
    while m0 > 0 and qs[m0 - 1] == qs[m_max]:
        m0 -= 1
    if m0 >= m_max:
        return Convergence(False, None, None)
    return Convergence(True, m0, qs[m_max])


def verify_convergence(alg: AlgebraData, a: int, D: int, m_max: int) -> bool:
    return convergence(alg, a, D, m_max).stable
