"""Integer invariants of a quantum-space datum nu and a string pattern N.

Everything here is exact: vacancy numbers, the string-centre exponent matrix,
the matrix F and the counting number R(nu, N), plus the order estimates used
to state the genericity condition.
"""

from __future__ import annotations

from fractions import Fraction
from math import factorial
from typing import Iterable, Iterator, Mapping

from .algebra import AlgebraData
from .linalg import IntMatrix, bareiss_det


class DivisibilityError(AssertionError):
    """An entry that must be integral came out fractional."""


class EmptyPatternError(ValueError):
    pass


class SparseArray:
    """Finite-support array ``(a, m) -> count`` with nonnegative counts.

    Models both quantum-space data and string patterns. Instances are
    immutable and hashable; zero entries are never stored.
    """

    __slots__ = ("_items", "_hash")

    def __init__(self, entries: Mapping[tuple[int, int], int] | Iterable = ()):
        if isinstance(entries, Mapping):
            entries = entries.items()
        acc: dict[tuple[int, int], int] = {}
        for (a, m), c in entries:
            a, m, c = int(a), int(m), int(c)
            if a < 1 or m < 1:
                raise ValueError(f"indices must be positive, got ({a},{m})")
            if c < 0:
                raise ValueError(f"negative count {c} at ({a},{m})")
            acc[(a, m)] = acc.get((a, m), 0) + c
        self._items = tuple(sorted((k, v) for k, v in acc.items() if v))
        self._hash = hash(self._items)

    @classmethod
    def unit(cls, a: int, m: int) -> "SparseArray":
        return cls({(a, m): 1})

    @classmethod
    def parse(cls, text: str) -> "SparseArray":
        """Parse ``"a,m:count;..."``; the empty string is the zero array."""
        entries = []
        for chunk in text.replace(" ", "").split(";"):
            if not chunk:
                continue
            try:
                key, count = chunk.split(":")
                a, m = key.split(",")
                entries.append(((int(a), int(m)), int(count)))
            except ValueError:
                raise ValueError(f"bad sparse-array entry {chunk!r}; expected 'a,m:count'") from None
        return cls(entries)

    def __str__(self) -> str:
        return ";".join(f"{a},{m}:{c}" for (a, m), c in self._items)

    def __repr__(self) -> str:
        return f"SparseArray({dict(self._items)!r})"

    def __eq__(self, other) -> bool:
        return isinstance(other, SparseArray) and self._items == other._items

    def __hash__(self) -> int:
        return self._hash

    def __bool__(self) -> bool:
        return bool(self._items)

    def __add__(self, other: "SparseArray") -> "SparseArray":
        return SparseArray(self._items + other._items)

    def __iter__(self) -> Iterator[tuple[tuple[int, int], int]]:
        return iter(self._items)

    def items(self):
        return self._items

    def get(self, a: int, m: int) -> int:
        for key, c in self._items:
            if key == (a, m):
                return c
        return 0

    def support(self) -> tuple[tuple[int, int], ...]:
        """H'(N): the (a, m) with a nonzero entry, in canonical order."""
        return tuple(k for k, _ in self._items)

    def weight(self) -> int:
        return sum(m * c for (_, m), c in self._items)

    def color_weight(self, a: int) -> int:
        """M_a = sum_m m N^(a)_m."""
        return sum(m * c for (b, m), c in self._items if b == a)

    def total(self) -> int:
        return sum(c for _, c in self._items)

    def colors(self) -> set[int]:
        return {a for (a, _), _ in self._items}

    def max_color(self) -> int:
        return max((a for (a, _), _ in self._items), default=0)


def _exact(num: int, den: int, what: str) -> int:
    q, rem = divmod(num, den)
    if rem:
        raise DivisibilityError(f"{what}: {num}/{den} is not an integer")
    return q


def _check_colors(alg: AlgebraData, *arrays: SparseArray) -> None:
    for arr in arrays:
        if arr.max_color() > alg.n:
            raise ValueError(f"color {arr.max_color()} out of range 1..{alg.n} for {alg.label}")


def gamma(alg: AlgebraData, nu: SparseArray, a: int, m: int) -> int:
    return sum(min(m, k) * c for (b, k), c in nu if b == a)


def _p_term(alg: AlgebraData, a: int, m: int, b: int, k: int) -> Fraction:
    """Coefficient of N^(b)_k in P^(a)_m (before the minus sign)."""
    return Fraction(alg.A(a, b), alg.ea(a) * alg.dp(b)) * min(alg.dp(a) * m, alg.dp(b) * k)


def vacancy_p(alg: AlgebraData, nu: SparseArray, N: SparseArray, a: int, m: int) -> int:
    """P^(a)_m(nu, N)."""
    total = Fraction(0)
    for (b, k), c in N:
        total += _p_term(alg, a, m, b, k) * c
    if total.denominator != 1:
        raise DivisibilityError(f"P^({a})_{m} not integral for {alg.label}")
    return gamma(alg, nu, a, m) - int(total)


def vacancy_p_hat(alg: AlgebraData, nu: SparseArray, N: SparseArray, a: int, m: int) -> int:
    """P-hat^(a)_m(nu, N): as P but with the restricted Cartan matrix of g."""
    total = 0
    for (b, k), c in N:
        total += _exact(
            alg.Ap(a, b) * min(alg.dp(a) * m, alg.dp(b) * k) * c, alg.dp(b), "P-hat"
        )
    return gamma(alg, nu, a, m) - total


def _k_entry(alg: AlgebraData, a: int, m: int, b: int, k: int) -> int:
    """(A_ba / (eps_b d'_a)) min(d'_a m, d'_b k), asserted integral."""
    return _exact(
        alg.A(b, a) * min(alg.dp(a) * m, alg.dp(b) * k),
        alg.ea(b) * alg.dp(a),
        f"string-centre exponent ({a},{m})x({b},{k})",
    )


def string_indices(N: SparseArray) -> list[tuple[int, int, int]]:
    """Canonically ordered (a, m, alpha) triples of all strings of N."""
    return [(a, m, alpha) for (a, m), c in N for alpha in range(1, c + 1)]


def sce_matrix(alg: AlgebraData, nu: SparseArray, N: SparseArray) -> IntMatrix:
    """Exponent matrix of the string-centre equations, indexed by (a, m, alpha)."""
    if not N:
        raise EmptyPatternError("the string-centre system of the empty pattern is empty")
    _check_colors(alg, nu, N)
    idx = string_indices(N)
    P = {(a, m): vacancy_p(alg, nu, N, a, m) for (a, m) in N.support()}
    rows = []
    for a, m, al in idx:
        row = []
        for b, k, be in idx:
            v = _k_entry(alg, a, m, b, k)
            if (a, m) == (b, k):
                v -= 1
                if al == be:
                    v += P[(a, m)] + N.get(a, m)
            row.append(v)
        rows.append(row)
    return IntMatrix.square(idx, rows)


def f_matrix(alg: AlgebraData, nu: SparseArray, N: SparseArray) -> IntMatrix:
    """The matrix F over H'(N) x H'(N) (row sums of the SCE matrix)."""
    _check_colors(alg, nu, N)
    H = N.support()
    rows = []
    for a, m in H:
        P = vacancy_p(alg, nu, N, a, m)
        rows.append(
            [
                (P if (a, m) == (b, k) else 0) + _k_entry(alg, a, m, b, k) * N.get(b, k)
                for b, k in H
            ]
        )
    return IntMatrix.square(H, rows)


def binomial(k: int, j: int) -> int:
    """Binomial coefficient extended polynomially to all integers k; 0 for j < 0."""
    if j < 0:
        return 0
    num = 1
    for i in range(j):
        num *= k - i
    return num // factorial(j)


def r_number_exact(alg: AlgebraData, nu: SparseArray, N: SparseArray) -> Fraction:
    """R(nu, N) as a rational, without the integrality assertion."""
    if not N:
        return Fraction(1)
    F = f_matrix(alg, nu, N)
    value = Fraction(F.det())
    if value == 0:
        return value
    for i, (a, m) in enumerate(F.row_labels):
        n_am = N.get(a, m)
        # diagonal of F is P + K N, so P is recovered without recomputing gamma
        P = F.rows[i][i] - _k_entry(alg, a, m, a, m) * n_am
        value *= Fraction(binomial(P + n_am - 1, n_am - 1), n_am)
    return value


def r_number(alg: AlgebraData, nu: SparseArray, N: SparseArray) -> int:
    """R(nu, N), asserted to be an integer."""
    value = r_number_exact(alg, nu, N)
    if value.denominator != 1:
        raise DivisibilityError(f"R(nu, N) = {value} is not an integer for {alg.label}, nu={nu}, N={N}")
    return int(value)


def all_p_nonnegative(alg: AlgebraData, nu: SparseArray, N: SparseArray) -> bool:
    return all(vacancy_p(alg, nu, N, a, m) >= 0 for a, m in N.support())


def delta_term(alg: AlgebraData, N: SparseArray, a: int, j: int) -> int:
    """Correction term Delta^(a)_j; nonzero only next to a short node in r=1."""
    if alg.r != 1 or alg.da(a) == 1:
        return 0
    partners = [b for b in range(1, alg.n + 1) if alg.da(b) == 1 and alg.A(a, b) != 0]
    if not partners:
        return 0
    if len(partners) != 1:
        raise AssertionError(f"{alg.label}: short neighbour of node {a} is not unique")
    (b,) = partners
    if alg.da(a) == 2:
        return -N.get(b, 2 * j)
    if alg.da(a) == 3:
        # the centre length counts twice; unit weights break the order balance
        return -(N.get(b, 3 * j - 1) + 2 * N.get(b, 3 * j) + N.get(b, 3 * j + 1))
    return 0


def genericity_condition(alg: AlgebraData, nu: SparseArray, N: SparseArray) -> bool:
    """Necessary condition for a generic string solution of pattern N."""
    for a, m in N.support():
        partial = []
        for k in range(1, m // 2 + 1):
            j = m + 1 - 2 * k
            partial.append(
                alg.dp(a) * (vacancy_p(alg, nu, N, a, j) + N.get(a, j)) + delta_term(alg, N, a, j)
            )
        for i in range(2, m + 1):
            if sum(partial[: min(i - 1, m + 1 - i)]) <= 0:
                return False
    return True


def _strings_with_mirror(alg: AlgebraData, N: SparseArray):
    """(b, k, count) over colors 1..ntilde; color n+1 copies color n."""
    out = [(b, k, c) for (b, k), c in N]
    if alg.ntilde > alg.n:
        out += [(alg.n + 1, k, c) for (b, k), c in N if b == alg.n]
    return out


def xi_eta(alg: AlgebraData, nu: SparseArray, N: SparseArray, a: int, m: int, i: int):
    """Order estimates (xi+, xi-, eta+, eta-) for the i-th member of an (a, m) string."""
    if not 1 <= i <= m:
        raise ValueError(f"need 1 <= i <= m, got i={i}, m={m}")
    _check_colors(alg, nu, N)
    s = m + 1 - 2 * i
    c = alg.kappa0 * alg.ep(a) * alg.dp(a)
    xi_p = c * sum(v * min(s + k, 0) for (b, k), v in nu if b == a)
    xi_m = c * sum(v * min(s, k) for (b, k), v in nu if b == a)
    eta_p = eta_m = 0
    for b, k, cnt in _strings_with_mirror(alg, N):
        e = alg.ep_pair(a, b)
        for j in range(1, k + 1):
            t = k + 1 - 2 * j
            eta_p += cnt * e * min(alg.dp(a) * (s + alg.Ap(a, b)), alg.dp(b) * t)
            eta_m += cnt * e * min(alg.dp(a) * s, alg.dp(b) * (t + alg.Ap(b, a)))
    return (xi_p, xi_m, alg.kappa0 * eta_p, alg.kappa0 * eta_m)


def lemma_saa_sides(alg: AlgebraData, nu: SparseArray, N: SparseArray, a: int, m: int, i: int):
    """Both sides of the order-balance identity for the i-th string member."""
    xi_p, xi_m, eta_p, eta_m = xi_eta(alg, nu, N, a, m, i)
    lhs = (xi_p + eta_m) - (xi_m + eta_p)
    c = alg.kappa0 * alg.ep(a) * alg.dp(a)
    if 2 * i < m + 1:
        j = m + 1 - 2 * i
        rhs = -c * (vacancy_p(alg, nu, N, a, j) + N.get(a, j)) - alg.kappa0 * delta_term(alg, N, a, j)
    elif 2 * i == m + 1:
        rhs = 0
    else:
        j = 2 * i - m - 1
        rhs = c * (vacancy_p(alg, nu, N, a, j) + N.get(a, j)) + alg.kappa0 * delta_term(alg, N, a, j)
    return lhs, rhs


def n_factorial_product(N: SparseArray) -> int:
    out = 1
    for _, c in N:
        out *= factorial(c)
    return out
