"""Exact integer linear algebra: labelled matrices, Bareiss, Smith form."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Hashable, Sequence


class SingularMatrixError(ValueError):
    pass


@dataclass(frozen=True)
class IntMatrix:
    """Square or rectangular integer matrix with hashable row/column labels."""

    row_labels: tuple[Hashable, ...]
    col_labels: tuple[Hashable, ...]
    rows: tuple[tuple[int, ...], ...]

    @classmethod
    def square(cls, labels, rows) -> "IntMatrix":
        labels = tuple(labels)
        return cls(labels, labels, tuple(tuple(int(x) for x in row) for row in rows))

    @property
    def shape(self) -> tuple[int, int]:
        return len(self.row_labels), len(self.col_labels)

    def tolist(self) -> list[list[int]]:
        return [list(row) for row in self.rows]

    def det(self) -> int:
        return bareiss_det(self.rows)

    def __getitem__(self, idx):
        i, j = idx
        return self.rows[i][j]


def bareiss_det(rows: Sequence[Sequence[int]]) -> int:
    """Fraction-free Gaussian elimination; exact for arbitrary-size ints."""
    M = [list(r) for r in rows]
    n = len(M)
    if n == 0:
        return 1
    if any(len(r) != n for r in M):
        raise ValueError("determinant of a non-square matrix")
    sign, prev = 1, 1
    for k in range(n - 1):
        if M[k][k] == 0:
            for i in range(k + 1, n):
                if M[i][k] != 0:
                    M[k], M[i] = M[i], M[k]
                    sign = -sign
                    break
            else:
                return 0
        pivot = M[k][k]
        for i in range(k + 1, n):
            Mi, Mk = M[i], M[k]
            mik = Mi[k]
            for j in range(k + 1, n):
                # exact by Sylvester's identity
                Mi[j] = (Mi[j] * pivot - mik * Mk[j]) // prev
            Mi[k] = 0
        prev = pivot
    return sign * M[n - 1][n - 1]


def matmul(A, B) -> list[list[int]]:
    return [[sum(a * b for a, b in zip(row, col)) for col in zip(*B)] for row in A]


def identity(n: int) -> list[list[int]]:
    return [[int(i == j) for j in range(n)] for i in range(n)]


def smith_normal_form(M: Sequence[Sequence[int]]):
    """Return ``(U, S, V)`` with ``U @ M @ V == S`` and U, V unimodular.

    Only nonsingular square input is supported. S is diagonal with positive
    entries, each dividing the next.
    """
    A = [list(r) for r in M]
    n = len(A)
    if any(len(r) != n for r in A):
        raise ValueError("smith_normal_form expects a square matrix")
    if bareiss_det(A) == 0:
        raise SingularMatrixError("matrix is singular")
    U, V = identity(n), identity(n)

    def swap_rows(i, j):
        A[i], A[j] = A[j], A[i]
        U[i], U[j] = U[j], U[i]

    def swap_cols(i, j):
        for R in (A, V):
            for row in R:
                row[i], row[j] = row[j], row[i]

    def add_row(dst, src, c):  # row_dst += c * row_src
        for R in (A, U):
            R[dst] = [x + c * y for x, y in zip(R[dst], R[src])]

    def add_col(dst, src, c):  # col_dst += c * col_src
        for R in (A, V):
            for row in R:
                row[dst] += c * row[src]

    for t in range(n):
        while True:
            # smallest nonzero entry of the trailing block becomes the pivot
            best = None
            for i in range(t, n):
                for j in range(t, n):
                    if A[i][j] and (best is None or abs(A[i][j]) < abs(A[best[0]][best[1]])):
                        best = (i, j)
            i, j = best
            swap_rows(t, i)
            swap_cols(t, j)
            p = A[t][t]
            dirty = False
            for i in range(t + 1, n):
                if A[i][t]:
                    add_row(i, t, -(A[i][t] // p))
                    dirty = dirty or A[i][t] != 0
            for j in range(t + 1, n):
                if A[t][j]:
                    add_col(j, t, -(A[t][j] // p))
                    dirty = dirty or A[t][j] != 0
            if dirty:
                continue
            bad = next(
                (i for i in range(t + 1, n) for j in range(t + 1, n) if A[i][j] % p),
                None,
            )
            if bad is None:
                break
            add_row(t, bad, 1)
        if A[t][t] < 0:
            for R in (A, U):
                R[t] = [-x for x in R[t]]
    return U, A, V


def solve_rational(A: Sequence[Sequence[int]], b: Sequence[int]) -> list[Fraction]:
    """Solve the nonsingular system ``A x = b`` over the rationals."""
    n = len(A)
    M = [[Fraction(x) for x in row] + [Fraction(bi)] for row, bi in zip(A, b)]
    for k in range(n):
        piv = next((i for i in range(k, n) if M[i][k] != 0), None)
        if piv is None:
            raise SingularMatrixError("singular system")
        M[k], M[piv] = M[piv], M[k]
        for i in range(n):
            if i != k and M[i][k] != 0:
                f = M[i][k] / M[k][k]
                M[i] = [x - f * y for x, y in zip(M[i], M[k])]
    return [M[i][n] / M[i][i] for i in range(n)]
