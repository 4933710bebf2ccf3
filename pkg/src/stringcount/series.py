"""Multivariate power series in y_1..y_n with integer coefficients,
truncated at a total degree ``cap``."""

from __future__ import annotations

import json
from typing import Mapping

Exponent = tuple[int, ...]


class SeriesError(ValueError):
    pass


class TruncSeries:
    __slots__ = ("n", "cap", "_c")

    def __init__(self, n: int, cap: int, coeffs: Mapping[Exponent, int] | None = None):
        if n < 0 or cap < 0:
            raise SeriesError("n and cap must be nonnegative")
        self.n, self.cap = n, cap
        c: dict[Exponent, int] = {}
        for e, v in (coeffs or {}).items():
            e = tuple(int(x) for x in e)
            if len(e) != n or min(e, default=0) < 0:
                raise SeriesError(f"bad exponent {e} for {n} variables")
            if v and sum(e) <= cap:
                c[e] = c.get(e, 0) + int(v)
        self._c = {e: v for e, v in c.items() if v}

    # -- constructors -------------------------------------------------------
    @classmethod
    def one(cls, n: int, cap: int) -> "TruncSeries":
        return cls(n, cap, {(0,) * n: 1})

    @classmethod
    def monomial(cls, exponent: Exponent, cap: int, coeff: int = 1) -> "TruncSeries":
        return cls(len(exponent), cap, {tuple(exponent): coeff})

    @classmethod
    def variable(cls, n: int, cap: int, a: int, power: int = 1) -> "TruncSeries":
        """y_a ** power with 1-based a."""
        e = [0] * n
        e[a - 1] = power
        return cls.monomial(tuple(e), cap)

    # -- access -------------------------------------------------------------
    def coefficient(self, exponent: Exponent) -> int:
        exponent = tuple(exponent)
        if len(exponent) != self.n:
            raise SeriesError(f"exponent {exponent} has wrong length")
        if sum(exponent) > self.cap:
            raise SeriesError(f"degree {sum(exponent)} exceeds truncation {self.cap}")
        return self._c.get(exponent, 0)

    def items(self):
        return sorted(self._c.items(), key=lambda kv: (sum(kv[0]), kv[0]))

    def constant_term(self) -> int:
        return self._c.get((0,) * self.n, 0)

    def is_zero(self) -> bool:
        return not self._c

    def nonzero_count(self) -> int:
        return len(self._c)

    def max_degree(self) -> int:
        return max((sum(e) for e in self._c), default=-1)

    def truncate(self, cap: int) -> "TruncSeries":
        return TruncSeries(self.n, min(cap, self.cap), self._c)

    # -- arithmetic ---------------------------------------------------------
    def _compat(self, other: "TruncSeries") -> int:
        if self.n != other.n:
            raise SeriesError("series in different numbers of variables")
        return min(self.cap, other.cap)

    def _coerce(self, other) -> "TruncSeries":
        if isinstance(other, int):
            return TruncSeries(self.n, self.cap, {(0,) * self.n: other})
        return other

    def __add__(self, other) -> "TruncSeries":
        other = self._coerce(other)
        cap = self._compat(other)
        out = dict(self._c)
        for e, v in other._c.items():
            out[e] = out.get(e, 0) + v
        return TruncSeries(self.n, cap, out)

    __radd__ = __add__

    def __neg__(self) -> "TruncSeries":
        return TruncSeries(self.n, self.cap, {e: -v for e, v in self._c.items()})

    def __sub__(self, other) -> "TruncSeries":
        return self + (-self._coerce(other))

    def __rsub__(self, other) -> "TruncSeries":
        return (-self) + other

    def __mul__(self, other) -> "TruncSeries":
        other = self._coerce(other)
        cap = self._compat(other)
        out: dict[Exponent, int] = {}
        right = [(e, sum(e), v) for e, v in other._c.items()]
        for e1, v1 in self._c.items():
            d1 = sum(e1)
            for e2, d2, v2 in right:
                if d1 + d2 > cap:
                    continue
                e = tuple(x + y for x, y in zip(e1, e2))
                out[e] = out.get(e, 0) + v1 * v2
        return TruncSeries(self.n, cap, out)

    __rmul__ = __mul__

    def inverse(self) -> "TruncSeries":
        """Two-sided inverse up to the truncation degree; needs constant term 1."""
        if self.constant_term() != 1:
            raise SeriesError(f"inverse needs constant term 1, got {self.constant_term()}")
        tail = self - 1
        result = TruncSeries.one(self.n, self.cap)
        # 1/(1+t) = sum (-t)^j, and t has no constant term so j <= cap suffices
        term = result
        for _ in range(self.cap):
            term = -(term * tail)
            if term.is_zero():
                break
            result = result + term
        return result

    def __pow__(self, e: int) -> "TruncSeries":
        return int_pow(self, e)

    def __eq__(self, other) -> bool:
        if isinstance(other, int):
            other = self._coerce(other)
        if not isinstance(other, TruncSeries) or other.n != self.n:
            return NotImplemented
        cap = min(self.cap, other.cap)
        a = {e: v for e, v in self._c.items() if sum(e) <= cap}
        b = {e: v for e, v in other._c.items() if sum(e) <= cap}
        return a == b

    __hash__ = None  # type: ignore[assignment]

    # -- output -------------------------------------------------------------
    def __str__(self) -> str:
        if not self._c:
            return "0"
        parts = []
        for e, v in self.items():
            mono = "*".join(
                f"y{i + 1}" if p == 1 else f"y{i + 1}^{p}" for i, p in enumerate(e) if p
            )
            if not mono:
                body = str(abs(v))
            elif abs(v) == 1:
                body = mono
            else:
                body = f"{abs(v)}*{mono}"
            if not parts:
                parts.append(body if v > 0 else f"-{body}")
            else:
                parts.append(("+ " if v > 0 else "- ") + body)
        return " ".join(parts)

    def __repr__(self) -> str:
        return f"TruncSeries(n={self.n}, cap={self.cap}, {self})"

    def to_json(self) -> list[list[int]]:
        return [list(e) + [v] for e, v in self.items()]

    def dumps(self) -> str:
        return json.dumps(self.to_json())


def int_pow(s: TruncSeries, e: int) -> TruncSeries:
    if e < 0:
        return int_pow(s.inverse(), -e)
    result = TruncSeries.one(s.n, s.cap)
    base = s
    while e:
        if e & 1:
            result = result * base
        e >>= 1
        if e:
            base = base * base
    return result
