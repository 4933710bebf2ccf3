"""Cartan data for the affine families X^(r)_N.

Node numbering follows the Dynkin table used throughout the package: the
nodes of g are those of X^(1)_N with node 0 dropped, and the orbit set of the
diagram automorphism is embedded as ``{1..n}`` with ``iota(a) = a``.

Cartan matrices use the convention ``A[a][b] = <alpha_a^vee, alpha_b>``, so
that ``d_a * A[a][b]`` is symmetric and long roots carry the larger ``d``.
All public accessors take 1-based node indices.
"""

from __future__ import annotations

import json
import re
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from math import gcd


class LabelError(ValueError):
    """Raised for malformed or inadmissible algebra labels."""


class TableInvariantError(AssertionError):
    """A hard-coded table violates one of its structural identities."""


_LABEL_RE = re.compile(r"^\s*([A-Ga-g])(\d+)\^\(?(\d)\)?\s*$")


@dataclass(frozen=True)
class AlgebraLabel:
    family: str
    N: int
    r: int

    def __str__(self) -> str:
        return f"{self.family}{self.N}^{self.r}"


def _admissibility_error(family: str, N: int, r: int) -> str | None:
    if r == 1:
        rules = {
            "A": (N >= 1, "A_N^(1) needs N >= 1"),
            "B": (N >= 3, "B_N^(1) needs N >= 3"),
            "C": (N >= 2, "C_N^(1) needs N >= 2"),
            "D": (N >= 4, "D_N^(1) needs N >= 4"),
            "E": (N in (6, 7, 8), "E_N^(1) needs N in {6, 7, 8}"),
            "F": (N == 4, "F_N^(1) exists only for N = 4"),
            "G": (N == 2, "G_N^(1) exists only for N = 2"),
        }
        ok, why = rules[family]
        return None if ok else why
    if r == 2:
        if family == "A":
            return None if N >= 2 else "A_N^(2) needs N >= 2"
        if family == "D":
            return None if N >= 3 else "D_N^(2) needs N >= 3"
        if family == "E":
            return None if N == 6 else "E_N^(2) exists only for N = 6"
        return f"no twisted family {family}^(2)"
    if r == 3:
        if family == "D" and N == 4:
            return None
        return "the only order-3 twist is D_4^(3)"
    return f"twist order must be 1, 2 or 3, got {r}"


def parse_label(text: str) -> AlgebraLabel:
    """Parse ``"<letter><N>^<r>"`` such as ``"A2^2"`` or ``"D4^3"``."""
    match = _LABEL_RE.match(text)
    if match is None:
        raise LabelError(f"malformed algebra label {text!r}; expected e.g. 'A2^2'")
    family = match.group(1).upper()
    N, r = int(match.group(2)), int(match.group(3))
    problem = _admissibility_error(family, N, r)
    if problem is not None:
        raise LabelError(f"inadmissible label {text!r}: {problem}")
    return AlgebraLabel(family, N, r)


# --- Dynkin graphs ---------------------------------------------------------
# Each entry: (number of nodes, edges, symmetrizer d). Edges are 1-based.

def _chain(n: int) -> list[tuple[int, int]]:
    return [(i, i + 1) for i in range(1, n)]


def _finite_diagram(family: str, n: int, d: tuple[int, ...] | None = None):
    if family == "A":
        edges, dd = _chain(n), (1,) * n
    elif family == "B":
        edges, dd = _chain(n), (2,) * (n - 1) + (1,)
    elif family == "C":
        edges, dd = _chain(n), (1,) * (n - 1) + (2,)
    elif family == "D":
        edges, dd = _chain(n - 1) + [(n - 2, n)], (1,) * n
    elif family == "E":
        if n == 6:
            edges = [(1, 2), (2, 3), (3, 5), (5, 6), (3, 4)]
        elif n == 7:
            edges = _chain(6) + [(3, 7)]
        else:
            edges = _chain(7) + [(5, 8)]
        dd = (1,) * n
    elif family == "F":
        edges, dd = _chain(4), (2, 2, 1, 1)
    elif family == "G":
        edges, dd = [(1, 2)], (3, 1)
    else:  # pragma: no cover - guarded by parse_label
        raise LabelError(family)
    if n == 1:
        dd = (1,)
    return edges, (d if d is not None else dd)


def _cartan_from_graph(n: int, edges, d) -> tuple[tuple[int, ...], ...]:
    A = [[2 if i == j else 0 for j in range(n)] for i in range(n)]
    for a, b in edges:
        a, b = a - 1, b - 1
        if d[a] == d[b]:
            A[a][b] = A[b][a] = -1
        elif d[a] > d[b]:
            A[a][b], A[b][a] = -1, -(d[a] // d[b])
        else:
            A[b][a], A[a][b] = -1, -(d[b] // d[a])
    return tuple(tuple(row) for row in A)


@dataclass(frozen=True)
class AlgebraData:
    """All constants of one X^(r)_N consumed by the rest of the package.

    ``cartan_g`` is the full N x N Cartan matrix of g and ``sigma`` the
    diagram automorphism as a 0-based permutation. ``cartan_g_prime`` is the
    n x ntilde restriction, with the extra mirror column for A^(2)_{2n}.
    """

    label: AlgebraLabel
    n: int
    ntilde: int
    cartan_g0: tuple[tuple[int, ...], ...]
    cartan_g: tuple[tuple[int, ...], ...]
    sigma: tuple[int, ...]
    d: tuple[int, ...]
    dprime: tuple[int, ...]
    eps: tuple[int, ...]
    epsprime: tuple[int, ...]
    kappa0: int

    @property
    def r(self) -> int:
        return self.label.r

    @property
    def cartan_g_prime(self) -> tuple[tuple[int, ...], ...]:
        return tuple(row[: self.ntilde] for row in self.cartan_g[: self.n])

    @property
    def is_a2n_twisted(self) -> bool:
        return self.kappa0 == 2

    @property
    def simply_laced(self) -> bool:
        return len(set(self.d)) == 1

    # 1-based accessors; b may run to ntilde where it makes sense.
    def A(self, a: int, b: int) -> int:
        return self.cartan_g0[a - 1][b - 1]

    def Ap(self, a: int, b: int) -> int:
        return self.cartan_g[a - 1][b - 1]

    def da(self, a: int) -> int:
        return self.d[a - 1]

    def dp(self, a: int) -> int:
        return self.dprime[a - 1]

    def ea(self, a: int) -> int:
        return self.eps[a - 1]

    def ep(self, a: int) -> int:
        return self.epsprime[a - 1]

    def ep_pair(self, a: int, b: int) -> int:
        """epsilon'_{ab} = max(epsilon'_a, epsilon'_b)."""
        return max(self.ep(a), self.ep(b))

    def mirror(self, b: int) -> int:
        """Color that supplies the data of column ``b`` (n+1 -> n for A^(2)_{2n})."""
        return self.n if b == self.n + 1 else b

    def to_dict(self) -> dict:
        return {
            "label": str(self.label),
            "n": self.n,
            "ntilde": self.ntilde,
            "cartan_g0": [list(r) for r in self.cartan_g0],
            "cartan_g_prime": [list(r) for r in self.cartan_g_prime],
            "d": list(self.d),
            "dprime": list(self.dprime),
            "eps": list(self.eps),
            "epsprime": list(self.epsprime),
            "kappa0": self.kappa0,
        }

    def dump(self) -> str:
        return json.dumps(self.to_dict())


def _sigma_for(label: AlgebraLabel) -> tuple[int, ...]:
    N, r = label.N, label.r
    if r == 1:
        return tuple(range(N))
    if label.family == "A":
        return tuple(N - 1 - i for i in range(N))
    if label.family == "D" and r == 2:
        perm = list(range(N))
        perm[N - 2], perm[N - 1] = N - 1, N - 2
        return tuple(perm)
    if label.family == "E":
        # 1<->6, 2<->5, 3 and 4 fixed
        return (5, 4, 2, 3, 1, 0)
    # D_4^(3): 1 -> 3 -> 4 -> 1, node 2 fixed
    return (2, 1, 3, 0)


def _g0_of(label: AlgebraLabel) -> tuple[str, int, tuple[int, ...] | None]:
    """(family, rank, symmetrizer override) of the invariant subalgebra."""
    fam, N, r = label.family, label.N, label.r
    if r == 1:
        return fam, N, None
    if fam == "A" and N % 2 == 0:
        return "B", N // 2, None
    if fam == "A":
        return "C", (N + 1) // 2, None
    if fam == "D" and r == 2:
        return "B", N - 1, None
    if fam == "E":
        return "F", 4, (1, 1, 2, 2)
    return "G", 2, (1, 3)


def _check_invariants(data: AlgebraData) -> None:
    n, A, d = data.n, data.cartan_g0, data.d
    for a in range(n):
        for b in range(n):
            if d[a] * A[a][b] != d[b] * A[b][a]:
                raise TableInvariantError(f"{data.label}: d*A not symmetric at {a+1},{b+1}")
    g = 0
    for x in d:
        g = gcd(g, x)
    if g != 1 or min(d) < 1:
        raise TableInvariantError(f"{data.label}: d must be coprime positive integers")

    r, sigma, Ag = data.r, data.sigma, data.cartan_g
    for a in range(1, n + 1):
        if data.kappa0 * data.ep(a) * data.dp(a) != data.ea(a) * data.da(a):
            raise TableInvariantError(f"{data.label}: kappa0 eps' d' != eps d at a={a}")
    for a in range(n):
        for b in range(n):
            total, s_b = 0, b
            for _ in range(r):
                s_b = sigma[s_b]
                total += Ag[a][s_b]
            if total != Fraction(data.epsprime[a], data.eps[a]) * A[a][b]:
                raise TableInvariantError(
                    f"{data.label}: orbit sum of A' differs from (eps'/eps) A at {a+1},{b+1}"
                )

    if r == 1:
        if data.dprime[: n] != d or set(data.epsprime) != {1} or set(data.eps) != {1}:
            raise TableInvariantError(f"{data.label}: r=1 requires d'=d, eps=eps'=1")
    elif set(data.dprime) != {1}:
        raise TableInvariantError(f"{data.label}: r>1 requires d'=1")
    for a in range(n):
        if (data.eps[a] == 2) != (Ag[a][sigma[a]] < 0 and sigma[a] != a):
            raise TableInvariantError(f"{data.label}: eps_{a+1} inconsistent with A'")


@lru_cache(maxsize=None)
def load_algebra(label: AlgebraLabel | str) -> AlgebraData:
    """Build and validate the constants for ``label``."""
    if isinstance(label, str):
        label = parse_label(label)
    problem = _admissibility_error(label.family, label.N, label.r)
    if problem is not None:
        raise LabelError(f"inadmissible label {label}: {problem}")

    g_edges, g_d = _finite_diagram(label.family, label.N)
    if label.r > 1:
        g_d = (1,) * label.N
    cartan_g = _cartan_from_graph(label.N, g_edges, g_d)
    sigma = _sigma_for(label)

    fam0, n, d_override = _g0_of(label)
    g0_edges, d = _finite_diagram(fam0, n, d_override)
    cartan_g0 = _cartan_from_graph(n, g0_edges, d)

    a2n = label.family == "A" and label.r == 2 and label.N % 2 == 0
    ntilde = n + 1 if a2n else n
    kappa0 = 2 if a2n else 1
    if label.r == 1:
        dprime = d
    else:
        dprime = (1,) * ntilde
    epsprime = tuple(label.r if sigma[i] == i else 1 for i in range(ntilde))
    eps = tuple(
        2 if (sigma[i] != i and cartan_g[i][sigma[i]] < 0) else 1 for i in range(n)
    )

    data = AlgebraData(
        label=label,
        n=n,
        ntilde=ntilde,
        cartan_g0=cartan_g0,
        cartan_g=cartan_g,
        sigma=sigma,
        d=d,
        dprime=dprime,
        eps=eps,
        epsprime=epsprime,
        kappa0=kappa0,
    )
    _check_invariants(data)
    return data


def _kdelta(x: int, y: int) -> int:
    return 1 if x == y else 0


def g_kernel(alg: AlgebraData, a: int, m: int, b: int, k: int) -> int:
    """Exponent of Q^(b)_k in the Q-system relation for Q^(a)_m."""
    if alg.r > 1:
        num = -alg.A(b, a) * _kdelta(m, k)
        q, rem = divmod(num, alg.ea(b))
        if rem:
            raise TableInvariantError(f"{alg.label}: A_ba/eps_b not integral at {a},{b}")
        return q
    ratio = Fraction(alg.da(b), alg.da(a))
    if ratio == 2:
        return -alg.A(b, a) * (
            _kdelta(m, 2 * k - 1) + 2 * _kdelta(m, 2 * k) + _kdelta(m, 2 * k + 1)
        )
    if ratio == 3:
        return -alg.A(b, a) * (
            _kdelta(m, 3 * k - 2)
            + 2 * _kdelta(m, 3 * k - 1)
            + 3 * _kdelta(m, 3 * k)
            + 2 * _kdelta(m, 3 * k + 1)
            + _kdelta(m, 3 * k + 2)
        )
    return -alg.A(a, b) * _kdelta(alg.da(a) * m, alg.da(b) * k)


# Representatives used by the test-suites: every family with small rank.
ALL_FAMILY_LABELS = (
    "A1^1", "A3^1", "B3^1", "C2^1", "D4^1", "E6^1", "E7^1", "E8^1",
    "F4^1", "G2^1", "A2^2", "A4^2", "A5^2", "D3^2", "D4^2", "E6^2", "D4^3",
)

TWELVE_FAMILIES = (
    "A2^1", "B3^1", "C2^1", "D4^1", "E6^1", "F4^1", "G2^1",
    "A4^2", "A5^2", "D3^2", "E6^2", "D4^3",
)
