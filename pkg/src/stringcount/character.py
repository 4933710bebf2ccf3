"""Weight multiplicities of g_0-modules (Freudenthal) and normalized characters.

Weights are integer vectors in the fundamental-weight basis. With the Cartan
convention of :mod:`stringcount.algebra`, the simple root alpha_a has
coordinates ``A[b][a]`` (column a) and ``(Lambda_a, alpha_b) = d_b delta_ab``,
so every inner product needed here is an integer and no inverse Cartan matrix
is required.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from typing import Iterable

from .algebra import AlgebraData
from .linalg import solve_rational
from .qsystem import r_series
from .series import TruncSeries
from .strings import SparseArray

Weight = tuple[int, ...]
WeightMultMap = dict[Weight, int]


class UnsupportedFamilyError(ValueError):
    pass


@lru_cache(maxsize=None)
def positive_roots(alg: AlgebraData) -> tuple[tuple[int, ...], ...]:
    """Positive roots of g_0 in simple-root coordinates, by height."""
    n, A = alg.n, alg.cartan_g0
    simple = [tuple(int(i == a) for i in range(n)) for a in range(n)]
    roots = set(simple)
    layer = list(simple)
    while layer:
        nxt = []
        for beta in layer:
            for a in range(n):
                if beta == simple[a]:
                    continue
                # alpha_a-string through beta: p - q = <beta, alpha_a^vee>
                p, down = 0, list(beta)
                while True:
                    down[a] -= 1
                    if tuple(down) in roots:
                        p += 1
                    else:
                        break
                pairing = sum(beta[b] * A[a][b] for b in range(n))
                if p - pairing > 0:
                    up = list(beta)
                    up[a] += 1
                    up = tuple(up)
                    if up not in roots:
                        roots.add(up)
                        nxt.append(up)
        layer = nxt
    return tuple(sorted(roots, key=lambda r: (sum(r), r)))


def root_to_weight(alg: AlgebraData, beta: Iterable[int]) -> Weight:
    beta = tuple(beta)
    n = alg.n
    return tuple(sum(alg.cartan_g0[b][a] * beta[a] for a in range(n)) for b in range(n))


def _pair_weight_root(alg: AlgebraData, lam: Weight, beta) -> int:
    """(lambda, beta) for lambda in fundamental and beta in root coordinates."""
    return sum(beta[b] * alg.d[b] * lam[b] for b in range(alg.n))


def _pair_roots(alg: AlgebraData, x, y) -> int:
    n, A, d = alg.n, alg.cartan_g0, alg.d
    return sum(x[a] * d[a] * A[a][b] * y[b] for a in range(n) for b in range(n))


def weyl_dimension(alg: AlgebraData, highest: Weight) -> int:
    num, den = 1, 1
    rho = (1,) * alg.n
    shifted = tuple(h + 1 for h in highest)
    for beta in positive_roots(alg):
        num *= _pair_weight_root(alg, shifted, beta)
        den *= _pair_weight_root(alg, rho, beta)
    q, rem = divmod(num, den)
    assert rem == 0
    return q


def freudenthal(alg: AlgebraData, highest: Weight, depth_cap: int | None = None) -> WeightMultMap:
    """Multiplicities of V(highest) down to ``depth_cap`` simple roots below the top.

    ``depth_cap=None`` computes the whole module.
    """
    highest = tuple(int(x) for x in highest)
    if len(highest) != alg.n:
        raise ValueError(f"weight must have {alg.n} coordinates")
    if min(highest, default=0) < 0:
        raise ValueError(f"highest weight {highest} is not dominant")
    n = alg.n
    pos = positive_roots(alg)
    lam_rho = tuple(h + 1 for h in highest)
    # multiplicities keyed by depth vector beta (weight = highest - beta)
    mult: dict[tuple[int, ...], int] = {(0,) * n: 1}
    level = [(0,) * n]
    depth = 0
    while depth_cap is None or depth < depth_cap:
        depth += 1
        candidates = set()
        for beta in level:
            for a in range(n):
                c = list(beta)
                c[a] += 1
                candidates.add(tuple(c))
        level = []
        for beta in sorted(candidates):
            # (lam+rho)^2 - (mu+rho)^2 with mu = lam - beta
            denom = 2 * _pair_weight_root(alg, lam_rho, beta) - _pair_roots(alg, beta, beta)
            if denom == 0:
                continue
            mu = tuple(h - w for h, w in zip(highest, root_to_weight(alg, beta)))
            total = 0
            for alpha in pos:
                k = 1
                while True:
                    above = tuple(b - k * x for b, x in zip(beta, alpha))
                    if min(above) < 0:
                        break
                    m_above = mult.get(above, 0)
                    if m_above:
                        # (mu + k alpha, alpha)
                        total += m_above * (
                            _pair_weight_root(alg, mu, alpha) + k * _pair_roots(alg, alpha, alpha)
                        )
                    k += 1
            value = Fraction(2 * total, denom)
            if value.denominator != 1:
                raise AssertionError(f"non-integral multiplicity {value} at depth {beta}")
            if value:
                mult[beta] = int(value)
                level.append(beta)
        if not level:
            break
    return {
        tuple(h - w for h, w in zip(highest, root_to_weight(alg, beta))): m
        for beta, m in mult.items()
    }


def tensor_weights(maps: list[WeightMultMap], n: int | None = None) -> WeightMultMap:
    """Convolve weight-multiplicity maps (weights add, multiplicities multiply)."""
    if not maps:
        return {(0,) * (n or 0): 1}
    out = dict(maps[0])
    for other in maps[1:]:
        nxt: WeightMultMap = {}
        for w1, m1 in out.items():
            for w2, m2 in other.items():
                w = tuple(x + y for x, y in zip(w1, w2))
                nxt[w] = nxt.get(w, 0) + m1 * m2
        out = nxt
    return out


def top_weight(alg: AlgebraData, nu: SparseArray) -> Weight:
    top = [0] * alg.n
    for (a, m), c in nu:
        top[a - 1] += m * c
    return tuple(top)


def weight_depth(alg: AlgebraData, top: Weight, mu: Weight) -> tuple[int, ...]:
    """Solve top - mu = sum_a lam_a alpha_a for the integers lam_a."""
    diff = [t - x for t, x in zip(top, mu)]
    sol = solve_rational(alg.cartan_g0, diff)
    if any(s.denominator != 1 for s in sol):
        raise AssertionError(f"{mu} is not in the root lattice below {top}")
    return tuple(int(s) for s in sol)


def _require_type_a(alg: AlgebraData) -> None:
    if not (alg.label.family == "A" and alg.r == 1):
        raise UnsupportedFamilyError(
            f"normalized characters are only available for A_n^(1), not {alg.label}"
        )


def normalized_series(alg: AlgebraData, nu: SparseArray, D: int) -> TruncSeries:
    """Character of the tensor product of V(m Lambda_a)^{nu_am}, as a series in y = e^{-alpha}."""
    _require_type_a(alg)
    factors = []
    for (a, m), c in nu:
        hw = [0] * alg.n
        hw[a - 1] = m
        factors.extend([freudenthal(alg, tuple(hw), depth_cap=D)] * c)
    weights = tensor_weights(factors, alg.n)
    top = top_weight(alg, nu)
    coeffs = {}
    for mu, mult in weights.items():
        e = weight_depth(alg, top, mu)
        if min(e) < 0:
            raise AssertionError(f"weight {mu} above the top weight {top}")
        if sum(e) <= D:
            coeffs[e] = coeffs.get(e, 0) + mult
    return TruncSeries(alg.n, D, coeffs)


@dataclass
class CompletenessReport:
    family: str
    nu: str
    degree: int
    mismatches: list[dict] = field(default_factory=list)

    @property
    def match(self) -> bool:
        return not self.mismatches

    def to_dict(self) -> dict:
        return {
            "family": self.family,
            "nu": self.nu,
            "degree": self.degree,
            "match": self.match,
            "mismatches": self.mismatches,
        }


def compare_completeness(alg: AlgebraData, nu: SparseArray, D: int) -> CompletenessReport:
    """Coefficient-wise comparison of the character series with R^nu."""
    chi = normalized_series(alg, nu, D)
    R = r_series(alg, nu, D)
    report = CompletenessReport(str(alg.label), str(nu), D)
    keys = sorted({e for e, _ in chi.items()} | {e for e, _ in R.items()}, key=lambda e: (sum(e), e))
    for e in keys:
        x, y = chi.coefficient(e), R.coefficient(e)
        if x != y:
            report.mismatches.append({"exponent": list(e), "character": x, "R": y})
    return report
