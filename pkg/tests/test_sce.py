from fractions import Fraction as Fr

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from stringcount.acceptance import sce_grid
from stringcount.algebra import load_algebra
from stringcount.sce import (
    TorusSolution,
    classify_generic,
    classify_offdiagonal,
    count_exact_pattern,
    count_offdiagonal,
    count_via_moebius,
    enumerate_solutions,
    moebius_from_bottom,
    satisfies,
    sce_report,
    set_partitions,
)
from stringcount.strings import EmptyPatternError, SparseArray, n_factorial_product, r_number, sce_matrix

S = SparseArray.parse
BELL = [1, 1, 2, 5, 15, 52, 203]


def test_single_string_solutions():
    A1 = load_algebra("A1^1")
    sols = enumerate_solutions(A1, S("1,1:2"), S("1,1:1"))
    assert sorted(s.angles for s in sols) == [(Fr(0),), (Fr(1, 2),)]


def test_pair_solutions_by_hand():
    A1 = load_algebra("A1^1")
    nu, N = S("1,1:4"), S("1,1:2")
    sols = enumerate_solutions(A1, nu, N)
    assert len(sols) == 8
    got = {s.angles for s in sols}
    equal = {(Fr(2 * k + 1, 8),) * 2 for k in range(4)}  # z^4 = -1
    mixed = {(Fr(k, 4), (Fr(k, 4) + Fr(1, 2)) % 1) for k in range(4)}  # z1^4 = 1, z2 = -z1
    assert got == equal | mixed
    assert all(satisfies(A1, nu, N, s) for s in sols)
    assert {s.angles for s in sols if classify_offdiagonal(s)} == mixed
    witness = TorusSolution(sols[0].index, (Fr(1, 8), Fr(1, 8)))
    assert satisfies(A1, nu, N, witness) and not classify_offdiagonal(witness)


def test_empty_pattern_rejected():
    with pytest.raises(EmptyPatternError):
        enumerate_solutions(load_algebra("A1^1"), S("1,1:2"), SparseArray())


def test_generic_classification():
    A1 = load_algebra("A1^1")
    nu, N = S("1,1:4"), S("1,1:2")
    assert all(classify_generic(A1, s, nu, N) for s in enumerate_solutions(A1, nu, N))
    # nu_1 > 0 and m = 2: 1 lies in <2> = {1, -1}, so z = 1 is not generic
    nu, N = S("1,1:4"), S("1,2:1")
    sols = enumerate_solutions(A1, nu, N)
    assert len(sols) == 4
    assert sum(classify_generic(A1, s, nu, N) for s in sols) == 3


def test_counts_examples():
    A1 = load_algebra("A1^1")
    assert count_offdiagonal(A1, S("1,1:2"), S("1,1:1")) == 2 == r_number(A1, S("1,1:2"), S("1,1:1"))
    assert count_offdiagonal(A1, S("1,1:4"), S("1,1:2")) == 4
    assert count_via_moebius(A1, S("1,1:4"), S("1,1:2")) == 8 - 4
    assert count_via_moebius(A1, S("1,1:3"), S("1,2:1")) == abs(sce_matrix(A1, S("1,1:3"), S("1,2:1")).det())


@pytest.mark.parametrize("n", range(7))
def test_set_partitions_are_bell(n):
    parts = set_partitions(list(range(n)))
    assert len(parts) == BELL[n]
    assert len({frozenset(map(frozenset, p)) for p in parts}) == BELL[n]


def test_moebius_values():
    # mu(0, 1) in the lattice of partitions of a 4-set is (-1)^3 3! = -6
    assert moebius_from_bottom(((1, 2, 3, 4),)) == -6
    assert moebius_from_bottom(((1, 2), (3, 4))) == 1
    # sum over all sigma of mu(0, sigma) is zero for n >= 2
    assert sum(moebius_from_bottom(p) for p in set_partitions([1, 2, 3, 4])) == 0


def test_exact_patterns_partition_the_fibre():
    A1 = load_algebra("A1^1")
    nu, N = S("1,1:6"), S("1,1:3")
    sols = enumerate_solutions(A1, nu, N)
    idx = sols[0].index
    for pattern in set_partitions(list(idx)):
        pattern = tuple(tuple(b) for b in pattern)
        brute = 0
        for s in sols:
            blocks = {}
            for i, th in zip(idx, s.angles):
                blocks.setdefault(th, []).append(i)
            if sorted(map(sorted, blocks.values())) == sorted(map(sorted, pattern)):
                brute += 1
        assert count_exact_pattern(A1, nu, N, pattern) == brute


@pytest.mark.parametrize("label", ["A1^1", "A2^1", "C2^1", "A2^2", "G2^1"])
def test_grid_agreement(label):
    alg = load_algebra(label)
    checked = 0
    for nu, N in sce_grid(alg, 3, 2, max_length=4):
        sols = enumerate_solutions(alg, nu, N)
        assert len(sols) == abs(sce_matrix(alg, nu, N).det())
        assert all(satisfies(alg, nu, N, s) for s in sols)
        off = sum(map(classify_offdiagonal, sols))
        assert off == count_via_moebius(alg, nu, N) == r_number(alg, nu, N) * n_factorial_product(N)
        checked += 1
    assert checked > 0


def test_report():
    A1 = load_algebra("A1^1")
    rep = sce_report(A1, S("1,1:4"), S("1,1:2")).to_dict()
    assert (rep["det"], rep["total"], rep["off_diagonal"], rep["diagonal"]) == (8, 8, 4, 4)
    assert (rep["R"], rep["N_factorial_product"], rep["generic"], rep["match"]) == (2, 2, 8, True)
    assert sce_report(A1, S("1,1:4"), S("1,1:2"), method="moebius").off_diagonal_moebius == 4


def test_negative_vacancy_is_only_noted():
    A1 = load_algebra("A1^1")
    rep = sce_report(A1, S("1,2:1"), S("1,1:1"))
    assert not rep.all_P_nonnegative and rep.notes
