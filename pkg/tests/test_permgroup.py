"""Permutation-group tests: algebra, classes, fermionic realization."""

from math import comb, factorial

import numpy as np
import pytest

from permwalk.errors import ClassTooLarge
from permwalk.fock import FockBasis
from permwalk.permgroup import (CycleType, PermutationElem,
                                adjacent_transpositions, compose,
                                conjugacy_class, from_cycles, inverse,
                                parse_cycles, partitions, random_permutation,
                                realize_full, realize_permutation,
                                transposition)

from oracles import realize_from_formula


# ------------------------------------------------------------------- elements

def test_transposition_squares_to_identity():
    s1 = transposition(1, 2, 3)
    assert compose(s1, s1).is_identity()


def test_braid_relation():
    s1, s2 = adjacent_transpositions(3)
    assert compose(s1, compose(s2, s1)) == compose(s2, compose(s1, s2))


def test_distant_generators_commute():
    s1, _, s3 = adjacent_transpositions(4)
    assert compose(s1, s3) == compose(s3, s1)


def test_inverse_and_compose_are_group_ops():
    rng = np.random.default_rng(0)
    for _ in range(20):
        a = random_permutation(6, rng)
        b = random_permutation(6, rng)
        assert compose(a, inverse(a)).is_identity()
        assert inverse(compose(a, b)) == compose(inverse(b), inverse(a))


def test_cycle_type_example():
    sigma = from_cycles(5, [1, 2, 3], [4, 5])
    assert sigma.cycle_type() == CycleType((3, 2))


def test_permutation_validation():
    with pytest.raises(ValueError):
        PermutationElem((1, 1, 3))
    with pytest.raises(ValueError):
        transposition(1, 1, 3)
    with pytest.raises(ValueError):
        compose(PermutationElem((1, 2)), PermutationElem((1, 2, 3)))


def test_parse_cycles():
    sigma = parse_cycles("(1 2)(3 4 5)", 5)
    assert sigma == from_cycles(5, [1, 2], [3, 4, 5])
    assert parse_cycles("()", 3).is_identity()
    assert parse_cycles(" (2 3) ", 4) == transposition(2, 3, 4)
    with pytest.raises(ValueError):
        parse_cycles("(1 2", 3)
    with pytest.raises(ValueError):
        parse_cycles("(1 2)(2 3)", 3)


def test_cycles_string_round_trip():
    rng = np.random.default_rng(3)
    for _ in range(20):
        sigma = random_permutation(7, rng)
        assert parse_cycles(sigma.to_cycles_str(), 7) == sigma


# ------------------------------------------------------------------- classes

def test_class_sizes_s4():
    assert CycleType.from_iterable([2, 1, 1]).class_size() == 6
    assert CycleType.from_iterable([3, 1]).class_size() == 8
    assert CycleType.from_iterable([1, 1, 1]).class_size() == 1


def test_class_iteration_counts_match_formula():
    for n in range(1, 7):
        total = 0
        for ct in partitions(n):
            elems = list(conjugacy_class(ct))
            assert len(elems) == ct.class_size()
            assert len({e.images for e in elems}) == len(elems)
            assert all(e.cycle_type() == ct for e in elems)
            total += len(elems)
        assert total == factorial(n)


def test_class_enumeration_order_is_frozen():
    order = [p.to_cycles_str() for p in conjugacy_class(CycleType.pure(2, 4))]
    assert order == ["(3 4)", "(2 3)", "(2 4)", "(1 2)", "(1 3)", "(1 4)"]
    order3 = [p.to_cycles_str() for p in conjugacy_class(CycleType.pure(3, 4))]
    assert order3 == ["(2 3 4)", "(2 4 3)", "(1 2 3)", "(1 3 2)",
                      "(1 2 4)", "(1 4 2)", "(1 3 4)", "(1 4 3)"]


def test_class_cap():
    with pytest.raises(ClassTooLarge):
        next(conjugacy_class(CycleType.pure(2, 5), max_elements=3))


def test_identity_class():
    elems = list(conjugacy_class(CycleType.from_iterable([1, 1, 1])))
    assert len(elems) == 1 and elems[0].is_identity()


# ---------------------------------------------------------------- realization

def test_realize_identity_any_sector():
    for n, k in [(3, 0), (3, 2), (5, 3)]:
        mat = realize_permutation(PermutationElem.identity(n), n, k).to_dense()
        assert np.array_equal(mat, np.eye(comb(n, k)))


def test_realize_swap_two_sites_one_fermion():
    mat = realize_permutation(transposition(1, 2, 2), 2, 1).to_dense()
    assert np.array_equal(mat, [[0.0, 1.0], [1.0, 0.0]])


def test_realize_vacuum_sector_is_trivial():
    rng = np.random.default_rng(1)
    for _ in range(5):
        sigma = random_permutation(5, rng)
        assert np.array_equal(realize_permutation(sigma, 5, 0).to_dense(), [[1.0]])


def test_realize_three_cycle_against_formula_oracle():
    sigma = from_cycles(3, [1, 2, 3])
    mine = realize_permutation(sigma, 3, 2).to_dense()
    oracle = realize_from_formula(sigma.images, 3, 2)
    assert np.array_equal(mine, oracle)


@pytest.mark.parametrize("n,k", [(4, 1), (4, 2), (4, 3), (5, 2), (5, 3)])
def test_realize_matches_formula_oracle_random(n, k):
    rng = np.random.default_rng(n * 10 + k)
    for _ in range(4):
        sigma = random_permutation(n, rng)
        mine = realize_permutation(sigma, n, k).to_dense()
        oracle = realize_from_formula(sigma.images, n, k)
        assert np.array_equal(mine, oracle)


def test_realize_entries_and_orthogonality():
    rng = np.random.default_rng(2)
    for n in range(2, 7):
        for _ in range(3):
            sigma = random_permutation(n, rng)
            for k in range(0, n + 1):
                mat = realize_permutation(sigma, n, k).to_dense()
                assert set(np.unique(mat)) <= {-1.0, 0.0, 1.0}
                assert np.array_equal(mat @ mat.T, np.eye(comb(n, k)))
                assert (np.count_nonzero(mat, axis=0) == 1).all()


def test_realize_homomorphism_random_pairs():
    rng = np.random.default_rng(4)
    for n in range(2, 7):
        for _ in range(50 // (n - 1)):
            a = random_permutation(n, rng)
            b = random_permutation(n, rng)
            ab = compose(a, b)
            for k in range(0, n + 1):
                ma = realize_permutation(a, n, k).to_dense()
                mb = realize_permutation(b, n, k).to_dense()
                assert np.array_equal(ma @ mb,
                                      realize_permutation(ab, n, k).to_dense())


def test_realized_generator_relations_every_sector():
    for n in range(3, 7):
        gens = adjacent_transpositions(n)
        for k in range(0, n + 1):
            mats = [realize_permutation(g, n, k).to_dense() for g in gens]
            eye = np.eye(comb(n, k))
            for i, m in enumerate(mats):
                assert np.array_equal(m @ m, eye)
                for j in range(i + 2, len(mats)):
                    assert np.array_equal(m @ mats[j], mats[j] @ m)
            for i in range(len(mats) - 1):
                assert np.array_equal(mats[i] @ mats[i + 1] @ mats[i],
                                      mats[i + 1] @ mats[i] @ mats[i + 1])


def test_three_cycle_adjoint_is_reversed_cycle():
    for n in (3, 5):
        fwd = realize_permutation(from_cycles(n, [1, 2, 3]), n, 1).to_dense()
        rev = realize_permutation(from_cycles(n, [1, 3, 2]), n, 1).to_dense()
        assert np.array_equal(fwd.T, rev)


def test_realize_full_block_diagonal_and_matches_sectors():
    n = 4
    fb = FockBasis(n)
    sigma = from_cycles(n, [1, 3], [2, 4])
    full = realize_full(sigma, n).to_dense()
    for ki in range(n + 1):
        for kj in range(n + 1):
            block = full[fb.sector_slices[ki], fb.sector_slices[kj]]
            if ki == kj:
                expected = realize_permutation(sigma, n, ki).to_dense()
                assert np.array_equal(block, expected)
            else:
                assert not block.any()


def test_realize_full_examples_lifted():
    # the three sector examples assembled on the full space
    full = realize_full(transposition(1, 2, 2), 2).to_dense()
    fb = FockBasis(2)
    k1 = full[fb.sector_slices[1], fb.sector_slices[1]]
    assert np.array_equal(k1, [[0.0, 1.0], [1.0, 0.0]])
    assert full[0, 0] == 1.0  # vacuum invariant
    assert full[-1, -1] == -1.0  # |1,2> picks up the exchange sign


def test_realize_size_mismatch():
    with pytest.raises(ValueError):
        realize_permutation(PermutationElem.identity(3), 4, 1)
