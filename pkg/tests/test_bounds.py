from fractions import Fraction

import pytest

from oracles import bm_pascal, brute_basis_counts, dm_pascal, pascal
from sdsets.bounds import binom, check_identities, compute_bounds, dm_bound, subspace_dimensions
from sdsets.sphere_poly import EXACT, UP_TO, enumerate_basis


class TestBinom:
    def test_small(self):
        assert binom(4, 2) == 6

    def test_negative_lower_index_vanishes(self):
        for n in range(-5, 10):
            assert binom(n - 2, -1) == 0
        assert binom(-3, -2) == 0

    def test_lower_above_upper(self):
        assert binom(3, 5) == 0

    def test_card_hands(self):
        # frozen from the Pascal-triangle oracle
        assert binom(52, 5) == 2598960 == pascal(52, 5)

    def test_negative_upper_index_rejected(self):
        with pytest.raises(ValueError):
            binom(-1, 2)

    def test_pascal_recurrence(self):
        for a in range(1, 61):
            for b in range(1, a + 1):
                assert binom(a, b) == binom(a - 1, b - 1) + binom(a - 1, b)


class TestSubspaceDimensions:
    # expected counts come from brute_basis_counts
    @pytest.mark.parametrize("n,d,expected", [(3, 2, (9, 5)), (2, 3, (7, 2)), (4, 0, (1, 1))])
    def test_examples(self, n, d, expected):
        assert subspace_dimensions(n, d) == expected

    def test_agrees_with_enumeration(self):
        for n in range(2, 13):
            for d in range(0, 9):
                le, eq = subspace_dimensions(n, d)
                assert le == len(enumerate_basis(n, d, UP_TO))
                assert eq == len(enumerate_basis(n, d, EXACT))

    def test_agrees_with_brute_force(self):
        for n in range(2, 6):
            for d in range(0, 6):
                assert subspace_dimensions(n, d) == brute_basis_counts(n, d)

    @pytest.mark.parametrize("n,d", [(1, 2), (3, -1)])
    def test_domain(self, n, d):
        with pytest.raises(ValueError):
            subspace_dimensions(n, d)


class TestComputeBounds:
    def test_n3_s4(self):
        r = compute_bounds(3, 4)
        assert r.dm == 18
        assert r.barg_musin == Fraction(18)
        assert isinstance(r.barg_musin, Fraction)

    def test_s1(self):
        r = compute_bounds(3, 1)
        assert r.dm == 3
        assert r.dgs == 4

    def test_s2_is_gerzon(self):
        for n in range(2, 51):
            r = compute_bounds(n, 2)
            assert r.dm == r.gerzon == pascal(n + 1, 2)

    def test_fields(self):
        r = compute_bounds(5, 3)
        assert r.gerzon == 15
        assert r.dgs == pascal(7, 3) + pascal(6, 2)
        assert r.hegedus == pascal(7, 3)
        assert r.dm == dm_pascal(5, 3)
        assert set(r.applicability_notes) >= {"gerzon", "dgs", "hegedus", "barg_musin", "dm"}

    def test_against_oracle(self):
        for n in range(2, 51):
            for s in range(1, 21):
                r = compute_bounds(n, s)
                assert r.dm == dm_pascal(n, s)
                assert r.barg_musin == bm_pascal(n, s)
                assert r.dm >= r.hegedus
                assert min(r.gerzon, r.dgs, r.hegedus, r.dm) >= 1

    def test_frozen_values(self):
        assert dm_bound(3, 3) == 11
        assert dm_bound(2, 3) == 5
        assert dm_bound(4, 3) == 21
        assert dm_bound(10, 6) == 5225

    def test_barg_musin_odd_s_is_rational_equal_to_dm(self):
        r = compute_bounds(3, 3)
        assert r.barg_musin == 11

    @pytest.mark.parametrize("n,s", [(1, 2), (3, 0)])
    def test_domain(self, n, s):
        with pytest.raises(ValueError):
            compute_bounds(n, s)


class TestIdentities:
    @pytest.mark.parametrize("n,s", [(3, 3), (2, 2), (50, 20), (7, 1)])
    def test_examples(self, n, s):
        assert check_identities(n, s)

    def test_intermediate_n3_s3(self):
        assert binom(3, 1) + Fraction(7, 3) * binom(3, 2) == 10 == binom(5, 3)

    def test_small_grid(self):
        assert all(check_identities(n, s) for n in range(2, 15) for s in range(1, 10))
