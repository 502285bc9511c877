import itertools
import math

import pytest

from lexmatch import (
    BoundaryVector,
    Instance,
    InvalidInputError,
    Matching,
    boundary_from_matching,
    college_value,
    compositions,
    demote,
    enumerate_stable,
    is_stable,
    matching_from_boundary,
    student_value,
)

from conftest import random_instances


class TestBoundaryConversion:
    def test_balanced_boundary(self, ref_instance):
        mu = matching_from_boundary(ref_instance, BoundaryVector((2, 2)))
        assert mu.assignment == (0, 0, 1, 1)

    def test_all_at_first(self, ref_instance):
        mu = matching_from_boundary(ref_instance, BoundaryVector((4, 0)))
        assert mu.assignment == (0, 0, 0, 0)

    def test_square_identity(self):
        inst = Instance.from_matrix([[9, 6, 3], [8, 5, 2], [7, 4, 1]])
        mu = matching_from_boundary(inst, BoundaryVector((1, 1, 1)))
        assert mu.assignment == (0, 1, 2)

    def test_sum_mismatch_rejected(self, ref_instance):
        with pytest.raises(InvalidInputError):
            matching_from_boundary(ref_instance, BoundaryVector((2, 1)))

    def test_recover_boundary(self, ref_instance):
        assert boundary_from_matching(ref_instance, Matching([0, 1, 1, 1])).k == (1, 3)
        assert boundary_from_matching(ref_instance, Matching([0, 0, 0, 0])).k == (4, 0)

    def test_non_contiguous_returns_none(self, ref_instance):
        assert boundary_from_matching(ref_instance, Matching([0, 1, 0, 1])) is None


class TestEnumeration:
    def test_reference_order_and_count(self, ref_instance):
        ks = [
            boundary_from_matching(ref_instance, mu).k
            for mu in enumerate_stable(ref_instance)
        ]
        assert ks == [(4, 0), (3, 1), (2, 2), (1, 3), (0, 4)]

    def test_complete_only(self, ref_instance):
        assert sum(1 for _ in enumerate_stable(ref_instance, require_complete=True)) == 3

    def test_single_college(self):
        inst = Instance.build([[3], [2], [1]], [[3, 2, 1]], capacities=[3])
        assert [mu.assignment for mu in enumerate_stable(inst)] == [(0, 0, 0)]

    def test_respect_capacities(self, ref_instance):
        capped = Instance(
            ref_instance.student_values, ref_instance.college_values, (1, 3)
        )
        ks = [
            boundary_from_matching(capped, mu).k
            for mu in enumerate_stable(capped, respect_capacities=True)
        ]
        assert ks == [(1, 3)]

    def test_composition_count_and_stability(self):
        for inst in random_instances("ranked", seed=3, count=8, n_max=6, m_max=3):
            mus = list(enumerate_stable(inst))
            assert len(mus) == math.comb(inst.n + inst.m - 1, inst.m - 1)
            assert all(is_stable(inst, mu) is None for mu in mus)

    def test_exactly_contiguous_matchings_are_stable(self):
        # complete-on-students matchings of a ranked instance are stable
        # iff they are contiguous block assignments
        for inst in random_instances("ranked", seed=4, count=6, n_max=5, m_max=3):
            for assignment in itertools.product(range(inst.m), repeat=inst.n):
                mu = Matching(assignment)
                stable = is_stable(inst, mu) is None
                contiguous = boundary_from_matching(inst, mu) is not None
                assert stable == contiguous


class TestDemote:
    def test_single_move(self, ref_instance):
        mu = Matching([0, 0, 0, 1])
        out = demote(mu, 2, 1, 0)
        assert out.assignment == (0, 0, 1, 1)

    def test_chain_of_two(self):
        inst = Instance.from_matrix(
            [[12, 8, 4], [11, 7, 3], [10, 6, 2], [9, 5, 1]]
        )
        mu = Matching([0, 0, 1, 2])  # sizes (2, 1, 1)
        out = demote(mu, 2, 2, 0)
        assert out.assignment == (0, 1, 2, 2)  # sizes (1, 1, 2)
        del inst

    def test_equivalent_to_boundary_arithmetic(self, ref_instance):
        mu = matching_from_boundary(ref_instance, BoundaryVector((3, 1)))
        out = demote(mu, 2, 1, 0)
        assert out == matching_from_boundary(ref_instance, BoundaryVector((2, 2)))

    def test_rejects_empty_giver(self):
        with pytest.raises(InvalidInputError):
            demote(Matching([1, 1]), 0, 1, 0)

    def test_rejects_misaligned_chain(self):
        with pytest.raises(InvalidInputError):
            demote(Matching([0, 1, 0, 1]), 3, 1, 0)

    def test_monotone_effect_on_values(self):
        for inst in random_instances("ranked", seed=8, count=10, n_max=7, m_max=3):
            n, m = inst.n, inst.m
            if m < 2 or n <= m:
                continue
            mu = matching_from_boundary(
                inst, BoundaryVector((n - m + 1,) + (1,) * (m - 1))
            )
            out = demote(mu, n - 2, m - 1, 0)
            for i in range(n):
                assert student_value(inst, out, i) <= student_value(inst, mu, i)
            for j in range(1, m):
                assert college_value(inst, out, j) >= college_value(inst, mu, j)
