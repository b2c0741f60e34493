"""Tests for the graded splitting-subspace engine."""

from fractions import Fraction

import pytest

import frobw.splitting as splitting
from frobw.errors import InstanceTooLarge, ValidationError
from frobw.ffkernel import PolynomialFp, PrimeField
from frobw.frozen_values import FROZEN
from frobw.splitting import (
    GradedHypersurface,
    b_dimension,
    diagonal_hypersurface,
    fano_report,
    fedder_is_fsplit,
    free_rank,
    m_threshold,
    membership_check,
    profile,
)


@pytest.fixture(scope="module")
def quadric_p3():
    return diagonal_hypersurface(3, 4, 2)


@pytest.fixture(scope="module")
def cubic_p5():
    return diagonal_hypersurface(5, 4, 3)


def elliptic_cone(p):
    F = PrimeField(p)
    G = PolynomialFp(F, 3, {(3, 0, 0): 1, (0, 3, 0): 1, (0, 0, 3): 1})
    return GradedHypersurface(F, ("x", "y", "z"), G)


class TestGradedHypersurface:
    def test_dimensions(self, quadric_p3):
        # quadric surface: dim R_m = (m+1)^2
        for m in range(6):
            assert quadric_p3.dim_R(m) == (m + 1) ** 2
        assert quadric_p3.dim_R(-1) == 0

    def test_restricted_basis_counts(self, cubic_p5):
        for m in range(8):
            basis = cubic_p5.restricted_basis(m)
            assert basis.shape == (cubic_p5.dim_R(m), 4)

    def test_rejects_inhomogeneous(self):
        F = PrimeField(5)
        with pytest.raises(ValidationError):
            GradedHypersurface(F, ("x", "y"),
                               PolynomialFp(F, 2, {(2, 0): 1, (0, 1): 1}))

    def test_rejects_zero(self):
        F = PrimeField(5)
        with pytest.raises(ValidationError):
            GradedHypersurface(F, ("x", "y"), PolynomialFp(F, 2, {}))

    def test_rejects_name_mismatch(self):
        F = PrimeField(5)
        with pytest.raises(ValidationError):
            GradedHypersurface(F, ("x",),
                               PolynomialFp(F, 2, {(1, 1): 1}))


class TestBDimension:
    def test_quadric_profile_frozen(self, quadric_p3):
        assert [b_dimension(quadric_p3, 1, m) for m in range(5)] \
            == FROZEN["quadric_p3_e1_b"]

    def test_cubic_profile_frozen(self, cubic_p5):
        assert [b_dimension(cubic_p5, 1, m) for m in range(5)] \
            == FROZEN["cubic_p5_e1_b"]

    def test_cubic_e2_profile_frozen(self, cubic_p5):
        assert [b_dimension(cubic_p5, 2, m) for m in range(25)] \
            == FROZEN["cubic_p5_e2_b"]

    def test_degree_zero_is_fedder(self, quadric_p3, cubic_p5):
        assert b_dimension(quadric_p3, 1, 0) == 1
        assert b_dimension(cubic_p5, 1, 0) == 1
        assert b_dimension(elliptic_cone(5), 1, 0) == 0

    def test_sketch_path_matches_dense(self, cubic_p5, monkeypatch):
        dense = [b_dimension(cubic_p5, 1, m) for m in range(5)]
        monkeypatch.setattr(splitting, "DENSE_CELLS", 0)
        cubic_p5._b_cache.clear()
        sketchy = [b_dimension(cubic_p5, 1, m) for m in range(5)]
        cubic_p5._b_cache.clear()
        assert sketchy == dense

    def test_work_cap_raises(self, cubic_p5):
        big = diagonal_hypersurface(5, 5, 2)
        with pytest.raises(InstanceTooLarge):
            b_dimension(big, 2, 36)

    def test_bad_arguments(self, cubic_p5):
        with pytest.raises(ValidationError):
            b_dimension(cubic_p5, 0, 1)
        with pytest.raises(ValidationError):
            b_dimension(cubic_p5, 1, -1)


class TestThresholds:
    @pytest.mark.parametrize("p,e", [(3, 1), (3, 2), (5, 1)])
    def test_quadric_threshold(self, p, e):
        ring = diagonal_hypersurface(p, 4, 2)
        assert m_threshold(ring, e) == p ** e - 1

    def test_cubic_thresholds_frozen(self, cubic_p5):
        assert m_threshold(cubic_p5, 1) == FROZEN["cubic_p5_e1_m"]
        assert m_threshold(cubic_p5, 2) == FROZEN["cubic_p5_e2_m"]
        assert m_threshold(diagonal_hypersurface(7, 4, 3), 1) \
            == FROZEN["cubic_p7_e1_m"]

    def test_not_fsplit_raises(self):
        with pytest.raises(ValidationError, match="not F-split"):
            m_threshold(elliptic_cone(5), 1)


class TestProfile:
    def test_quadric_p3_e1(self, quadric_p3):
        pr = profile(quadric_p3, 1)
        assert pr.b == FROZEN["quadric_p3_e1_b"]
        assert pr.m_e == FROZEN["quadric_p3_e1_m"]
        assert pr.a_e == FROZEN["quadric_p3_e1_a"]
        assert pr.alpha_e == Fraction(2, 3)
        assert pr.alpha_upper == Fraction(3, 2)
        assert pr.s_raw == Fraction(19, 27)
        assert pr.duality_ok
        assert pr.monotone_ok is None

    def test_chained_monotonicity_flag(self, cubic_p5):
        pr1 = profile(cubic_p5, 1)
        pr2 = profile(cubic_p5, 2, prev=pr1)
        assert pr2.monotone_ok is True
        with pytest.raises(ValidationError):
            profile(cubic_p5, 1, prev=pr1)  # wrong level chain

    def test_free_rank_matches_profile_sum(self, cubic_p5):
        assert free_rank(cubic_p5, 1) == FROZEN["cubic_p5_e1_a"]
        assert free_rank(cubic_p5, 2) == FROZEN["cubic_p5_e2_a"]

    def test_threads_agree(self, quadric_p3):
        serial = profile(quadric_p3, 2, threads=1)
        quadric_p3._b_cache.clear()
        parallel = profile(quadric_p3, 2, threads=4)
        assert serial.b == parallel.b

    def test_non_fano_rejected(self):
        quartic = diagonal_hypersurface(5, 4, 4)
        with pytest.raises(ValidationError, match="non-Fano"):
            profile(quartic, 1)
        with pytest.raises(ValidationError, match="non-Fano"):
            free_rank(quartic, 1)


class TestFedderAndMembership:
    def test_elliptic_cone_booleans(self):
        assert fedder_is_fsplit(elliptic_cone(5), 1) \
            == FROZEN["elliptic_cone_p5_split"]
        assert fedder_is_fsplit(elliptic_cone(7), 1) \
            == FROZEN["elliptic_cone_p7_split"]

    def test_diagonal_always_split(self, quadric_p3, cubic_p5):
        assert fedder_is_fsplit(quadric_p3, 1)
        assert fedder_is_fsplit(cubic_p5, 1)
        assert fedder_is_fsplit(cubic_p5, 2)

    def test_membership_consistency_with_dimension(self, cubic_p5):
        # x0 in degree 1: I_1(1) = 0, so not a member
        F = cubic_p5.field
        x0 = PolynomialFp(F, 4, {(1, 0, 0, 0): 1})
        assert membership_check(cubic_p5, 1, x0) == False  # noqa: E712
        # x0^2 in degree 2 is the classical member
        x0sq = PolynomialFp(F, 4, {(2, 0, 0, 0): 1})
        res = membership_check(cubic_p5, 1, x0sq)
        assert res == True  # noqa: E712
        assert not res.in_principal_ideal

    def test_membership_flags_principal_ideal(self, cubic_p5):
        res = membership_check(cubic_p5, 1, cubic_p5.G)
        assert res.in_principal_ideal

    def test_membership_rejects_inhomogeneous(self, cubic_p5):
        F = cubic_p5.field
        bad = PolynomialFp(F, 4, {(1, 0, 0, 0): 1, (2, 0, 0, 0): 1})
        with pytest.raises(ValidationError):
            membership_check(cubic_p5, 1, bad)


class TestFanoReport:
    def test_quadric_bound_and_volume(self, quadric_p3):
        fr = fano_report(quadric_p3, 1)
        assert fr.volume == 8
        assert fr.bound == Fraction(1, 3)
        assert fr.coindex == 2

    def test_cubic_conclusive_below_half(self, cubic_p5):
        fr = fano_report(cubic_p5, 2)
        assert fr.alpha_normalized_upper[1] == Fraction(
            FROZEN["cubic_p5_e2_m"] + 1, 24)
        assert fr.conclusive_below_half
        assert fr.slack_above_half == 0
        # coindex 1: the halved-sum estimator is emitted
        assert fr.s_half_normalized is not None

    def test_non_fano_rejected(self):
        with pytest.raises(ValidationError, match="non-Fano"):
            fano_report(diagonal_hypersurface(5, 4, 4), 1)
