"""Tests for exact toric alpha-invariants and anticanonical volumes."""

from fractions import Fraction

import pytest

from frobw.acceptance import named_fans, random_fan_corpus
from frobw.errors import ValidationError
from frobw.frozen_values import FROZEN
from frobw.toric import (
    FanData,
    anticanonical_volume,
    polar_and_dilate,
    toric_alpha,
)


@pytest.fixture(scope="module")
def fans():
    return named_fans()


class TestFanValidation:
    def test_non_primitive_ray(self):
        with pytest.raises(ValidationError, match="not primitive"):
            FanData(2, [(2, 0), (0, 1), (-1, -1)],
                    [(0, 1), (1, 2), (0, 2)])

    def test_zero_ray(self):
        with pytest.raises(ValidationError, match="zero"):
            FanData(2, [(0, 0), (0, 1), (-1, -1)],
                    [(0, 1), (1, 2), (0, 2)])

    def test_wrong_cone_cardinality(self):
        with pytest.raises(ValidationError,
                           match="cone 0 has 3 rays, expected 2"):
            FanData(2, [(1, 0), (0, 1), (-1, -1)], [(0, 1, 2)])

    def test_degenerate_cone(self):
        with pytest.raises(ValidationError, match="degenerate cone"):
            FanData(2, [(1, 0), (-1, 0), (0, 1)],
                    [(0, 1), (0, 2), (1, 2)])

    def test_missing_ray_index(self):
        with pytest.raises(ValidationError, match="missing ray"):
            FanData(2, [(1, 0), (0, 1)], [(0, 5)])

    def test_incomplete_fan_fails_spot_check(self):
        with pytest.raises(ValidationError, match="completeness"):
            FanData(2, [(1, 0), (0, 1)], [(0, 1)])


class TestPolarAndDilate:
    def test_projective_plane(self, fans):
        P, r = polar_and_dilate(fans["P2"])
        assert r == 1
        assert set(P.vertices) == {(Fraction(-1), Fraction(-1)),
                                   (Fraction(2), Fraction(-1)),
                                   (Fraction(-1), Fraction(2))}

    def test_quadric_surface(self, fans):
        P, r = polar_and_dilate(fans["P1xP1"])
        assert r == 1
        assert set(P.vertices) == {(Fraction(sx), Fraction(sy))
                                   for sx in (-1, 1) for sy in (-1, 1)}

    def test_projective_line(self, fans):
        P, r = polar_and_dilate(fans["P1"])
        assert r == 1
        assert set(P.vertices) == {(Fraction(-1),), (Fraction(1),)}

    def test_dimension_factor_in_dilation(self, fans):
        _, r = polar_and_dilate(fans["P3"])
        assert r == 2  # integral vertices, times max(1, d-1) = 2

    def test_non_fano_fan_rejected(self):
        # rays of a non-convex "fan": vertex violates another constraint
        fan = FanData(2, [(1, 0), (0, 1), (-1, 3), (0, -1), (-1, -1)],
                      [(0, 1), (1, 2), (2, 3), (3, 4), (4, 0)])
        with pytest.raises(ValidationError, match="not Fano"):
            polar_and_dilate(fan)


class TestToricAlpha:
    @pytest.mark.parametrize("name,alpha", [
        ("P1", Fraction(1, 2)),
        ("P2", Fraction(1, 3)),
        ("P1xP1", Fraction(1, 2)),
        ("P112", Fraction(1, 4)),
        ("P3", Fraction(1, 4)),
        ("P1xP1xP1", Fraction(1, 2)),
        ("P1xP2", Fraction(1, 3)),
    ])
    def test_named_values(self, fans, name, alpha):
        rep = toric_alpha(fans[name])
        assert rep.alpha == alpha
        assert rep.alpha <= Fraction(1, 2)

    def test_matches_frozen(self, fans):
        assert toric_alpha(fans["P1"]).alpha == Fraction(FROZEN["alpha_P1"])
        assert toric_alpha(fans["P2"]).alpha == Fraction(FROZEN["alpha_P2"])
        assert toric_alpha(fans["P1xP1"]).alpha \
            == Fraction(FROZEN["alpha_P1xP1"])

    def test_witness_recorded(self, fans):
        rep = toric_alpha(fans["P2"])
        assert rep.witness_is_vertex
        assert rep.witness_u == (-1, -1)  # lex-smallest minimizer
        assert rep.witness_ray == 2

    def test_point_cap(self, fans):
        with pytest.raises(ValidationError, match="too large"):
            toric_alpha(fans["P3"], point_cap=10)


class TestVolume:
    @pytest.mark.parametrize("name,volume", [
        ("P1", 2), ("P2", 9), ("P1xP1", 8), ("P112", 8),
        ("P3", 64), ("P1xP1xP1", 48), ("P1xP2", 54),
    ])
    def test_named_volumes(self, fans, name, volume):
        assert anticanonical_volume(fans[name]) == volume

    def test_matches_frozen(self, fans):
        for name in ("P1", "P2", "P1xP1"):
            assert anticanonical_volume(fans[name]) \
                == Fraction(FROZEN[f"volume_{name}"])

    def test_bound_P1xP1(self, fans):
        assert toric_alpha(fans["P1xP1"]).bound == Fraction(1, 3)


class TestEquivariance:
    def test_unimodular_twists_preserve_invariants(self):
        import random

        from frobw.acceptance import _random_unimodular

        rng = random.Random(99)
        for fan in named_fans().values():
            alpha = toric_alpha(fan).alpha
            vol = anticanonical_volume(fan)
            for _ in range(2):
                U = _random_unimodular(rng, fan.d)
                rays = [tuple(sum(U[i][k] * ray[k] for k in range(fan.d))
                              for i in range(fan.d)) for ray in fan.rays]
                twisted = FanData(fan.d, rays, fan.cones)
                assert toric_alpha(twisted).alpha == alpha
                assert anticanonical_volume(twisted) == vol

    def test_corpus_respects_invariants(self):
        for fan in random_fan_corpus(count=10, seed=5):
            rep = toric_alpha(fan)  # self-checks dilation stability
            assert rep.alpha <= Fraction(1, 2)
