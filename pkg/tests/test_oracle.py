"""Oracle equivalence and cap tests (small domain; the exhaustive runs live
in `frobw verify --deep`)."""

from fractions import Fraction

import pytest

from frobw.acceptance import named_fans
from frobw.errors import ValidationError
from frobw.oracle import (
    OracleConfig,
    naive_b_dimension,
    naive_toric_alpha,
)
from frobw.splitting import b_dimension, diagonal_hypersurface
from frobw.toric import FanData, toric_alpha


class TestNaiveBDimension:
    def test_quadric_example(self):
        assert naive_b_dimension(diagonal_hypersurface(3, 4, 2), 1, 1) == 4

    def test_cubic_fsplit_degree_zero(self):
        assert naive_b_dimension(diagonal_hypersurface(5, 4, 3), 1, 0) == 1

    def test_cubic_degree_two_has_kernel(self):
        ring = diagonal_hypersurface(5, 4, 3)
        assert naive_b_dimension(ring, 1, 2) <= 9  # x0^2 lies in I_1(2)

    @pytest.mark.parametrize("p,v,delta,e", [(3, 4, 2, 1), (5, 4, 3, 1)])
    def test_agrees_with_engine_level_one(self, p, v, delta, e):
        ring = diagonal_hypersurface(p, v, delta)
        M = (p ** e - 1) * ring.fano_coindex
        for m in range(M + 1):
            assert naive_b_dimension(ring, e, m) == b_dimension(ring, e, m)

    def test_agrees_with_engine_quadric_e2_prefix(self):
        ring = diagonal_hypersurface(3, 4, 2)
        for m in range(7):
            assert naive_b_dimension(ring, 2, m) == b_dimension(ring, 2, m)

    def test_caps(self):
        with pytest.raises(ValidationError, match="oracle cap"):
            naive_b_dimension(diagonal_hypersurface(11, 4, 2), 1, 0)
        with pytest.raises(ValidationError, match="oracle cap"):
            naive_b_dimension(diagonal_hypersurface(5, 4, 3), 2, 0)
        with pytest.raises(ValidationError, match="oracle cap"):
            # degree blowup beyond the target-monomial cap
            naive_b_dimension(diagonal_hypersurface(3, 4, 2), 2, 100)

    def test_config_is_tightenable(self):
        tight = OracleConfig(max_p=3)
        with pytest.raises(ValidationError, match="oracle cap"):
            naive_b_dimension(diagonal_hypersurface(5, 4, 3), 1, 0, tight)


class TestNaiveToricAlpha:
    def test_named_values(self):
        fans = named_fans()
        assert naive_toric_alpha(fans["P2"]) == Fraction(1, 3)
        assert naive_toric_alpha(fans["P1xP1"]) == Fraction(1, 2)
        assert naive_toric_alpha(fans["P1"]) == Fraction(1, 2)

    def test_agrees_with_engine(self):
        for name, fan in named_fans().items():
            assert naive_toric_alpha(fan) == toric_alpha(fan).alpha, name

    def test_dimension_cap(self):
        fan4 = FanData(
            4,
            [(1, 0, 0, 0), (0, 1, 0, 0), (0, 0, 1, 0), (0, 0, 0, 1),
             (-1, -1, -1, -1)],
            [(0, 1, 2, 3), (0, 1, 2, 4), (0, 1, 3, 4), (0, 2, 3, 4),
             (1, 2, 3, 4)])
        with pytest.raises(ValidationError, match="oracle cap"):
            naive_toric_alpha(fan4)
