"""Unit tests for prime-field arithmetic, monomial combinatorics, sparse
polynomials, and the dense rank/kernel engine."""

import random

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from frobw.errors import ValidationError
from frobw.ffkernel import (
    MatrixFp,
    Monomial,
    PolynomialFp,
    PrimeField,
    digit_power,
    iter_degree,
    kernel_fp_dense,
    monomial_rank,
    monomial_unrank,
    monomials_of_degree,
    n_monomials,
    n_monomials_capped,
    rank_fp_dense,
    rank_mod_p,
)


class TestPrimeField:
    def test_basic_arithmetic(self):
        F = PrimeField(7)
        assert F.add(5, 4) == 2
        assert F.sub(2, 5) == 4
        assert F.mul(3, 5) == 1
        assert F.inv(3) == 5
        assert F.normalize(-1) == 6

    def test_rejects_composite(self):
        with pytest.raises(ValidationError):
            PrimeField(6)
        with pytest.raises(ValidationError):
            PrimeField(1)

    def test_inverse_of_zero(self):
        with pytest.raises(ZeroDivisionError):
            PrimeField(5).inv(0)

    @pytest.mark.parametrize("p", [2, 3, 5, 101, 65537])
    def test_inverses(self, p):
        F = PrimeField(p)
        for a in list(range(1, min(p, 50))) + [p - 1]:
            assert F.mul(a, F.inv(a)) == 1


class TestMonomials:
    @pytest.mark.parametrize("v,m", [(1, 5), (2, 4), (3, 6), (4, 5), (5, 3)])
    def test_enumeration_is_graded_colex(self, v, m):
        mons = list(iter_degree(v, m))
        assert len(mons) == n_monomials(v, m)
        assert mons == sorted(mons, key=lambda e: tuple(reversed(e)))
        assert all(sum(e) == m for e in mons)

    @pytest.mark.parametrize("v,m", [(1, 5), (2, 4), (3, 6), (4, 5), (5, 3)])
    def test_rank_unrank_roundtrip(self, v, m):
        for i, e in enumerate(iter_degree(v, m)):
            assert monomial_rank(e) == i
            assert monomial_unrank(v, m, i) == e

    @pytest.mark.parametrize("v,m,cap",
                             [(3, 7, 2), (4, 6, 3), (2, 9, 5), (5, 8, 4),
                              (4, 12, 2), (3, 0, 0)])
    def test_capped_count_matches_bruteforce(self, v, m, cap):
        brute = sum(1 for e in iter_degree(v, m) if max(e, default=0) <= cap)
        assert n_monomials_capped(v, m, cap) == brute

    def test_capped_count_zero_when_impossible(self):
        assert n_monomials_capped(3, 10, 2) == 0  # 3*2 < 10

    def test_monomial_ordering_type(self):
        ms = monomials_of_degree(3, 2)
        assert ms == sorted(ms)
        assert isinstance(ms[0], Monomial)


class TestPolynomialFp:
    def test_normalization_drops_zero_coeffs(self):
        F = PrimeField(5)
        f = PolynomialFp(F, 2, {(1, 0): 5, (0, 1): 3})
        assert f.terms == {(0, 1): 3}

    def test_homogeneous_degree(self):
        F = PrimeField(5)
        assert PolynomialFp(F, 2, {(2, 0): 1, (0, 2): 1}).homogeneous_degree == 2
        assert PolynomialFp(F, 2, {(2, 0): 1, (0, 1): 1}).homogeneous_degree is None

    def test_leading_term_graded_colex(self):
        F = PrimeField(5)
        f = PolynomialFp(F, 3, {(2, 0, 0): 1, (0, 2, 0): 2, (0, 0, 2): 3})
        assert f.leading_term() == ((0, 0, 2), 3)

    def test_mul_commutes_and_distributes(self):
        F = PrimeField(7)
        f = PolynomialFp(F, 2, {(1, 0): 2, (0, 1): 3})
        g = PolynomialFp(F, 2, {(1, 1): 1, (2, 0): 5})
        h = PolynomialFp(F, 2, {(0, 2): 4})
        assert f.mul(g) == g.mul(f)
        assert f.mul(g.add(h)) == f.mul(g).add(f.mul(h))

    def test_pow_binomial(self):
        F = PrimeField(3)
        f = PolynomialFp(F, 2, {(1, 0): 1, (0, 1): 1})
        # (x+y)^3 = x^3 + y^3 over F_3
        assert f.pow(3).terms == {(3, 0): 1, (0, 3): 1}

    def test_frobenius_scales_exponents(self):
        F = PrimeField(5)
        f = PolynomialFp(F, 2, {(1, 2): 3})
        assert f.frobenius(2).terms == {(25, 50): 3}


class TestDigitPower:
    @pytest.mark.parametrize("p,e", [(3, 1), (3, 2), (5, 1), (5, 2), (7, 1)])
    def test_matches_direct_power_diagonal_cubic(self, p, e):
        F = PrimeField(p)
        G = PolynomialFp(F, 3, {(3, 0, 0): 1, (0, 3, 0): 1, (0, 0, 3): 2})
        assert digit_power(G, e) == G.pow(p ** e - 1)

    @settings(max_examples=25, deadline=None)
    @given(st.integers(0, 2 ** 30))
    def test_matches_direct_power_random(self, seed):
        rng = random.Random(seed)
        p = rng.choice([3, 5, 7])
        e = rng.choice([1, 2])
        nvars = rng.randint(1, 3)
        F = PrimeField(p)
        terms = {}
        for _ in range(rng.randint(1, 3)):
            exps = tuple(rng.randint(0, 2) for _ in range(nvars))
            terms[exps] = rng.randint(1, p - 1)
        G = PolynomialFp(F, nvars, terms)
        if G.is_zero():
            return
        assert digit_power(G, e) == G.pow(p ** e - 1)


def _naive_rank(A, p):
    A = A.astype(np.int64) % p
    r = 0
    rows, cols = A.shape
    for c in range(cols):
        piv = next((i for i in range(r, rows) if A[i, c]), None)
        if piv is None:
            continue
        A[[r, piv]] = A[[piv, r]]
        A[r] = (A[r] * pow(int(A[r, c]), p - 2, p)) % p
        for i in range(rows):
            if i != r and A[i, c]:
                A[i] = (A[i] - A[i, c] * A[r]) % p
        r += 1
    return r


class TestRankEngine:
    @pytest.mark.parametrize("seed", range(8))
    def test_rank_and_kernel_vs_naive(self, seed):
        rng = random.Random(seed)
        npr = np.random.RandomState(seed)
        for _ in range(10):
            p = rng.choice([2, 3, 5, 7, 31, 101])
            rows, cols = rng.randint(1, 60), rng.randint(1, 60)
            tgt = rng.randint(0, min(rows, cols))
            A = (npr.randint(0, p, (rows, tgt))
                 @ npr.randint(0, p, (tgt, cols))) % p
            expect = _naive_rank(A.copy(), p)
            assert rank_fp_dense(A.astype(np.float64), p) == expect
            r, K = kernel_fp_dense(A.astype(np.float64), p)
            assert r == expect
            assert K.shape == (cols, cols - expect)
            assert not ((A @ K.astype(np.int64)) % p).any()

    def test_rank_equals_transpose_rank(self):
        npr = np.random.RandomState(42)
        for p in (3, 7, 101):
            A = npr.randint(0, p, (120, 200))
            assert (rank_fp_dense(A.astype(np.float64), p)
                    == rank_fp_dense(A.T.astype(np.float64), p))

    def test_blocked_path_large(self):
        # large enough to cross several recursion levels
        p = 5
        npr = np.random.RandomState(1)
        B = npr.randint(0, p, (300, 180))
        C = npr.randint(0, p, (180, 260))
        A = ((B @ C) % p).astype(np.float64)
        assert rank_fp_dense(A, p) == 180


class TestMatrixFp:
    def test_identity_and_zero(self):
        assert rank_mod_p(MatrixFp.from_dense(np.eye(5), 7)) == 5
        assert rank_mod_p(MatrixFp(3, 4, 5)) == 0

    def test_rank_deficient(self):
        assert rank_mod_p(MatrixFp.from_dense(np.array([[1, 2], [2, 4]]),
                                              5)) == 1

    def test_dense_roundtrip_and_transpose(self):
        npr = np.random.RandomState(3)
        A = npr.randint(0, 7, (6, 9))
        M = MatrixFp.from_dense(A, 7)
        assert (M.to_dense() == A).all()
        assert (M.transpose().to_dense() == A.T).all()
