"""Prime-field arithmetic, graded-colex monomial combinatorics, sparse
polynomial arithmetic with Frobenius-power shortcuts, and rank computation
over F_p.

Monomials are exponent tuples.  The total order everywhere is graded
colexicographic: compare total degree first, then the exponent vectors by
their last differing coordinate.  Within one degree, rank/unrank cost O(v)
per monomial via hockey-stick binomial sums, so matrix columns can be
array-indexed.
"""

from __future__ import annotations

from dataclasses import dataclass
from math import comb
from typing import Iterable, Iterator

import numpy as np

from .errors import InstanceTooLarge, ValidationError

#: largest monomial count we are willing to index
MAX_INDEX = 2 ** 62

#: default cap on term counts of computed powers
DEFAULT_POWER_TERM_CAP = 10 ** 7


# ---------------------------------------------------------------------------
# prime field

class PrimeField:
    """The field F_p with elements represented canonically in [0, p)."""

    def __init__(self, p: int):
        if not isinstance(p, int) or p < 2:
            raise ValidationError(f"modulus must be an integer >= 2, got {p!r}")
        if p >= 2 ** 31:
            raise ValidationError(f"modulus cap is 2^31, got {p}")
        d = 2
        while d * d <= p:
            if p % d == 0:
                raise ValidationError(f"modulus {p} is not prime (divisor {d})")
            d += 1
        self.p = p

    def normalize(self, a: int) -> int:
        return a % self.p

    def add(self, a: int, b: int) -> int:
        return (a + b) % self.p

    def sub(self, a: int, b: int) -> int:
        return (a - b) % self.p

    def mul(self, a: int, b: int) -> int:
        return (a * b) % self.p

    def inv(self, a: int) -> int:
        a %= self.p
        if a == 0:
            raise ZeroDivisionError("inverse of 0 in F_p")
        return pow(a, self.p - 2, self.p)

    def __eq__(self, other) -> bool:
        return isinstance(other, PrimeField) and other.p == self.p

    def __hash__(self) -> int:
        return hash(("PrimeField", self.p))

    def __repr__(self) -> str:
        return f"PrimeField({self.p})"


# ---------------------------------------------------------------------------
# monomials and the graded colex order

@dataclass(frozen=True)
class Monomial:
    """An exponent vector with its total degree cached."""

    exponents: tuple[int, ...]
    degree: int

    @staticmethod
    def of(exponents: Iterable[int]) -> "Monomial":
        exps = tuple(int(a) for a in exponents)
        if any(a < 0 for a in exps):
            raise ValidationError(f"negative exponent in monomial {exps}")
        return Monomial(exps, sum(exps))

    def colex_key(self) -> tuple:
        return (self.degree, tuple(reversed(self.exponents)))

    def __lt__(self, other: "Monomial") -> bool:
        return self.colex_key() < other.colex_key()


def n_monomials(v: int, m: int) -> int:
    """Number of monomials of degree m in v variables: C(m+v-1, v-1)."""
    if m < 0:
        return 0
    return comb(m + v - 1, v - 1)


def n_monomials_capped(v: int, m: int, cap: int) -> int:
    """Number of degree-m monomials in v variables with every exponent <= cap,
    by inclusion-exclusion over coordinates forced past the cap."""
    if m < 0:
        return 0
    total = 0
    for k in range(v + 1):
        t = m - k * (cap + 1)
        if t < 0:
            break
        total += (-1) ** k * comb(v, k) * n_monomials(v, t)
    return total


def iter_degree(v: int, m: int) -> Iterator[tuple[int, ...]]:
    """Yield all exponent tuples of degree m in v variables in colex order."""
    if v == 1:
        yield (m,)
        return
    for last in range(m + 1):
        for rest in iter_degree(v - 1, m - last):
            yield rest + (last,)


def monomial_rank(exps: tuple[int, ...]) -> int:
    """Index of an exponent tuple within its degree block, in colex order."""
    v = len(exps)
    m = sum(exps)
    rank = 0
    for j in range(v - 1, 0, -1):
        a = exps[j]
        # monomials whose coordinate j is strictly smaller come first
        rank += n_monomials(j + 1, m) - n_monomials(j + 1, m - a)
        m -= a
    return rank


def monomial_unrank(v: int, m: int, index: int) -> tuple[int, ...]:
    """Inverse of monomial_rank on the degree-m block."""
    if not 0 <= index < n_monomials(v, m):
        raise ValidationError(
            f"monomial index {index} out of range for v={v}, m={m}")
    exps = [0] * v
    for j in range(v - 1, 0, -1):
        # greedy: find the largest a with the preceding block not past index
        a = 0
        base = 0
        while True:
            nxt = n_monomials(j + 1, m) - n_monomials(j + 1, m - (a + 1))
            if nxt <= index:
                a += 1
            else:
                break
        base = n_monomials(j + 1, m) - n_monomials(j + 1, m - a)
        exps[j] = a
        index -= base
        m -= a
    exps[0] = m
    return tuple(exps)


def monomials_of_degree(v: int, m: int) -> list[Monomial]:
    """All degree-m monomials in v variables, in graded-colex order."""
    if v < 1 or m < 0:
        raise ValidationError(f"need v >= 1 and m >= 0, got v={v}, m={m}")
    if n_monomials(v, m) > MAX_INDEX:
        raise InstanceTooLarge(
            f"instance too large: {v} variables at degree {m} index past "
            f"the platform width")
    return [Monomial(e, m) for e in iter_degree(v, m)]


# ---------------------------------------------------------------------------
# sparse polynomials

class PolynomialFp:
    """Sparse multivariate polynomial over F_p.

    Terms live in a dict mapping exponent tuples to nonzero coefficients in
    [1, p); outputs of arithmetic are normalized (no zero coefficients).
    """

    def __init__(self, field: PrimeField, nvars: int,
                 terms: dict[tuple[int, ...], int]):
        self.field = field
        self.nvars = nvars
        clean: dict[tuple[int, ...], int] = {}
        for exps, c in terms.items():
            c %= field.p
            if c == 0:
                continue
            if len(exps) != nvars:
                raise ValidationError(
                    f"term {exps} has {len(exps)} exponents, expected {nvars}")
            clean[tuple(int(a) for a in exps)] = c
        self.terms = clean

    # -- inspection --------------------------------------------------------

    def is_zero(self) -> bool:
        return not self.terms

    def __len__(self) -> int:
        return len(self.terms)

    def __eq__(self, other) -> bool:
        return (isinstance(other, PolynomialFp)
                and other.field == self.field
                and other.nvars == self.nvars
                and other.terms == self.terms)

    def __hash__(self):
        return hash((self.field.p, self.nvars,
                     tuple(sorted(self.terms.items()))))

    @property
    def homogeneous_degree(self) -> int | None:
        """The common degree of all terms, or None if inhomogeneous/zero."""
        degs = {sum(e) for e in self.terms}
        if len(degs) == 1:
            return degs.pop()
        return None

    def leading_term(self) -> tuple[tuple[int, ...], int]:
        """The graded-colex largest term (exponents, coefficient)."""
        if not self.terms:
            raise ValidationError("zero polynomial has no leading term")
        exps = max(self.terms, key=lambda e: (sum(e), tuple(reversed(e))))
        return exps, self.terms[exps]

    def monomials(self) -> list[Monomial]:
        return sorted(Monomial(e, sum(e)) for e in self.terms)

    # -- arithmetic --------------------------------------------------------

    def add(self, other: "PolynomialFp") -> "PolynomialFp":
        self._check_compatible(other)
        out = dict(self.terms)
        for e, c in other.terms.items():
            out[e] = out.get(e, 0) + c
        return PolynomialFp(self.field, self.nvars, out)

    def scale(self, c: int) -> "PolynomialFp":
        return PolynomialFp(self.field, self.nvars,
                            {e: a * c for e, a in self.terms.items()})

    def mul(self, other: "PolynomialFp") -> "PolynomialFp":
        self._check_compatible(other)
        p = self.field.p
        out: dict[tuple[int, ...], int] = {}
        for e1, c1 in self.terms.items():
            for e2, c2 in other.terms.items():
                e = tuple(a + b for a, b in zip(e1, e2))
                out[e] = (out.get(e, 0) + c1 * c2) % p
        return PolynomialFp(self.field, self.nvars, out)

    def pow(self, n: int, term_cap: int = DEFAULT_POWER_TERM_CAP) -> "PolynomialFp":
        """Binary powering with a cap on intermediate term counts."""
        if n < 0:
            raise ValidationError("negative power")
        result = PolynomialFp(self.field, self.nvars, {(0,) * self.nvars: 1})
        base = self
        while n:
            if n & 1:
                result = result.mul(base)
                if len(result) > term_cap:
                    raise InstanceTooLarge(
                        f"power too large: {len(result)} terms exceeds cap "
                        f"{term_cap}")
            n >>= 1
            if n:
                base = base.mul(base)
                if len(base) > term_cap:
                    raise InstanceTooLarge(
                        f"power too large: {len(base)} terms exceeds cap "
                        f"{term_cap}")
        return result

    def frobenius(self, i: int) -> "PolynomialFp":
        """Apply the i-th Frobenius: multiply every exponent by p^i.

        Coefficients are fixed because c^(p^i) = c on the prime field.
        """
        q = self.field.p ** i
        return PolynomialFp(self.field, self.nvars,
                            {tuple(a * q for a in e): c
                             for e, c in self.terms.items()})

    def _check_compatible(self, other: "PolynomialFp") -> None:
        if other.field != self.field or other.nvars != self.nvars:
            raise ValidationError("polynomials live in different rings")

    def __repr__(self) -> str:
        return (f"PolynomialFp(p={self.field.p}, nvars={self.nvars}, "
                f"terms={len(self.terms)})")


def digit_power(G: PolynomialFp, e: int,
                term_cap: int = DEFAULT_POWER_TERM_CAP) -> PolynomialFp:
    """G^(p^e - 1) via the Frobenius-digit factorization
    prod_{i=0}^{e-1} Frob^i(G^(p-1)).

    The identity uses p^e - 1 = sum_i (p-1) p^i and Frob^i(h) = h^(p^i) on
    prime-field coefficients.
    """
    if G.is_zero():
        raise ValidationError("digit_power of the zero polynomial")
    if e < 1:
        raise ValidationError(f"level must be >= 1, got {e}")
    base = G.pow(G.field.p - 1, term_cap=term_cap)
    result = base
    for i in range(1, e):
        result = result.mul(base.frobenius(i))
        if len(result) > term_cap:
            raise InstanceTooLarge(
                f"power too large: {len(result)} terms exceeds cap {term_cap}")
    return result


# ---------------------------------------------------------------------------
# dense rank over F_p
#
# Recursive blocked Gaussian elimination with partial pivoting.  The matrix
# lives in a float dtype holding exact small integers; trailing updates are
# BLAS matmuls with the inner dimension chunked so that accumulated products
# stay below the dtype's exact-integer range.  The slow generic '%' is
# replaced by a multiply/floor reduction with an off-by-one fixup.

_BASE = 32


def _dtype_for(p: int):
    """float32 when products of residues fit its exact range, else float64."""
    if (p - 1) ** 2 * _BASE < 2 ** 24:
        return np.float32, 2 ** 24 - 1
    return np.float64, 2 ** 53 - 1


def _mod_inplace(A: np.ndarray, p: int) -> np.ndarray:
    """In-place reduction mod p of an array of exact integers."""
    q = A * A.dtype.type(1.0 / p)
    np.floor(q, out=q)
    q *= A.dtype.type(p)
    A -= q
    # 1/p is rounded, so the quotient can be off by one either way
    A[A < 0] += p
    A[A >= p] -= p
    return A


def _matmul_mod(X: np.ndarray, Y: np.ndarray, p: int, exact_cap: int) -> np.ndarray:
    """(X @ Y) mod p with the inner dimension chunked for exactness."""
    k = X.shape[1]
    kc = exact_cap // max(1, (p - 1) ** 2)
    if k <= kc:
        return _mod_inplace(X @ Y, p)
    out = np.zeros((X.shape[0], Y.shape[1]), dtype=X.dtype)
    for s in range(0, k, kc):
        out += X[:, s:s + kc] @ Y[s:s + kc]
        _mod_inplace(out, p)
    return out


def _take_cols(A: np.ndarray, r0: int, r1: int, cols: list[int]) -> np.ndarray:
    """A[r0:r1][:, cols] with a cheap slice when cols is a contiguous run."""
    if len(cols) == cols[-1] - cols[0] + 1:
        return A[r0:r1, cols[0]:cols[-1] + 1]
    return A[r0:r1][:, cols]


def _trsm_unit_lower(L, invs, B, p, exact_cap) -> None:
    """Solve (D^-1 L) X = B in place on B, with L unit lower triangular and
    D^-1 the recorded pivot-inverse row scalings."""
    k = L.shape[0]
    if k <= _BASE:
        for i in range(k):
            li = L[i, :i]
            nz = np.nonzero(li)[0]
            if nz.size:
                B[i] = (B[i] - li[nz] @ B[nz]) % p
            if invs[i] != 1:
                B[i] = (B[i] * invs[i]) % p
        return
    h = k // 2
    _trsm_unit_lower(L[:h, :h], invs[:h], B[:h], p, exact_cap)
    Bv = B[h:]
    np.subtract(Bv, _matmul_mod(L[h:, :h], np.ascontiguousarray(B[:h]), p,
                                exact_cap), out=Bv)
    _mod_inplace(Bv, p)
    _trsm_unit_lower(L[h:, h:], invs[h:], B[h:], p, exact_cap)


def _factor(A, p, inv, r0, c0, c1, piv_cols, piv_invs, exact_cap) -> int:
    """Eliminate columns [c0, c1) against rows [r0, m).

    Pivot rows bubble up to r0, r0+1, ...; multipliers are stored below the
    pivots; pivot rows end up holding the normalized echelon rows.  Returns
    the number of pivots found and appends their columns/inverses.
    """
    m = A.shape[0]
    if r0 >= m:
        return 0
    w = c1 - c0
    if w <= _BASE:
        P = np.ascontiguousarray(A[r0:, c0:c1])
        mm = P.shape[0]
        swaps = []
        rr = 0
        for j in range(w):
            col = P[rr:, j]
            nz = np.nonzero(col)[0]
            if nz.size == 0:
                continue
            pr = rr + int(nz[0])
            if pr != rr:
                P[[rr, pr]] = P[[pr, rr]]
                swaps.append((rr, pr))
            ipiv = inv[int(P[rr, j])]
            if ipiv != 1:
                P[rr, j:] = (P[rr, j:] * ipiv) % p
            f = P[rr + 1:, j]
            nzb = np.nonzero(f)[0]
            if nzb.size:
                fv = f[nzb].copy()
                rows = rr + 1 + nzb
                P[rows, j:] = (P[rows, j:] - np.outer(fv, P[rr, j:])) % p
                P[rows, j] = fv
            piv_cols.append(c0 + j)
            piv_invs.append(float(ipiv))
            rr += 1
            if rr >= mm:
                break
        for a, b in swaps:
            A[[r0 + a, r0 + b], :c0] = A[[r0 + b, r0 + a], :c0]
            A[[r0 + a, r0 + b], c1:] = A[[r0 + b, r0 + a], c1:]
        A[r0:, c0:c1] = P
        return rr
    mid = c0 + (w // 2)
    n0 = len(piv_cols)
    k1 = _factor(A, p, inv, r0, c0, mid, piv_cols, piv_invs, exact_cap)
    if k1:
        pc = piv_cols[n0:]
        invs = np.array(piv_invs[n0:], dtype=A.dtype)
        L11 = _take_cols(A, r0, r0 + k1, pc)
        B = A[r0:r0 + k1, mid:c1]
        _trsm_unit_lower(L11, invs, B, p, exact_cap)
        if r0 + k1 < m:
            L21 = _take_cols(A, r0 + k1, m, pc)
            T = A[r0 + k1:, mid:c1]
            np.subtract(T, _matmul_mod(L21, np.ascontiguousarray(B), p,
                                       exact_cap), out=T)
            _mod_inplace(T, p)
    k2 = _factor(A, p, inv, r0 + k1, mid, c1, piv_cols, piv_invs, exact_cap)
    return k1 + k2


def _inverse_table(p: int, dtype) -> np.ndarray:
    t = np.zeros(p, dtype=dtype)
    for a in range(1, p):
        t[a] = pow(a, p - 2, p)
    return t


def rank_fp_dense(A: np.ndarray, p: int) -> int:
    """Rank over F_p of a dense integer matrix.  A is consumed."""
    m, n = A.shape
    if m == 0 or n == 0:
        return 0
    dtype, exact_cap = _dtype_for(p)
    W = np.ascontiguousarray(A, dtype=dtype)
    _mod_inplace(W, p)
    piv_cols: list[int] = []
    piv_invs: list[float] = []
    return _factor(W, p, _inverse_table(p, dtype), 0, 0, n,
                   piv_cols, piv_invs, exact_cap)


def _usolve_unit_upper(U, B, p, exact_cap) -> None:
    """Solve U X = B in place on B, with U unit upper triangular."""
    k = U.shape[0]
    if k <= _BASE:
        for i in range(k - 1, -1, -1):
            ui = U[i, i + 1:]
            nz = np.nonzero(ui)[0]
            if nz.size:
                B[i] = (B[i] - ui[nz] @ B[i + 1 + nz]) % p
        return
    h = k // 2
    _usolve_unit_upper(U[h:, h:], B[h:], p, exact_cap)
    Bv = B[:h]
    np.subtract(Bv, _matmul_mod(U[:h, h:], np.ascontiguousarray(B[h:]), p,
                                exact_cap), out=Bv)
    _mod_inplace(Bv, p)
    _usolve_unit_upper(U[:h, :h], B[:h], p, exact_cap)


def kernel_fp_dense(A: np.ndarray, p: int) -> tuple[int, np.ndarray]:
    """Rank and a kernel basis over F_p of a dense integer matrix.

    Returns (rank, K) with K of shape (n, n - rank); columns of K span the
    null space.  A is consumed.
    """
    m, n = A.shape
    dtype, exact_cap = _dtype_for(p)
    if m == 0 or n == 0:
        return 0, np.eye(n, dtype=dtype)
    W = np.ascontiguousarray(A, dtype=dtype)
    _mod_inplace(W, p)
    piv_cols: list[int] = []
    piv_invs: list[float] = []
    r = _factor(W, p, _inverse_table(p, dtype), 0, 0, n,
                piv_cols, piv_invs, exact_cap)
    free_cols = sorted(set(range(n)) - set(piv_cols))
    if not free_cols:
        return r, np.zeros((n, 0), dtype=dtype)
    # the first r rows hold the echelon form, except that entries at pivot
    # columns below their own pivot store multipliers; zero those out
    U = W[:r].copy()
    for i, pc in enumerate(piv_cols):
        U[i + 1:, pc] = 0
        U[i, pc] = 1
    Upp = U[:, piv_cols]
    F = np.ascontiguousarray(U[:, free_cols])
    _usolve_unit_upper(Upp, F, p, exact_cap)  # F <- Upp^-1 * U_free
    K = np.zeros((n, len(free_cols)), dtype=dtype)
    for i, pc in enumerate(piv_cols):
        K[pc] = (-F[i]) % p
    for j, fc in enumerate(free_cols):
        K[fc, j] = 1
    return r, K


# ---------------------------------------------------------------------------
# sparse matrix wrapper

class MatrixFp:
    """Sparse column-major matrix over F_p.

    Columns are stored as (row-index array, value array) pairs with all
    values nonzero and reduced mod p.
    """

    def __init__(self, rows: int, cols: int, p: int,
                 columns: list[tuple[np.ndarray, np.ndarray]] | None = None):
        PrimeField(p)  # validates primality
        self.rows = rows
        self.cols = cols
        self.p = p
        if columns is None:
            columns = [(np.zeros(0, dtype=np.int64),
                        np.zeros(0, dtype=np.int64)) for _ in range(cols)]
        if len(columns) != cols:
            raise ValidationError(
                f"matrix has {len(columns)} stored columns, expected {cols}")
        self.columns = []
        for idx, vals in columns:
            idx = np.asarray(idx, dtype=np.int64)
            vals = np.asarray(vals, dtype=np.int64) % p
            keep = vals != 0
            idx, vals = idx[keep], vals[keep]
            if idx.size and (idx.min() < 0 or idx.max() >= rows):
                raise ValidationError("row index out of range")
            self.columns.append((idx, vals))

    @staticmethod
    def from_dense(A, p: int) -> "MatrixFp":
        A = np.asarray(A, dtype=np.int64) % p
        rows, cols = A.shape
        columns = []
        for j in range(cols):
            idx = np.nonzero(A[:, j])[0]
            columns.append((idx, A[idx, j]))
        return MatrixFp(rows, cols, p, columns)

    def to_dense(self) -> np.ndarray:
        if self.rows * self.cols > 5 * 10 ** 8:
            raise InstanceTooLarge(
                f"instance too large: densifying {self.rows} x {self.cols}")
        A = np.zeros((self.rows, self.cols), dtype=np.int64)
        for j, (idx, vals) in enumerate(self.columns):
            A[idx, j] = vals
        return A

    def transpose(self) -> "MatrixFp":
        return MatrixFp.from_dense(self.to_dense().T, self.p)


def rank_mod_p(M: MatrixFp) -> int:
    """F_p-rank of a MatrixFp.  Deterministic Gaussian elimination with
    partial pivoting (modular pivot inverses, blocked updates)."""
    return rank_fp_dense(M.to_dense(), M.p)
