"""Graded splitting subspaces I_e(m) of a normal graded hypersurface ring
R = F_p[x_0..x_{v-1}]/(G), thresholds m_e, alpha estimates and rigorous
upper bounds, free ranks a_e, F-signature estimates, and the duality /
monotonicity / Fano-bound checks.

The degree-m piece of the level-e splitting ideal is the kernel of

    Phi_{e,m}: S_m -> span{monomials of degree m + delta*(q-1), all
                           exponents <= q-1},
    f |-> f * G^(q-1) with monomials divisible by some x_i^q deleted,

so b_e(m) = dim R_m - dim I_e(m) = rank Phi_{e,m}.  Since the kernel
contains G*S_{m-delta}, the columns can be restricted to the monomials not
divisible by the leading term of G without changing the rank; that cuts the
column count from dim S_m to dim R_m.

Rank strategy: small instances are materialized densely and eliminated
exactly.  Large instances compress the rows by a seeded hash into a sketch
with a few spare rows; sketch rank = column count is a proof that
I_e(m) = 0, and otherwise the sketch's kernel basis is verified against the
uncompressed matrix, which certifies the exact rank.  Failed verification
retries with a larger sketch, so every returned value is certified.
"""

from __future__ import annotations

import concurrent.futures
from dataclasses import dataclass
from fractions import Fraction
from typing import NamedTuple, Sequence

import numpy as np
import scipy.sparse

from .errors import InstanceTooLarge, InternalCheckError, ValidationError
from .ffkernel import (
    DEFAULT_POWER_TERM_CAP,
    PolynomialFp,
    PrimeField,
    digit_power,
    iter_degree,
    kernel_fp_dense,
    n_monomials,
    n_monomials_capped,
    rank_fp_dense,
)

#: refuse matrices with a side beyond this (desk-scale guarantee)
MAX_MATRIX_SIDE = 5 * 10 ** 5

#: dense materialization limit in matrix cells
DENSE_CELLS = 5 * 10 ** 7

#: default cap on estimated elimination work (floating operations) per rank
DEFAULT_WORK_CAP = 2.0 * 10 ** 11

_HASH_A = np.uint64(0x9E3779B97F4A7C15)
_HASH_B = np.uint64(0xBF58476D1CE4E5B9)


class GradedHypersurface:
    """The graded ring R = F_p[x_0..x_{v-1}]/(G) for homogeneous G."""

    def __init__(self, field: PrimeField, names: Sequence[str],
                 G: PolynomialFp):
        if G.field != field:
            raise ValidationError("G is not defined over the given field")
        if G.is_zero():
            raise ValidationError("G must be nonzero")
        delta = G.homogeneous_degree
        if delta is None:
            raise ValidationError("G must be homogeneous")
        if delta < 1:
            raise ValidationError("G must have positive degree")
        if len(names) != G.nvars:
            raise ValidationError(
                f"{len(names)} variable names for {G.nvars} variables")
        self.field = field
        self.names = tuple(names)
        self.G = G
        self.v = G.nvars
        self.delta = delta
        self.fano_coindex = self.v - delta
        # a single term generates a non-reduced ring; theory checks that
        # assume normality are then advisory only
        self.degenerate_warning = len(G.terms) == 1
        self._gq_cache: dict[int, PolynomialFp] = {}
        self._gq_arrays_cache: dict[int, tuple] = {}
        self._b_cache: dict[tuple[int, int], int] = {}

    def dim_S(self, m: int) -> int:
        return n_monomials(self.v, m) if m >= 0 else 0

    def dim_R(self, m: int) -> int:
        if m < 0:
            return 0
        return self.dim_S(m) - self.dim_S(m - self.delta)

    def gq(self, e: int) -> PolynomialFp:
        """G^(p^e - 1), cached."""
        if e not in self._gq_cache:
            self._gq_cache[e] = digit_power(self.G, e,
                                            term_cap=DEFAULT_POWER_TERM_CAP)
        return self._gq_cache[e]

    def _gq_arrays(self, e: int):
        """Exponent matrix (T x v, int16), coefficient vector, and the base-q
        positional encoder for G^(p^e - 1)."""
        if e not in self._gq_arrays_cache:
            gq = self.gq(e)
            q = self.field.p ** e
            items = sorted(gq.terms.items())
            W = np.array([exps for exps, _ in items], dtype=np.int16)
            cw = np.array([c for _, c in items], dtype=np.int64)
            # row keys are base-(q) digit encodings of reduced exponents
            powvec = (q ** np.arange(self.v)).astype(np.int64)
            self._gq_arrays_cache[e] = (W, cw, powvec)
        return self._gq_arrays_cache[e]

    def restricted_basis(self, m: int) -> np.ndarray:
        """Degree-m monomials not divisible by the leading term of G, as an
        (n x v) int16 array in graded-colex order.  These monomials descend
        to a basis of R_m."""
        lt, _ = self.G.leading_term()
        rows = [exps for exps in iter_degree(self.v, m)
                if any(a < b for a, b in zip(exps, lt))]
        basis = (np.array(rows, dtype=np.int16) if rows
                 else np.zeros((0, self.v), dtype=np.int16))
        if basis.shape[0] != self.dim_R(m):
            raise InternalCheckError(
                f"basis bookkeeping: {basis.shape[0]} restricted monomials at "
                f"degree {m}, binomial formula gives {self.dim_R(m)}")
        return basis

    def __repr__(self) -> str:
        return (f"GradedHypersurface(p={self.field.p}, v={self.v}, "
                f"delta={self.delta})")


def diagonal_hypersurface(p: int, v: int, delta: int) -> GradedHypersurface:
    """Convenience constructor for x_0^delta + ... + x_{v-1}^delta."""
    field = PrimeField(p)
    terms = {}
    for i in range(v):
        e = [0] * v
        e[i] = delta
        terms[tuple(e)] = 1
    names = tuple(f"x{i}" for i in range(v))
    return GradedHypersurface(field, names, PolynomialFp(field, v, terms))


# ---------------------------------------------------------------------------
# matrix construction

class _BuildResult(NamedTuple):
    cols: int
    rows_bound: int
    zero_columns: list[int]
    column_keys: list[np.ndarray] | None  # per-column row keys (dense path)
    column_vals: list[np.ndarray] | None


def _column_scan(ring: GradedHypersurface, e: int, m: int):
    """For each restricted basis monomial u, the valid products u + w with
    w in supp G^(q-1) and all exponents <= q-1, encoded as row keys."""
    q = ring.field.p ** e
    cap = q - 1
    W, cw, powvec = ring._gq_arrays(e)
    basis = ring.restricted_basis(m)
    ncols = basis.shape[0]
    zero_columns: list[int] = []
    column_keys: list[np.ndarray] = []
    column_vals: list[np.ndarray] = []
    room = (np.int16(cap) - basis).astype(np.int16)
    for j in range(ncols):
        mask = (W <= room[j]).all(axis=1)
        if not mask.any():
            zero_columns.append(j)
            column_keys.append(np.zeros(0, dtype=np.int64))
            column_vals.append(np.zeros(0, dtype=np.int64))
            continue
        keys = (W[mask].astype(np.int64)
                + basis[j].astype(np.int64)) @ powvec
        column_keys.append(keys)
        column_vals.append(cw[mask])
    return ncols, zero_columns, column_keys, column_vals


def _has_zero_column(ring: GradedHypersurface, e: int, m: int) -> bool:
    """Whether some restricted basis monomial u admits no valid product,
    i.e. u is a monomial witness for I_e(m) != 0.  Linear work, no rank."""
    q = ring.field.p ** e
    cap = q - 1
    W, _, _ = ring._gq_arrays(e)
    basis = ring.restricted_basis(m)
    if basis.shape[0] == 0:
        return False
    room = np.int16(cap) - basis
    for j0 in range(0, room.shape[0], 512):
        chunk = room[j0:j0 + 512]
        alive = (W[None, :, :] <= chunk[:, None, :]).all(axis=2).any(axis=1)
        if not alive.all():
            return True
    return False


def _sketch_matrix(ring: GradedHypersurface, e: int, m: int, r: int,
                   seed: int, dtype):
    """Row-compressed matrix of Phi_{e,m}: every true row is hashed to one
    of r buckets with a nonzero key-dependent coefficient.  Deterministic in
    (ring, e, m, r, seed)."""
    p = ring.field.p
    q = p ** e
    cap = q - 1
    W, cw, powvec = ring._gq_arrays(e)
    basis = ring.restricted_basis(m)
    ncols = basis.shape[0]
    S = np.zeros((r, ncols), dtype=dtype)
    zero_columns: list[int] = []
    sd = np.uint64(seed)
    room = (np.int16(cap) - basis).astype(np.int16)
    for j in range(ncols):
        mask = (W <= room[j]).all(axis=1)
        if not mask.any():
            zero_columns.append(j)
            continue
        keys = ((W[mask].astype(np.int64)
                 + basis[j].astype(np.int64)) @ powvec).astype(np.uint64)
        h = keys * _HASH_A + sd
        buckets = (h >> np.uint64(17)).astype(np.int64) % r
        mix = ((keys * _HASH_B + sd) >> np.uint64(29)).astype(np.int64)
        coeffs = 1 + mix % (p - 1) if p > 2 else np.ones_like(mix)
        vals = (cw[mask] * coeffs) % p
        col = np.bincount(buckets, weights=vals.astype(np.float64),
                          minlength=r)
        S[:, j] = col % p
    return S, zero_columns


def _true_sparse(ring: GradedHypersurface, e: int, m: int):
    """The uncompressed matrix of Phi_{e,m} as a scipy CSR over the actually
    occupied rows (empty rows do not affect rank or the kernel)."""
    ncols, zero_cols, column_keys, column_vals = _column_scan(ring, e, m)
    if ncols == 0 or not any(k.size for k in column_keys):
        return scipy.sparse.csr_matrix((0, max(ncols, 1))), ncols
    all_keys = np.unique(np.concatenate(column_keys))
    data, rows, cols = [], [], []
    for j in range(ncols):
        k = column_keys[j]
        if k.size == 0:
            continue
        rows.append(np.searchsorted(all_keys, k))
        cols.append(np.full(k.size, j, dtype=np.int64))
        data.append(column_vals[j].astype(np.float64))
    A = scipy.sparse.csr_matrix(
        (np.concatenate(data), (np.concatenate(rows), np.concatenate(cols))),
        shape=(all_keys.size, ncols))
    return A, ncols


def _estimate_flops(rows: int, cols: int) -> float:
    """Cubic elimination work estimate for the chosen path."""
    if rows * cols <= DENSE_CELLS:
        return min(rows, cols) * rows * cols / 3.0
    r = cols + 64
    return float(cols) * cols * r / 3.0


def _check_caps(ring: GradedHypersurface, e: int, m: int,
                work_cap: float | None) -> None:
    q = ring.field.p ** e
    cols = ring.dim_R(m)
    rows = n_monomials_capped(ring.v, m + ring.delta * (q - 1), q - 1)
    if cols > MAX_MATRIX_SIDE or rows > MAX_MATRIX_SIDE:
        raise InstanceTooLarge(
            f"instance too large at m={m}: matrix is {rows} x {cols}, "
            f"side cap {MAX_MATRIX_SIDE}")
    cap = DEFAULT_WORK_CAP if work_cap is None else work_cap
    est = _estimate_flops(rows, cols)
    if est > cap:
        raise InstanceTooLarge(
            f"instance too large at m={m}: estimated {est:.2e} elimination "
            f"operations on a {rows} x {cols} matrix exceeds the work cap "
            f"{cap:.2e}; pass a larger work_cap to force the attempt")


def b_dimension(ring: GradedHypersurface, e: int, m: int,
                work_cap: float | None = None) -> int:
    """b_e(m) = dim R_m - dim I_e(m) = rank Phi_{e,m}.  Certified exact."""
    if e < 1:
        raise ValidationError(f"level must be >= 1, got {e}")
    if m < 0:
        raise ValidationError(f"degree must be >= 0, got {m}")
    key = (e, m)
    if key in ring._b_cache:
        return ring._b_cache[key]
    _check_caps(ring, e, m, work_cap)
    b = _rank_phi(ring, e, m)
    ring._b_cache[key] = b
    return b


def _rank_phi(ring: GradedHypersurface, e: int, m: int) -> int:
    p = ring.field.p
    q = p ** e
    cols = ring.dim_R(m)
    rows_bound = n_monomials_capped(ring.v, m + ring.delta * (q - 1), q - 1)
    if cols == 0 or rows_bound == 0:
        return 0
    if rows_bound * cols <= DENSE_CELLS:
        A, ncols = _true_sparse(ring, e, m)
        if A.shape[0] == 0:
            return 0
        return rank_fp_dense(np.asarray(A.todense()), p)
    # sketch path with certification
    r = cols + 64
    for attempt in range(4):
        seed = _sketch_seed(ring, e, m, attempt)
        S, _ = _sketch_matrix(ring, e, m, r, seed, np.float64)
        rank_s, K = kernel_fp_dense(S, p)
        if rank_s == cols:
            return cols  # rank(sketch) <= rank(Phi) <= cols forces equality
        if _kernel_verifies(ring, e, m, K, p):
            return rank_s  # ker(sketch) = ker(Phi), so the ranks agree
        r = 2 * r + 64
        if r > MAX_MATRIX_SIDE:
            break
    raise InternalCheckError(
        f"sketch certification failed for e={e}, m={m} after enlarging the "
        f"sketch; falsifying sketch size {r}")


def _sketch_seed(ring: GradedHypersurface, e: int, m: int,
                 attempt: int) -> int:
    basis = (ring.field.p, ring.v, ring.delta, e, m, attempt)
    h = 0xCBF29CE484222325
    for x in basis:
        h = ((h ^ x) * 0x100000001B3) % 2 ** 64
    return h


def _kernel_verifies(ring: GradedHypersurface, e: int, m: int,
                     K: np.ndarray, p: int) -> bool:
    """Exact check that every sketch-kernel vector kills the true matrix."""
    if K.shape[1] == 0:
        return True
    A, _ = _true_sparse(ring, e, m)
    prod = A @ K.astype(np.float64)
    return not np.any(_np_mod_exact(prod, p))


def _np_mod_exact(A: np.ndarray, p: int) -> np.ndarray:
    return np.asarray(A) % p


# ---------------------------------------------------------------------------
# derived quantities

def fedder_is_fsplit(ring: GradedHypersurface, e: int) -> bool:
    """F-splitness at level e: I_e(0) = 0, i.e. G^(q-1) has a monomial with
    all exponents <= q-1."""
    if e < 1:
        raise ValidationError(f"level must be >= 1, got {e}")
    q = ring.field.p ** e
    cap = q - 1
    W, _, _ = ring._gq_arrays(e)
    return bool((W <= cap).all(axis=1).any())


def m_threshold(ring: GradedHypersurface, e: int,
                work_cap: float | None = None) -> int:
    """The largest m with I_e(m) = 0.

    Multiplication by a linear form embeds I_e(m) into I_e(m+1) on a
    domain, so "I_e(m) != 0" is monotone in m and the threshold can be
    bracketed by galloping and then bisected.  Each probe first looks for a
    zero column (a monomial witness, linear work) and falls back to the
    certified rank only when no witness exists.
    """
    if not fedder_is_fsplit(ring, e):
        raise ValidationError(f"not F-split at level e={e}")
    q = ring.field.p ** e
    scan_cap = (q - 1) * max(ring.fano_coindex, 1)

    def nonzero(m: int) -> bool:
        if _has_zero_column(ring, e, m):
            return True
        return b_dimension(ring, e, m, work_cap=work_cap) < ring.dim_R(m)

    lo = 0  # I_e(0) = 0 by the Fedder check above
    try:
        hi = 1
        while hi <= scan_cap and not nonzero(hi):
            lo = hi
            hi = min(2 * hi, scan_cap + 1)
        if hi > scan_cap:
            raise InternalCheckError(
                f"threshold scan passed the cap m={scan_cap} without finding "
                f"I_e(m) != 0 at level e={e}")
        while hi - lo > 1:
            mid = (lo + hi) // 2
            hi, lo = (mid, lo) if nonzero(mid) else (hi, mid)
        return lo
    except InstanceTooLarge:
        # a probe overshot the feasible size; finish linearly from the last
        # degree known to be zero, so only ranks that are genuinely needed
        # can hit the work cap
        m = lo + 1
        while m <= scan_cap:
            if nonzero(m):
                return m - 1
            m += 1
        raise InternalCheckError(
            f"threshold scan passed the cap m={scan_cap} without finding "
            f"I_e(m) != 0 at level e={e}")


def free_rank(ring: GradedHypersurface, e: int,
              work_cap: float | None = None, threads: int = 1) -> int:
    """a_e = sum of b_e(m) over 0 <= m <= M_e with M_e = (q-1)(v-delta).

    The cutoff is exact for Fano hypersurfaces: beyond M_e there is no
    reduced target monomial at all, which the tail assertion confirms.
    """
    if ring.fano_coindex <= 0:
        raise ValidationError(
            f"non-Fano: free-rank sum not implemented (v-delta = "
            f"{ring.fano_coindex})")
    if not fedder_is_fsplit(ring, e):
        raise ValidationError(f"not F-split at level e={e}")
    q = ring.field.p ** e
    M = (q - 1) * ring.fano_coindex
    tail_rows = n_monomials_capped(ring.v, M + 1 + ring.delta * (q - 1), q - 1)
    if tail_rows != 0:
        raise InternalCheckError(
            f"tail not zero: {tail_rows} reduced targets at m={M + 1}")
    values = _b_values(ring, e, range(M + 1), work_cap, threads)
    return sum(values)


def _b_values(ring: GradedHypersurface, e: int, ms, work_cap, threads):
    ms = list(ms)
    for m in ms:
        _check_caps(ring, e, m, work_cap)  # fail fast before any heavy work
    ring.gq(e)  # materialize the shared power outside the pool
    if threads and threads > 1:
        with concurrent.futures.ThreadPoolExecutor(threads) as pool:
            return list(pool.map(
                lambda m: b_dimension(ring, e, m, work_cap=work_cap), ms))
    return [b_dimension(ring, e, m, work_cap=work_cap) for m in ms]


@dataclass
class SplittingProfile:
    """Level-e record of the b-profile and its derived invariants."""

    e: int
    q: int
    M_e: int
    b: list[int]  # b[m] for 0 <= m <= M_e
    m_e: int
    alpha_e: Fraction
    alpha_upper: Fraction
    a_e: int
    s_raw: Fraction
    duality_ok: bool | None  # None when the check was skipped
    monotone_ok: bool | None  # None without a previous level


def profile(ring: GradedHypersurface, e: int,
            prev: SplittingProfile | None = None,
            check_duality: bool = True,
            work_cap: float | None = None,
            threads: int = 1) -> SplittingProfile:
    """Assemble the full level-e profile with its self-checks."""
    if ring.fano_coindex <= 0:
        raise ValidationError(
            f"non-Fano: profile needs v > delta (v-delta = "
            f"{ring.fano_coindex})")
    if not fedder_is_fsplit(ring, e):
        raise ValidationError(f"not F-split at level e={e}")
    q = ring.field.p ** e
    M = (q - 1) * ring.fano_coindex
    b = _b_values(ring, e, range(M + 1), work_cap, threads)
    dims = [ring.dim_R(m) for m in range(M + 1)]
    # scan monotonicity: I_e(m) != 0 implies I_e(m+1) != 0
    for m in range(M):
        if dims[m] - b[m] > 0 and dims[m + 1] - b[m + 1] == 0:
            raise InternalCheckError(
                f"scan monotonicity failed: dim I_e({m}) = "
                f"{dims[m] - b[m]} but dim I_e({m + 1}) = 0 at level e={e}")
    m_e = 0
    while m_e + 1 <= M and b[m_e + 1] == dims[m_e + 1]:
        m_e += 1
    a_e = sum(b)
    duality_ok: bool | None = None
    if check_duality:
        duality_ok = all(b[m] == b[M - m] for m in range(M + 1))
    monotone_ok: bool | None = None
    if prev is not None:
        if prev.e != e - 1:
            raise ValidationError(
                f"previous profile is level {prev.e}, expected {e - 1}")
        monotone_ok = (prev.alpha_e + Fraction(1, ring.field.p ** prev.e)
                       >= Fraction(m_e, q) + Fraction(1, q))
    return SplittingProfile(
        e=e, q=q, M_e=M, b=b, m_e=m_e,
        alpha_e=Fraction(m_e, q),
        alpha_upper=Fraction(m_e + 1, q - 1),
        a_e=a_e,
        s_raw=Fraction(a_e, q ** (ring.v - 1)),
        duality_ok=duality_ok,
        monotone_ok=monotone_ok,
    )


class MembershipResult:
    """Boolean-like result of a membership test, with a vacuousness flag for
    elements that already lie in (G)."""

    def __init__(self, member: bool, in_principal_ideal: bool):
        self.member = member
        self.in_principal_ideal = in_principal_ideal

    def __bool__(self) -> bool:
        return self.member

    def __eq__(self, other) -> bool:
        if isinstance(other, bool):
            return self.member == other
        return (isinstance(other, MembershipResult)
                and other.member == self.member
                and other.in_principal_ideal == self.in_principal_ideal)

    def __repr__(self) -> str:
        return (f"MembershipResult(member={self.member}, "
                f"in_principal_ideal={self.in_principal_ideal})")


def membership_check(ring: GradedHypersurface, e: int,
                     f: PolynomialFp) -> MembershipResult:
    """Whether f lies in I_e(deg f): every monomial of f * G^(q-1) must be
    divisible by some x_i^q.

    Elements of (G) are vacuous members and are flagged.
    """
    if e < 1:
        raise ValidationError(f"level must be >= 1, got {e}")
    if f.field != ring.field or f.nvars != ring.v:
        raise ValidationError("element lives in a different ring")
    if f.is_zero():
        raise ValidationError("zero element: membership is vacuous")
    if f.homogeneous_degree is None:
        raise ValidationError("element must be homogeneous")
    q = ring.field.p ** e
    prod = f.mul(ring.gq(e))
    member = all(max(exps) >= q for exps in prod.terms)
    return MembershipResult(member, _reduce_mod_G(ring, f).is_zero())


def _reduce_mod_G(ring: GradedHypersurface, f: PolynomialFp) -> PolynomialFp:
    """Remainder of f under division by G with respect to graded colex.

    A single polynomial generates its principal ideal as a Groebner basis,
    so the remainder vanishes exactly when f is in (G).
    """
    lt, ltc = ring.G.leading_term()
    inv_ltc = ring.field.inv(ltc)
    rem = f
    while True:
        divisible = [exps for exps in rem.terms
                     if all(a >= b for a, b in zip(exps, lt))]
        if not divisible:
            return rem
        exps = max(divisible, key=lambda t: (sum(t), tuple(reversed(t))))
        c = rem.terms[exps]
        shift = tuple(a - b for a, b in zip(exps, lt))
        factor = PolynomialFp(ring.field, ring.v,
                              {shift: (-c * inv_ltc) % ring.field.p})
        rem = rem.add(factor.mul(ring.G))


@dataclass
class FanoReport:
    """Normalized alpha and F-signature data for a Fano hypersurface.

    The normalization divides by the coindex v - delta, so every quantity
    refers to the anticanonical polarization.
    """

    coindex: int
    profiles: list[SplittingProfile]
    alpha_normalized_estimates: list[Fraction]
    alpha_normalized_upper: list[Fraction]
    s_normalized: list[Fraction]
    s_half_normalized: list[Fraction] | None  # halved-sum estimator, coindex 1
    min_alpha_upper_normalized: Fraction
    conclusive_below_half: bool  # a rigorous certificate that alpha_F < 1/2
    slack_above_half: Fraction  # how far the best upper bound sits above 1/2
    volume: int  # deg(-K_X)^(v-2) normalization: delta * coindex^(v-2)
    bound: Fraction  # volume / (2^d (d+1)!), d = v - 2


def fano_report(ring: GradedHypersurface, e_max: int,
                work_cap: float | None = None,
                threads: int = 1) -> FanoReport:
    """Profiles for e = 1..e_max with anticanonically normalized invariants."""
    s = ring.fano_coindex
    if s <= 0:
        raise ValidationError(f"non-Fano: v-delta = {s}")
    if e_max < 1:
        raise ValidationError(f"e_max must be >= 1, got {e_max}")
    profiles: list[SplittingProfile] = []
    prev = None
    for e in range(1, e_max + 1):
        prev = profile(ring, e, prev=prev, work_cap=work_cap, threads=threads)
        profiles.append(prev)
    estimates = [pr.alpha_e / s for pr in profiles]
    uppers = [pr.alpha_upper / s for pr in profiles]
    s_norm = [pr.s_raw / s for pr in profiles]
    s_half = None
    if s == 1:
        # halved-sum estimator: s ~ 2 * sum_{m <= (q-1)/2} b_e(m) / q^(v-1)
        s_half = [Fraction(2 * sum(pr.b[m] for m in
                                   range(0, (pr.q - 1) // 2 + 1)),
                           pr.q ** (ring.v - 1))
                  for pr in profiles]
    min_upper = min(uppers)
    d = ring.v - 2
    volume = ring.delta * s ** (ring.v - 2)
    bound = Fraction(volume, 2 ** d * _factorial(d + 1))
    return FanoReport(
        coindex=s,
        profiles=profiles,
        alpha_normalized_estimates=estimates,
        alpha_normalized_upper=uppers,
        s_normalized=s_norm,
        s_half_normalized=s_half,
        min_alpha_upper_normalized=min_upper,
        conclusive_below_half=min_upper < Fraction(1, 2),
        slack_above_half=max(Fraction(0), min_upper - Fraction(1, 2)),
        volume=volume,
        bound=bound,
    )


def _factorial(n: int) -> int:
    out = 1
    for k in range(2, n + 1):
        out *= k
    return out
