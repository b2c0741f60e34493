"""Exact alpha_F-invariants of complete simplicial toric Fano varieties.

For a Fano fan with primitive rays v_1..v_n the anticanonical polytope is
P = {u : <u, v_i> >= -1}.  After dilating by an integer r that clears the
vertex denominators (times d-1 for degree-one generation),

    alpha = r * min over lattice points u of rP of min_{c_i > 0} 1/c_i,

where c_i = <u, v_i> + r.  Everything here is exact big-integer rational
arithmetic; no floating point is used anywhere in this module.
"""

from __future__ import annotations

import itertools
import math
import random
from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from .errors import InstanceTooLarge, InternalCheckError, ValidationError

#: refuse lattice-point enumerations beyond this many box candidates
DEFAULT_POINT_CAP = 10 ** 7

#: random rational directions per lattice dimension for the completeness
#: spot-check
_COMPLETENESS_SAMPLES_PER_DIM = 10


class FanData:
    """A complete simplicial fan: primitive rays plus maximal cones given as
    sets of d ray indices.

    Construction validates primitivity, simpliciality, and spot-checks
    completeness with seeded random rational directions.
    """

    def __init__(self, d: int, rays: Sequence[Sequence[int]],
                 cones: Sequence[Sequence[int]]):
        if d < 1:
            raise ValidationError(f"lattice rank must be >= 1, got {d}")
        self.d = d
        self.rays = tuple(tuple(int(a) for a in ray) for ray in rays)
        self.cones = tuple(tuple(sorted(int(i) for i in cone))
                           for cone in cones)
        if not self.rays or not self.cones:
            raise ValidationError("fan needs at least one ray and one cone")
        for k, ray in enumerate(self.rays):
            if len(ray) != d:
                raise ValidationError(
                    f"ray {k} has {len(ray)} coordinates, expected {d}")
            if all(a == 0 for a in ray):
                raise ValidationError(f"ray {k} is zero")
            if math.gcd(*(abs(a) for a in ray)) != 1:
                raise ValidationError(f"ray {k} = {ray} is not primitive")
        for c, cone in enumerate(self.cones):
            if len(set(cone)) != self.d:
                raise ValidationError(
                    f"cone {c} has {len(set(cone))} rays, expected {self.d}")
            if any(i < 0 or i >= len(self.rays) for i in cone):
                raise ValidationError(f"cone {c} references a missing ray")
            M = [[Fraction(self.rays[i][j]) for i in cone]
                 for j in range(self.d)]
            if _det(M) == 0:
                raise ValidationError(
                    f"non-simplicial or degenerate cone: cone {c} has "
                    f"linearly dependent rays")
        self._completeness_spot_check()

    def _completeness_spot_check(self) -> None:
        rng = random.Random(hash((self.d, self.rays, self.cones)) & 0xFFFFFF)
        for _ in range(_COMPLETENESS_SAMPLES_PER_DIM * self.d):
            w = [Fraction(rng.randint(-99, 99), rng.randint(1, 9))
                 for _ in range(self.d)]
            if not any(self._cone_contains(cone, w) for cone in self.cones):
                raise ValidationError(
                    f"fan fails the completeness spot-check: direction "
                    f"{tuple(w)} lies in no maximal cone")

    def _cone_contains(self, cone: tuple[int, ...],
                       w: Sequence[Fraction]) -> bool:
        M = [[Fraction(self.rays[i][j]) for i in cone] for j in range(self.d)]
        coeffs = _solve(M, [Fraction(x) for x in w])
        return all(c >= 0 for c in coeffs)

    def __repr__(self) -> str:
        return (f"FanData(d={self.d}, rays={len(self.rays)}, "
                f"cones={len(self.cones)})")


@dataclass(frozen=True)
class RationalPolytope:
    """The anticanonical polytope {u : <u, v_i> >= -1} with exact vertices,
    one per maximal cone."""

    rays: tuple[tuple[int, ...], ...]
    vertices: tuple[tuple[Fraction, ...], ...]


@dataclass(frozen=True)
class ToricAlphaReport:
    r: int
    alpha: Fraction
    witness_u: tuple[int, ...]
    witness_ray: int
    witness_is_vertex: bool
    volume: Fraction  # vol(-K_X) = d! * vol(P)
    bound: Fraction  # volume / (2^d (d+1)!)


# ---------------------------------------------------------------------------
# exact linear algebra over Q (dimensions are tiny: the lattice rank)

def _solve(M: list[list[Fraction]], b: list[Fraction]) -> list[Fraction]:
    """Solve M x = b by fraction Gaussian elimination; M must be square and
    nonsingular."""
    n = len(M)
    A = [row[:] + [b[i]] for i, row in enumerate(M)]
    for col in range(n):
        piv = next((r for r in range(col, n) if A[r][col] != 0), None)
        if piv is None:
            raise ValidationError("non-simplicial or degenerate cone")
        A[col], A[piv] = A[piv], A[col]
        inv = 1 / A[col][col]
        A[col] = [a * inv for a in A[col]]
        for r in range(n):
            if r != col and A[r][col] != 0:
                f = A[r][col]
                A[r] = [a - f * c for a, c in zip(A[r], A[col])]
    return [A[r][n] for r in range(n)]


def _det(M: list[list[Fraction]]) -> Fraction:
    n = len(M)
    A = [row[:] for row in M]
    det = Fraction(1)
    for col in range(n):
        piv = next((r for r in range(col, n) if A[r][col] != 0), None)
        if piv is None:
            return Fraction(0)
        if piv != col:
            A[col], A[piv] = A[piv], A[col]
            det = -det
        det *= A[col][col]
        inv = 1 / A[col][col]
        for r in range(col + 1, n):
            if A[r][col] != 0:
                f = A[r][col] * inv
                A[r] = [a - f * c for a, c in zip(A[r], A[col])]
    return det


def _dot(u, v) -> Fraction:
    return sum((a * b for a, b in zip(u, v)), start=Fraction(0))


# ---------------------------------------------------------------------------
# operations

def polar_and_dilate(fan: FanData) -> tuple[RationalPolytope, int]:
    """Vertices of P = {u : <u, v_i> >= -1} (one per maximal cone) and the
    dilation r = lcm(vertex denominators) * max(1, d-1)."""
    vertices = []
    for cone in fan.cones:
        M = [[Fraction(fan.rays[i][j]) for j in range(fan.d)] for i in cone]
        u = tuple(_solve(M, [Fraction(-1)] * fan.d))
        vertices.append(u)
    seen = set()
    unique = []
    for u in vertices:
        if u not in seen:
            seen.add(u)
            unique.append(u)
    for u in unique:
        for k, ray in enumerate(fan.rays):
            if _dot(u, ray) < -1:
                raise ValidationError(
                    f"fan is not Fano: vertex {u} violates the constraint "
                    f"of ray {k}")
    L = 1
    for u in unique:
        for a in u:
            L = L * a.denominator // math.gcd(L, a.denominator)
    r = L * max(1, fan.d - 1)
    return RationalPolytope(rays=fan.rays, vertices=tuple(unique)), r


def _lattice_points(fan: FanData, P: RationalPolytope, r: int,
                    point_cap: int):
    """Lattice points of rP, in lexicographic order."""
    lo = [min(math.ceil(r * u[j]) for u in P.vertices) for j in range(fan.d)]
    hi = [max(math.floor(r * u[j]) for u in P.vertices) for j in range(fan.d)]
    count = 1
    for a, b in zip(lo, hi):
        count *= max(0, b - a + 1)
    if count > point_cap:
        raise InstanceTooLarge(
            f"instance too large: {count} lattice-point candidates in the "
            f"bounding box of {r}P exceeds the cap {point_cap}")
    for u in itertools.product(*(range(a, b + 1) for a, b in zip(lo, hi))):
        if all(sum(a * b for a, b in zip(u, ray)) >= -r for ray in fan.rays):
            yield u


def _alpha_at_dilation(fan: FanData, P: RationalPolytope, r: int,
                       point_cap: int):
    """min over u in rP of r/(max_i c_i), with the lex-smallest witness u
    and smallest witness ray recorded."""
    best = None  # (alpha, u, ray_index)
    for u in _lattice_points(fan, P, r, point_cap):
        cs = [sum(a * b for a, b in zip(u, ray)) + r for ray in fan.rays]
        cmax = max(cs)
        if cmax == 0:
            raise InternalCheckError(
                f"all c_i zero for some u: u={u} at dilation r={r}")
        alpha_u = Fraction(r, cmax)
        if best is None or alpha_u < best[0]:
            best = (alpha_u, u, cs.index(cmax))
    if best is None:
        raise InternalCheckError(
            f"no lattice points found in {r}P; the origin should always "
            f"be one")
    return best


def toric_alpha(fan: FanData,
                point_cap: int = DEFAULT_POINT_CAP) -> ToricAlphaReport:
    """Exact alpha_F via lattice-point lct minimization over rP, with the
    dilation-stability and alpha <= 1/2 self-checks."""
    P, r = polar_and_dilate(fan)
    alpha, u, ray = _alpha_at_dilation(fan, P, r, point_cap)
    # the doubled box has at most 2^d times as many candidates
    alpha2, _, _ = _alpha_at_dilation(fan, P, 2 * r,
                                      point_cap * 2 ** fan.d)
    if alpha2 != alpha:
        raise InternalCheckError(
            f"dilation instability: alpha={alpha} at r={r} but "
            f"alpha={alpha2} at r={2 * r}")
    if alpha > Fraction(1, 2):
        raise InternalCheckError(
            f"alpha = {alpha} exceeds 1/2, impossible for a toric Fano "
            f"variety; witness u={u}")
    volume = anticanonical_volume(fan)
    d = fan.d
    witness_frac = tuple(Fraction(a, r) for a in u)
    return ToricAlphaReport(
        r=r,
        alpha=alpha,
        witness_u=u,
        witness_ray=ray,
        witness_is_vertex=witness_frac in P.vertices,
        volume=volume,
        bound=volume / (2 ** d * math.factorial(d + 1)),
    )


def anticanonical_volume(fan: FanData) -> Fraction:
    """vol(-K_X) = d! * vol(P), exact.

    P is coned from the interior origin over its facets; each facet (the
    tight locus of one ray) is triangulated recursively by pivoting on its
    lexicographically smallest vertex, and each resulting simplex
    contributes |det| of its vertex matrix.
    """
    P, _ = polar_and_dilate(fan)
    d = fan.d
    total = Fraction(0)
    for ray in fan.rays:
        face = [u for u in P.vertices if _dot(u, ray) == -1]
        for simplex in _triangulate_face(P, face, d - 1):
            if len(simplex) != d:
                continue  # lower-dimensional artifact, measure zero
            total += abs(_det([list(u) for u in simplex]))
    return total


def _triangulate_face(P: RationalPolytope, verts: list, dim: int):
    """Vertex tuples of a simplicial decomposition of the face spanned by
    `verts`.  Degenerate branches yield short or flat tuples, which the
    caller discards (their determinants vanish)."""
    if len(verts) <= dim + 1 or dim == 0:
        return [tuple(verts)]
    apex = min(verts)
    out = []
    seen: set = set()
    for ray in P.rays:
        sub = [u for u in verts if _dot(u, ray) == -1]
        key = frozenset(sub)
        if (apex in sub or len(sub) == len(verts) or len(sub) < dim
                or key in seen):
            continue
        seen.add(key)
        for s in _triangulate_face(P, sub, dim - 1):
            out.append((apex,) + s)
    return out
