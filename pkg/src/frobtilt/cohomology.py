"""Exact line-bundle cohomology on smooth complete toric varieties.

H^p(X, O(D)) is graded by the character lattice; the weight-m piece is the
reduced simplicial cohomology H~^{p-1} of the full subcomplex of the fan's
ray nerve on Neg(m) = {rho : <m, v_rho> < -a_rho}.  Weights are grouped
into sign-pattern regions (one inequality per ray), so each fan needs the
reduced-cohomology ranks of every vertex subset only once; per divisor only
the regions whose subcomplex has nonzero reduced cohomology are examined,
counted exactly by lattice point enumeration.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction
from typing import Optional

from .fan import DivisorClass, Fan, TorusDivisor, canonical_divisor, divisor_class
from .lattice import (
    EQ,
    LE,
    IntVec,
    LinearSystem,
    UnboundedSystemError,
    constraint,
    dot,
    feasible,
    integer_rank,
    lattice_points,
)


class InfiniteCohomologyError(ArithmeticError):
    """An unbounded weight region carries nonzero reduced cohomology.

    On a complete fan this cannot happen; it signals that an incomplete
    fan slipped past validation.
    """


@dataclass(frozen=True)
class WeightPattern:
    """A sign pattern over rays together with its weight region and ranks."""

    neg_rays: tuple[int, ...]
    region: LinearSystem
    reduced_ranks: tuple[int, ...]  # index q holds rank H~^{q-1}
    point_count: int

    def contribution(self) -> tuple[int, ...]:
        return tuple(self.point_count * r for r in self.reduced_ranks)


@dataclass(frozen=True)
class CohomologyVector:
    """(h^0, ..., h^n), optionally with the contributing weight patterns."""

    dims: tuple[int, ...]
    patterns: Optional[tuple[WeightPattern, ...]] = None

    def __getitem__(self, q: int) -> int:
        return self.dims[q]

    def euler(self) -> int:
        return sum((-1) ** q * h for q, h in enumerate(self.dims))

    def top_nonzero(self) -> Optional[int]:
        nz = [q for q, h in enumerate(self.dims) if h]
        return nz[-1] if nz else None


# ---------------------------------------------------------------------------
# reduced cohomology of ray subcomplexes, cached per fan


def _subcomplex_ranks(fan: Fan, verts: frozenset[int]) -> tuple[int, ...]:
    """Ranks of H~^{-1..n-1} of the full subcomplex on the given rays.

    Simplices are the ray subsets spanning a cone of the fan, i.e. the
    subsets of the maximal cones' ray sets (the fan is simplicial).
    """
    cache = fan._rank_cache
    hit = cache.get(verts)
    if hit is not None:
        return hit
    n = fan.dim
    faces: set[tuple[int, ...]] = set()
    for cone in fan.max_cones:
        inside = tuple(i for i in cone if i in verts)
        for k in range(1, len(inside) + 1):
            faces.update(itertools.combinations(inside, k))
    by_dim: list[list[tuple[int, ...]]] = [[] for _ in range(n)]
    for f in faces:
        by_dim[len(f) - 1].append(f)
    for lst in by_dim:
        lst.sort()
    index = [{f: i for i, f in enumerate(lst)} for lst in by_dim]

    # coboundary delta_p: C^p -> C^{p+1}; store rank of each
    co_rank = [0] * n  # co_rank[p] = rank delta_p for p = 0..n-1 (delta_{n-1}=0)
    for p in range(n - 1):
        rows = []
        for tau in by_dim[p + 1]:
            row = [0] * len(by_dim[p])
            for i in range(len(tau)):
                face = tau[:i] + tau[i + 1 :]
                row[index[p][face]] = (-1) ** i
            rows.append(row)
        if rows:
            co_rank[p] = integer_rank(rows)

    # augmentation C^{-1} = Q -> C^0
    aug_rank = 1 if by_dim[0] else 0
    ranks = [0] * (n + 1)
    # q = 0 entry is rank H~^{-1}
    ranks[0] = 1 - aug_rank
    for p in range(n):
        dim_cp = len(by_dim[p])
        below = aug_rank if p == 0 else co_rank[p - 1]
        above = co_rank[p] if p < n - 1 else 0
        ranks[p + 1] = dim_cp - above - below
    result = tuple(ranks)
    cache[verts] = result
    return result


def _active_patterns(fan: Fan) -> tuple[tuple[frozenset[int], tuple[int, ...]], ...]:
    """All ray subsets whose subcomplex has nonzero reduced cohomology."""
    key = "__active__"
    cache = fan._rank_cache
    hit = cache.get(key)
    if hit is not None:
        return hit
    out = []
    r = fan.n_rays
    for bits in range(1 << r):
        verts = frozenset(i for i in range(r) if bits >> i & 1)
        ranks = _subcomplex_ranks(fan, verts)
        if any(ranks):
            out.append((verts, ranks))
    out.sort(key=lambda item: (len(item[0]), sorted(item[0])))
    result = tuple(out)
    cache[key] = result
    return result


def _pattern_region(fan: Fan, coeffs: IntVec, neg: frozenset[int]) -> LinearSystem:
    """Weights m with <m, v_rho> <= -a_rho - 1 on neg rays, >= -a_rho off them.

    The strict "<" of the negativity condition is integer-tight, so it is
    stored as "<= -a - 1".
    """
    cons = []
    for i, ray in enumerate(fan.rays):
        if i in neg:
            cons.append(constraint(ray, LE, -coeffs[i] - 1))
        else:
            cons.append(constraint(ray, ">=", -coeffs[i]))
    return LinearSystem(fan.dim, tuple(cons))


# ---------------------------------------------------------------------------
# public operations


def weight_cohomology(fan: Fan, D: TorusDivisor, m: IntVec) -> tuple[int, ...]:
    """(h^0_m, ..., h^n_m) for the single weight m."""
    fan.require_valid()
    neg = frozenset(
        i for i, ray in enumerate(fan.rays) if dot(m, ray) < -D.coeffs[i]
    )
    return _subcomplex_ranks(fan, neg)


def weight_patterns(fan: Fan, D: TorusDivisor) -> tuple[WeightPattern, ...]:
    """The cohomologically active sign patterns of D with exact point counts."""
    fan.require_valid()
    out = []
    for verts, ranks in _active_patterns(fan):
        region = _pattern_region(fan, D.coeffs, verts)
        if not feasible(region):
            continue
        try:
            pts = lattice_points(region)
        except UnboundedSystemError as exc:
            raise InfiniteCohomologyError(
                f"weight region of sign pattern {sorted(verts)} is unbounded; "
                "the fan cannot be complete"
            ) from exc
        if not pts:
            continue
        out.append(WeightPattern(tuple(sorted(verts)), region, ranks, len(pts)))
    return tuple(out)


def cohomology(fan: Fan, D: TorusDivisor, with_patterns: bool = False) -> CohomologyVector:
    """All cohomology dimensions of O(D), exactly.

    Dimensions depend only on the divisor class, so results are cached per
    fan under the canonical class coordinates.
    """
    fan.require_valid()
    if with_patterns:
        pats = weight_patterns(fan, D)
        dims = [0] * (fan.dim + 1)
        for p in pats:
            for q, v in enumerate(p.contribution()):
                dims[q] += v
        return CohomologyVector(tuple(dims), pats)
    cls = divisor_class(D)
    cache = fan._cohomology_cache
    hit = cache.get(cls.coords)
    if hit is not None:
        return CohomologyVector(hit)
    vec = cohomology(fan, cls.representative(), with_patterns=True)
    cache[cls.coords] = vec.dims
    return CohomologyVector(vec.dims)


def cohomology_of_class(cls: DivisorClass) -> CohomologyVector:
    return cohomology(cls.fan, cls.representative())


def ext_dims(fan: Fan, L: DivisorClass, M: DivisorClass) -> CohomologyVector:
    """Ext^*(O(L), O(M)) = H^*(X, O(M - L)) for line bundles."""
    return cohomology(fan, (M - L).representative())


def euler_chi(fan: Fan, L: DivisorClass, M: DivisorClass) -> int:
    """Alternating sum of the Ext dimensions; the K-theoretic pairing."""
    return ext_dims(fan, L, M).euler()


def h0(fan: Fan, D: TorusDivisor) -> int:
    return cohomology(fan, D).dims[0]


def serre_dual_divisor(D: TorusDivisor) -> TorusDivisor:
    """K - D, the Serre-duality partner of D."""
    return canonical_divisor(D.fan) - D
