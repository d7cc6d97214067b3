"""Fans of smooth projective toric varieties and their divisor theory.

A Fan is the combinatorial model of the variety: primitive ray generators
in Z^n plus the maximal cones as ray index sets.  Completeness is certified
by a surrogate (ridge pairing + dual-graph connectivity + randomized point
location), which is exact for the intended inputs; see validate().

Divisor classes live in Pic = Z^{#rays} / M, coordinatized once and for all
through the row Hermite form of the ray relation matrix, so class equality
is plain integer-vector equality.
"""

from __future__ import annotations

import itertools
import random
from dataclasses import dataclass, field
from functools import cached_property
from math import gcd

from .lattice import (
    IntVec,
    determinant,
    dot,
    hermite_normal_form,
    solve_integer,
    solve_rational,
)

_POINT_LOCATION_TRIALS = 20
_POINT_LOCATION_SEED = 0x5EED


class InvalidFanError(ValueError):
    """The fan is not a valid smooth complete simplicial fan."""


@dataclass(frozen=True)
class ValidationReport:
    primitive: bool
    simplicial: bool
    smooth: bool
    ridge_paired: bool
    connected: bool
    point_location_ok: bool
    failures: tuple[str, ...]

    @property
    def complete(self) -> bool:
        return self.ridge_paired and self.connected and self.point_location_ok

    @property
    def ok(self) -> bool:
        return not self.failures


@dataclass(frozen=True)
class Fan:
    """dim, primitive rays in Z^dim, and maximal cones as ray index tuples."""

    dim: int
    rays: tuple[IntVec, ...]
    max_cones: tuple[tuple[int, ...], ...]

    def __post_init__(self) -> None:
        rays = tuple(tuple(int(x) for x in r) for r in self.rays)
        cones = tuple(sorted(set(tuple(sorted(set(map(int, c)))) for c in self.max_cones)))
        object.__setattr__(self, "rays", rays)
        object.__setattr__(self, "max_cones", cones)
        if self.dim < 1:
            raise ValueError("fan dimension must be >= 1")
        if not rays or any(len(r) != self.dim for r in rays):
            raise ValueError("rays must be nonempty vectors of length dim")
        for c in cones:
            if any(not 0 <= i < len(rays) for i in c):
                raise ValueError(f"cone {c} references a missing ray")
        if not cones:
            raise ValueError("fan needs at least one maximal cone")

    @cached_property
    def _hash(self) -> int:
        return hash((self.dim, self.rays, self.max_cones))

    def __hash__(self) -> int:
        return self._hash

    @property
    def n_rays(self) -> int:
        return len(self.rays)

    def cone_matrix(self, cone: tuple[int, ...]) -> tuple[IntVec, ...]:
        return tuple(self.rays[i] for i in cone)

    @cached_property
    def validation(self) -> "ValidationReport":
        return validate(self)

    def require_valid(self) -> None:
        rep = self.validation
        if not rep.ok:
            raise InvalidFanError("; ".join(rep.failures))

    # -- Picard coordinates -------------------------------------------------

    @cached_property
    def _pic(self) -> tuple[tuple[IntVec, ...], tuple[int, ...], tuple[int, ...]]:
        """HNF rows of the principal-divisor lattice and its pivot columns.

        The lattice is spanned by the rows g_i = (<e_i, v_rho>)_rho; the
        fixed section of the quotient places class coordinates on the
        non-pivot columns.
        """
        G = tuple(tuple(r[i] for r in self.rays) for i in range(self.dim))
        H, _ = hermite_normal_form(G)
        rows = tuple(row for row in H if any(row))
        pivots = []
        for row in rows:
            p = next(j for j, x in enumerate(row) if x)
            if row[p] != 1:
                raise InvalidFanError("Picard group has torsion; fan is not smooth+complete")
            pivots.append(p)
        nonpivots = tuple(j for j in range(self.n_rays) if j not in pivots)
        return rows, tuple(pivots), nonpivots

    @property
    def picard_rank(self) -> int:
        return len(self._pic[2])

    # mutable per-fan caches, filled lazily; a Fan is immutable otherwise
    @cached_property
    def _rank_cache(self) -> dict:
        return {}

    @cached_property
    def _cohomology_cache(self) -> dict:
        return {}


@dataclass(frozen=True)
class TorusDivisor:
    """An invariant divisor sum(a_rho D_rho), one coefficient per ray."""

    fan: Fan
    coeffs: IntVec

    def __post_init__(self) -> None:
        object.__setattr__(self, "coeffs", tuple(int(x) for x in self.coeffs))
        if len(self.coeffs) != self.fan.n_rays:
            raise ValueError("one coefficient per ray required")

    def __add__(self, other: "TorusDivisor") -> "TorusDivisor":
        return TorusDivisor(self.fan, tuple(a + b for a, b in zip(self.coeffs, other.coeffs)))

    def __sub__(self, other: "TorusDivisor") -> "TorusDivisor":
        return TorusDivisor(self.fan, tuple(a - b for a, b in zip(self.coeffs, other.coeffs)))

    def __neg__(self) -> "TorusDivisor":
        return TorusDivisor(self.fan, tuple(-a for a in self.coeffs))

    def __rmul__(self, k: int) -> "TorusDivisor":
        return TorusDivisor(self.fan, tuple(k * a for a in self.coeffs))


@dataclass(frozen=True, order=True)
class DivisorClass:
    """A point of Pic in the fixed HNF-normalized coordinates."""

    coords: IntVec = field(compare=True)
    fan: Fan = field(compare=False)

    def __add__(self, other: "DivisorClass") -> "DivisorClass":
        return DivisorClass(tuple(a + b for a, b in zip(self.coords, other.coords)), self.fan)

    def __sub__(self, other: "DivisorClass") -> "DivisorClass":
        return DivisorClass(tuple(a - b for a, b in zip(self.coords, other.coords)), self.fan)

    def __neg__(self) -> "DivisorClass":
        return DivisorClass(tuple(-a for a in self.coords), self.fan)

    def representative(self) -> TorusDivisor:
        """The divisor with the class coordinates on non-pivot rays, 0 elsewhere."""
        _, _, nonpivots = self.fan._pic
        coeffs = [0] * self.fan.n_rays
        for j, v in zip(nonpivots, self.coords):
            coeffs[j] = v
        return TorusDivisor(self.fan, tuple(coeffs))


def divisor_class(D: TorusDivisor) -> DivisorClass:
    """Reduce the coefficient vector modulo the principal-divisor lattice."""
    fan = D.fan
    rows, pivots, nonpivots = fan._pic
    v = list(D.coeffs)
    for row, p in zip(rows, pivots):
        q = v[p] // row[p]
        if q:
            v = [a - q * b for a, b in zip(v, row)]
    return DivisorClass(tuple(v[j] for j in nonpivots), fan)


@dataclass(frozen=True)
class CartierData:
    """Per maximal cone, the lattice functional m with <m, v_rho> = -a_rho."""

    divisor: TorusDivisor
    vertices: tuple[IntVec, ...]  # aligned with fan.max_cones


def cartier_data(D: TorusDivisor) -> CartierData:
    fan = D.fan
    out = []
    for cone in fan.max_cones:
        A = fan.cone_matrix(cone)
        b = tuple(-D.coeffs[i] for i in cone)
        m = solve_integer(A, b)
        if m is None:
            raise InvalidFanError(f"cone {cone} is not smooth: no integral Cartier data")
        assert all(dot(m, fan.rays[i]) == -D.coeffs[i] for i in cone)
        out.append(m)
    return CartierData(D, tuple(out))


def canonical_divisor(fan: Fan) -> TorusDivisor:
    """K = -sum(D_rho)."""
    return TorusDivisor(fan, tuple(-1 for _ in fan.rays))


def principal_divisor(fan: Fan, w: IntVec) -> TorusDivisor:
    """div of the character with exponent w: coefficients <w, v_rho>."""
    return TorusDivisor(fan, tuple(dot(w, r) for r in fan.rays))


# ---------------------------------------------------------------------------
# validation


def validate(fan: Fan) -> ValidationReport:
    failures: list[str] = []
    n = fan.dim

    primitive = True
    for i, r in enumerate(fan.rays):
        if all(x == 0 for x in r):
            primitive = False
            failures.append(f"ray {i} is zero")
        else:
            g = 0
            for x in r:
                g = gcd(g, x)
            if g != 1:
                primitive = False
                failures.append(f"ray {i} = {r} is not primitive (gcd {g})")
    if len(set(fan.rays)) != fan.n_rays:
        primitive = False
        failures.append("rays are not pairwise distinct")

    used = set(itertools.chain.from_iterable(fan.max_cones))
    if used != set(range(fan.n_rays)):
        failures.append("some ray lies in no maximal cone")

    simplicial = True
    smooth = True
    for c in fan.max_cones:
        if len(c) != n:
            simplicial = False
            failures.append(f"cone {c} does not have {n} rays")
            continue
        d = determinant(fan.cone_matrix(c))
        if d == 0:
            simplicial = False
            failures.append(f"cone {c} is degenerate (determinant 0)")
        elif abs(d) != 1:
            smooth = False
            failures.append(f"cone {c} is not smooth (determinant {d})")

    ridge_paired = True
    connected = True
    if simplicial:
        ridges: dict[tuple[int, ...], list[int]] = {}
        for ci, c in enumerate(fan.max_cones):
            for ridge in itertools.combinations(c, n - 1):
                ridges.setdefault(ridge, []).append(ci)
        for ridge, owners in sorted(ridges.items()):
            if len(owners) != 2:
                ridge_paired = False
                failures.append(
                    f"ridge {ridge} lies in {len(owners)} maximal cone(s), expected 2"
                )
        # dual graph connectivity over shared ridges
        seen = {0}
        frontier = [0]
        while frontier:
            ci = frontier.pop()
            for owners in ridges.values():
                if ci in owners:
                    for cj in owners:
                        if cj not in seen:
                            seen.add(cj)
                            frontier.append(cj)
        if len(seen) != len(fan.max_cones):
            connected = False
            failures.append("dual graph of maximal cones is disconnected")
    else:
        ridge_paired = connected = False

    point_location_ok = True
    if simplicial and ridge_paired and connected:
        rng = random.Random(_POINT_LOCATION_SEED)
        for t in range(_POINT_LOCATION_TRIALS):
            x = tuple(rng.randint(-99, 99) for _ in range(n))
            if all(v == 0 for v in x):
                continue
            if not any(_cone_contains(fan, c, x) for c in fan.max_cones):
                point_location_ok = False
                failures.append(f"direction {x} lies in no maximal cone")
                break
    else:
        point_location_ok = False

    return ValidationReport(
        primitive=primitive,
        simplicial=simplicial,
        smooth=smooth,
        ridge_paired=ridge_paired,
        connected=connected,
        point_location_ok=point_location_ok,
        failures=tuple(failures),
    )


def _cone_contains(fan: Fan, cone: tuple[int, ...], x: IntVec) -> bool:
    cols = tuple(zip(*fan.cone_matrix(cone)))  # columns = ray generators
    lam = solve_rational(cols, x)
    return lam is not None and all(v >= 0 for v in lam)


# ---------------------------------------------------------------------------
# constructors


def projective_space(n: int) -> Fan:
    """Rays e_1..e_n and -(e_1+..+e_n); cones all n-subsets."""
    if n < 1:
        raise ValueError("n must be >= 1")
    rays = [tuple(int(i == j) for j in range(n)) for i in range(n)]
    rays.append(tuple(-1 for _ in range(n)))
    cones = list(itertools.combinations(range(n + 1), n))
    return Fan(n, tuple(rays), tuple(cones))


def hirzebruch(a: int) -> Fan:
    """The ruled surface with rays (1,0),(0,1),(-1,a),(0,-1)."""
    if a < 0:
        raise ValueError("a must be >= 0")
    rays = ((1, 0), (0, 1), (-1, a), (0, -1))
    cones = ((0, 1), (1, 2), (2, 3), (3, 0))
    return Fan(2, rays, cones)


def product(f1: Fan, f2: Fan) -> Fan:
    """Product fan with coordinates blocked as (f1 block, f2 block)."""
    n1, n2 = f1.dim, f2.dim
    rays = [r + (0,) * n2 for r in f1.rays]
    rays += [(0,) * n1 + r for r in f2.rays]
    off = f1.n_rays
    cones = [
        c1 + tuple(i + off for i in c2)
        for c1 in f1.max_cones
        for c2 in f2.max_cones
    ]
    return Fan(n1 + n2, tuple(rays), tuple(cones))


def star_subdivision(fan: Fan, cone: tuple[int, ...]) -> Fan:
    """Insert the ray sum of the given smooth cone and re-triangulate its star.

    Models the blowup of the torus orbit of that cone; requires the index
    set to be a face of some maximal cone with at least two rays.
    """
    target = tuple(sorted(set(cone)))
    if len(target) < 2:
        raise ValueError("star subdivision target needs at least two rays")
    owners = [c for c in fan.max_cones if set(target) <= set(c)]
    if not owners:
        raise ValueError(f"{target} is not a face of any maximal cone")
    new_ray = tuple(sum(fan.rays[i][k] for i in target) for k in range(fan.dim))
    if new_ray in fan.rays:
        raise ValueError("subdivision ray already present")
    new_idx = fan.n_rays
    cones = []
    for c in fan.max_cones:
        if set(target) <= set(c):
            for drop in target:
                cones.append(tuple(sorted((set(c) - {drop}) | {new_idx})))
        else:
            cones.append(c)
    return Fan(fan.dim, fan.rays + (new_ray,), tuple(cones))
