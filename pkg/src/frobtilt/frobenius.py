"""Splitting of line bundles under the toric power endomorphisms.

The degree-ell endomorphism F_ell acts as the ell-th power map on the
torus; the pushforward of O(D) splits into the ell^n line bundles indexed
by the residues u in {0..ell-1}^n, with coefficients
b_rho(u) = floor((a_rho + <u, v_rho>) / ell).

The full summand set over every ell is computed exactly from the chambers
of the arrangement {<t, v_rho> = k} inside the half-open unit cube; the
ell sweep is kept alongside as an independent route and supplies the
minimal witness ell of each class.
"""

from __future__ import annotations

import itertools
from collections import Counter
from dataclasses import dataclass
from fractions import Fraction

from .fan import DivisorClass, Fan, TorusDivisor, divisor_class
from .lattice import LE, LT, IntVec, LinearSystem, constraint, dot, feasible, feasible_point


@dataclass(frozen=True)
class FrobSummand:
    """One summand of the degree-ell pushforward of O(D)."""

    residue: IntVec
    ell: int
    divisor: TorusDivisor
    cls: DivisorClass


@dataclass(frozen=True)
class FrobWitness:
    cls: DivisorClass
    chamber: LinearSystem  # region of t in [0,1)^n realizing the class
    min_ell: int


@dataclass(frozen=True)
class FrobSet:
    """The finite set of summand classes with one witness per class."""

    fan: Fan
    witnesses: tuple[FrobWitness, ...]  # sorted by class coordinates

    @property
    def classes(self) -> tuple[DivisorClass, ...]:
        return tuple(w.cls for w in self.witnesses)

    def __len__(self) -> int:
        return len(self.witnesses)

    def __iter__(self):
        return iter(self.classes)

    def __contains__(self, cls: DivisorClass) -> bool:
        return any(w.cls == cls for w in self.witnesses)


def summand_divisor(fan: Fan, D: TorusDivisor, ell: int, u: IntVec) -> TorusDivisor:
    coeffs = tuple(
        (D.coeffs[i] + dot(u, ray)) // ell for i, ray in enumerate(fan.rays)
    )
    return TorusDivisor(fan, coeffs)


def pushforward_detail(fan: Fan, D: TorusDivisor, ell: int) -> list[FrobSummand]:
    """All ell^n summands, one per residue vector."""
    fan.require_valid()
    if ell < 1:
        raise ValueError("ell must be a positive integer")
    out = []
    for u in itertools.product(range(ell), repeat=fan.dim):
        div = summand_divisor(fan, D, ell, u)
        out.append(FrobSummand(u, ell, div, divisor_class(div)))
    return out


def pushforward_summands(fan: Fan, D: TorusDivisor, ell: int) -> Counter:
    """Multiset of summand classes of the degree-ell pushforward of O(D)."""
    fan.require_valid()
    if ell < 1:
        raise ValueError("ell must be a positive integer")
    counts: Counter = Counter()
    for u in itertools.product(range(ell), repeat=fan.dim):
        counts[divisor_class(summand_divisor(fan, D, ell, u))] += 1
    return counts


def frob_set(fan: Fan) -> FrobSet:
    """The exact set of classes appearing in some pushforward of O.

    Chamber enumeration over the floor vector b: ray by ray, each partial
    assignment keeps only values whose chamber is still nonempty.
    """
    fan.require_valid()
    chambers: dict[DivisorClass, LinearSystem] = {}
    ranges = []
    for ray in fan.rays:
        lo = sum(min(x, 0) for x in ray)
        hi = sum(max(x, 0) for x in ray)
        ranges.append(range(lo, hi + 1))

    def descend(k: int, prefix: tuple[int, ...]) -> None:
        sys = _chamber_system_partial(fan, prefix)
        if not feasible(sys):
            return
        if k == fan.n_rays:
            cls = divisor_class(TorusDivisor(fan, prefix))
            chambers.setdefault(cls, sys)
            return
        for b in ranges[k]:
            descend(k + 1, prefix + (b,))

    descend(0, ())

    min_ell = _witness_sweep(fan, set(chambers))
    witnesses = tuple(
        FrobWitness(cls, chambers[cls], min_ell[cls])
        for cls in sorted(chambers)
    )
    return FrobSet(fan, witnesses)


def _chamber_system_partial(fan: Fan, bs: tuple[int, ...]) -> LinearSystem:
    """t in [0,1)^n with <t, v_rho> in [b_rho, b_rho + 1) for assigned rays."""
    n = fan.dim
    cons = []
    for i in range(n):
        e = tuple(int(i == j) for j in range(n))
        cons.append(constraint(e, ">=", 0))
        cons.append(constraint(e, LT, 1))
    for ray, b in zip(fan.rays, bs):
        cons.append(constraint(ray, ">=", b))
        cons.append(constraint(ray, LT, b + 1))
    return LinearSystem(n, tuple(cons))


def _witness_denominator_bound(fan: Fan, chambers) -> int:
    """An ell guaranteed to realize every chamber class at once.

    Each chamber contains a rational point t; the class is realized at any
    ell divisible by the denominators of t, so the lcm over one witness
    point per chamber suffices.
    """
    bound = 1
    for sys in chambers:
        point = feasible_point(sys)
        assert point is not None
        for f in point:
            d = Fraction(f).denominator
            g = _gcd(bound, d)
            bound = bound // g * d
    return bound


def _witness_sweep(fan: Fan, classes: set[DivisorClass]) -> dict[DivisorClass, int]:
    found: dict[DivisorClass, int] = {}
    ell = 0
    while len(found) < len(classes):
        ell += 1
        for cls in pushforward_summands(fan, _zero(fan), ell):
            if cls in classes and cls not in found:
                found[cls] = ell
    return found


def minimal_stabilizing_ell(fan: Fan) -> int:
    """Least ell whose single pushforward of O contains every frob class."""
    fs = frob_set(fan)
    classes = set(fs.classes)
    bound = _witness_denominator_bound(fan, (w.chamber for w in fs.witnesses))
    for ell in range(1, bound + 1):
        if classes <= set(pushforward_summands(fan, _zero(fan), ell)):
            return ell
    raise AssertionError("stabilization bound violated; chamber witnesses inconsistent")


def _zero(fan: Fan) -> TorusDivisor:
    return TorusDivisor(fan, (0,) * fan.n_rays)


def _gcd(a: int, b: int) -> int:
    while b:
        a, b = b, a % b
    return abs(a)
