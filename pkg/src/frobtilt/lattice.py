"""Exact integer and rational linear algebra.

All arithmetic is arbitrary precision: integer vectors and matrices are
plain tuples of Python ints, rational data uses fractions.Fraction.  No
floating point is used anywhere; strict inequalities are decided exactly
(via an auxiliary slack maximization, never a numeric tolerance).
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Optional, Sequence

IntVec = tuple[int, ...]
RatVec = tuple[Fraction, ...]
IntMat = tuple[IntVec, ...]

# Canonical constraint relations.  Input helpers also accept ">=" and ">",
# which are flipped on construction.
LE = "<="
LT = "<"
EQ = "=="


class InfeasibleSystemError(ValueError):
    """Raised when an operation requires a feasible system."""


class UnboundedSystemError(ValueError):
    """Raised when an operation requires a bounded solution set."""


@dataclass(frozen=True)
class Constraint:
    """A single linear condition ``coeffs . x  rel  rhs``."""

    coeffs: RatVec
    rel: str
    rhs: Fraction


@dataclass(frozen=True)
class LinearSystem:
    """A conjunction of linear constraints over dim free rational variables."""

    dim: int
    constraints: tuple[Constraint, ...]

    def __post_init__(self) -> None:
        if self.dim <= 0:
            raise ValueError("system dimension must be positive")
        for c in self.constraints:
            if len(c.coeffs) != self.dim:
                raise ValueError("constraint dimension mismatch")


def constraint(coeffs: Sequence, rel: str, rhs) -> Constraint:
    """Build a constraint, normalizing >=, > to <=, < by negation."""
    cs = tuple(Fraction(c) for c in coeffs)
    b = Fraction(rhs)
    if rel in (">=", ">"):
        cs = tuple(-c for c in cs)
        b = -b
        rel = LE if rel == ">=" else LT
    if rel == "=":
        rel = EQ
    if rel not in (LE, LT, EQ):
        raise ValueError(f"unknown relation {rel!r}")
    return Constraint(cs, rel, b)


def system(dim: int, constraints: Iterable) -> LinearSystem:
    """Assemble a LinearSystem from (coeffs, rel, rhs) triples or Constraints."""
    rows = []
    for c in constraints:
        rows.append(c if isinstance(c, Constraint) else constraint(*c))
    return LinearSystem(dim, tuple(rows))


# ---------------------------------------------------------------------------
# integer linear algebra


def dot(u: Sequence[int], v: Sequence[int]) -> int:
    return sum(a * b for a, b in zip(u, v, strict=True))


def transpose(A: Sequence[Sequence]) -> IntMat:
    return tuple(zip(*A))


def identity_matrix(n: int) -> IntMat:
    return tuple(tuple(int(i == j) for j in range(n)) for i in range(n))


def hermite_normal_form(A: Sequence[Sequence[int]]) -> tuple[IntMat, IntMat]:
    """Row-style Hermite normal form.

    Returns (H, U) with H = U.A, U unimodular, H in row echelon form with
    positive pivots and the entries above each pivot reduced into
    [0, pivot).
    """
    H = [list(map(int, row)) for row in A]
    if not H or not H[0]:
        raise ValueError("matrix must be nonempty")
    m, n = len(H), len(H[0])
    U = [list(row) for row in identity_matrix(m)]
    r = 0
    for c in range(n):
        if r == m:
            break
        # Euclid on column c: swap the minimal entry up, reduce the others.
        while True:
            nz = [i for i in range(r, m) if H[i][c] != 0]
            if not nz:
                break
            i0 = min(nz, key=lambda i: abs(H[i][c]))
            if i0 != r:
                H[r], H[i0] = H[i0], H[r]
                U[r], U[i0] = U[i0], U[r]
            if len(nz) == 1:
                break
            p = H[r][c]
            for i in range(r + 1, m):
                if H[i][c]:
                    q = H[i][c] // p
                    if q:
                        H[i] = [x - q * y for x, y in zip(H[i], H[r])]
                        U[i] = [x - q * y for x, y in zip(U[i], U[r])]
        if H[r][c] == 0:
            continue
        if H[r][c] < 0:
            H[r] = [-x for x in H[r]]
            U[r] = [-x for x in U[r]]
        p = H[r][c]
        for i in range(r):
            q = H[i][c] // p
            if q:
                H[i] = [x - q * y for x, y in zip(H[i], H[r])]
                U[i] = [x - q * y for x, y in zip(U[i], U[r])]
        r += 1
    return tuple(map(tuple, H)), tuple(map(tuple, U))


def solve_integer(A: Sequence[Sequence[int]], b: Sequence[int]) -> Optional[IntVec]:
    """One integer solution of A.x = b, or None when none exists.

    Works through the column-style HNF: with H = U.A^T we have
    A.U^T = H^T, and H^T.y = b is triangular in the pivot order.
    """
    m = len(A)
    n = len(A[0])
    if len(b) != m:
        raise ValueError("dimension mismatch")
    H, U = hermite_normal_form(transpose(A))  # H: n x m
    y = [0] * n
    resid = [int(v) for v in b]
    for i in range(n):
        row = H[i]
        p = next((j for j in range(m) if row[j] != 0), None)
        if p is None:
            break
        num, den = resid[p], row[p]
        if num % den:
            return None
        q = num // den
        y[i] = q
        if q:
            resid = [r - q * h for r, h in zip(resid, row)]
    if any(resid):
        return None
    x = tuple(sum(U[i][k] * y[i] for i in range(n)) for k in range(n))
    assert all(dot(A[i], x) == b[i] for i in range(m))
    return x


def determinant(A: Sequence[Sequence[int]]) -> int:
    """Exact determinant by fraction-free (Bareiss) elimination."""
    M = [list(map(int, row)) for row in A]
    n = len(M)
    if any(len(row) != n for row in M):
        raise ValueError("matrix must be square")
    sign = 1
    prev = 1
    for k in range(n - 1):
        if M[k][k] == 0:
            swap = next((i for i in range(k + 1, n) if M[i][k] != 0), None)
            if swap is None:
                return 0
            M[k], M[swap] = M[swap], M[k]
            sign = -sign
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                M[i][j] = (M[i][j] * M[k][k] - M[i][k] * M[k][j]) // prev
            M[i][k] = 0
        prev = M[k][k]
    return sign * M[n - 1][n - 1]


def integer_rank(A: Sequence[Sequence[int]]) -> int:
    """Rank over the rationals of an integer matrix (Bareiss elimination)."""
    M = [list(map(int, row)) for row in A]
    if not M or not M[0]:
        return 0
    m, n = len(M), len(M[0])
    r = 0
    prev = 1
    for c in range(n):
        if r == m:
            break
        piv = next((i for i in range(r, m) if M[i][c] != 0), None)
        if piv is None:
            continue
        if piv != r:
            M[r], M[piv] = M[piv], M[r]
        p = M[r][c]
        for i in range(r + 1, m):
            if any(M[i][c:]):
                mic = M[i][c]
                M[i] = [
                    (M[i][j] * p - mic * M[r][j]) // prev if j >= c else 0
                    for j in range(n)
                ]
        prev = p
        r += 1
    return r


def solve_rational(A: Sequence[Sequence], b: Sequence) -> Optional[RatVec]:
    """Solve a square nonsingular rational system exactly; None if singular."""
    n = len(A)
    M = [[Fraction(x) for x in row] + [Fraction(v)] for row, v in zip(A, b, strict=True)]
    for c in range(n):
        piv = next((i for i in range(c, n) if M[i][c] != 0), None)
        if piv is None:
            return None
        M[c], M[piv] = M[piv], M[c]
        p = M[c][c]
        M[c] = [x / p for x in M[c]]
        for i in range(n):
            if i != c and M[i][c]:
                f = M[i][c]
                M[i] = [x - f * y for x, y in zip(M[i], M[c])]
    return tuple(M[i][n] for i in range(n))


# ---------------------------------------------------------------------------
# exact simplex (fraction-free tableau with integer pivoting, Bland's rule)

_OPTIMAL = "optimal"
_INFEASIBLE = "infeasible"
_UNBOUNDED = "unbounded"


def _scale_to_int(coeffs: Sequence[Fraction], rhs: Fraction) -> tuple[list[int], int, int]:
    """Clear denominators; returns (int coeffs, int rhs, positive scale)."""
    lcm = 1
    for f in itertools.chain(coeffs, (rhs,)):
        d = f.denominator
        g = _gcd(lcm, d)
        lcm = lcm // g * d
    return [int(f * lcm) for f in coeffs], int(rhs * lcm), lcm


def _gcd(a: int, b: int) -> int:
    while b:
        a, b = b, a % b
    return abs(a)


class _Tableau:
    """Dense integer simplex tableau sharing one positive denominator.

    Pivoting uses the exact-division update T'[i][j] =
    (T[r][c]*T[i][j] - T[i][c]*T[r][j]) / den, so all entries stay
    integral (the standard integer-pivoting rule of exact LP codes).
    """

    def __init__(self, rows: list[list[int]], basis: list[int], ncols: int):
        self.rows = rows
        self.basis = basis
        self.ncols = ncols  # structural columns; column ncols is the rhs
        self.den = 1

    def pivot(self, r: int, c: int) -> None:
        rows = self.rows
        prow = rows[r]
        p = prow[c]
        assert p > 0
        den = self.den
        for i in range(len(rows)):
            if i == r:
                continue
            row = rows[i]
            f = row[c]
            if f:
                rows[i] = [(p * a - f * b) // den for a, b in zip(row, prow)]
            elif p != den:
                rows[i] = [(p * a) // den for a in row]
        self.den = p
        if r < len(self.basis):
            self.basis[r] = c

    def maximize(self, obj: list[int], allowed: Sequence[int],
                 stop_when_positive: bool = False) -> str:
        """Run simplex on the given objective row (modified in place)."""
        rows = self.rows
        nbody = len(self.basis)
        while True:
            if stop_when_positive and obj[self.ncols] > 0:
                return _OPTIMAL
            enter = next((j for j in allowed if obj[j] < 0), None)
            if enter is None:
                return _OPTIMAL
            # Bland ratio test: min rhs/entry over positive entries,
            # ties resolved by smallest basic column.
            best = None
            for i in range(nbody):
                a = rows[i][enter]
                if a <= 0:
                    continue
                r = rows[i][self.ncols]
                if best is None:
                    best = (i, r, a)
                else:
                    cmp = r * best[2] - best[1] * a
                    if cmp < 0 or (cmp == 0 and self.basis[i] < self.basis[best[0]]):
                        best = (i, r, a)
            if best is None:
                return _UNBOUNDED
            r0 = best[0]
            prow = rows[r0]
            p = prow[enter]
            den = self.den
            f = obj[enter]
            new_obj = [(p * a - f * b) // den for a, b in zip(obj, prow)]
            self.pivot(r0, enter)
            obj[:] = new_obj


def lp_maximize(dim: int, rows: Sequence[tuple[Sequence[Fraction], str, Fraction]],
                objective: Sequence[Fraction]) -> tuple[str, Optional[Fraction], Optional[RatVec]]:
    """Maximize objective.x over {x : rows}, x free, relations <= or ==.

    Returns (status, value, point); value and point are exact Fractions.
    """
    if dim <= 0:
        raise ValueError("dimension must be positive")
    # Structural columns: x+ (dim), x- (dim), then one slack per <= row,
    # then artificials as needed.
    nineq = sum(1 for _, rel, _ in rows if rel == LE)
    body: list[list[int]] = []
    kinds: list[tuple[str, int]] = []  # per row: ("slack"|"art", column)
    slack_at = 2 * dim
    art_rows: list[int] = []
    for coeffs, rel, rhs in rows:
        ic, ib, _ = _scale_to_int(tuple(coeffs), Fraction(rhs))
        if ib < 0:
            ic = [-v for v in ic]
            ib = -ib
            slack_sign = -1
        else:
            slack_sign = 1
        row = ic + [-v for v in ic] + [0] * nineq
        if rel == LE:
            row[slack_at] = slack_sign
            kinds.append(("slack" if slack_sign > 0 else "art", slack_at))
            slack_at += 1
        elif rel == EQ:
            kinds.append(("art", -1))
        else:
            raise ValueError("lp rows must use <= or ==")
        body.append(row + [ib])
    nart = sum(1 for k, _ in kinds if k == "art")
    ncols = 2 * dim + nineq + nart
    basis = []
    ai = 2 * dim + nineq
    for i, (kind, col) in enumerate(kinds):
        pad = [0] * nart
        if kind == "art":
            pad[ai - (2 * dim + nineq)] = 1
            art_rows.append(i)
            basis.append(ai)
            ai += 1
        else:
            basis.append(col)
        rhs = body[i].pop()
        body[i] = body[i] + pad + [rhs]
    tab = _Tableau(body, basis, ncols)

    oc, _, oscale = _scale_to_int(tuple(Fraction(v) for v in objective), Fraction(0))
    obj2 = [-v for v in oc] + [v for v in oc] + [0] * (nineq + nart) + [0]
    nstruct = 2 * dim + nineq

    if art_rows:
        obj1 = [0] * (ncols + 1)
        for i in art_rows:
            obj1 = [a - b for a, b in zip(obj1, tab.rows[i])]
        for col in range(nstruct, ncols):
            obj1[col] = 0
        # Carry the phase-2 row through phase-1 pivots by pivoting on a
        # combined tableau: append obj2 as a passive row.
        tab.rows.append(obj2)
        status = tab.maximize(obj1, range(ncols))
        assert status == _OPTIMAL
        if obj1[ncols] != 0:
            return _INFEASIBLE, None, None
        # Drive leftover basic artificials out (degenerate pivots at rhs 0)
        # so that phase 2 cannot raise an artificial above zero.
        i = 0
        while i < len(tab.basis):
            if tab.basis[i] >= nstruct:
                c = next((j for j in range(nstruct) if tab.rows[i][j] != 0), None)
                if c is None:
                    del tab.rows[i]
                    del tab.basis[i]
                    continue
                if tab.rows[i][c] < 0:
                    tab.rows[i] = [-x for x in tab.rows[i]]
                tab.pivot(i, c)
            i += 1
        obj2 = tab.rows.pop()
        allowed = range(nstruct)  # artificials may not re-enter
    else:
        allowed = range(ncols)

    status = tab.maximize(obj2, allowed)
    if status == _UNBOUNDED:
        return _UNBOUNDED, None, None
    den = tab.den
    value = Fraction(obj2[ncols], den * oscale)
    vals = {}
    for i, col in enumerate(tab.basis):
        vals[col] = Fraction(tab.rows[i][ncols], den)
    point = tuple(vals.get(k, Fraction(0)) - vals.get(dim + k, Fraction(0))
                  for k in range(dim))
    return _OPTIMAL, value, point


def _relaxed_rows(S: LinearSystem) -> list[tuple[RatVec, str, Fraction]]:
    """Drop strictness: every < becomes <=."""
    return [(c.coeffs, EQ if c.rel == EQ else LE, c.rhs) for c in S.constraints]


def feasible_point(S: LinearSystem) -> Optional[RatVec]:
    """An exact rational point satisfying S (strictness included), or None.

    Strict constraints are handled by maximizing a shared slack: the system
    has a solution iff the slack optimum is positive.
    """
    n = S.dim
    rows: list[tuple[tuple[Fraction, ...], str, Fraction]] = []
    for c in S.constraints:
        ext = c.coeffs + (Fraction(1 if c.rel == LT else 0),)
        rows.append((ext, EQ if c.rel == EQ else LE, c.rhs))
    delta_row = tuple(Fraction(0) for _ in range(n)) + (Fraction(1),)
    rows.append((delta_row, LE, Fraction(1)))
    obj = [Fraction(0)] * n + [Fraction(1)]
    status, value, point = lp_maximize(n + 1, rows, obj)
    if status != _OPTIMAL or value <= 0:
        return None
    assert point is not None
    return point[:n]


def feasible(S: LinearSystem) -> bool:
    """True iff some rational point satisfies every constraint of S."""
    return feasible_point(S) is not None


def is_bounded(S: LinearSystem) -> bool:
    """True iff the solution set of S is bounded.

    Decided on the recession cone of the non-strict relaxation; raises
    InfeasibleSystemError when S itself has no solution.
    """
    if not feasible(S):
        raise InfeasibleSystemError("system is infeasible")
    cone = [(c.coeffs, EQ if c.rel == EQ else LE, Fraction(0))
            for c in S.constraints]
    for k in range(S.dim):
        for sgn in (1, -1):
            obj = [Fraction(0)] * S.dim
            obj[k] = Fraction(sgn)
            status, value, _ = lp_maximize(S.dim, cone, obj)
            if status == _UNBOUNDED:
                return False
            assert status == _OPTIMAL and value == 0
    return True


def coordinate_bounds(S: LinearSystem) -> Optional[list[tuple[Fraction, Fraction]]]:
    """Exact [min, max] of each coordinate over the non-strict relaxation.

    Returns None when the relaxation is empty; raises UnboundedSystemError
    when some coordinate is unbounded.
    """
    rows = _relaxed_rows(S)
    out = []
    for k in range(S.dim):
        pair = []
        for sgn in (-1, 1):
            obj = [Fraction(0)] * S.dim
            obj[k] = Fraction(sgn)
            status, value, _ = lp_maximize(S.dim, rows, obj)
            if status == _INFEASIBLE:
                return None
            if status == _UNBOUNDED:
                raise UnboundedSystemError("coordinate %d unbounded" % k)
            pair.append(sgn * value)
        out.append((pair[0], pair[1]))
    return out


def lattice_points(S: LinearSystem) -> list[IntVec]:
    """All integer points satisfying S, in lexicographic order.

    Enumerates the exact bounding box with per-coordinate interval
    tightening; errors on unbounded input.
    """
    bounds = coordinate_bounds(S)
    if bounds is None:
        return []
    boxes = [(_ceil(lo), _floor(hi)) for lo, hi in bounds]
    if any(lo > hi for lo, hi in boxes):
        return []
    n = S.dim
    # Integer-scaled rows (g, rel, h) meaning g.x rel h.
    rows = []
    for c in S.constraints:
        g, h, _ = _scale_to_int(c.coeffs, c.rhs)
        rows.append((g, c.rel, h))
    out: list[IntVec] = []
    x = [0] * n

    def descend(k: int, partial: list[int]) -> None:
        # partial[i] = fixed part of row i's dot product
        if k == n:
            for (g, rel, h), s in zip(rows, partial):
                if rel == LE and not s <= h:
                    return
                if rel == LT and not s < h:
                    return
                if rel == EQ and s != h:
                    return
            out.append(tuple(x))
            return
        lo, hi = boxes[k]
        # Tighten [lo, hi] for x[k] from each constraint via interval
        # arithmetic over the still-free coordinates.
        for (g, rel, h), s in zip(rows, partial):
            gk = g[k]
            rest_min = rest_max = 0
            for j in range(k + 1, n):
                gj = g[j]
                if gj > 0:
                    rest_min += gj * boxes[j][0]
                    rest_max += gj * boxes[j][1]
                elif gj < 0:
                    rest_min += gj * boxes[j][1]
                    rest_max += gj * boxes[j][0]
            strict = 1 if rel == LT else 0
            if rel in (LE, LT):
                # gk*xk <= h - s - rest_min (- strictness margin)
                cap = h - s - rest_min - strict
                if gk > 0:
                    hi = min(hi, cap // gk)
                elif gk < 0:
                    lo = max(lo, _ceil_div(cap, gk))
                elif cap < 0:
                    return
            else:  # EQ: bound both sides
                cap_hi = h - s - rest_min
                cap_lo = h - s - rest_max
                if gk > 0:
                    hi = min(hi, cap_hi // gk)
                    lo = max(lo, _ceil_div(cap_lo, gk))
                elif gk < 0:
                    hi = min(hi, cap_lo // gk)
                    lo = max(lo, _ceil_div(cap_hi, gk))
                elif cap_hi < 0 or cap_lo > 0:
                    return
            if lo > hi:
                return
        for v in range(lo, hi + 1):
            x[k] = v
            descend(k + 1, [s + g[k] * v for (g, _, _), s in zip(rows, partial)])

    descend(0, [0] * len(rows))
    return out


def _ceil_div(a: int, b: int) -> int:
    # ceil(a / b) for b != 0, exact
    return -((-a) // b) if b > 0 else -(a // (-b))


def _floor(f: Fraction) -> int:
    return f.numerator // f.denominator


def _ceil(f: Fraction) -> int:
    return -((-f.numerator) // f.denominator)
