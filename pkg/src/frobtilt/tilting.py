"""Tilting-candidate checks and the generation-time report.

The candidate bundle is the direct sum of the anti-nef frob classes.  The
report records every computable hypothesis: Ext vanishing in nonzero
degrees, nefness of -K, the top twisted degree m0, the K-theoretic
necessary conditions for generation (summand count = number of maximal
cones, unimodular Euler pairing), and the resulting bounds

    dim X  <=  rouquier dim  <=  generation time  <=  dim X + m0.

Fullness of the candidate is never decided here; a clean run is reported
as VERIFIED_MODULO_FULLNESS.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional

from .cohomology import CohomologyVector, cohomology, ext_dims
from .cones import NEITHER, bu_set, nef_fano_status
from .fan import DivisorClass, Fan, TorusDivisor, canonical_divisor
from .frobenius import frob_set, pushforward_summands
from .lattice import determinant

VERIFIED = "VERIFIED_MODULO_FULLNESS"
HYPOTHESIS_FAILED = "HYPOTHESIS_FAILED"
NOT_APPLICABLE = "NOT_APPLICABLE"


@dataclass(frozen=True)
class TiltingCandidate:
    fan: Fan
    summands: tuple[DivisorClass, ...]
    ext_table: tuple[tuple[CohomologyVector, ...], ...]
    gram: tuple[tuple[int, ...], ...]  # gram[a][b] = chi(L_a, L_b)

    @property
    def gram_det(self) -> int:
        return determinant(self.gram)

    def triangular_order(self) -> Optional[tuple[int, ...]]:
        """A summand order making the Gram matrix upper triangular, if any.

        Topological sort of the digraph a -> b whenever chi(L_a, L_b) != 0
        for a != b; None when the digraph has a cycle.
        """
        k = len(self.summands)
        succs = {a: set() for a in range(k)}
        indeg = {a: 0 for a in range(k)}
        for a in range(k):
            for b in range(k):
                if a != b and self.gram[a][b]:
                    succs[a].add(b)
                    indeg[b] += 1
        order = []
        ready = sorted(a for a in range(k) if indeg[a] == 0)
        while ready:
            a = ready.pop(0)
            order.append(a)
            for b in sorted(succs[a]):
                indeg[b] -= 1
                if indeg[b] == 0:
                    ready.append(b)
            ready.sort()
        return tuple(order) if len(order) == k else None


@dataclass(frozen=True)
class ExtVanishing:
    ok: bool
    violations: tuple[tuple[int, int, int, int], ...]  # (a, b, degree, dim)


@dataclass(frozen=True)
class ChainCheck:
    ok: bool
    violation: Optional[tuple[DivisorClass, int, int]]  # (L, ell, degree)


@dataclass(frozen=True)
class OrlovReport:
    name: str
    dim: int
    n_rays: int
    n_max_cones: int
    n_frob: int
    n_bu: int
    nef_fano: str
    ext_vanishing: bool
    ext_violations: tuple[tuple[int, int, int, int], ...]
    k_rank_match: bool
    gram_det: int
    gram_unimodular: bool
    m0: int
    gen_time_upper: int
    rdim_lower: int
    status: str
    reason: Optional[str]

    def to_dict(self) -> dict:
        return {
            "name": self.name,
            "dim": self.dim,
            "n_rays": self.n_rays,
            "n_max_cones": self.n_max_cones,
            "n_frob": self.n_frob,
            "n_bu": self.n_bu,
            "nef_fano_status": self.nef_fano,
            "ext_vanishing": self.ext_vanishing,
            "ext_violations": [list(v) for v in self.ext_violations],
            "k_rank_match": self.k_rank_match,
            "gram_det": self.gram_det,
            "gram_unimodular": self.gram_unimodular,
            "m0": self.m0,
            "gen_time_upper": self.gen_time_upper,
            "rdim_lower": self.rdim_lower,
            "status": self.status,
            "reason": self.reason,
        }

    def to_markdown(self) -> str:
        rows = self.to_dict()
        lines = ["| field | value |", "| --- | --- |"]
        for key, val in rows.items():
            lines.append(f"| {key} | {val} |")
        return "\n".join(lines)


def build_candidate(fan: Fan, summands: Optional[tuple[DivisorClass, ...]] = None) -> TiltingCandidate:
    """Assemble the candidate: summands (bu set by default), Ext table, Gram."""
    fan.require_valid()
    if summands is None:
        summands = bu_set(fan)
    table = tuple(
        tuple(ext_dims(fan, a, b) for b in summands) for a in summands
    )
    gram = tuple(tuple(v.euler() for v in row) for row in table)
    return TiltingCandidate(fan, tuple(summands), table, gram)


def ext_vanishing(candidate: TiltingCandidate) -> ExtVanishing:
    """No Ext in nonzero degrees between any two summands."""
    violations = []
    for a, row in enumerate(candidate.ext_table):
        for b, vec in enumerate(row):
            for q in range(1, len(vec.dims)):
                if vec.dims[q]:
                    violations.append((a, b, q, vec.dims[q]))
    return ExtVanishing(not violations, tuple(violations))


def m0(candidate: TiltingCandidate) -> int:
    """Top degree with Hom(T, T x w^-1 [m]) nonzero, computed directly.

    Evaluates H^*(L_b - L_a - K) over all summand pairs; the degree-0 part
    is never empty (for a = b it contains H^0(-K), and -K is effective on
    any toric variety), so the maximum is well defined and >= 0.
    """
    fan = candidate.fan
    K = canonical_divisor(fan)
    top = 0
    for a in candidate.summands:
        for b in candidate.summands:
            twist = b.representative() - a.representative() - K
            vec = cohomology(fan, twist)
            nz = vec.top_nonzero()
            if nz is not None and nz > top:
                top = nz
    return top


def orlov_check(fan: Fan, name: str = "") -> OrlovReport:
    """Evaluate every computable hypothesis and assemble the report."""
    fan.require_valid()
    fs = frob_set(fan)
    candidate = build_candidate(fan)
    ev = ext_vanishing(candidate)
    status_k = nef_fano_status(fan)
    m0_val = m0(candidate)
    k_rank = len(candidate.summands) == len(fan.max_cones)
    gdet = candidate.gram_det
    if status_k == NEITHER:
        status, reason = NOT_APPLICABLE, "-K not nef"
    elif not ev.ok:
        status, reason = HYPOTHESIS_FAILED, "ext vanishing fails"
    elif m0_val != 0:
        status, reason = HYPOTHESIS_FAILED, f"m0 = {m0_val} > 0"
    else:
        status, reason = VERIFIED, None
    return OrlovReport(
        name=name,
        dim=fan.dim,
        n_rays=fan.n_rays,
        n_max_cones=len(fan.max_cones),
        n_frob=len(fs),
        n_bu=len(candidate.summands),
        nef_fano=status_k,
        ext_vanishing=ev.ok,
        ext_violations=ev.violations,
        k_rank_match=k_rank,
        gram_det=gdet,
        gram_unimodular=abs(gdet) == 1,
        m0=m0_val,
        gen_time_upper=fan.dim + m0_val,
        rdim_lower=fan.dim,
        status=status,
        reason=reason,
    )


def projection_chain_check(fan: Fan, ell: int) -> ChainCheck:
    """Dimension-level identity behind the twist computation.

    For every frob class L and every degree m, the summed cohomology of
    the pushforward summands twisted by -L - K equals the cohomology of
    -ell*(L + K); this is the rank shadow of the projection-formula and
    adjunction steps.
    """
    fan.require_valid()
    K = canonical_divisor(fan)
    zero = TorusDivisor(fan, (0,) * fan.n_rays)
    push = pushforward_summands(fan, zero, ell)
    for L in frob_set(fan).classes:
        DL = L.representative()
        lhs = [0] * (fan.dim + 1)
        for B, mult in sorted(push.items()):
            vec = cohomology(fan, B.representative() - DL - K)
            for q, h in enumerate(vec.dims):
                lhs[q] += mult * h
        rhs = cohomology(fan, -ell * (DL + K))
        for q in range(fan.dim + 1):
            if lhs[q] != rhs.dims[q]:
                return ChainCheck(False, (L, ell, q))
    return ChainCheck(True, None)
