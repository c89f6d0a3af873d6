"""R-connectedness in dimension m: three lifting conditions with witnesses.

A diagram is R-connected in dimension m when

1. every Γ̃-cycle of length up to m lifts to a cycle of the diagram,
2. every pair of Γ̃-cycles of total length up to m lifts to a single closed
   walk — unless the pair is exempt because the two cycles share a trivial
   vertex, and
3. no tuples of three or more cycles of total length up to m fail the
   mutual-shared-trivial-vertex requirement (vacuous for m ≤ 4, since three
   cycles have total length at least 6).

Exemption has two clauses.  The first: the cycles share a vertex carrying a
one-dimensional complex representation ("1" or "1̄"), where the trace pair
collapses to a single trace.  The second: two length-2 cycles meet at a
quaternionic vertex and their far endpoints are conjugate to each other;
there the pseudo-real structure of the quaternionic representation lets the
paired invariant decompose into invariants already generated along single
cycles, so no independent counterterm arises.

By default the length bounds are inclusive (≤ m), which is the reading the
worked examples require; ``strict_bounds`` switches to the literal "< m".
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations, combinations_with_replacement

from .algebra import FactorKind, RepLabel
from .diagram import KrajewskiDiagram
from .graphs import (
    Cycle,
    LiftWitness,
    cycle_pairs,
    enumerate_cycles,
    lift_cycle,
    lift_pair,
    project,
)

__all__ = [
    "Exemption",
    "CycleLift",
    "PairLift",
    "RConnectReport",
    "exemption_check",
    "check_r_connected",
]

SHARED_TRIVIAL_VERTEX = "shared-trivial-vertex"
QUATERNION_CONJUGATE_PAIR = "quaternion-conjugate-pair"


@dataclass(frozen=True)
class Exemption:
    exempt: bool
    clause: str | None = None
    vertex: RepLabel | None = None


def exemption_check(g1: Cycle, g2: Cycle, d: KrajewskiDiagram) -> Exemption:
    """Decide whether the pair (g1, g2) is excused from condition (2)."""
    algebra = d.algebra
    shared = sorted(set(g1) & set(g2))
    for v in shared:
        factor = algebra.factors[v.factor_index]
        if factor.kind is FactorKind.COMPLEX and factor.size == 1:
            return Exemption(True, SHARED_TRIVIAL_VERTEX, v)
    if len(g1) == 2 and len(g2) == 2:
        for v in shared:
            if algebra.factors[v.factor_index].kind is not FactorKind.QUATERNION:
                continue
            other1 = g1[0] if g1[1] == v else g1[1]
            other2 = g2[0] if g2[1] == v else g2[1]
            if other2 == other1.conjugated(algebra):
                return Exemption(True, QUATERNION_CONJUGATE_PAIR, v)
    return Exemption(False)


@dataclass(frozen=True)
class CycleLift:
    cycle: Cycle
    witness: LiftWitness | None

    @property
    def ok(self) -> bool:
        return self.witness is not None


@dataclass(frozen=True)
class PairLift:
    pair: tuple[Cycle, Cycle]
    exemption: Exemption
    witness: LiftWitness | None

    @property
    def status(self) -> str:
        if self.exemption.exempt:
            return "exempt"
        return "lifted" if self.witness is not None else "missing"

    @property
    def ok(self) -> bool:
        return self.status != "missing"


@dataclass(frozen=True)
class RConnectReport:
    dimension: int
    strict_bounds: bool
    cond1: tuple[CycleLift, ...]
    cond2: tuple[PairLift, ...]
    cond3: tuple[tuple[Cycle, ...], ...]

    @property
    def verdict(self) -> bool:
        return (
            all(entry.ok for entry in self.cond1)
            and all(entry.ok for entry in self.cond2)
            and not self.cond3
        )


def check_r_connected(
    d: KrajewskiDiagram, m: int, strict_bounds: bool = False
) -> RConnectReport:
    """Evaluate the three conditions in dimension m and collect witnesses."""
    if m < 0:
        raise ValueError("dimension must be non-negative")
    bound = m - 1 if strict_bounds else m
    g = project(d)
    cycles = enumerate_cycles(g, bound) if bound >= 2 else ()

    cond1 = tuple(CycleLift(c, lift_cycle(c, d)) for c in cycles)

    cond2 = []
    for c1, c2 in cycle_pairs(cycles, bound):
        ex = exemption_check(c1, c2, d)
        witness = None
        if not ex.exempt:
            witness = lift_pair(c1, c2, d) or lift_pair(c2, c1, d)
        cond2.append(PairLift((c1, c2), ex, witness))

    cond3 = []
    max_tuple = bound // 2
    for r in range(3, max_tuple + 1):
        for combo in combinations_with_replacement(cycles, r):
            if sum(len(c) for c in combo) > bound:
                continue
            if all(
                exemption_check(a, b, d).exempt for a, b in combinations(combo, 2)
            ):
                continue
            cond3.append(tuple(combo))

    return RConnectReport(m, strict_bounds, cond1, tuple(cond2), tuple(cond3))
