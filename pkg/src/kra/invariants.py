"""Scalar fields, generated trace terms, required counterterms, coverage.

Scalar multiplets live on the non-loop edges of the projected graph: the
edge ẽ carries dim S_ẽ independent multiplets, where S_ẽ is the span of the
Dirac blocks sitting over ẽ.  The expanded action contributes

* one Yang–Mills F² term per simple gauge factor (with a single common
  prefactor),
* a mass and a kinetic term for every edge ẽ, generated by back-and-forth
  traversal of any horizontal edge over ẽ, and
* quartic terms from closed four-step walks: four horizontal steps give a
  single trace, while two horizontal plus two vertical steps give a product
  of two traces (the vertical steps read through the reflection j).

Gauge invariance alone demands counterterms indexed by the projected graph:
F² per simple factor with an independent coefficient, all degree-2
invariants per edge, single traces along strict 4-cycles, and double traces
along pairs of 2-cycles — except that a pair sharing a trivial
(one-dimensional complex) vertex collapses to a single trace, and a pair
meeting only at a quaternionic vertex with conjugate far endpoints
decomposes into already-generated invariants and is dropped.

Coverage matches required terms against generated ones by canonical trace
structure only; coefficients are ignored, since the generated coefficients
need not agree with the independent ones ("the coefficients in front of the
counterterms might be different" — the theory is not multiplicatively
renormalizable).
"""

from __future__ import annotations

import enum
from dataclasses import dataclass

from .algebra import FactorKind, FiniteAlgebra, RepLabel, gauge_lie_algebra
from .diagram import (
    DiracPart,
    KrajewskiDiagram,
    NumericOperator,
    SymbolicOperator,
    edge_part,
)
from .exactlin import GaussRational, span_rank
from .graphs import (
    Cycle,
    ProjEdge,
    canonical_cycle,
    cycle_pairs,
    enumerate_cycles,
    proj_edge,
    project,
)
from .rconnect import QUATERNION_CONJUGATE_PAIR, exemption_check

__all__ = [
    "TermKind",
    "TraceSlot",
    "Block",
    "FieldComponent",
    "FieldInventory",
    "InvariantTerm",
    "CoverageEntry",
    "CoverageReport",
    "enumerate_fields",
    "basis_dimension",
    "action_terms",
    "required_counterterms",
    "counterterm_coverage",
    "canonical_block",
    "canonical_key",
    "collapse_blocks",
    "block_vertex_sequence",
    "cycle_display",
    "structure_display",
]


class TermKind(enum.Enum):
    YANG_MILLS_F2 = "YangMillsF2"
    SCALAR_MASS = "ScalarMass"
    SCALAR_KINETIC = "ScalarKinetic"
    QUARTIC = "Quartic"


@dataclass(frozen=True, order=True)
class TraceSlot:
    """One field factor inside a trace: the multiplet on ``edge``, taken as
    written when ``forward`` (low endpoint to high) and as the adjoint when
    not."""

    edge: ProjEdge
    forward: bool

    @property
    def source(self) -> RepLabel:
        return self.edge[0] if self.forward else self.edge[1]

    @property
    def target(self) -> RepLabel:
        return self.edge[1] if self.forward else self.edge[0]


Block = tuple[TraceSlot, ...]


@dataclass(frozen=True)
class FieldComponent:
    edge: ProjEdge
    basis_index: int
    source_rep: RepLabel
    target_rep: RepLabel


@dataclass(frozen=True)
class FieldInventory:
    components: tuple[FieldComponent, ...]
    total_components: int


@dataclass(frozen=True)
class InvariantTerm:
    kind: TermKind
    blocks: tuple[Block, ...]
    coefficient: str
    origin: str
    gauge_factor: str | None = None
    coefficient_factors: tuple[tuple[str, str], ...] = ()


# ---------------------------------------------------------------------------
# Trace-structure canonicalization


def canonical_block(block: Block) -> Block:
    """Least representative over cyclic rotations and the dagger reversal."""
    n = len(block)
    dagger = tuple(TraceSlot(s.edge, not s.forward) for s in reversed(block))
    candidates = []
    for base in (tuple(block), dagger):
        for r in range(n):
            candidates.append(base[r:] + base[:r])
    return min(candidates)


def canonical_key(term: InvariantTerm):
    if term.kind is TermKind.YANG_MILLS_F2:
        return (term.kind.value, term.gauge_factor)
    blocks = tuple(sorted(canonical_block(b) for b in term.blocks))
    return (term.kind.value, blocks)


def block_vertex_sequence(block: Block) -> tuple[RepLabel, ...]:
    return tuple(slot.source for slot in block)


def _rotate_to(block: Block, v: RepLabel) -> Block | None:
    for i, slot in enumerate(block):
        if slot.source == v:
            return block[i:] + block[:i]
    return None


def collapse_blocks(b1: Block, b2: Block, algebra: FiniteAlgebra) -> Block | None:
    """Merge a double trace into one at a shared trivial vertex, if any.

    A trace over a one-dimensional complex representation is a plain number,
    so two traces both passing through such a vertex multiply into a single
    trace: rotate both to start there and concatenate.  Returns None when no
    shared trivial vertex exists.
    """
    shared = sorted(set(block_vertex_sequence(b1)) & set(block_vertex_sequence(b2)))
    for v in shared:
        factor = algebra.factors[v.factor_index]
        if factor.kind is FactorKind.COMPLEX and factor.size == 1:
            r1, r2 = _rotate_to(b1, v), _rotate_to(b2, v)
            if r1 is not None and r2 is not None:
                return canonical_block(r1 + r2)
    return None


def _cycle_block(cycle: Cycle) -> Block:
    n = len(cycle)
    slots = []
    for i in range(n):
        a, b = cycle[i], cycle[(i + 1) % n]
        edge = proj_edge(a, b)
        slots.append(TraceSlot(edge, a == edge[0]))
    return canonical_block(tuple(slots))


def cycle_display(cycle: Cycle, algebra: FiniteAlgebra) -> str:
    n = len(cycle)
    return "".join(
        f"({cycle[i].display(algebra)} {cycle[(i + 1) % n].display(algebra)})"
        for i in range(n)
    )


def _edge_display(edge: ProjEdge, algebra: FiniteAlgebra) -> str:
    return f"{{{edge[0].display(algebra)},{edge[1].display(algebra)}}}"


def structure_display(term: InvariantTerm, algebra: FiniteAlgebra) -> str:
    if term.kind is TermKind.YANG_MILLS_F2:
        return f"tr F[{term.gauge_factor}]_mu_nu F[{term.gauge_factor}]^mu^nu"
    parts = []
    for block in term.blocks:
        inner = []
        for slot in block:
            base = f"phi{_edge_display(slot.edge, algebra)}"
            inner.append(base if slot.forward else base + "*")
        parts.append("tr[" + " ".join(inner) + "]")
    body = " ".join(parts)
    if term.kind is TermKind.SCALAR_KINETIC:
        return body.replace("phi", "D_mu phi", 1) if "phi" in body else body
    return body


# ---------------------------------------------------------------------------
# Field inventory


def _dagger(matrix: tuple[tuple[GaussRational, ...], ...]):
    if not matrix:
        return matrix
    rows, cols = len(matrix), len(matrix[0])
    return tuple(
        tuple(matrix[r][c].conjugate() for r in range(rows)) for c in range(cols)
    )


def _horizontal_edges_over(d: KrajewskiDiagram, etilde: ProjEdge):
    """All horizontal edge pairs projecting onto etilde, with orientation."""
    out = []
    for e in d.edges:
        if edge_part(d, e) is not DiracPart.DELTA:
            continue
        source_col = d.vertex(e.source).col
        target_col = d.vertex(e.target).col
        if proj_edge(source_col, target_col) != etilde:
            continue
        out.append((e, source_col == etilde[0]))
    return out


def basis_dimension(etilde: ProjEdge, d: KrajewskiDiagram) -> int:
    """dim S_ẽ: independent multiplets on the projected edge etilde."""
    if etilde[0] == etilde[1]:
        raise ValueError("loop edges carry no scalar multiplets")
    labels: set[str] = set()
    matrices = []
    modes: set[str] = set()
    for e, oriented in _horizontal_edges_over(d, etilde):
        if isinstance(e.operator, SymbolicOperator):
            modes.add("symbolic")
            labels.add(e.operator.label)
        else:
            modes.add("numeric")
            m = e.operator.matrix
            matrices.append(m if oriented else _dagger(m))
    if len(modes) > 1:
        raise ValueError(
            "mixed symbolic and numeric operators over one projected edge"
        )
    if not modes:
        return 0
    return len(labels) if labels else span_rank(matrices)


def enumerate_fields(d: KrajewskiDiagram) -> FieldInventory:
    """One component per (edge, basis index); adjoints are identified, so
    each unordered edge appears once."""
    g = project(d)
    components = []
    total = 0
    for lo, hi in g.non_loop_edges:
        dim_s = basis_dimension((lo, hi), d)
        total += lo.dimension(d.algebra) * hi.dimension(d.algebra) * dim_s
        for p in range(1, dim_s + 1):
            components.append(FieldComponent((lo, hi), p, lo, hi))
    return FieldInventory(tuple(components), total)


# ---------------------------------------------------------------------------
# Generated action terms


def _field_steps(d: KrajewskiDiagram):
    """vertex id -> sorted (edge id, other endpoint, part) over Δ and JΔJ."""
    steps: dict[str, list[tuple[str, str, DiracPart]]] = {v.id: [] for v in d.vertices}
    for e in d.edges:
        part = edge_part(d, e)
        if part is DiracPart.D0:
            continue
        steps[e.source].append((e.id, e.target, part))
        if e.target != e.source:
            steps[e.target].append((e.id, e.source, part))
    return {v: tuple(sorted(s)) for v, s in steps.items()}


def _walk_slots(d: KrajewskiDiagram, walk_vertices: list[str], which: DiracPart,
                parts: list[DiracPart]) -> Block:
    """Trace slots for the steps of the given part, in walk order.

    Horizontal steps are read through the column projection, vertical steps
    through the row labels (the reflection j turns them horizontal).
    """
    slots = []
    n = len(parts)
    for i in range(n):
        if parts[i] is not which:
            continue
        u = d.vertex(walk_vertices[i])
        w = d.vertex(walk_vertices[(i + 1) % n])
        a, b = (u.col, w.col) if which is DiracPart.DELTA else (u.row, w.row)
        edge = proj_edge(a, b)
        slots.append(TraceSlot(edge, a == edge[0]))
    return tuple(slots)


def _closed_field_walks(d: KrajewskiDiagram, n_h: int, n_v: int):
    """Closed walks with exactly n_h horizontal and n_v vertical steps.

    Vertices may repeat.  Yields (vertex ids, edge ids, parts) with the
    closing step back at the start; deterministic order.
    """
    steps = _field_steps(d)
    total = n_h + n_v
    results = []

    def extend(start: str, path: list[str], edges: list[str],
               parts: list[DiracPart], h: int, v: int) -> None:
        if len(edges) == total:
            if path[-1] == start:
                results.append((tuple(path[:-1]), tuple(edges), tuple(parts)))
            return
        for eid, nxt, part in steps[path[-1]]:
            if part is DiracPart.DELTA:
                if h == n_h:
                    continue
                dh, dv = 1, 0
            else:
                if v == n_v:
                    continue
                dh, dv = 0, 1
            path.append(nxt)
            edges.append(eid)
            parts.append(part)
            extend(start, path, edges, parts, h + dh, v + dv)
            path.pop()
            edges.pop()
            parts.pop()

    for start in sorted(steps):
        extend(start, [start], [], [], 0, 0)
    return results


def _quartic_coefficient(edge_ids: tuple[str, ...]) -> tuple[str, tuple[tuple[str, str], ...]]:
    factors = tuple((eid, f"p{i + 1}") for i, eid in enumerate(edge_ids))
    display = "prop. to " + " ".join(f"M_{eid}^{p}" for eid, p in factors)
    return display, factors


def _walk_display(vertices: tuple[str, ...]) -> str:
    return " -> ".join(vertices + (vertices[0],))


def action_terms(d: KrajewskiDiagram) -> tuple[InvariantTerm, ...]:
    """Every term family the expanded action produces for this diagram."""
    algebra = d.algebra
    g = project(d)
    terms: list[InvariantTerm] = []

    decomp = gauge_lie_algebra(algebra)
    for i, (series, k) in enumerate(decomp.simple_factors):
        terms.append(
            InvariantTerm(
                kind=TermKind.YANG_MILLS_F2,
                blocks=(),
                coefficient="-f(0)/(24*pi^2), common prefactor for every gauge factor",
                origin="gauge sector",
                gauge_factor=f"{series}({k})[{i}]",
            )
        )

    for lo, hi in g.non_loop_edges:
        edge = (lo, hi)
        over = ", ".join(sorted(e.id for e, _ in _horizontal_edges_over(d, edge)))
        block = (TraceSlot(edge, True), TraceSlot(edge, False))
        disp = _edge_display(edge, algebra)
        for kind, coeff in (
            (TermKind.SCALAR_MASS, f"prop. to sum_p |M_e^p|^2, e in {{{over}}}"),
            (TermKind.SCALAR_KINETIC, f"prop. to sum_p |M_e^p|^2, e in {{{over}}}"),
        ):
            terms.append(
                InvariantTerm(
                    kind=kind,
                    blocks=(canonical_block(block),),
                    coefficient=coeff,
                    origin=f"back-and-forth walks over {disp}",
                )
            )

    seen: set = set()
    for vertices, edge_ids, parts in _closed_field_walks(d, 4, 0):
        block = _walk_slots(d, list(vertices), DiracPart.DELTA, list(parts))
        term_blocks = (canonical_block(block),)
        key = (TermKind.QUARTIC.value, term_blocks)
        if key in seen:
            continue
        seen.add(key)
        coeff, factors = _quartic_coefficient(edge_ids)
        terms.append(
            InvariantTerm(
                kind=TermKind.QUARTIC,
                blocks=term_blocks,
                coefficient=coeff,
                origin=f"walk {_walk_display(vertices)}",
                coefficient_factors=factors,
            )
        )

    for vertices, edge_ids, parts in _closed_field_walks(d, 2, 2):
        h_block = _walk_slots(d, list(vertices), DiracPart.DELTA, list(parts))
        v_block = _walk_slots(d, list(vertices), DiracPart.J_DELTA_J, list(parts))
        term_blocks = tuple(sorted((canonical_block(h_block), canonical_block(v_block))))
        key = (TermKind.QUARTIC.value, term_blocks)
        if key in seen:
            continue
        seen.add(key)
        coeff, factors = _quartic_coefficient(edge_ids)
        terms.append(
            InvariantTerm(
                kind=TermKind.QUARTIC,
                blocks=term_blocks,
                coefficient=coeff,
                origin=f"mixed walk {_walk_display(vertices)}",
                coefficient_factors=factors,
            )
        )

    return tuple(terms)


# ---------------------------------------------------------------------------
# Required counterterms and coverage


def required_counterterms(d: KrajewskiDiagram) -> tuple[InvariantTerm, ...]:
    """Every gauge-invariant up to degree 4 demanded by the field content."""
    algebra = d.algebra
    g = project(d)
    terms: list[InvariantTerm] = []

    decomp = gauge_lie_algebra(algebra)
    for i, (series, k) in enumerate(decomp.simple_factors):
        terms.append(
            InvariantTerm(
                kind=TermKind.YANG_MILLS_F2,
                blocks=(),
                coefficient="independent coefficient per gauge factor",
                origin="gauge sector",
                gauge_factor=f"{series}({k})[{i}]",
            )
        )

    for lo, hi in g.non_loop_edges:
        edge = (lo, hi)
        disp = _edge_display(edge, algebra)
        block = (TraceSlot(edge, True), TraceSlot(edge, False))
        for kind in (TermKind.SCALAR_MASS, TermKind.SCALAR_KINETIC):
            terms.append(
                InvariantTerm(
                    kind=kind,
                    blocks=(canonical_block(block),),
                    coefficient="independent coefficient c(p1, p2) per basis pair",
                    origin=f"degree-2 invariant on {disp}",
                )
            )

    cycles = enumerate_cycles(g, 4)
    for cycle in cycles:
        if len(cycle) != 4:
            continue
        terms.append(
            InvariantTerm(
                kind=TermKind.QUARTIC,
                blocks=(_cycle_block(cycle),),
                coefficient="independent coefficient per index tuple",
                origin=f"4-cycle {cycle_display(cycle, algebra)}",
            )
        )

    two_cycles = tuple(c for c in cycles if len(c) == 2)
    for c1, c2 in cycle_pairs(two_cycles, 4):
        b1, b2 = _cycle_block(c1), _cycle_block(c2)
        collapsed = collapse_blocks(b1, b2, algebra)
        pair_disp = f"{cycle_display(c1, algebra)} + {cycle_display(c2, algebra)}"
        if collapsed is not None:
            terms.append(
                InvariantTerm(
                    kind=TermKind.QUARTIC,
                    blocks=(collapsed,),
                    coefficient="independent coefficient per index tuple",
                    origin=f"cycle pair {pair_disp}, collapsed at the shared trivial vertex",
                )
            )
            continue
        if exemption_check(c1, c2, d).clause == QUATERNION_CONJUGATE_PAIR:
            continue
        terms.append(
            InvariantTerm(
                kind=TermKind.QUARTIC,
                blocks=tuple(sorted((b1, b2))),
                coefficient="independent coefficient per index tuple",
                origin=f"cycle pair {pair_disp}",
            )
        )

    unique: dict = {}
    for t in terms:
        unique.setdefault(canonical_key(t), t)
    return tuple(unique.values())


@dataclass(frozen=True)
class CoverageEntry:
    required: InvariantTerm
    matched: InvariantTerm | None


@dataclass(frozen=True)
class CoverageReport:
    entries: tuple[CoverageEntry, ...]

    @property
    def complete(self) -> bool:
        return all(e.matched is not None for e in self.entries)

    @property
    def missing(self) -> tuple[InvariantTerm, ...]:
        return tuple(e.required for e in self.entries if e.matched is None)


def counterterm_coverage(d: KrajewskiDiagram) -> CoverageReport:
    """Match each required counterterm to a generated action term.

    Matching is by canonical trace structure; a generated double trace that
    admits a collapse at a trivial vertex is indexed under both its double
    and its collapsed single form.
    """
    algebra = d.algebra
    index: dict = {}
    for t in action_terms(d):
        index.setdefault(canonical_key(t), t)
        if t.kind is TermKind.QUARTIC and len(t.blocks) == 2:
            collapsed = collapse_blocks(t.blocks[0], t.blocks[1], algebra)
            if collapsed is not None:
                index.setdefault((TermKind.QUARTIC.value, (collapsed,)), t)
    entries = tuple(
        CoverageEntry(req, index.get(canonical_key(req)))
        for req in required_counterterms(d)
    )
    return CoverageReport(entries)
