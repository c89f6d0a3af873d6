"""Projection onto the horizontal axis, cycle enumeration, and lifts.

The projected graph Γ̃ has one vertex per column label occurring in the
diagram and one unordered edge {a, b} for every pair of column labels joined
by some edge pair; vertical edge pairs (and the diagonal Dirac part) project
to loops.  A cycle is a closed path with no repeated vertices other than the
base and no loop edges; back-and-forth traversal of a single edge is the
minimal (length-2) cycle.

Lifts run in the opposite direction: a Γ̃-cycle lifts to a cycle of the
diagram whose projection, after deleting loop images, coincides with it up
to cyclic rotation, and a *pair* of Γ̃-cycles lifts to a single closed walk
whose horizontal steps project onto the first cycle while its vertical
steps, read through the reflection j, project onto the second.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations_with_replacement

from .algebra import RepLabel
from .diagram import DiracPart, KrajewskiDiagram, edge_part

__all__ = [
    "Cycle",
    "ProjEdge",
    "ProjectedGraph",
    "LiftWitness",
    "proj_edge",
    "project",
    "canonical_cycle",
    "cyclic_equal",
    "enumerate_cycles",
    "cycle_pairs",
    "lift_cycle",
    "lift_pair",
]

Cycle = tuple[RepLabel, ...]
"""A cycle as its vertex sequence ``(v0, …, v_{k-1})``; the closing edge
``v_{k-1}–v0`` is implicit."""

ProjEdge = tuple[RepLabel, RepLabel]
"""An unordered Γ̃-edge stored as an ordered pair ``lo <= hi``."""


def proj_edge(a: RepLabel, b: RepLabel) -> ProjEdge:
    return (a, b) if a <= b else (b, a)


@dataclass(frozen=True)
class ProjectedGraph:
    vertices: tuple[RepLabel, ...]
    edges: tuple[ProjEdge, ...]
    psi: dict[str, ProjEdge]

    @property
    def non_loop_edges(self) -> tuple[ProjEdge, ...]:
        return tuple(e for e in self.edges if e[0] != e[1])

    @property
    def loops(self) -> tuple[ProjEdge, ...]:
        return tuple(e for e in self.edges if e[0] == e[1])

    def neighbors(self, v: RepLabel) -> tuple[RepLabel, ...]:
        out = {b if a == v else a for a, b in self.non_loop_edges if v in (a, b)}
        return tuple(sorted(out))


def project(d: KrajewskiDiagram) -> ProjectedGraph:
    """Γ̃ together with the edge projection ψ."""
    vertices = sorted({v.col for v in d.vertices})
    psi: dict[str, ProjEdge] = {}
    for e in d.edges:
        psi[e.id] = proj_edge(d.vertex(e.source).col, d.vertex(e.target).col)
    return ProjectedGraph(tuple(vertices), tuple(sorted(set(psi.values()))), psi)


def canonical_cycle(seq: Cycle) -> Cycle:
    """Lexicographically least vertex sequence over rotations and reversals."""
    n = len(seq)
    best = None
    for base in (tuple(seq), tuple(reversed(seq))):
        for r in range(n):
            cand = base[r:] + base[:r]
            if best is None or cand < best:
                best = cand
    assert best is not None
    return best


def cyclic_equal(a: tuple, b: tuple) -> bool:
    """Equality of cyclic sequences up to rotation only (orientation kept)."""
    if len(a) != len(b):
        return False
    if not a:
        return True
    return any(b[r:] + b[:r] == tuple(a) for r in range(len(b)))


def enumerate_cycles(g: ProjectedGraph, max_len: int) -> tuple[Cycle, ...]:
    """All cycles of length 2..max_len, one canonical representative each.

    Loop edges never participate; a single non-loop edge traversed forth and
    back is the minimal cycle.  Deterministic order: by length, then by the
    canonical vertex sequence.
    """
    if max_len < 2:
        raise ValueError("max_len must be at least 2")
    found: set[Cycle] = set()
    for a, b in g.non_loop_edges:
        found.add(canonical_cycle((a, b)))

    def extend(path: list[RepLabel]) -> None:
        current = path[-1]
        for nxt in g.neighbors(current):
            if nxt == path[0] and len(path) >= 3:
                found.add(canonical_cycle(tuple(path)))
            if nxt not in path and len(path) < max_len:
                path.append(nxt)
                extend(path)
                path.pop()

    if max_len >= 3:
        for start in g.vertices:
            extend([start])
    return tuple(sorted(found, key=lambda c: (len(c), c)))


def cycle_pairs(
    cycles: tuple[Cycle, ...], total_len: int
) -> tuple[tuple[Cycle, Cycle], ...]:
    """Unordered pairs (with repetition) of total length up to total_len."""
    return tuple(
        (c1, c2)
        for c1, c2 in combinations_with_replacement(cycles, 2)
        if len(c1) + len(c2) <= total_len
    )


@dataclass(frozen=True)
class LiftWitness:
    """A closed walk in the diagram: step i runs vertices[i] -> vertices[i+1]
    (cyclically) along the edge pair edges[i]."""

    vertices: tuple[str, ...]
    edges: tuple[str, ...]

    def __len__(self) -> int:
        return len(self.edges)


def _adjacency(
    d: KrajewskiDiagram,
) -> dict[str, tuple[tuple[str, str, DiracPart], ...]]:
    """vertex id -> sorted steps (edge id, other endpoint, Dirac part)."""
    steps: dict[str, list[tuple[str, str, DiracPart]]] = {v.id: [] for v in d.vertices}
    for e in d.edges:
        part = edge_part(d, e)
        steps[e.source].append((e.id, e.target, part))
        if e.target != e.source:
            steps[e.target].append((e.id, e.source, part))
    return {v: tuple(sorted(s)) for v, s in steps.items()}


def _reduced_cols(cols: list[RepLabel]) -> list[RepLabel]:
    """Collapse consecutive duplicates of a cyclic sequence."""
    out: list[RepLabel] = []
    for c in cols:
        if out and out[-1] == c:
            continue
        out.append(c)
    while len(out) > 1 and out[0] == out[-1]:
        out.pop()
    return out


def lift_cycle(gamma_tilde: Cycle, d: KrajewskiDiagram) -> LiftWitness | None:
    """A diagram cycle whose ψ-image modulo loops is gamma_tilde, or None.

    The search is exhaustive over cycles of the diagram (closed paths with
    no repeated vertices besides the base; any Dirac part may pad the path,
    since vertical and diagonal steps project to loops).  The projection is
    compared as a cyclic sequence, up to rotation only.  Returns the least
    witness by (length, vertex sequence).
    """
    target = list(gamma_tilde)
    adjacency = _adjacency(d)
    best: tuple[int, tuple[str, ...], LiftWitness] | None = None

    def note(path: list[str], edges: list[str]) -> None:
        nonlocal best
        cols = [d.vertex(v).col for v in path]
        if not cyclic_equal(tuple(_reduced_cols(cols)), tuple(target)):
            return
        witness = LiftWitness(tuple(path), tuple(edges))
        key = (len(edges), tuple(path))
        if best is None or key < best[:2]:
            best = (key[0], key[1], witness)

    def extend(path: list[str], edges: list[str]) -> None:
        for eid, nxt, _part in adjacency[path[-1]]:
            if nxt == path[0] and len(path) >= 2:
                note(path, edges + [eid])
            if nxt not in path:
                path.append(nxt)
                edges.append(eid)
                extend(path, edges)
                path.pop()
                edges.pop()

    for start in sorted(adjacency):
        extend([start], [])
    return best[2] if best else None


def lift_pair(g1: Cycle, g2: Cycle, d: KrajewskiDiagram) -> LiftWitness | None:
    """A single closed walk lifting g1 along ψ and g2 along ψ∘j, or None.

    The walk has exactly len(g1) horizontal and len(g2) vertical steps and
    may revisit vertices (a figure-eight through a shared vertex is a valid
    lift).  Horizontal steps fix the row, so their column trace — read
    cyclically — must reproduce g1; vertical steps fix the column, so their
    row trace must reproduce g2 in either orientation.
    """
    adjacency = _adjacency(d)
    n1, n2 = len(g1), len(g2)

    def search(a: tuple[RepLabel, ...], b: tuple[RepLabel, ...]) -> LiftWitness | None:
        for start in sorted(adjacency):
            v = d.vertex(start)
            if v.col != a[0] or v.row != b[0]:
                continue
            hit = walk(a, b, start, [start], [], 0, 0)
            if hit is not None:
                return hit
        return None

    def walk(
        a: tuple[RepLabel, ...],
        b: tuple[RepLabel, ...],
        start: str,
        path: list[str],
        edges: list[str],
        i1: int,
        i2: int,
    ) -> LiftWitness | None:
        if i1 == n1 and i2 == n2:
            if path[-1] == start:
                return LiftWitness(tuple(path[:-1]), tuple(edges))
            return None
        for eid, nxt, part in adjacency[path[-1]]:
            target = d.vertex(nxt)
            if part is DiracPart.DELTA:
                if i1 >= n1 or target.col != a[(i1 + 1) % n1]:
                    continue
                di1, di2 = 1, 0
            elif part is DiracPart.J_DELTA_J:
                if i2 >= n2 or target.row != b[(i2 + 1) % n2]:
                    continue
                di1, di2 = 0, 1
            else:
                continue
            path.append(nxt)
            edges.append(eid)
            hit = walk(a, b, start, path, edges, i1 + di1, i2 + di2)
            path.pop()
            edges.pop()
            if hit is not None:
                return hit
        return None

    for b_seq in (tuple(g2), tuple(reversed(g2))):
        for r1 in range(n1):
            a_rot = tuple(g1[r1:]) + tuple(g1[:r1])
            for r2 in range(n2):
                b_rot = b_seq[r2:] + b_seq[:r2]
                hit = search(a_rot, b_rot)
                if hit is not None:
                    return hit
    return None
