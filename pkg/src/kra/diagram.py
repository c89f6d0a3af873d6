"""Krajewski diagrams: data model, sign table, axiom validation.

A diagram is a decorated multigraph over a finite algebra.  Vertices carry an
irreducible bimodule C^n ⊗ C^m° written as a (column, row) pair of
representation labels plus, in even KO-dimension, a sign.  Edges represent
pairs of mutually adjoint Dirac-operator components and are stored once with
a chosen orientation; the reverse orientation is implied.  An involution j
mirrors the diagram across the diagonal (swapping column and row labels) and
must leave the edge set invariant.

Validation reports axiom violations as entries rather than exceptions, so a
broken diagram can be inspected rather than merely rejected.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass, replace
from typing import Iterable, Mapping

from .algebra import FactorKind, FiniteAlgebra, RepLabel
from .exactlin import GaussRational, Matrix

__all__ = [
    "KOSigns",
    "ko_signs",
    "DiagramVertex",
    "SymbolicOperator",
    "NumericOperator",
    "OperatorSpec",
    "EdgePair",
    "KrajewskiDiagram",
    "DiracPart",
    "edge_part",
    "dirac_decomposition",
    "CheckResult",
    "ValidationReport",
    "validate",
    "resolve_jmap",
    "hilbert_dimension",
    "fundamental_multiplicities",
    "structural_key",
]


# ---------------------------------------------------------------------------
# KO-dimension sign table


@dataclass(frozen=True, slots=True)
class KOSigns:
    n: int
    eps: int
    eps_prime: int
    eps_double_prime: int | None

    @property
    def even(self) -> bool:
        return self.eps_double_prime is not None


_KO_TABLE: dict[int, tuple[int, int, int | None]] = {
    0: (1, 1, 1),
    1: (1, -1, None),
    2: (-1, 1, -1),
    3: (-1, 1, None),
    4: (-1, 1, 1),
    5: (-1, -1, None),
    6: (1, 1, -1),
    7: (1, 1, None),
}


def ko_signs(n: int) -> KOSigns:
    """The (ε, ε′, ε″) signs for KO-dimension ``n`` mod 8."""
    eps, eps_prime, eps_dd = _KO_TABLE[n % 8]
    return KOSigns(n % 8, eps, eps_prime, eps_dd)


# ---------------------------------------------------------------------------
# Data model


@dataclass(frozen=True, slots=True)
class DiagramVertex:
    """A node decorated with C^col ⊗ C^row° and an optional grading sign."""

    id: str
    col: RepLabel
    row: RepLabel
    sign: int | None = None


@dataclass(frozen=True, slots=True)
class SymbolicOperator:
    label: str


@dataclass(frozen=True, slots=True)
class NumericOperator:
    """An exact matrix (target-dimension × source-dimension)."""

    matrix: Matrix

    @property
    def shape(self) -> tuple[int, int]:
        rows = len(self.matrix)
        cols = len(self.matrix[0]) if rows else 0
        return rows, cols

    def is_zero(self) -> bool:
        return not any(entry for row in self.matrix for entry in row)

    def is_rectangular(self) -> bool:
        return len({len(row) for row in self.matrix}) <= 1


OperatorSpec = SymbolicOperator | NumericOperator


@dataclass(frozen=True, slots=True)
class EdgePair:
    """One line of the diagram: the edge source→target and its adjoint back."""

    id: str
    source: str
    target: str
    operator: OperatorSpec

    def endpoints(self) -> frozenset[str]:
        return frozenset((self.source, self.target))


@dataclass(frozen=True, slots=True)
class KrajewskiDiagram:
    algebra: FiniteAlgebra
    kodim: int
    vertices: tuple[DiagramVertex, ...]
    edges: tuple[EdgePair, ...]
    jmap: tuple[tuple[str, str], ...] | None = None
    families: int = 1

    def vertex(self, vid: str) -> DiagramVertex:
        return self._vertex_index()[vid]

    def _vertex_index(self) -> dict[str, DiagramVertex]:
        return {v.id: v for v in self.vertices}

    def jdict(self) -> dict[str, str]:
        """The involution as a dict; requires a stored (resolved) jmap."""
        if self.jmap is None:
            raise ValueError("jmap not resolved; validate the diagram first")
        out: dict[str, str] = {}
        for a, b in self.jmap:
            out[a] = b
            out[b] = a
        return out

    @property
    def signs(self) -> KOSigns:
        return ko_signs(self.kodim)


class DiracPart(enum.Enum):
    """Which summand of the Dirac operator an edge belongs to.

    D0: both column and row labels agree across the edge (no field content).
    Delta: "horizontal" — row labels agree, column labels differ.
    JDeltaJ: "vertical" — column labels agree, row labels differ.
    """

    D0 = "D0"
    DELTA = "Delta"
    J_DELTA_J = "JDeltaJ"


def edge_part(d: KrajewskiDiagram, edge: EdgePair) -> DiracPart:
    verts = d._vertex_index()
    s, t = verts[edge.source], verts[edge.target]
    cols_equal = s.col == t.col
    rows_equal = s.row == t.row
    if cols_equal and rows_equal:
        return DiracPart.D0
    if rows_equal:
        return DiracPart.DELTA
    if cols_equal:
        return DiracPart.J_DELTA_J
    raise ValueError(f"edge {edge.id} is diagonal (violates the first-order condition)")


def dirac_decomposition(d: KrajewskiDiagram) -> dict[DiracPart, tuple[EdgePair, ...]]:
    """Partition the edge pairs into the three Dirac summands."""
    out: dict[DiracPart, list[EdgePair]] = {part: [] for part in DiracPart}
    for edge in d.edges:
        out[edge_part(d, edge)].append(edge)
    return {part: tuple(edges) for part, edges in out.items()}


# ---------------------------------------------------------------------------
# Validation


@dataclass(frozen=True, slots=True)
class CheckResult:
    check: str
    ok: bool
    severity: str  # "error" | "warning" | "info"
    details: tuple[str, ...] = ()


@dataclass(frozen=True, slots=True)
class ValidationReport:
    entries: tuple[CheckResult, ...]
    diagram: KrajewskiDiagram | None

    @property
    def ok(self) -> bool:
        return all(e.ok or e.severity != "error" for e in self.entries)

    @property
    def warnings(self) -> tuple[str, ...]:
        out: list[str] = []
        for e in self.entries:
            if e.severity == "warning" and not e.ok:
                out.extend(e.details)
        return tuple(out)

    def failures(self) -> tuple[CheckResult, ...]:
        return tuple(e for e in self.entries if not e.ok and e.severity == "error")


def resolve_jmap(d: KrajewskiDiagram) -> dict[str, str]:
    """Complete the involution, inferring unlisted vertices by rep swap.

    Explicit pairs are taken as-is.  Every remaining vertex v must have a
    unique unmatched partner w with col(w) = row(v) and row(w) = col(v)
    (possibly w = v); anything else raises ValueError.
    """
    verts = d._vertex_index()
    mapping: dict[str, str] = {}
    for a, b in d.jmap or ():
        if a not in verts or b not in verts:
            raise ValueError(f"jmap references unknown vertex: {a} <-> {b}")
        for x, y in ((a, b), (b, a)):
            if mapping.get(x, y) != y:
                raise ValueError(f"conflicting jmap entries for vertex {x}")
            mapping[x] = y
    for vid in sorted(verts):
        if vid in mapping:
            continue
        v = verts[vid]
        candidates = [
            w.id
            for w in d.vertices
            if w.id not in mapping and w.col == v.row and w.row == v.col
        ]
        if len(candidates) != 1:
            kind = "no" if not candidates else "several"
            raise ValueError(
                f"cannot infer the mirror of vertex {vid}: {kind} rep-swap "
                "candidates; declare an explicit jmap"
            )
        partner = candidates[0]
        mapping[vid] = partner
        mapping[partner] = vid
    return mapping


def _normalized_jmap(mapping: Mapping[str, str]) -> tuple[tuple[str, str], ...]:
    pairs = {tuple(sorted((a, b))) for a, b in mapping.items()}
    return tuple(sorted((a, b) for a, b in pairs))


def validate(d: KrajewskiDiagram) -> ValidationReport:
    """Check the diagram axioms; failures become report entries.

    On success the report carries a resolved copy of the diagram (jmap made
    explicit and normalized).
    """
    entries: list[CheckResult] = []

    structural = _check_structure(d)
    entries.append(structural)
    if not structural.ok:
        return ValidationReport(tuple(entries), None)

    verts = d._vertex_index()

    entries.append(
        CheckResult(
            "edge-pairing",
            True,
            "info",
            ("edges are stored as adjoint pairs; the reverse orientation is implied",),
        )
    )

    # First-order condition: every edge runs horizontally or vertically.
    diagonal = []
    for edge in d.edges:
        s, t = verts[edge.source], verts[edge.target]
        if s.col != t.col and s.row != t.row:
            diagonal.append(f"edge {edge.id} connects ({edge.source}) and ({edge.target})")
    entries.append(
        CheckResult("first-order", not diagonal, "error", tuple(diagonal))
    )

    # Involution: resolve, then check the rep swap.
    mapping: dict[str, str] | None = None
    try:
        mapping = resolve_jmap(d)
    except ValueError as exc:
        entries.append(CheckResult("j-involution", False, "error", (str(exc),)))
    if mapping is not None:
        swap_bad = []
        for vid, wid in mapping.items():
            v, w = verts[vid], verts[wid]
            if w.col != v.row or w.row != v.col:
                swap_bad.append(f"j({vid}) = {wid} does not swap column and row labels")
        entries.append(CheckResult("j-involution", not swap_bad, "error", tuple(swap_bad)))

        sym_bad = []
        pair_count: dict[frozenset[str], int] = {}
        for edge in d.edges:
            key = edge.endpoints()
            pair_count[key] = pair_count.get(key, 0) + 1
        for key, count in pair_count.items():
            mirrored = frozenset(mapping[v] for v in key)
            if pair_count.get(mirrored, 0) != count:
                a, b = sorted(key) if len(key) == 2 else (next(iter(key)),) * 2
                sym_bad.append(f"edge multiset not j-symmetric at pair ({a}, {b})")
        entries.append(CheckResult("j-symmetry", not sym_bad, "error", tuple(sym_bad)))

    signs = ko_signs(d.kodim)
    entries.append(_check_grading(d, verts, mapping, signs))

    entries.append(_check_operator_shapes(d, verts))

    if d.kodim % 8 in (2, 3, 4, 5):
        entries.append(
            CheckResult(
                "ko-subtlety",
                False,
                "warning",
                (
                    f"KO-dimension {d.kodim} uses the plain involution semantics; "
                    "the doubled-vertex refinement is not modeled",
                ),
            )
        )

    ok = all(e.ok or e.severity != "error" for e in entries)
    resolved = None
    if ok and mapping is not None:
        resolved = replace(d, jmap=_normalized_jmap(mapping))
    return ValidationReport(tuple(entries), resolved)


def _check_structure(d: KrajewskiDiagram) -> CheckResult:
    problems: list[str] = []
    if not 0 <= d.kodim <= 7:
        problems.append(f"KO-dimension {d.kodim} outside 0..7")
    if d.families < 1:
        problems.append(f"families must be positive, got {d.families}")
    seen_v: set[str] = set()
    for v in d.vertices:
        if v.id in seen_v:
            problems.append(f"duplicate vertex id {v.id}")
        seen_v.add(v.id)
        for label in (v.col, v.row):
            try:
                label.check_against(d.algebra)
            except ValueError as exc:
                problems.append(f"vertex {v.id}: {exc}")
        if v.sign not in (None, 1, -1):
            problems.append(f"vertex {v.id}: sign must be +1 or -1")
    seen_e: set[str] = set()
    for edge in d.edges:
        if edge.id in seen_e:
            problems.append(f"duplicate edge id {edge.id}")
        seen_e.add(edge.id)
        for endpoint in (edge.source, edge.target):
            if endpoint not in seen_v:
                problems.append(f"edge {edge.id} references unknown vertex {endpoint}")
        if isinstance(edge.operator, NumericOperator):
            if not edge.operator.matrix or not edge.operator.matrix[0]:
                problems.append(f"edge {edge.id}: empty matrix")
            elif not edge.operator.is_rectangular():
                problems.append(f"edge {edge.id}: ragged matrix rows")
            elif edge.operator.is_zero():
                problems.append(f"edge {edge.id}: operator matrix is zero")
    return CheckResult("structure", not problems, "error", tuple(problems))


def _check_grading(
    d: KrajewskiDiagram,
    verts: dict[str, DiagramVertex],
    mapping: dict[str, str] | None,
    signs: KOSigns,
) -> CheckResult:
    if not signs.even:
        stray = [v.id for v in d.vertices if v.sign is not None]
        if stray:
            return CheckResult(
                "grading",
                False,
                "warning",
                (f"odd KO-dimension ignores signs on: {', '.join(sorted(stray))}",),
            )
        return CheckResult("grading", True, "info", ("odd KO-dimension: no grading",))
    problems = []
    for v in d.vertices:
        if v.sign is None:
            problems.append(f"vertex {v.id} lacks a sign (even KO-dimension)")
    if not problems:
        for edge in d.edges:
            if verts[edge.source].sign == verts[edge.target].sign:
                problems.append(
                    f"edge {edge.id} connects vertices of equal sign "
                    f"({edge.source}, {edge.target})"
                )
        if mapping is not None:
            assert signs.eps_double_prime is not None
            for vid, wid in mapping.items():
                expected = signs.eps_double_prime * verts[vid].sign  # type: ignore[operator]
                if verts[wid].sign != expected:
                    problems.append(
                        f"sign of j({vid}) = {wid} should be {expected:+d}"
                    )
    return CheckResult("grading", not problems, "error", tuple(problems))


def _check_operator_shapes(
    d: KrajewskiDiagram, verts: dict[str, DiagramVertex]
) -> CheckResult:
    problems = []
    for edge in d.edges:
        if not isinstance(edge.operator, NumericOperator):
            continue
        s, t = verts[edge.source], verts[edge.target]
        try:
            part = edge_part(d, edge)
        except ValueError:
            continue  # reported by the first-order check
        if part is DiracPart.J_DELTA_J:
            expected = (t.row.dimension(d.algebra), s.row.dimension(d.algebra))
        else:
            expected = (t.col.dimension(d.algebra), s.col.dimension(d.algebra))
        if edge.operator.shape != expected:
            problems.append(
                f"edge {edge.id}: matrix shape {edge.operator.shape} "
                f"does not match {expected} (target-dim × source-dim)"
            )
    return CheckResult("operator-shape", not problems, "error", tuple(problems))


# ---------------------------------------------------------------------------
# Derived quantities


def hilbert_dimension(d: KrajewskiDiagram) -> int:
    """families × Σ_v dim(col v) · dim(row v)."""
    total = sum(
        v.col.dimension(d.algebra) * v.row.dimension(d.algebra) for v in d.vertices
    )
    return d.families * total


def fundamental_multiplicities(d: KrajewskiDiagram) -> tuple[int, ...]:
    """Per factor: how often its fundamental acts on the Hilbert space.

    A vertex whose column label lies over factor i (conjugate or not)
    contributes dim(row) copies of that factor's fundamental, all scaled by
    the global family multiplicity.
    """
    counts = [0] * len(d.algebra.factors)
    for v in d.vertices:
        counts[v.col.factor_index] += v.row.dimension(d.algebra)
    return tuple(d.families * c for c in counts)


def _operator_key(op: OperatorSpec):
    if isinstance(op, SymbolicOperator):
        return ("label", op.label)
    return (
        "matrix",
        tuple(
            tuple(
                (e.re.numerator, e.re.denominator, e.im.numerator, e.im.denominator)
                for e in row
            )
            for row in op.matrix
        ),
    )


def structural_key(d: KrajewskiDiagram):
    """A hashable key for structural equality, independent of list order.

    The jmap is resolved first when possible so that diagrams differing only
    in explicit-versus-inferred involutions compare equal.
    """
    try:
        jpairs = _normalized_jmap(resolve_jmap(d))
    except ValueError:
        jpairs = d.jmap
    return (
        tuple((f.size, f.kind.value) for f in d.algebra.factors),
        d.kodim % 8,
        d.families,
        tuple(
            sorted(
                (v.id, v.col.factor_index, v.col.conjugate, v.row.factor_index,
                 v.row.conjugate, v.sign)
                for v in d.vertices
            )
        ),
        tuple(
            sorted(
                (e.id, e.source, e.target, _operator_key(e.operator))
                for e in d.edges
            )
        ),
        jpairs,
    )
