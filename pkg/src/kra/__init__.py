"""Finite noncommutative geometries as decorated graphs.

The package models finite real spectral triples as Krajewski diagrams,
validates their axioms, derives the gauge Lie algebra and scalar field
content, generates the expanded action's trace terms, checks them against
the counterterms gauge invariance demands, decides R-connectedness, and
issues the renormalizability verdict for the asymptotically expanded
action.  A ``.kra`` text format and the ``kra`` command-line tool wrap the
library.
"""

from __future__ import annotations

__version__ = "0.1.0"

from .algebra import (
    AlgebraFactor,
    FactorKind,
    FiniteAlgebra,
    GaugeAlgebraDecomposition,
    RepLabel,
    UnimodularityRelation,
    algebra_dimension,
    simple_factor_dimension,
    gauge_lie_algebra,
    irrep_correspondence_check,
    unimodularity_relation,
)
from .builtins import BUILTIN_SUMMARIES, builtin, builtin_names
from .diagram import (
    CheckResult,
    DiagramVertex,
    DiracPart,
    EdgePair,
    KOSigns,
    KrajewskiDiagram,
    NumericOperator,
    SymbolicOperator,
    ValidationReport,
    dirac_decomposition,
    edge_part,
    fundamental_multiplicities,
    hilbert_dimension,
    ko_signs,
    resolve_jmap,
    structural_key,
    validate,
)
from .dsl import ParseError, SourceSpan, format_entry, parse, serialize
from .exactlin import GaussRational, matrix_rank, span_rank
from .graphs import (
    LiftWitness,
    ProjEdge,
    ProjectedGraph,
    canonical_cycle,
    cycle_pairs,
    cyclic_equal,
    enumerate_cycles,
    lift_cycle,
    lift_pair,
    project,
)
from .invariants import (
    CoverageReport,
    FieldComponent,
    FieldInventory,
    InvariantTerm,
    TermKind,
    action_terms,
    basis_dimension,
    canonical_block,
    canonical_key,
    collapse_blocks,
    counterterm_coverage,
    enumerate_fields,
    required_counterterms,
)
from .powercount import (
    IRREP_HYPOTHESIS,
    NON_MULTIPLICATIVE_NOTE,
    ORDER_FOUR_NOTE,
    RCONNECT_HYPOTHESIS,
    ExpansionOrder,
    GraphProfile,
    HeatKernelCoefficients,
    Verdict,
    heat_kernel_coefficients,
    omega_bound,
    omega_external,
    propagator_uv_degrees,
    renorm_verdict,
    validate_profile,
)
from .rconnect import (
    QUATERNION_CONJUGATE_PAIR,
    SHARED_TRIVIAL_VERTEX,
    Exemption,
    RConnectReport,
    check_r_connected,
    exemption_check,
)

__all__ = [
    "__version__",
    "AlgebraFactor",
    "FactorKind",
    "FiniteAlgebra",
    "GaugeAlgebraDecomposition",
    "RepLabel",
    "UnimodularityRelation",
    "algebra_dimension",
    "simple_factor_dimension",
    "gauge_lie_algebra",
    "irrep_correspondence_check",
    "unimodularity_relation",
    "BUILTIN_SUMMARIES",
    "builtin",
    "builtin_names",
    "CheckResult",
    "DiagramVertex",
    "DiracPart",
    "EdgePair",
    "KOSigns",
    "KrajewskiDiagram",
    "NumericOperator",
    "SymbolicOperator",
    "ValidationReport",
    "dirac_decomposition",
    "edge_part",
    "fundamental_multiplicities",
    "hilbert_dimension",
    "ko_signs",
    "resolve_jmap",
    "structural_key",
    "validate",
    "ParseError",
    "SourceSpan",
    "format_entry",
    "parse",
    "serialize",
    "GaussRational",
    "matrix_rank",
    "span_rank",
    "LiftWitness",
    "ProjEdge",
    "ProjectedGraph",
    "canonical_cycle",
    "cycle_pairs",
    "cyclic_equal",
    "enumerate_cycles",
    "lift_cycle",
    "lift_pair",
    "project",
    "CoverageReport",
    "FieldComponent",
    "FieldInventory",
    "InvariantTerm",
    "TermKind",
    "action_terms",
    "basis_dimension",
    "canonical_block",
    "canonical_key",
    "collapse_blocks",
    "counterterm_coverage",
    "enumerate_fields",
    "required_counterterms",
    "IRREP_HYPOTHESIS",
    "NON_MULTIPLICATIVE_NOTE",
    "ORDER_FOUR_NOTE",
    "RCONNECT_HYPOTHESIS",
    "ExpansionOrder",
    "GraphProfile",
    "HeatKernelCoefficients",
    "Verdict",
    "heat_kernel_coefficients",
    "omega_bound",
    "omega_external",
    "propagator_uv_degrees",
    "renorm_verdict",
    "validate_profile",
    "QUATERNION_CONJUGATE_PAIR",
    "SHARED_TRIVIAL_VERTEX",
    "Exemption",
    "RConnectReport",
    "check_r_connected",
    "exemption_check",
]
