"""Finite contextual logics: two-valued states, polytopes, quantum realizations."""

from ctxlab.logic import (
    Logic,
    ValidationReport,
    Violation,
    LogicError,
    LogicParseError,
    PasteInvalid,
    parse_logic,
    serialize_logic,
    validate_logic,
    canonical_logic,
    paste_logics,
    same_structure,
    export_greechie_dot,
)
from ctxlab.states import (
    TwoValuedState,
    StateSpaceReport,
    MeasureReport,
    PairProperty,
    IndefinitenessCertificate,
    MixtureWeights,
    ProbabilityAssignment,
    enumerate_states,
    brute_force_states,
    atom_state_sets,
    classify_states,
    pair_property,
    convex_mixture,
    check_measure,
    certify_value_indefiniteness,
    states_table,
)
from ctxlab.polytope import (
    VertexSet,
    Inequality,
    Equality,
    Polytope,
    MembershipResult,
    ImplicationResult,
    MissingCoordinate,
    vertices_from_states,
    facet_enumeration,
    canonical_inequality,
    evaluate_inequality,
    membership,
    axiom_implied,
    parse_inequality,
)
from ctxlab.realization import (
    Realization,
    RealizationReport,
    FeasibilityWindow,
    ViolationReport,
    RealizationError,
    VectorParseError,
    parse_vectors,
    check_realization,
    born_probabilities,
    projector,
    maximal_operator,
    recover_projectors,
    angle,
    bug_pasting_feasibility,
    quantum_vs_classical,
)
from ctxlab.urn import (
    PartitionRepresentation,
    UrnResult,
    UnknownContext,
    partition_representation,
    urn_simulate,
)
from ctxlab.catalog import (
    CatalogEntry,
    ExpectedStates,
    UnknownEntry,
    catalog_list,
    catalog_get,
)

__all__ = [
    "Logic",
    "ValidationReport",
    "Violation",
    "LogicError",
    "LogicParseError",
    "PasteInvalid",
    "parse_logic",
    "serialize_logic",
    "validate_logic",
    "canonical_logic",
    "paste_logics",
    "same_structure",
    "export_greechie_dot",
    "TwoValuedState",
    "StateSpaceReport",
    "MeasureReport",
    "PairProperty",
    "IndefinitenessCertificate",
    "MixtureWeights",
    "ProbabilityAssignment",
    "enumerate_states",
    "brute_force_states",
    "atom_state_sets",
    "classify_states",
    "pair_property",
    "convex_mixture",
    "check_measure",
    "certify_value_indefiniteness",
    "states_table",
    "VertexSet",
    "Inequality",
    "Equality",
    "Polytope",
    "MembershipResult",
    "ImplicationResult",
    "MissingCoordinate",
    "vertices_from_states",
    "facet_enumeration",
    "canonical_inequality",
    "evaluate_inequality",
    "membership",
    "axiom_implied",
    "parse_inequality",
    "Realization",
    "RealizationReport",
    "FeasibilityWindow",
    "ViolationReport",
    "RealizationError",
    "VectorParseError",
    "parse_vectors",
    "check_realization",
    "born_probabilities",
    "projector",
    "maximal_operator",
    "recover_projectors",
    "angle",
    "bug_pasting_feasibility",
    "quantum_vs_classical",
    "PartitionRepresentation",
    "UrnResult",
    "UnknownContext",
    "partition_representation",
    "urn_simulate",
    "CatalogEntry",
    "ExpectedStates",
    "UnknownEntry",
    "catalog_list",
    "catalog_get",
]

__version__ = "0.1.0"
