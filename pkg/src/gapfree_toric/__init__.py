"""Toric ideals of graphs, their Graver bases and lex Groebner bases."""

from .graph import (
    Graph,
    GraphError,
    GraphParseError,
    complement,
    is_chordal,
    is_gap_free,
    k_step_linearity,
    odd_cycle_condition,
    parse_graph,
    standard_graph,
)
from .groebner import (
    GroebnerBasis,
    TermOrder,
    groebner_violations,
    is_circuit_basis,
    mainlemma_witness,
    reduced_groebner_basis,
    squarefree_report,
)
from .linres import (
    EdgeOrdering,
    derive_edge_order,
    linear_quotient_ordering,
    power_linear_quotients,
    prefix_gap_free,
    term_order,
    verify_linear_quotients,
)
from .toric import Binomial, Walk, classify_primitive_walk, enumerate_circuits, enumerate_graver, walk_binomial

__all__ = [
    "Binomial",
    "EdgeOrdering",
    "Graph",
    "GraphError",
    "GraphParseError",
    "GroebnerBasis",
    "TermOrder",
    "Walk",
    "classify_primitive_walk",
    "complement",
    "derive_edge_order",
    "enumerate_circuits",
    "enumerate_graver",
    "groebner_violations",
    "is_chordal",
    "is_circuit_basis",
    "is_gap_free",
    "k_step_linearity",
    "linear_quotient_ordering",
    "mainlemma_witness",
    "odd_cycle_condition",
    "parse_graph",
    "power_linear_quotients",
    "prefix_gap_free",
    "reduced_groebner_basis",
    "squarefree_report",
    "standard_graph",
    "term_order",
    "verify_linear_quotients",
    "walk_binomial",
]
