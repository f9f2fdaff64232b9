"""Exact rainbow neighbourhood numbers of small graphs."""

from rainbow_nbhd.colouring import (
    BudgetExceeded,
    Colouring,
    SearchBudget,
    chromatic_number,
    clique_number,
    convention_colourings,
    enumerate_chi_colourings,
    is_proper,
)
from rainbow_nbhd.estimator import RainbowInvariants, check_graph
from rainbow_nbhd.families import FamilySpec, generate
from rainbow_nbhd.graph import (
    Graph,
    closed_neighbourhood,
    degree,
    is_bipartite,
    is_connected,
)
from rainbow_nbhd.io import emit_graph6, parse_dimacs, parse_edge_list, parse_graph6
from rainbow_nbhd.rainbow import (
    FamilyCheck,
    RainbowRange,
    RainbowReport,
    rainbow_count,
    rainbow_range,
    verify_family,
    yields_rainbow,
)

__version__ = "0.1.0"

__all__ = [
    "BudgetExceeded",
    "Colouring",
    "FamilyCheck",
    "FamilySpec",
    "Graph",
    "RainbowInvariants",
    "RainbowRange",
    "RainbowReport",
    "SearchBudget",
    "check_graph",
    "chromatic_number",
    "clique_number",
    "closed_neighbourhood",
    "convention_colourings",
    "degree",
    "emit_graph6",
    "enumerate_chi_colourings",
    "generate",
    "is_bipartite",
    "is_connected",
    "is_proper",
    "parse_dimacs",
    "parse_edge_list",
    "parse_graph6",
    "rainbow_count",
    "rainbow_range",
    "verify_family",
    "yields_rainbow",
]
