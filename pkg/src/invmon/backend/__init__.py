from .graph import SchutzGraph, StephenBudget, canonical_graph, schutzenberger_graph
from .monoid import FiniteInverseMonoid, from_partial_bijections, same_monoid
from .presentation import Presentation, adjoin_zero, parse_presentation
from .stephen import Verdict, enumerate_monoid, m_equal, stephen_graph

__all__ = [
    "FiniteInverseMonoid",
    "Presentation",
    "SchutzGraph",
    "StephenBudget",
    "Verdict",
    "adjoin_zero",
    "canonical_graph",
    "enumerate_monoid",
    "from_partial_bijections",
    "m_equal",
    "parse_presentation",
    "same_monoid",
    "schutzenberger_graph",
    "stephen_graph",
]
