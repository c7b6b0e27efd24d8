"""Order divisor graphs of finite groups."""

from .groups import FiniteGroup, parse_spec
from .graphs import Graph
from .odgraph import comparability_graph, extended_graph, od_graph

__all__ = ["FiniteGroup", "Graph", "parse_spec", "od_graph", "comparability_graph", "extended_graph"]
__version__ = "0.1.0"
