"""Color-avoiding connectivity: verification, colorings, orientations, reductions."""

from .graph import (ColoredDigraph, ColoredGraph, Cut, Edge, ParseError, Vertex,
                    make_graph, parse, serialize)
from .verify import GuardError, Notion, Verdict, verify, verify_pair

__all__ = [
    "ColoredDigraph", "ColoredGraph", "Cut", "Edge", "GuardError", "Notion",
    "ParseError", "Verdict", "Vertex", "make_graph", "parse", "serialize",
    "verify", "verify_pair",
]
__version__ = "0.1.0"
