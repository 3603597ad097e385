"""Recognition of graphs representable by proper subtree models on a fixed tree.

The package decides whether a graph G admits a proper representation by
connected subtree models on a re-subdivision of a given tree T, produces a
verified representation for yes-instances, and ships an independent
brute-force oracle, instance generators, and the poset-dimension hardness
gadget suite.
"""

__version__ = "0.1.0"

from .graphs import Graph, parse_graph_text, format_graph_text
from .hosts import HostTree, Host, is_re_subdivision
from .chordal import is_chordal, maximal_cliques
from .representations import (
    Representation,
    verify_proper,
    verify_compact,
    proper_from_compact,
    compact_from_proper,
)
from .solver import recognize, recognize_connected, proper_leafage, rehang
from .oracle import oracle_recognize, gen_planted, gen_chordal

__all__ = [
    "Graph",
    "Host",
    "HostTree",
    "Representation",
    "compact_from_proper",
    "format_graph_text",
    "gen_chordal",
    "gen_planted",
    "is_chordal",
    "is_re_subdivision",
    "maximal_cliques",
    "oracle_recognize",
    "parse_graph_text",
    "proper_from_compact",
    "proper_leafage",
    "recognize",
    "recognize_connected",
    "rehang",
    "verify_compact",
    "verify_proper",
]
