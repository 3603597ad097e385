import pytest

from treerep.errors import InputFormatError
from treerep.graphs import (
    Graph,
    connected_components,
    format_graph_text,
    induced_subgraph,
    is_connected,
    parse_graph_text,
)

from helpers import path_graph


def test_build_and_queries():
    g = Graph(4, [(0, 1), (1, 2), (2, 3)])
    assert g.has_edge(1, 0)
    assert not g.has_edge(0, 2)
    assert g.neighbors(1) == [0, 2]
    assert g.degree(2) == 2
    assert g.edges() == [(0, 1), (1, 2), (2, 3)]
    assert g.edge_count() == 3


def test_rejects_bad_edges():
    with pytest.raises(ValueError):
        Graph(3, [(0, 3)])
    with pytest.raises(ValueError):
        Graph(3, [(1, 1)])
    with pytest.raises(ValueError):
        Graph(-1)


def test_duplicate_edges_collapse():
    g = Graph(3, [(0, 1), (1, 0), (1, 2)])
    assert g.edge_count() == 2


def test_connectivity_helpers():
    g = Graph(6, [(0, 1), (1, 2), (3, 4)])
    comps = connected_components(g)
    assert sorted(sorted(c) for c in comps) == [[0, 1, 2], [3, 4], [5]]
    assert not is_connected(g)
    assert is_connected(path_graph(4))
    assert is_connected(Graph(1))


def test_induced_subgraph_keeps_order():
    g = Graph(5, [(0, 1), (1, 3), (3, 4), (1, 2)])
    sub, mapping = induced_subgraph(g, [1, 3, 4])
    assert sub.n == 3
    back = {local: orig for orig, local in mapping.items()}
    edges = {tuple(sorted((back[u], back[v]))) for u, v in sub.edges()}
    assert edges == {(1, 3), (3, 4)}


def test_text_round_trip():
    g = Graph(5, [(0, 1), (1, 2), (3, 4)])
    h = parse_graph_text(format_graph_text(g))
    assert h.n == g.n
    assert h.edges() == g.edges()


def test_parse_accepts_comments_and_blank_lines():
    g = parse_graph_text("# header next\n3 2\n\n0 1  # an edge\n1 2\n")
    assert g.n == 3
    assert g.edges() == [(0, 1), (1, 2)]


def test_parse_errors():
    with pytest.raises(InputFormatError):
        parse_graph_text("")
    with pytest.raises(InputFormatError):
        parse_graph_text("2\n")
    with pytest.raises(InputFormatError):
        parse_graph_text("2 2\n0 1\n")
    with pytest.raises(InputFormatError):
        parse_graph_text("2 1\n0 x\n")
    with pytest.raises(InputFormatError):
        parse_graph_text("2 1\n0 2\n")
