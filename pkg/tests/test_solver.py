import pytest

from treerep.chordal import maximal_cliques
from treerep.errors import NotChordal, NotConnected, NotOnChain
from treerep.graphs import Graph
from treerep.hosts import HostTree, is_re_subdivision
from treerep.representations import verify_compact, verify_proper
from treerep.solver import (
    proper_leafage,
    recognize,
    recognize_connected,
    rehang,
)

from helpers import (
    complete_graph,
    cycle_graph,
    double_star_graph,
    double_star_tree,
    net_graph,
    path_graph,
    path_tree,
    star_graph,
    star_tree,
)


def _check_yes(g, t):
    rep = recognize(g, t)
    assert rep is not None
    assert rep.mode == "proper"
    ok, why = verify_proper(g, rep)
    assert ok, why
    assert is_re_subdivision(rep.host, t)
    return rep


def test_paths_and_cliques_on_an_edge_target():
    k2 = path_tree(2)
    for g in (path_graph(1), path_graph(2), path_graph(6), complete_graph(4)):
        _check_yes(g, k2)


def test_empty_and_single_node_targets():
    assert recognize(Graph(0), path_tree(3)) is not None
    assert recognize(Graph(1), HostTree(1, [])) is not None
    assert recognize(path_graph(2), HostTree(1, [])) is None


def test_claw_needs_three_leaves():
    claw = star_graph(3)
    assert recognize(claw, path_tree(2)) is None
    _check_yes(claw, star_tree(3))


def test_net_graph_needs_three_leaves():
    net = net_graph()
    assert recognize(net, path_tree(2)) is None
    _check_yes(net, star_tree(3))


def test_double_star_leaf_demand():
    d22 = double_star_graph(2, 2)
    assert recognize(d22, star_tree(3)) is None
    _check_yes(d22, star_tree(4))
    _check_yes(d22, double_star_tree(2, 2))


def test_larger_targets_subsume_smaller_ones():
    g = path_graph(5)
    for t in (path_tree(4), star_tree(3), star_tree(4), double_star_tree(2, 2)):
        _check_yes(g, t)


def test_star_graph_saturates_star_targets():
    assert recognize(star_graph(4), star_tree(3)) is None
    _check_yes(star_graph(4), star_tree(4))


def test_non_chordal_inputs():
    assert recognize(cycle_graph(4), path_tree(2)) is None
    assert recognize(cycle_graph(6), star_tree(3)) is None
    with pytest.raises(NotChordal):
        recognize_connected(cycle_graph(4), path_tree(2))


def test_recognize_connected_rejects_disconnected():
    g = Graph(4, [(0, 1), (2, 3)])
    with pytest.raises(NotConnected):
        recognize_connected(g, path_tree(2))


def test_disconnected_graphs_share_the_host():
    two_paths = Graph(6, [(0, 1), (1, 2), (3, 4), (4, 5)])
    _check_yes(two_paths, path_tree(2))
    claw_edges = [(0, 1), (0, 2), (0, 3)]
    two_claws = Graph(8, claw_edges + [(u + 4, v + 4) for u, v in claw_edges])
    assert recognize(two_claws, star_tree(3)) is None
    _check_yes(two_claws, double_star_tree(2, 2))
    mixed = Graph(7, claw_edges + [(4, 5), (5, 6)])
    _check_yes(mixed, star_tree(3))


def test_proper_leafage_values():
    assert proper_leafage(Graph(1))[0] == 0
    assert proper_leafage(path_graph(5))[0] == 2
    assert proper_leafage(complete_graph(4))[0] == 2
    assert proper_leafage(star_graph(3))[0] == 3
    assert proper_leafage(net_graph())[0] == 3
    assert proper_leafage(star_graph(4))[0] == 4
    ell, t = proper_leafage(double_star_graph(2, 2))
    assert ell == 4
    assert recognize(double_star_graph(2, 2), t) is not None


def test_rehang_swaps_chain_interiors():
    g = path_graph(5)
    out = recognize_connected(g, path_tree(2))
    assert out is not None
    rep, _ = out
    assert rep.mode == "compact"
    ok, why = verify_compact(g, rep)
    assert ok, why
    cliques = maximal_cliques(g)
    vs = rep.vertex_sets()
    deg = rep.host.degrees()
    node_of = {
        tuple(sorted(vs[x])): x for x in range(rep.host.n) if deg[x] != 1
    }
    yi = node_of[(1, 2)]
    yj = node_of[(2, 3)]
    for a, b in ((yi, yj), (yj, yi)):
        moved = rehang(rep, a, b)
        ok, why = verify_compact(g, moved)
        assert ok, why
    with pytest.raises(NotOnChain):
        rehang(rep, node_of[(0, 1)], yi)
