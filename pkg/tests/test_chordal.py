from treerep.chordal import (
    clique_tree,
    is_chordal,
    is_proper_interval,
    maximal_cliques,
)
from treerep.hosts import tree_adjacency

from helpers import (
    bowtie_graph,
    complete_graph,
    cycle_graph,
    diamond_graph,
    net_graph,
    path_graph,
    star_graph,
)


def _assert_induced_cycle(g, cyc):
    k = len(cyc)
    assert k >= 4
    for i in range(k):
        assert g.has_edge(cyc[i], cyc[(i + 1) % k])
    for i in range(k):
        for j in range(i + 2, k):
            if (i, j) != (0, k - 1):
                assert not g.has_edge(cyc[i], cyc[j])


def test_c4_yields_witness_cycle():
    res = is_chordal(cycle_graph(4))
    assert not res.chordal
    _assert_induced_cycle(cycle_graph(4), res.witness_cycle)


def test_c5_plus_chords_yields_witness():
    # 6-cycle with one long chord still contains an induced cycle
    g = cycle_graph(6)
    res = is_chordal(g)
    assert not res.chordal
    _assert_induced_cycle(g, res.witness_cycle)


def test_chordal_graphs_get_elimination_orders():
    for g in (
        path_graph(6),
        star_graph(4),
        complete_graph(5),
        diamond_graph(),
        net_graph(),
        bowtie_graph(),
    ):
        res = is_chordal(g)
        assert res.chordal
        assert sorted(res.peo) == list(range(g.n))


def test_empty_and_single_vertex():
    from treerep.graphs import Graph

    assert is_chordal(Graph(0)).chordal
    assert is_chordal(Graph(1)).chordal


def test_maximal_cliques():
    assert maximal_cliques(complete_graph(4)) == [[0, 1, 2, 3]]
    assert maximal_cliques(path_graph(3)) == [[0, 1], [1, 2]]
    assert {tuple(c) for c in maximal_cliques(diamond_graph())} == {
        (0, 1, 2),
        (0, 1, 3),
    }
    assert {tuple(c) for c in maximal_cliques(bowtie_graph())} == {
        (0, 1, 2),
        (2, 3, 4),
    }


def test_clique_tree_running_intersection():
    g = net_graph()
    ct = clique_tree(g)
    assert len(ct.cliques) == 4
    for u, v in g.edges():
        assert any(u in c and v in c for c in ct.cliques)
    adj = tree_adjacency(ct.tree)
    for v in range(g.n):
        nodes = {i for i, c in enumerate(ct.cliques) if v in c}
        # the clique nodes containing v induce a connected subtree
        seen = {min(nodes)}
        frontier = [min(nodes)]
        while frontier:
            x = frontier.pop()
            for y in adj[x]:
                if y in nodes and y not in seen:
                    seen.add(y)
                    frontier.append(y)
        assert seen == nodes


def test_is_proper_interval():
    assert is_proper_interval(path_graph(7))
    assert is_proper_interval(complete_graph(4))
    assert is_proper_interval(path_graph(1))
    assert not is_proper_interval(star_graph(3))
    assert not is_proper_interval(net_graph())
    assert not is_proper_interval(cycle_graph(5))
