import pytest

from treerep.chordal import maximal_cliques
from treerep.oracle import oracle_surrounding
from treerep.structure import (
    chains,
    components_K,
    is_surrounding,
    rehang_neighbors_equal,
    surrounding_pairs,
)

from helpers import (
    bowtie_graph,
    complete_graph,
    diamond_graph,
    net_graph,
    path_graph,
    star_graph,
)


def test_components_outside_a_clique():
    g = diamond_graph()
    cliques = maximal_cliques(g)
    y = cliques.index([0, 1, 2])
    comps = components_K(g, cliques, y)
    assert [sorted(c.vertices) for c in comps] == [[3]]
    assert set(comps[0].hull) <= set(cliques[y])
    assert set(comps[0].hull) == {0, 1}


def test_components_split_around_middle_clique():
    g = path_graph(5)
    cliques = maximal_cliques(g)
    y = cliques.index([2, 3])
    comps = components_K(g, cliques, y)
    assert sorted(sorted(c.vertices) for c in comps) == [[0, 1], [4]]


def test_single_clique_has_no_components():
    g = complete_graph(4)
    cliques = maximal_cliques(g)
    assert components_K(g, cliques, 0) == []


def test_surrounding_matches_brute_force():
    for g in (
        path_graph(5),
        path_graph(7),
        diamond_graph(),
        net_graph(),
        bowtie_graph(),
        star_graph(4),
    ):
        cliques = maximal_cliques(g)
        for y in range(len(cliques)):
            assert surrounding_pairs(g, cliques, y) == oracle_surrounding(
                g, cliques, y
            ), (g, y)


def test_is_surrounding_on_a_path():
    g = path_graph(4)
    cliques = maximal_cliques(g)
    a = cliques.index([0, 1])
    b = cliques.index([1, 2])
    c = cliques.index([2, 3])
    assert is_surrounding(g, cliques, a, b, c)
    assert is_surrounding(g, cliques, c, b, a)
    assert not is_surrounding(g, cliques, a, c, b)


def test_chain_decomposition_of_a_path():
    g = path_graph(5)
    cliques = maximal_cliques(g)
    chain_list, sbar, inner_index = chains(g, cliques)
    allc = set(range(len(cliques)))
    assert set(sbar) | set(inner_index) == allc
    assert not set(sbar) & set(inner_index)
    assert len(chain_list) == 1
    ch = chain_list[0]
    mid = {cliques.index([1, 2]), cliques.index([2, 3])}
    assert set(ch.inner) == mid
    ends = {cliques.index([0, 1]), cliques.index([3, 4])}
    assert set(ch.left) | set(ch.right) <= ends
    for ci, ch in enumerate(chain_list):
        for pos, y in enumerate(ch.inner, start=1):
            assert inner_index[y] == (ci, pos)


def test_short_graphs_have_no_chains():
    for g in (complete_graph(3), path_graph(3), star_graph(3)):
        cliques = maximal_cliques(g)
        chain_list, sbar, inner_index = chains(g, cliques)
        assert not chain_list
        assert not inner_index
        assert sorted(sbar) == list(range(len(cliques)))


def test_rehang_neighbors_rejects_inner_clique():
    g = path_graph(5)
    cliques = maximal_cliques(g)
    chain_list, _, _ = chains(g, cliques)
    ch = chain_list[0]
    with pytest.raises(ValueError):
        rehang_neighbors_equal(g, cliques, ch, ch.inner[0])
