import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from treerep.chordal import is_chordal
from treerep.errors import BudgetExceeded, GenerationFailed
from treerep.graphs import Graph, is_connected
from treerep.hosts import HostTree, is_re_subdivision
from treerep.oracle import (
    connected_chordal_corpus,
    gen_chordal,
    gen_planted,
    oracle_recognize,
    small_target_trees,
)
from treerep.representations import (
    compact_from_proper,
    verify_compact,
    verify_proper,
)

from helpers import complete_graph, path_graph, path_tree, star_graph, star_tree


def test_corpus_counts_match_the_census():
    by_n = connected_chordal_corpus(5)
    assert {n: len(gs) for n, gs in by_n.items()} == {1: 1, 2: 1, 3: 2, 4: 5, 5: 15}
    for gs in by_n.values():
        for g in gs:
            assert is_connected(g)
            assert is_chordal(g).chordal


def test_corpus_has_no_duplicates():
    by_n = connected_chordal_corpus(5)
    for gs in by_n.values():
        keys = {g.canonical_key() for g in gs}
        assert len(keys) == len(gs)


def test_small_target_trees_census():
    trees = small_target_trees(4)
    assert [t.n for t in trees] == [1, 2, 3, 4, 4]
    assert len(small_target_trees(5)) == 8


def test_oracle_agrees_on_known_cases():
    k2 = path_tree(2)
    orep = oracle_recognize(path_graph(4), k2)
    assert orep is not None
    assert verify_compact(path_graph(4), orep)[0]
    assert is_re_subdivision(orep.host, k2)
    assert oracle_recognize(star_graph(3), k2) is None
    assert oracle_recognize(star_graph(3), star_tree(3)) is not None


def test_oracle_single_node_target():
    assert oracle_recognize(Graph(1), HostTree(1, [])) is not None
    assert oracle_recognize(path_graph(2), HostTree(1, [])) is None


def test_oracle_minimality_prefers_unbranched_hosts():
    orep = oracle_recognize(path_graph(4), star_tree(3))
    assert orep is not None
    assert max(orep.host.degrees()) <= 2


def test_oracle_budget_guard():
    with pytest.raises(BudgetExceeded):
        oracle_recognize(complete_graph(3), star_tree(9), budget=4)


def test_gen_chordal_is_deterministic():
    a = gen_chordal(12, density=0.5, seed=7)
    b = gen_chordal(12, density=0.5, seed=7)
    assert a.edges() == b.edges()
    c = gen_chordal(12, density=0.5, seed=8)
    assert a.n == b.n == c.n == 12


@settings(max_examples=25, deadline=None)
@given(st.integers(0, 10_000))
def test_gen_chordal_output_is_connected_chordal(seed):
    g = gen_chordal(9, density=0.35, seed=seed)
    assert g.n == 9
    assert is_connected(g)
    assert is_chordal(g).chordal


def test_gen_planted_ships_a_verified_representation():
    t = star_tree(3)
    g, rep = gen_planted(t, 10, seed=3)
    assert g.n == 10
    ok, why = verify_proper(g, rep)
    assert ok, why
    assert is_re_subdivision(rep.host, t)
    comp = compact_from_proper(g, rep)
    assert verify_compact(g, comp)[0]
    g2, _ = gen_planted(t, 10, seed=3)
    assert g2.edges() == g.edges()


@settings(max_examples=15, deadline=None)
@given(st.integers(0, 10_000))
def test_gen_planted_round_trips(seed):
    t = path_tree(4)
    try:
        g, rep = gen_planted(t, 8, seed=seed)
    except GenerationFailed:
        return
    assert verify_proper(g, rep)[0]
    comp = compact_from_proper(g, rep)
    assert verify_compact(g, comp)[0]
