import pytest

from treerep.errors import DomainMismatch, InputFormatError
from treerep.hosts import Host, HostTree
from treerep.representations import (
    Representation,
    compact_from_proper,
    proper_from_compact,
    representation_from_json,
    representation_to_dot,
    representation_to_json,
    verify_compact,
    verify_proper,
    verify_represents,
)

from helpers import path_graph, path_tree, star_graph


def test_verify_proper_accepts_shifted_intervals():
    g = path_graph(3)
    r = Representation(path_tree(4), [{0, 1}, {1, 2}, {2, 3}], "proper")
    ok, why = verify_proper(g, r)
    assert ok, why


def test_verify_represents_needs_matching_edges():
    g = path_graph(3)
    # models of 0 and 2 overlap although the edge is absent
    r = Representation(path_tree(3), [{0, 1}, {1}, {1, 2}], "proper")
    ok, why = verify_represents(g, r)
    assert not ok


def test_verify_proper_rejects_contained_models():
    g = path_graph(2)
    r = Representation(path_tree(2), [{0, 1}, {1}], "proper")
    assert verify_represents(g, r)[0]
    ok, why = verify_proper(g, r)
    assert not ok and "contained" in why


def test_verify_rejects_disconnected_or_empty_models():
    g = path_graph(2)
    host = path_tree(3)
    assert not verify_represents(g, Representation(host, [{0, 2}, {1}], "proper"))[0]
    assert not verify_represents(g, Representation(host, [set(), {1}], "proper"))[0]


def test_model_count_mismatch_raises():
    g = path_graph(3)
    r = Representation(path_tree(2), [{0}, {1}], "proper")
    with pytest.raises(DomainMismatch):
        verify_proper(g, r)


def test_verify_compact_accepts_forced_path_layout():
    g = path_graph(3)
    r = Representation(path_tree(4), [{1}, {1, 2}, {2}], "compact")
    ok, why = verify_compact(g, r)
    assert ok, why


def test_verify_compact_rejects_loaded_leaf():
    g = path_graph(2)
    r = Representation(path_tree(2), [{0, 1}, {1}], "compact")
    ok, why = verify_compact(g, r)
    assert not ok and "leaf" in why


def test_verify_compact_rejects_missing_escape():
    # star K_{1,4} squeezed onto a three-leg spider: the clique carried by
    # the junction node has no boundary contact for its second vertex
    g = star_graph(4)
    host = HostTree(7, [(0, 1), (1, 2), (0, 3), (3, 4), (0, 5), (5, 6)])
    models = [{0, 1, 3, 5}, {1}, {3}, {5}, {0}]
    ok, why = verify_compact(g, Representation(host, models, "compact"))
    assert not ok and "escape" in why


def test_verify_compact_rejects_duplicate_clique_nodes():
    g = path_graph(2)
    r = Representation(path_tree(4), [{1, 2}, {1, 2}], "compact")
    ok, why = verify_compact(g, r)
    assert not ok


def test_conversions_round_trip():
    g = path_graph(4)
    comp = Representation(path_tree(5), [{1}, {1, 2}, {2, 3}, {3}], "compact")
    assert verify_compact(g, comp)[0]
    prop = proper_from_compact(g, comp)
    assert prop.mode == "proper"
    ok, why = verify_proper(g, prop)
    assert ok, why
    back = compact_from_proper(g, prop)
    assert back.mode == "compact"
    ok, why = verify_compact(g, back)
    assert ok, why


def test_json_round_trip():
    r = Representation(path_tree(4), [{0, 1}, {1, 2}, {2, 3}], "proper")
    r2 = representation_from_json(representation_to_json(r))
    assert isinstance(r2.host, HostTree)
    assert r2.host.n == r.host.n
    assert sorted(r2.host.edge_list) == sorted(r.host.edge_list)
    assert r2.models == r.models
    assert r2.mode == "proper"


def test_json_multigraph_host_needs_tree_flag():
    d = Host(4, [(0, 1), (1, 2), (1, 2), (2, 3)])
    r = Representation(d, [{0, 1}, {1, 2}], "proper")
    text = representation_to_json(r)
    r2 = representation_from_json(text, tree=False)
    assert r2.host.n == 4 and len(r2.host.edge_list) == 4
    with pytest.raises(InputFormatError):
        representation_from_json(text)


def test_bad_mode_rejected():
    with pytest.raises(ValueError):
        Representation(path_tree(2), [{0}, {1}], "loose")


def test_dot_output_mentions_every_model():
    r = Representation(path_tree(3), [{0, 1}, {1, 2}], "proper")
    dot = representation_to_dot(r)
    assert dot.startswith("graph")
    assert "0" in dot and "1" in dot
