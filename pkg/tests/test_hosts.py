import pytest

from treerep.errors import InputFormatError, UnknownEdge
from treerep.hosts import (
    Host,
    HostTree,
    contract_edge,
    format_host_text,
    is_re_subdivision,
    multigraph_isomorphic,
    parse_host_text,
    reduce_host,
    reduced_trees_with_leaf_count,
    subdivide_edge,
    tree_canonical_code,
    trees_isomorphic,
)

from helpers import double_star_tree, path_tree, star_tree


def test_host_validation():
    with pytest.raises(ValueError):
        Host(2, [(0, 0)])
    with pytest.raises(ValueError):
        Host(4, [(0, 1), (2, 3)])
    with pytest.raises(ValueError):
        HostTree(3, [(0, 1), (1, 2), (0, 2)])
    with pytest.raises(ValueError):
        HostTree(4, [(0, 1), (1, 2), (1, 2)])
    # parallel edges are fine for general hosts
    d = Host(4, [(0, 1), (1, 2), (1, 2), (2, 3)])
    assert not d.is_simple()
    assert d.degrees() == [1, 3, 3, 1]
    assert d.leaves() == [0, 3]


def test_subdivide_then_contract_restores_shape():
    t = path_tree(3)
    t2, w = subdivide_edge(t, 0)
    assert isinstance(t2, HostTree)
    assert w == 3 and t2.n == 4
    assert sorted(tuple(sorted(e)) for e in t2.edge_list) == [
        (0, 3),
        (1, 2),
        (1, 3),
    ]
    e = t2.edge_list.index((0, 3)) if (0, 3) in t2.edge_list else t2.edge_list.index((3, 0))
    back = contract_edge(t2, e)
    assert isinstance(back, HostTree)
    assert trees_isomorphic(back, t)
    with pytest.raises(UnknownEdge):
        subdivide_edge(t, 99)
    with pytest.raises(UnknownEdge):
        contract_edge(t, -1)


def test_contract_can_leave_multigraph():
    tri = Host(3, [(0, 1), (1, 2), (0, 2)])
    h = contract_edge(tri, 0)
    assert h.n == 2
    assert sorted(tuple(sorted(e)) for e in h.edge_list) == [(0, 1), (0, 1)]
    assert not isinstance(h, HostTree)


def test_reduce_host_suppresses_degree_two_nodes():
    r = reduce_host(path_tree(6))
    assert r.n == 2 and len(r.edge_list) == 1
    spider = HostTree(7, [(0, 1), (1, 2), (0, 3), (3, 4), (0, 5), (5, 6)])
    r2 = reduce_host(spider)
    assert multigraph_isomorphic(r2, star_tree(3))
    assert reduce_host(HostTree(1, [])).n == 1


def test_is_re_subdivision():
    k2, claw = path_tree(2), star_tree(3)
    assert is_re_subdivision(path_tree(5), k2)
    # contracting a branch of the claw leaves a path, so paths qualify
    assert is_re_subdivision(path_tree(5), claw)
    assert not is_re_subdivision(claw, k2)
    spider = HostTree(7, [(0, 1), (1, 2), (0, 3), (3, 4), (0, 5), (5, 6)])
    assert is_re_subdivision(spider, claw)
    assert not is_re_subdivision(spider, k2)
    assert is_re_subdivision(path_tree(2), path_tree(2))


def test_tree_canonical_code_is_an_invariant():
    a = HostTree(4, [(0, 1), (0, 2), (0, 3)])
    b = HostTree(4, [(3, 1), (1, 0), (1, 2)])
    assert tree_canonical_code(a) == tree_canonical_code(b)
    assert trees_isomorphic(a, b)
    assert not trees_isomorphic(a, path_tree(4))


def test_reduced_trees_with_leaf_count():
    two = reduced_trees_with_leaf_count(2)
    assert len(two) == 1 and two[0].n == 2
    three = reduced_trees_with_leaf_count(3)
    assert len(three) == 1 and three[0].n == 4
    four = reduced_trees_with_leaf_count(4)
    assert sorted(t.n for t in four) == [5, 6]
    five = reduced_trees_with_leaf_count(5)
    assert sorted(t.n for t in five) == [6, 7, 8]
    for ts in (two, three, four, five):
        for t in ts:
            deg = t.degrees()
            assert all(d != 2 for d in deg)


def test_host_text_round_trip():
    d = Host(4, [(0, 1), (1, 2), (1, 2), (2, 3)])
    h = parse_host_text(format_host_text(d))
    assert h.n == 4
    assert sorted(h.edge_list) == sorted(d.edge_list)
    with pytest.raises(InputFormatError):
        parse_host_text(format_host_text(d), tree=True)
    t = parse_host_text(format_host_text(double_star_tree(2, 2)), tree=True)
    assert isinstance(t, HostTree) and t.n == 6
