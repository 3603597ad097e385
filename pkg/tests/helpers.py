"""Shared graph and tree builders for the test suite."""

from treerep.graphs import Graph
from treerep.hosts import HostTree


def path_graph(n):
    return Graph(n, [(i, i + 1) for i in range(n - 1)])


def cycle_graph(n):
    return Graph(n, [(i, (i + 1) % n) for i in range(n)])


def complete_graph(n):
    return Graph(n, [(i, j) for i in range(n) for j in range(i + 1, n)])


def star_graph(k):
    """K_{1,k}: center 0 with k pendant leaves."""
    return Graph(k + 1, [(0, i) for i in range(1, k + 1)])


def net_graph():
    """Triangle 0-1-2 with one pendant vertex on each corner."""
    return Graph(6, [(0, 1), (0, 2), (1, 2), (0, 3), (1, 4), (2, 5)])


def diamond_graph():
    """K4 minus the edge (2,3)."""
    return Graph(4, [(0, 1), (0, 2), (0, 3), (1, 2), (1, 3)])


def bowtie_graph():
    """Two triangles sharing the vertex 2."""
    return Graph(5, [(0, 1), (0, 2), (1, 2), (2, 3), (2, 4), (3, 4)])


def double_star_graph(a, b):
    """Adjacent centers 0 and 1 with a and b pendant leaves."""
    edges = [(0, 1)]
    edges += [(0, 2 + i) for i in range(a)]
    edges += [(1, 2 + a + j) for j in range(b)]
    return Graph(2 + a + b, edges)


def path_tree(n):
    return HostTree(n, [(i, i + 1) for i in range(n - 1)])


def star_tree(k):
    """The tree K_{1,k}."""
    return HostTree(k + 1, [(0, i) for i in range(1, k + 1)])


def double_star_tree(a, b):
    """Adjacent centers 0 and 1 with a and b leaves hanging off them."""
    edges = [(0, 1)]
    edges += [(0, 2 + i) for i in range(a)]
    edges += [(1, 2 + a + j) for j in range(b)]
    return HostTree(2 + a + b, edges)
