"""Chordality testing, maximal cliques, clique trees, and the proper
interval check.

The chordality test is total: it returns either a perfect elimination
ordering or an induced cycle of length at least four as a witness.
"""

from __future__ import annotations

import itertools

from .errors import InvariantBroken, NotChordal, NotConnected
from .graphs import connected_components, induced_subgraph
from .hosts import HostTree


class ChordalResult:
    """Outcome of the chordality test: exactly one of peo / witness_cycle."""

    __slots__ = ("peo", "witness_cycle")

    def __init__(self, peo=None, witness_cycle=None):
        self.peo = peo
        self.witness_cycle = witness_cycle

    @property
    def chordal(self):
        return self.peo is not None

    def __repr__(self):
        if self.chordal:
            return f"ChordalResult(peo={self.peo})"
        return f"ChordalResult(witness_cycle={self.witness_cycle})"


def _mcs_order(g):
    """Maximum cardinality search; ties broken toward the lowest id."""
    n = g.n
    weight = [0] * n
    visited = [False] * n
    visit = []
    for _ in range(n):
        best = -1
        for v in range(n):
            if not visited[v] and (best == -1 or weight[v] > weight[best]):
                best = v
        visited[best] = True
        visit.append(best)
        for w in g.adj[best]:
            if not visited[w]:
                weight[w] += 1
    return visit


def _check_peo(g, peo):
    """Return None if peo is perfect, else a failing triple (v, p, w) where
    p, w are later neighbors of v, p closest in the order, and pw not an edge."""
    pos = [0] * g.n
    for i, v in enumerate(peo):
        pos[v] = i
    for i, v in enumerate(peo):
        later = [w for w in g.adj[v] if pos[w] > i]
        if len(later) <= 1:
            continue
        p = min(later, key=lambda w: pos[w])
        for w in later:
            if w != p and not g.has_edge(p, w):
                return (v, p, w)
    return None


def _normalize_cycle(cycle):
    k = len(cycle)
    i = cycle.index(min(cycle))
    rot = cycle[i:] + cycle[:i]
    rev = [rot[0]] + rot[1:][::-1]
    return rot if rot[1] <= rev[1] else rev


def _witness_from_triple(g, v, p, w):
    """Induced cycle through v from a failing elimination triple: a shortest
    p..w path avoiding v and the rest of N(v) closes into a chordless cycle."""
    banned = set(g.adj[v]) - {p, w}
    banned.add(v)
    parent = {p: None}
    queue = [p]
    qi = 0
    while qi < len(queue):
        x = queue[qi]
        qi += 1
        if x == w:
            break
        for y in g.adj[x]:
            if y not in banned and y not in parent:
                parent[y] = x
                queue.append(y)
    if w not in parent:
        return None
    path = [w]
    while path[-1] != p:
        path.append(parent[path[-1]])
    return _normalize_cycle([v] + path[::-1])


def _brute_induced_cycle(g):
    for k in range(4, g.n + 1):
        for sub in itertools.combinations(range(g.n), k):
            ss = set(sub)
            degs = [len(ss & g.adj[v]) for v in sub]
            if any(d != 2 for d in degs):
                continue
            # all degrees two and the subgraph connected: an induced cycle
            seen = {sub[0]}
            stack = [sub[0]]
            while stack:
                x = stack.pop()
                for y in g.adj[x]:
                    if y in ss and y not in seen:
                        seen.add(y)
                        stack.append(y)
            if len(seen) != k:
                continue
            cycle = [sub[0]]
            prev = None
            while len(cycle) < k:
                x = cycle[-1]
                nxt = min(y for y in g.adj[x] if y in ss and y != prev)
                prev = x
                cycle.append(nxt)
            return _normalize_cycle(cycle)
    return None


def is_chordal(g):
    """Total chordality test: a perfect elimination ordering when chordal,
    otherwise an induced cycle of length >= 4."""
    if g.n == 0:
        return ChordalResult(peo=[])
    visit = _mcs_order(g)
    peo = visit[::-1]
    bad = _check_peo(g, peo)
    if bad is None:
        return ChordalResult(peo=peo)
    cycle = _witness_from_triple(g, *bad)
    if cycle is None:
        pos = {v: i for i, v in enumerate(peo)}
        for i, v in enumerate(peo):
            later = [w for w in g.adj[v] if pos[w] > i]
            for p, w in itertools.combinations(sorted(later), 2):
                if not g.has_edge(p, w):
                    cycle = _witness_from_triple(g, v, p, w)
                    if cycle is not None:
                        break
            if cycle is not None:
                break
    if cycle is None:
        cycle = _brute_induced_cycle(g)
    if cycle is None:
        raise InvariantBroken("elimination check failed but no induced cycle found")
    return ChordalResult(witness_cycle=cycle)


def _validate_peo(g, peo):
    if sorted(peo) != list(range(g.n)):
        raise ValueError("ordering is not a permutation of the vertices")
    if _check_peo(g, peo) is not None:
        raise ValueError("ordering is not a perfect elimination ordering")


def maximal_cliques(g, peo=None):
    """Maximal cliques of a chordal graph, sorted by their sorted vertex
    lists. Raises NotChordal on non-chordal input, ValueError on a bad peo."""
    if peo is None:
        res = is_chordal(g)
        if not res.chordal:
            raise NotChordal(f"induced cycle {res.witness_cycle}")
        peo = res.peo
    else:
        _validate_peo(g, peo)
    if g.n == 0:
        return []
    pos = [0] * g.n
    for i, v in enumerate(peo):
        pos[v] = i
    cliques = set()
    for i, v in enumerate(peo):
        k = frozenset([v] + [w for w in g.adj[v] if pos[w] > i])
        cliques.add(k)
    keep = []
    for k in cliques:
        if not any(k < other for other in cliques):
            keep.append(sorted(k))
    keep.sort()
    return keep


class CliqueTree:
    """A tree on the maximal cliques of a connected chordal graph; node i of
    the tree carries cliques[i], and every vertex's cliques form a subtree."""

    __slots__ = ("tree", "cliques")

    def __init__(self, tree, cliques):
        self.tree = tree
        self.cliques = cliques


def clique_tree(g):
    """Maximum-weight spanning tree of the clique intersection graph."""
    from .graphs import is_connected

    if not is_connected(g):
        raise NotConnected("clique tree needs a connected graph")
    res = is_chordal(g)
    if not res.chordal:
        raise NotChordal(f"induced cycle {res.witness_cycle}")
    cliques = maximal_cliques(g, res.peo)
    nc = len(cliques)
    if nc <= 1:
        return CliqueTree(HostTree(nc, []), cliques)
    sets = [set(c) for c in cliques]
    cands = []
    for i in range(nc):
        for j in range(i + 1, nc):
            w = len(sets[i] & sets[j])
            if w > 0:
                cands.append((-w, i, j))
    cands.sort()
    parent = list(range(nc))

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    edges = []
    for negw, i, j in cands:
        ri, rj = find(i), find(j)
        if ri != rj:
            parent[max(ri, rj)] = min(ri, rj)
            edges.append((i, j))
    if len(edges) != nc - 1:
        raise InvariantBroken("clique intersection graph is not connected")
    return CliqueTree(HostTree(nc, edges), cliques)


# ---------------------------------------------------------------------------
# Proper interval check

_PI_MEMO = {}
_K2 = HostTree(2, [(0, 1)])


def _has_claw(g):
    for v in range(g.n):
        nb = sorted(g.adj[v])
        for a, b, c in itertools.combinations(nb, 3):
            if not g.has_edge(a, b) and not g.has_edge(a, c) and not g.has_edge(b, c):
                return True
    return False


def is_proper_interval(g):
    """Whether every component embeds properly on a path host."""
    key = g.canonical_key()
    hit = _PI_MEMO.get(key)
    if hit is not None:
        return hit
    out = _compute_proper_interval(g)
    _PI_MEMO[key] = out
    return out


def _compute_proper_interval(g):
    if g.n <= 1:
        return True
    if not is_chordal(g).chordal:
        return False
    if _has_claw(g):
        return False
    from .solver import recognize_connected

    for comp in connected_components(g):
        if len(comp) == 1:
            continue
        sub, _ = induced_subgraph(g, comp)
        key = sub.canonical_key()
        hit = _PI_MEMO.get(key)
        if hit is None:
            hit = recognize_connected(sub, _K2) is not None
            _PI_MEMO[key] = hit
        if not hit:
            return False
    return True
