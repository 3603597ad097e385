"""Independent brute-force checks, corpora, and instance generators.

Nothing here shares logic with the solver's search: recognition is done by
exhausting candidate hosts, the flanking-pair test spells out the raw
maximality condition, and position feasibility is recomputed from the
definition of a missing escape edge. These are the referees the fast paths
are tested against.
"""

from __future__ import annotations

import random

import networkx as nx

from .chordal import is_chordal, maximal_cliques
from .errors import (
    BudgetExceeded,
    GenerationFailed,
    InvariantBroken,
    NotChordal,
    NotConnected,
)
from .graphs import Graph, connected_components, is_connected
from .hosts import (
    HostTree,
    is_re_subdivision,
    path_between,
    tree_adjacency,
    tree_canonical_code,
)
from .representations import Representation, verify_compact, verify_proper
from .structure import _pair_condition, components_K

_HOST_BUCKETS = {}
_RESUB_MEMO = {}


def _hosts_with(nodes, leaf_count):
    key = (nodes, leaf_count)
    if key not in _HOST_BUCKETS:
        out = []
        for T in nx.nonisomorphic_trees(nodes):
            t = HostTree(
                T.number_of_nodes(), [tuple(sorted(e)) for e in T.edges()]
            )
            if len(t.leaves()) == leaf_count:
                out.append(t)
        _HOST_BUCKETS[key] = out
    return _HOST_BUCKETS[key]


def _re_sub_cached(host, t):
    key = (tree_canonical_code(host), tree_canonical_code(t))
    if key not in _RESUB_MEMO:
        _RESUB_MEMO[key] = is_re_subdivision(host, t)
    return _RESUB_MEMO[key]


def oracle_recognize(g, t, budget=12):
    """Exhaustive recognition over all candidate hosts, smallest first.

    A compact host for a connected graph has one non-leaf per maximal
    clique, so candidate hosts have clique-count + f nodes and f leaves for
    f up to the leaf count of t. Returns the first (hence minimal) compact
    representation found, or None. Raises BudgetExceeded when the search
    space is too large.
    """
    if t.n == 1:
        if g.n == 0:
            return Representation(HostTree(1, []), [], "proper")
        if g.n == 1:
            return Representation(HostTree(1, []), [{0}], "proper")
        return None
    if not is_connected(g):
        raise NotConnected("the oracle handles connected graphs only")
    res = is_chordal(g)
    if not res.chordal:
        raise NotChordal("graph has an induced cycle")
    cliques = maximal_cliques(g, res.peo)
    f_t = len(t.leaves())
    if len(cliques) + f_t > budget:
        raise BudgetExceeded(
            f"{len(cliques)} cliques with up to {f_t} leaves exceeds {budget}"
        )
    candidates = []
    for f in range(2, f_t + 1):
        candidates.extend(_hosts_with(len(cliques) + f, f))
    candidates.sort(
        key=lambda h: (len(h.branching_nodes()), h.n, tree_canonical_code(h))
    )
    csets = [set(c) for c in cliques]
    for host in candidates:
        if not _re_sub_cached(host, t):
            continue
        rep = _assign_cliques(g, cliques, csets, host)
        if rep is not None:
            return rep
    return None


def _assign_cliques(g, cliques, csets, host):
    """Search clique-to-node bijections on the host's non-leaves; adjacent
    assigned nodes must carry intersecting cliques (the graph is connected)."""
    hdeg = host.degrees()
    nonleaves = [x for x in range(host.n) if hdeg[x] >= 2]
    if len(nonleaves) != len(cliques):
        return None
    hadj = tree_adjacency(host)
    assign = {}
    used = [False] * len(cliques)

    def rec(i):
        if i == len(nonleaves):
            models = [set() for _ in range(g.n)]
            for x, z in assign.items():
                for u in cliques[z]:
                    models[u].add(x)
            rep = Representation(host, models, "compact")
            ok, _why = verify_compact(g, rep)
            return rep if ok else None
        x = nonleaves[i]
        for z in range(len(cliques)):
            if used[z]:
                continue
            good = True
            for w in hadj[x]:
                if w in assign and not (csets[z] & csets[assign[w]]):
                    good = False
                    break
            if good:
                assign[x] = z
                used[z] = True
                out = rec(i + 1)
                if out is not None:
                    return out
                del assign[x]
                used[z] = False
        return None

    return rec(0)


# ---------------------------------------------------------------------------
# Flanking pairs, from the raw definition

def oracle_surrounding(g, cliques, y):
    """All ordered clique pairs surrounding y, keeping the pairs whose
    overlap with V_y is maximal under strict set containment on their
    components."""
    vy = set(cliques[y])
    comps = components_K(g, cliques, y)
    out = set()
    for i in range(len(comps)):
        for j in range(i + 1, len(comps)):
            if not comps[i].cliques or not comps[j].cliques:
                continue
            if not _pair_condition(vy, comps, i, j):
                continue

            def containment_maximal(idx):
                inters = {
                    k: vy & set(cliques[k]) for k in comps[idx].cliques
                }
                keep = []
                for k, s in inters.items():
                    if not any(
                        s < s2 for k2, s2 in inters.items() if k2 != k
                    ):
                        keep.append(k)
                return keep

            for l in containment_maximal(i):
                for r in containment_maximal(j):
                    out.add((l, r))
                    out.add((r, l))
    return out


# ---------------------------------------------------------------------------
# Position feasibility, from the definition of a missing escape edge

def oracle_potential(record):
    """Recompute a recorded junction scan's feasibility vector explicitly.

    The scan grows a path of fresh nodes above the recorded fragment, one
    clique position at a time; a position is feasible when the grown stack
    has no finished vertex that meets some other vertex's model yet has no
    ordered edge leaving it."""
    frag = record.fragment
    nodes = sorted(frag.csets)
    fresh = nodes[-1] + 1 if nodes else 0
    csets = dict(frag.csets)
    edges = list(frag.edges)
    root = frag.root
    placed = set(frag.support)
    out = []
    for j in record.candidates:
        vj = record.inner_sets[j - 1]
        csets[fresh] = vj
        edges.append((root, fresh))
        root = fresh
        fresh += 1
        out.append(not _has_dead_pair(record.n, csets, edges, placed, vj))
        placed |= set(vj)
    return out


def _has_dead_pair(n, csets, edges, scan_vertices, vroot):
    models = {u: set() for u in range(n)}
    for x, vs in csets.items():
        for u in vs:
            models[u].add(x)
    for u in scan_vertices:
        if u in vroot:
            continue
        mu = models[u]
        for v in range(n):
            if v == u:
                continue
            mv = models[v]
            if not (mu & mv):
                continue
            found = False
            for a, b in edges:
                if a in mu and a in mv and b not in mv:
                    found = True
                    break
                if b in mu and b in mv and a not in mv:
                    found = True
                    break
            if not found:
                return True
    return False


# ---------------------------------------------------------------------------
# Corpora

ATLAS_COUNTS = {1: 1, 2: 1, 3: 2, 4: 5, 5: 15, 6: 58, 7: 272}


def connected_chordal_corpus(max_n=7):
    """All connected chordal graphs with 1..max_n vertices, one per
    isomorphism class, keyed by vertex count. Chordality is cross-checked
    against networkx and the per-size counts against known values."""
    from networkx.generators.atlas import graph_atlas_g

    out = {k: [] for k in range(1, max_n + 1)}
    for G in graph_atlas_g():
        nn = G.number_of_nodes()
        if nn < 1 or nn > max_n:
            continue
        if not nx.is_connected(G):
            continue
        g = Graph(nn, [tuple(sorted(e)) for e in G.edges()])
        mine = is_chordal(g).chordal
        if mine != nx.is_chordal(G):
            raise InvariantBroken(
                f"chordality disagreement on a {nn}-vertex atlas graph"
            )
        if mine:
            out[nn].append(g)
    for k in range(1, max_n + 1):
        want = ATLAS_COUNTS.get(k)
        if want is not None and len(out[k]) != want:
            raise InvariantBroken(
                f"expected {want} connected chordal graphs on {k} vertices, "
                f"got {len(out[k])}"
            )
    return out


def small_target_trees(max_nodes=5):
    """All trees with 1..max_nodes nodes, one per isomorphism class."""
    out = [HostTree(1, [])]
    for k in range(2, max_nodes + 1):
        for T in nx.nonisomorphic_trees(k):
            out.append(
                HostTree(T.number_of_nodes(), [tuple(sorted(e)) for e in T.edges()])
            )
    return out


# ---------------------------------------------------------------------------
# Generators

def _random_tree(rng, k):
    if k == 1:
        return HostTree(1, [])
    if k == 2:
        return HostTree(2, [(0, 1)])
    seq = [rng.randrange(k) for _ in range(k - 2)]
    count = [0] * k
    for x in seq:
        count[x] += 1
    edges = []
    leaf_heap = sorted(v for v in range(k) if count[v] == 0)
    for x in seq:
        v = leaf_heap.pop(0)
        edges.append((min(v, x), max(v, x)))
        count[x] -= 1
        if count[x] == 0:
            import bisect

            bisect.insort(leaf_heap, x)
    edges.append((leaf_heap[0], leaf_heap[1]))
    return HostTree(k, edges)


def _grow_model(rng, adj, k, density):
    start = rng.randrange(k)
    m = {start}
    frontier = list(adj[start])
    while frontier and rng.random() < density:
        w = frontier.pop(rng.randrange(len(frontier)))
        if w in m:
            continue
        m.add(w)
        frontier.extend(x for x in adj[w] if x not in m)
    return m


def _intersection_graph(n, models):
    edges = [
        (u, v)
        for u in range(n)
        for v in range(u + 1, n)
        if models[u] & models[v]
    ]
    return Graph(n, edges)


def gen_chordal(n, density=0.4, seed=0):
    """Random connected chordal graph: intersect random subtrees of a random
    tree, then merge stray components along host paths."""
    if n <= 0:
        return Graph(0)
    rng = random.Random(seed)
    k = max(2, n)
    host = _random_tree(rng, k)
    adj = tree_adjacency(host)
    models = [_grow_model(rng, adj, k, density) for _ in range(n)]
    g = _intersection_graph(n, models)
    guard = 0
    while not is_connected(g):
        comps = connected_components(g)
        a, b = comps[0][0], comps[1][0]
        pa, pb = min(models[a]), min(models[b])
        for x in path_between(host, pa, pb):
            models[a].add(x)
        g = _intersection_graph(n, models)
        guard += 1
        if guard > n + 5:
            raise GenerationFailed("could not connect the sample")
    return g


def gen_planted(t, n, seed=0):
    """Random pair (graph, proper representation on a re-subdivision of t).

    Every target edge becomes a subdivided path; each used edge carries a run
    of window models whose starts and ends are strictly staggered, so no
    window contains another.  The first and last window of a run reach the
    path's endpoints, which ties runs together at shared target nodes and
    keeps the intersection graph connected."""
    if n <= 0:
        raise ValueError("need at least one vertex")
    rng = random.Random(seed)
    tedges = list(t.edge_list)
    if not tedges:
        if n == 1:
            return Graph(1), Representation(HostTree(1, []), [{0}], "proper")
        raise GenerationFailed("single-node target fits only one vertex")

    # split n windows over the target edges; with few windows, restrict to a
    # random connected set of edges so the runs still meet
    counts = [0] * len(tedges)
    if n >= len(tedges):
        cuts = sorted(rng.sample(range(1, n), len(tedges) - 1))
        for i, (a, b) in enumerate(zip([0] + cuts, cuts + [n])):
            counts[i] = b - a
    else:
        start = rng.randrange(len(tedges))
        chosen, touched = {start}, set(tedges[start])
        while len(chosen) < n:
            options = [
                i
                for i in range(len(tedges))
                if i not in chosen and (set(tedges[i]) & touched)
            ]
            i = options[rng.randrange(len(options))]
            chosen.add(i)
            touched |= set(tedges[i])
        for i in chosen:
            counts[i] = 1

    # subdivide each edge, leaving room for its run plus random slack
    total = t.n
    chains, edges = [], []
    for i, (a, b) in enumerate(tedges):
        k = max(1, counts[i] + rng.randrange(0, 3))
        interior = list(range(total, total + k))
        total += k
        chain = [a] + interior + [b]
        edges.extend(zip(chain, chain[1:]))
        chains.append(chain)
    host = HostTree(total, edges)

    models = []
    for i, chain in enumerate(chains):
        m = counts[i]
        if m == 0:
            continue
        k = len(chain) - 2
        starts = [0] + (sorted(rng.sample(range(1, k + 1), m - 1)) if m > 1 else [])
        ends = [0] * m
        ends[m - 1] = k + 1
        for j in range(m - 2, -1, -1):
            ends[j] = rng.randrange(starts[j + 1], ends[j + 1])
        models.extend(set(chain[starts[j] : ends[j] + 1]) for j in range(m))
    rng.shuffle(models)

    g = _intersection_graph(n, models)
    rep = Representation(host, models, "proper")
    ok, why = verify_proper(g, rep)
    if not ok:
        raise GenerationFailed(f"sample is invalid: {why}")
    return g, rep
