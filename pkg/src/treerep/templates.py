"""Host-shape templates.

A template fixes the coarse shape of a candidate host: a tree T0 whose
labeled nodes (anchors) will carry the not-surrounded cliques, whose
remaining branching nodes are crossed by exactly one chain, and an
assignment of every chain to a path of T0 between two non-leaf nodes, stored
with the left-terminal end first. The solver then tries to realize a
template by choosing where each chain's inner cliques sit.

Enumeration walks all homeomorphic reductions of contractions of the target
tree (the skeletons), all injective placements of the not-surrounded cliques
onto junctions and edge slots, and all edge-disjoint chain routings, with
static pruning and deduplication up to skeleton symmetry.
"""

from __future__ import annotations

import itertools

from .hosts import HostTree, path_between, t_ordered, tree_adjacency


class Template:
    """T0 plus anchor labels plus oriented chain routes.

    labels: T0 node -> clique index (not-surrounded anchors only).
    images: chain index -> (left-terminal end node, right-terminal end node).
    protected: attachment marker -> T0 leaf node (used when a component must
    keep specific host leaves for later gluing).
    """

    __slots__ = ("tree", "labels", "images", "protected")

    def __init__(self, tree, labels, images, protected=None):
        self.tree = tree
        self.labels = dict(labels)
        self.images = dict(images)
        self.protected = dict(protected or {})

    def __repr__(self):
        return (f"Template(nodes={self.tree.n}, labels={self.labels}, "
                f"images={self.images})")


# ---------------------------------------------------------------------------
# Skeletons: reduced contractions of the target tree

def _quotient_tree_with_map(n, edges, contract_ids):
    parent = list(range(n))

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for i in contract_ids:
        u, v = edges[i]
        ru, rv = find(u), find(v)
        if ru != rv:
            parent[max(ru, rv)] = min(ru, rv)
    reps = sorted({find(v) for v in range(n)})
    idx = {r: i for i, r in enumerate(reps)}
    out_edges = [
        (idx[find(u)], idx[find(v)])
        for i, (u, v) in enumerate(edges)
        if i not in contract_ids
    ]
    node_map = [idx[find(v)] for v in range(n)]
    return len(reps), out_edges, node_map


def _suppress_degree_two(n, edges, keep):
    """Remove degree-2 nodes not in `keep`, joining their neighbors."""
    edges = list(edges)
    while True:
        deg = {}
        inc = {}
        for i, (u, v) in enumerate(edges):
            deg[u] = deg.get(u, 0) + 1
            deg[v] = deg.get(v, 0) + 1
            inc.setdefault(u, []).append(i)
            inc.setdefault(v, []).append(i)
        pick = None
        for v in sorted(inc):
            if deg[v] == 2 and v not in keep:
                e1, e2 = inc[v]
                a = edges[e1][0] if edges[e1][1] == v else edges[e1][1]
                b = edges[e2][0] if edges[e2][1] == v else edges[e2][1]
                pick = (v, e1, e2, a, b)
                break
        if pick is None:
            break
        v, e1, e2, a, b = pick
        edges = [x for i, x in enumerate(edges) if i not in (e1, e2)]
        edges.append((a, b))
    used = sorted({x for e in edges for x in e})
    idx = {x: i for i, x in enumerate(used)}
    remap = {x: idx[x] for x in used}
    return len(used), [(idx[u], idx[v]) for u, v in edges], remap


def _colored_tree_code(n, edges, color):
    """Canonical form of a tree with node colors (rooted at the centroid)."""
    adj = [[] for _ in range(n)]
    for u, v in edges:
        adj[u].append(v)
        adj[v].append(u)
    if n == 1:
        return f"({color.get(0, '')})"

    deg = [len(a) for a in adj]
    layer = [v for v in range(n) if deg[v] <= 1]
    removed = len(layer)
    d = list(deg)
    while removed < n:
        nxt = []
        for v in layer:
            for w in adj[v]:
                d[w] -= 1
                if d[w] == 1:
                    nxt.append(w)
        if not nxt:
            break
        layer = nxt
        removed += len(layer)

    def rooted(root):
        seen = [False] * n
        seen[root] = True
        order = [root]
        par = [None] * n
        for v in order:
            for w in adj[v]:
                if not seen[w]:
                    seen[w] = True
                    par[w] = v
                    order.append(w)
        code = [""] * n
        for v in reversed(order):
            kids = sorted(code[w] for w in adj[v] if par[w] == v)
            code[v] = f"({color.get(v, '')}|" + "".join(kids) + ")"
        return code[root]

    return min(rooted(c) for c in layer)


def _tree_automorphisms(n, edges, fixed):
    """All adjacency-preserving node permutations fixing `fixed` pointwise."""
    adjset = [set() for _ in range(n)]
    for u, v in edges:
        adjset[u].add(v)
        adjset[v].add(u)
    deg = [len(a) for a in adjset]
    order = sorted(range(n), key=lambda v: (-deg[v], v))
    out = []
    perm = [None] * n
    used = [False] * n

    def rec(i):
        if i == n:
            out.append(list(perm))
            return
        v = order[i]
        for w in range(n):
            if used[w] or deg[w] != deg[v]:
                continue
            if v in fixed and w != v:
                continue
            ok = True
            for u in adjset[v]:
                if perm[u] is not None and perm[u] not in adjset[w]:
                    ok = False
                    break
            for u in range(n):
                if perm[u] is not None and u not in adjset[v] and perm[u] in adjset[w]:
                    ok = False
                    break
            if ok:
                perm[v] = w
                used[w] = True
                rec(i + 1)
                perm[v] = None
                used[w] = False

    rec(0)
    return out


def _skeletons(t, protected):
    """Reduced contractions of t with at least one edge, deduplicated up to
    isomorphism that respects the protected leaf markers."""
    m = len(t.edge_list)
    pset = set(protected)
    banned = {
        i for i, (u, v) in enumerate(t.edge_list) if u in pset or v in pset
    }
    seen = set()
    out = []
    for bits in range(1 << m):
        ids = {i for i in range(m) if bits >> i & 1}
        if ids & banned:
            continue
        if len(ids) == m:
            continue
        qn, qedges, qmap = _quotient_tree_with_map(t.n, t.edge_list, ids)
        keep = {qmap[p] for p in pset}
        rn, redges, remap = _suppress_degree_two(qn, qedges, keep)
        marks = {p: remap[qmap[p]] for p in pset}
        color = {node: f"P{p}" for p, node in marks.items()}
        code = _colored_tree_code(rn, redges, color)
        if code in seen:
            continue
        seen.add(code)
        out.append((HostTree(rn, redges), marks))
    return out


# ---------------------------------------------------------------------------
# Anchor placements and chain routing

def _placements(skeleton, sbar):
    """All injective placements of the not-surrounded cliques: at most one
    label per junction, ordered slot sequences along each edge."""
    deg = skeleton.degrees()
    junctions = [v for v in range(skeleton.n) if deg[v] >= 3]
    edges = [tuple(sorted(e)) for e in skeleton.edge_list]
    edges.sort()
    results = []
    jlab = {}
    seqs = [[] for _ in edges]

    def rec(i):
        if i == len(sbar):
            results.append((dict(jlab), [tuple(s) for s in seqs]))
            return
        c = sbar[i]
        for j in junctions:
            if j not in jlab:
                jlab[j] = c
                rec(i + 1)
                del jlab[j]
        for ei in range(len(edges)):
            for pos in range(len(seqs[ei]) + 1):
                seqs[ei].insert(pos, c)
                rec(i + 1)
                seqs[ei].pop(pos)

    rec(0)
    return edges, results


def _build_t0(skeleton, canon_edges, jlab, seqs):
    n = skeleton.n
    labels = dict(jlab)
    edges = []
    slot_of = {}
    for ei, (u, v) in enumerate(canon_edges):
        prev = u
        for pos, c in enumerate(seqs[ei]):
            node = n
            n += 1
            labels[node] = c
            slot_of[(ei, pos)] = node
            edges.append((prev, node))
            prev = node
        edges.append((prev, v))
    return HostTree(n, edges), labels, slot_of


def enumerate_templates(g, t, cliques, chain_data, protected=()):
    """Stream of candidate templates for embedding g onto re-subdivisions
    of t. Yields nothing when the graph has no not-surrounded clique."""
    chain_list, sbar, inner_index = chain_data
    if not sbar:
        return
    clique_sets = [set(c) for c in cliques]
    for skeleton, marks in _skeletons(t, protected):
        sdeg = skeleton.degrees()
        autos = _tree_automorphisms(
            skeleton.n, skeleton.edge_list, set(marks.values())
        )
        canon_edges, placements = _placements(skeleton, sbar)
        edge_index = {e: i for i, e in enumerate(canon_edges)}
        for jlab, seqs in placements:
            t0, labels, slot_of = _build_t0(skeleton, canon_edges, jlab, seqs)
            if not _leaf_anchors_ok(t0, labels):
                continue
            for images in _route_chains(
                t0, skeleton.n, labels, chain_list, clique_sets, cliques
            ):
                if _is_minimal_under_autos(
                    autos, canon_edges, edge_index, jlab, seqs, images,
                    slot_of, skeleton.n, marks,
                ):
                    yield Template(t0, labels, images, marks)


def _leaf_anchors_ok(t0, labels):
    # a leaf may hang off an anchor, or off a junction that a chain will
    # cross (the routing pass rejects unlabeled junctions nothing crosses);
    # an unlabeled degree-2 neighbor would be a dead corridor
    deg = t0.degrees()
    adj = tree_adjacency(t0)
    for v in range(t0.n):
        if deg[v] == 1:
            w = adj[v][0]
            if w not in labels and deg[w] < 3:
                return False
    return True


def _route_chains(t0, skeleton_n, labels, chain_list, clique_sets, cliques):
    """All edge-disjoint assignments of chains to nontrivial T0 paths whose
    interiors cross only unlabeled junctions, with flank and coverage
    conditions."""
    deg = t0.degrees()
    nonleaf = [v for v in range(t0.n) if deg[v] >= 2]
    junctions = {v for v in range(t0.n) if deg[v] >= 3}
    all_edges = {frozenset(e) for e in t0.edge_list}
    used = set()
    passing = {}
    images = {}
    results = []

    def finalize():
        for j in junctions:
            if j not in labels and j not in passing:
                return
        for ci, (a, b) in images.items():
            ch = chain_list[ci]
            for end, terminal in ((a, ch.left), (b, ch.right)):
                if end in labels:
                    if labels[end] not in terminal:
                        return
                else:
                    inner = set(chain_list[passing[end]].inner)
                    if not inner <= set(terminal):
                        return
        for e in all_edges - used:
            x, y = tuple(e)
            if x in labels and y in labels:
                if not clique_sets[labels[x]] & clique_sets[labels[y]]:
                    return
        results.append(dict(images))

    def rec(ci):
        if ci == len(chain_list):
            finalize()
            return
        ch = chain_list[ci]
        s = len(ch.inner)
        left_set, right_set = set(ch.left), set(ch.right)
        for a in nonleaf:
            if a in labels and labels[a] not in left_set:
                continue
            for b in nonleaf:
                if b == a:
                    continue
                if b in labels and labels[b] not in right_set:
                    continue
                path = path_between(t0, a, b)
                interior = path[1:-1]
                bad = False
                for w in interior:
                    if w not in junctions or w in labels or w in passing:
                        bad = True
                        break
                if bad or s < len(interior):
                    continue
                pedges = {
                    frozenset((path[k], path[k + 1]))
                    for k in range(len(path) - 1)
                }
                if pedges & used:
                    continue
                images[ci] = (a, b)
                used.update(pedges)
                for w in interior:
                    passing[w] = ci
                rec(ci + 1)
                del images[ci]
                used.difference_update(pedges)
                for w in interior:
                    del passing[w]

    rec(0)
    return results


def _placement_code(canon_edges, jlab, seqs, images, skeleton_n, marks, slot_token):
    code = (
        tuple(sorted(jlab.items())),
        tuple(tuple(s) for s in seqs),
        tuple(
            (ci, slot_token(a), slot_token(b))
            for ci, (a, b) in sorted(images.items())
        ),
        tuple(sorted(marks.items())),
    )
    return code


def _is_minimal_under_autos(
    autos, canon_edges, edge_index, jlab, seqs, images, slot_of, skeleton_n, marks
):
    node_of_slot = {v: k for k, v in slot_of.items()}

    def token(node):
        if node < skeleton_n:
            return ("j", node)
        ei, pos = node_of_slot[node]
        return ("s", ei, pos)

    base = _placement_code(canon_edges, jlab, seqs, images, skeleton_n, marks, token)
    if len(autos) <= 1:
        return True
    for perm in autos:
        jlab2 = {perm[j]: c for j, c in jlab.items()}
        seqs2 = [None] * len(canon_edges)
        flip = {}
        for ei, (u, v) in enumerate(canon_edges):
            pu, pv = perm[u], perm[v]
            e2 = edge_index[(min(pu, pv), max(pu, pv))]
            if pu < pv:
                seqs2[e2] = tuple(seqs[ei])
                flip[ei] = (e2, False)
            else:
                seqs2[e2] = tuple(reversed(seqs[ei]))
                flip[ei] = (e2, True)

        def token2(node):
            if node < skeleton_n:
                return ("j", perm[node])
            ei, pos = node_of_slot[node]
            e2, rev = flip[ei]
            pos2 = len(seqs[ei]) - 1 - pos if rev else pos
            return ("s", e2, pos2)

        marks2 = {p: perm[node] for p, node in marks.items()}
        code2 = _placement_code(
            canon_edges, jlab2, seqs2, images, skeleton_n, marks2, token2
        )
        if code2 < base:
            return False
    return True


# ---------------------------------------------------------------------------
# Realization check (used by the acceptance oracle comparisons)

def realizes(r, tpl):
    """Whether the compact representation r is a subdivision of the
    template tree under an embedding that matches anchor labels and sends
    leaves to leaves. Chain routes are not checked."""
    host = r.host
    t0 = tpl.tree
    vs = r.vertex_sets()
    hdeg = host.degrees()
    tdeg = t0.degrees()
    nonleaf_sets = sorted(
        (tuple(sorted(vs[x])) for x in range(host.n) if hdeg[x] != 1)
    )
    cliques = [set(c) for c in nonleaf_sets]

    def clique_node(z):
        want = cliques[z]
        for x in range(host.n):
            if hdeg[x] != 1 and vs[x] == want:
                return x
        return None

    assign = {}
    for node, z in tpl.labels.items():
        x = clique_node(z)
        if x is None or hdeg[x] != tdeg[node]:
            return False
        assign[node] = x
    if len(set(assign.values())) != len(assign):
        return False

    rest = [v for v in range(t0.n) if v not in assign]
    host_adj = [set() for _ in range(host.n)]
    for u, v in host.edge_list:
        host_adj[u].add(v)
        host_adj[v].add(u)

    def paths_consistent(mapping):
        covered_interior = set()
        images = set(mapping.values())
        all_nodes = set(images)
        for a, b in t0.edge_list:
            p = _host_path(host_adj, mapping[a], mapping[b])
            if p is None:
                return False
            for w in p[1:-1]:
                if hdeg[w] != 2 or w in images or w in covered_interior:
                    return False
            covered_interior.update(p[1:-1])
            all_nodes.update(p)
        return len(all_nodes) == host.n

    def rec(i, usedset):
        if i == len(rest):
            return paths_consistent(assign)
        v = rest[i]
        for x in range(host.n):
            if x in usedset or x in assign.values():
                continue
            if hdeg[x] != tdeg[v]:
                continue
            if tdeg[v] == 1 and hdeg[x] != 1:
                continue
            assign[v] = x
            usedset.add(x)
            if rec(i + 1, usedset):
                return True
            del assign[v]
            usedset.remove(x)
        return False

    return rec(0, set())


def _host_path(host_adj, x, y):
    if x == y:
        return None
    parent = {x: None}
    stack = [x]
    while stack:
        v = stack.pop()
        if v == y:
            break
        for w in host_adj[v]:
            if w not in parent:
                parent[w] = v
                stack.append(w)
    if y not in parent:
        return None
    path = [y]
    while path[-1] != x:
        path.append(parent[path[-1]])
    return path[::-1]


def orient_chain(tpl, rbar, chain_index):
    """Chain direction relative to the root ordering: "forward" when the
    right-terminal end points toward the first separating root anchor,
    "backward" otherwise."""
    a, b = tpl.images[chain_index]
    for rk in rbar:
        if t_ordered(tpl.tree, (a, b, rk)):
            return "forward"
        if t_ordered(tpl.tree, (rk, a, b)):
            return "backward"
    raise ValueError("no root anchor orders the chain image")
