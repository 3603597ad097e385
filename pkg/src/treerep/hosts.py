"""Host multigraphs and host trees, subdivision/contraction, path queries,
and the re-subdivision relation.

A host is a connected multigraph universe on which vertex models live. Hosts
are value-like: every operation returns a new host.
"""

from __future__ import annotations

import itertools

from .errors import InputFormatError, UnknownEdge


class Host:
    """Connected multigraph; nodes are dense ids, edges a list of (u,v) pairs
    whose index is the edge id. Parallel edges allowed, self-loops not."""

    __slots__ = ("n", "edge_list")

    def __init__(self, n, edges):
        self.n = n
        self.edge_list = []
        for u, v in edges:
            if not (0 <= u < n and 0 <= v < n):
                raise ValueError(f"edge ({u},{v}) out of range for n={n}")
            if u == v:
                raise ValueError(f"self-loop at {u}")
            self.edge_list.append((u, v))
        if n > 0 and not self._connected():
            raise ValueError("host must be connected")

    def _connected(self):
        adj = self.adjacency()
        seen = {0}
        stack = [0]
        while stack:
            v = stack.pop()
            for w in adj[v]:
                if w not in seen:
                    seen.add(w)
                    stack.append(w)
        return len(seen) == self.n

    def adjacency(self):
        """Per-node neighbor lists with multiplicity."""
        adj = [[] for _ in range(self.n)]
        for u, v in self.edge_list:
            adj[u].append(v)
            adj[v].append(u)
        return adj

    def degree(self, v):
        return sum((u == v) + (w == v) for u, w in self.edge_list)

    def degrees(self):
        d = [0] * self.n
        for u, v in self.edge_list:
            d[u] += 1
            d[v] += 1
        return d

    def edge_count(self):
        return len(self.edge_list)

    def leaves(self):
        return [v for v, d in enumerate(self.degrees()) if d == 1]

    def branching_nodes(self):
        return [v for v, d in enumerate(self.degrees()) if d >= 3]

    def edge_multiset_key(self):
        return (self.n, tuple(sorted(tuple(sorted(e)) for e in self.edge_list)))

    def is_simple(self):
        seen = set()
        for u, v in self.edge_list:
            k = (min(u, v), max(u, v))
            if k in seen:
                return False
            seen.add(k)
        return True

    def __repr__(self):
        return f"Host(n={self.n}, m={len(self.edge_list)})"


class HostTree(Host):
    """A host constrained to be a simple tree."""

    def __init__(self, n, edges):
        super().__init__(n, edges)
        if len(self.edge_list) != max(n - 1, 0):
            raise ValueError("tree must have n-1 edges")
        if not self.is_simple():
            raise ValueError("tree must be simple")


def as_tree(h):
    """View a host as a HostTree (validates)."""
    if isinstance(h, HostTree):
        return h
    return HostTree(h.n, h.edge_list)


def subdivide_edge(h, e):
    """Replace edge e by a path through a fresh node; returns (host, new node)."""
    if not (0 <= e < len(h.edge_list)):
        raise UnknownEdge(f"edge id {e}")
    u, v = h.edge_list[e]
    w = h.n
    edges = [x for i, x in enumerate(h.edge_list) if i != e]
    edges.append((u, w))
    edges.append((w, v))
    cls = HostTree if isinstance(h, HostTree) else Host
    return cls(h.n + 1, edges), w


def contract_edge(h, e):
    """Identify the endpoints of edge e; self-loops dropped, parallels kept."""
    if not (0 <= e < len(h.edge_list)):
        raise UnknownEdge(f"edge id {e}")
    u, v = h.edge_list[e]
    a, b = min(u, v), max(u, v)

    def remap(x):
        if x == b:
            return a
        return x - 1 if x > b else x

    edges = []
    for i, (p, q) in enumerate(h.edge_list):
        if i == e:
            continue
        p2, q2 = remap(p), remap(q)
        if p2 != q2:
            edges.append((p2, q2))
    cls = HostTree if isinstance(h, HostTree) and Host(h.n - 1, edges).is_simple() and len(edges) == h.n - 2 else Host
    return cls(h.n - 1, edges)


def quotient_by_edges(h, edge_ids):
    """Contract a whole set of edges at once (quotient by their components)."""
    parent = list(range(h.n))

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for e in edge_ids:
        u, v = h.edge_list[e]
        ru, rv = find(u), find(v)
        if ru != rv:
            parent[max(ru, rv)] = min(ru, rv)
    reps = sorted({find(v) for v in range(h.n)})
    idx = {r: i for i, r in enumerate(reps)}
    edges = []
    for i, (u, v) in enumerate(h.edge_list):
        if i in edge_ids:
            continue
        a, b = idx[find(u)], idx[find(v)]
        if a != b:
            edges.append((a, b))
    return Host(len(reps), edges)


def reduce_host(h):
    """Homeomorphic reduction: suppress degree-2 nodes with two distinct
    neighbors until none remain (nodes on a parallel pair are kept)."""
    n = h.n
    edges = list(h.edge_list)
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
            if deg.get(v, 0) == 2:
                e1, e2 = inc[v]
                a = edges[e1][0] if edges[e1][1] == v else edges[e1][1]
                b = edges[e2][0] if edges[e2][1] == v else edges[e2][1]
                if a != b:
                    pick = (v, e1, e2, a, b)
                    break
        if pick is None:
            break
        v, e1, e2, a, b = pick
        edges = [x for i, x in enumerate(edges) if i not in (e1, e2)]
        edges.append((a, b))
    used = sorted({x for e in edges for x in e})
    if not used:
        # Reduced to a single node (or the host was a single node already).
        return Host(1, [])
    idx = {x: i for i, x in enumerate(used)}
    return Host(len(used), [(idx[u], idx[v]) for u, v in edges])


def multigraph_isomorphic(a, b):
    """Exact isomorphism of small multigraphs by backtracking."""
    if a.n != b.n or len(a.edge_list) != len(b.edge_list):
        return False
    da, db = a.degrees(), b.degrees()
    if sorted(da) != sorted(db):
        return False

    def mult(h):
        m = {}
        for u, v in h.edge_list:
            k = (min(u, v), max(u, v))
            m[k] = m.get(k, 0) + 1
        return m

    ma, mb = mult(a), mult(b)
    if sorted(ma.values()) != sorted(mb.values()):
        return False
    order = sorted(range(a.n), key=lambda v: (-da[v], v))
    mapping = {}
    used = set()

    def consistent(v, w):
        for u in mapping:
            need = ma.get((min(u, v), max(u, v)), 0)
            have = mb.get((min(mapping[u], w), max(mapping[u], w)), 0)
            if need != have:
                return False
        return True

    def backtrack(i):
        if i == len(order):
            return True
        v = order[i]
        for w in range(b.n):
            if w in used or db[w] != da[v]:
                continue
            if consistent(v, w):
                mapping[v] = w
                used.add(w)
                if backtrack(i + 1):
                    return True
                del mapping[v]
                used.remove(w)
        return False

    return backtrack(0)


_CONTRACTIONS_CACHE = {}


def contractions_up_to_iso(t):
    """All quotients of t by edge subsets, deduplicated up to isomorphism."""
    key = t.edge_multiset_key()
    cached = _CONTRACTIONS_CACHE.get(key)
    if cached is not None:
        return cached
    out = []
    m = len(t.edge_list)
    for bits in range(1 << m):
        ids = {i for i in range(m) if bits >> i & 1}
        q = quotient_by_edges(t, ids)
        if not any(multigraph_isomorphic(q, c) for c in out):
            out.append(q)
    _CONTRACTIONS_CACHE[key] = out
    return out


def is_re_subdivision(s, t):
    """True iff s is obtainable from t by contractions followed by subdivisions.

    The homeomorphic reduction of s undoes every subdivision, so the test is
    whether reduce(s) is isomorphic to some contraction of t.
    """
    rs = reduce_host(s)
    return any(multigraph_isomorphic(rs, c) for c in contractions_up_to_iso(t))


# ---------------------------------------------------------------------------
# Tree utilities

def tree_adjacency(t):
    adj = [[] for _ in range(t.n)]
    for u, v in t.edge_list:
        adj[u].append(v)
        adj[v].append(u)
    return [sorted(x) for x in adj]


def path_between(t, x, y):
    """The unique x..y node path, inclusive, ordered from x to y."""
    if x == y:
        return [x]
    adj = tree_adjacency(t)
    parent = {x: None}
    stack = [x]
    while stack:
        v = stack.pop()
        if v == y:
            break
        for w in adj[v]:
            if w not in parent:
                parent[w] = v
                stack.append(w)
    path = [y]
    while path[-1] != x:
        path.append(parent[path[-1]])
    return path[::-1]


def t_ordered(t, nodes):
    """True iff the tuple lies on a common path in this order (consecutive
    entries may coincide)."""
    nodes = list(nodes)
    if len(nodes) <= 2:
        return True
    full = path_between(t, nodes[0], nodes[-1])
    pos = {v: i for i, v in enumerate(full)}
    last = -1
    for v in nodes:
        if v not in pos:
            return False
        if pos[v] < last:
            return False
        last = pos[v]
    return True


def eyes(t):
    """Nodes that neighbor a leaf or have degree >= 3."""
    if t.n < 2:
        raise ValueError("eyes need at least two nodes")
    deg = t.degrees()
    adj = tree_adjacency(t)
    out = set(v for v in range(t.n) if deg[v] >= 3)
    for v in range(t.n):
        if deg[v] == 1:
            out.add(adj[v][0])
    return sorted(out)


def root_tree(t, root):
    """Parent array and a postorder (children before parents) for a rooted tree."""
    adj = tree_adjacency(t)
    parent = [None] * t.n
    order = []
    seen = [False] * t.n
    stack = [root]
    seen[root] = True
    while stack:
        v = stack.pop()
        order.append(v)
        for w in adj[v]:
            if not seen[w]:
                seen[w] = True
                parent[w] = v
                stack.append(w)
    return parent, order[::-1]


def tree_canonical_code(t):
    """Canonical string for an unrooted tree (rooted AHU at the centroid)."""
    if t.n == 1:
        return "()"
    adj = tree_adjacency(t)

    def centers():
        deg = t.degrees()
        layer = [v for v in range(t.n) if deg[v] <= 1]
        removed = len(layer)
        d = list(deg)
        while removed < t.n:
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
        return layer

    def rooted_code(root):
        parent, post = root_tree(t, root)
        code = [""] * t.n
        for v in post:
            kids = sorted(code[w] for w in adj[v] if parent[w] == v)
            code[v] = "(" + "".join(kids) + ")"
        return code[root]

    return min(rooted_code(c) for c in centers())


def trees_isomorphic(a, b):
    if a.n != b.n:
        return False
    return tree_canonical_code(a) == tree_canonical_code(b)


_REDUCED_TREES_CACHE = {}


def reduced_trees_with_leaf_count(leaf_count):
    """All homeomorphically reduced trees (internal degree >= 3) with exactly
    the given number of leaves, up to isomorphism."""
    if leaf_count < 2:
        raise ValueError("need at least two leaves")
    cached = _REDUCED_TREES_CACHE.get(leaf_count)
    if cached is not None:
        return cached
    import networkx as nx

    out = []
    # A reduced tree with L leaves has at most L-2 internal nodes (each
    # contributes degree excess >= 1 and the excesses sum to L-2), so at most
    # 2L-2 nodes overall; K2 is the only reduced tree with 2 leaves.
    for k in range(2, 2 * leaf_count - 1):
        for nxt in nx.nonisomorphic_trees(k):
            deg = dict(nxt.degree())
            lv = [v for v, d in deg.items() if d == 1]
            if len(lv) != leaf_count:
                continue
            if any(d == 2 for d in deg.values()):
                continue
            nodes = sorted(nxt.nodes())
            idx = {v: i for i, v in enumerate(nodes)}
            out.append(HostTree(k, [(idx[u], idx[v]) for u, v in nxt.edges()]))
    out.sort(key=lambda t: (t.n, tree_canonical_code(t)))
    _REDUCED_TREES_CACHE[leaf_count] = out
    return out


# ---------------------------------------------------------------------------
# Text format: `n m` then `u v` lines; parallel edges by repetition.

def parse_host_text(text, tree=False):
    header = None
    edges = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        parts = line.split()
        if header is None:
            if len(parts) != 2:
                raise InputFormatError(f"line {lineno}: expected 'n m' header")
            try:
                header = (int(parts[0]), int(parts[1]))
            except ValueError:
                raise InputFormatError(f"line {lineno}: non-integer header") from None
            continue
        if len(parts) != 2:
            raise InputFormatError(f"line {lineno}: expected 'u v'")
        try:
            edges.append((int(parts[0]), int(parts[1])))
        except ValueError:
            raise InputFormatError(f"line {lineno}: non-integer endpoint") from None
    if header is None:
        raise InputFormatError("line 1: missing 'n m' header")
    n, m = header
    if len(edges) != m:
        raise InputFormatError(f"header declares {m} edges, found {len(edges)}")
    try:
        return HostTree(n, edges) if tree else Host(n, edges)
    except ValueError as e:
        raise InputFormatError(str(e)) from None


def format_host_text(h):
    lines = [f"{h.n} {len(h.edge_list)}"]
    for u, v in h.edge_list:
        a, b = min(u, v), max(u, v)
        lines.append(f"{a} {b}")
    return "\n".join(lines) + "\n"
