"""Core simple-graph type, traversal, and vertex-set utilities.

Vertices are dense integer ids 0..n-1 so vertex sets can be handled as sorted
lists or as int bitmasks in hot paths.
"""

from __future__ import annotations

from .errors import InputFormatError


class Graph:
    """Immutable-after-build simple undirected graph.

    No self-loops, no parallel edges; adjacency kept symmetric. Optional text
    labels are carried for I/O only and never affect algorithms.
    """

    __slots__ = ("n", "adj", "labels")

    def __init__(self, n, edges=(), labels=None):
        if n < 0:
            raise ValueError("vertex count must be >= 0")
        self.n = n
        self.adj = [set() for _ in range(n)]
        for u, v in edges:
            self._add_edge(u, v)
        if labels is not None and len(labels) != n:
            raise ValueError("labels must match vertex count")
        self.labels = list(labels) if labels is not None else None

    def _add_edge(self, u, v):
        if not (0 <= u < self.n and 0 <= v < self.n):
            raise ValueError(f"edge ({u},{v}) out of range for n={self.n}")
        if u == v:
            raise ValueError(f"self-loop at {u}")
        self.adj[u].add(v)
        self.adj[v].add(u)

    def has_edge(self, u, v):
        return v in self.adj[u]

    def neighbors(self, v):
        return sorted(self.adj[v])

    def degree(self, v):
        return len(self.adj[v])

    def edges(self):
        """All edges as sorted (u,v) pairs with u < v, lexicographically."""
        out = []
        for u in range(self.n):
            for v in self.adj[u]:
                if u < v:
                    out.append((u, v))
        out.sort()
        return out

    def edge_count(self):
        return sum(len(a) for a in self.adj) // 2

    def canonical_key(self):
        """Hashable identity key (labels excluded)."""
        return (self.n, frozenset(frozenset(e) for e in self.edges()))

    def __repr__(self):
        return f"Graph(n={self.n}, m={self.edge_count()})"


def connected_components(g):
    """Partition V(g) into maximal connected vertex sets.

    Each component is sorted; the list is sorted by smallest member.
    """
    seen = [False] * g.n
    comps = []
    for s in range(g.n):
        if seen[s]:
            continue
        stack = [s]
        seen[s] = True
        comp = []
        while stack:
            v = stack.pop()
            comp.append(v)
            for w in g.adj[v]:
                if not seen[w]:
                    seen[w] = True
                    stack.append(w)
        comps.append(sorted(comp))
    return comps


def is_connected(g):
    return len(connected_components(g)) <= 1


def open_neighborhood(g, w):
    """N(w): vertices outside w adjacent to some member of w."""
    ws = set(w)
    out = set()
    for v in ws:
        out |= g.adj[v]
    return sorted(out - ws)


def induced_subgraph(g, keep):
    """Subgraph induced by `keep`, with the old->new id mapping.

    New ids follow the sorted order of `keep`.
    """
    keep_sorted = sorted(set(keep))
    idx = {v: i for i, v in enumerate(keep_sorted)}
    edges = []
    for u in keep_sorted:
        for v in g.adj[u]:
            if v in idx and u < v:
                edges.append((idx[u], idx[v]))
    labels = None
    if g.labels is not None:
        labels = [g.labels[v] for v in keep_sorted]
    return Graph(len(keep_sorted), edges, labels), idx


# ---------------------------------------------------------------------------
# Bitmask helpers (vertex sets as int masks in hot paths)

def mask_of(vertices):
    m = 0
    for v in vertices:
        m |= 1 << v
    return m


def bits_of(mask):
    """Sorted list of set bit positions."""
    out = []
    v = 0
    while mask:
        low = mask & -mask
        out.append(low.bit_length() - 1)
        mask ^= low
    return out


def popcount(mask):
    return mask.bit_count()


# ---------------------------------------------------------------------------
# Edge-list text format: first line `n m`, then m lines `u v`; `#` comments.

def parse_graph_text(text):
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
            u, v = int(parts[0]), int(parts[1])
        except ValueError:
            raise InputFormatError(f"line {lineno}: non-integer endpoint") from None
        edges.append((u, v))
    if header is None:
        raise InputFormatError("line 1: missing 'n m' header")
    n, m = header
    if len(edges) != m:
        raise InputFormatError(f"header declares {m} edges, found {len(edges)}")
    try:
        return Graph(n, edges)
    except ValueError as e:
        raise InputFormatError(str(e)) from None


def format_graph_text(g):
    lines = [f"{g.n} {g.edge_count()}"]
    for u, v in g.edges():
        lines.append(f"{u} {v}")
    return "\n".join(lines) + "\n"
