"""Subtree representations on host trees: verification and the two
constructive conversions between the proper and the clique-anchored
("compact") normal forms.

A representation assigns each graph vertex a connected, nonempty set of host
nodes (its model). It represents g when models intersect exactly for edges.
It is proper when additionally no model contains another. It is compact when
host leaves are empty, the non-leaf node sets are exactly the maximal cliques
(one node per clique), and every intersecting ordered pair of models has a
strong escape.
"""

from __future__ import annotations

import json
from collections import namedtuple

from .errors import DomainMismatch, InputFormatError, InvariantBroken, NotChordal, NotCompact, NotProper
from .hosts import Host, HostTree, subdivide_edge

EscapeWitness = namedtuple("EscapeWitness", ["x", "y"])


class Representation:
    """Host plus one model (set of host nodes) per graph vertex."""

    __slots__ = ("host", "models", "mode")

    def __init__(self, host, models, mode):
        if mode not in ("proper", "compact"):
            raise ValueError(f"unknown mode {mode!r}")
        self.host = host
        self.models = [set(m) for m in models]
        self.mode = mode

    def vertex_sets(self):
        """V_x per host node: which graph vertices put x in their model."""
        out = [set() for _ in range(self.host.n)]
        for u, m in enumerate(self.models):
            for x in m:
                out[x].add(u)
        return out

    def __repr__(self):
        return f"Representation(host={self.host!r}, vertices={len(self.models)}, mode={self.mode})"


def _host_adjacency(host):
    adj = [set() for _ in range(host.n)]
    for u, v in host.edge_list:
        adj[u].add(v)
        adj[v].add(u)
    return adj


def _model_connected(adj, m):
    if not m:
        return True
    it = iter(m)
    start = next(it)
    seen = {start}
    stack = [start]
    while stack:
        x = stack.pop()
        for y in adj[x]:
            if y in m and y not in seen:
                seen.add(y)
                stack.append(y)
    return len(seen) == len(m)


def _ordered_host_edges(host):
    out = set()
    for u, v in host.edge_list:
        out.add((u, v))
        out.add((v, u))
    return sorted(out)


def verify_represents(g, r):
    """Models are nonempty connected host-node sets whose pairwise
    intersections match E(g) exactly. Returns (ok, first violation)."""
    if len(r.models) != g.n:
        raise DomainMismatch(f"{len(r.models)} models for {g.n} vertices")
    adj = _host_adjacency(r.host)
    for u, m in enumerate(r.models):
        for x in sorted(m):
            if not (0 <= x < r.host.n):
                return False, f"model {u} uses host node {x} out of range"
        if not m:
            return False, f"model {u} is empty"
        if not _model_connected(adj, m):
            return False, f"model {u} is disconnected"
    for u in range(g.n):
        for v in range(u + 1, g.n):
            meets = bool(r.models[u] & r.models[v])
            if meets and not g.has_edge(u, v):
                return False, f"models {u} and {v} intersect but ({u},{v}) is not an edge"
            if not meets and g.has_edge(u, v):
                return False, f"({u},{v}) is an edge but models {u} and {v} are disjoint"
    return True, None


def verify_proper(g, r):
    """verify_represents plus: no model is contained in another."""
    ok, why = verify_represents(g, r)
    if not ok:
        return ok, why
    for u in range(g.n):
        for v in range(g.n):
            if u != v and r.models[u] <= r.models[v]:
                return False, f"model {u} is contained in model {v}"
    return True, None


def escapes(r, u, v):
    """Witness edge (x,y) with x in the model of u and y outside the model
    of v, or None."""
    mu, mv = r.models[u], r.models[v]
    for x, y in _ordered_host_edges(r.host):
        if x in mu and y not in mv:
            return EscapeWitness(x, y)
    return None


def strongly_escapes(r, u, v):
    """Witness edge (x,y) with x shared by both models and y outside the
    model of v, or None."""
    mu, mv = r.models[u], r.models[v]
    for x, y in _ordered_host_edges(r.host):
        if x in mu and x in mv and y not in mv:
            return EscapeWitness(x, y)
    return None


def verify_compact(g, r):
    """Leaves empty; non-leaves carry exactly the maximal cliques, one node
    per clique; every intersecting ordered pair strongly escapes."""
    if not (r.host.is_simple() and len(r.host.edge_list) == max(r.host.n - 1, 0)):
        return False, "host is not a tree"
    ok, why = verify_represents(g, r)
    if not ok:
        return ok, why
    from .chordal import is_chordal, maximal_cliques

    res = is_chordal(g)
    if not res.chordal:
        return False, f"graph has induced cycle {res.witness_cycle}"
    deg = r.host.degrees()
    vs = r.vertex_sets()
    for x in range(r.host.n):
        if deg[x] == 1 and vs[x]:
            return False, f"leaf {x} carries vertices {sorted(vs[x])}"
    cliques = [frozenset(c) for c in maximal_cliques(g, res.peo)]
    want = set(cliques)
    seen = {}
    for x in range(r.host.n):
        if deg[x] == 1:
            continue
        k = frozenset(vs[x])
        if k not in want:
            return False, f"non-leaf {x} carries {sorted(vs[x])}, not a maximal clique"
        if k in seen:
            return False, f"non-leaves {seen[k]} and {x} carry the same clique"
        seen[k] = x
    for k in cliques:
        if k not in seen:
            return False, f"maximal clique {sorted(k)} is not carried by any non-leaf"
    # Strong escapes via boundary masks: u strongly escapes v iff the model
    # of u meets the boundary of the model of v.
    adj = _host_adjacency(r.host)
    masks = []
    for m in r.models:
        mm = 0
        for x in m:
            mm |= 1 << x
        masks.append(mm)
    bounds = []
    for m in r.models:
        b = 0
        for x in m:
            if any(y not in m for y in adj[x]):
                b |= 1 << x
        bounds.append(b)
    for u in range(g.n):
        for v in range(g.n):
            if u == v or not (masks[u] & masks[v]):
                continue
            if not (masks[u] & bounds[v]):
                return False, f"no strong escape for ordered pair ({u},{v})"
    return True, None


# ---------------------------------------------------------------------------
# Compact -> proper

def _find_edge(host, a, b):
    for i, (u, v) in enumerate(host.edge_list):
        if (u, v) == (a, b) or (u, v) == (b, a):
            return i
    raise InvariantBroken(f"no host edge ({a},{b})")


def _subdivide_with_models(host, models, a, b):
    """Subdivide host edge (a,b); models spanning both endpoints gain the new
    node. Returns (host, new node)."""
    host, w = subdivide_edge(host, _find_edge(host, a, b))
    for m in models:
        if a in m and b in m:
            m.add(w)
    return host, w


def proper_from_compact(g, r):
    """Stretch a compact representation into a proper one.

    Twins (equal models) are set aside first. Every host edge is subdivided
    once; then for every ordered pair of originally adjacent host nodes the
    vertices leaving the pair get extension paths graded by strict model
    containment, which breaks all containments. Twins are reintroduced via
    two fresh boundary subdivisions each.
    """
    ok, why = verify_compact(g, r)
    if not ok:
        raise NotCompact(why)
    host = HostTree(r.host.n, r.host.edge_list)
    base = [frozenset(m) for m in r.models]

    # Twin groups: keep the smallest vertex of each equal-model class.
    rep_of = {}
    twins = []
    seen = {}
    for u in range(g.n):
        k = base[u]
        if k in seen:
            rep_of[u] = seen[k]
            twins.append(u)
        else:
            seen[k] = u
            rep_of[u] = u
    active = [u for u in range(g.n) if rep_of[u] == u]
    models = {u: set(base[u]) for u in active}

    original_edges = list(host.edge_list)
    mids = {}
    for a, b in original_edges:
        mlist = [models[u] for u in active]
        host, w = _subdivide_with_models(host, mlist, a, b)
        mids[(a, b)] = w
        mids[(b, a)] = w

    for a, b in original_edges:
        for x, y in ((a, b), (b, a)):
            leavers = [u for u in active if x in base[u] and y not in base[u]]
            if not leavers:
                continue
            ext = {}

            def extension(u):
                got = ext.get(u)
                if got is not None:
                    return got
                ext[u] = 1 + max(
                    (extension(v) for v in leavers if base[u] < base[v]),
                    default=0,
                )
                return ext[u]

            depth = max(extension(u) for u in leavers)
            prev = x
            zs = []
            for _ in range(depth):
                mlist = [models[u] for u in active]
                host, z = _subdivide_with_models(host, mlist, prev, mids[(x, y)])
                zs.append(z)
                prev = z
            for u in leavers:
                models[u].update(zs[: ext[u]])

    # Reintroduce twins: two fresh subdivision nodes on distinct boundary
    # edges of the representative's model keep the pair incomparable.
    out_models = {u: models[u] for u in active}
    for t in sorted(twins):
        rep = rep_of[t]
        m = out_models[rep]
        adj = _host_adjacency(host)
        boundary = []
        for x in sorted(m):
            for y in sorted(adj[x]):
                if y not in m:
                    boundary.append((x, y))
        if len(boundary) < 2:
            raise InvariantBroken("fewer than two boundary edges for a twin model")
        (a1, b1), (a2, b2) = boundary[0], boundary[1]
        mlist = list(out_models.values())
        host, w1 = _subdivide_with_models(host, mlist, a1, b1)
        host, w2 = _subdivide_with_models(host, mlist, a2, b2)
        out_models[t] = set(m) | {w2}
        out_models[rep] = set(m) | {w1}
        # later twins of the same representative copy the grown model

    final = [set(out_models[u]) for u in range(g.n)]
    return Representation(host, final, "proper")


# ---------------------------------------------------------------------------
# Proper -> compact

def _contract_with_models(host, models, a, b):
    """Contract host edge (a,b) into min(a,b) and rewrite models."""
    e = _find_edge(host, a, b)
    keep, drop = min(a, b), max(a, b)

    def remap(x):
        if x == drop:
            return keep
        return x - 1 if x > drop else x

    edges = []
    for i, (u, v) in enumerate(host.edge_list):
        if i == e:
            continue
        p, q = remap(u), remap(v)
        if p != q:
            edges.append((p, q))
    new_host = HostTree(host.n - 1, edges)
    new_models = [{remap(x) for x in m} for m in models]
    return new_host, new_models


def compact_from_proper(g, r):
    """Shrink a proper representation to the compact normal form.

    A fresh empty leaf is attached next to every host leaf, then non-leaf
    nodes whose vertex set is not a (uniquely carried) maximal clique are
    contracted into a neighbor whose set contains theirs, until the non-leaf
    nodes biject with the maximal cliques.
    """
    ok, why = verify_proper(g, r)
    if not ok:
        raise NotProper(why)
    if g.n == 0:
        return Representation(HostTree(2, [(0, 1)]), [], "compact")
    from .chordal import is_chordal, maximal_cliques

    res = is_chordal(g)
    if not res.chordal:
        raise NotChordal(f"induced cycle {res.witness_cycle}")
    cliques = {frozenset(c) for c in maximal_cliques(g, res.peo)}

    host = HostTree(r.host.n, r.host.edge_list)
    models = [set(m) for m in r.models]
    if host.n == 1:
        # Only a one-vertex graph fits on a one-node host; a path host with
        # the model on the middle node is its compact form.
        host = HostTree(3, [(0, 1), (1, 2)])
        return Representation(host, [{1}], "compact")

    for leaf in list(host.leaves()):
        host = HostTree(host.n + 1, list(host.edge_list) + [(leaf, host.n)])

    while True:
        deg = host.degrees()
        vs = [set() for _ in range(host.n)]
        for u, m in enumerate(models):
            for x in m:
                vs[x].add(u)
        counts = {}
        for x in range(host.n):
            if deg[x] > 1:
                counts[frozenset(vs[x])] = counts.get(frozenset(vs[x]), 0) + 1
        pick = None
        for z in range(host.n):
            if deg[z] <= 1:
                continue
            k = frozenset(vs[z])
            if k in cliques and counts[k] == 1:
                continue
            pick = z
            break
        if pick is None:
            break
        z = pick
        adj = _host_adjacency(host)
        target = None
        for z2 in sorted(adj[z]):
            if deg[z2] > 1 and vs[z] <= vs[z2]:
                target = z2
                break
        if target is None:
            raise InvariantBroken(f"no contraction target for host node {z}")
        host, models = _contract_with_models(host, models, z, target)

    out = Representation(host, models, "compact")
    ok, why = verify_compact(g, out)
    if not ok:
        raise InvariantBroken(f"normal form failed verification: {why}")
    return out


# ---------------------------------------------------------------------------
# Serialization

def representation_to_json(r):
    return json.dumps(
        {
            "host": {"nodes": r.host.n, "edges": [[u, v] for u, v in r.host.edge_list]},
            "models": {str(u): sorted(m) for u, m in enumerate(r.models)},
            "mode": r.mode,
        },
        indent=2,
        sort_keys=True,
    )


def representation_from_json(text, tree=True):
    try:
        d = json.loads(text)
    except json.JSONDecodeError as e:
        raise InputFormatError(f"bad JSON: {e}") from None
    try:
        n = d["host"]["nodes"]
        edges = [tuple(e) for e in d["host"]["edges"]]
        mode = d["mode"]
        raw = d["models"]
    except (KeyError, TypeError) as e:
        raise InputFormatError(f"missing field: {e}") from None
    try:
        host = HostTree(n, edges) if tree else Host(n, edges)
    except ValueError as e:
        raise InputFormatError(str(e)) from None
    models = []
    for u in range(len(raw)):
        if str(u) not in raw:
            raise InputFormatError(f"models must be keyed 0..{len(raw) - 1}; missing {u}")
        models.append(set(raw[str(u)]))
    return Representation(host, models, mode)


def representation_to_dot(r):
    """GraphViz text; non-leaf host nodes are annotated with the vertices
    whose models cover them."""
    vs = r.vertex_sets()
    deg = r.host.degrees()
    lines = ["graph host {"]
    for x in range(r.host.n):
        if deg[x] == 1 and not vs[x]:
            lines.append(f'  n{x} [label="{x}"];')
        else:
            inner = ",".join(str(u) for u in sorted(vs[x]))
            lines.append(f'  n{x} [label="{x}: {{{inner}}}"];')
    for u, v in r.host.edge_list:
        lines.append(f"  n{u} -- n{v};")
    lines.append("}")
    return "\n".join(lines) + "\n"
