"""Recognition solver.

Builds hosts bottom-up along a template. Every host node under construction
carries a fragment: the subtree built so far together with, for each graph
vertex appearing in it, the set of vertices that still lack an escape edge
(an ordered host edge (x, x') with the first vertex at x and the second
vertex absent from x'). A vertex whose model is finished but whose escape
row is nonzero can never be fixed later, so the build fails early.

Chains are laid along their template routes one clique at a time; at each
crossed junction the feasible clique positions form a prefix of the
remaining range, and the walk commits the deepest feasible one.
"""

from __future__ import annotations

import itertools
from collections import namedtuple

from .chordal import is_chordal, is_proper_interval, maximal_cliques
from .errors import (
    InvariantBroken,
    NotChordal,
    NotConnected,
    NotOnChain,
    Unresolved,
)
from .graphs import Graph, connected_components, induced_subgraph, is_connected
from .hosts import (
    HostTree,
    is_re_subdivision,
    path_between,
    reduced_trees_with_leaf_count,
    root_tree,
    tree_adjacency,
)
from .representations import (
    Representation,
    proper_from_compact,
    verify_compact,
    verify_proper,
)
from .structure import chains
from .templates import enumerate_templates


class Fragment:
    """A partially built host subtree.

    csets: global node id -> vertex set carried there.
    edges: host edges among those ids. root: the topmost id.
    support: graph vertices appearing somewhere in the fragment.
    rows: vertex -> bitmask of vertices for which no escape edge exists yet.
    """

    __slots__ = ("csets", "edges", "root", "support", "rows")

    def __init__(self, csets, edges, root, support, rows):
        self.csets = csets
        self.edges = edges
        self.root = root
        self.support = support
        self.rows = rows


def build_node(counter, vset, children, nbits):
    """Attach the given child fragments below a fresh node carrying vset.

    Returns the combined fragment, or None when a vertex's model would
    become disconnected or a finished vertex still lacks an escape edge.
    """
    vset = frozenset(vset)
    full = (1 << nbits) - 1
    seen_in = {}
    for i, ch in enumerate(children):
        for u in ch.support:
            seen_in.setdefault(u, []).append(i)
    for u, where in seen_in.items():
        if len(where) >= 2 and u not in vset:
            return None
        if u in vset:
            for i in where:
                chi = children[i]
                if u not in chi.csets[chi.root]:
                    return None

    rid = next(counter)
    root_masks = []
    inter_roots = full
    for ch in children:
        m = 0
        for u in ch.csets[ch.root]:
            m |= 1 << u
        root_masks.append(m)
        inter_roots &= m
    vmask = 0
    for u in vset:
        vmask |= 1 << u

    csets = {}
    edges = []
    for ch in children:
        csets.update(ch.csets)
        edges.extend(ch.edges)
        edges.append((ch.root, rid))
    csets[rid] = vset

    rows = {}
    for u, where in seen_in.items():
        row = full
        at_a_root = False
        for i in where:
            chi = children[i]
            row &= chi.rows[u]
            if u in chi.csets[chi.root]:
                at_a_root = True
        if at_a_root:
            row &= vmask
        if u in vset:
            row &= inter_roots
        rows[u] = row
    for u in vset:
        if u not in seen_in:
            rows[u] = inter_roots & ~(1 << u)

    for u in seen_in:
        if u not in vset and rows[u]:
            return None

    support = set(seen_in)
    support |= vset
    return Fragment(csets, edges, rid, support, rows)


PotentialRecord = namedtuple(
    "PotentialRecord",
    ["n", "fragment", "childpos", "inner_sets", "candidates", "passed"],
)


def realize_template(g, tpl, cliques, chain_data, collect=None):
    """Try to build a compact representation shaped like the template.

    Returns (representation, protected leaf map) or None. When `collect`
    is a list, every upward junction scan appends a PotentialRecord with
    the full feasibility vector.
    """
    chain_list = chain_data[0]
    t0, labels, images = tpl.tree, tpl.labels, tpl.images
    n = g.n
    csets = [frozenset(c) for c in cliques]
    deg = t0.degrees()

    paths = {ci: path_between(t0, a, b) for ci, (a, b) in images.items()}
    covered = {}
    passer = {}
    pathpos = {}
    for ci, p in paths.items():
        for k in range(len(p) - 1):
            covered[frozenset((p[k], p[k + 1]))] = ci
        for k, v in enumerate(p):
            pathpos[(ci, v)] = k
        for v in p[1:-1]:
            passer[v] = ci

    rbar = sorted(labels, key=lambda v: tuple(cliques[labels[v]]))
    root = rbar[0]
    parent, order = root_tree(t0, root)
    kids = [[] for _ in range(t0.n)]
    for v in range(t0.n):
        if v != root and parent[v] is not None:
            kids[parent[v]].append(v)
    for lst in kids:
        lst.sort()

    pos = {}
    for ci, (a, b) in images.items():
        pos[(ci, a)] = 0
        pos[(ci, b)] = len(chain_list[ci].inner) + 1

    counter = itertools.count()
    frag = {}
    hostid = {}

    def vset_at(ci, q):
        return csets[chain_list[ci].inner[q - 1]]

    def prepare(c, lam):
        """Child fragment for the edge (c, lam), with any clique fills the
        covering chain places strictly between the two committed spots."""
        F = frag[c]
        ci = covered.get(frozenset((c, lam)))
        if ci is None:
            return F
        pc, pl = pos[(ci, c)], pos[(ci, lam)]
        step = 1 if pl > pc else -1
        for q in range(pc + step, pl, step):
            F = build_node(counter, vset_at(ci, q), [F], n)
            if F is None:
                return None
        return F

    for lam in order:
        if deg[lam] == 1 and lam != root:
            F = build_node(counter, frozenset(), [], n)
            frag[lam] = F
            hostid[lam] = F.root
            continue

        ch = kids[lam]
        if lam in labels:
            built = []
            for c in ch:
                P = prepare(c, lam)
                if P is None:
                    return None
                built.append(P)
            F = build_node(counter, csets[labels[lam]], built, n)
            if F is None:
                return None
        else:
            ci = passer.get(lam)
            if ci is None:
                return None
            s = len(chain_list[ci].inner)
            k = pathpos[(ci, lam)]
            p = paths[ci]
            nb_lo, nb_hi = p[k - 1], p[k + 1]
            below = [x for x in (nb_lo, nb_hi) if parent[x] == lam]
            prepared = {}
            ok = True
            for c in ch:
                if c in below:
                    continue
                P = prepare(c, lam)
                if P is None:
                    ok = False
                    break
                prepared[c] = P
            if not ok:
                return None

            if len(below) == 1:
                nb = below[0]
                pnb = pos[(ci, nb)]
                upward = nb == nb_lo
                cands = (
                    list(range(pnb + 1, s + 1))
                    if upward
                    else list(range(pnb - 1, 0, -1))
                )
                # a position is feasible when the chain extends to it one
                # clique at a time over the committed side, so every probe
                # builds on the previous one and the flags form a prefix
                stack = frag[nb]
                stacks = []
                flags = []
                for q in cands:
                    stack = build_node(counter, vset_at(ci, q), [stack], n)
                    flags.append(stack is not None)
                    if stack is None:
                        break
                    stacks.append(stack)
                m = len(stacks)
                if collect is not None and upward:
                    collect.append(
                        PotentialRecord(
                            n,
                            frag[nb],
                            pnb,
                            tuple(vset_at(ci, i) for i in range(1, s + 1)),
                            list(cands[: len(flags)]),
                            list(flags),
                        )
                    )
                F = None
                for j in range(m - 1, -1, -1):
                    pos[(ci, lam)] = cands[j]
                    Fm = stacks[j - 1] if j else frag[nb]
                    built = [Fm if c == nb else prepared[c] for c in ch]
                    t = build_node(counter, vset_at(ci, cands[j]), built, n)
                    if t is not None:
                        F = t
                        break
                if F is None:
                    return None
            else:
                a, b = pos[(ci, nb_lo)], pos[(ci, nb_hi)]
                cands = list(range(a + 1, b))
                stack = frag[nb_lo]
                stacks = []
                for q in cands:
                    stack = build_node(counter, vset_at(ci, q), [stack], n)
                    if stack is None:
                        break
                    stacks.append(stack)
                m = len(stacks)
                F = None
                for j in range(m - 1, -1, -1):
                    pos[(ci, lam)] = cands[j]
                    Fm = stacks[j - 1] if j else frag[nb_lo]
                    Ff = prepare(nb_hi, lam)
                    if Ff is None:
                        continue
                    built = [
                        Fm if c == nb_lo else Ff if c == nb_hi else prepared[c]
                        for c in ch
                    ]
                    t = build_node(counter, vset_at(ci, cands[j]), built, n)
                    if t is not None:
                        F = t
                        break
                if F is None:
                    return None

        frag[lam] = F
        hostid[lam] = F.root

    final = frag[root]
    if any(final.rows.values()):
        return None

    gids = sorted(final.csets)
    idx = {gid: i for i, gid in enumerate(gids)}
    host = HostTree(len(gids), [(idx[a], idx[b]) for a, b in final.edges])
    models = [set() for _ in range(n)]
    for gid, vs in final.csets.items():
        for u in vs:
            models[u].add(idx[gid])
    rep = Representation(host, models, "compact")
    ok, why = verify_compact(g, rep)
    if not ok:
        raise InvariantBroken(f"realized host failed the compact check: {why}")
    leafmap = {mk: idx[hostid[node]] for mk, node in tpl.protected.items()}
    return rep, leafmap


# ---------------------------------------------------------------------------
# Connected recognition

def recognize_connected(g, t, protected=(), collect=None):
    """Recognize a connected graph against re-subdivisions of t.

    Returns (representation, protected leaf map) or None. The
    representation is compact except in the single-vertex case.
    """
    if t.n < 2:
        raise ValueError("target tree must have at least two nodes")
    if g.n == 0:
        raise ValueError("empty graphs are handled by recognize()")
    if not is_connected(g):
        raise NotConnected("recognize_connected needs a connected graph")
    if g.n == 1:
        host = HostTree(t.n, list(t.edge_list))
        return Representation(host, [{0}], "proper"), {p: p for p in protected}
    res = is_chordal(g)
    if not res.chordal:
        raise NotChordal("graph has an induced cycle")
    cliques = maximal_cliques(g, res.peo)
    chain_data = chains(g, cliques)
    for tpl in enumerate_templates(g, t, cliques, chain_data, protected):
        out = realize_template(g, tpl, cliques, chain_data, collect)
        if out is not None:
            return out
    return None


# ---------------------------------------------------------------------------
# Full recognition (disconnected inputs allowed)

def recognize(g, t):
    """Return a verified proper representation of g on a re-subdivision
    of t, or None when no such representation exists."""
    if g.n == 0:
        return Representation(HostTree(t.n, list(t.edge_list)), [], "proper")
    if t.n == 1:
        if g.n == 1:
            return Representation(HostTree(1, []), [{0}], "proper")
        return None
    if not is_chordal(g).chordal:
        return None

    comps = connected_components(g)
    if len(comps) == 1:
        out = recognize_connected(g, t)
        if out is None:
            return None
        rep, _ = out
        if rep.mode == "compact":
            rep = proper_from_compact(g, rep)
        _assert_result(g, t, rep)
        return rep

    subs = [induced_subgraph(g, c) for c in comps]
    pi_flags = [is_proper_interval(sub) for sub, _ in subs]
    nonpi = [i for i, flag in enumerate(pi_flags) if not flag]

    if not nonpi:
        base = Representation(HostTree(t.n, list(t.edge_list)), [], "proper")
        items = [_comp_path_item(g, comps[i], subs[i]) for i in range(len(comps))]
        rep = _splice(g, base, {}, items)
    elif len(nonpi) == 1:
        i = nonpi[0]
        out = recognize_connected(subs[i][0], t)
        if out is None:
            return None
        crep, _ = out
        if crep.mode == "compact":
            crep = proper_from_compact(subs[i][0], crep)
        vmap = _local_to_global(comps[i], subs[i][1])
        base_models = {
            vmap[lv]: set(m) for lv, m in enumerate(crep.models)
        }
        items = [
            _comp_path_item(g, comps[j], subs[j])
            for j in range(len(comps))
            if j != i
        ]
        rep = _splice(g, crep, base_models, items)
    else:
        rep = _multi_branching(g, t, comps, subs, nonpi)

    if rep is None:
        return None
    _assert_result(g, t, rep)
    return rep


def _assert_result(g, t, rep):
    ok, why = verify_proper(g, rep)
    if not ok:
        raise InvariantBroken(f"recognizer produced an invalid result: {why}")
    if not is_re_subdivision(rep.host, t):
        raise InvariantBroken("recognizer host is not shaped like the target")


def _local_to_global(comp, idx_map):
    out = {}
    for gv, lv in idx_map.items():
        out[lv] = gv
    return out


def _comp_path_item(g, comp, sub_pair):
    """Proper path representation of a proper-interval component."""
    sub, idx = sub_pair
    out = recognize_connected(sub, HostTree(2, [(0, 1)]))
    if out is None:
        raise InvariantBroken("component classified path-like fails on paths")
    rep, _ = out
    if rep.mode == "compact":
        rep = proper_from_compact(sub, rep)
    return rep, _local_to_global(comp, idx)


def _path_order(host):
    if host.n == 1:
        return [0]
    deg = host.degrees()
    ends = [v for v in range(host.n) if deg[v] == 1]
    adj = tree_adjacency(host)
    start = min(ends)
    order = [start]
    prev = None
    while len(order) < host.n:
        nxt = [w for w in adj[order[-1]] if w != prev]
        prev = order[-1]
        order.append(nxt[0])
    return order


def _splice(g, base, base_models, items):
    """Insert the given path representations into an empty leaf edge of the
    base host, each preceded by one empty separator node."""
    if not items:
        models = [set(base_models.get(v, ())) for v in range(g.n)]
        return Representation(base.host, models, base.mode)
    host = base.host
    occupied = set()
    for m in base_models.values():
        occupied |= m
    deg = host.degrees()
    leaves = [v for v in range(host.n) if deg[v] == 1 and v not in occupied]
    if not leaves:
        raise InvariantBroken("no empty leaf available for splicing")
    leaf = min(leaves)
    x = tree_adjacency(host)[leaf][0]

    total = host.n
    edges = [e for e in host.edge_list if set(e) != {leaf, x}]
    models = dict(base_models)
    prev = leaf
    for rep, vmap in items:
        sep = total
        total += 1
        edges.append((prev, sep))
        prev = sep
        ids = {}
        for node in _path_order(rep.host):
            ids[node] = total
            total += 1
        porder = _path_order(rep.host)
        edges.append((prev, ids[porder[0]]))
        for a, b in zip(porder, porder[1:]):
            edges.append((ids[a], ids[b]))
        prev = ids[porder[-1]]
        for lv, m in enumerate(rep.models):
            models[vmap[lv]] = {ids[node] for node in m}
    edges.append((prev, x))
    out_models = [set(models.get(v, ())) for v in range(g.n)]
    return Representation(HostTree(total, edges), out_models, "proper")


def _twice_subdivided(t):
    # two midpoints per edge, so regions meeting across an edge can each
    # claim a private one
    nodes = t.n
    edges = []
    for u, v in t.edge_list:
        a, b = nodes, nodes + 1
        nodes += 2
        edges.extend([(u, a), (a, b), (b, v)])
    return HostTree(nodes, edges)


def _subtree_candidates(t2):
    """Connected node sets of size >= 2 whose boundary nodes have at most
    one neighbor inside, sorted for deterministic search."""
    adj = tree_adjacency(t2)
    out = []
    for bits in range(1, 1 << t2.n):
        nodes = [v for v in range(t2.n) if bits >> v & 1]
        if len(nodes) < 2:
            continue
        nset = set(nodes)
        seen = {nodes[0]}
        stack = [nodes[0]]
        while stack:
            v = stack.pop()
            for w in adj[v]:
                if w in nset and w not in seen:
                    seen.add(w)
                    stack.append(w)
        if len(seen) != len(nodes):
            continue
        ok = True
        for v in nodes:
            outside = any(w not in nset for w in adj[v])
            inside = sum(1 for w in adj[v] if w in nset)
            if outside and inside > 1:
                ok = False
                break
        if ok:
            out.append(tuple(nodes))
    out.sort(key=lambda s: (len(s), s))
    return out


def _multi_branching(g, t, comps, subs, nonpi):
    """Place each branching component on its own region of the target tree
    with every edge subdivided twice, then glue the regions back together."""
    t2 = _twice_subdivided(t)
    adj2 = tree_adjacency(t2)
    cands = _subtree_candidates(t2)
    pi_items = [
        _comp_path_item(g, comps[j], subs[j])
        for j in range(len(comps))
        if j not in nonpi
    ]

    chosen = []

    def assemble():
        owner = {}
        for pos, nodes in enumerate(chosen):
            for v in nodes:
                owner[v] = pos
        parts = []
        for pos, i in enumerate(nonpi):
            nodes = sorted(chosen[pos])
            local = {v: k for k, v in enumerate(nodes)}
            ledges = [
                (local[u], local[v])
                for u, v in t2.edge_list
                if u in local and v in local
            ]
            stree = HostTree(len(nodes), ledges)
            boundary = tuple(
                sorted(
                    local[v]
                    for v in nodes
                    if any(w not in local for w in adj2[v])
                )
            )
            out = recognize_connected(subs[i][0], stree, protected=boundary)
            if out is None:
                return None
            rep, leafmap = out
            if rep.mode == "compact":
                rep = proper_from_compact(subs[i][0], rep)
            parts.append((nodes, local, rep, leafmap))

        offsets = []
        total = 0
        for _, _, rep, _ in parts:
            offsets.append(total)
            total += rep.host.n
        assigned = set(owner)
        region_of = {}
        for v in range(t2.n):
            if v in assigned or v in region_of:
                continue
            rid = total
            stack = [v]
            region_of[v] = rid
            while stack:
                a = stack.pop()
                for w in adj2[a]:
                    if w not in assigned and w not in region_of:
                        region_of[w] = rid
                        stack.append(w)
            total += 1

        edges = []
        for pos, (_, _, rep, _) in enumerate(parts):
            off = offsets[pos]
            edges.extend((a + off, b + off) for a, b in rep.host.edge_list)

        def image(v):
            pos = owner[v]
            nodes, local, rep, leafmap = parts[pos]
            return offsets[pos] + leafmap[local[v]]

        for a, b in t2.edge_list:
            ain, bin_ = a in owner, b in owner
            if ain and bin_:
                if owner[a] != owner[b]:
                    edges.append((image(a), image(b)))
            elif ain:
                edges.append((image(a), region_of[b]))
            elif bin_:
                edges.append((region_of[a], image(b)))

        models = {}
        for pos, i in enumerate(nonpi):
            vmap = _local_to_global(comps[i], subs[i][1])
            _, _, rep, _ = parts[pos]
            for lv, m in enumerate(rep.models):
                models[vmap[lv]] = {node + offsets[pos] for node in m}
        try:
            glued = Representation(
                HostTree(total, edges),
                [set(models.get(v, ())) for v in range(g.n)],
                "proper",
            )
            full = _splice(g, glued, models, pi_items)
        except (ValueError, InvariantBroken):
            return None
        ok, _why = verify_proper(g, full)
        if not ok:
            return None
        if not is_re_subdivision(full.host, t):
            return None
        return full

    def rec(pos, used):
        if pos == len(nonpi):
            return assemble()
        for nodes in cands:
            if used & set(nodes):
                continue
            chosen.append(nodes)
            out = rec(pos + 1, used | set(nodes))
            if out is not None:
                return out
            chosen.pop()
        return None

    return rec(0, set())


# ---------------------------------------------------------------------------
# Chain rehang

def rehang(r, yi, yj):
    """Move the off-chain subtrees hanging at host node yi over to yj.

    Both nodes must carry inner cliques of the same chain of the graph the
    representation encodes; models are kept as node sets."""
    models = [set(m) for m in r.models]
    nloc = len(models)
    gedges = [
        (u, v)
        for u in range(nloc)
        for v in range(u + 1, nloc)
        if models[u] & models[v]
    ]
    g = Graph(nloc, gedges)
    host = r.host
    vs = r.vertex_sets()
    cliques = maximal_cliques(g)
    key = {tuple(c): i for i, c in enumerate(cliques)}
    node_of = {}
    cl_at = {}
    for node in range(host.n):
        z = key.get(tuple(sorted(vs[node])))
        if z is not None and z not in node_of:
            node_of[z] = node
            cl_at[node] = z
    chain_list, _sbar, inner_index = chains(g, cliques)
    zi, zj = cl_at.get(yi), cl_at.get(yj)
    if zi is None or zj is None:
        raise NotOnChain("both nodes must carry maximal cliques")
    if zi not in inner_index or zj not in inner_index:
        raise NotOnChain("both cliques must be inner cliques of a chain")
    (ci, ki) = inner_index[zi]
    (cj, _kj) = inner_index[zj]
    if ci != cj or yi == yj:
        raise NotOnChain("the two cliques must be distinct and share a chain")

    ch = chain_list[ci]
    s = len(ch.inner)

    def step_toward(targets):
        firsts = set()
        for z in targets:
            p = path_between(host, yi, node_of[z])
            if len(p) < 2:
                raise InvariantBroken("degenerate chain geometry")
            firsts.add(p[1])
        if len(firsts) != 1:
            raise InvariantBroken("chain terminals are not aligned")
        return next(iter(firsts))

    prev_targets = [ch.inner[ki - 2]] if ki >= 2 else list(ch.left)
    next_targets = [ch.inner[ki]] if ki <= s - 1 else list(ch.right)
    keep = {step_toward(prev_targets), step_toward(next_targets)}

    new_edges = []
    for u, v in host.edge_list:
        if u == yi and v not in keep:
            new_edges.append((yj, v))
        elif v == yi and u not in keep:
            new_edges.append((u, yj))
        else:
            new_edges.append((u, v))
    try:
        new_host = HostTree(host.n, new_edges)
    except ValueError as exc:
        raise InvariantBroken(f"rehang broke the host tree: {exc}")

    adj = tree_adjacency(new_host)
    for u, m in enumerate(models):
        if not m:
            continue
        start = next(iter(m))
        seen = {start}
        stack = [start]
        while stack:
            a = stack.pop()
            for w in adj[a]:
                if w in m and w not in seen:
                    seen.add(w)
                    stack.append(w)
        if len(seen) != len(m):
            raise InvariantBroken(f"rehang disconnected the model of {u}")
    return Representation(new_host, models, r.mode)


# ---------------------------------------------------------------------------
# Smallest number of host leaves

def proper_leafage(g, max_leaves=None):
    """Smallest leaf count over trees hosting g, with a witness tree."""
    res = is_chordal(g)
    if not res.chordal:
        raise NotChordal("graph has an induced cycle")
    if g.n <= 1:
        return 0, HostTree(1, [])
    comps = connected_components(g)
    if all(is_proper_interval(induced_subgraph(g, c)[0]) for c in comps):
        return 2, HostTree(2, [(0, 1)])
    cliques = maximal_cliques(g, res.peo)
    top = len(cliques) + 1
    if max_leaves is not None:
        top = min(top, max_leaves)
    for ell in range(3, top + 1):
        for t in reduced_trees_with_leaf_count(ell):
            rep = recognize(g, t)
            if rep is not None:
                return ell, t
    raise Unresolved(f"no host tree with at most {top} leaves was found")
