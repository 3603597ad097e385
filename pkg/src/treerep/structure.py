"""Clique-level structure of a connected chordal graph.

For a maximal clique y, the components of g minus y partition the other
maximal cliques. A pair of cliques on two distinct components "surrounds" y
when the component pair satisfies a hull condition and both cliques have
maximum overlap with y on their side. The per-side maximizers are the guards
of y. Mutual singleton guards link surrounded cliques into chains, the core
decomposition the solver works over.
"""

from __future__ import annotations

from collections import namedtuple

from .errors import InvariantBroken, NotConnected
from .graphs import is_connected

Guards = namedtuple("Guards", ["left", "right"])
ComponentInfo = namedtuple("ComponentInfo", ["vertices", "hull", "cliques"])
Chain = namedtuple("Chain", ["inner", "left", "right"])


def components_K(g, cliques, y):
    """Components of g - V_y with their hulls and the cliques they absorb.

    Each entry: (component vertex list, hull = neighborhood inside V_y,
    indices of cliques k != y whose part outside V_y lies in the component).
    Sorted by smallest component member.
    """
    vy = set(cliques[y])
    seen = set(vy)
    comps = []
    for s in range(g.n):
        if s in seen:
            continue
        stack = [s]
        seen.add(s)
        comp = []
        while stack:
            v = stack.pop()
            comp.append(v)
            for w in g.adj[v]:
                if w not in seen:
                    seen.add(w)
                    stack.append(w)
        comps.append(sorted(comp))
    out = []
    for comp in comps:
        cs = set(comp)
        hull = set()
        for v in comp:
            hull |= g.adj[v] & vy
        members = []
        for k, ck in enumerate(cliques):
            if k == y:
                continue
            rest = [u for u in ck if u not in vy]
            if rest and rest[0] in cs:
                members.append(k)
        out.append(ComponentInfo(comp, sorted(hull), members))
    return out


def _pair_condition(vy, comps, i, j):
    """Hull condition for the component pair (i, j) of g - V_y."""
    ni = set(comps[i].hull)
    nj = set(comps[j].hull)
    if len(comps) == 2:
        return ni | nj == vy or not (ni & nj)
    if ni | nj != vy:
        return False
    meet = ni & nj
    return all(
        set(c.hull) <= meet for k, c in enumerate(comps) if k not in (i, j)
    )


def is_surrounding(g, cliques, l, y, r):
    """Whether (l, y, r) is a surrounding triple: l and r sit on two distinct
    components whose pair passes the hull condition, and each has maximum
    overlap with V_y on its component."""
    if len({l, y, r}) != 3:
        return False
    vy = set(cliques[y])
    comps = components_K(g, cliques, y)
    where = {}
    for idx, c in enumerate(comps):
        for k in c.cliques:
            where[k] = idx
    ci, cj = where[l], where[r]
    if ci == cj:
        return False
    if not _pair_condition(vy, comps, min(ci, cj), max(ci, cj)):
        return False

    def best(idx):
        return max(len(vy & set(cliques[k])) for k in comps[idx].cliques)

    return (
        len(vy & set(cliques[l])) == best(ci)
        and len(vy & set(cliques[r])) == best(cj)
    )


def guards(g, cliques, y):
    """Per-side maximum-overlap cliques for the surrounded clique y, or a
    pair of empty tuples when y is not surrounded.

    The left side is the passing component pair's side with the smaller
    smallest vertex. The passing pair is unique for chordal inputs; ties are
    broken toward the lexicographically least pair.
    """
    vy = set(cliques[y])
    comps = components_K(g, cliques, y)
    if len(comps) < 2:
        return Guards((), ())
    passing = [
        (i, j)
        for i in range(len(comps))
        for j in range(i + 1, len(comps))
        if comps[i].cliques and comps[j].cliques and _pair_condition(vy, comps, i, j)
    ]
    if not passing:
        return Guards((), ())
    i, j = passing[0]

    def maximizers(idx):
        overlap = {k: len(vy & set(cliques[k])) for k in comps[idx].cliques}
        top = max(overlap.values())
        return tuple(sorted(k for k, o in overlap.items() if o == top))

    return Guards(maximizers(i), maximizers(j))


def chains(g, cliques=None):
    """Chain decomposition: (chains, not-surrounded cliques, inner index).

    Chains are maximal paths in the mutual-singleton-guard link graph over
    surrounded cliques, stored with the lexicographically smaller inner end
    first. Each chain carries its two terminal guard sets. inner index maps
    a surrounded clique to (chain position in the list, 1-based position).
    """
    if not is_connected(g):
        raise NotConnected("chain decomposition needs a connected graph")
    if cliques is None:
        from .chordal import maximal_cliques

        cliques = maximal_cliques(g)
    gd = [guards(g, cliques, y) for y in range(len(cliques))]
    surrounded = [y for y in range(len(cliques)) if gd[y].left]
    sbar = [y for y in range(len(cliques)) if not gd[y].left]
    sset = set(surrounded)

    def linked(y, z):
        return ((gd[y].left == (z,) or gd[y].right == (z,))
                and (gd[z].left == (y,) or gd[z].right == (y,)))

    nbrs = {y: [] for y in surrounded}
    for y in surrounded:
        for side in (gd[y].left, gd[y].right):
            if len(side) == 1 and side[0] in sset and side[0] != y and linked(y, side[0]):
                if side[0] not in nbrs[y]:
                    nbrs[y].append(side[0])
    for y in surrounded:
        if len(nbrs[y]) > 2:
            raise InvariantBroken(f"clique {y} has {len(nbrs[y])} chain links")

    out = []
    placed = set()
    for start in surrounded:
        if start in placed:
            continue
        comp = [start]
        placed.add(start)
        qi = 0
        while qi < len(comp):
            for z in nbrs[comp[qi]]:
                if z not in placed:
                    placed.add(z)
                    comp.append(z)
            qi += 1
        ends = [y for y in comp if len(nbrs[y]) <= 1]
        if not ends:
            raise InvariantBroken("cycle in the chain link graph")
        seq = [min(ends)]
        while len(seq) < len(comp):
            nxt = [z for z in nbrs[seq[-1]] if len(seq) < 2 or z != seq[-2]]
            nxt = [z for z in nxt if z not in seq]
            if len(nxt) != 1:
                raise InvariantBroken("chain link component is not a path")
            seq.append(nxt[0])
        if len(seq) > 1 and seq[-1] < seq[0]:
            seq.reverse()

        def away_side(y, toward):
            if gd[y].left == (toward,):
                return gd[y].right
            return gd[y].left

        if len(seq) == 1:
            left, right = gd[seq[0]].left, gd[seq[0]].right
        else:
            left = away_side(seq[0], seq[1])
            right = away_side(seq[-1], seq[-2])
        out.append(Chain(tuple(seq), tuple(sorted(left)), tuple(sorted(right))))

    out.sort(key=lambda ch: ch.inner)
    inner_index = {}
    for ci, ch in enumerate(out):
        for pos, y in enumerate(ch.inner, start=1):
            inner_index[y] = (ci, pos)
    return out, sbar, inner_index


def surrounding_pairs(g, cliques, y):
    """All ordered clique pairs surrounding y, via the maximum-overlap
    characterization, unioned over every passing component pair."""
    vy = set(cliques[y])
    comps = components_K(g, cliques, y)
    out = set()
    for i in range(len(comps)):
        for j in range(i + 1, len(comps)):
            if not comps[i].cliques or not comps[j].cliques:
                continue
            if not _pair_condition(vy, comps, i, j):
                continue

            def maximizers(idx):
                overlap = {
                    k: len(vy & set(cliques[k])) for k in comps[idx].cliques
                }
                top = max(overlap.values())
                return [k for k, o in overlap.items() if o == top]

            for l in maximizers(i):
                for r in maximizers(j):
                    out.add((l, r))
                    out.add((r, l))
    return out


def rehang_neighbors_equal(g, cliques, chain, x):
    """Whether the non-chain clique x meets every inner clique of the chain
    in the same vertex set."""
    if x in chain.inner:
        raise ValueError(f"clique {x} is an inner clique of the chain")
    vx = set(cliques[x])
    meets = [frozenset(vx & set(cliques[y])) for y in chain.inner]
    return all(m == meets[0] for m in meets)
