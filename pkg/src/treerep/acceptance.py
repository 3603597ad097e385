"""Acceptance drivers: ten independently checkable criteria (A1..A10).

Each criterion function returns (ok, detail). The exhaustive corpus run
(oracle vs. recognizer on every small connected chordal graph against every
small target tree) is computed once, in parallel, and shared by the
criteria that consume oracle-found representations. Worker count comes from
the TREEREP_JOBS environment variable, capped at eight by default.
"""

from __future__ import annotations

import itertools
import math
import os
import sys
import time
from multiprocessing import get_context

from .chordal import maximal_cliques
from .errors import GenerationFailed, TreeRepError, Unresolved
from .graphs import Graph
from .hardness import (
    certificate_dim3,
    certificate_from_representation,
    check_certificate,
    gadget_graph,
    oracle_gadget_representable,
    poset_corpus,
    representation_from_certificate,
    shrink_representation,
)
from .hosts import HostTree, reduced_trees_with_leaf_count
from .oracle import (
    connected_chordal_corpus,
    gen_planted,
    oracle_potential,
    oracle_recognize,
    oracle_surrounding,
    small_target_trees,
)
from .representations import (
    Representation,
    compact_from_proper,
    proper_from_compact,
    verify_compact,
    verify_proper,
)
from .solver import (
    build_node,
    proper_leafage,
    recognize,
    recognize_connected,
    rehang,
)
from .structure import (
    chains,
    components_K,
    rehang_neighbors_equal,
    surrounding_pairs,
)
from .templates import enumerate_templates, realizes


def worker_count():
    env = os.environ.get("TREEREP_JOBS")
    if env:
        return max(1, int(env))
    return max(1, min(8, os.cpu_count() or 1))


def _pool_map(task_fn, tasks, chunksize=8):
    jobs = worker_count()
    if jobs <= 1 or len(tasks) <= 1:
        return [task_fn(t) for t in tasks]
    with get_context("fork").Pool(jobs) as pool:
        return list(pool.imap_unordered(task_fn, tasks, chunksize=chunksize))


# ---------------------------------------------------------------------------
# Shared corpus run

_PAIR_RESULTS = {}


def _pair_task(task):
    n, gedges, tn, tedges, with_templates = task
    g = Graph(n, list(gedges))
    t = HostTree(tn, list(tedges))
    rec = {
        "n": n,
        "gedges": gedges,
        "tn": tn,
        "tedges": tedges,
        "oracle_yes": None,
        "solver_yes": None,
        "rep": None,
        "template_hit": None,
        "error": None,
    }
    try:
        orep = oracle_recognize(g, t)
        rec["oracle_yes"] = orep is not None
        if orep is not None:
            rec["rep"] = (
                orep.host.n,
                tuple(orep.host.edge_list),
                tuple(tuple(sorted(m)) for m in orep.models),
                orep.mode,
            )
    except Exception as exc:
        rec["error"] = f"oracle failed: {exc!r}"
        return rec
    try:
        srep = recognize(g, t)
        rec["solver_yes"] = srep is not None
    except Exception as exc:
        rec["error"] = f"recognizer failed: {exc!r}"
        return rec
    if (
        with_templates
        and orep is not None
        and orep.mode == "compact"
        and n >= 2
        and tn >= 2
    ):
        try:
            cliques = maximal_cliques(g)
            cd = chains(g, cliques)
            rec["template_hit"] = any(
                realizes(orep, tpl)
                for tpl in enumerate_templates(g, t, cliques, cd)
            )
        except Exception as exc:
            rec["error"] = f"template check failed: {exc!r}"
    return rec


def corpus_results(max_n=7, max_tree=5, template_n=6):
    key = (max_n, max_tree, template_n)
    if key not in _PAIR_RESULTS:
        graphs = connected_chordal_corpus(max_n)
        trees = small_target_trees(max_tree)
        tasks = []
        for nn in sorted(graphs):
            for g in graphs[nn]:
                for t in trees:
                    tasks.append(
                        (
                            g.n,
                            tuple(g.edges()),
                            t.n,
                            tuple(t.edge_list),
                            g.n <= template_n,
                        )
                    )
        start = time.perf_counter()
        results = _pool_map(_pair_task, tasks)
        elapsed = time.perf_counter() - start
        _PAIR_RESULTS[key] = (results, elapsed)
    return _PAIR_RESULTS[key]


def _rebuild(rec):
    g = Graph(rec["n"], list(rec["gedges"]))
    hn, hedges, models, mode = rec["rep"]
    rep = Representation(HostTree(hn, list(hedges)), [set(m) for m in models], mode)
    return g, rep


# ---------------------------------------------------------------------------
# A1: oracle equivalence on the exhaustive corpus

def criterion_1():
    results, elapsed = corpus_results()
    total = len(results)
    yes = sum(1 for r in results if r["oracle_yes"])
    bad = [
        r
        for r in results
        if r["error"] is not None or r["oracle_yes"] != r["solver_yes"]
    ]
    detail = (
        f"{total} pairs, {yes} yes-instances, {len(bad)} disagreements, "
        f"{elapsed:.1f}s with {worker_count()} workers"
    )
    if total != 2832:
        return False, f"expected 2832 pairs, enumerated {total}"
    if bad:
        b = bad[0]
        detail += (
            f"; first: n={b['n']} edges={b['gedges']} tree={b['tedges']} "
            f"oracle={b['oracle_yes']} solver={b['solver_yes']} err={b['error']}"
        )
    return not bad and elapsed <= 3600.0, detail


# ---------------------------------------------------------------------------
# A2: conversion round trips

def _planted_stream(count, tree_filter, start_n=8):
    trees = [t for t in small_target_trees(5) if tree_filter(t)]
    made = 0
    seed = 0
    while made < count and seed < 100 * count:
        t = trees[seed % len(trees)]
        n = start_n + seed % 5
        try:
            g, rep = gen_planted(t, n, seed=seed)
        except GenerationFailed:
            seed += 1
            continue
        seed += 1
        made += 1
        yield t, g, rep


def criterion_2():
    results, _ = corpus_results()
    start = time.perf_counter()
    fails = []
    compacts = 0
    for rec in results:
        if rec["rep"] is None or rec["rep"][3] != "compact":
            continue
        g, rep = _rebuild(rec)
        compacts += 1
        prep = proper_from_compact(g, rep)
        ok, why = verify_proper(g, prep)
        if not ok:
            fails.append(f"stretch failed on {rec['gedges']}: {why}")
    planted = 0
    for _t, g, rep in _planted_stream(500, lambda t: t.n >= 2):
        comp = compact_from_proper(g, rep)
        ok, why = verify_compact(g, comp)
        if not ok:
            fails.append(f"shrink failed on a planted instance: {why}")
        planted += 1
    elapsed = time.perf_counter() - start
    detail = (
        f"{compacts} oracle representations stretched, {planted} planted "
        f"instances shrunk, {len(fails)} failures, {elapsed:.1f}s"
    )
    if fails:
        detail += f"; first: {fails[0]}"
    return not fails and planted == 500 and elapsed <= 300.0, detail


# ---------------------------------------------------------------------------
# A3: structural bounds on compact representations

def criterion_3():
    results, _ = corpus_results()
    viol = []
    checked = 0
    for rec in results:
        if rec["rep"] is None or rec["rep"][3] != "compact":
            continue
        g, rep = _rebuild(rec)
        tn = rec["tn"]
        cliques = maximal_cliques(g)
        index = {tuple(c): i for i, c in enumerate(cliques)}
        vs = rep.vertex_sets()
        deg = rep.host.degrees()
        checked += 1
        for x in range(rep.host.n):
            if deg[x] == 1:
                continue
            k = index[tuple(sorted(vs[x]))]
            cnt = len(components_K(g, cliques, k))
            if cnt > tn:
                viol.append(
                    f"{cnt} components at a clique vs {tn} tree nodes "
                    f"on {rec['gedges']}"
                )
        _, sbar, _ = chains(g, cliques)
        bound = (tn - 1) ** 2 + 1
        if len(sbar) > bound:
            viol.append(
                f"{len(sbar)} not-surrounded cliques vs bound {bound} "
                f"on {rec['gedges']}"
            )
    detail = f"{checked} compact representations checked, {len(viol)} violations"
    if viol:
        detail += f"; first: {viol[0]}"
    return not viol, detail


# ---------------------------------------------------------------------------
# A4: flanking-pair characterization

def criterion_4():
    graphs = connected_chordal_corpus(7)
    mism = []
    checked = 0
    for nn in sorted(graphs):
        for g in graphs[nn]:
            cliques = maximal_cliques(g)
            for y in range(len(cliques)):
                checked += 1
                brute = oracle_surrounding(g, cliques, y)
                fast = surrounding_pairs(g, cliques, y)
                if brute != fast:
                    mism.append(
                        f"clique {y} of {tuple(g.edges())}: "
                        f"brute {sorted(brute)} vs fast {sorted(fast)}"
                    )
    detail = f"{checked} cliques checked, {len(mism)} mismatches"
    if mism:
        detail += f"; first: {mism[0]}"
    return not mism, detail


# ---------------------------------------------------------------------------
# A5: chain laws

def _phi_member(rep, yi, yj):
    """Definition-level potential membership for a rehang from yi to yj:
    every vertex whose model lies fully on the yi side of yj must escape
    every other vertex at an edge inside that side."""
    host = rep.host
    adjacency = {x: [] for x in range(host.n)}
    for a, b in host.edge_list:
        adjacency[a].append(b)
        adjacency[b].append(a)
    side = {yi}
    stack = [yi]
    while stack:
        x = stack.pop()
        for w in adjacency[x]:
            if w != yj and w not in side:
                side.add(w)
                stack.append(w)
    inside = [u for u, m in enumerate(rep.models) if m and m <= side]
    for u in inside:
        mu = rep.models[u]
        for v in range(len(rep.models)):
            if v == u:
                continue
            mv = rep.models[v]
            hit = False
            for a, b in host.edge_list:
                if a in side and b in side:
                    if (a in mu and b not in mv) or (b in mu and a not in mv):
                        hit = True
                        break
            if not hit:
                return False
    return True


def criterion_5():
    graphs = connected_chordal_corpus(7)
    viol = []
    nchains = 0
    nrehangs = 0
    for nn in sorted(graphs):
        if nn < 2:
            continue
        for g in graphs[nn]:
            cliques = maximal_cliques(g)
            chain_list, sbar, inner_index = chains(g, cliques)
            allc = set(range(len(cliques)))
            inner_all = set(inner_index)
            sset = set(sbar)
            if inner_all & sset or inner_all | sset != allc:
                viol.append(f"partition broken on {tuple(g.edges())}")
            for ch in chain_list:
                nchains += 1
                for side in (ch.left, ch.right):
                    if len(side) == 1 and side[0] not in sset:
                        viol.append(
                            f"singleton terminal {side[0]} of {tuple(g.edges())} "
                            "is a surrounded clique"
                        )
                excluded = set(ch.inner) | set(ch.left) | set(ch.right)
                for x in sorted(allc - excluded):
                    vx = set(cliques[x])
                    if not any(vx & set(cliques[y]) for y in ch.inner):
                        continue
                    if not rehang_neighbors_equal(g, cliques, ch, x):
                        viol.append(
                            f"neighbor {x} meets chain {ch.inner} of "
                            f"{tuple(g.edges())} unevenly"
                        )
            long_chains = [ch for ch in chain_list if len(ch.inner) >= 2]
            if not long_chains:
                continue
            _ell, t = proper_leafage(g)
            out = recognize_connected(g, t)
            if out is None:
                viol.append(f"no compact host found for {tuple(g.edges())}")
                continue
            rep, _ = out
            vs = rep.vertex_sets()
            deg = rep.host.degrees()
            node_of = {}
            for x in range(rep.host.n):
                if deg[x] != 1:
                    node_of[tuple(sorted(vs[x]))] = x
            for ch in long_chains:
                nodes = [node_of[tuple(cliques[y])] for y in ch.inner]
                for yi, yj in itertools.permutations(nodes, 2):
                    try:
                        r2 = rehang(rep, yi, yj)
                    except TreeRepError as exc:
                        viol.append(
                            f"rehang {yi}->{yj} raised on "
                            f"{tuple(g.edges())}: {exc}"
                        )
                        continue
                    if not _phi_member(r2, yi, yj):
                        continue
                    nrehangs += 1
                    ok, why = verify_compact(g, r2)
                    if not ok:
                        viol.append(
                            f"rehang {yi}->{yj} broke compactness on "
                            f"{tuple(g.edges())}: {why}"
                        )
    detail = (
        f"{nchains} chains checked, {nrehangs} rehangs verified, "
        f"{len(viol)} violations"
    )
    if viol:
        detail += f"; first: {viol[0]}"
    return not viol, detail


# ---------------------------------------------------------------------------
# A6: position-feasibility laws

def _rescan(record, k):
    """Feasibility set of candidates k..s after committing everything
    strictly below k, rebuilt from the recorded fragment."""
    frag = record.fragment
    counter = itertools.count(max(frag.csets) + 1)
    F = frag
    for q in range(record.childpos + 1, k):
        F = build_node(counter, record.inner_sets[q - 1], [F], record.n)
        if F is None:
            return None
    out = set()
    for q in range(k, len(record.inner_sets) + 1):
        trial = build_node(counter, record.inner_sets[q - 1], [F], record.n)
        if trial is not None:
            out.add(q)
    return out


def criterion_6():
    start = time.perf_counter()
    viol = []
    nrecords = 0
    instances = 0
    for t, g, _rep in _planted_stream(
        200, lambda t: max(t.degrees() or [0]) >= 3, start_n=8
    ):
        records = []
        out = recognize_connected(g, t, collect=records)
        if out is None:
            viol.append(f"planted instance on {t.n}-node tree rejected")
            continue
        instances += 1
        for rec in records:
            nrecords += 1
            flags = rec.passed
            m = 0
            while m < len(flags) and flags[m]:
                m += 1
            if any(flags[m:]):
                viol.append("feasible positions are not a prefix")
                continue
            if oracle_potential(rec) != list(flags):
                viol.append("table feasibility disagrees with the definition")
                continue
            if m == 0:
                continue
            jstar = rec.candidates[m - 1]
            phi = set(rec.candidates[:m])
            if _rescan(rec, jstar) != {jstar}:
                viol.append("committing the deepest position is not final")
                continue
            for k in rec.candidates[: m - 1]:
                rk = _rescan(rec, k)
                if rk is None or not rk <= phi:
                    viol.append("feasibility after a commit left the original set")
                    break
    elapsed = time.perf_counter() - start
    detail = (
        f"{instances} planted instances, {nrecords} junction scans, "
        f"{len(viol)} violations, {elapsed:.1f}s"
    )
    if viol:
        detail += f"; first: {viol[0]}"
    ok = not viol and instances == 200 and nrecords > 0 and elapsed <= 600.0
    return ok, detail


# ---------------------------------------------------------------------------
# A7: template completeness

def criterion_7():
    results, _ = corpus_results()
    checked = [r for r in results if r["template_hit"] is not None]
    missed = [r for r in checked if not r["template_hit"]]
    detail = (
        f"{len(checked)} minimal representations checked, "
        f"{len(missed)} without a realizing template"
    )
    if missed:
        b = missed[0]
        detail += f"; first: n={b['n']} edges={b['gedges']} tree={b['tedges']}"
    return bool(checked) and not missed, detail


# ---------------------------------------------------------------------------
# A8: gadget equivalence and round trip

def _gadget_task(task):
    from .hardness import HeightOnePoset

    mins, maxs, less = task
    p = HeightOnePoset(list(mins), list(maxs), [tuple(e) for e in less])
    tag = f"mins={mins} maxs={maxs} less={less}"
    fails = []
    cert = certificate_dim3(p)
    if cert is None:
        if oracle_gadget_representable(gadget_graph(p), 12) is not None:
            fails.append(f"oracle found a host but no certificate exists: {tag}")
        return 0, fails
    g, rep = representation_from_certificate(p, cert)
    shrunk = shrink_representation(g, rep)
    if oracle_gadget_representable(g, shrunk.host.n + 1) is None:
        fails.append(f"oracle missed a certified instance: {tag}")
    q, cert2 = certificate_from_representation(g, rep)
    if q != p:
        fails.append(f"extraction changed the poset: {tag}")
    else:
        ok, why = check_certificate(p, cert2)
        if not ok:
            fails.append(f"extracted certificate fails: {why} ({tag})")
    return 1, fails


def criterion_8():
    start = time.perf_counter()
    posets = poset_corpus(5)
    tasks = [
        (tuple(p.mins), tuple(p.maxs), tuple(sorted(p.less))) for p in posets
    ]
    results = _pool_map(_gadget_task, tasks, chunksize=1)
    elapsed = time.perf_counter() - start
    yes = sum(r[0] for r in results)
    fails = [msg for r in results for msg in r[1]]
    detail = (
        f"{len(posets)} posets, {yes} certified, {len(fails)} failures, "
        f"{elapsed:.1f}s"
    )
    if fails:
        detail += f"; first: {fails[0]}"
    return not fails and elapsed <= 1800.0, detail


# ---------------------------------------------------------------------------
# A9: smallest-leaf-count agreement

def _leafage_task(task):
    n, gedges = task
    g = Graph(n, list(gedges))
    try:
        mine = proper_leafage(g)[0]
    except Unresolved:
        mine = None
    brute = _brute_leafage(g)
    return (n, gedges, mine, brute)


def _brute_leafage(g):
    if g.n <= 1:
        return 0
    cliques = maximal_cliques(g)
    for ell in range(2, len(cliques) + 2):
        for t in reduced_trees_with_leaf_count(ell):
            if oracle_recognize(g, t, budget=18) is not None:
                return ell
    return None


def criterion_9():
    graphs = connected_chordal_corpus(7)
    tasks = []
    for nn in sorted(graphs):
        for g in graphs[nn]:
            tasks.append((g.n, tuple(g.edges())))
    start = time.perf_counter()
    results = _pool_map(_leafage_task, tasks, chunksize=4)
    elapsed = time.perf_counter() - start
    bad = [r for r in results if r[2] != r[3]]
    detail = (
        f"{len(results)} graphs compared, {len(bad)} disagreements, "
        f"{elapsed:.1f}s"
    )
    if bad:
        b = bad[0]
        detail += f"; first: edges={b[1]} fast={b[2]} brute={b[3]}"
    return not bad, detail


# ---------------------------------------------------------------------------
# A10: polynomial scaling on paths

def criterion_10():
    sizes = [50, 100, 200, 400]
    k2 = HostTree(2, [(0, 1)])
    times = []
    for n in sizes:
        g = Graph(n, [(i, i + 1) for i in range(n - 1)])
        start = time.perf_counter()
        rep = recognize(g, k2)
        dt = max(time.perf_counter() - start, 1e-4)
        if rep is None:
            return False, f"path on {n} vertices was rejected"
        times.append(dt)
    xs = [math.log(n) for n in sizes]
    ys = [math.log(dt) for dt in times]
    mx = sum(xs) / len(xs)
    my = sum(ys) / len(ys)
    slope = sum((x - mx) * (y - my) for x, y in zip(xs, ys)) / sum(
        (x - mx) ** 2 for x in xs
    )
    stamps = ", ".join(f"n={n}: {dt:.3f}s" for n, dt in zip(sizes, times))
    return slope <= 3.5, f"log-log slope {slope:.2f} ({stamps})"


# ---------------------------------------------------------------------------

CRITERIA = [
    ("A1", "recognizer agrees with the exhaustive oracle", criterion_1),
    ("A2", "compact/proper conversions round-trip", criterion_2),
    ("A3", "component and not-surrounded bounds hold", criterion_3),
    ("A4", "flanking pairs match the brute-force set", criterion_4),
    ("A5", "chain partition, terminals, and rehangs hold", criterion_5),
    ("A6", "position feasibility laws hold on planted instances", criterion_6),
    ("A7", "minimal representations realize an enumerated template", criterion_7),
    ("A8", "gadget recognition matches dimension-three certificates", criterion_8),
    ("A9", "smallest leaf count agrees with brute force", criterion_9),
    ("A10", "path recognition scales polynomially", criterion_10),
]


def run_all(out=print):
    all_ok = True
    for name, title, fn in CRITERIA:
        ok, detail = fn()
        all_ok &= ok
        out(f"{name} {'PASS' if ok else 'FAIL'} ({title}): {detail}")
    return all_ok


if __name__ == "__main__":
    sys.exit(0 if run_all() else 1)
