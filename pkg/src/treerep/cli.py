"""Command line interface.

Exit codes: 0 for yes/pass, 1 for no/fail, 2 for input or budget errors.
"""

from __future__ import annotations

import argparse
import json
import sys

from .chordal import is_chordal, maximal_cliques
from .errors import (
    BudgetExceeded,
    DomainMismatch,
    InputFormatError,
    TreeRepError,
)
from .graphs import format_graph_text, parse_graph_text
from .hardness import (
    certificate_dim3,
    certificate_from_json,
    certificate_from_representation,
    certificate_to_json,
    check_certificate,
    gadget_graph,
    parse_poset_text,
    representation_from_certificate,
)
from .hosts import format_host_text, is_re_subdivision, parse_host_text
from .oracle import (
    connected_chordal_corpus,
    gen_chordal,
    gen_planted,
    oracle_recognize,
    small_target_trees,
)
from .representations import (
    representation_from_json,
    representation_to_dot,
    representation_to_json,
    verify_compact,
    verify_proper,
)
from .solver import proper_leafage, recognize
from .structure import chains


def _read(path):
    if path == "-":
        return sys.stdin.read()
    with open(path, "r", encoding="utf-8") as fh:
        return fh.read()


def _write(path, text):
    if path == "-":
        sys.stdout.write(text)
    else:
        with open(path, "w", encoding="utf-8") as fh:
            fh.write(text)


def _emit_representation(rep, args):
    if getattr(args, "out", None):
        _write(args.out, representation_to_json(rep))
    if getattr(args, "dot", None):
        _write(args.dot, representation_to_dot(rep))
    if args.json:
        print(representation_to_json(rep))


def _cmd_recognize(args):
    g = parse_graph_text(_read(args.graph))
    t = parse_host_text(_read(args.tree), tree=True)
    rep = recognize(g, t)
    if rep is None:
        print("no")
        return 1
    if not args.json:
        print(
            f"yes: proper representation on {rep.host.n} host nodes "
            f"({len(rep.host.leaves())} leaves)"
        )
    _emit_representation(rep, args)
    return 0


def _cmd_oracle(args):
    g = parse_graph_text(_read(args.graph))
    t = parse_host_text(_read(args.tree), tree=True)
    rep = oracle_recognize(g, t, budget=args.budget)
    if rep is None:
        print("no")
        return 1
    if not args.json:
        print(
            f"yes: {rep.mode} representation on {rep.host.n} host nodes"
        )
    _emit_representation(rep, args)
    return 0


def _cmd_verify(args):
    g = parse_graph_text(_read(args.graph))
    rep = representation_from_json(_read(args.representation), tree=False)
    if args.compact or rep.mode == "compact":
        ok, why = verify_compact(g, rep)
        kind = "compact"
    else:
        ok, why = verify_proper(g, rep)
        kind = "proper"
    if ok and args.tree:
        t = parse_host_text(_read(args.tree), tree=True)
        if not is_re_subdivision(rep.host, t):
            ok, why = False, "host is not a re-subdivision of the given tree"
    print(f"{kind}: {'ok' if ok else why}")
    return 0 if ok else 1


def _cmd_chains(args):
    g = parse_graph_text(_read(args.graph))
    res = is_chordal(g)
    if not res.chordal:
        print(f"not chordal: induced cycle {res.witness_cycle}")
        return 1
    cliques = maximal_cliques(g, res.peo)
    chain_list, sbar, _inner = chains(g, cliques)
    if args.json:
        print(
            json.dumps(
                {
                    "cliques": [sorted(c) for c in cliques],
                    "chains": [
                        {
                            "inner": list(ch.inner),
                            "left": list(ch.left),
                            "right": list(ch.right),
                        }
                        for ch in chain_list
                    ],
                    "not_surrounded": sorted(sbar),
                },
                indent=2,
                sort_keys=True,
            )
        )
        return 0
    for i, c in enumerate(cliques):
        print(f"clique {i}: {sorted(c)}")
    for ch in chain_list:
        print(f"chain {list(ch.inner)} terminals {list(ch.left)} | {list(ch.right)}")
    print(f"not surrounded: {sorted(sbar)}")
    return 0


def _cmd_leafage(args):
    g = parse_graph_text(_read(args.graph))
    ell, tree = proper_leafage(g, max_leaves=args.max_leaves)
    if args.json:
        print(
            json.dumps(
                {
                    "leafage": ell,
                    "tree": {
                        "nodes": tree.n,
                        "edges": [[u, v] for u, v in tree.edge_list],
                    },
                },
                indent=2,
                sort_keys=True,
            )
        )
    else:
        print(f"leafage {ell}")
        sys.stdout.write(format_host_text(tree))
    return 0


def _cmd_gadget_build(args):
    p = parse_poset_text(_read(args.poset))
    cert = certificate_dim3(p)
    if cert is None:
        print("no: order dimension exceeds three")
        return 1
    g, rep = representation_from_certificate(p, cert)
    if args.graph_out:
        _write(args.graph_out, format_graph_text(g))
    if args.out:
        _write(args.out, representation_to_json(rep))
    if args.json:
        print(certificate_to_json(cert))
    else:
        print(
            f"yes: certificate found; gadget has {g.n} vertices, "
            f"host has {rep.host.n} nodes"
        )
    return 0


def _cmd_gadget_certify(args):
    p = parse_poset_text(_read(args.poset))
    cert = certificate_from_json(_read(args.certificate))
    ok, why = check_certificate(p, cert)
    print("ok" if ok else why)
    return 0 if ok else 1


def _cmd_gadget_extract(args):
    p = parse_poset_text(_read(args.poset))
    g = gadget_graph(p)
    rep = representation_from_json(_read(args.representation), tree=False)
    q, cert = certificate_from_representation(g, rep)
    if q != p:
        print("representation encodes a different poset")
        return 1
    print(certificate_to_json(cert))
    return 0


def _cmd_gen_chordal(args):
    g = gen_chordal(args.n, density=args.density, seed=args.seed)
    _write(args.out, format_graph_text(g))
    return 0


def _cmd_gen_planted(args):
    t = parse_host_text(_read(args.tree), tree=True)
    g, rep = gen_planted(t, args.n, seed=args.seed)
    _write(args.out, format_graph_text(g))
    if args.rep_out:
        _write(args.rep_out, representation_to_json(rep))
    return 0


def _cmd_corpus(args):
    by_n = connected_chordal_corpus(args.max_n)
    trees = small_target_trees(args.max_tree)
    total = 0
    for n in sorted(by_n):
        print(f"graphs on {n} vertices: {len(by_n[n])}")
        total += len(by_n[n])
    print(f"total graphs: {total}")
    print(f"target trees up to {args.max_tree} nodes: {len(trees)}")
    print(f"pairs: {total * len(trees)}")
    return 0


def build_parser():
    ap = argparse.ArgumentParser(
        prog="treerep",
        description=(
            "Recognize graphs representable by connected subtrees of a "
            "re-subdivided target tree, with verified representations."
        ),
    )
    sub = ap.add_subparsers(dest="command", required=True)

    def add_rep_outputs(p):
        p.add_argument("--out", help="write the representation JSON here")
        p.add_argument("--dot", help="write a GraphViz rendering here")
        p.add_argument("--json", action="store_true", help="print JSON to stdout")

    p = sub.add_parser("recognize", help="decide representability on a tree")
    p.add_argument("graph", help="graph file ('n m' header + edge lines)")
    p.add_argument("tree", help="target tree file (same format)")
    add_rep_outputs(p)
    p.set_defaults(func=_cmd_recognize)

    p = sub.add_parser("oracle", help="exhaustive reference recognizer")
    p.add_argument("graph")
    p.add_argument("tree")
    p.add_argument("--budget", type=int, default=12, help="host size cap")
    add_rep_outputs(p)
    p.set_defaults(func=_cmd_oracle)

    p = sub.add_parser("verify", help="check a representation against a graph")
    p.add_argument("graph")
    p.add_argument("representation", help="representation JSON file")
    p.add_argument("--tree", help="also require this host shape")
    p.add_argument("--compact", action="store_true", help="check the compact laws")
    p.set_defaults(func=_cmd_verify)

    p = sub.add_parser("chains", help="print the clique chain decomposition")
    p.add_argument("graph")
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=_cmd_chains)

    p = sub.add_parser("leafage", help="smallest leaf count over host trees")
    p.add_argument("graph")
    p.add_argument("--max-leaves", type=int, default=None)
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=_cmd_leafage)

    p = sub.add_parser("gadget", help="order-dimension gadget tools")
    gsub = p.add_subparsers(dest="gadget_command", required=True)

    q = gsub.add_parser("build", help="certificate + representation for a poset")
    q.add_argument("poset", help="poset file (min:/max:/rel: lines)")
    q.add_argument("--out", help="write the representation JSON here")
    q.add_argument("--graph-out", help="write the gadget graph here")
    q.add_argument("--json", action="store_true", help="print the certificate JSON")
    q.set_defaults(func=_cmd_gadget_build)

    q = gsub.add_parser("certify", help="check an interval certificate")
    q.add_argument("poset")
    q.add_argument("certificate", help="certificate JSON file")
    q.set_defaults(func=_cmd_gadget_certify)

    q = gsub.add_parser("extract", help="carve a certificate out of a representation")
    q.add_argument("poset")
    q.add_argument("representation")
    q.set_defaults(func=_cmd_gadget_extract)

    p = sub.add_parser("gen", help="instance generators")
    gsub = p.add_subparsers(dest="gen_command", required=True)

    q = gsub.add_parser("chordal", help="random connected chordal graph")
    q.add_argument("n", type=int)
    q.add_argument("--density", type=float, default=0.4)
    q.add_argument("--seed", type=int, default=0)
    q.add_argument("--out", default="-")
    q.set_defaults(func=_cmd_gen_chordal)

    q = gsub.add_parser("planted", help="graph with a planted proper representation")
    q.add_argument("tree", help="target tree file")
    q.add_argument("n", type=int, help="number of vertices")
    q.add_argument("--seed", type=int, default=0)
    q.add_argument("--out", default="-")
    q.add_argument("--rep-out", help="write the planted representation here")
    q.set_defaults(func=_cmd_gen_planted)

    p = sub.add_parser("corpus", help="sizes of the built-in test corpora")
    p.add_argument("--max-n", type=int, default=7)
    p.add_argument("--max-tree", type=int, default=5)
    p.set_defaults(func=_cmd_corpus)

    return ap


def main(argv=None):
    ap = build_parser()
    args = ap.parse_args(argv)
    try:
        return args.func(args)
    except (InputFormatError, DomainMismatch, BudgetExceeded, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except TreeRepError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
