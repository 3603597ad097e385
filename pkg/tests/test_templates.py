from treerep.chordal import maximal_cliques
from treerep.oracle import oracle_recognize
from treerep.structure import chains
from treerep.templates import enumerate_templates, realizes

from helpers import net_graph, path_graph, path_tree, star_tree


def _templates_for(g, t):
    cliques = maximal_cliques(g)
    cd = chains(g, cliques)
    return list(enumerate_templates(g, t, cliques, cd))


def test_path_realizes_an_enumerated_template():
    g = path_graph(5)
    t = path_tree(2)
    orep = oracle_recognize(g, t)
    assert orep is not None and orep.mode == "compact"
    tpls = _templates_for(g, t)
    assert tpls
    assert any(realizes(orep, tpl) for tpl in tpls)


def test_branching_graph_realizes_a_template():
    g = net_graph()
    t = star_tree(3)
    orep = oracle_recognize(g, t)
    assert orep is not None
    tpls = _templates_for(g, t)
    assert tpls
    assert any(realizes(orep, tpl) for tpl in tpls)


def test_templates_carry_every_unsurrounded_clique():
    g = path_graph(5)
    cliques = maximal_cliques(g)
    _, sbar, _ = chains(g, cliques)
    for tpl in _templates_for(g, path_tree(2)):
        assert sorted(tpl.labels.values()) == sorted(sbar)
