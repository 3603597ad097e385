import pytest

from treerep.errors import (
    InputFormatError,
    InvalidCertificate,
    NotAGadgetRepresentation,
)
from treerep.hardness import (
    Certificate,
    HeightOnePoset,
    certificate_dim3,
    certificate_from_json,
    certificate_from_representation,
    certificate_to_json,
    check_certificate,
    format_poset_text,
    gadget_graph,
    graph_D,
    oracle_gadget_representable,
    parse_poset_text,
    poset_corpus,
    representation_from_certificate,
    shrink_representation,
)
from treerep.hosts import is_re_subdivision
from treerep.representations import Representation, verify_proper

from helpers import path_graph, path_tree


def crown():
    return HeightOnePoset(
        ["a0", "a1"], ["b0", "b1"], [("a0", "b1"), ("a1", "b0")]
    )


def chain2():
    return HeightOnePoset(["a"], ["b"], [("a", "b")])


def test_poset_validation():
    with pytest.raises(ValueError):
        HeightOnePoset([], ["b"], [])
    with pytest.raises(ValueError):
        HeightOnePoset(["a", "a"], ["b"], [])
    with pytest.raises(ValueError):
        HeightOnePoset(["a"], ["a"], [])
    with pytest.raises(ValueError):
        HeightOnePoset(["a"], ["b"], [("b", "a")])
    p = crown()
    assert p.is_less("a0", "b1")
    assert not p.is_less("a0", "b0")
    assert set(p.incomparable_pairs()) == {("a0", "b0"), ("a1", "b1")}


def test_poset_text_round_trip():
    p = crown()
    q = parse_poset_text(format_poset_text(p))
    assert q == p
    with pytest.raises(InputFormatError):
        parse_poset_text("min: a\nrel: a b\n")
    with pytest.raises(InputFormatError):
        parse_poset_text("junk line\n")
    with pytest.raises(InputFormatError):
        parse_poset_text("size: 3\n")


def test_gadget_graph_shape():
    p = crown()
    g = gadget_graph(p)
    assert g.n == 8
    assert g.labels[0] == "u_min"
    assert g.labels[-1] == "u_max"
    assert "v_min" in g.labels and "v_max" in g.labels
    # both sides plus their private neighbor form cliques
    mins = [i for i, lab in enumerate(g.labels) if lab.startswith("min:")]
    maxs = [i for i, lab in enumerate(g.labels) if lab.startswith("max:")]
    v_min = g.labels.index("v_min")
    v_max = g.labels.index("v_max")
    for side, extra in ((mins, v_min), (maxs, v_max)):
        group = side + [extra]
        for i in group:
            for j in group:
                if i != j:
                    assert g.has_edge(i, j)
    # cross edges are exactly the incomparable pairs
    inc = set(p.incomparable_pairs())
    for i in mins:
        for j in maxs:
            a = g.labels[i].split(":", 1)[1]
            b = g.labels[j].split(":", 1)[1]
            assert g.has_edge(i, j) == ((a, b) in inc)


def test_base_shape():
    d = graph_D()
    assert d.n == 4
    assert len(d.edge_list) == 5
    assert not d.is_simple()


def test_certificates_for_small_posets():
    for p in (chain2(), crown()):
        cert = certificate_dim3(p)
        assert cert is not None
        ok, why = check_certificate(p, cert)
        assert ok, why


def test_check_certificate_rejects_tampering():
    p = crown()
    cert = certificate_dim3(p)
    broken = [dict(s) for s in cert.systems]
    del broken[0]["a0"]
    assert not check_certificate(p, Certificate(broken))[0]
    flipped = [dict(s) for s in cert.systems]
    # force a0 entirely to the right of everything in every system
    for s in flipped:
        s["a0"] = (99, 100)
    assert not check_certificate(p, Certificate(flipped))[0]
    assert not check_certificate(p, Certificate(cert.systems[:2]))[0]


def test_certificate_json_round_trip():
    p = crown()
    cert = certificate_dim3(p)
    c2 = certificate_from_json(certificate_to_json(cert))
    assert check_certificate(p, c2)[0]
    with pytest.raises(InputFormatError):
        certificate_from_json("[]")
    with pytest.raises(InputFormatError):
        certificate_from_json("not json")


def test_representation_round_trip():
    for p in (chain2(), crown()):
        cert = certificate_dim3(p)
        g, rep = representation_from_certificate(p, cert)
        assert g.n == len(p.mins) + len(p.maxs) + 4
        ok, why = verify_proper(g, rep)
        assert ok, why
        assert is_re_subdivision(rep.host, graph_D())
        q, cert2 = certificate_from_representation(g, rep)
        assert q == p
        ok, why = check_certificate(p, cert2)
        assert ok, why


def test_representation_rejects_bad_certificate():
    p = crown()
    cert = certificate_dim3(chain2())
    with pytest.raises(InvalidCertificate):
        representation_from_certificate(p, cert)


def test_shrink_preserves_validity():
    p = crown()
    cert = certificate_dim3(p)
    g, rep = representation_from_certificate(p, cert)
    shrunk = shrink_representation(g, rep)
    assert shrunk.host.n <= rep.host.n
    assert verify_proper(g, shrunk)[0]
    assert is_re_subdivision(shrunk.host, graph_D())


def test_extract_rejects_unlabeled_graphs():
    g = path_graph(3)
    rep = Representation(path_tree(4), [{0, 1}, {1, 2}, {2, 3}], "proper")
    with pytest.raises(NotAGadgetRepresentation):
        certificate_from_representation(g, rep)


def test_oracle_finds_small_gadget_host():
    p = chain2()
    cert = certificate_dim3(p)
    g, rep = representation_from_certificate(p, cert)
    shrunk = shrink_representation(g, rep)
    found = oracle_gadget_representable(g, shrunk.host.n + 1)
    assert found is not None
    assert verify_proper(g, found)[0]
    assert is_re_subdivision(found.host, graph_D())


def test_poset_corpus_census():
    posets = poset_corpus(3)
    assert len(posets) == 8
    assert all(len(p.mins) + len(p.maxs) <= 3 for p in posets)
    seen = set()
    for p in posets:
        key = (len(p.mins), len(p.maxs), tuple(sorted(p.less)))
        assert key not in seen
        seen.add(key)
