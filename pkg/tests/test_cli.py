import json

from treerep.cli import main
from treerep.graphs import format_graph_text, parse_graph_text
from treerep.hardness import format_poset_text, HeightOnePoset
from treerep.hosts import format_host_text
from treerep.representations import representation_from_json

from helpers import (
    cycle_graph,
    net_graph,
    path_graph,
    path_tree,
    star_graph,
    star_tree,
)


def _file(tmp_path, name, text):
    p = tmp_path / name
    p.write_text(text)
    return str(p)


def test_recognize_yes_and_artifacts(tmp_path, capsys):
    gp = _file(tmp_path, "g.txt", format_graph_text(path_graph(4)))
    tp = _file(tmp_path, "t.txt", format_host_text(path_tree(2)))
    out = str(tmp_path / "rep.json")
    dot = str(tmp_path / "rep.dot")
    code = main(["recognize", gp, tp, "--out", out, "--dot", dot])
    assert code == 0
    assert capsys.readouterr().out.startswith("yes")
    rep = representation_from_json((tmp_path / "rep.json").read_text())
    assert rep.mode == "proper"
    assert (tmp_path / "rep.dot").read_text().startswith("graph")


def test_recognize_no(tmp_path, capsys):
    gp = _file(tmp_path, "g.txt", format_graph_text(star_graph(3)))
    tp = _file(tmp_path, "t.txt", format_host_text(path_tree(2)))
    assert main(["recognize", gp, tp]) == 1
    assert capsys.readouterr().out.strip() == "no"


def test_recognize_missing_file_is_an_input_error(tmp_path, capsys):
    tp = _file(tmp_path, "t.txt", format_host_text(path_tree(2)))
    assert main(["recognize", str(tmp_path / "absent.txt"), tp]) == 2
    assert "error" in capsys.readouterr().err


def test_recognize_malformed_graph(tmp_path, capsys):
    gp = _file(tmp_path, "g.txt", "2 9\n0 1\n")
    tp = _file(tmp_path, "t.txt", format_host_text(path_tree(2)))
    assert main(["recognize", gp, tp]) == 2


def test_recognize_rejects_non_tree_target(tmp_path, capsys):
    gp = _file(tmp_path, "g.txt", format_graph_text(path_graph(3)))
    tp = _file(tmp_path, "t.txt", "3 3\n0 1\n1 2\n0 2\n")
    assert main(["recognize", gp, tp]) == 2


def test_oracle_and_verify_round_trip(tmp_path, capsys):
    gp = _file(tmp_path, "g.txt", format_graph_text(net_graph()))
    tp = _file(tmp_path, "t.txt", format_host_text(star_tree(3)))
    out = str(tmp_path / "rep.json")
    assert main(["oracle", gp, tp, "--out", out]) == 0
    capsys.readouterr()
    assert main(["verify", gp, out, "--tree", tp]) == 0
    assert "ok" in capsys.readouterr().out
    # verifying against the wrong graph fails
    gp2 = _file(tmp_path, "g2.txt", format_graph_text(path_graph(6)))
    assert main(["verify", gp2, out]) != 0


def test_verify_tree_shape_mismatch(tmp_path, capsys):
    gp = _file(tmp_path, "g.txt", format_graph_text(star_graph(3)))
    tp = _file(tmp_path, "t.txt", format_host_text(star_tree(3)))
    k2 = _file(tmp_path, "k2.txt", format_host_text(path_tree(2)))
    out = str(tmp_path / "rep.json")
    assert main(["recognize", gp, tp, "--out", out]) == 0
    capsys.readouterr()
    assert main(["verify", gp, out, "--tree", k2]) == 1
    assert "re-subdivision" in capsys.readouterr().out


def test_chains_command(tmp_path, capsys):
    gp = _file(tmp_path, "g.txt", format_graph_text(path_graph(5)))
    assert main(["chains", gp, "--json"]) == 0
    data = json.loads(capsys.readouterr().out)
    assert len(data["cliques"]) == 4
    assert len(data["chains"]) == 1
    assert len(data["not_surrounded"]) == 2
    bad = _file(tmp_path, "c4.txt", format_graph_text(cycle_graph(4)))
    assert main(["chains", bad]) == 1
    assert "not chordal" in capsys.readouterr().out


def test_leafage_command(tmp_path, capsys):
    gp = _file(tmp_path, "g.txt", format_graph_text(star_graph(3)))
    assert main(["leafage", gp, "--json"]) == 0
    data = json.loads(capsys.readouterr().out)
    assert data["leafage"] == 3


def test_gadget_pipeline(tmp_path, capsys):
    p = HeightOnePoset(["a0", "a1"], ["b0", "b1"], [("a0", "b1"), ("a1", "b0")])
    pp = _file(tmp_path, "p.txt", format_poset_text(p))
    rep_out = str(tmp_path / "rep.json")
    cert_out = tmp_path / "cert.json"
    assert main(["gadget", "build", pp, "--out", rep_out, "--json"]) == 0
    cert_out.write_text(capsys.readouterr().out)
    assert main(["gadget", "certify", pp, str(cert_out)]) == 0
    capsys.readouterr()
    assert main(["gadget", "extract", pp, rep_out]) == 0
    extracted = json.loads(capsys.readouterr().out)
    assert len(extracted["systems"]) == 3


def test_gen_commands(tmp_path, capsys):
    out = str(tmp_path / "g.txt")
    assert main(["gen", "chordal", "10", "--seed", "3", "--out", out]) == 0
    g = parse_graph_text((tmp_path / "g.txt").read_text())
    assert g.n == 10
    tp = _file(tmp_path, "t.txt", format_host_text(star_tree(3)))
    rep_out = str(tmp_path / "rep.json")
    gout = str(tmp_path / "pg.txt")
    assert (
        main(
            [
                "gen",
                "planted",
                tp,
                "9",
                "--seed",
                "1",
                "--out",
                gout,
                "--rep-out",
                rep_out,
            ]
        )
        == 0
    )
    pg = parse_graph_text((tmp_path / "pg.txt").read_text())
    assert pg.n == 9
    rep = representation_from_json((tmp_path / "rep.json").read_text())
    assert len(rep.models) == 9


def test_corpus_command(capsys):
    assert main(["corpus", "--max-n", "4", "--max-tree", "3"]) == 0
    out = capsys.readouterr().out
    assert "total graphs: 9" in out
    assert "pairs: 27" in out
