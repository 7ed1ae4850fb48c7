import subprocess
import sys

import pytest

from gracetree.cli import main
from gracetree.labelling import format_labelling, is_strongly_graceful, parse_labelling
from gracetree.lobster import theorem4_label
from gracetree.search import SearchReport
from gracetree.tree import Tree, format_tree, parse_matching, parse_tree, spike


@pytest.fixture
def files(tmp_path):
    def put(name, text):
        p = tmp_path / name
        p.write_text(text)
        return str(p)

    return put


def test_verify_strong_base(files, capsys):
    t = files("p4.txt", format_tree(Tree.path(4)))
    f = files("f.txt", "L\n0 0\n1 3\n2 1\n3 2\n")
    m = files("m.txt", "M\n2\n0 1\n2 3\n")
    assert main(["verify", t, f, "--matching", m, "--strong"]) == 0
    out = capsys.readouterr().out
    assert "verdict: strongly graceful" in out
    assert "matched 0 1: sum 3" in out


def test_verify_strong_without_matching_file(files):
    t = files("p4.txt", format_tree(Tree.path(4)))
    f = files("f.txt", "L\n0 0\n1 3\n2 1\n3 2\n")
    assert main(["verify", t, f, "--strong"]) == 0


def test_verify_duplicate_label(files, capsys):
    t = files("p4.txt", format_tree(Tree.path(4)))
    f = files("f.txt", "L\n0 0\n1 1\n2 2\n3 3\n")
    assert main(["verify", t, f]) == 1
    out = capsys.readouterr().out
    assert "duplicate edge label 1 on 3 edges" in out
    assert "missing edge labels: 2 3" in out


def test_verify_missing_file(files, capsys):
    t = files("p4.txt", format_tree(Tree.path(4)))
    assert main(["verify", t, t + ".nope"]) == 2
    assert "cannot read" in capsys.readouterr().err


def test_verify_malformed_and_mismatched(files):
    t = files("p4.txt", format_tree(Tree.path(4)))
    assert main(["verify", files("bad.txt", "4\n0 1\n"), t]) == 2
    assert main(["verify", t, files("f3.txt", "L\n0 0\n1 1\n2 2\n")]) == 2
    # a matching edge that is not in the tree is bad input
    f = files("f.txt", "L\n0 0\n1 3\n2 1\n3 2\n")
    assert main(["verify", t, f, "--matching", files("m.txt", "M\n1\n0 2\n")]) == 2


def test_verify_strong_no_pm(files, capsys):
    t = files("p3.txt", format_tree(Tree.path(3)))
    f = files("f.txt", "L\n0 0\n1 2\n2 1\n")
    assert main(["verify", t, f, "--strong"]) == 1
    assert "no perfect matching" in capsys.readouterr().out


def test_label_p4(files, tmp_path):
    t = files("p4.txt", format_tree(Tree.path(4)))
    out = tmp_path / "out"
    assert main(["--quiet", "label", t, "--out", str(out)]) == 0
    quad = theorem4_label(Tree.path(4))
    for name, lab in zip(("f", "f1", "f2", "f3"), quad.members()):
        assert (out / f"{name}.txt").read_text() == format_labelling(lab)
    assert (out / "anchors.txt").read_text() == "v0 0\nv1 1\nv2 2\nu2 3\n"


def test_label_spike_p3_files_verify(files, tmp_path):
    big, _, _ = spike(Tree.path(3))
    t = files("s.txt", format_tree(big))
    out = tmp_path / "q"
    assert main(["label", t, "--out", str(out), "--quiet"]) == 0
    m = parse_matching((out / "matching.txt").read_text())
    for name in ("f", "f1", "f2", "f3"):
        lab = parse_labelling((out / f"{name}.txt").read_text())
        assert is_strongly_graceful(big, m, lab)
        assert main(["--quiet", "verify", t, str(out / f"{name}.txt"), "--matching", str(out / "matching.txt"), "--strong"]) == 0


def test_label_p6_fails(files, capsys):
    assert main(["label", files("p6.txt", format_tree(Tree.path(6)))]) == 1
    err = capsys.readouterr().err
    assert "no end-edge perfect matching" in err
    assert err.count("end-edge") == 1


def test_transform_lift_k2(files, tmp_path):
    t = files("k2.txt", "2\n0 1\n")
    f = files("f.txt", "L\n0 0\n1 1\n")
    out = tmp_path / "lift"
    assert main(["--quiet", "--out", str(out), "transform", "lift", t, "--labelling", f]) == 0
    big = parse_tree((out / "tree.txt").read_text())
    m = parse_matching((out / "matching.txt").read_text())
    g = parse_labelling((out / "labelling.txt").read_text())
    assert big.n == 4 and is_strongly_graceful(big, m, g)


def test_transform_project_inverts_lift_bytewise(files, tmp_path):
    t = files("p5.txt", format_tree(Tree.path(5)))
    f = files("f.txt", "L\n0 0\n1 4\n2 1\n3 3\n4 2\n")
    a, b = tmp_path / "a", tmp_path / "b"
    assert main(["--quiet", "--out", str(a), "transform", "lift", t, "--labelling", f]) == 0
    assert main(["--quiet", "--out", str(b), "transform", "project", str(a / "tree.txt"),
                 "--matching", str(a / "matching.txt"), "--labelling", str(a / "labelling.txt")]) == 0
    assert (b / "labelling.txt").read_text() == (tmp_path / "f.txt").read_text()
    assert (b / "tree.txt").read_text() == (tmp_path / "p5.txt").read_text()


def test_transform_spike_then_contract(files, tmp_path):
    t = files("star.txt", format_tree(Tree.star(5)))
    a, b = tmp_path / "a", tmp_path / "b"
    assert main(["--quiet", "--out", str(a), "transform", "spike", t]) == 0
    assert main(["--quiet", "--out", str(b), "transform", "contract", str(a / "tree.txt"),
                 "--matching", str(a / "matching.txt")]) == 0
    assert (b / "tree.txt").read_text() == (tmp_path / "star.txt").read_text()


def test_transform_contract_non_perfect(files, capsys):
    t = files("p6.txt", format_tree(Tree.path(6)))
    m = files("m.txt", "M\n2\n0 1\n2 3\n")
    assert main(["transform", "contract", t, "--matching", m]) == 1
    assert "not perfect" in capsys.readouterr().err


def test_transform_missing_flag(files):
    assert main(["transform", "lift", files("k2.txt", "2\n0 1\n")]) == 2


def test_search_enumerate(tmp_path, capsys):
    assert main(["search", "enumerate", "7", "--out", str(tmp_path)]) == 0
    rep = SearchReport.from_json((tmp_path / "enumerate_7.json").read_text())
    assert rep.summary["count"] == 11 and len(rep.instances) == 11
    assert "count: 11" in capsys.readouterr().out


def test_search_hunt_n4(tmp_path):
    assert main(["--quiet", "search", "hunt-perms", "4", "--out", str(tmp_path)]) == 0
    rep = SearchReport.from_json((tmp_path / "hunt_perms_4.json").read_text())
    assert {"e", "r", "g1", "g2"} <= set(rep.summary["generalized_perms"])


def test_search_case2b_with_figure(tmp_path):
    assert main(["--quiet", "search", "explore-case2b", "12", "--figures", "--out", str(tmp_path)]) == 0
    assert (tmp_path / "explore_case2b_12.txt").exists()
    png = (tmp_path / "explore_case2b_12.png").read_bytes()
    assert png[:8] == b"\x89PNG\r\n\x1a\n"


def test_search_lemma2_figure(tmp_path):
    assert main(["--quiet", "search", "verify-lemma2", "8", "--figures", "--out", str(tmp_path)]) == 0
    assert (tmp_path / "verify_lemma2_8.png").stat().st_size > 1000


def test_search_cap(tmp_path, capsys):
    assert main(["search", "hunt-perms", "20", "--out", str(tmp_path)]) == 1
    assert main(["search", "enumerate", "9", "--max-n", "8", "--out", str(tmp_path)]) == 1
    assert "cap" in capsys.readouterr().err


def test_search_files_are_deterministic(tmp_path):
    a, b = tmp_path / "a", tmp_path / "b"
    for d, w in ((a, "1"), (b, "2")):
        assert main(["--quiet", "search", "verify-lemma2", "10", "--workers", w, "--out", str(d)]) == 0
    for name in ("verify_lemma2_10.txt", "verify_lemma2_10.json"):
        assert (a / name).read_bytes() == (b / name).read_bytes()


def test_export_dot(files, capsys):
    t = files("p4.txt", format_tree(Tree.path(4)))
    f = files("f.txt", "L\n0 0\n1 3\n2 1\n3 2\n")
    m = files("m.txt", "M\n2\n0 1\n2 3\n")
    assert main(["export-dot", t, "--labelling", f, "--matching", m]) == 0
    doc = capsys.readouterr().out
    assert doc.startswith("graph")
    bold = [line for line in doc.splitlines() if "bold" in line]
    assert len(bold) == 2
    assert any("0 -- 1" in line for line in bold) and any("2 -- 3" in line for line in bold)


def test_export_dot_plain_and_mismatch(files, capsys):
    t = files("p4.txt", format_tree(Tree.path(4)))
    assert main(["export-dot", t]) == 0
    assert "bold" not in capsys.readouterr().out
    assert main(["export-dot", t, "--labelling", files("f.txt", "L\n0 0\n1 1\n")]) == 2


def test_bad_subcommand_exits_2():
    with pytest.raises(SystemExit) as exc:
        main(["frobnicate"])
    assert exc.value.code == 2


def test_module_entry_point(files):
    t = files("p4.txt", format_tree(Tree.path(4)))
    f = files("f.txt", "L\n0 0\n1 3\n2 1\n3 2\n")
    proc = subprocess.run([sys.executable, "-m", "gracetree", "--quiet", "verify", t, f, "--strong"], capture_output=True)
    assert proc.returncode == 0 and proc.stdout == b""
