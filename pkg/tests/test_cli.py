"""Command-line interface: exit codes, output shapes, file round trips."""

import json
import os

import pytest

from revxdt.cli import main
from revxdt.serialize import parse_transducer

FIXTURES = os.path.join(os.path.dirname(__file__), os.pardir, "fixtures")


def fix(name):
    return os.path.join(FIXTURES, name + ".json")


def test_check_reports_properties(capsys):
    assert main(["check", fix("a2")]) == 0
    out = json.loads(capsys.readouterr().out)
    assert out["reversible"] is True
    assert out["valid"] is True


def test_check_t1_not_deterministic(capsys):
    assert main(["check", fix("t1")]) == 0
    out = json.loads(capsys.readouterr().out)
    assert out["deterministic"] is False
    assert out["codeterministic"] is True
    assert out["weakly_branching"] is True


def test_run_accepts(capsys):
    assert main(["run", fix("id"), "--input", "ab"]) == 0
    assert capsys.readouterr().out.strip() == "accepted: ab"


def test_run_rejects(capsys):
    assert main(["run", fix("a2"), "--input", "ab"]) == 1
    assert capsys.readouterr().out.strip() == "rejected"


def test_run_nondeterministic_is_an_error(capsys):
    assert main(["run", fix("t1"), "--input", "a"]) == 2
    assert "error:" in capsys.readouterr().err


def test_missing_file_is_an_error(capsys):
    assert main(["check", fix("nope")]) == 2


def test_malformed_json_is_an_error(tmp_path, capsys):
    bad = tmp_path / "bad.json"
    bad.write_text("{")
    assert main(["check", str(bad)]) == 2
    assert "error:" in capsys.readouterr().err


def test_compose_writes_machine(tmp_path, capsys):
    out = tmp_path / "mm.json"
    assert main(["compose", fix("mirror"), fix("mirror"),
                 "-o", str(out)]) == 0
    T = parse_transducer(out.read_bytes())
    assert T.state_count() == 9
    assert main(["equiv", str(out), fix("id"), "--max-len", "4"]) == 0
    assert capsys.readouterr().out.strip() == "equal"


def test_equiv_counterexample(capsys):
    assert main(["equiv", fix("id"), fix("mirror"), "--max-len", "3"]) == 1
    assert "counterexample" in capsys.readouterr().out


def test_treeoutline_stdout(capsys):
    assert main(["treeoutline", fix("t1")]) == 0
    T = parse_transducer(capsys.readouterr().out)
    assert T.state_count() == 90


def test_treeoutline_precondition_error(capsys):
    assert main(["treeoutline", fix("a1")]) == 2


def test_reversibilize_and_check(tmp_path, capsys):
    out = tmp_path / "rev.json"
    assert main(["reversibilize", fix("a1"), "-o", str(out)]) == 0
    capsys.readouterr()
    assert main(["check", str(out)]) == 0
    assert json.loads(capsys.readouterr().out)["reversible"] is True
    assert main(["equiv", str(out), fix("a1"), "--max-len", "4"]) == 0


def test_uniformize_and_uniformcheck(tmp_path, capsys):
    out = tmp_path / "uni.json"
    assert main(["uniformize", fix("rel"), "-o", str(out)]) == 0
    assert main(["uniformcheck", str(out), fix("rel"),
                 "--max-len", "4"]) == 0
    assert capsys.readouterr().out.strip() == "ok"


def test_uniformize_stage(capsys):
    assert main(["uniformize", fix("rel"), "--stage", "right-oracle"]) == 0
    T = parse_transducer(capsys.readouterr().out)
    assert T.initial == "init"


def test_ssteval(capsys):
    assert main(["ssteval", fix("sst_pal"), "--input", "ab"]) == 0
    assert capsys.readouterr().out.strip() == "abba"
    assert main(["ssteval", fix("sst_pal"), "--input", "ac"]) == 1
    assert capsys.readouterr().out.strip() == "rejected"


def test_sst2rev(tmp_path, capsys):
    out = tmp_path / "pal.json"
    assert main(["sst2rev", fix("sst_pal"), "--trim", "-o", str(out)]) == 0
    capsys.readouterr()
    assert main(["run", str(out), "--input", "ba"]) == 0
    assert capsys.readouterr().out.strip() == "accepted: baab"


def test_stats(capsys):
    assert main(["stats", fix("t1")]) == 0
    out = json.loads(capsys.readouterr().out)
    assert out["states"] == 5
    assert out["states_trimmed"] == 5


def test_trim(tmp_path, capsys):
    out = tmp_path / "trimmed.json"
    assert main(["trim", fix("t1"), "-o", str(out)]) == 0
    assert parse_transducer(out.read_bytes()).state_count() == 5


def test_dot_machine(capsys):
    assert main(["dot", fix("a2")]) == 0
    text = capsys.readouterr().out
    assert text.startswith("digraph")
    assert "shape=box" in text  # backward states drawn as boxes


def test_dot_run_tree(capsys):
    assert main(["dot", fix("t1"), "--input", "ab"]) == 0
    assert "digraph" in capsys.readouterr().out


def test_parser_rejects_unknown_command():
    with pytest.raises(SystemExit):
        main(["frobnicate"])
