import json
import subprocess
import sys

import pytest

from curveword.cli import run


def out(capsys, *argv, code=0):
    assert run(list(argv)) == code
    return capsys.readouterr().out


def test_parse(capsys):
    text = out(capsys, "parse", "A -B A -B")
    assert "word: A -B A -B" in text and "B: sign -" in text


def test_canon(capsys):
    assert out(capsys, "canon", "B A B A").strip() == "A B A B"


def test_cyclic_orbit(capsys):
    text = out(capsys, "cyclic", "A B -C A -C B")
    assert "shift^1: A -B -C -B A -C" in text


def test_genus_json(capsys):
    assert json.loads(out(capsys, "--json", "genus", "A A")) == {"faces": 3, "genus": 0, "spherical": True}
    assert json.loads(out(capsys, "genus", "A B A B", "--json"))["genus"] == 1


def test_features(capsys):
    j = json.loads(out(capsys, "features", "A B A B", "--degree", "2", "--json"))
    assert j["features"] == {"phi": 1, "A* A*": 2, "A* B* A* B*": 1}


def test_arnold_text_and_json(capsys):
    assert out(capsys, "arnold", "A A").splitlines()[0] == "J+s = 0, J-s = -1, St_s = 0"
    j = json.loads(out(capsys, "--json", "arnold", ""))
    assert (j["Jplus_s"], j["Jminus_s"], j["St_s"]) == ("1/2", "1/2", "-1/4")
    assert j["spherical"] is True


def test_arnold_non_spherical(capsys):
    assert run(["arnold", "A -B A -B"]) == 1
    assert "NotSpherical" in capsys.readouterr().err
    j = json.loads(out(capsys, "--json", "arnold", "A -B A -B", "--lenient"))
    assert j["Jplus_s"] == "5/2" and j["spherical"] is False


def test_planar(capsys):
    assert out(capsys, "planar", "A A", "--rot", "2").strip() == "J+ = -2, J- = -3, St = 1"


def test_enumerate(capsys):
    assert out(capsys, "enumerate", "--n", "1").split("\n")[:2] == ["A A", "-A -A"]
    assert len(out(capsys, "enumerate", "--n", "2").splitlines()) == 12


def test_enumerate_guard(capsys):
    assert run(["--json", "enumerate", "--n", "7"]) == 1
    j = json.loads(capsys.readouterr().out)
    assert j["error"] == "LimitExceeded"


def test_moves(capsys):
    text = out(capsys, "moves-sites", "", "--sphere")
    assert text.splitlines() == ["move2 fwd #0 (0, 1): A -B -B A", "move2 fwd #1 (0, -1): -A B B -A"]
    assert out(capsys, "moves-apply", "", "--kind", "move2", "--index", "0").strip() == "A -B -B A"
    assert run(["moves-apply", "", "--kind", "move1", "--sphere"]) == 1
    capsys.readouterr()


def test_literal_sites(capsys):
    text = out(capsys, "moves-sites", "", "--kind", "move1")
    assert "A -B A -B" in text
    assert len(out(capsys, "moves-sites", "A A", "--kind", "move1", "--dir", "fwd").splitlines()) == 6


def test_walk_json_lines(capsys):
    lines = out(capsys, "--json", "walk", "--steps", "5", "--seed", "3").splitlines()
    assert len(lines) == 5
    recs = [json.loads(l) for l in lines]
    assert [r["step"] for r in recs] == [1, 2, 3, 4, 5]
    assert all(set(r) >= {"kind", "dir", "word", "expected_delta"} for r in recs)


def test_walk_repeatable(capsys):
    a = out(capsys, "walk", "--steps", "30", "--seed", "9")
    b = out(capsys, "walk", "--steps", "30", "--seed", "9")
    assert a == b


def test_dim(capsys):
    text = out(capsys, "dim", "--degree", "1", "--horizon", "3")
    assert text.splitlines()[-1] == "dimension 2 (stable from L=1)"
    j = json.loads(out(capsys, "--json", "dim", "--degree", "2", "--horizon", "3", "--domain", "spherical"))
    assert j["domain"] == "spherical" and j["dimension"] == 8


def test_complete_table_invariant(capsys):
    j = json.loads(out(capsys, "--json", "complete-table", "--invariant", "Jplus_s"))
    assert j["unique"] is True
    assert j["table"]["-A* -A*"] == "-1/2"


def test_complete_table_partial_file(tmp_path, capsys):
    table = tmp_path / "t.json"
    table.write_text(json.dumps({"degree": 1, "phi": "0", "A* A*": "1"}))
    j = json.loads(out(capsys, "--json", "complete-table", "--partial", str(table)))
    assert j["table"]["-A* -A*"] == "1"


def test_eval_with_table(tmp_path, capsys):
    table = tmp_path / "t.json"
    table.write_text(json.dumps({"degree": 1, "phi": "2", "A* A*": "1", "-A* -A*": "-1"}))
    assert out(capsys, "eval", "A A -B -B", "--table", str(table)).strip() == "2"
    assert run(["eval", "A A B B C C", "--table", str(table)]) == 0
    capsys.readouterr()
    table.write_text(json.dumps({"degree": 1, "phi": "2"}))
    assert run(["eval", "A A", "--table", str(table), "--strict"]) == 1
    assert "MissingSymbol" in capsys.readouterr().err


def test_completeness(capsys):
    text = out(capsys, "completeness", "--n", "2")
    assert "15 isomorphism classes, 6 cyclic classes" in text


def test_syntax_error(capsys):
    assert run(["canon", "A B"]) == 1
    assert run(["--json", "canon", "A !"]) == 1
    capsys.readouterr()


def test_usage_error(capsys):
    with pytest.raises(SystemExit) as exc:
        run(["frobnicate"])
    assert exc.value.code == 2
    capsys.readouterr()


def test_module_entry_point():
    res = subprocess.run(
        [sys.executable, "-m", "curveword", "canon", "B A B A"], capture_output=True, text=True, check=True
    )
    assert res.stdout.strip() == "A B A B"
