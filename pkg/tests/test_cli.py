from __future__ import annotations

import json
import subprocess
import sys
from pathlib import Path

import pytest

from egl.cli import run
from egl.model import load_model

FIXTURES = Path(__file__).parent / "fixtures" / "derivations"


@pytest.fixture()
def files(tmp_path):
    assert run(["muddy", "--out", str(tmp_path / "muddy.json"), "--action-out", str(tmp_path / "ann.json")]) == 0
    return tmp_path


def test_eval(files, capsys):
    code = run(["eval", "--model", str(files / "muddy.json"), "--state", "(1,1)", "--formula", "B{b} m_a"])
    assert code == 0
    assert capsys.readouterr().out.strip() == "7/25 (0.28)"


def test_eval_is_deterministic(files):
    argv = ["eval", "--model", str(files / "muddy.json"), "--formula", "C{a,b} (m_a | B{b} m_b)"]
    outs = [
        subprocess.run([sys.executable, "-m", "egl", *argv], capture_output=True, check=True).stdout
        for _ in range(2)
    ]
    assert outs[0] == outs[1] and outs[0]


def test_taut(capsys):
    assert run(["taut", "--formula", "p | ~p"]) == 1
    assert "p=1/2" in capsys.readouterr().out
    assert run(["taut", "--formula", "p -> ~~p"]) == 0
    assert run(["taut", "--formula", "B{a} p -> ~~B{a} p"]) == 0


def test_update(files, capsys):
    out = files / "product.json"
    code = run(["update", "--model", str(files / "muddy.json"), "--action", str(files / "ann.json"), "--out", str(out)])
    assert code == 0
    assert len(load_model(out.read_text()).states) == 8
    assert "8 states" in capsys.readouterr().out


def test_update_formula_uses_registry_name(files, capsys):
    argv = ["eval", "--model", str(files / "muddy.json"), "--action", str(files / "ann.json")]
    assert run([*argv, "--state", "(0.5,0)", "--formula", "[ann,e1] m_a"]) == 0
    assert capsys.readouterr().out.strip() == "1/2 (0.5)"


def test_action_name_defaults_to_file_stem(files, capsys):
    doc = json.loads((files / "ann.json").read_text())
    del doc["name"]
    (files / "shout.json").write_text(json.dumps(doc))
    argv = ["eval", "--model", str(files / "muddy.json"), "--action", str(files / "shout.json")]
    assert run([*argv, "--state", "(1,1)", "--formula", "[shout,e1] false"]) == 0
    assert capsys.readouterr().out.strip() == "1 (1)"


def test_valid(files):
    model = str(files / "muddy.json")
    assert run(["valid", "--model", model, "--formula", "B{b} m_a -> B{b} B{b} m_a"]) == 1
    assert run(["valid", "--model", model, "--formula", "B{a} m_a -> m_a"]) == 0
    assert run(["valid", "--model", model, "--state", "(0,0)", "--formula", "B{b} m_a -> B{b} B{b} m_a"]) == 0


@pytest.mark.parametrize(
    "name, system, code",
    [("k_double_negation.bf", "BF", 0), ("truth.tf", "TF", 0), ("truth.tf", "BF", 1)],
)
def test_prove(name, system, code):
    assert run(["prove", "--derivation", str(FIXTURES / name), "--system", system]) == code


def test_prove_with_premise(tmp_path):
    path = tmp_path / "d.txt"
    path.write_text("1. p ; premise\n2. p -> (q -> p) ; A1\n3. q -> p ; MP 1 2\n")
    assert run(["prove", "--derivation", str(path)]) == 1
    assert run(["prove", "--derivation", str(path), "--premise", "p"]) == 0


def test_falsify(tmp_path, capsys):
    out = tmp_path / "w.json"
    assert run(["falsify", "--formula", "B{a} p -> B{a} B{a} p", "--seed", "1", "--out", str(out)]) == 1
    assert "witness" in capsys.readouterr().out
    assert load_model(out.read_text()).states
    assert run(["falsify", "--formula", "B{a} p -> p", "--seed", "1", "--reflexive", "--budget", "200"]) == 0


def test_regress(tmp_path):
    assert run(["regress"]) == 0
    params = tmp_path / "p.json"
    params.write_text(json.dumps({"agents": ["a", "b"], "n": 3, "alpha": "0.3", "visual": {"a": "0.4", "b": "0.9"}}))
    assert run(["regress", "--params", str(params)]) == 1


@pytest.mark.parametrize(
    "argv",
    [
        [],
        ["frobnicate"],
        ["eval", "--model", "missing.json", "--formula", "p"],
        ["falsify", "--formula", "p"],  # no --seed
        ["falsify", "--formula", "p", "--seed", "1", "--budget", "0"],
        ["taut", "--formula", "p &"],
        ["prove", "--derivation", "missing.txt"],
        ["update", "--model", "missing.json"],
    ],
)
def test_usage_and_input_errors(argv, capsys):
    assert run(argv) == 2


def test_input_errors_with_files(files, tmp_path):
    model = str(files / "muddy.json")
    assert run(["eval", "--model", model, "--formula", "B{z} m_a"]) == 2
    assert run(["eval", "--model", model, "--state", "(9,9)", "--formula", "m_a"]) == 2
    assert run(["eval", "--model", model, "--formula", "[nope,e1] m_a"]) == 2
    bad = tmp_path / "bad.json"
    bad.write_text('{"states": ["s"], "props": ["p"], "valuation": {"s": {"p": 2}}}')
    assert run(["eval", "--model", str(bad), "--formula", "p"]) == 2
    bad.write_text("not json")
    assert run(["eval", "--model", str(bad), "--formula", "p"]) == 2
    deriv = tmp_path / "d.txt"
    deriv.write_text("1 p ; A1")
    assert run(["prove", "--derivation", str(deriv)]) == 2
