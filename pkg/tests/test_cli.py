from __future__ import annotations

import json
import os
import subprocess
import sys

import pytest

from glitlab.cli import main

DATA = os.path.join(os.path.dirname(__file__), "data")


def d(name: str) -> str:
    return os.path.join(DATA, name)


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


def run_json(capsys, *argv):
    code, out, err = run(capsys, *argv, "--format", "json")
    return code, (json.loads(out) if out.strip() else None), err


def test_phi_examples(capsys):
    code, rep, _ = run_json(capsys, "phi", d("T.alg"), d("S1.mod"), d("I2.mod"))
    assert code == 0 and rep["phi"] == 2
    assert [r for _, r in rep["rank_trace"][:4]] == [2, 2, 1, 1]
    assert run_json(capsys, "phi", d("T.alg"), d("P3.mod"))[1]["phi"] == 0
    assert run_json(capsys, "phi", d("T.alg"), d("S2.mod"))[1]["phi"] == 1


def test_every_report_has_run_header(capsys):
    code, rep, _ = run_json(capsys, "pd", d("T.alg"), d("S2.mod"), "--seed", "9", "--field", "7")
    assert code == 0
    for key in ("p", "seed", "budgets", "version", "scope"):
        assert key in rep
    assert rep["p"] == 7 and rep["seed"] == 9 and rep["scope"] == "family-level"


def test_seed_from_environment(capsys, monkeypatch):
    monkeypatch.setenv("GLITLAB_SEED", "42")
    assert run_json(capsys, "suite", "huard", "--count", "0")[1]["seed"] == 42
    assert run_json(capsys, "suite", "huard", "--count", "0", "--seed", "3")[1]["seed"] == 3


def test_worked_example_command(capsys):
    code, rep, _ = run_json(capsys, "paper-example")
    assert code == 0 and rep["ok"] and len(rep["checks"]) == 5
    code, rep, _ = run_json(capsys, "paper-example", "--field", "2")
    assert code == 0 and rep["ok"]
    code, rep, _ = run_json(capsys, "paper-example", "--corrupt")
    assert code == 1 and not rep["ok"]


def test_input_errors_exit_2(capsys, tmp_path):
    assert run(capsys, "phi", d("T.alg"), str(tmp_path / "missing.mod"))[0] == 2
    bad = tmp_path / "bad.alg"
    bad.write_text("vertices 1\narrow a 1 1\nnilpotency 2\n")
    code, _, err = run(capsys, "phi", str(bad), d("S1.mod"))
    assert code == 2 and "bad.alg" in err
    with pytest.raises(SystemExit) as info:
        main(["suite", "no-such-suite"])
    assert info.value.code == 2
    with pytest.raises(SystemExit):
        main(["phi", d("T.alg"), d("S1.mod"), "--budget-depth", "0"])


def test_budget_exhaustion_exits_3(capsys):
    code, _, _ = run(capsys, "phi", d("T.alg"), d("S1.mod"), "--budget-classes", "1")
    assert code == 3


def test_structured_output_is_byte_identical(capsys):
    a = run(capsys, "suite", "phi-basic", "--count", "6", "--seed", "4", "--format", "json")[1]
    b = run(capsys, "suite", "phi-basic", "--count", "6", "--seed", "4", "--format", "json")[1]
    c = run(capsys, "suite", "phi-basic", "--count", "6", "--seed", "4", "--format", "json", "--jobs", "2")[1]
    assert a == b == c


def test_other_commands(capsys, tmp_path):
    code, rep, _ = run_json(capsys, "resolve", d("T.alg"), d("S1.mod"), "-k", "2")
    assert code == 0 and [c["dims"] for c in rep["chain"]] == [[1, 0, 0], [1, 1, 0], [1, 1, 1]]
    code, rep, _ = run_json(capsys, "psi", d("T.alg"), d("S1.mod"), d("I2.mod"))
    assert code == 0 and rep["psi"] == 3
    reg_file = tmp_path / "reg.txt"
    code, rep, _ = run_json(capsys, "decompose", d("T.alg"), d("I2.mod"), "--dump-registry", str(reg_file))
    assert code == 0 and len(rep["summands"]) == 1 and reg_file.read_text().startswith("class")
    code, rep, _ = run_json(capsys, "triangular-build", d("T.alg"), d("T.alg"))
    assert code == 0 and rep["valid"] and rep["dim"] == 18
    flat = tmp_path / "flat.alg"
    code, rep, _ = run_json(capsys, "tensor-build", d("T.alg"), "--vertices", "1", "2", "--arrow", "x", "1", "2", "--write-flat", str(flat))
    assert code == 0 and rep["flat_dim"] == 18 and rep["d_table"] == [[1, 0], [1, 1]]
    from glitlab.formats import Loader

    assert Loader().algebra(str(flat)).dim == 18


def test_witness_commands(capsys):
    code, rep, _ = run_json(capsys, "glit-verify", d("special.wit"), d("S2.mod"))
    assert code == 0 and rep["ok"]
    code, rep, _ = run_json(capsys, "findim-bound", d("special.wit"), d("S2.mod"), d("P3.mod"))
    assert code == 0 and rep["ok"] and rep["bound"] >= 1
    code, rep, _ = run_json(capsys, "glit-shift", d("special.wit"), "--to", "2")
    assert code == 0 and rep["witness"]["n"] == 2
    code, rep, _ = run_json(
        capsys, "glit-assemble", d("a2.ctx"), d("K.wit"), d("K.wit"), d("a2_simple1.tup"), d("a2_proj.tup"), "--restrict"
    )
    assert code == 0 and rep["ok"] and rep["witness"]["scope"] == "family-level"
    assert rep["restricted"]["T"]["kind"] == "restrict-T"


def test_human_format(capsys):
    code, out, _ = run(capsys, "phi", d("T.alg"), d("S2.mod"))
    assert code == 0 and "phi: 1" in out and "scope: family-level" in out


def test_console_script_entry_point():
    out = subprocess.run(
        [sys.executable, "-m", "glitlab.cli", "suite", "huard", "--count", "0", "--format", "json"],
        capture_output=True,
        text=True,
        check=False,
    )
    assert out.returncode == 0 and json.loads(out.stdout)["ok"]


def test_global_options_before_subcommand(capsys):
    code = main(["--format", "json", "--field", "7", "pd", d("T.alg"), d("S1.mod")])
    rep = json.loads(capsys.readouterr().out)
    assert code == 0 and rep["p"] == 7
