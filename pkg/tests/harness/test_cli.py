from __future__ import annotations

import json

import pytest

from qdisttest.harness import cli
from qdisttest.utils.errors import EXIT_CONFIG, EXIT_INVARIANT, EXIT_OK, InvariantError


def test_make_config(tmp_path):
    path = tmp_path / "exp.json"
    path.write_text(json.dumps({"trials": 7, "instance": {"kind": "zipf", "n": 4, "s": 2.0}}))
    args = cli.build_parser().parse_args(
        ["l2test", "--quantum", "--route", "swap", "--config", str(path), "--n", "8", "--set", "eps=0.3"]
    )
    config = cli.make_config(args)
    assert config.tester == "l2_quantum"
    assert config.route == "swap"
    assert config.trials == 7
    assert config.instance == {"kind": "zipf", "n": 8, "s": 2.0}
    assert config.eps == 0.3

    # --kind replaces the generator but keeps n
    args = cli.build_parser().parse_args(["entropy", "--config", str(path), "--kind", "uniform"])
    assert cli.make_config(args).instance == {"kind": "uniform", "n": 4}


def test_make_config_sweep():
    args = cli.build_parser().parse_args(
        ["sweep", "--tester", "l3_closeness", "--param", "n", "--values", "2", "3", "4"]
    )
    config = cli.make_config(args)
    assert config.tester == "l3_closeness"
    assert config.sweep == {"param": "n", "values": [2, 3, 4]}


def test_main_poly(capsys):
    assert cli.main(["poly", "Q", "--t", "1"]) == EXIT_OK
    out = json.loads(capsys.readouterr().out)
    assert out["parity"] == "odd"
    assert out["degree"] == 1


def test_main_entropy(capsys):
    assert cli.main(["entropy", "--mode", "exact", "--trials", "2"]) == EXIT_OK
    out = json.loads(capsys.readouterr().out)
    assert out["tester"] == "entropy_classical"
    assert out["trials"] == 2

    assert cli.main(["entropy", "--mode", "exact", "--trials", "2", "--bits"]) == EXIT_OK
    out = json.loads(capsys.readouterr().out)
    assert out["unit"] == "bits"
    assert out["ground_truth"] == pytest.approx(4.0)


param_main_config_error = [
    ["entropy", "--eps", "1.5"],
    ["l1test", "--set", "colour=red"],
    ["entropy", "--mode", "matrix", "--n", "16"],
    ["sweep", "--tester", "l3_closeness", "--param", "n", "--values", "2", "3"],
    ["independence", "--kind", "correlated", "--n", "4"],
]


@pytest.mark.parametrize("argv", param_main_config_error)
def test_main_config_error(argv: list[str]):
    assert cli.main(argv) == EXIT_CONFIG


def test_main_invariant_error(monkeypatch):
    def fail(config):
        raise InvariantError("counters were charged 1 queries but the trace records 2.")

    monkeypatch.setattr(cli, "run", fail)
    assert cli.main(["l3test"]) == EXIT_INVARIANT


@pytest.mark.slow
def test_main_selftest(capsys):
    assert cli.main(["selftest"]) == EXIT_OK
    out = json.loads(capsys.readouterr().out)
    assert out["identities"] == "ok"
    assert {c["poly"] for c in out["certified"]} == {"P", "Q", "S"}
