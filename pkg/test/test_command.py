import json

import pytest

from nqf import command, verify
from nqf.errors import InvariantViolation


def test_no_command(env, capsys):
    assert command.main([]) == 2
    assert "usage" in capsys.readouterr().out


def test_hilbert(env, capsys):
    assert command.main(["hilbert", "--format", "text"]) == 0
    out = capsys.readouterr().out.splitlines()
    assert out == ["hilbert A2", "dims: 1 3 4 3 1", "total: 12"]


def test_dump_json(env, capsys):
    assert command.main(["dump", "basis", "--type", "A", "--rank", "1"]) == 0
    doc = json.loads(capsys.readouterr().out)
    assert doc["instance"] == "A1"
    assert doc["dims"] == [1, 1]


def test_schubert_single_element(env, capsys):
    assert command.main(["schubert", "--w", "1", "--format", "text"]) == 0
    out = capsys.readouterr().out.splitlines()
    assert out == ["schubert A2", "s1: x1", "    quantized: w1"]


def test_schubert_bad_word(env):
    assert command.main(["schubert", "--w", "3"]) == 1
    assert command.main(["schubert", "--w", "a,b"]) == 1


def test_verify(env, capsys):
    assert command.main(["verify", "prop3", "hilbert", "--type", "B", "--no-cache"]) == 0
    lines = capsys.readouterr().out.splitlines()
    reports = [json.loads(line) for line in lines]
    assert [r["check"] for r in reports] == ["hilbert", "prop3"]
    assert all(r["status"] == "pass" for r in reports)
    assert all(r["instance"] == "B2" for r in reports)


def test_verify_nothing_selected(env, capsys):
    assert command.main(["verify"]) == 0
    assert capsys.readouterr().out == ""


def test_verify_unknown_check(env):
    assert command.main(["verify", "nope"]) == 1


def test_verify_failure_exit_code(env, capsys, monkeypatch):
    def failing(engine, rng):
        raise InvariantViolation("Broken", counterexample={"root": "a1"})

    monkeypatch.setitem(verify.CHECKS, "prop3", failing)
    assert command.main(["verify", "prop3", "--format", "text"]) == 1
    assert capsys.readouterr().out.splitlines() == ["FAIL prop3 A2", "    root: a1"]


def test_config_option(env, capsys):
    assert command.main(["--config", "engine.seed=5", "verify", "prop1-sets"]) == 0
    assert json.loads(capsys.readouterr().out)["seed"] == 5


def test_bad_config_option(env):
    assert command.main(["--config", "seed", "verify", "prop1-sets"]) == 1


def test_unsupported_rank(env):
    assert command.main(["hilbert", "--type", "D", "--rank", "2"]) == 1


def test_invalid_constant(env):
    assert command.main(["hilbert", "--c-long", "x"]) == 1


def test_invalid_type(env):
    with pytest.raises(SystemExit):
        command.main(["hilbert", "--type", "E"])
