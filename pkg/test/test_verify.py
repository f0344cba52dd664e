import json
import os
from fractions import Fraction

import pytest

from nqf import verify
from nqf.cache import BasisCache
from nqf.engine import Engine, EngineConfig, parse_constant
from nqf.errors import ConfigError, InvariantViolation
from nqf.nichols import BElem, NicholsBasis
from nqf.verify import (CHECKS, FAIL, PASS, SKIP, dump_tables, format_reports, format_table,
                        resolve_checks, run_check, run_suite)


def make_engine(env, type_label="A", rank=2, **kwargs):
    return Engine(EngineConfig.from_config(env.config, type_label, rank, **kwargs), env.config)


def test_engine_config_from_config(env):
    engine_config = EngineConfig.from_config(env.config, "A", 2, seed=None)
    assert engine_config.instance == "A2"
    assert engine_config.threads == 2
    assert engine_config.samples == 12
    assert engine_config.random_degree == 3
    assert engine_config.seed == 0
    assert engine_config.truncation is None

    assert EngineConfig.from_config(env.config, "A", 3).truncation == 5
    assert EngineConfig.from_config(env.config, "A", 2, max_degree=3).truncation == 3


@pytest.mark.parametrize("kwargs", [
    {"output_format": "xml"},
    {"c_long": "abc"},
    {"c_short": 0},
    {"max_degree": 0},
])
def test_engine_config_rejected(kwargs):
    with pytest.raises(ConfigError):
        EngineConfig("A", 2, **kwargs)


def test_parse_constant():
    assert parse_constant("3/2") == Fraction(3, 2)
    assert parse_constant(2) == 2


def test_engine_uses_cache(env):
    engine = make_engine(env)
    assert engine.basis.complete
    assert engine.max_degree is None
    assert engine.model() is engine.model()
    assert engine.model("right").side == "right"
    assert os.path.exists(BasisCache(env.config).file_path(engine.rs))


def test_engine_without_cache(env):
    engine = make_engine(env, use_cache=False)
    assert engine.basis.hilbert_series() == [1, 3, 4, 3, 1]
    assert not os.path.exists(BasisCache(env.config).file_path(engine.rs))


def test_resolve_checks():
    assert resolve_checks(["all"]) == sorted(CHECKS)
    assert resolve_checks(["prop3", "hilbert", "prop3"]) == ["hilbert", "prop3"]
    with pytest.raises(ValueError):
        resolve_checks(["hilbert", "nope"])


def test_run_suite_a2(env):
    reports = run_suite(make_engine(env), ["all"])
    assert [report.check for report in reports] == sorted(CHECKS)
    statuses = {report.check: report.status for report in reports}
    assert statuses.pop("bn-relations") == SKIP
    assert set(statuses.values()) == set([PASS])
    for report in reports:
        assert report.instance == "A2"
        assert report.max_degree is None
        assert "wall_time" not in report.to_dict()

    by_name = {report.check: report for report in reports}
    assert by_name["hilbert"].details["dims"] == [1, 3, 4, 3, 1]
    assert by_name["graded-ranks"].details["ranks"] == [1, 2, 2, 1]
    assert by_name["graded-ranks"].details["bgg_ranks"] == [1, 2, 2, 1]


@pytest.mark.parametrize("threads", [1, 3])
def test_run_suite_is_deterministic(env, threads):
    checks = ["lemma2", "prop2", "corollary"]
    first = run_suite(make_engine(env), checks, threads=threads)
    second = run_suite(make_engine(env), checks, threads=threads)
    assert [r.to_json() for r in first] == [r.to_json() for r in second]


def test_run_suite_empty(env):
    assert run_suite(make_engine(env), []) == []


def test_run_suite_b2(env):
    reports = run_suite(make_engine(env, "B", 2), ["bn-relations", "prop1-sets", "prop3"])
    assert [r.status for r in reports] == [PASS] * 3
    assert "1" in reports[0].details["relations"]


def test_bn_relations_skip_non_unit_constants(env):
    report = run_check(make_engine(env, "B", 2, c_short="2"), "bn-relations")
    assert report.status == SKIP


def test_truncated_instance(env):
    engine = make_engine(env, "A", 3, max_degree=3)
    report = run_check(engine, "hilbert")
    assert report.status == PASS
    assert report.max_degree == 3
    assert not report.details["complete"]
    assert report.details["dims"] == [1, 6, 19, 42]


def test_failure_report(env, monkeypatch):
    def failing(engine, rng):
        raise InvariantViolation("Broken", counterexample={"degree": 3})

    monkeypatch.setitem(verify.CHECKS, "hilbert", failing)
    report = run_check(make_engine(env, timings=True), "hilbert")
    assert report.failed
    assert report.status == FAIL
    assert report.details == {"message": "Broken"}
    assert "wall_time" in report.to_dict()
    assert report.to_text() == "FAIL hilbert A2\n    degree: 3"


def test_prop3_checks_right_side(env, monkeypatch):
    report = run_check(make_engine(env), "prop3")
    assert report.status == PASS
    assert report.details["sides"] == ["left", "right"]

    monkeypatch.setattr(NicholsBasis, "right_multiply_root", lambda self, alpha, x: BElem(self))
    report = run_check(make_engine(env), "prop3")
    assert report.status == FAIL
    assert report.counterexample["side"] == "right"
    assert report.counterexample["root"] == "a1"


def test_raising_check_is_reported(env, monkeypatch):
    def broken(engine, rng):
        raise ZeroDivisionError("division by zero")

    monkeypatch.setitem(verify.CHECKS, "hilbert", broken)
    reports = run_suite(make_engine(env), ["hilbert", "prop3"], threads=2)
    assert [r.status for r in reports] == [FAIL, PASS]
    assert reports[0].details == {"message": "ZeroDivisionError: division by zero"}
    assert reports[0].to_text() == "FAIL hilbert A2\n    error: ZeroDivisionError"


def test_format_reports(env):
    reports = run_suite(make_engine(env), ["prop3", "prop1-sets"])
    lines = format_reports(reports).splitlines()
    assert [json.loads(line)["check"] for line in lines] == ["prop1-sets", "prop3"]
    assert format_reports(reports, "text").splitlines() == ["PASS prop1-sets A2",
                                                            "PASS prop3 A2"]


def test_dump_hilbert(env):
    doc = dump_tables(make_engine(env), "hilbert")
    assert doc["dims"] == [1, 3, 4, 3, 1]
    assert doc["total"] == 12
    assert doc["top_degree"] == 4
    text = format_table(doc, "text").splitlines()
    assert text[:3] == ["hilbert A2", "dims: 1 3 4 3 1", "total: 12"]


def test_dump_basis(env):
    doc = dump_tables(make_engine(env), "basis")
    assert doc["basis"][0] == ["1"]
    assert doc["basis"][1] == ["[a1]", "[a2]", "[a1+a2]"]
    assert [len(words) for words in doc["basis"]] == [1, 3, 4, 3, 1]


def test_dump_schubert(env):
    doc = dump_tables(make_engine(env), "schubert")
    rows = {row["w"]: row for row in doc["rows"]}
    assert len(rows) == 6
    assert rows["s1"]["schubert"] == "x1"
    assert rows["s2"]["schubert"] == "x1 + x2"
    assert rows["s1"]["bgg"] == "w1"
    assert rows["s1"]["quantized"] == "w1"
    assert rows["id"]["length"] == 0
    assert json.loads(format_table(doc))["what"] == "schubert"


def test_dump_invariants(env):
    doc = dump_tables(make_engine(env), "invariants")
    assert [row["degree"] for row in doc["invariants"]] == [2, 3]
    assert all("tridiagonal" in row for row in doc["invariants"])


def test_dump_unknown(env):
    with pytest.raises(ValueError):
        dump_tables(make_engine(env), "everything")
