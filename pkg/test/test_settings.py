import os

from nqf import settings
from nqf.env import Environment, clear_env


def test_load(env):
    config = env.config
    assert config["engine"]["threads"] == 2
    assert config["engine"]["truncation"]["full"] == "A1 A2 B2 C2"
    assert config["verify"]["timings"] is False
    assert config["paths"]["cache"] == os.environ["NQF_CACHE"]
    assert settings.load() is config


def test_set_value(env, monkeypatch):
    config = env.config
    monkeypatch.setenv("NQF_TEST_SEED", "17")
    settings.set_value(config, "engine", "truncation.default", "3")
    settings.set_value(config, "verify", "timings", "True")
    settings.set_value(config, "engine", "seed", "$NQF_TEST_SEED")
    assert config["engine"]["truncation"]["default"] == 3
    assert config["verify"]["timings"] is True
    assert config["engine"]["seed"] == "17"


def test_resolve_path(env):
    config = env.config
    assert settings.resolve_path(config, "logs") == os.path.join(config["root"], "testdata",
                                                                 "logs")
    assert settings.resolve_path(config, "cache") == os.environ["NQF_CACHE"]


def test_reset(env):
    first = settings.load()
    settings.reset()
    assert settings.load() is not first


def test_ensure_config_loads_once(env):
    clear_env()
    assert not env.configured
    config = Environment().ensure_config()
    assert env.configured
    assert config is settings.load()
    assert Environment().ensure_config() is config
