import os
import shutil

import pytest
from six import iteritems

from nqf import settings
from nqf.braidedalg import _caches
from nqf.env import Environment, clear_env, set_env
from nqf.nichols import NicholsBasis
from nqf.roots import RootSystem

here = os.path.abspath(os.path.dirname(__file__))


def cleanup(config):
    for name, dir in iteritems(config["paths"]):
        if name == "logs":
            continue
        path = os.path.join(config["root"], dir)
        if os.path.exists(path):
            shutil.rmtree(path)


@pytest.fixture(scope="function")
def env(request, tmpdir, monkeypatch):
    assert os.environ.get("NQF_CONFIG") == "test/config/nqf.ini"
    monkeypatch.setenv("NQF_CACHE", str(tmpdir.join("cache")))
    clear_env()
    settings.reset()
    config = settings.load()
    cleanup(config)
    set_env(config)

    for name, dir in iteritems(config["paths"]):
        path = os.path.join(config["root"], dir)
        if not os.path.exists(path):
            os.makedirs(path)

    def reset():
        clear_env()
        settings.reset()

    request.addfinalizer(reset)

    return Environment()


@pytest.fixture(scope="session")
def a1():
    return RootSystem("A", 1)


@pytest.fixture(scope="session")
def a2():
    return RootSystem("A", 2)


@pytest.fixture(scope="session")
def a3():
    return RootSystem("A", 3)


@pytest.fixture(scope="session")
def b2():
    return RootSystem("B", 2)


@pytest.fixture(scope="session")
def b3():
    return RootSystem("B", 3)


@pytest.fixture(scope="session")
def nb_a1(a1):
    return NicholsBasis(a1).build()


@pytest.fixture(scope="session")
def nb_a2(a2):
    return NicholsBasis(a2).build()


@pytest.fixture(scope="session")
def nb_b2(b2):
    return NicholsBasis(b2).build()


@pytest.fixture(scope="session")
def nb_a3(a3):
    # Truncated; the full algebra is slow to build in the test run
    return NicholsBasis(a3, max_degree=4).build()


@pytest.fixture
def empty_pairing_caches():
    _caches.clear()
    yield
    _caches.clear()
