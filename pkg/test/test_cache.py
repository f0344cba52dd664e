import io
import json
import os

import pytest

from nqf.cache import BasisCache
from nqf.errors import CacheError
from nqf.lock import CacheLock
from nqf.nichols import NicholsBasis


def test_cache_path(env, a2):
    cache = BasisCache(env.config)
    assert cache.path == os.environ["NQF_CACHE"]
    assert cache.file_path(a2).endswith("nichols-A2.json")


def test_get_or_build_stores(env, a2):
    cache = BasisCache(env.config)
    nb = cache.get_or_build(a2)
    assert nb.hilbert_series() == [1, 3, 4, 3, 1]
    assert os.path.exists(cache.file_path(a2))

    loaded = cache.load(a2)
    assert loaded.complete
    assert loaded.words == nb.words


def test_cache_extends_truncated(env, a2):
    cache = BasisCache(env.config)
    nb = cache.get_or_build(a2, max_degree=2)
    assert nb.dims() == [1, 3, 4]
    assert cache.load(a2).built == 2

    deeper = cache.get_or_build(a2, max_degree=3)
    assert deeper.dims() == [1, 3, 4, 3]
    assert cache.load(a2).built == 3


def test_warm_load_is_truncated(env, a2):
    cache = BasisCache(env.config)
    cold = cache.get_or_build(a2, max_degree=2)
    cache.get_or_build(a2, max_degree=4)

    warm = cache.get_or_build(a2, max_degree=2)
    assert warm.built == 2
    assert warm.dims() == cold.dims() == [1, 3, 4]
    assert warm.words == cold.words
    assert cache.load(a2).built == 4


def test_store_keeps_deeper_basis(env, a2):
    cache = BasisCache(env.config)
    cache.get_or_build(a2, max_degree=3)
    cache.store(NicholsBasis(a2).build(max_degree=1))
    assert cache.load(a2).built == 3


def test_cache_is_deterministic(env, a2):
    cache = BasisCache(env.config)
    cache.get_or_build(a2)
    with io.open(cache.file_path(a2), encoding="utf8") as f:
        first = f.read()
    cache.invalidate(a2)
    assert not os.path.exists(cache.file_path(a2))
    cache.get_or_build(a2)
    with io.open(cache.file_path(a2), encoding="utf8") as f:
        assert f.read() == first


def test_corrupt_cache_is_rebuilt(env, a2):
    cache = BasisCache(env.config)
    if not os.path.exists(cache.path):
        os.makedirs(cache.path)
    with io.open(cache.file_path(a2), "w", encoding="utf8") as f:
        f.write(u"{not json")
    with pytest.raises(CacheError):
        cache.load(a2)
    nb = cache.get_or_build(a2)
    assert nb.hilbert_series() == [1, 3, 4, 3, 1]
    with io.open(cache.file_path(a2), encoding="utf8") as f:
        assert json.load(f)["complete"]


def test_wrong_version_is_a_cache_error(env, a2):
    cache = BasisCache(env.config)
    doc = NicholsBasis(a2).build(max_degree=1).to_document()
    doc["version"] = 0
    with pytest.raises(CacheError):
        cache.load_value(a2, json.dumps(doc))


def test_cache_lock_is_reentrant(env):
    with CacheLock("A", 2) as lock:
        assert os.path.basename(lock.path) == "A2.lock"
        with CacheLock("A", 2) as inner:
            assert inner is lock
    assert not CacheLock.locks
