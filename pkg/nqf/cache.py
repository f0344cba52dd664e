"""On-disk cache of Nichols bases, one JSON file per root system.

A file holds every sealed degree of one basis, so a later run asking for a
higher degree extends the cached basis instead of starting over. Files are
replaced atomically while the CacheLock for the root system is held.
"""
from __future__ import absolute_import
import io
import json
import os

from . import log
from . import settings
from .errors import CacheError
from .lock import CacheLock
from .nichols import NicholsBasis

MYPY = False
if MYPY:
    from typing import Any, Dict, Optional, Text
    from .roots import RootSystem

logger = log.get_logger(__name__)


class BasisCache(object):
    def __init__(self, config, path=None):
        # type: (Dict[Text, Any], Optional[Text]) -> None
        self.config = config
        self.path = path or settings.resolve_path(config, "cache")

    def file_path(self, rs):
        # type: (RootSystem) -> Text
        return os.path.join(self.path, "nichols-%s.json" % rs.name)

    def dump_value(self, nb):
        # type: (NicholsBasis) -> Text
        return json.dumps(nb.to_document(), sort_keys=True, separators=(",", ":"))

    def load_value(self, rs, data, max_degree=None):
        # type: (RootSystem, Text, Optional[int]) -> NicholsBasis
        try:
            return NicholsBasis.from_document(rs, json.loads(data), max_degree=max_degree)
        except (ValueError, KeyError, TypeError, IndexError) as e:
            raise CacheError(e)

    def load(self, rs, max_degree=None):
        # type: (RootSystem, Optional[int]) -> Optional[NicholsBasis]
        path = self.file_path(rs)
        with CacheLock(rs.type, rs.rank):
            if not os.path.exists(path):
                return None
            with io.open(path, encoding="utf8") as f:
                data = f.read()
        nb = self.load_value(rs, data, max_degree=max_degree)
        logger.debug("Loaded %s through degree %d from %s" % (rs.name, nb.built, path))
        return nb

    def store(self, nb):
        # type: (NicholsBasis) -> None
        path = self.file_path(nb.rs)
        if not os.path.exists(self.path):
            os.makedirs(self.path)
        data = self.dump_value(nb)
        with CacheLock(nb.rs.type, nb.rs.rank):
            existing = self._cached_degree(path)
            if existing is not None and existing >= nb.built and not nb.complete:
                # Never replace a deeper basis with a shallower one
                return
            tmp_path = "%s.%d.tmp" % (path, os.getpid())
            with io.open(tmp_path, "w", encoding="utf8") as f:
                f.write(data)
            os.replace(tmp_path, path)
        logger.debug("Stored %s through degree %d in %s" % (nb.rs.name, nb.built, path))

    def _cached_degree(self, path):
        # type: (Text) -> Optional[int]
        if not os.path.exists(path):
            return None
        try:
            with io.open(path, encoding="utf8") as f:
                doc = json.load(f)
            return int(doc["degree"])
        except (ValueError, KeyError, TypeError):
            return None

    def invalidate(self, rs):
        # type: (RootSystem) -> None
        path = self.file_path(rs)
        with CacheLock(rs.type, rs.rank):
            if os.path.exists(path):
                os.unlink(path)

    def get_or_build(self, rs, max_degree=None):
        # type: (RootSystem, Optional[int]) -> NicholsBasis
        """Basis through max_degree (or complete), extending and storing as needed"""
        nb = None
        try:
            nb = self.load(rs, max_degree=max_degree)
        except CacheError as e:
            logger.warning("Discarding unreadable cache for %s: %s" % (rs.name, e))
            self.invalidate(rs)
        if nb is None:
            nb = NicholsBasis(rs)
        nb.max_degree = max_degree
        while not nb.complete and (max_degree is None or nb.built < max_degree):
            nb.extend_basis(nb.built + 1)
            self.store(nb)
        return nb
