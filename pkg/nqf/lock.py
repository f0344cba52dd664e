"""File locks for on-disk state.

The only shared state on disk is the Nichols basis cache, one file per
root system. Several nqf processes may build or read the same root system
at once (e.g. parallel CI jobs sharing a cache directory), so reads and
writes of a cache file are done while holding the CacheLock for its root
system.

Locks are re-entrant within a process: taking a lock that this process
already holds is a no-op, so a function that loads the cache may call a
function that stores it without deadlocking.
"""
from __future__ import absolute_import
import abc
import os

import filelock
import six

from . import log
from . import settings
from .env import Environment

MYPY = False
if MYPY:
    from typing import Any, MutableMapping, Text

env = Environment()

logger = log.get_logger(__name__)


class LockError(Exception):
    pass


class Lock(six.with_metaclass(abc.ABCMeta, object)):
    locks = {}  # type: MutableMapping[Text, Lock]

    def __init__(self, *args):
        # type: (*Any) -> None
        self.path = self.lock_path(*args)
        lock_dir = os.path.dirname(self.path)
        if not os.path.exists(lock_dir):
            os.makedirs(lock_dir)
        self.lock = filelock.FileLock(self.path)

    def __enter__(self):
        # type: () -> Lock
        if self.path in self.locks:
            # If this is already locked by the current process
            # then locking again is a no-op
            return self.locks[self.path]
        self.locks[self.path] = self
        try:
            self.lock.acquire()
        except filelock.Timeout as e:
            del self.locks[self.path]
            raise LockError("Failed to acquire %s: %s" % (self.path, e))
        logger.debug("Acquired lock %s" % self.path)
        return self

    def __exit__(self, *args, **kwargs):
        # type: (*Any, **Any) -> None
        if self.locks.get(self.path) is not self:
            return
        del self.locks[self.path]
        self.lock.release()

    @staticmethod
    @abc.abstractmethod
    def lock_path(*args):
        # type: (*Any) -> Text
        """Return a path to the file representing the current lock"""
        pass


class CacheLock(Lock):
    locks = {}  # type: MutableMapping[Text, Lock]

    def __init__(self, type_label, rank):
        # type: (Text, int) -> None
        super(CacheLock, self).__init__(type_label, rank)

    @staticmethod
    def lock_path(*args):
        # type: (*Any) -> Text
        type_label, rank = args
        config = env.ensure_config()
        return os.path.join(settings.resolve_path(config, "locks"),
                            "%s%d.lock" % (type_label, rank))
