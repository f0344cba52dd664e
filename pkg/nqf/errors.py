from __future__ import absolute_import
from . import log
MYPY = False
if MYPY:
    from typing import Any
    from typing import Dict
    from typing import Optional
    from typing import Text

logger = log.get_logger(__name__)


class AbortError(Exception):
    def __init__(self, msg, counterexample=None):
        # type: (Text, Optional[Dict[Text, Any]]) -> None
        Exception.__init__(self, msg)
        self.message = msg
        self.counterexample = counterexample


class ConfigError(AbortError):
    """Unsupported or inconsistent user configuration"""
    pass


class TruncationError(AbortError):
    """A Nichols degree above the built bound was requested"""
    pass


class InvariantViolation(AbortError):
    """An exact identity the engine relies on failed"""
    pass


class CacheError(Exception):
    def __init__(self, wrapped):
        Exception.__init__(self, str(wrapped))
        self.wrapped = wrapped

    def __getattr__(self, name):
        return getattr(self.wrapped, name)
