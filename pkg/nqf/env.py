"""Process-wide nqf configuration, as loaded from the ini file."""
from __future__ import absolute_import

from . import settings

MYPY = False
if MYPY:
    from typing import Any, Dict, Optional, Text

_config = None  # type: Optional[Dict]


class Environment(object):
    @property
    def config(self):
        # type: () -> Dict[Text, Any]
        assert _config is not None, "nqf configuration has not been loaded"
        return _config

    @property
    def configured(self):
        # type: () -> bool
        return _config is not None

    def ensure_config(self):
        # type: () -> Dict[Text, Any]
        """The loaded config, reading NQF_CONFIG the first time"""
        if _config is None:
            set_env(settings.load())
        return self.config


def set_env(config  # type: Dict
            ):
    global _config
    _config = config


def clear_env():
    # Only tests should really do this
    global _config
    _config = None
