from __future__ import absolute_import
from __future__ import print_function
import os
import sys

from collections import defaultdict
from six.moves.configparser import RawConfigParser

MYPY = False
if MYPY:
    from typing import Any, Dict, Text

_config = None


def read_ini(path):
    print("Loading config from path %s" % path, file=sys.stderr)
    parser = RawConfigParser()
    # make option names case sensitive
    parser.optionxform = str
    loaded = parser.read(path)
    if path not in loaded:
        raise ValueError("Failed to load ini file %s" % path)
    return parser


def get_root():
    # type: () -> Text
    if os.environ.get("NQF_ROOT"):
        return os.path.abspath(os.path.normpath(os.environ.get("NQF_ROOT")))
    return os.path.abspath(os.path.normpath(
        os.path.join(os.path.dirname(__file__), os.pardir)))


def get_ini_path(root):
    # type: (Text) -> Text
    path = os.environ.get("NQF_CONFIG",
                          os.path.join(root, "config", "dev", "nqf.ini"))
    if not os.path.isabs(path):
        path = os.path.join(root, path)
    return os.path.normpath(path)


def load():
    # type: () -> Dict[Text, Any]
    global _config
    if _config is None:
        root = get_root()
        _config = load_files(read_ini(get_ini_path(root)))
    return _config


def reset():
    # type: () -> None
    """Forget the loaded configuration so the next load() rereads the ini file"""
    global _config
    _config = None


def load_files(ini_nqf):
    root = get_root()

    def nested():
        # type: () -> Dict[Text, Any]
        return defaultdict(nested)

    config = nested()
    config["root"] = root

    for section in ini_nqf.sections():
        for name, value in ini_nqf.items(section):
            set_value(config, section, name, value)

    if os.environ.get("NQF_CACHE"):
        config["paths"]["cache"] = os.environ["NQF_CACHE"]
    return config


def configure(f):
    config = load()

    def inner(*args, **kwargs):
        return f(config, *args, **kwargs)

    inner.__name__ = f.__name__
    inner.__doc__ = f.__doc__

    return inner


def set_value(config, section, name, value):
    target = config[section]

    parts = name.split(".")
    for part in parts[:-1]:
        target = target[part]

    if "%ROOT%" in value:
        value = value.replace("%ROOT%", config["root"])

    if value.startswith("$"):
        value = os.environ.get(value[1:])
    elif value.lower() == "true":
        value = True
    elif value.lower() == "false":
        value = False
    else:
        try:
            value = int(value)
        except ValueError:
            pass
    target[parts[-1]] = value


def resolve_path(config, name):
    # type: (Dict[Text, Any], Text) -> Text
    """Absolute path for an entry of the [paths] section"""
    path = config["paths"][name]
    if not os.path.isabs(path):
        path = os.path.join(config["root"], path)
    return os.path.normpath(path)
