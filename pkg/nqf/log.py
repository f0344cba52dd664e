from __future__ import absolute_import
import logging
import os
import sys
from logging import handlers

from . import settings

root = logging.getLogger()

FORMAT = "[%(asctime)s] %(levelname)s:%(name)s:%(message)s"

stream_handler = None  # type: logging.Handler


@settings.configure
def setup(config, force=False):
    global stream_handler

    log_dir = settings.resolve_path(config, "logs")
    if not os.path.exists(log_dir):
        os.makedirs(log_dir)

    root.setLevel(logging.DEBUG)
    logging.getLogger("filelock").setLevel(logging.INFO)

    if root.handlers and not force:
        return

    while root.handlers:
        root.removeHandler(root.handlers[0])

    formatter = logging.Formatter(FORMAT)

    stream_handler = logging.StreamHandler(sys.stderr)
    stream_handler.setLevel(logging.INFO)
    stream_handler.setFormatter(formatter)

    # Construction traces for long builds go to the file at DEBUG
    file_handler = handlers.TimedRotatingFileHandler(os.path.join(log_dir, "nqf.log"),
                                                     when="midnight",
                                                     utc=True)
    file_handler.setLevel(logging.DEBUG)
    file_handler.setFormatter(formatter)

    root.addHandler(stream_handler)
    root.addHandler(file_handler)


def set_stream_level(level):
    """Change what reaches stderr; the log file keeps everything"""
    if stream_handler is not None:
        stream_handler.setLevel(level)


def get_logger(name):
    return logging.getLogger(name)


setup()
