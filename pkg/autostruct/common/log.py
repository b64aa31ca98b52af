import logging

_enabled = False


def enable_logging(flag: bool = True):
    global _enabled
    _enabled = flag


def is_enabled() -> bool:
    return _enabled


def log(level, msg):
    if _enabled:
        logging.getLogger("autostruct").log(level, msg)
