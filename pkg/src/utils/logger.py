import logging

from src.utils.config import LOG_LEVEL, LOG_FORMAT

_configured = False


def configure_logging(level=None):
    """
    Configure the package root logger once; later calls only change the level.

    :param level: Level name or number, defaults to LOG_LEVEL
    :type level: str or int or None
    """
    global _configured
    root = logging.getLogger('src')
    if not _configured:
        handler = logging.StreamHandler()
        handler.setFormatter(logging.Formatter(LOG_FORMAT))
        root.addHandler(handler)
        root.propagate = False
        _configured = True
    root.setLevel(level or LOG_LEVEL)


def get_logger(name):
    """
    Get a module logger below the package root.

    :param name: Usually ``__name__`` of the calling module
    :type name: str
    :return: Logger instance
    :rtype: logging.Logger
    """
    configure_logging()
    return logging.getLogger(name)
