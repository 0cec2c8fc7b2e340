import logging
import os
import sys
from typing import List, Optional, Union

LOG_FORMAT = "%(asctime)s - %(name)s - %(levelname)s - %(message)s"


def _resolve_level(level: Union[int, str, None]) -> int:
    if isinstance(level, int):
        return level
    name = (level or os.environ.get("EDGE_POWERS_LOG_LEVEL", "INFO")).upper()
    return getattr(logging, name, logging.INFO)


def default_log_file() -> str:
    home = os.environ.get("EDGE_POWERS_HOME", os.path.expanduser("~/.edge_powers"))
    return os.path.join(home, "edge_powers.log")


def setup_logging(level: Union[int, str, None] = None, log_file: Optional[str] = None) -> None:
    """
    Configures logging for the edge_powers package.

    Console output goes to stderr so JSON reports on stdout stay clean.

    Args:
        level: Level number or name. If None, checks EDGE_POWERS_LOG_LEVEL
               then defaults to INFO.
        log_file: Optional log file path. Defaults to edge_powers.log under
                  $EDGE_POWERS_HOME; an empty string disables the file.
    """
    if log_file is None:
        log_file = default_log_file()

    handlers: List[logging.Handler] = [logging.StreamHandler(sys.stderr)]

    if log_file:
        log_dir = os.path.dirname(log_file)
        if log_dir and not os.path.exists(log_dir):
            try:
                os.makedirs(log_dir)
            except OSError:
                pass  # stream only

        if os.access(log_dir or ".", os.W_OK):
            handlers.append(logging.FileHandler(log_file))

    logging.basicConfig(
        level=_resolve_level(level),
        format=LOG_FORMAT,
        handlers=handlers,
        force=True,
    )
