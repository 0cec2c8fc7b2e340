import os
import logging
from typing import Optional

from edge_powers.fields import FieldSpec

logger = logging.getLogger(__name__)

DEFAULT_TAYLOR_CAP = 12
DEFAULT_BETTI_VERTEX_CAP = 16
DEFAULT_MATCHING_VERTEX_CAP = 22


class SizeCapError(ValueError):
    """Raised when an instance exceeds a configured size cap."""


def _env_int(name: str, default: int) -> int:
    raw = os.environ.get(name)
    if raw is None:
        return default
    try:
        return int(raw)
    except ValueError:
        logger.warning(f"Ignoring non-integer {name}={raw!r}; using {default}")
        return default


class Config:
    """
    Global configuration for the edge_powers package.

    Constructor arguments win over environment variables, which win over
    the built-in defaults.

    Attributes:
        home (str): Base directory for logs and the cache.
        cache_path (str): Directory used for cached Betti tables.
        field (FieldSpec): Default coefficient field.
        taylor_cap (int): Largest generator count for the Taylor oracle.
        betti_vertex_cap (int): Largest graph checked by Betti-based statements.
        matching_vertex_cap (int): Largest graph checked by matching statements.
        workers (int): Default number of parallel workers.
        restriction_samples (int): Vertices sampled per restriction check.
        cameron_walker_attempts (int): Generation attempts before giving up.
        witness_vertex_cap (int): Largest covered vertex set whose Betti numbers
            the perfect-matching statements compute.
        witness_samples (int): Matchings checked per instance by those statements.
    """

    def __init__(
        self,
        cache_path: Optional[str] = None,
        home: Optional[str] = None,
        field: Optional[str] = None,
        taylor_cap: Optional[int] = None,
        betti_vertex_cap: int = DEFAULT_BETTI_VERTEX_CAP,
        matching_vertex_cap: int = DEFAULT_MATCHING_VERTEX_CAP,
        workers: Optional[int] = None,
        restriction_samples: int = 3,
        cameron_walker_attempts: int = 50,
        witness_vertex_cap: int = 10,
        witness_samples: int = 4,
    ):
        """
        Initialize the configuration.

        Args:
            cache_path: Optional custom cache path. If not provided,
                        defaults to $EDGE_POWERS_CACHE_DIR or <home>/cache.
            home: Base directory; defaults to $EDGE_POWERS_HOME or
                  ~/.edge_powers.
            field: Field token (``q``, ``f2``, ``fp:<p>``); defaults to
                   $EDGE_POWERS_FIELD or ``q``.
        """
        self.home = home or os.environ.get(
            "EDGE_POWERS_HOME", os.path.expanduser("~/.edge_powers")
        )
        self.cache_path = cache_path or os.environ.get(
            "EDGE_POWERS_CACHE_DIR", os.path.join(self.home, "cache")
        )
        self.field = FieldSpec.parse(field or os.environ.get("EDGE_POWERS_FIELD", "q"))
        self.taylor_cap = taylor_cap if taylor_cap is not None else _env_int(
            "EDGE_POWERS_TAYLOR_CAP", DEFAULT_TAYLOR_CAP
        )
        self.workers = workers if workers is not None else _env_int("EDGE_POWERS_WORKERS", 1)
        self.betti_vertex_cap = betti_vertex_cap
        self.matching_vertex_cap = matching_vertex_cap
        self.restriction_samples = restriction_samples
        self.cameron_walker_attempts = cameron_walker_attempts
        self.witness_vertex_cap = witness_vertex_cap
        self.witness_samples = witness_samples

        if self.workers < 1:
            raise ValueError(f"workers must be at least 1, got {self.workers}")

        if not os.path.exists(self.cache_path):
            try:
                os.makedirs(self.cache_path)
            except OSError as e:
                logger.error(f"Failed to create cache directory {self.cache_path}: {e}")
