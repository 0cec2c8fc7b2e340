import os
import json
import logging
import tempfile
from datetime import datetime, timezone
from typing import Any, Callable, Dict, Optional

logger = logging.getLogger(__name__)

METADATA_VERSION = "2.0"
METADATA_FILE = "cache_metadata.json"


def _empty_metadata() -> Dict[str, Any]:
    return {"version": METADATA_VERSION, "entries": {}}


def _write_atomic(path: str, payload: Any) -> None:
    """Writes JSON through a sibling temp file so readers never see a partial file."""
    fd, tmp = tempfile.mkstemp(dir=os.path.dirname(path), suffix=".tmp")
    try:
        with os.fdopen(fd, "w") as f:
            json.dump(payload, f, indent=2)
            f.write("\n")
        os.replace(tmp, path)
    except BaseException:
        if os.path.exists(tmp):
            os.remove(tmp)
        raise


class CacheManager:
    """
    JSON artifact cache keyed by content digests.

    Entries live at ``<cache_dir>/<category>/<key[:2]>/<key>.json`` and are
    tracked in a version 2.0 metadata file:

    - version: "2.0"
    - entries: {
        "key": {
            "category": str,
            "timestamp": str (ISO8601),
            "ttl_days": int | None,
            "extension": "json"
        }
    }

    Metadata from any other version is discarded rather than migrated.
    """

    TTL_DAYS: Dict[str, Optional[int]] = {
        "betti": None,
        "reports": 30,
    }

    def __init__(self, cache_dir: str):
        self.cache_dir = cache_dir
        os.makedirs(self.cache_dir, exist_ok=True)
        self.metadata_path = os.path.join(self.cache_dir, METADATA_FILE)
        self.metadata = self._read_metadata()

    def _read_metadata(self) -> Dict[str, Any]:
        if not os.path.exists(self.metadata_path):
            return _empty_metadata()
        try:
            with open(self.metadata_path, "r") as f:
                metadata = json.load(f)
        except (json.JSONDecodeError, IOError):
            logger.error(f"Failed to load cache metadata from {self.metadata_path}. Initializing new metadata.")
            return _empty_metadata()
        if metadata.get("version") != METADATA_VERSION:
            logger.warning(f"Discarding cache metadata version {metadata.get('version')}")
            return _empty_metadata()
        return metadata

    def _save_metadata(self) -> None:
        try:
            _write_atomic(self.metadata_path, self.metadata)
        except IOError as e:
            logger.error(f"Failed to save cache metadata: {e}")

    def _entry_path(self, key: str, category: str) -> str:
        return os.path.join(self.cache_dir, category, key[:2], f"{key}.json")

    def _is_expired(self, key: str) -> bool:
        entry = self.metadata["entries"].get(key)
        if entry is None or entry.get("ttl_days") is None or entry.get("timestamp") is None:
            return False
        try:
            created = datetime.fromisoformat(entry["timestamp"])
            age = datetime.now(timezone.utc) - created
        except (ValueError, TypeError):
            return True
        return bool(age.total_seconds() > entry["ttl_days"] * 86400)

    def save_json(self, key: str, payload: Any, category: str) -> str:
        path = self._entry_path(key, category)
        os.makedirs(os.path.dirname(path), exist_ok=True)
        try:
            _write_atomic(path, payload)
        except IOError as e:
            logger.error(f"Failed to save data to cache path {path}: {e}")
            raise

        self.metadata["entries"][key] = {
            "category": category,
            "timestamp": datetime.now(timezone.utc).isoformat(),
            "ttl_days": self.TTL_DAYS.get(category),
            "extension": "json",
        }
        self._save_metadata()
        return path

    def load_json(self, key: str, category: str) -> Optional[Any]:
        """Returns the cached payload, or None when missing, expired or unreadable."""
        path = self.get_path(key, category)
        if path is None:
            return None
        try:
            with open(path, "r") as f:
                return json.load(f)
        except (json.JSONDecodeError, IOError) as e:
            logger.warning(f"Dropping unreadable cache entry {path}: {e}")
            self.invalidate(key)
            return None

    def fetch(self, key: str, category: str, compute: Callable[[], Any]) -> Any:
        """
        Returns the cached payload for ``key``, computing and storing it on a miss.

        Args:
            key: Content digest of the inputs.
            category: One of ``TTL_DAYS``.
            compute: Produces the JSON payload.
        """
        payload = self.load_json(key, category)
        if payload is not None:
            logger.debug(f"Cache hit for {category}/{key[:12]}")
            return payload
        payload = compute()
        self.save_json(key, payload, category)
        return payload

    def exists(self, key: str, category: str) -> bool:
        return self.get_path(key, category) is not None

    def get_path(self, key: str, category: str) -> Optional[str]:
        if self._is_expired(key):
            self.invalidate(key)
            return None
        path = self._entry_path(key, category)
        return path if os.path.exists(path) else None

    def invalidate(self, key: str) -> None:
        entry = self.metadata["entries"].pop(key, None)
        if entry is None:
            return
        path = self._entry_path(key, entry["category"])
        if os.path.exists(path):
            try:
                os.remove(path)
            except OSError as e:
                logger.error(f"Failed to remove cache file {path}: {e}")
        self._save_metadata()

    def clear_expired(self) -> int:
        """Clears all expired entries and returns how many were removed."""
        expired = [key for key in self.metadata["entries"] if self._is_expired(key)]
        for key in expired:
            self.invalidate(key)
        return len(expired)
