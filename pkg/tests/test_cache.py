import os
import pytest
import json
from datetime import datetime, timezone, timedelta
from edge_powers.cache import CacheManager

@pytest.fixture
def temp_cache_dir(tmp_path):
    return str(tmp_path / "edge_powers_cache")


def _age(manager, key, days):
    stamp = (datetime.now(timezone.utc) - timedelta(days=days)).isoformat()
    manager.metadata["entries"][key]["timestamp"] = stamp
    manager._save_metadata()


def test_cache_save_load(temp_cache_dir):
    manager = CacheManager(temp_cache_dir)
    payload = {"entries": [{"i": 0, "alpha": ["a", "b"], "dim": 1}]}

    path = manager.save_json("table", payload, category="betti")
    assert os.path.exists(path)
    assert "betti" in path
    assert manager.exists("table", category="betti")
    assert manager.get_path("table", category="betti") == path
    assert manager.load_json("table", category="betti") == payload


def test_cache_missing(temp_cache_dir):
    manager = CacheManager(temp_cache_dir)
    assert not manager.exists("missing_key", category="betti")
    assert manager.load_json("missing_key", category="betti") is None


def test_cache_metadata_creation(temp_cache_dir):
    manager = CacheManager(temp_cache_dir)
    manager.save_json("meta_test", [1, 2], category="reports")

    meta_path = os.path.join(temp_cache_dir, "cache_metadata.json")
    with open(meta_path, 'r') as f:
        meta = json.load(f)
    assert meta["version"] == "2.0"
    entry = meta["entries"]["meta_test"]
    assert entry["category"] == "reports"
    assert entry["ttl_days"] == 30
    assert entry["extension"] == "json"
    assert "timestamp" in entry


def test_metadata_survives_reload(temp_cache_dir):
    CacheManager(temp_cache_dir).save_json("kept", {"x": 1}, category="betti")
    assert CacheManager(temp_cache_dir).load_json("kept", category="betti") == {"x": 1}


def test_betti_tables_never_expire(temp_cache_dir):
    manager = CacheManager(temp_cache_dir)
    manager.save_json("exact", {}, category="betti")
    _age(manager, "exact", 3650)
    assert manager.exists("exact", category="betti")


def test_reports_expire(temp_cache_dir):
    manager = CacheManager(temp_cache_dir)
    manager.save_json("report", {}, category="reports")
    _age(manager, "report", 31)
    assert not manager.exists("report", category="reports")
    assert "report" not in manager.metadata["entries"]


def test_cache_invalidation(temp_cache_dir):
    manager = CacheManager(temp_cache_dir)
    path = manager.save_json("inv_test", {}, category="betti")
    manager.invalidate("inv_test")
    assert not manager.exists("inv_test", category="betti")
    assert not os.path.exists(path)


def test_old_metadata_version_is_discarded(temp_cache_dir):
    os.makedirs(temp_cache_dir, exist_ok=True)
    meta_path = os.path.join(temp_cache_dir, "cache_metadata.json")
    with open(meta_path, 'w') as f:
        json.dump({"version": "1.0", "entries": {"old": {"category": "betti"}}}, f)

    manager = CacheManager(temp_cache_dir)
    assert manager.metadata == {"version": "2.0", "entries": {}}


def test_cache_metadata_corruption(temp_cache_dir):
    os.makedirs(temp_cache_dir, exist_ok=True)
    with open(os.path.join(temp_cache_dir, "cache_metadata.json"), 'w') as f:
        f.write("{invalid_json")

    manager = CacheManager(temp_cache_dir)
    assert manager.metadata["entries"] == {}


def test_unreadable_entry_is_dropped(temp_cache_dir):
    manager = CacheManager(temp_cache_dir)
    path = manager.save_json("broken", {}, category="betti")
    with open(path, "w") as f:
        f.write("{")
    assert manager.load_json("broken", category="betti") is None
    assert "broken" not in manager.metadata["entries"]


def test_cache_is_expired_invalid_timestamp(temp_cache_dir):
    """Invalid ISO timestamp -> treated as expired."""
    manager = CacheManager(temp_cache_dir)
    manager.metadata["entries"]["bad_ts"] = {
        "category": "reports",
        "timestamp": "not-a-date",
        "ttl_days": 30,
        "extension": "json",
    }
    assert manager._is_expired("bad_ts") is True


def test_cache_clear_expired(temp_cache_dir):
    manager = CacheManager(temp_cache_dir)
    manager.save_json("fresh", {}, category="reports")
    manager.save_json("stale", {}, category="reports")
    _age(manager, "stale", 60)

    assert manager.clear_expired() == 1
    assert "fresh" in manager.metadata["entries"]
    assert "stale" not in manager.metadata["entries"]


def test_entries_fan_out_by_key_prefix(temp_cache_dir):
    manager = CacheManager(temp_cache_dir)
    path = manager.save_json("ab12cd", {}, category="betti")
    assert path == os.path.join(temp_cache_dir, "betti", "ab", "ab12cd.json")
    assert not [name for name in os.listdir(os.path.dirname(path)) if name.endswith(".tmp")]


def test_fetch_computes_once(temp_cache_dir):
    manager = CacheManager(temp_cache_dir)
    calls = []

    def compute():
        calls.append(1)
        return {"dims": [1, 2]}

    assert manager.fetch("digest", "betti", compute) == {"dims": [1, 2]}
    assert manager.fetch("digest", "betti", compute) == {"dims": [1, 2]}
    assert len(calls) == 1


def test_fetch_recomputes_expired(temp_cache_dir):
    manager = CacheManager(temp_cache_dir)
    manager.fetch("digest", "reports", lambda: {"v": 1})
    _age(manager, "digest", 45)
    assert manager.fetch("digest", "reports", lambda: {"v": 2}) == {"v": 2}
