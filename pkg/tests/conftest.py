"""Shared pytest fixtures for edge_powers tests.

Provides the corpus graphs, a few hand-sized graphs and ideals, and an
isolated EDGE_POWERS_HOME so no test touches the user's cache or log file.
"""
import pytest

from edge_powers.corpus import load_corpus
from edge_powers.graph import Graph
from edge_powers.ideals import SquarefreeIdeal


@pytest.fixture(autouse=True)
def isolated_home(tmp_path, monkeypatch):
    """Points every Config and log file at a per-test directory."""
    home = tmp_path / "edge_powers_home"
    monkeypatch.setenv("EDGE_POWERS_HOME", str(home))
    for name in (
        "EDGE_POWERS_CACHE_DIR",
        "EDGE_POWERS_FIELD",
        "EDGE_POWERS_TAYLOR_CAP",
        "EDGE_POWERS_WORKERS",
        "EDGE_POWERS_LOG_LEVEL",
    ):
        monkeypatch.delenv(name, raising=False)
    return home


# ---------------------------------------------------------------------------
# Corpus graphs
# ---------------------------------------------------------------------------

@pytest.fixture
def cameron_walker_tree():
    """9-vertex tree with indm = mat = 2."""
    return load_corpus("cameron-walker-tree")


@pytest.fixture
def admissable_tree():
    """13-vertex tree a..m with aim(G, k) = 3, 4, 5, 6, 6, 6."""
    return load_corpus("admissable-tree")


@pytest.fixture
def distant_leaf_tree():
    """6-vertex tree x1..x6 with distant leaves x4 and x6."""
    return load_corpus("distant-leaf-tree")


# ---------------------------------------------------------------------------
# Small graphs
# ---------------------------------------------------------------------------

@pytest.fixture
def single_edge():
    return Graph.from_edges("ab", [("a", "b")])


@pytest.fixture
def triangle():
    return Graph.from_edges("abc", [("a", "b"), ("b", "c"), ("a", "c")])


@pytest.fixture
def path3():
    return Graph.from_edges("abc", [("a", "b"), ("b", "c")])


@pytest.fixture
def four_cycle():
    return Graph.from_edges("abcd", [("a", "b"), ("b", "c"), ("c", "d"), ("a", "d")])


@pytest.fixture
def two_edges():
    return Graph.from_edges("abcd", [("a", "b"), ("c", "d")])


# ---------------------------------------------------------------------------
# Small ideals
# ---------------------------------------------------------------------------

@pytest.fixture
def path_ideal():
    """(x1x2, x2x3)."""
    return SquarefreeIdeal.from_names(["x1", "x2", "x3"], [["x1", "x2"], ["x2", "x3"]])


@pytest.fixture
def gap_ideal():
    """(x1x2, x3x4): the edge ideal of two disjoint edges."""
    return SquarefreeIdeal.from_names(
        ["x1", "x2", "x3", "x4"], [["x1", "x2"], ["x3", "x4"]]
    )
