"""
Seeded instance generators for the fuzzer and the oracle campaigns.

Every generator is a pure function of its arguments: the same ``(n, seed)``
always produces the same graph, vertex names included.
"""

import logging
from itertools import combinations_with_replacement, product
from typing import Dict, Iterator, List, Sequence, Tuple

import networkx as nx
import numpy as np

from edge_powers.graph import Graph
from edge_powers.ideals import SquarefreeIdeal
from edge_powers.matchings import induced_matching_number, matching_number
from edge_powers.retry import retry_with_derived_seeds

logger = logging.getLogger(__name__)

EXHAUSTIVE_LIMIT = 9
NEW_BLOCK_PROBABILITY = 0.2
SUBDIVIDE_PROBABILITY = 0.75


class GenerationBudgetExhausted(RuntimeError):
    """Raised when generate-and-filter runs out of attempts."""


class _Rejected(ValueError):
    pass


def _names(n: int) -> Tuple[str, ...]:
    return tuple(f"v{i}" for i in range(n))


def _graph_from_pairs(n: int, pairs: Sequence[Tuple[int, int]]) -> Graph:
    edges = sorted({(min(u, v), max(u, v)) for u, v in pairs})
    return Graph(_names(n), tuple(edges))


def from_networkx(nx_graph: nx.Graph) -> Graph:
    """Converts a networkx graph with nodes ``0..n-1`` into a ``Graph``."""
    return _graph_from_pairs(nx_graph.number_of_nodes(), list(nx_graph.edges()))


def to_networkx(graph: Graph) -> nx.Graph:
    out = nx.Graph()
    out.add_nodes_from(range(graph.n))
    out.add_edges_from(graph.edges)
    return out


def _random_tree(size: int, rng: np.random.Generator) -> List[Tuple[int, int]]:
    """Uniform random labeled tree on ``0..size-1`` from a Prufer sequence."""
    if size <= 1:
        return []
    if size == 2:
        return [(0, 1)]
    sequence = [int(x) for x in rng.integers(0, size, size=size - 2)]
    return list(nx.from_prufer_sequence(sequence).edges())


def gen_random_forest(n: int, seed: int) -> Graph:
    """
    Random labeled forest on ``n`` vertices.

    Vertices are shuffled and cut into random blocks; each block carries a
    uniform random tree.

    Raises:
        ValueError: If ``n`` is negative.
    """
    if n < 0:
        raise ValueError(f"Vertex count must be non-negative, got {n}")
    rng = np.random.default_rng(seed)
    order = [int(v) for v in rng.permutation(n)]

    blocks: List[List[int]] = []
    for v in order:
        if not blocks or rng.random() < NEW_BLOCK_PROBABILITY:
            blocks.append([])
        blocks[-1].append(v)

    pairs = []
    for block in blocks:
        for a, b in _random_tree(len(block), rng):
            pairs.append((block[a], block[b]))
    return _graph_from_pairs(n, pairs)


def gen_random_graph(n: int, p: float, seed: int) -> Graph:
    """Erdos-Renyi ``G(n, p)`` graph."""
    if n < 0:
        raise ValueError(f"Vertex count must be non-negative, got {n}")
    if not 0.0 <= p <= 1.0:
        raise ValueError(f"Edge probability must lie in [0, 1], got {p}")
    return from_networkx(nx.gnp_random_graph(n, p, seed=seed))


def gen_random_ideal(
    n_vars: int, n_gens: int, seed: int, max_degree: int = 4
) -> SquarefreeIdeal:
    """
    Random squarefree ideal on ``x1..x{n_vars}``.

    Draws ``n_gens`` supports of degree ``1..max_degree`` and minimalizes,
    so the result may have fewer generators.
    """
    if n_vars < 1 or n_gens < 1:
        raise ValueError("Need at least one variable and one generator")
    rng = np.random.default_rng(seed)
    top = max(1, min(max_degree, n_vars))
    generators = []
    for _ in range(n_gens):
        degree = int(rng.integers(1, top + 1))
        support = rng.choice(n_vars, size=degree, replace=False)
        mask = 0
        for v in support:
            mask |= 1 << int(v)
        generators.append(mask)
    ambient = tuple(f"x{i + 1}" for i in range(n_vars))
    return SquarefreeIdeal.from_generators(ambient, generators)


def _cameron_walker_candidate(m: int, seed: int) -> Graph:
    rng = np.random.default_rng(seed)
    pairs: List[Tuple[int, int]] = []
    size = m
    for center in range(m):
        for _ in range(int(rng.integers(1, 4))):
            pairs.append((center, size))
            size += 1
    for a, b in _random_tree(m, rng):
        if rng.random() < SUBDIVIDE_PROBABILITY:
            pairs.extend([(a, size), (b, size)])
            size += 1
        else:
            pairs.append((a, b))

    graph = _graph_from_pairs(size, pairs)
    mat, indm = matching_number(graph), induced_matching_number(graph)
    if not mat == indm == m:
        raise _Rejected(f"candidate has mat={mat}, indm={indm}")
    return graph


def gen_cameron_walker(m: int, seed: int, attempts: int = 50) -> Graph:
    """
    Random tree with ``indm == mat == m``.

    Builds ``m`` centers with one to three pendant leaves each, joined
    along a random tree whose edges are mostly subdivided, and keeps the
    candidate only after certifying both matching numbers.

    Raises:
        ValueError: If ``m < 1``.
        GenerationBudgetExhausted: If no candidate passes within ``attempts``.
    """
    if m < 1:
        raise ValueError(f"Need at least one center, got {m}")
    try:
        for attempt, attempt_seed in retry_with_derived_seeds(seed, attempts, (_Rejected,)):
            with attempt:
                return _cameron_walker_candidate(m, attempt_seed)
    except _Rejected as exc:
        raise GenerationBudgetExhausted(
            f"No Cameron-Walker tree with m={m} after {attempts} attempts: {exc}"
        ) from exc
    raise GenerationBudgetExhausted(f"No attempts made for m={m}")


def _size_partitions(n: int, largest: int) -> Iterator[Tuple[int, ...]]:
    if n == 0:
        yield ()
        return
    for first in range(min(n, largest), 0, -1):
        for rest in _size_partitions(n - first, first):
            yield (first,) + rest


def _trees(size: int) -> List[List[Tuple[int, int]]]:
    if size == 1:
        return [[]]
    return [list(t.edges()) for t in nx.nonisomorphic_trees(size)]


def all_forests(n: int) -> Iterator[Graph]:
    """
    Yields every forest on ``n`` vertices once up to isomorphism.

    Raises:
        ValueError: If ``n`` exceeds the exhaustive limit.
    """
    if not 0 <= n <= EXHAUSTIVE_LIMIT:
        raise ValueError(f"Exhaustive enumeration supports 0..{EXHAUSTIVE_LIMIT} vertices, got {n}")
    tree_cache: Dict[int, List[List[Tuple[int, int]]]] = {}
    for sizes in _size_partitions(n, n):
        choices = []
        for size in sorted(set(sizes), reverse=True):
            trees = tree_cache.setdefault(size, _trees(size))
            count = sizes.count(size)
            choices.append([(size, combo) for combo in combinations_with_replacement(range(len(trees)), count)])
        for selection in product(*choices):
            pairs: List[Tuple[int, int]] = []
            offset = 0
            for size, combo in selection:
                for t in combo:
                    pairs.extend((offset + a, offset + b) for a, b in tree_cache[size][t])
                    offset += size
            yield _graph_from_pairs(n, pairs)
