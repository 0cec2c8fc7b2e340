"""
Matchings and the matching invariants of a graph.

A matching is a sorted tuple of edge indices into ``Graph.edges``. The
module computes the matching number, the induced matching number and the
k-admissable matching number, and certifies k-admissable matchings with
an explicit partition witness.
"""

import logging
import threading
from dataclasses import dataclass
from functools import lru_cache
from typing import Dict, Iterator, List, Optional, Sequence, Tuple

from sympy.utilities.iterables import multiset_partitions

from edge_powers.graph import (
    Edge,
    Graph,
    VertexSet,
    bits,
    edge_names,
    induces_forest,
    is_forest,
    popcount,
)

logger = logging.getLogger(__name__)

Matching = Tuple[int, ...]


def covered_vertices(graph: Graph, matching: Sequence[int]) -> VertexSet:
    """Returns the support of ``u_M``: every vertex covered by ``matching``."""
    mask = 0
    for e in matching:
        mask |= graph.edge_mask(graph.edges[e])
    return mask


def is_matching(graph: Graph, matching: Sequence[int]) -> bool:
    mask = 0
    for e in matching:
        if not 0 <= e < len(graph.edges):
            return False
        edge = graph.edge_mask(graph.edges[e])
        if mask & edge:
            return False
        mask |= edge
    return True


def matching_from_pairs(graph: Graph, pairs: Sequence[Tuple[str, str]]) -> Matching:
    """
    Converts vertex-name pairs into a matching.

    Raises:
        ValueError: If a pair is not an edge or two pairs share a vertex.
    """
    indices = tuple(
        sorted(graph.edge_index((graph.index(u), graph.index(v))) for u, v in pairs)
    )
    if not is_matching(graph, indices):
        raise ValueError(f"{list(pairs)} is not a matching")
    return indices


def matching_to_json(graph: Graph, matching: Sequence[int]) -> List[List[str]]:
    return edge_names(graph, [graph.edges[e] for e in sorted(matching)])


def enumerate_matchings(graph: Graph, k: int) -> Iterator[Matching]:
    """
    Yields every matching of size exactly ``k`` once, in lexicographic
    order of the sorted edge indices.
    """
    if k < 0:
        raise ValueError(f"Matching size must be non-negative, got {k}")
    masks = [graph.edge_mask(e) for e in graph.edges]
    m = len(masks)

    def extend(start: int, used: VertexSet, chosen: List[int]) -> Iterator[Matching]:
        if len(chosen) == k:
            yield tuple(chosen)
            return
        for e in range(start, m - (k - len(chosen)) + 1):
            if masks[e] & used:
                continue
            chosen.append(e)
            yield from extend(e + 1, used | masks[e], chosen)
            chosen.pop()

    yield from extend(0, 0, [])


def _peel_matching_number(graph: Graph) -> int:
    alive = graph.vertex_mask
    size = 0
    while True:
        leaf = next(
            (v for v in bits(alive) if popcount(graph.neighbors(v) & alive) == 1),
            None,
        )
        if leaf is None:
            return size
        support = next(bits(graph.neighbors(leaf) & alive))
        alive &= ~((1 << leaf) | (1 << support))
        size += 1


def _exhaustive_matching_number(graph: Graph) -> int:
    @lru_cache(maxsize=None)
    def best(alive: VertexSet) -> int:
        if not alive:
            return 0
        v = (alive & -alive).bit_length() - 1
        rest = alive & ~(1 << v)
        result = best(rest)
        for u in bits(graph.neighbors(v) & rest):
            result = max(result, 1 + best(rest & ~(1 << u)))
        return result

    return best(graph.vertex_mask)


def matching_number(graph: Graph, method: str = "auto") -> int:
    """
    Size of a maximum matching.

    Forests use the leaf peel: removing the lexicographically first leaf
    together with its neighbor lowers the matching number by exactly one.
    Other graphs fall back to exhaustive search.

    Args:
        graph: The graph.
        method: ``"auto"``, ``"peel"`` (forests only) or ``"exhaustive"``.
    """
    if method == "exhaustive":
        return _exhaustive_matching_number(graph)
    if method == "peel":
        if not is_forest(graph):
            raise ValueError("Leaf peeling requires a forest")
        return _peel_matching_number(graph)
    if method != "auto":
        raise ValueError(f"Unknown method '{method}'")
    if is_forest(graph):
        return _peel_matching_number(graph)
    return _exhaustive_matching_number(graph)


def is_gap(graph: Graph, e: Edge, f: Edge) -> bool:
    """
    True iff no edge of the graph joins an endpoint of ``e`` to one of ``f``.

    Raises:
        ValueError: If ``e`` and ``f`` share a vertex or are not edges.
    """
    graph.edge_index(e)
    graph.edge_index(f)
    e_mask, f_mask = graph.edge_mask(e), graph.edge_mask(f)
    if e_mask & f_mask:
        raise ValueError(f"Edges {e} and {f} share a vertex")
    reach = graph.neighbors(e[0]) | graph.neighbors(e[1])
    return not reach & f_mask


def is_induced_matching(graph: Graph, matching: Sequence[int]) -> bool:
    """True iff the covered vertices induce exactly the matching edges."""
    if not is_matching(graph, matching):
        return False
    return graph.edges_within(covered_vertices(graph, matching)) == len(matching)


def induced_matching_number(graph: Graph) -> int:
    """Maximum size of an induced matching, by branch and bound."""
    masks = [graph.edge_mask(e) for e in graph.edges]
    closed = [
        graph.closed_neighborhood(u) | graph.closed_neighborhood(v)
        for u, v in graph.edges
    ]
    best = 0

    def search(start: int, blocked: VertexSet, size: int) -> None:
        nonlocal best
        best = max(best, size)
        free = graph.vertex_mask & ~blocked
        if size + popcount(free) // 2 <= best:
            return
        for e in range(start, len(masks)):
            if masks[e] & blocked:
                continue
            search(e + 1, blocked | closed[e], size + 1)

    search(0, 0, 0)
    return best


def induced_matchings(graph: Graph) -> Iterator[Matching]:
    """Yields every nonempty induced matching in lexicographic order."""
    masks = [graph.edge_mask(e) for e in graph.edges]
    closed = [
        graph.closed_neighborhood(u) | graph.closed_neighborhood(v)
        for u, v in graph.edges
    ]

    def extend(start: int, blocked: VertexSet, chosen: List[int]) -> Iterator[Matching]:
        for e in range(start, len(masks)):
            if masks[e] & blocked:
                continue
            chosen.append(e)
            yield tuple(chosen)
            yield from extend(e + 1, blocked | closed[e], chosen)
            chosen.pop()

    yield from extend(0, 0, [])


def is_admissable_sequence(sizes: Sequence[int], k: int) -> bool:
    """True iff all sizes are positive and they sum to at most ``len + k - 1``."""
    return all(a >= 1 for a in sizes) and sum(sizes) <= len(sizes) + k - 1


@dataclass(frozen=True)
class AdmissablePartition:
    """
    Witness that a matching is k-admissable.

    Attributes:
        parts: Disjoint nonempty sub-matchings ordered by smallest edge
            index; their union is the certified matching.
        k: The admissability parameter.
    """
    parts: Tuple[Matching, ...]
    k: int

    @property
    def matching(self) -> Matching:
        return tuple(sorted(e for part in self.parts for e in part))

    @property
    def sizes(self) -> Tuple[int, ...]:
        return tuple(len(part) for part in self.parts)

    def to_json(self, graph: Graph) -> Dict:
        return {
            "k": self.k,
            "parts": [matching_to_json(graph, part) for part in self.parts],
        }


def _validate(graph: Graph, matching: Sequence[int], k: int) -> Matching:
    if k < 1:
        raise ValueError(f"k must be at least 1, got {k}")
    if not matching:
        raise ValueError("Matching must be nonempty")
    if not is_matching(graph, matching):
        raise ValueError(f"{list(matching)} is not a matching of the graph")
    return tuple(sorted(matching))


def _conflict_components(graph: Graph, matching: Matching) -> List[Matching]:
    reach = {
        e: graph.neighbors(graph.edges[e][0]) | graph.neighbors(graph.edges[e][1])
        for e in matching
    }
    masks = {e: graph.edge_mask(graph.edges[e]) for e in matching}
    remaining = list(matching)
    components: List[Matching] = []
    while remaining:
        stack = [remaining.pop(0)]
        component = set(stack)
        while stack:
            e = stack.pop()
            for f in list(remaining):
                if reach[e] & masks[f]:
                    remaining.remove(f)
                    component.add(f)
                    stack.append(f)
        components.append(tuple(sorted(component)))
    return sorted(components)


def is_k_admissable(
    graph: Graph, matching: Sequence[int], k: int
) -> Optional[AdmissablePartition]:
    """
    Certifies a k-admissable matching.

    Edges of the matching that do not form a gap must share a part, so the
    components of the conflict graph (edges joined when they are not a
    gap) form the finest legal partition. Coarsening it keeps the size sum,
    lowers the part count and cannot repair a cycle, so the matching is
    k-admissable iff the finest partition is.

    Returns:
        The finest witness partition, or ``None``.

    Raises:
        ValueError: If ``matching`` is empty or not a matching, or ``k < 1``.
    """
    matching = _validate(graph, matching, k)
    parts = _conflict_components(graph, matching)
    for part in parts:
        if not induces_forest(graph, covered_vertices(graph, part)):
            return None
    if not is_admissable_sequence([len(p) for p in parts], k):
        return None
    return AdmissablePartition(tuple(parts), k)


def _partition_is_admissable(
    graph: Graph, parts: Sequence[Sequence[int]], k: int
) -> bool:
    for i, first in enumerate(parts):
        for second in parts[i + 1:]:
            for e in first:
                for f in second:
                    if not is_gap(graph, graph.edges[e], graph.edges[f]):
                        return False
    if not is_admissable_sequence([len(p) for p in parts], k):
        return False
    return all(induces_forest(graph, covered_vertices(graph, p)) for p in parts)


def find_admissable_partition_exhaustive(
    graph: Graph, matching: Sequence[int], k: int
) -> Optional[AdmissablePartition]:
    """
    Searches every set partition of ``matching`` for a k-admissable one.

    This is the reference oracle for ``is_k_admissable``; its cost grows
    with the Bell number of ``len(matching)``.
    """
    matching = _validate(graph, matching, k)
    for partition in multiset_partitions(list(matching)):
        parts = sorted(tuple(sorted(p)) for p in partition)
        if _partition_is_admissable(graph, parts, k):
            return AdmissablePartition(tuple(parts), k)
    return None


class _Incumbent:
    """Best matching found so far; only ever tightens."""

    def __init__(self) -> None:
        self._lock = threading.Lock()
        self.size = 0
        self.witness: Optional[AdmissablePartition] = None

    def offer(self, witness: AdmissablePartition) -> bool:
        with self._lock:
            size = len(witness.matching)
            if size <= self.size:
                return False
            self.size = size
            self.witness = witness
            return True


def maximum_admissable_matching(
    graph: Graph, k: int
) -> Optional[AdmissablePartition]:
    """
    Finds a k-admissable matching of maximum size with its witness.

    Depth-first over edges in index order. Every nonempty subset of a
    k-admissable matching is k-admissable, so branches that lose the
    property are cut, as are branches whose free vertices cannot beat the
    incumbent.

    Returns:
        The witness of the first maximum matching found, or ``None`` when
        the graph has no k-admissable matching.
    """
    if k < 1:
        raise ValueError(f"k must be at least 1, got {k}")
    masks = [graph.edge_mask(e) for e in graph.edges]
    incumbent = _Incumbent()

    def search(start: int, used: VertexSet, chosen: List[int]) -> None:
        reachable = 0
        for e in range(start, len(masks)):
            if not masks[e] & used:
                reachable |= masks[e]
        if len(chosen) + popcount(reachable) // 2 <= incumbent.size:
            return
        for e in range(start, len(masks)):
            if masks[e] & used:
                continue
            chosen.append(e)
            witness = is_k_admissable(graph, chosen, k)
            if witness is not None:
                incumbent.offer(witness)
                search(e + 1, used | masks[e], chosen)
            chosen.pop()

    search(0, 0, [])
    logger.debug(f"aim(G, {k}) = {incumbent.size} on {graph.n} vertices")
    return incumbent.witness


def admissable_matching_number(graph: Graph, k: int) -> int:
    """Largest size of a k-admissable matching, 0 if there is none."""
    witness = maximum_admissable_matching(graph, k)
    return 0 if witness is None else len(witness.matching)


def admissable_matchings(graph: Graph, k: int) -> Iterator[AdmissablePartition]:
    """Yields a witness for every nonempty k-admissable matching, lexicographically."""
    if k < 1:
        raise ValueError(f"k must be at least 1, got {k}")
    masks = [graph.edge_mask(e) for e in graph.edges]

    def extend(start: int, used: VertexSet, chosen: List[int]) -> Iterator[AdmissablePartition]:
        for e in range(start, len(masks)):
            if masks[e] & used:
                continue
            chosen.append(e)
            witness = is_k_admissable(graph, chosen, k)
            if witness is not None:
                yield witness
                yield from extend(e + 1, used | masks[e], chosen)
            chosen.pop()

    yield from extend(0, 0, [])
