"""
Finite simple graphs over labeled vertices.

Vertices are opaque string identifiers mapped to dense indices
``0..n-1`` in declaration order. Vertex sets are plain ``int`` bitmasks
over those indices, so subset enumeration and set algebra stay cheap.
"""

import json
import logging
from dataclasses import dataclass, field
from functools import lru_cache
from pathlib import Path
from typing import Dict, Iterable, Iterator, List, Optional, Sequence, Tuple, Union

import numpy as np
from scipy.sparse import csr_matrix
from scipy.sparse.csgraph import connected_components as _csgraph_components

logger = logging.getLogger(__name__)

VertexSet = int
Edge = Tuple[int, int]


class GraphFormatError(ValueError):
    """Raised when a graph document cannot be parsed."""

    def __init__(self, message: str, line: Optional[int] = None):
        if line is not None:
            message = f"line {line}: {message}"
        super().__init__(message)
        self.line = line


def bits(mask: VertexSet) -> Iterator[int]:
    """Yields the indices set in ``mask`` in increasing order."""
    while mask:
        low = mask & -mask
        yield low.bit_length() - 1
        mask ^= low


def popcount(mask: VertexSet) -> int:
    return bin(mask).count("1")


@dataclass(frozen=True)
class Graph:
    """
    Immutable finite simple graph.

    Attributes:
        vertices: Vertex identifiers in declaration order.
        edges: Sorted index pairs ``(i, j)`` with ``i < j``, in
            lexicographic order. The position of an edge in this tuple is
            its edge index.
    """
    vertices: Tuple[str, ...]
    edges: Tuple[Edge, ...]
    _index: Dict[str, int] = field(init=False, repr=False, compare=False)
    _adjacency: Tuple[int, ...] = field(init=False, repr=False, compare=False)

    def __post_init__(self) -> None:
        index: Dict[str, int] = {}
        for position, name in enumerate(self.vertices):
            if name in index:
                raise ValueError(f"Duplicate vertex '{name}'")
            index[name] = position

        n = len(self.vertices)
        adjacency = [0] * n
        seen = set()
        for u, v in self.edges:
            if u == v:
                raise ValueError(f"Loop at vertex '{self.vertices[u]}'")
            if not (0 <= u < n and 0 <= v < n):
                raise ValueError(f"Edge ({u}, {v}) references an unknown vertex")
            if u > v:
                raise ValueError(f"Edge ({u}, {v}) is not normalized")
            if (u, v) in seen:
                raise ValueError(
                    f"Duplicate edge {self.vertices[u]} {self.vertices[v]}"
                )
            seen.add((u, v))
            adjacency[u] |= 1 << v
            adjacency[v] |= 1 << u
        if list(self.edges) != sorted(self.edges):
            raise ValueError("Edges must be sorted lexicographically")

        object.__setattr__(self, "_index", index)
        object.__setattr__(self, "_adjacency", tuple(adjacency))

    @classmethod
    def from_edges(
        cls, vertices: Iterable[str], edges: Iterable[Tuple[str, str]]
    ) -> "Graph":
        """Builds a graph from vertex names and name pairs."""
        names = tuple(vertices)
        index = {name: i for i, name in enumerate(names)}
        pairs = []
        for u, v in edges:
            if u not in index or v not in index:
                raise ValueError(f"Edge {u} {v} references an undeclared vertex")
            i, j = index[u], index[v]
            pairs.append((min(i, j), max(i, j)))
        return cls(names, tuple(sorted(pairs)))

    @property
    def n(self) -> int:
        return len(self.vertices)

    @property
    def vertex_mask(self) -> VertexSet:
        return (1 << self.n) - 1

    def index(self, name: str) -> int:
        """Returns the dense index of a vertex name."""
        try:
            return self._index[name]
        except KeyError:
            raise ValueError(f"Unknown vertex '{name}'") from None

    def mask_of(self, names: Iterable[str]) -> VertexSet:
        mask = 0
        for name in names:
            mask |= 1 << self.index(name)
        return mask

    def names_of(self, mask: VertexSet) -> List[str]:
        return [self.vertices[i] for i in bits(mask)]

    def neighbors(self, v: int) -> VertexSet:
        return self._adjacency[v]

    def closed_neighborhood(self, v: int) -> VertexSet:
        return self._adjacency[v] | (1 << v)

    def degree(self, v: int) -> int:
        return popcount(self._adjacency[v])

    def edge_mask(self, e: Edge) -> VertexSet:
        return (1 << e[0]) | (1 << e[1])

    def edge_index(self, e: Edge) -> int:
        """Returns the position of edge ``e`` in ``self.edges``."""
        pair = (min(e), max(e))
        try:
            return self.edges.index(pair)
        except ValueError:
            raise ValueError(
                f"{self.vertices[pair[0]]} {self.vertices[pair[1]]} is not an edge"
            ) from None

    def has_edge(self, u: int, v: int) -> bool:
        return bool(self._adjacency[u] >> v & 1)

    def leaves(self) -> List[Tuple[int, int]]:
        """Returns ``(leaf, neighbor)`` pairs ordered by leaf index."""
        return [
            (v, next(bits(self._adjacency[v])))
            for v in range(self.n)
            if self.degree(v) == 1
        ]

    def edges_within(self, mask: VertexSet) -> int:
        """Counts the edges of the induced subgraph on ``mask``."""
        return sum(popcount(self._adjacency[v] & mask) for v in bits(mask)) // 2

    def induced_subgraph(self, mask: VertexSet) -> "Graph":
        """Returns the induced subgraph on ``mask``, reindexed."""
        keep = list(bits(mask))
        remap = {old: new for new, old in enumerate(keep)}
        edges = tuple(
            (remap[u], remap[v])
            for u, v in self.edges
            if u in remap and v in remap
        )
        return Graph(tuple(self.vertices[i] for i in keep), edges)

    def to_edge_list(self) -> str:
        """Serializes to the text edge-list format."""
        lines = [f"vertex {name}" for name in self.vertices]
        lines.extend(
            f"{self.vertices[u]} {self.vertices[v]}" for u, v in self.edges
        )
        return "\n".join(lines) + "\n"

    def to_json(self) -> Dict[str, List]:
        return {
            "vertices": list(self.vertices),
            "edges": [[self.vertices[u], self.vertices[v]] for u, v in self.edges],
        }


def _build(
    vertices: List[str], edge_names: List[Tuple[str, str, Optional[int]]]
) -> Graph:
    index = {name: i for i, name in enumerate(vertices)}
    seen: Dict[Edge, Optional[int]] = {}
    for u, v, line in edge_names:
        i, j = index[u], index[v]
        pair = (min(i, j), max(i, j))
        if pair in seen:
            raise GraphFormatError(f"duplicate edge {u} {v}", line)
        seen[pair] = line
    return Graph(tuple(vertices), tuple(sorted(seen)))


def parse_graph(text: str, strict: bool = False) -> Graph:
    """
    Parses the text edge-list format.

    Lines are ``vertex <id>``, ``<id> <id>`` for an edge, ``#`` comments
    and blank lines. Edge endpoints auto-declare vertices unless
    ``strict`` is set.

    Args:
        text: The document.
        strict: Reject edges whose endpoints were not declared first.

    Returns:
        The graph, with vertices in declaration order.

    Raises:
        GraphFormatError: On malformed lines, loops, duplicate edges or
            duplicate vertex declarations, and undeclared endpoints in
            strict mode.
    """
    vertices: List[str] = []
    declared = set()
    explicit = set()
    edges: List[Tuple[str, str, Optional[int]]] = []

    for number, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        tokens = line.split()
        if tokens[0] == "vertex":
            if len(tokens) != 2:
                raise GraphFormatError(f"malformed vertex declaration '{line}'", number)
            name = tokens[1]
            if name in explicit:
                raise GraphFormatError(f"vertex '{name}' declared twice", number)
            explicit.add(name)
            if name not in declared:
                declared.add(name)
                vertices.append(name)
            continue
        if len(tokens) != 2:
            raise GraphFormatError(f"malformed line '{line}'", number)
        u, v = tokens
        if u == v:
            raise GraphFormatError(f"loop at vertex '{u}'", number)
        for name in (u, v):
            if name not in declared:
                if strict:
                    raise GraphFormatError(f"undeclared vertex '{name}'", number)
                declared.add(name)
                vertices.append(name)
        edges.append((u, v, number))

    return _build(vertices, edges)


def parse_graph_json(text: str, strict: bool = False) -> Graph:
    """Parses the JSON mirror format ``{"vertices": [...], "edges": [[u, v], ...]}``."""
    try:
        payload = json.loads(text)
    except json.JSONDecodeError as exc:
        raise GraphFormatError(f"invalid JSON: {exc}") from exc
    if not isinstance(payload, dict):
        raise GraphFormatError("expected a JSON object")

    vertices: List[str] = []
    declared = set()
    for name in payload.get("vertices", []):
        name = str(name)
        if name in declared:
            raise GraphFormatError(f"vertex '{name}' declared twice")
        declared.add(name)
        vertices.append(name)

    edges: List[Tuple[str, str, Optional[int]]] = []
    for entry in payload.get("edges", []):
        if not isinstance(entry, list) or len(entry) != 2:
            raise GraphFormatError(f"malformed edge {entry!r}")
        u, v = str(entry[0]), str(entry[1])
        if u == v:
            raise GraphFormatError(f"loop at vertex '{u}'")
        for name in (u, v):
            if name not in declared:
                if strict:
                    raise GraphFormatError(f"undeclared vertex '{name}'")
                declared.add(name)
                vertices.append(name)
        edges.append((u, v, None))

    return _build(vertices, edges)


def graph_to_json(graph: Graph) -> str:
    return json.dumps(graph.to_json(), indent=2) + "\n"


def load_graph(path: Union[str, Path], strict: bool = False) -> Graph:
    """Reads a graph file, choosing the parser by suffix."""
    path = Path(path)
    text = path.read_text(encoding="utf-8")
    if path.suffix.lower() == ".json":
        return parse_graph_json(text, strict=strict)
    return parse_graph(text, strict=strict)


def remove_vertices(graph: Graph, removed: VertexSet) -> Graph:
    """
    Returns ``G - U``, the induced subgraph on the remaining vertices.

    Raises:
        ValueError: If ``removed`` has bits outside the vertex set.
    """
    if removed & ~graph.vertex_mask:
        raise ValueError(f"Vertex set {removed:#x} contains unknown vertices")
    return graph.induced_subgraph(graph.vertex_mask & ~removed)


def connected_components(graph: Graph) -> List[VertexSet]:
    """Partitions the vertex set into components, ordered by smallest vertex."""
    if graph.n == 0:
        return []
    rows = [u for u, _ in graph.edges]
    cols = [v for _, v in graph.edges]
    adjacency = csr_matrix(
        (np.ones(len(rows), dtype=np.int8), (rows, cols)),
        shape=(graph.n, graph.n),
    )
    _, labels = _csgraph_components(adjacency, directed=False)
    groups: Dict[int, int] = {}
    for v, label in enumerate(labels):
        groups[int(label)] = groups.get(int(label), 0) | (1 << v)
    return sorted(groups.values(), key=lambda mask: (mask & -mask).bit_length())


def is_forest(graph: Graph) -> bool:
    """True iff every component has one edge fewer than it has vertices."""
    return len(graph.edges) == graph.n - len(connected_components(graph))


def induces_forest(graph: Graph, mask: VertexSet) -> bool:
    """True iff the induced subgraph on ``mask`` is acyclic."""
    return is_forest(graph.induced_subgraph(mask))


def distant_leaves(graph: Graph) -> List[Tuple[int, int]]:
    """
    Returns ``(leaf, support)`` pairs where ``support`` has at most one
    neighbor of degree greater than one, ordered by leaf index.
    """
    result = []
    for leaf, support in graph.leaves():
        heavy = sum(1 for w in bits(graph.neighbors(support)) if graph.degree(w) > 1)
        if heavy <= 1:
            result.append((leaf, support))
    return result


def _perfect_matching_search(graph: Graph) -> Optional[List[Edge]]:
    @lru_cache(maxsize=None)
    def search(uncovered: VertexSet) -> Optional[Tuple[Edge, ...]]:
        if not uncovered:
            return ()
        v = (uncovered & -uncovered).bit_length() - 1
        for u in bits(graph.neighbors(v) & uncovered):
            rest = search(uncovered & ~(1 << v) & ~(1 << u))
            if rest is not None:
                return ((min(u, v), max(u, v)),) + rest
        return None

    if graph.n % 2:
        return None
    found = search(graph.vertex_mask)
    return None if found is None else sorted(found)


def perfect_matching(graph: Graph) -> Optional[List[Edge]]:
    """Returns one perfect matching as sorted index pairs, or ``None``."""
    return _perfect_matching_search(graph)


def has_perfect_matching(graph: Graph) -> bool:
    """True iff some matching covers every vertex."""
    return _perfect_matching_search(graph) is not None


def edge_names(graph: Graph, edges: Sequence[Edge]) -> List[List[str]]:
    """Renders index pairs as sorted vertex-name pairs."""
    return [[graph.vertices[u], graph.vertices[v]] for u, v in edges]
