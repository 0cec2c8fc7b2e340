"""
Built-in example graphs.
"""

from typing import Dict, List, Tuple

from edge_powers.graph import Graph, parse_graph

_DOCUMENTS: Dict[str, str] = {
    "cameron-walker-tree": """\
# Cameron-Walker tree: indm = mat = 2
vertex a
vertex b
vertex c
vertex d
vertex e
vertex f
vertex g
vertex h
vertex i
a b
a c
b d
b e
b f
c g
c h
c i
""",
    "admissable-tree": """\
# aim(G, k) = 3, 4, 5, 6, 6, 6 for k = 1..6
vertex a
vertex b
vertex c
vertex d
vertex e
vertex f
vertex g
vertex h
vertex i
vertex j
vertex k
vertex l
vertex m
a b
b d
c d
d e
e f
f g
f h
h i
e j
j k
j l
l m
""",
    "distant-leaf-tree": """\
# distant leaves x4 and x6
vertex x1
vertex x2
vertex x3
vertex x4
vertex x5
vertex x6
x1 x2
x2 x3
x2 x5
x3 x4
x5 x6
""",
}

ALIASES: Dict[str, str] = {
    "fig1": "cameron-walker-tree",
    "fig2": "admissable-tree",
    "fig3": "distant-leaf-tree",
}


def corpus_names() -> List[str]:
    return sorted(_DOCUMENTS)


def resolve(name: str) -> str:
    """Maps an alias to its canonical corpus name."""
    canonical = ALIASES.get(name, name)
    if canonical not in _DOCUMENTS:
        known = ", ".join(corpus_names() + sorted(ALIASES))
        raise ValueError(f"Unknown corpus graph '{name}'; known: {known}")
    return canonical


def corpus_document(name: str) -> str:
    return _DOCUMENTS[resolve(name)]


def load_corpus(name: str) -> Graph:
    return parse_graph(corpus_document(name), strict=True)


def corpus_summary() -> List[Tuple[str, int, int]]:
    """``(name, vertices, edges)`` for every corpus graph."""
    out = []
    for name in corpus_names():
        graph = load_corpus(name)
        out.append((name, graph.n, len(graph.edges)))
    return out
