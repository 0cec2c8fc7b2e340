"""
Structural statements about leaves and perfect matchings.

The perfect-matching statements run on the graph itself when it has a
perfect matching, and otherwise on the subgraph induced by the vertices
of its first maximum matching.
"""

from typing import List, Optional, Tuple

from edge_powers.checks.base import CheckContext, Evaluation, StatementCheck
from edge_powers.graph import (
    Graph,
    bits,
    connected_components,
    distant_leaves,
    has_perfect_matching,
    remove_vertices,
)
from edge_powers.matchings import covered_vertices, enumerate_matchings


def perfect_matching_host(ctx: CheckContext) -> Optional[Tuple[Graph, str]]:
    """Graph with a perfect matching to run on, and where it came from."""

    def compute() -> Optional[Tuple[Graph, str]]:
        if ctx.graph.n and has_perfect_matching(ctx.graph):
            return ctx.graph, "graph"
        if ctx.mat == 0:
            return None
        first = next(enumerate_matchings(ctx.graph, ctx.mat))
        return ctx.graph.induced_subgraph(covered_vertices(ctx.graph, first)), "maximum-matching"

    return ctx.memoize("perfect-host", compute)


class _StructuralCheck(StatementCheck):
    betti_based = False

    def k_values(self, ctx: CheckContext) -> List[int]:
        return [1]


class DistantLeafExists(_StructuralCheck):
    id = "distant-leaf-exists"
    relation = "a forest with an edge has a distant leaf"
    forest_only = True

    def inapplicable(self, ctx: CheckContext, k: int) -> Optional[str]:
        reason = super().inapplicable(ctx, k)
        if reason is None and not ctx.graph.edges:
            reason = "graph has no edges"
        return reason

    def evaluate(self, ctx: CheckContext, k: int) -> Evaluation:
        found = [
            [ctx.graph.vertices[leaf], ctx.graph.vertices[support]]
            for leaf, support in distant_leaves(ctx.graph)
        ]
        return Evaluation(bool(found), len(found), ">= 1", {"distant_leaves": found})


class PerfectMatchingComponents(_StructuralCheck):
    id = "perfect-matching-components"
    relation = "G has a perfect matching iff every component does"

    def evaluate(self, ctx: CheckContext, k: int) -> Evaluation:
        graphs = [("graph", ctx.graph)]
        host = perfect_matching_host(ctx)
        if host is not None and host[1] != "graph":
            graphs.append((host[1], host[0]))
        for label, graph in graphs:
            whole = has_perfect_matching(graph)
            parts = all(
                has_perfect_matching(graph.induced_subgraph(c))
                for c in connected_components(graph)
            )
            if whole != parts:
                return Evaluation(False, whole, parts, {"on": label})
        return Evaluation(True, len(graphs), len(graphs))


class _PerfectHostCheck(_StructuralCheck):
    def inapplicable(self, ctx: CheckContext, k: int) -> Optional[str]:
        reason = super().inapplicable(ctx, k)
        if reason is None and perfect_matching_host(ctx) is None:
            reason = "graph has no edges"
        return reason


class PerfectMatchingVertexRemoval(_PerfectHostCheck):
    id = "perfect-matching-vertex-removal"
    relation = "G has a perfect matching implies G - x has none"

    def evaluate(self, ctx: CheckContext, k: int) -> Evaluation:
        host, origin = perfect_matching_host(ctx)  # type: ignore[misc]
        for v in range(host.n):
            if has_perfect_matching(remove_vertices(host, 1 << v)):
                return Evaluation(False, True, False, {"on": origin, "removed": host.vertices[v]})
        return Evaluation(True, False, False, {"on": origin, "removed": host.n})


class PerfectMatchingCrossRemoval(_PerfectHostCheck):
    id = "perfect-matching-cross-removal"
    relation = "x, y in different components of G with a perfect matching implies G - {x,y} has none"

    def inapplicable(self, ctx: CheckContext, k: int) -> Optional[str]:
        reason = super().inapplicable(ctx, k)
        if reason is None:
            host, _ = perfect_matching_host(ctx)  # type: ignore[misc]
            if len(connected_components(host)) < 2:
                reason = "perfect-matching host is connected"
        return reason

    def evaluate(self, ctx: CheckContext, k: int) -> Evaluation:
        host, origin = perfect_matching_host(ctx)  # type: ignore[misc]
        components = connected_components(host)
        pairs = 0
        for a, first in enumerate(components):
            for second in components[a + 1:]:
                for x in bits(first):
                    for y in bits(second):
                        pairs += 1
                        if has_perfect_matching(remove_vertices(host, (1 << x) | (1 << y))):
                            return Evaluation(
                                False, True, False,
                                {"on": origin, "removed": [host.vertices[x], host.vertices[y]]},
                            )
        return Evaluation(True, False, False, {"on": origin, "pairs": pairs})
