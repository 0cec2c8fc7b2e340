from typing import List, Optional

from edge_powers.checks.base import CheckContext, Evaluation, StatementCheck
from edge_powers.graph import remove_vertices
from edge_powers.ideals import colon_by_monomial, squarefree_power


class ColonLeafEdge(StatementCheck):
    """
    Colon of a squarefree power by a leaf edge: for a leaf ``x`` with
    neighbor ``y``, ``I(G)^[k] : (xy) == I(G - {x, y})^[k-1]``. Both sides
    are built from scratch and compared as minimalized generator sets,
    including the case where both are zero.
    """

    id = "LEM-4.4"
    aliases = ("colon-leaf-edge",)
    relation = "I(G)^[k] : (xy) == I(G - {x,y})^[k-1]"
    betti_based = False

    def k_values(self, ctx: CheckContext) -> List[int]:
        return list(range(2, ctx.mat + 2))

    def inapplicable(self, ctx: CheckContext, k: int) -> Optional[str]:
        if not ctx.graph.leaves():
            return "graph has no leaf"
        return super().inapplicable(ctx, k)

    def evaluate(self, ctx: CheckContext, k: int) -> Evaluation:
        graph = ctx.graph
        power = squarefree_power(graph, k)
        checked = []
        for leaf, support in graph.leaves():
            edge = (1 << leaf) | (1 << support)
            lhs = colon_by_monomial(power, edge)
            rhs = squarefree_power(remove_vertices(graph, edge), k - 1, ambient=graph.vertices)
            checked.append(graph.names_of(edge))
            if lhs != rhs:
                return Evaluation(
                    False, lhs.to_json(), rhs.to_json(), {"leaf_edge": checked[-1]}
                )
        return Evaluation(True, len(checked), len(checked), {"leaf_edges": checked})
