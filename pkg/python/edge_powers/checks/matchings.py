"""
Statements about matching numbers and k-admissable matchings alone.
"""

from itertools import combinations
from typing import List, Optional

from edge_powers.checks.base import CheckContext, Evaluation, StatementCheck
from edge_powers.checks.bounds import deleted_vertices
from edge_powers.graph import distant_leaves, remove_vertices
from edge_powers.matchings import (
    admissable_matching_number,
    enumerate_matchings,
    find_admissable_partition_exhaustive,
    is_k_admissable,
    matching_number,
    matching_to_json,
)

ORACLE_VERTEX_LIMIT = 10
ORACLE_MATCHING_LIMIT = 6


class LeafPeel(StatementCheck):
    id = "LEM-4.3"
    aliases = ("leaf-peel",)
    relation = "mat(G) == mat(G - {x,y}) + 1 for a leaf x with neighbor y"
    forest_only = True
    betti_based = False

    def k_values(self, ctx: CheckContext) -> List[int]:
        return [1]

    def inapplicable(self, ctx: CheckContext, k: int) -> Optional[str]:
        reason = super().inapplicable(ctx, k)
        if reason is None and not ctx.graph.leaves():
            reason = "graph has no leaf"
        return reason

    def evaluate(self, ctx: CheckContext, k: int) -> Evaluation:
        graph = ctx.graph
        total = matching_number(graph, method="exhaustive")
        for leaf, support in graph.leaves():
            edge = (1 << leaf) | (1 << support)
            rest = matching_number(remove_vertices(graph, edge), method="exhaustive")
            if total != rest + 1:
                return Evaluation(False, total, rest + 1, {"leaf_edge": graph.names_of(edge)})
        return Evaluation(True, total, total, {"leaves": len(graph.leaves())})


class AimStep(StatementCheck):
    id = "LEM-3.5"
    aliases = ("aim-step",)
    relation = "aim(G,k) <= aim(G,k-1) + 1"
    betti_based = False

    def k_values(self, ctx: CheckContext) -> List[int]:
        return list(range(2, ctx.mat + 1))

    def evaluate(self, ctx: CheckContext, k: int) -> Evaluation:
        here, bound = ctx.aim(k), ctx.aim(k - 1) + 1
        return Evaluation(here <= bound, here, bound)


class AdmissableSubsets(StatementCheck):
    id = "LEM-3.8"
    aliases = ("admissable-subsets",)
    relation = "every nonempty subset of a k-admissable matching is k-admissable"
    betti_based = False

    def evaluate(self, ctx: CheckContext, k: int) -> Evaluation:
        witness = ctx.aim_witness(k)
        if witness is None:
            return Evaluation(True, 0, 0, {"vacuous": True})
        matching = witness.matching
        subsets = 0
        for size in range(1, len(matching) + 1):
            for subset in combinations(matching, size):
                subsets += 1
                if is_k_admissable(ctx.graph, subset, k) is None:
                    return Evaluation(
                        False, matching_to_json(ctx.graph, subset), "k-admissable",
                        {"witness": witness.to_json(ctx.graph)},
                    )
        return Evaluation(True, subsets, subsets, {"witness": witness.to_json(ctx.graph)})


class AimDistantRemoval(StatementCheck):
    id = "aim-distant-removal"
    relation = "aim(G - {x,y}, k-1) + 1 <= aim(G,k) for a distant leaf x with neighbor y"
    forest_only = True
    betti_based = False

    def k_values(self, ctx: CheckContext) -> List[int]:
        return list(range(2, ctx.mat + 1))

    def evaluate(self, ctx: CheckContext, k: int) -> Evaluation:
        graph = ctx.graph
        target = ctx.aim(k)
        worst = 0
        for leaf, support in distant_leaves(graph):
            edge = (1 << leaf) | (1 << support)
            value = admissable_matching_number(remove_vertices(graph, edge), k - 1) + 1
            worst = max(worst, value)
            if value > target:
                return Evaluation(False, value, target, {"leaf_edge": graph.names_of(edge)})
        return Evaluation(True, worst, target)


class AimChain(StatementCheck):
    """
    Monotonicity of the admissable matching numbers: in ``k``, against the
    matching number, and under deleting a vertex. On forests also
    ``aim(G,k) >= k`` and ``aim(G,mat) == mat``.
    """

    id = "aim-chain"
    relation = "aim(G,k-1) <= aim(G,k) <= mat(G) and aim(G-v,k) <= aim(G,k)"
    betti_based = False

    def evaluate(self, ctx: CheckContext, k: int) -> Evaluation:
        graph = ctx.graph
        aim = ctx.aim(k)
        problems = []
        if k >= 2 and ctx.aim(k - 1) > aim:
            problems.append(f"aim(G,{k - 1})={ctx.aim(k - 1)} exceeds aim(G,{k})={aim}")
        if aim > ctx.mat:
            problems.append(f"aim(G,{k})={aim} exceeds mat={ctx.mat}")
        if ctx.is_forest:
            if aim < k:
                problems.append(f"forest with aim(G,{k})={aim} below k")
            if k == ctx.mat and aim != ctx.mat:
                problems.append(f"forest with aim(G,mat)={aim} differs from mat={ctx.mat}")
        for v in deleted_vertices(ctx):
            sub = admissable_matching_number(remove_vertices(graph, 1 << v), k)
            if sub > aim:
                problems.append(f"aim(G-{graph.vertices[v]},{k})={sub} exceeds aim(G,{k})={aim}")
        return Evaluation(not problems, aim, ctx.mat, {"problems": problems} if problems else {})


class FinestPartition(StatementCheck):
    id = "finest-partition"
    relation = "conflict-component criterion agrees with search over all partitions"
    betti_based = False

    def inapplicable(self, ctx: CheckContext, k: int) -> Optional[str]:
        if ctx.graph.n > ORACLE_VERTEX_LIMIT:
            return f"partition oracle limited to {ORACLE_VERTEX_LIMIT} vertices"
        return super().inapplicable(ctx, k)

    def evaluate(self, ctx: CheckContext, k: int) -> Evaluation:
        graph = ctx.graph
        compared = 0
        for size in range(1, min(ctx.mat, ORACLE_MATCHING_LIMIT) + 1):
            for matching in enumerate_matchings(graph, size):
                fast = is_k_admissable(graph, matching, k) is not None
                slow = find_admissable_partition_exhaustive(graph, matching, k) is not None
                compared += 1
                if fast != slow:
                    return Evaluation(
                        False, fast, slow, {"matching": matching_to_json(graph, matching)}
                    )
        return Evaluation(True, compared, compared)
