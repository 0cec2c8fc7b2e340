"""
Regularity of squarefree powers against the k-admissable matching number.
"""

from typing import List, Optional

from edge_powers.checks.base import CheckContext, Evaluation, StatementCheck
from edge_powers.graph import remove_vertices
from edge_powers.ideals import squarefree_power


class UpperBound(StatementCheck):
    id = "THM-4.6"
    aliases = ("upper-bound",)
    relation = "reg(I(G)^[k]) <= aim(G,k) + k"
    forest_only = True

    def evaluate(self, ctx: CheckContext, k: int) -> Evaluation:
        reg, bound = ctx.reg(k), ctx.aim(k) + k
        return Evaluation(reg <= bound, reg, bound)


class SecondPower(StatementCheck):
    id = "THM-4.10"
    aliases = ("second-power",)
    relation = "reg(I(G)^[2]) == aim(G,2) + 2"
    forest_only = True

    def k_values(self, ctx: CheckContext) -> List[int]:
        return [2] if ctx.mat >= 2 else []

    def evaluate(self, ctx: CheckContext, k: int) -> Evaluation:
        reg, target = ctx.reg(2), ctx.aim(2) + 2
        return Evaluation(reg == target, reg, target)


class SecondPowerLower(StatementCheck):
    id = "COR-4.11"
    aliases = ("second-power-lower",)
    relation = "reg(I(G)^[2]) >= aim(G,2) + 2"

    def k_values(self, ctx: CheckContext) -> List[int]:
        return [2] if ctx.mat >= 2 else []

    def evaluate(self, ctx: CheckContext, k: int) -> Evaluation:
        reg, bound = ctx.reg(2), ctx.aim(2) + 2
        return Evaluation(reg >= bound, reg, bound)


class CameronWalker(StatementCheck):
    id = "PROP-4.12"
    aliases = ("cameron-walker",)
    relation = "indm(G) == mat(G) implies reg(I(G)^[k]) == aim(G,k) + k"
    forest_only = True

    def inapplicable(self, ctx: CheckContext, k: int) -> Optional[str]:
        reason = super().inapplicable(ctx, k)
        if reason is None and ctx.indm != ctx.mat:
            reason = f"indm={ctx.indm} differs from mat={ctx.mat}"
        return reason

    def evaluate(self, ctx: CheckContext, k: int) -> Evaluation:
        reg, target = ctx.reg(k), ctx.aim(k) + k
        return Evaluation(reg == target, reg, target, {"indm": ctx.indm, "mat": ctx.mat})


class ConjectureEquality(StatementCheck):
    id = "CONJ-4.13"
    aliases = ("conjecture-equality",)
    relation = "reg(I(G)^[k]) == aim(G,k) + k"
    forest_only = True
    informational = True

    def evaluate(self, ctx: CheckContext, k: int) -> Evaluation:
        reg, target = ctx.reg(k), ctx.aim(k) + k
        return Evaluation(reg == target, reg, target, {"slack": reg - target})


class EdgeIdealRegularity(StatementCheck):
    id = "edge-ideal-regularity"
    relation = "reg(I(G)) == indm(G) + 1"
    forest_only = True

    def k_values(self, ctx: CheckContext) -> List[int]:
        return [1] if ctx.mat >= 1 else []

    def evaluate(self, ctx: CheckContext, k: int) -> Evaluation:
        reg, target = ctx.reg(1), ctx.indm + 1
        return Evaluation(reg == target, reg, target)


def sample_vertices(n: int, samples: int) -> List[int]:
    """Up to ``samples`` evenly spaced vertex indices, deduplicated."""
    if n == 0 or samples < 1:
        return []
    if samples == 1:
        return [0]
    return sorted({round(i * (n - 1) / (samples - 1)) for i in range(samples)})


def deleted_vertices(ctx: CheckContext) -> List[int]:
    """Vertices whose deletion a restriction statement compares against."""
    if ctx.full_sweeps:
        return list(range(ctx.graph.n))
    return sample_vertices(ctx.graph.n, ctx.config.restriction_samples)


class RestrictionMonotone(StatementCheck):
    id = "COR-2.6"
    aliases = ("restriction-monotone",)
    relation = "b_{i,a}(I(G-v)^[k]) <= b_{i,a}(I(G)^[k]) and reg(I(G-v)^[k]) <= reg(I(G)^[k])"

    def evaluate(self, ctx: CheckContext, k: int) -> Evaluation:
        graph = ctx.graph
        full = ctx.table(ctx.power(k))
        full_entries = full.as_dict()
        worst_reg = 0
        checked = []
        for v in deleted_vertices(ctx):
            sub = remove_vertices(graph, 1 << v)
            ideal = squarefree_power(sub, k, ambient=graph.vertices)
            checked.append(graph.vertices[v])
            if ideal.is_zero:
                continue
            table = ctx.table(ideal)
            worst_reg = max(worst_reg, table.regularity)
            for (i, alpha), dim in table.as_dict().items():
                if dim > full_entries.get((i, alpha), 0):
                    return Evaluation(
                        False, dim, full_entries.get((i, alpha), 0),
                        {"removed": graph.vertices[v], "i": i, "alpha": graph.names_of(alpha)},
                    )
        return Evaluation(worst_reg <= full.regularity, worst_reg, full.regularity, {"removed": checked})
