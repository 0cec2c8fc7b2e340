"""
Linear resolutions of squarefree powers.
"""

from typing import List

from edge_powers.checks.base import CheckContext, Evaluation, StatementCheck


class LinearIffAim(StatementCheck):
    id = "THM-5.8"
    aliases = ("linear-iff-aim",)
    relation = "reg(I(G)^[k]) == 2k iff aim(G,k) == k"
    forest_only = True

    def evaluate(self, ctx: CheckContext, k: int) -> Evaluation:
        reg, aim = ctx.reg(k), ctx.aim(k)
        linear, tight = reg == 2 * k, aim == k
        return Evaluation(linear == tight, linear, tight, {"reg": reg, "aim": aim})


class LinearPropagates(StatementCheck):
    id = "COR-5.9"
    aliases = ("linear-propagates",)
    relation = "I(G)^[k] linear implies I(G)^[k+1] linear"
    forest_only = True

    def k_values(self, ctx: CheckContext) -> List[int]:
        return list(range(1, ctx.mat))

    def evaluate(self, ctx: CheckContext, k: int) -> Evaluation:
        here = ctx.linear(k)
        if not here:
            return Evaluation(True, False, None, {"vacuous": True})
        following = ctx.linear(k + 1)
        return Evaluation(following, here, following)


class TopPowerLinear(StatementCheck):
    id = "THM-2.4"
    aliases = ("top-power-linear",)
    relation = "I(G)^[mat(G)] has a linear resolution"

    def k_values(self, ctx: CheckContext) -> List[int]:
        return [ctx.mat] if ctx.mat >= 1 else []

    def evaluate(self, ctx: CheckContext, k: int) -> Evaluation:
        return Evaluation(ctx.linear(k), ctx.reg(k), 2 * k)
