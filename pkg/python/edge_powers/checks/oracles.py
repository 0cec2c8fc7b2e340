"""
Cross-checks of the Betti machinery against independent computations.
"""

from typing import Optional

from edge_powers.checks.base import CheckContext, Evaluation, StatementCheck
from edge_powers.fields import FieldSpec
from edge_powers.ideals import lcm_lattice
from edge_powers.taylor import taylor_strand_betti


class HochsterTaylor(StatementCheck):
    id = "hochster-taylor"
    relation = "Hochster b_{i,a}(I(G)^[k]) == Taylor-strand b_{i,a}(I(G)^[k]) for every a"

    def inapplicable(self, ctx: CheckContext, k: int) -> Optional[str]:
        reason = super().inapplicable(ctx, k)
        if reason is None:
            count = len(ctx.power(k).generators)
            if count > ctx.config.taylor_cap:
                reason = f"{count} generators exceed the Taylor cap {ctx.config.taylor_cap}"
        return reason

    def evaluate(self, ctx: CheckContext, k: int) -> Evaluation:
        ideal = ctx.power(k)
        table = ctx.table(ideal)
        for alpha in lcm_lattice(ideal):
            hochster = {i: dim for i, a, dim in table.entries if a == alpha}
            taylor = taylor_strand_betti(ideal, alpha, ctx.field, cap=ctx.config.taylor_cap)
            if hochster != taylor:
                return Evaluation(
                    False, _keyed(hochster), _keyed(taylor), {"alpha": ctx.graph.names_of(alpha)}
                )
        return Evaluation(True, table.regularity, table.regularity)


class FieldAgreement(StatementCheck):
    id = "field-agreement"
    relation = "Betti tables over the rationals and over GF(2) coincide"

    def evaluate(self, ctx: CheckContext, k: int) -> Evaluation:
        ideal = ctx.power(k)
        other = FieldSpec(2) if ctx.field.characteristic != 2 else FieldSpec(0)
        mine, theirs = ctx.table(ideal), ctx.table(ideal, other)
        return Evaluation(
            mine.entries == theirs.entries, mine.regularity, theirs.regularity,
            {"fields": [ctx.field.name, other.name]},
        )


def _keyed(numbers: dict) -> dict:
    return {str(i): dim for i, dim in sorted(numbers.items())}
