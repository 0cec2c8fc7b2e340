"""
Upper-Koszul complexes at covered vertex sets of matchings, and the
nonvanishing Betti numbers they carry.

Each statement looks at the induced subgraph ``H`` on the vertices a
matching ``M`` covers, where ``M`` is perfect. Single-instance checks visit
every qualifying matching up to ``betti_vertex_cap`` covered vertices;
fuzz campaigns take the first ``witness_samples`` within
``witness_vertex_cap``.
"""

from itertools import islice
from typing import Iterable, List, Optional

from edge_powers.betti import betti_number, upper_koszul
from edge_powers.checks.base import CheckContext, Evaluation, StatementCheck
from edge_powers.ideals import lcm_of_generators, squarefree_power
from edge_powers.matchings import (
    Matching,
    admissable_matchings,
    covered_vertices,
    induced_matchings,
    matching_to_json,
)


def witness_cap(ctx: CheckContext) -> int:
    """Largest covered vertex set whose Betti numbers are computed."""
    return ctx.config.betti_vertex_cap if ctx.full_sweeps else ctx.config.witness_vertex_cap


def _sample(ctx: CheckContext, matchings: Iterable[Matching], k: int, exact: Optional[int] = None) -> List[Matching]:
    cap = witness_cap(ctx)

    def fits(m: Matching) -> bool:
        if exact is not None and len(m) != exact:
            return False
        return len(m) >= k and 2 * len(m) <= cap

    found = (m for m in matchings if fits(m))
    if ctx.full_sweeps:
        return list(found)
    return list(islice(found, ctx.config.witness_samples))


def _top_betti(ctx: CheckContext, matching: Matching, k: int, i: int) -> int:
    """``b_{i, 2|M|}(I(H)^[k])`` for ``H`` the subgraph induced on ``u_M``."""
    sub = ctx.graph.induced_subgraph(covered_vertices(ctx.graph, matching))
    ideal = squarefree_power(sub, k)
    return betti_number(ideal, sub.vertex_mask, ctx.field).get(i, 0)


class _PerfectMatchingBetti(StatementCheck):
    def candidates(self, ctx: CheckContext, k: int) -> List[Matching]:
        raise NotImplementedError

    def inapplicable(self, ctx: CheckContext, k: int) -> Optional[str]:
        reason = super().inapplicable(ctx, k)
        if reason is None and not self.candidates(ctx, k):
            reason = f"no matching of size >= {k} within {witness_cap(ctx)} vertices"
        return reason

    def evaluate(self, ctx: CheckContext, k: int) -> Evaluation:
        checked = []
        for matching in self.candidates(ctx, k):
            index = len(matching) - k
            value = _top_betti(ctx, matching, k, index)
            checked.append(matching_to_json(ctx.graph, matching))
            if value == 0:
                return Evaluation(
                    False, value, "nonzero",
                    {"matching": checked[-1], "i": index, "j": 2 * len(matching)},
                )
        return Evaluation(True, "nonzero", "nonzero", {"matchings": checked})


class InducedPerfectBetti(_PerfectMatchingBetti):
    id = "LEM-4.8"
    aliases = ("induced-perfect-betti",)
    relation = "M perfect induced matching of H implies b_{|M|-k,2|M|}(I(H)^[k]) != 0"

    def k_values(self, ctx: CheckContext) -> List[int]:
        return list(range(1, ctx.indm + 1))

    def candidates(self, ctx: CheckContext, k: int) -> List[Matching]:
        return ctx.memoize(
            ("induced-candidates", k),
            lambda: _sample(ctx, induced_matchings(ctx.graph), k),
        )


class TwoAdmissablePerfectBetti(_PerfectMatchingBetti):
    id = "LEM-4.9"
    aliases = ("two-admissable-perfect-betti",)
    relation = "M perfect 2-admissable matching of H implies b_{|M|-k,2|M|}(I(H)^[k]) != 0"

    def k_values(self, ctx: CheckContext) -> List[int]:
        return list(range(2, ctx.aim(2) + 1))

    def candidates(self, ctx: CheckContext, k: int) -> List[Matching]:
        return ctx.memoize(
            ("two-admissable-candidates", k),
            lambda: _sample(ctx, (w.matching for w in admissable_matchings(ctx.graph, 2)), k),
        )


class DisconnectedKoszul(StatementCheck):
    id = "LEM-5.7"
    aliases = ("disconnected-koszul",)
    relation = "M k-admissable perfect of size k+1 implies K^{u_M}(I(H)^[k]) disconnected and b_{1,2k+2} != 0"

    def k_values(self, ctx: CheckContext) -> List[int]:
        return list(range(1, ctx.mat))

    def candidates(self, ctx: CheckContext, k: int) -> List[Matching]:
        return ctx.memoize(
            ("disconnected-candidates", k),
            lambda: _sample(
                ctx, (w.matching for w in admissable_matchings(ctx.graph, k)), k, exact=k + 1
            ),
        )

    def inapplicable(self, ctx: CheckContext, k: int) -> Optional[str]:
        reason = super().inapplicable(ctx, k)
        if reason is None and not self.candidates(ctx, k):
            reason = f"no {k}-admissable matching of size {k + 1} within the witness cap"
        return reason

    def evaluate(self, ctx: CheckContext, k: int) -> Evaluation:
        checked = []
        for matching in self.candidates(ctx, k):
            sub = ctx.graph.induced_subgraph(covered_vertices(ctx.graph, matching))
            ideal = squarefree_power(sub, k)
            connected = upper_koszul(ideal, sub.vertex_mask).is_connected()
            value = betti_number(ideal, sub.vertex_mask, ctx.field).get(1, 0)
            checked.append(matching_to_json(ctx.graph, matching))
            if connected or value == 0:
                return Evaluation(
                    False, {"connected": connected, "b1": value},
                    {"connected": False, "b1": "nonzero"},
                    {"matching": checked[-1]},
                )
        return Evaluation(
            True, {"connected": False, "b1": "nonzero"},
            {"connected": False, "b1": "nonzero"}, {"matchings": checked},
        )


class LcmFacets(StatementCheck):
    id = "lcm-facets"
    relation = "facets of K^m(I) are m/m_1, ..., m/m_t for m the lcm of the generators"

    def evaluate(self, ctx: CheckContext, k: int) -> Evaluation:
        ideal = ctx.power(k)
        lcm = lcm_of_generators(ideal)
        complex_ = upper_koszul(ideal, lcm)
        found = sorted(sorted(ctx.graph.names_of(f)) for f in complex_.facets())
        expected = sorted(sorted(ctx.graph.names_of(lcm & ~g)) for g in ideal.generators)
        return Evaluation(found == expected, found, expected)
