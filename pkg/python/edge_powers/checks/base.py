from abc import ABC, abstractmethod
from dataclasses import dataclass, field
from enum import Enum
from typing import Any, Callable, Dict, Hashable, List, Optional, Sequence, Tuple

from edge_powers.betti import BettiTable, betti_table
from edge_powers.cache import CacheManager
from edge_powers.config import Config, SizeCapError
from edge_powers.fields import FieldSpec
from edge_powers.graph import Graph, is_forest, popcount
from edge_powers.ideals import SquarefreeIdeal, squarefree_power
from edge_powers.matchings import (
    AdmissablePartition,
    induced_matching_number,
    matching_number,
    maximum_admissable_matching,
)


class Outcome(str, Enum):
    PASS = "pass"
    FAIL = "fail"
    INAPPLICABLE = "inapplicable"


@dataclass(frozen=True)
class Evaluation:
    """Both sides of a checked relation and whether it held."""
    passed: bool
    lhs: Any
    rhs: Any
    detail: Dict[str, Any] = field(default_factory=dict)


@dataclass(frozen=True)
class Verdict:
    """
    Result of checking one statement on one instance.

    A failing verdict carries everything needed to reproduce it: the
    serialized graph, ``k``, the field and the fuzz seed.
    """
    statement: str
    outcome: Outcome
    graph: Graph
    k: int
    field: str
    relation: str = ""
    lhs: Any = None
    rhs: Any = None
    detail: Dict[str, Any] = field(default_factory=dict)
    reason: Optional[str] = None
    seed: Optional[int] = None

    @property
    def passed(self) -> bool:
        return self.outcome is Outcome.PASS

    @property
    def failed(self) -> bool:
        return self.outcome is Outcome.FAIL

    def reproducer(self) -> Dict[str, Any]:
        return {
            "statement": self.statement,
            "graph": self.graph.to_json(),
            "k": self.k,
            "field": self.field,
            "seed": self.seed,
        }

    def to_json(self) -> Dict[str, Any]:
        payload: Dict[str, Any] = {
            "statement": self.statement,
            "outcome": self.outcome.value,
            "k": self.k,
            "field": self.field,
            "relation": self.relation,
            "lhs": self.lhs,
            "rhs": self.rhs,
            "detail": self.detail,
        }
        if self.reason is not None:
            payload["reason"] = self.reason
        if self.failed:
            payload["reproducer"] = self.reproducer()
        return payload


class CheckContext:
    """
    Per-instance memo of the invariants statements compare.

    Regularities come from Hochster Betti tables and matching invariants
    from the matchings module; nothing is derived from the other side.

    With ``full_sweeps`` statements that range over witnesses or deleted
    vertices visit all of them; without it they sample, as fuzz campaigns
    do.
    """

    def __init__(
        self,
        graph: Graph,
        field: Optional[FieldSpec] = None,
        config: Optional[Config] = None,
        cache: Optional[CacheManager] = None,
        workers: int = 1,
        full_sweeps: bool = True,
    ):
        self.graph = graph
        self.config = config or Config()
        self.field = field or self.config.field
        self.cache = cache
        self.workers = workers
        self.full_sweeps = full_sweeps
        self._memo: Dict[Hashable, Any] = {}

    def memoize(self, key: Hashable, compute: Callable[[], Any]) -> Any:
        if key not in self._memo:
            self._memo[key] = compute()
        return self._memo[key]

    @property
    def is_forest(self) -> bool:
        return bool(self.memoize("forest", lambda: is_forest(self.graph)))

    @property
    def mat(self) -> int:
        return int(self.memoize("mat", lambda: matching_number(self.graph)))

    @property
    def indm(self) -> int:
        return int(self.memoize("indm", lambda: induced_matching_number(self.graph)))

    def aim_witness(self, k: int) -> Optional[AdmissablePartition]:
        return self.memoize(("aim", k), lambda: maximum_admissable_matching(self.graph, k))

    def aim(self, k: int) -> int:
        witness = self.aim_witness(k)
        return 0 if witness is None else len(witness.matching)

    def power(self, k: int) -> SquarefreeIdeal:
        return self.memoize(("power", k), lambda: squarefree_power(self.graph, k))

    def table(self, ideal: SquarefreeIdeal, field: Optional[FieldSpec] = None) -> BettiTable:
        field = field or self.field
        return self.memoize(
            ("table", ideal.ambient, ideal.generators, field.characteristic),
            lambda: betti_table(ideal, field, workers=self.workers, cache=self.cache),
        )

    def reg(self, k: int) -> int:
        return self.table(self.power(k)).regularity

    def linear(self, k: int) -> bool:
        """Linear resolution of ``I(G)^[k]``, read off the Betti table."""
        return all(
            popcount(alpha) - i == 2 * k for i, alpha, _ in self.table(self.power(k)).entries
        )


def describe_range(values: Sequence[int]) -> str:
    if not values:
        return "an empty range"
    if list(values) == list(range(values[0], values[-1] + 1)):
        return f"{values[0]}..{values[-1]}" if len(values) > 1 else str(values[0])
    return ", ".join(str(v) for v in values)


class StatementCheck(ABC):
    """
    Abstract base class for one checkable statement.

    Subclasses set ``id`` and ``relation``, narrow ``k_values`` and
    ``inapplicable`` to the statement's hypotheses, and implement
    ``evaluate``. ``aliases`` are alternative names accepted on lookup;
    verdicts always carry ``id``.
    """

    id: str = ""
    aliases: Tuple[str, ...] = ()
    relation: str = ""
    forest_only: bool = False
    informational: bool = False
    betti_based: bool = True

    @property
    def names(self) -> Tuple[str, ...]:
        return (self.id,) + self.aliases

    def size_cap(self, config: Config) -> int:
        return config.betti_vertex_cap if self.betti_based else config.matching_vertex_cap

    def k_values(self, ctx: CheckContext) -> List[int]:
        """Values of ``k`` the statement speaks about on this graph."""
        return list(range(1, ctx.mat + 1))

    def inapplicable(self, ctx: CheckContext, k: int) -> Optional[str]:
        """Returns why the hypotheses fail, or ``None`` when they hold."""
        if self.forest_only and not ctx.is_forest:
            return "graph is not a forest"
        values = self.k_values(ctx)
        if k not in values:
            return f"k={k} not in {describe_range(values)}"
        return None

    @abstractmethod
    def evaluate(self, ctx: CheckContext, k: int) -> Evaluation:
        """
        Computes both sides of the relation.

        Args:
            ctx: Instance memo; hypotheses already hold.
            k: The power.

        Returns:
            The evaluation with JSON-serializable sides.
        """
        pass

    def run(self, ctx: CheckContext, k: int, seed: Optional[int] = None) -> Verdict:
        """
        Raises:
            SizeCapError: If the graph exceeds the statement's size cap.
        """
        cap = self.size_cap(ctx.config)
        if ctx.graph.n > cap:
            raise SizeCapError(
                f"{self.id} is capped at {cap} vertices, graph has {ctx.graph.n}"
            )
        common = dict(
            statement=self.id, graph=ctx.graph, k=k, field=ctx.field.name,
            relation=self.relation, seed=seed,
        )
        reason = self.inapplicable(ctx, k)
        if reason is not None:
            return Verdict(outcome=Outcome.INAPPLICABLE, reason=reason, **common)  # type: ignore[arg-type]
        result = self.evaluate(ctx, k)
        outcome = Outcome.PASS if result.passed else Outcome.FAIL
        return Verdict(
            outcome=outcome, lhs=result.lhs, rhs=result.rhs, detail=result.detail,
            **common,  # type: ignore[arg-type]
        )
