"""
Statement checks on single instances and seeded fuzz campaigns.

A campaign draws random graphs, runs every selected statement at every
``k`` it speaks about, and folds the verdicts into a ``Report``. Trials
are independent given their derived seeds, and reports merge
associatively in trial order, so parallel and sequential runs produce the
same JSON.
"""

import logging
import time
from dataclasses import dataclass, field
from functools import partial
from typing import Any, Dict, Iterable, List, Optional, Tuple

import numpy as np

from edge_powers.async_utils import map_concurrently
from edge_powers.cache import CacheManager
from edge_powers.checks import CATALOGUE, CheckContext, Verdict, canonical_id, get_check
from edge_powers.config import Config, SizeCapError
from edge_powers.fields import FieldSpec
from edge_powers.generators import (
    EXHAUSTIVE_LIMIT,
    all_forests,
    gen_random_forest,
    gen_random_graph,
)
from edge_powers.graph import Graph
from edge_powers.retry import derive_seed

logger = logging.getLogger(__name__)

MAX_FUZZ_VERTICES = 20
FAMILIES = ("forest", "graph")
SLACK_STATEMENT = canonical_id("conjecture-equality")

# Kinds of recorded per-instance errors; only crashes make a report fail.
ERROR_SIZE_CAP = "size-cap"
ERROR_TIMEOUT = "timeout"
ERROR_EXCEPTION = "exception"

__all__ = [
    "FuzzConfig",
    "Report",
    "SizeCapError",
    "StatementTally",
    "check",
    "check_all",
    "fuzz",
    "run_instance",
]


def check(
    statement: str,
    graph: Graph,
    k: int,
    field: Optional[FieldSpec] = None,
    config: Optional[Config] = None,
    seed: Optional[int] = None,
    cache: Optional[CacheManager] = None,
) -> Verdict:
    """
    Checks one statement on one instance.

    Args:
        statement: Statement id from the catalogue.
        graph: The instance.
        k: The power the statement is evaluated at.
        field: Coefficient field for Betti numbers; the config default
            otherwise.
        config: Size caps and sampling parameters.
        seed: Seed recorded in the reproducer.
        cache: Optional Betti table cache.

    Returns:
        Pass, fail or inapplicable with both sides of the relation. Every
        witness matching and deleted vertex the statement ranges over is
        visited.

    Raises:
        ValueError: For an unknown statement id.
        SizeCapError: If the graph exceeds the statement's size cap.
    """
    check_ = get_check(statement)
    ctx = CheckContext(graph, field, config, cache)
    return check_.run(ctx, k, seed)


def check_all(
    graph: Graph,
    statements: Optional[Iterable[str]] = None,
    k: Optional[int] = None,
    field: Optional[FieldSpec] = None,
    config: Optional[Config] = None,
    seed: Optional[int] = None,
    cache: Optional[CacheManager] = None,
    workers: int = 1,
) -> List[Verdict]:
    """
    Checks several statements on one graph, sharing computed invariants.

    Without ``k`` every statement runs at every ``k`` it speaks about, or
    once at ``k = 1`` to report why it is inapplicable.

    Raises:
        ValueError: For an unknown statement id.
        SizeCapError: If the graph exceeds a statement's size cap.
    """
    checks = [get_check(s) for s in statements] if statements else list(CATALOGUE)
    ctx = CheckContext(graph, field, config, cache, workers)
    verdicts = []
    for check_ in checks:
        ks = [k] if k is not None else (check_.k_values(ctx) or [1])
        verdicts.extend(check_.run(ctx, value, seed) for value in ks)
    return verdicts


@dataclass(frozen=True)
class FuzzConfig:
    """
    Parameters of a fuzz campaign.

    Attributes:
        n_max: Largest vertex count drawn; graphs have 1..n_max vertices.
        trials: Number of random graphs.
        seed: Base seed; trial ``t`` uses a seed derived from ``(seed, t)``.
        field: Field token for Betti numbers.
        statements: Statement ids to run; all of them when empty.
        family: ``"forest"`` or ``"graph"`` (``G(n, p)``).
        edge_probability: ``p`` for the graph family.
        exhaustive: Run every forest up to isomorphism on 0..n_max vertices
            instead of random trials.
        workers: Parallel trial workers.
        instance_timeout: Seconds one instance may spend before its
            remaining statements are recorded as timed out; unbounded when
            ``None``. Checked between statement evaluations.
    """
    n_max: int = 10
    trials: int = 200
    seed: int = 0
    field: str = "q"
    statements: Tuple[str, ...] = ()
    family: str = "forest"
    edge_probability: float = 0.3
    exhaustive: bool = False
    workers: int = 1
    instance_timeout: Optional[float] = None

    def __post_init__(self) -> None:
        if not 1 <= self.n_max <= MAX_FUZZ_VERTICES:
            raise ValueError(f"n_max must lie in 1..{MAX_FUZZ_VERTICES}, got {self.n_max}")
        if self.trials < 1:
            raise ValueError(f"trials must be at least 1, got {self.trials}")
        if self.family not in FAMILIES:
            raise ValueError(f"Unknown graph family '{self.family}'; expected one of {FAMILIES}")
        if not 0.0 <= self.edge_probability <= 1.0:
            raise ValueError(f"edge_probability must lie in [0, 1], got {self.edge_probability}")
        if self.exhaustive and (self.family != "forest" or self.n_max > EXHAUSTIVE_LIMIT):
            raise ValueError(f"Exhaustive mode covers forests with at most {EXHAUSTIVE_LIMIT} vertices")
        if self.workers < 1:
            raise ValueError(f"workers must be at least 1, got {self.workers}")
        if self.instance_timeout is not None and self.instance_timeout <= 0:
            raise ValueError(f"instance_timeout must be positive, got {self.instance_timeout}")
        FieldSpec.parse(self.field)
        for statement in self.statements:
            get_check(statement)

    @property
    def forest_only(self) -> bool:
        return self.family == "forest"

    def selected(self) -> List[str]:
        """Canonical ids of the chosen statements in catalogue order."""
        chosen = {canonical_id(s) for s in self.statements}
        return [c.id for c in CATALOGUE if not chosen or c.id in chosen]

    def to_json(self) -> Dict[str, Any]:
        return {
            "n_max": self.n_max,
            "trials": self.trials,
            "seed": self.seed,
            "field": FieldSpec.parse(self.field).name,
            "statements": self.selected(),
            "family": self.family,
            "edge_probability": self.edge_probability,
            "exhaustive": self.exhaustive,
            "instance_timeout": self.instance_timeout,
        }


@dataclass
class StatementTally:
    id: str
    informational: bool = False
    passed: int = 0
    failed: int = 0
    inapplicable: int = 0
    failures: List[Dict[str, Any]] = field(default_factory=list)
    errors: List[Dict[str, Any]] = field(default_factory=list)

    def merge(self, other: "StatementTally") -> "StatementTally":
        return StatementTally(
            self.id, self.informational,
            self.passed + other.passed,
            self.failed + other.failed,
            self.inapplicable + other.inapplicable,
            self.failures + other.failures,
            self.errors + other.errors,
        )

    @property
    def crashes(self) -> int:
        return sum(1 for e in self.errors if e.get("kind") == ERROR_EXCEPTION)

    def to_json(self) -> Dict[str, Any]:
        return {
            "id": self.id,
            "informational": self.informational,
            "pass": self.passed,
            "fail": self.failed,
            "inapplicable": self.inapplicable,
            "errors": self.errors,
            "failures": self.failures,
        }


@dataclass
class Report:
    """
    Aggregated verdicts of a campaign.

    ``slack_histogram`` counts ``reg - (aim + k)`` over forest instances;
    a positive slack would contradict the upper bound, a negative one is an
    instance where equality fails.
    """
    config: Dict[str, Any]
    tallies: Dict[str, StatementTally]
    trials: int = 0
    slack_histogram: Dict[int, int] = field(default_factory=dict)

    @classmethod
    def empty(cls, config: Dict[str, Any], statements: Iterable[str]) -> "Report":
        checks = [get_check(s) for s in statements]
        tallies = {c.id: StatementTally(c.id, c.informational) for c in checks}
        return cls(config, tallies)

    def tally(self, statement: str) -> StatementTally:
        """The tally of a statement given by id or alias."""
        return self.tallies[canonical_id(statement)]

    def record(self, verdict: Verdict) -> None:
        tally = self.tallies[verdict.statement]
        if verdict.passed:
            tally.passed += 1
        elif verdict.failed:
            tally.failed += 1
            tally.failures.append(verdict.to_json())
        else:
            tally.inapplicable += 1
        slack = verdict.detail.get("slack") if verdict.statement == SLACK_STATEMENT else None
        if slack is not None:
            self.slack_histogram[slack] = self.slack_histogram.get(slack, 0) + 1

    def record_error(
        self, statement: str, message: str, reproducer: Dict[str, Any], kind: str = ERROR_EXCEPTION
    ) -> None:
        self.tally(statement).errors.append(
            {"kind": kind, "message": message, "reproducer": reproducer}
        )

    def merge(self, other: "Report") -> "Report":
        tallies = dict(self.tallies)
        for key, tally in other.tallies.items():
            tallies[key] = tallies[key].merge(tally) if key in tallies else tally
        histogram = dict(self.slack_histogram)
        for slack, count in other.slack_histogram.items():
            histogram[slack] = histogram.get(slack, 0) + count
        return Report(self.config, tallies, self.trials + other.trials, histogram)

    @property
    def failures(self) -> int:
        """Failed verdicts of proved statements; informational ones never count."""
        return sum(t.failed for t in self.tallies.values() if not t.informational)

    @property
    def bound_violations(self) -> int:
        return sum(count for slack, count in self.slack_histogram.items() if slack > 0)

    @property
    def crashes(self) -> int:
        """Checks that raised; size caps and timeouts are not counted."""
        return sum(t.crashes for t in self.tallies.values())

    @property
    def ok(self) -> bool:
        return self.failures == 0 and self.bound_violations == 0 and self.crashes == 0

    def conjecture_equality(self) -> Dict[str, int]:
        return {
            "equal": self.slack_histogram.get(0, 0),
            "strict": sum(c for s, c in self.slack_histogram.items() if s < 0),
        }

    def to_json(self) -> Dict[str, Any]:
        return {
            "config": self.config,
            "trials": self.trials,
            "ok": self.ok,
            "failures": self.failures,
            "crashes": self.crashes,
            "statements": [self.tallies[s].to_json() for s in self.tallies],
            "conjecture_slack_histogram": {
                str(s): self.slack_histogram[s] for s in sorted(self.slack_histogram)
            },
            "conjecture_equality": self.conjecture_equality(),
        }


def run_instance(
    graph: Graph,
    statements: Iterable[str],
    field: FieldSpec,
    config: Config,
    seed: Optional[int] = None,
    report_config: Optional[Dict[str, Any]] = None,
    timeout: Optional[float] = None,
    full_sweeps: bool = False,
) -> Report:
    """
    Runs the statements at every ``k`` they speak about on one graph.

    Exceptions, size caps included, are recorded against the statement and
    never abort the run. Once ``timeout`` seconds have passed, statements
    not yet finished are recorded as timed out.
    """
    checks = [get_check(s) for s in statements]
    report = Report.empty(report_config or {}, [c.id for c in checks])
    report.trials = 1
    ctx = CheckContext(graph, field, config, full_sweeps=full_sweeps)
    deadline = None if timeout is None else time.monotonic() + timeout
    for check_ in checks:
        statement = check_.id
        try:
            ks = check_.k_values(ctx) or [1]
            for k in ks:
                if deadline is not None and time.monotonic() > deadline:
                    raise TimeoutError(f"instance exceeded {timeout}s before k={k}")
                report.record(check_.run(ctx, k, seed))
        except SizeCapError as exc:
            logger.warning(f"Skipping {statement} on {graph.n} vertices: {exc}")
            report.record_error(
                statement, str(exc), _reproducer(statement, graph, field, seed), ERROR_SIZE_CAP
            )
        except TimeoutError as exc:
            logger.warning(f"{statement} timed out on seed {seed}: {exc}")
            report.record_error(
                statement, str(exc), _reproducer(statement, graph, field, seed), ERROR_TIMEOUT
            )
        except Exception as exc:
            logger.error(f"{statement} raised on seed {seed}: {exc}")
            report.record_error(
                statement, f"{type(exc).__name__}: {exc}",
                _reproducer(statement, graph, field, seed),
            )
    return report


def _reproducer(statement: str, graph: Graph, field: FieldSpec, seed: Optional[int]) -> Dict[str, Any]:
    return {"statement": statement, "graph": graph.to_json(), "field": field.name, "seed": seed}


def trial_graph(cfg: FuzzConfig, trial: int) -> Tuple[Graph, int]:
    """The graph of trial ``trial`` and its derived seed."""
    seed = derive_seed(cfg.seed, trial)
    n = int(np.random.default_rng(seed).integers(1, cfg.n_max + 1))
    if cfg.family == "forest":
        return gen_random_forest(n, seed), seed
    return gen_random_graph(n, cfg.edge_probability, seed), seed


def _random_trial(cfg: FuzzConfig, config: Config, trial: int) -> Report:
    graph, seed = trial_graph(cfg, trial)
    logger.debug(f"Trial {trial}: {graph.n} vertices, {len(graph.edges)} edges, seed {seed}")
    return run_instance(
        graph, cfg.selected(), FieldSpec.parse(cfg.field), config, seed, cfg.to_json(),
        cfg.instance_timeout,
    )


def _exhaustive_trial(cfg: FuzzConfig, config: Config, graph: Graph) -> Report:
    return run_instance(
        graph, cfg.selected(), FieldSpec.parse(cfg.field), config, None, cfg.to_json(),
        cfg.instance_timeout,
    )


def fuzz(cfg: FuzzConfig, config: Optional[Config] = None) -> Report:
    """
    Runs a fuzz campaign.

    Args:
        cfg: Campaign parameters.
        config: Size caps and sampling parameters.

    Returns:
        The merged report; per-instance errors are recorded, not raised.
    """
    config = config or Config()
    if cfg.exhaustive:
        graphs = [g for n in range(cfg.n_max + 1) for g in all_forests(n)]
        logger.info(f"Exhaustive run over {len(graphs)} forests with at most {cfg.n_max} vertices")
        parts = map_concurrently(partial(_exhaustive_trial, cfg, config), graphs, cfg.workers)
    else:
        logger.info(f"Fuzzing {cfg.trials} {cfg.family} instances with n <= {cfg.n_max}, seed {cfg.seed}")
        parts = map_concurrently(partial(_random_trial, cfg, config), range(cfg.trials), cfg.workers)

    report = Report.empty(cfg.to_json(), cfg.selected())
    for part in parts:
        report = report.merge(part)
    logger.info(
        f"Fuzz finished: {report.trials} instances, {report.failures} failures, {report.crashes} crashes, "
        f"equality {report.conjecture_equality()}"
    )
    return report
