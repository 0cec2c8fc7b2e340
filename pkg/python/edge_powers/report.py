"""
Report assembly and emission.

JSON payloads are written with a fixed key order and no timestamps so that
identical invocations produce identical bytes; the optional ``meta`` block
is the only place a timestamp appears. Text renderers produce the human
view of the same payloads.
"""

import json
import logging
import sys
from dataclasses import dataclass
from datetime import datetime, timezone
from typing import Any, Dict, List, Optional, Sequence, Tuple

from edge_powers.betti import BettiTable, betti_table
from edge_powers.cache import CacheManager
from edge_powers.checks import Verdict
from edge_powers.config import Config, SizeCapError
from edge_powers.fields import FieldSpec
from edge_powers.graph import Graph, distant_leaves, is_forest
from edge_powers.ideals import SquarefreeIdeal, squarefree_power
from edge_powers.matchings import (
    AdmissablePartition,
    induced_matching_number,
    matching_number,
    matching_to_json,
    maximum_admissable_matching,
)
from edge_powers.verify import Report

logger = logging.getLogger(__name__)

HISTOGRAM_WIDTH = 40


def to_json_text(payload: Dict[str, Any], with_meta: bool = False) -> str:
    """Serializes a payload with ``indent=2`` and a trailing newline."""
    if with_meta:
        from edge_powers import __version__

        payload = dict(payload)
        payload["meta"] = {
            "generated_at": datetime.now(timezone.utc).isoformat(timespec="seconds"),
            "version": __version__,
        }
    return json.dumps(payload, indent=2, sort_keys=False) + "\n"


def write_json(payload: Dict[str, Any], path: str, with_meta: bool = False) -> None:
    """Writes a payload to ``path``; ``-`` means stdout."""
    text = to_json_text(payload, with_meta)
    if path == "-":
        sys.stdout.write(text)
        return
    with open(path, "w", encoding="utf-8") as handle:
        handle.write(text)
    logger.info(f"Wrote report to {path}")


@dataclass(frozen=True)
class PowerSummary:
    """Invariants of one squarefree power ``I(G)^[k]``."""
    k: int
    aim: int
    witness: Optional[AdmissablePartition]
    ideal: SquarefreeIdeal
    table: Optional[BettiTable]

    @property
    def linear(self) -> Optional[bool]:
        if self.table is None:
            return None
        return self.table.regularity == 2 * self.k

    def to_json(self, graph: Graph) -> Dict[str, Any]:
        return {
            "k": self.k,
            "aim": self.aim,
            "aim_plus_k": self.aim + self.k,
            "generators": len(self.ideal.generators),
            "regularity": None if self.table is None else self.table.regularity,
            "linear": self.linear,
            "witness": None if self.witness is None else self.witness.to_json(graph),
            "betti": None if self.table is None else self.table.to_json(),
        }


@dataclass(frozen=True)
class Analysis:
    graph: Graph
    forest: bool
    mat: int
    indm: int
    distant: Tuple[Tuple[int, int], ...]
    aims: Tuple[int, ...]
    powers: Tuple[PowerSummary, ...]
    field: FieldSpec

    def aim(self, k: int) -> int:
        return self.aims[k - 1] if 1 <= k <= len(self.aims) else self.mat

    def to_json(self) -> Dict[str, Any]:
        names = self.graph.vertices
        return {
            "graph": self.graph.to_json(),
            "vertices": self.graph.n,
            "edges": len(self.graph.edges),
            "forest": self.forest,
            "mat": self.mat,
            "indm": self.indm,
            "distant_leaves": [[names[leaf], names[support]] for leaf, support in self.distant],
            "aim": {str(k): a for k, a in enumerate(self.aims, start=1)},
            "field": self.field.name,
            "powers": [p.to_json(self.graph) for p in self.powers],
        }


def analyze(
    graph: Graph,
    ks: Optional[Sequence[int]] = None,
    field: Optional[FieldSpec] = None,
    config: Optional[Config] = None,
    cache: Optional[CacheManager] = None,
    workers: int = 1,
) -> Analysis:
    """
    Matching invariants and squarefree-power regularities of a graph.

    Args:
        graph: The graph.
        ks: Powers to compute Betti tables for; ``1..mat`` by default.
            Powers above ``mat`` are the zero ideal and get no table.
        field: Coefficient field; the config default otherwise.
        config: Size caps.
        cache: Optional Betti table cache.
        workers: Parallel workers for the homology sweep.

    Raises:
        SizeCapError: If the graph exceeds the matching or Betti caps.
        ValueError: For ``k < 1``.
    """
    config = config or Config()
    field = field or config.field
    if graph.n > config.matching_vertex_cap:
        raise SizeCapError(
            f"Matching invariants are capped at {config.matching_vertex_cap} vertices, "
            f"graph has {graph.n}"
        )
    mat = matching_number(graph)
    ks = list(range(1, mat + 1)) if ks is None else list(ks)
    for k in ks:
        if k < 1:
            raise ValueError(f"k must be at least 1, got {k}")
    if any(k <= mat for k in ks) and graph.n > config.betti_vertex_cap:
        raise SizeCapError(
            f"Betti tables are capped at {config.betti_vertex_cap} vertices, graph has {graph.n}"
        )

    witnesses = {k: maximum_admissable_matching(graph, k) for k in range(1, mat + 1)}
    aims = tuple(0 if w is None else len(w.matching) for w in witnesses.values())
    powers = []
    for k in ks:
        ideal = squarefree_power(graph, k)
        table = None if ideal.is_zero else betti_table(ideal, field, workers=workers, cache=cache)
        witness = witnesses[k] if k <= mat else maximum_admissable_matching(graph, k)
        aim = 0 if witness is None else len(witness.matching)
        powers.append(PowerSummary(k, aim, witness, ideal, table))
        logger.debug(f"k={k}: {len(ideal.generators)} generators")

    forest = is_forest(graph)
    return Analysis(
        graph=graph,
        forest=forest,
        mat=mat,
        indm=induced_matching_number(graph),
        distant=tuple(distant_leaves(graph)) if forest else (),
        aims=aims,
        powers=tuple(powers),
        field=field,
    )


def _yes_no(value: Optional[bool]) -> str:
    return "-" if value is None else ("yes" if value else "no")


def render_betti(table: BettiTable, k: int) -> str:
    lines = [
        f"Betti table of I(G)^[{k}] over {table.field.label}:",
        table.render(),
        f"regularity: {table.regularity}",
        f"linear: {_yes_no(table.regularity == 2 * k)}",
    ]
    return "\n".join(lines)


def render_analysis(analysis: Analysis) -> str:
    graph = analysis.graph
    lines = [
        f"vertices: {graph.n}  edges: {len(graph.edges)}  forest: {_yes_no(analysis.forest)}",
        f"mat: {analysis.mat}  indm: {analysis.indm}",
    ]
    if analysis.forest:
        leaves = ", ".join(f"{graph.vertices[x]}({graph.vertices[y]})" for x, y in analysis.distant)
        lines.append(f"distant leaves: {leaves or '-'}")
    if analysis.aims:
        lines.append("aim: " + ", ".join(f"k={k}: {a}" for k, a in enumerate(analysis.aims, 1)))
    for power in analysis.powers:
        lines.append("")
        if power.table is None:
            lines.append(f"I(G)^[{power.k}] is the zero ideal")
            continue
        lines.append(
            f"k={power.k}: aim+k = {power.aim + power.k}, reg = {power.table.regularity}"
        )
        lines.append(render_betti(power.table, power.k))
    return "\n".join(lines)


def render_aim(graph: Graph, k: int, witness: Optional[AdmissablePartition]) -> str:
    if witness is None:
        return f"aim(G,{k}) = 0"
    parts = " | ".join(
        " ".join("-".join(pair) for pair in matching_to_json(graph, part)) for part in witness.parts
    )
    return f"aim(G,{k}) = {len(witness.matching)}\nwitness: {parts}"


def render_verdicts(verdicts: List[Verdict]) -> str:
    lines = []
    for v in verdicts:
        line = f"{v.outcome.value.upper():<12} {v.statement} k={v.k}"
        if v.reason is not None:
            line += f"  ({v.reason})"
        else:
            line += f"  lhs={v.lhs} rhs={v.rhs}"
        lines.append(line)
    return "\n".join(lines)


def render_fuzz(report: Report) -> str:
    lines = [f"instances: {report.trials}  failures: {report.failures}  crashes: {report.crashes}"]
    width = max(len(t.id) for t in report.tallies.values()) if report.tallies else 0
    for tally in report.tallies.values():
        marker = " (informational)" if tally.informational else ""
        lines.append(
            f"{tally.id:<{width}}  pass {tally.passed:>5}  fail {tally.failed:>4}  "
            f"n/a {tally.inapplicable:>5}  errors {len(tally.errors):>3}{marker}"
        )
    if report.slack_histogram:
        lines.append("")
        lines.append("reg - (aim + k) over forest instances:")
        peak = max(report.slack_histogram.values())
        for slack in sorted(report.slack_histogram):
            count = report.slack_histogram[slack]
            bar = "#" * max(1, round(HISTOGRAM_WIDTH * count / peak))
            lines.append(f"{slack:>4} {count:>6} {bar}")
        equality = report.conjecture_equality()
        lines.append(f"equal: {equality['equal']}  strict: {equality['strict']}")
    if report.bound_violations:
        lines.append(f"UPPER BOUND VIOLATED on {report.bound_violations} instances")
    return "\n".join(lines)
