"""
Catalogue of checkable statements, in report order.
"""

from typing import Dict, List

from edge_powers.checks.base import (
    CheckContext,
    Evaluation,
    Outcome,
    StatementCheck,
    Verdict,
)
from edge_powers.checks.bounds import (
    CameronWalker,
    ConjectureEquality,
    EdgeIdealRegularity,
    RestrictionMonotone,
    SecondPower,
    SecondPowerLower,
    UpperBound,
)
from edge_powers.checks.graphs import (
    DistantLeafExists,
    PerfectMatchingComponents,
    PerfectMatchingCrossRemoval,
    PerfectMatchingVertexRemoval,
)
from edge_powers.checks.ideals import ColonLeafEdge
from edge_powers.checks.koszul import (
    DisconnectedKoszul,
    InducedPerfectBetti,
    LcmFacets,
    TwoAdmissablePerfectBetti,
)
from edge_powers.checks.linearity import LinearIffAim, LinearPropagates, TopPowerLinear
from edge_powers.checks.matchings import (
    AdmissableSubsets,
    AimChain,
    AimDistantRemoval,
    AimStep,
    FinestPartition,
    LeafPeel,
)
from edge_powers.checks.oracles import FieldAgreement, HochsterTaylor

CATALOGUE: List[StatementCheck] = [
    UpperBound(),
    SecondPower(),
    SecondPowerLower(),
    CameronWalker(),
    LinearIffAim(),
    LinearPropagates(),
    TopPowerLinear(),
    ColonLeafEdge(),
    LeafPeel(),
    AimStep(),
    AdmissableSubsets(),
    InducedPerfectBetti(),
    TwoAdmissablePerfectBetti(),
    DisconnectedKoszul(),
    RestrictionMonotone(),
    ConjectureEquality(),
    EdgeIdealRegularity(),
    AimDistantRemoval(),
    AimChain(),
    DistantLeafExists(),
    PerfectMatchingComponents(),
    PerfectMatchingVertexRemoval(),
    PerfectMatchingCrossRemoval(),
    LcmFacets(),
    FinestPartition(),
    HochsterTaylor(),
    FieldAgreement(),
]

REGISTRY: Dict[str, StatementCheck] = {check.id: check for check in CATALOGUE}

_LOOKUP: Dict[str, StatementCheck] = {
    name.lower(): check for check in CATALOGUE for name in check.names
}


def statement_ids() -> List[str]:
    return [check.id for check in CATALOGUE]


def get_check(statement: str) -> StatementCheck:
    """
    Looks a statement up by id or alias, ignoring case.

    Raises:
        ValueError: For an unknown statement.
    """
    try:
        return _LOOKUP[statement.strip().lower()]
    except KeyError:
        raise ValueError(
            f"Unknown statement '{statement}'; known: {', '.join(statement_ids())}"
        ) from None


def canonical_id(statement: str) -> str:
    return get_check(statement).id


__all__ = [
    "CATALOGUE",
    "CheckContext",
    "Evaluation",
    "Outcome",
    "REGISTRY",
    "StatementCheck",
    "Verdict",
    "canonical_id",
    "get_check",
    "statement_ids",
]
