"""
Coefficient fields and exact rank computation.
"""

import logging
from dataclasses import dataclass
from typing import Any, Dict, Mapping, Optional, Set, Tuple

from sympy import isprime
from sympy.polys.domains import GF, QQ
from sympy.polys.domains.domain import Domain
from sympy.polys.matrices import DomainMatrix

logger = logging.getLogger(__name__)

SparseRows = Dict[int, Dict[int, int]]


@dataclass(frozen=True)
class FieldSpec:
    """
    Coefficient field: the rationals (``characteristic == 0``) or a
    prime field ``GF(p)``.
    """
    characteristic: int = 0

    def __post_init__(self) -> None:
        if self.characteristic != 0 and not isprime(self.characteristic):
            raise ValueError(f"Field characteristic must be 0 or prime, got {self.characteristic}")

    @classmethod
    def parse(cls, text: str) -> "FieldSpec":
        """Parses ``q``, ``f2`` or ``fp:<p>``."""
        token = text.strip().lower()
        if token in ("q", "qq", "0"):
            return cls(0)
        if token in ("f2", "gf2"):
            return cls(2)
        if token.startswith("fp:"):
            try:
                return cls(int(token[3:]))
            except ValueError:
                raise ValueError(f"Invalid prime in field '{text}'") from None
        raise ValueError(f"Unknown field '{text}'; expected q, f2 or fp:<p>")

    @property
    def name(self) -> str:
        if self.characteristic == 0:
            return "q"
        if self.characteristic == 2:
            return "f2"
        return f"fp:{self.characteristic}"

    @property
    def label(self) -> str:
        return "QQ" if self.characteristic == 0 else f"GF({self.characteristic})"

    @property
    def domain(self) -> Domain:
        return QQ if self.characteristic == 0 else GF(self.characteristic)

    def rank(self, entries: Mapping[int, Mapping[int, int]], rows: int, cols: int) -> int:
        """
        Exact rank of a sparse integer matrix read over this field.

        Pivots that are units over the integers (any nonzero entry over
        ``GF(p)``) are eliminated directly in integer arithmetic; whatever
        is left goes to a sympy ``DomainMatrix`` over the field.

        Args:
            entries: ``{row: {col: value}}`` with integer values.
            rows: Number of rows.
            cols: Number of columns.
        """
        if rows == 0 or cols == 0:
            return 0
        p = self.characteristic
        matrix: SparseRows = {}
        for r, row in entries.items():
            kept = {c: (v % p if p else v) for c, v in row.items()}
            kept = {c: v for c, v in kept.items() if v}
            if kept:
                matrix[r] = kept
        found, residual = unit_pivot_elimination(matrix, p)
        if not residual:
            return found
        domain = self.domain
        converted = {
            r: {c: domain.convert(v) for c, v in row.items()} for r, row in residual.items()
        }
        return found + int(DomainMatrix(converted, (rows, cols), domain).rank())


def _is_unit(value: int, p: int) -> bool:
    return value != 0 if p else value in (1, -1)


def _choose_pivot(rows: SparseRows, cols: Dict[int, Set[int]], p: int) -> Optional[Tuple[int, int]]:
    """Unit entry with the smallest Markowitz cost, or None."""
    best: Optional[Tuple[int, int]] = None
    best_cost = -1
    for r, row in rows.items():
        width = len(row) - 1
        for c, value in row.items():
            if not _is_unit(value, p):
                continue
            cost = width * (len(cols[c]) - 1)
            if best is None or cost < best_cost:
                best, best_cost = (r, c), cost
                if cost == 0:
                    return best
    return best


def unit_pivot_elimination(matrix: SparseRows, p: int = 0) -> Tuple[int, SparseRows]:
    """
    Gaussian elimination restricted to unit pivots.

    Over ``GF(p)`` every nonzero entry is a unit, so the matrix is reduced
    completely. Over the integers (``p == 0``) only ``+-1`` pivots are used,
    which keeps the arithmetic exact without fractions.

    Args:
        matrix: Sparse rows with nonzero entries, reduced mod ``p`` when
            ``p`` is prime. Not modified.
        p: Zero or a prime.

    Returns:
        The number of pivots and the rows left without a unit pivot. The rank
        over the field is the pivot count plus the rank of the residual.
    """
    rows: SparseRows = {r: dict(row) for r, row in matrix.items() if row}
    cols: Dict[int, Set[int]] = {}
    for r, row in rows.items():
        for c in row:
            cols.setdefault(c, set()).add(r)

    pivots = 0
    while rows:
        pivot = _choose_pivot(rows, cols, p)
        if pivot is None:
            break
        r, c = pivot
        prow = rows.pop(r)
        for cc in prow:
            cols[cc].discard(r)
        inverse = pow(prow[c], -1, p) if p else prow[c]
        for s in cols.pop(c):
            target = rows[s]
            factor = target[c] * inverse
            for cc, value in prow.items():
                updated = target.get(cc, 0) - factor * value
                if p:
                    updated %= p
                if updated:
                    if cc not in target:
                        cols[cc].add(s)
                    target[cc] = updated
                elif cc in target:
                    del target[cc]
                    if cc != c:
                        cols[cc].discard(s)
            if not target:
                del rows[s]
        pivots += 1
    return pivots, rows
