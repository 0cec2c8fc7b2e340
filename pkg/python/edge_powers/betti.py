"""
Multigraded Betti numbers of squarefree monomial ideals via Hochster's
formula: ``b_{i,a}(I) = dim H~_{i-1}(K^a(I))``, where the upper-Koszul
complex ``K^a(I)`` consists of the subsets ``W`` of ``a`` with
``x^a / x^W`` in ``I``.
"""

import hashlib
import json
import logging
from dataclasses import dataclass
from functools import partial
from typing import Any, Dict, List, Optional, Sequence, Tuple

import numpy as np

from edge_powers.async_utils import map_concurrently
from edge_powers.cache import CacheManager
from edge_powers.fields import FieldSpec
from edge_powers.graph import bits, popcount
from edge_powers.homology import SimplicialComplex, reduced_homology_from_facets, subsets
from edge_powers.ideals import (
    SquarefreeIdeal,
    ZeroIdealError,
    lcm_lattice,
    lcm_of_generators,
)

logger = logging.getLogger(__name__)

CONVENTION = "ideal"


def upper_koszul(ideal: SquarefreeIdeal, alpha: int) -> SimplicialComplex:
    """
    Upper-Koszul complex of ``ideal`` at the squarefree degree ``alpha``.

    Its facets are ``alpha / g`` for the minimal generators ``g`` dividing
    ``x^alpha``; the complex is void when ``x^alpha`` is not in the ideal.
    """
    facets = [alpha & ~g for g in ideal.generators if g & ~alpha == 0]
    if not facets:
        return SimplicialComplex.void(ideal.ambient)
    return SimplicialComplex.from_facets(ideal.ambient, facets)


def betti_number(
    ideal: SquarefreeIdeal, alpha: int, field: Optional[FieldSpec] = None
) -> Dict[int, int]:
    """Nonzero ``b_{i,alpha}(I)`` keyed by homological index ``i``."""
    facets = [alpha & ~g for g in ideal.generators if g & ~alpha == 0]
    dims = reduced_homology_from_facets(ideal.ambient, facets, field)
    return {d + 1: dim for d, dim in sorted(dims.items())}


def _alpha_entry(
    ambient: Tuple[str, ...],
    generators: Tuple[int, ...],
    characteristic: int,
    alpha: int,
) -> Tuple[int, Dict[int, int]]:
    ideal = SquarefreeIdeal(ambient, generators)
    return alpha, betti_number(ideal, alpha, FieldSpec(characteristic))


@dataclass(frozen=True)
class BettiTable:
    """
    Multigraded Betti numbers ``b_{i,alpha}(I)`` of an ideal.

    Attributes:
        ambient: Variable names the multidegrees refer to.
        field: Coefficient field the numbers were computed over.
        entries: Nonzero ``(i, alpha, dim)`` triples ordered by ``i`` then
            multidegree.
    """
    ambient: Tuple[str, ...]
    field: FieldSpec
    entries: Tuple[Tuple[int, int, int], ...]

    def get(self, i: int, alpha: int) -> int:
        for entry_i, entry_alpha, dim in self.entries:
            if entry_i == i and entry_alpha == alpha:
                return dim
        return 0

    def as_dict(self) -> Dict[Tuple[int, int], int]:
        return {(i, alpha): dim for i, alpha, dim in self.entries}

    def graded(self) -> Dict[Tuple[int, int], int]:
        """Graded view ``b_{i,j}`` summing entries with ``|alpha| = j``."""
        table: Dict[Tuple[int, int], int] = {}
        for i, alpha, dim in self.entries:
            key = (i, popcount(alpha))
            table[key] = table.get(key, 0) + dim
        return dict(sorted(table.items()))

    def total(self) -> Dict[int, int]:
        totals: Dict[int, int] = {}
        for i, _, dim in self.entries:
            totals[i] = totals.get(i, 0) + dim
        return dict(sorted(totals.items()))

    @property
    def regularity(self) -> int:
        return max(popcount(alpha) - i for i, alpha, _ in self.entries)

    @property
    def projective_dimension(self) -> int:
        return max(i for i, _, _ in self.entries)

    def graded_matrix(self) -> Tuple[np.ndarray, int]:
        """
        Betti diagram as a matrix indexed by ``(j - i - offset, i)``.

        Returns:
            The matrix and the row offset (the smallest ``j - i``).
        """
        graded = self.graded()
        low = min(j - i for i, j in graded)
        matrix = np.zeros((self.regularity - low + 1, self.projective_dimension + 1), dtype=int)
        for (i, j), dim in graded.items():
            matrix[j - i - low, i] = dim
        return matrix, low

    def render(self) -> str:
        """Macaulay2-style display: a ``total:`` row, then one row per ``j - i``."""
        matrix, low = self.graded_matrix()
        columns = matrix.shape[1]
        totals = matrix.sum(axis=0)
        labels = ["", "total:"] + [f"{low + r}:" for r in range(matrix.shape[0])]
        width = [max(len(label) for label in labels)]
        for c in range(columns):
            width.append(max(len(str(c)), len(str(totals[c])), 1))

        def line(label: str, cells: Sequence[str]) -> str:
            padded = [f"{label:>{width[0]}}"]
            padded.extend(f"{cell:>{width[c + 1]}}" for c, cell in enumerate(cells))
            return " ".join(padded).rstrip()

        rows = [line("", [str(c) for c in range(columns)])]
        rows.append(line("total:", [str(t) for t in totals]))
        for r in range(matrix.shape[0]):
            cells = [str(v) if v else "." for v in matrix[r]]
            rows.append(line(f"{low + r}:", cells))
        return "\n".join(rows)

    def to_json(self) -> Dict[str, Any]:
        return {
            "convention": CONVENTION,
            "entries": [
                {"i": i, "alpha": [self.ambient[v] for v in bits(alpha)], "dim": dim}
                for i, alpha, dim in self.entries
            ],
            "graded": [{"i": i, "j": j, "dim": dim} for (i, j), dim in self.graded().items()],
            "regularity": self.regularity,
            "field": self.field.name,
        }

    @classmethod
    def from_json(cls, payload: Dict[str, Any], ambient: Sequence[str]) -> "BettiTable":
        index = {name: v for v, name in enumerate(ambient)}
        entries = []
        for entry in payload["entries"]:
            alpha = 0
            for name in entry["alpha"]:
                alpha |= 1 << index[name]
            entries.append((int(entry["i"]), alpha, int(entry["dim"])))
        return cls(tuple(ambient), FieldSpec.parse(payload["field"]), tuple(entries))


def _cache_key(ideal: SquarefreeIdeal, field: FieldSpec, alphas: str) -> str:
    canonical = json.dumps(
        {"ambient": list(ideal.ambient), "generators": ideal.to_json(),
         "field": field.name, "alphas": alphas},
        separators=(",", ":"),
    )
    return hashlib.sha256(canonical.encode("utf-8")).hexdigest()


def betti_table(
    ideal: SquarefreeIdeal,
    field: Optional[FieldSpec] = None,
    alphas: str = "lattice",
    workers: int = 1,
    cache: Optional[CacheManager] = None,
) -> BettiTable:
    """
    Computes every nonzero multigraded Betti number of ``ideal``.

    Args:
        ideal: A nonzero squarefree monomial ideal.
        field: Coefficient field; rationals by default.
        alphas: ``"lattice"`` sweeps the lcm lattice of the generators,
            which carries every nonzero Betti number; ``"all"`` sweeps
            every subset of the generator lcm.
        workers: Number of parallel workers for the per-degree homology.
        cache: Optional on-disk cache for finished tables.

    Raises:
        ZeroIdealError: For the zero ideal.
    """
    field = field or FieldSpec()
    if ideal.is_zero:
        raise ZeroIdealError("Betti numbers of the zero ideal are undefined")
    if alphas not in ("lattice", "all"):
        raise ValueError(f"Unknown degree sweep '{alphas}'")

    if cache is None:
        return _sweep(ideal, field, alphas, workers)
    payload = cache.fetch(
        _cache_key(ideal, field, alphas), "betti",
        lambda: _sweep(ideal, field, alphas, workers).to_json(),
    )
    return BettiTable.from_json(payload, ideal.ambient)


def _sweep(ideal: SquarefreeIdeal, field: FieldSpec, alphas: str, workers: int) -> BettiTable:
    if alphas == "lattice":
        degrees: List[int] = lcm_lattice(ideal)
    else:
        lcm = lcm_of_generators(ideal)
        degrees = sorted(
            (a for a in subsets(lcm) if ideal.contains(a)),
            key=lambda a: (popcount(a), tuple(bits(a))),
        )
    logger.debug(f"Sweeping {len(degrees)} multidegrees over {field.label}")

    compute = partial(_alpha_entry, ideal.ambient, ideal.generators, field.characteristic)
    results = map_concurrently(compute, degrees, workers)

    entries = []
    for alpha, numbers in results:
        for i, dim in numbers.items():
            entries.append((i, alpha, dim))
    entries.sort(key=lambda e: (e[0], popcount(e[1]), tuple(bits(e[1]))))
    return BettiTable(ideal.ambient, field, tuple(entries))


def regularity(ideal: SquarefreeIdeal, field: Optional[FieldSpec] = None, **kwargs: Any) -> int:
    """``max |alpha| - i`` over the nonzero Betti numbers."""
    return betti_table(ideal, field, **kwargs).regularity


def has_linear_resolution(
    ideal: SquarefreeIdeal, field: Optional[FieldSpec] = None, **kwargs: Any
) -> bool:
    """
    True iff every nonzero ``b_{i,alpha}`` has ``|alpha| - i`` equal to the
    generator degree.

    Raises:
        ValueError: If the ideal is not generated in a single degree.
        ZeroIdealError: For the zero ideal.
    """
    if ideal.is_zero:
        raise ZeroIdealError("Linearity of the zero ideal is undefined")
    degrees = ideal.degrees()
    if len(degrees) != 1:
        raise ValueError(f"Ideal is not equigenerated: degrees {degrees}")
    table = betti_table(ideal, field, **kwargs)
    return all(popcount(alpha) - i == degrees[0] for i, alpha, _ in table.entries)


def quotient_betti(table: BettiTable, i: int, j: int) -> int:
    """Graded ``b_{i,j}(S/I)``: shifts the ideal table by one homological step."""
    if i == 0:
        return 1 if j == 0 else 0
    return table.graded().get((i - 1, j), 0)
