"""
Squarefree monomial ideals over a fixed ambient variable set.

A squarefree monomial is identified with its support, an ``int`` bitmask
over the ambient variables; the monomial ``1`` is the empty mask. Ideals
keep their generators minimalized and sorted, so ideal equality is
equality of generator sets.
"""

import logging
from dataclasses import dataclass
from typing import Any, Dict, FrozenSet, Iterable, List, Optional, Sequence, Tuple

from edge_powers.graph import Graph, bits, popcount
from edge_powers.matchings import covered_vertices, enumerate_matchings

logger = logging.getLogger(__name__)

SquarefreeMonomial = int


class ZeroIdealError(ValueError):
    """Raised when an operation is undefined on the zero ideal."""


def _monomial_key(mask: SquarefreeMonomial) -> Tuple[int, Tuple[int, ...]]:
    return popcount(mask), tuple(bits(mask))


def minimalize(generators: Iterable[SquarefreeMonomial]) -> Tuple[SquarefreeMonomial, ...]:
    """Drops duplicates and every generator divisible by another one."""
    ordered = sorted(set(generators), key=_monomial_key)
    kept: List[SquarefreeMonomial] = []
    for g in ordered:
        if not any(h & g == h for h in kept):
            kept.append(g)
    return tuple(kept)


@dataclass(frozen=True)
class SquarefreeIdeal:
    """
    Squarefree monomial ideal.

    Attributes:
        ambient: Variable names; one variable per graph vertex.
        generators: Minimal generators as bitmasks, ordered by degree then
            by sorted support. Empty for the zero ideal.
    """
    ambient: Tuple[str, ...]
    generators: Tuple[SquarefreeMonomial, ...]

    def __post_init__(self) -> None:
        limit = (1 << len(self.ambient)) - 1
        for g in self.generators:
            if g & ~limit:
                raise ValueError(f"Generator {g:#x} uses variables outside the ambient set")
        if minimalize(self.generators) != self.generators:
            raise ValueError("Generators must be minimal and canonically ordered")

    @classmethod
    def from_generators(
        cls, ambient: Sequence[str], generators: Iterable[SquarefreeMonomial]
    ) -> "SquarefreeIdeal":
        return cls(tuple(ambient), minimalize(generators))

    @classmethod
    def from_names(
        cls, ambient: Sequence[str], generators: Iterable[Iterable[str]]
    ) -> "SquarefreeIdeal":
        index = {name: i for i, name in enumerate(ambient)}
        masks = []
        for names in generators:
            mask = 0
            for name in names:
                if name not in index:
                    raise ValueError(f"Unknown variable '{name}'")
                mask |= 1 << index[name]
            masks.append(mask)
        return cls.from_generators(ambient, masks)

    @property
    def is_zero(self) -> bool:
        return not self.generators

    @property
    def is_unit(self) -> bool:
        return 0 in self.generators

    def monomial(self, names: Iterable[str]) -> SquarefreeMonomial:
        mask = 0
        for name in names:
            try:
                mask |= 1 << self.ambient.index(name)
            except ValueError:
                raise ValueError(f"Unknown variable '{name}'") from None
        return mask

    def names_of(self, mask: SquarefreeMonomial) -> List[str]:
        return [self.ambient[i] for i in bits(mask)]

    def contains(self, mask: SquarefreeMonomial) -> bool:
        """True iff the squarefree monomial lies in the ideal."""
        return any(g & mask == g for g in self.generators)

    def degrees(self) -> List[int]:
        return sorted({popcount(g) for g in self.generators})

    def generator_sets(self) -> FrozenSet[FrozenSet[str]]:
        """Generators as variable-name sets, comparable across ambients."""
        return frozenset(frozenset(self.names_of(g)) for g in self.generators)

    def variables_used(self) -> SquarefreeMonomial:
        mask = 0
        for g in self.generators:
            mask |= g
        return mask

    def to_json(self) -> List[List[str]]:
        return [self.names_of(g) for g in self.generators]


def _embed(graph: Graph, ambient: Optional[Sequence[str]]) -> Tuple[Tuple[str, ...], List[int]]:
    if ambient is None:
        return graph.vertices, list(range(graph.n))
    ambient = tuple(ambient)
    index = {name: i for i, name in enumerate(ambient)}
    missing = [name for name in graph.vertices if name not in index]
    if missing:
        raise ValueError(f"Ambient variables do not cover vertices {missing}")
    return ambient, [index[name] for name in graph.vertices]


def _relabel(mask: int, positions: List[int]) -> int:
    out = 0
    for v in bits(mask):
        out |= 1 << positions[v]
    return out


def edge_ideal(graph: Graph, ambient: Optional[Sequence[str]] = None) -> SquarefreeIdeal:
    """Ideal generated by ``x_i x_j`` for every edge; zero when edgeless."""
    names, positions = _embed(graph, ambient)
    gens = [_relabel(graph.edge_mask(e), positions) for e in graph.edges]
    return SquarefreeIdeal.from_generators(names, gens)


def squarefree_power(
    graph: Graph, k: int, ambient: Optional[Sequence[str]] = None
) -> SquarefreeIdeal:
    """
    The k-th squarefree power: one generator per covered vertex set of a
    k-matching, deduplicated. Zero when ``k`` exceeds the matching number.

    Args:
        graph: The graph.
        k: Power, at least 1.
        ambient: Optional wider variable set (defaults to the vertices).
    """
    if k < 1:
        raise ValueError(f"Squarefree power must be at least 1, got {k}")
    names, positions = _embed(graph, ambient)
    supports = {covered_vertices(graph, m) for m in enumerate_matchings(graph, k)}
    gens = [_relabel(s, positions) for s in supports]
    logger.debug(f"I(G)^[{k}] has {len(gens)} generators on {graph.n} vertices")
    return SquarefreeIdeal(names, tuple(sorted(gens, key=_monomial_key)))


def colon_by_monomial(ideal: SquarefreeIdeal, m: SquarefreeMonomial) -> SquarefreeIdeal:
    """Returns ``I : m``, generated by ``g / gcd(g, m)``."""
    return SquarefreeIdeal.from_generators(ideal.ambient, (g & ~m for g in ideal.generators))


def add_monomial(ideal: SquarefreeIdeal, m: SquarefreeMonomial) -> SquarefreeIdeal:
    """Returns ``I + (m)``."""
    return SquarefreeIdeal.from_generators(ideal.ambient, ideal.generators + (m,))


def sum_ideals(first: SquarefreeIdeal, second: SquarefreeIdeal) -> SquarefreeIdeal:
    if first.ambient != second.ambient:
        raise ValueError("Ideals live over different variable sets")
    return SquarefreeIdeal.from_generators(first.ambient, first.generators + second.generators)


def restriction(ideal: SquarefreeIdeal, m: SquarefreeMonomial) -> SquarefreeIdeal:
    """Returns the ideal generated by the minimal generators dividing ``m``."""
    return SquarefreeIdeal(
        ideal.ambient, tuple(g for g in ideal.generators if g & ~m == 0)
    )


def lcm_of_generators(ideal: SquarefreeIdeal) -> SquarefreeMonomial:
    """
    Raises:
        ZeroIdealError: For the zero ideal.
    """
    if ideal.is_zero:
        raise ZeroIdealError("The zero ideal has no generators")
    return ideal.variables_used()


def lcm_lattice(ideal: SquarefreeIdeal) -> List[SquarefreeMonomial]:
    """All lcms of nonempty generator subsets, ordered by degree then support."""
    lattice = set(ideal.generators)
    frontier = set(lattice)
    while frontier:
        fresh = set()
        for a in frontier:
            for g in ideal.generators:
                joined = a | g
                if joined not in lattice:
                    fresh.add(joined)
        lattice |= fresh
        frontier = fresh
    return sorted(lattice, key=_monomial_key)


def ideal_to_json(ideal: SquarefreeIdeal) -> Dict[str, Any]:
    return {"ambient": list(ideal.ambient), "generators": ideal.to_json()}
