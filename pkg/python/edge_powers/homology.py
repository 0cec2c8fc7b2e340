"""
Finite simplicial complexes and their reduced homology over a field.

Faces are bitmasks over a ground set of named vertices. The void complex
has no faces; the irrelevant complex has only the empty face and carries
one-dimensional reduced homology in degree -1.
"""

import logging
from dataclasses import dataclass
from typing import Dict, FrozenSet, Iterable, List, Optional, Sequence, Tuple

import numpy as np
from scipy.sparse import csr_matrix
from scipy.sparse.csgraph import connected_components

from edge_powers.fields import FieldSpec
from edge_powers.graph import bits, popcount

logger = logging.getLogger(__name__)


def subsets(mask: int) -> Iterable[int]:
    """Yields every submask of ``mask``, including 0 and ``mask``."""
    sub = mask
    while True:
        yield sub
        if sub == 0:
            return
        sub = (sub - 1) & mask


@dataclass(frozen=True)
class SimplicialComplex:
    """
    Downward-closed family of vertex subsets.

    Attributes:
        ground: Names of the ambient vertices.
        faces: Face bitmasks over ``ground``.
    """
    ground: Tuple[str, ...]
    faces: FrozenSet[int]

    def __post_init__(self) -> None:
        for face in self.faces:
            for v in bits(face):
                if face & ~(1 << v) not in self.faces:
                    raise ValueError(f"Face {face:#x} is missing its boundary")

    @classmethod
    def from_facets(cls, ground: Sequence[str], facets: Iterable[int]) -> "SimplicialComplex":
        faces = set()
        for facet in facets:
            if facet not in faces:
                faces.update(subsets(facet))
        return cls(tuple(ground), frozenset(faces))

    @classmethod
    def void(cls, ground: Sequence[str]) -> "SimplicialComplex":
        return cls(tuple(ground), frozenset())

    @classmethod
    def irrelevant(cls, ground: Sequence[str]) -> "SimplicialComplex":
        return cls(tuple(ground), frozenset({0}))

    @property
    def is_void(self) -> bool:
        return not self.faces

    @property
    def dimension(self) -> Optional[int]:
        """Largest face size minus one; ``None`` for the void complex."""
        if not self.faces:
            return None
        return max(popcount(f) for f in self.faces) - 1

    def vertices(self) -> int:
        mask = 0
        for face in self.faces:
            mask |= face
        return mask

    def facets(self) -> List[int]:
        """Inclusion-maximal faces in canonical order."""
        return sorted(maximal_faces(self.faces), key=lambda f: (popcount(f), tuple(bits(f))))

    def facet_names(self) -> List[List[str]]:
        return [[self.ground[v] for v in bits(f)] for f in self.facets()]

    def is_connected(self) -> bool:
        """
        True iff any two vertices are joined by a chain of faces. Complexes
        with at most one vertex count as connected.
        """
        vertices = list(bits(self.vertices()))
        if len(vertices) <= 1:
            return True
        position = {v: i for i, v in enumerate(vertices)}
        rows, cols = [], []
        for face in self.faces:
            if popcount(face) == 2:
                u, v = bits(face)
                rows.append(position[u])
                cols.append(position[v])
        graph = csr_matrix(
            (np.ones(len(rows), dtype=np.int8), (rows, cols)),
            shape=(len(vertices), len(vertices)),
        )
        count, _ = connected_components(graph, directed=False)
        return bool(count == 1)


def maximal_faces(faces: Iterable[int]) -> List[int]:
    """Inclusion-maximal members of ``faces``, largest first."""
    maximal: List[int] = []
    for face in sorted(set(faces), key=popcount, reverse=True):
        if not any(face & big == face for big in maximal):
            maximal.append(face)
    return maximal


def strong_core(facets: Iterable[int]) -> List[int]:
    """
    Facets of a strong deformation retract of the complex they generate.

    A vertex ``v`` is dominated when some other vertex lies in every facet
    through ``v``; deleting it keeps the homotopy type. Deletions repeat
    until no vertex is dominated. A nonempty complex whose core is a single
    facet is contractible.
    """
    core = maximal_faces(facets)
    reduced = True
    while reduced and len(core) > 1:
        reduced = False
        support = 0
        for facet in core:
            support |= facet
        for v in bits(support):
            bit = 1 << v
            common = support
            for facet in core:
                if facet & bit:
                    common &= facet
            if common & ~bit:
                core = maximal_faces(facet & ~bit for facet in core)
                reduced = True
                break
    return core


def reduced_homology_from_facets(
    ground: Sequence[str], facets: Iterable[int], field: Optional[FieldSpec] = None
) -> Dict[int, int]:
    """
    Nonzero reduced homology dimensions of the complex generated by
    ``facets``, computed on its strong core.
    """
    core = strong_core(facets)
    if not core:
        return {}
    if len(core) == 1:
        return {-1: 1} if core[0] == 0 else {}
    dims = reduced_homology_dims(SimplicialComplex.from_facets(ground, core), field)
    return {d: dim for d, dim in dims.items() if dim}


def _faces_by_dimension(complex_: SimplicialComplex) -> Dict[int, List[int]]:
    grouped: Dict[int, List[int]] = {}
    for face in complex_.faces:
        grouped.setdefault(popcount(face) - 1, []).append(face)
    for faces in grouped.values():
        faces.sort(key=lambda f: tuple(bits(f)))
    return grouped


def boundary_entries(
    faces: Sequence[int], lower: Sequence[int]
) -> Dict[int, Dict[int, int]]:
    """
    Sparse boundary matrix from ``faces`` (columns) to ``lower`` (rows) with
    the alternating sign convention on sorted vertex order.
    """
    row_of = {face: r for r, face in enumerate(lower)}
    entries: Dict[int, Dict[int, int]] = {}
    for c, face in enumerate(faces):
        for position, v in enumerate(bits(face)):
            r = row_of[face & ~(1 << v)]
            entries.setdefault(r, {})[c] = -1 if position % 2 else 1
    return entries


def reduced_homology_dims(
    complex_: SimplicialComplex, field: Optional[FieldSpec] = None
) -> Dict[int, int]:
    """
    Dimensions of reduced homology in degrees ``-1..dim``.

    Uses ``dim H_d = dim C_d - rank d_d - rank d_{d+1}``, where ``C_{-1}``
    is spanned by the empty face. The void complex returns an empty map.
    """
    field = field or FieldSpec()
    if complex_.is_void:
        return {}
    grouped = _faces_by_dimension(complex_)
    top = max(grouped)
    ranks: Dict[int, int] = {}
    for d in range(0, top + 1):
        faces, lower = grouped.get(d, []), grouped.get(d - 1, [])
        ranks[d] = field.rank(boundary_entries(faces, lower), len(lower), len(faces))
    dims = {}
    for d in range(-1, top + 1):
        size = len(grouped.get(d, []))
        dims[d] = size - ranks.get(d, 0) - ranks.get(d + 1, 0)
    return dims
