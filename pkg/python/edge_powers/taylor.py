"""
Independent Betti oracle from the Taylor complex.

The Taylor resolution of an ideal with generators ``m_1..m_t`` has one basis
element per nonempty generator subset ``s``, in homological degree
``|s| - 1`` and multidegree ``lcm(s)``. After tensoring with the field only
the subsets with ``lcm(s) == alpha`` survive in degree ``alpha``, and the
differential keeps the faces ``s - j`` whose lcm is still ``alpha``.
"""

import logging
from typing import Dict, List, Optional

from edge_powers.config import DEFAULT_TAYLOR_CAP, SizeCapError
from edge_powers.fields import FieldSpec
from edge_powers.graph import bits, popcount
from edge_powers.ideals import SquarefreeIdeal, ZeroIdealError

logger = logging.getLogger(__name__)


def taylor_strand_betti(
    ideal: SquarefreeIdeal,
    alpha: int,
    field: Optional[FieldSpec] = None,
    cap: int = DEFAULT_TAYLOR_CAP,
) -> Dict[int, int]:
    """
    Betti numbers ``b_{i,alpha}(I)`` as homology of the alpha-strand of the
    Taylor complex.

    Args:
        ideal: A nonzero squarefree monomial ideal.
        alpha: Squarefree multidegree as a bitmask.
        field: Coefficient field; rationals by default.
        cap: Largest generator count accepted.

    Returns:
        Nonzero Betti numbers keyed by homological index.

    Raises:
        ZeroIdealError: For the zero ideal.
        SizeCapError: If the ideal has more than ``cap`` generators.
    """
    field = field or FieldSpec()
    if ideal.is_zero:
        raise ZeroIdealError("Taylor complex of the zero ideal is undefined")
    if len(ideal.generators) > cap:
        raise SizeCapError(
            f"Taylor oracle capped at {cap} generators, ideal has {len(ideal.generators)}"
        )

    dividing = [g for g in ideal.generators if g & ~alpha == 0]
    lcm_of: Dict[int, int] = {0: 0}
    strand: Dict[int, List[int]] = {}
    for subset in range(1, 1 << len(dividing)):
        low = subset & -subset
        lcm = lcm_of[subset & ~low] | dividing[low.bit_length() - 1]
        lcm_of[subset] = lcm
        if lcm == alpha:
            strand.setdefault(popcount(subset) - 1, []).append(subset)
    if not strand:
        return {}

    ranks: Dict[int, int] = {}
    for degree in sorted(strand):
        if degree == 0:
            continue
        lower = strand.get(degree - 1, [])
        row_of = {s: r for r, s in enumerate(lower)}
        entries: Dict[int, Dict[int, int]] = {}
        for c, subset in enumerate(strand[degree]):
            for position, j in enumerate(bits(subset)):
                face = subset & ~(1 << j)
                if face in row_of:
                    entries.setdefault(row_of[face], {})[c] = -1 if position % 2 else 1
        ranks[degree] = field.rank(entries, len(lower), len(strand[degree]))

    betti = {}
    for degree, basis in sorted(strand.items()):
        dim = len(basis) - ranks.get(degree, 0) - ranks.get(degree + 1, 0)
        if dim:
            betti[degree] = dim
    logger.debug(f"Taylor strand at {alpha:#x}: {betti}")
    return betti
