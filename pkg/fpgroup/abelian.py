"""
Abelianization of a finitely presented group via the relator exponent matrix.
"""

import logging
from dataclasses import dataclass
from typing import Tuple

from fpgroup.presentation import Presentation
from lattice.smith import smith_normal_form

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class AbelianInvariants:
    free_rank: int
    torsion_factors: Tuple[int, ...] = ()

    def __post_init__(self):
        factors = tuple(int(d) for d in self.torsion_factors)
        if self.free_rank < 0:
            raise ValueError(f"negative free rank {self.free_rank}")
        for i, d in enumerate(factors):
            if d < 2:
                raise ValueError(f"torsion factor {d} must be at least 2")
            if i and d % factors[i - 1] != 0:
                raise ValueError(f"torsion factors {factors} do not form a divisibility chain")
        object.__setattr__(self, 'torsion_factors', factors)

    @property
    def is_trivial(self):
        return self.free_rank == 0 and not self.torsion_factors

    def __str__(self):
        parts = []
        if self.free_rank == 1:
            parts.append('Z')
        elif self.free_rank > 1:
            parts.append(f"Z^{self.free_rank}")
        parts.extend(f"Z/{d}" for d in self.torsion_factors)
        return ' x '.join(parts) or '1'


def exponent_matrix(p: Presentation):
    """Rows are relators, columns generators; entries are exponent sums."""
    return [[r.exponent_sum(g) for g in range(p.rank)] for r in p.relators]


def abelianization(p: Presentation) -> AbelianInvariants:
    matrix = exponent_matrix(p)
    if not matrix:
        return AbelianInvariants(p.rank)
    form = smith_normal_form(matrix)
    invariants = AbelianInvariants(
        free_rank=p.rank - form.rank,
        torsion_factors=tuple(d for d in form.invariants if d > 1),
    )
    logger.debug(f"H1 of {p.rank}-generator presentation: {invariants}")
    return invariants
