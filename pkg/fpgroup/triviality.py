"""
Certified triviality verdicts.

Order of attack: abelianization (a nontrivial H1 settles the question),
coset enumeration of the trivial subgroup on the Tietze-simplified
presentation, and finally a finite quotient scan when the enumeration hits
its bounds.
"""

import logging
from dataclasses import dataclass, field
from typing import Callable, Optional

from fpgroup.abelian import abelianization
from fpgroup.coset_enumeration import EnumerationBounds, EnumerationOutcome, coset_enumerate
from fpgroup.presentation import Presentation, eliminate_generators
from fpgroup.quotients import finite_quotient_scan

logger = logging.getLogger(__name__)

TRIVIAL = 'trivial'
NONTRIVIAL = 'nontrivial'
UNKNOWN = 'unknown'


@dataclass(frozen=True)
class TrivialityVerdict:
    status: str
    witness: Optional[str] = None
    source: Optional[str] = None
    outcome: Optional[EnumerationOutcome] = field(default=None, compare=False)
    simplified: Optional[Presentation] = field(default=None, compare=False, repr=False)

    @property
    def is_trivial(self):
        return self.status == TRIVIAL

    def __str__(self):
        if self.status == TRIVIAL:
            return "Trivial"
        if self.status == NONTRIVIAL:
            return f"Nontrivial({self.witness})"
        return "Unknown"


def is_trivial(p: Presentation, bounds: Optional[EnumerationBounds] = None,
               strategy: Optional[str] = None,
               enumerator: Callable[..., EnumerationOutcome] = coset_enumerate,
               quotient_order: Optional[int] = None) -> TrivialityVerdict:
    """
    ``enumerator`` has the signature of ``coset_enumerate``; the CLI swaps in
    a caching wrapper.
    """
    invariants = abelianization(p)
    if not invariants.is_trivial:
        logger.info(f"Nontrivial by abelianization: {invariants}")
        return TrivialityVerdict(NONTRIVIAL, str(invariants), "abelianization")

    simplified = eliminate_generators(p).presentation
    outcome = enumerator(simplified, (), bounds=bounds, strategy=strategy)
    if outcome.completed:
        if outcome.index == 1:
            return TrivialityVerdict(TRIVIAL, outcome=outcome, simplified=simplified)
        return TrivialityVerdict(NONTRIVIAL, f"order {outcome.index}", "enumeration", outcome, simplified)

    surjections = finite_quotient_scan(p, quotient_order)
    if surjections:
        return TrivialityVerdict(NONTRIVIAL, surjections[0].group_id, "quotient", outcome, simplified)
    logger.warning(f"No verdict for {p.rank}-generator presentation within {outcome}")
    return TrivialityVerdict(UNKNOWN, outcome=outcome, simplified=simplified)
