"""
Blow-up expansion and the b2+ = 1 chamber spread.
"""

import logging
from dataclasses import dataclass, replace
from typing import FrozenSet, Iterator, Tuple

from config.exceptions import InputError
from lattice.intersection_forms import LatticeVector
from swengine.exceptions import ChamberStructureError
from swengine.state import SWState

logger = logging.getLogger(__name__)


def blowup_sw(s: SWState, count: int) -> SWState:
    """Every key K becomes the 2^count keys K +- E1 +- ... +- E_count with the same value."""
    if count < 1:
        raise InputError(f"blow-up count must be positive, got {count}")
    blown_up = replace(s, exceptional=s.exceptional + count)
    logger.debug(f"Blew up {count}x: {s.support_size} -> {blown_up.support_size} classes")
    return blown_up


def spread_of(value: int) -> FrozenSet[int]:
    return frozenset((value - 1, value, value + 1))


OFF_SUPPORT = spread_of(0)


@dataclass(frozen=True)
class ChamberSpread:
    """Every value v may read v - 1, v or v + 1 depending on the chamber."""

    state: SWState

    def __getitem__(self, key) -> FrozenSet[int]:
        return spread_of(self.state.value(key))

    def items(self) -> Iterator[Tuple[LatticeVector, FrozenSet[int]]]:
        for key, value in self.state.items():
            yield key, spread_of(value)

    def value_union(self) -> FrozenSet[int]:
        """All values any class can take; off-support classes contribute {-1, 0, 1}."""
        union = set(OFF_SUPPORT)
        for value in self.state.distinct_values():
            union |= spread_of(value)
        return frozenset(union)


def chamber_spread(s: SWState) -> ChamberSpread:
    if s.b2plus != 1:
        raise ChamberStructureError(f"chamber spread needs b2+ = 1, state has b2+ = {s.b2plus}")
    return ChamberSpread(s)
