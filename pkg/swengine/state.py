"""
Seiberg-Witten states: finite-support maps from characteristic classes to
integers.

Blow-ups are kept lazily. A state stores the support on its base lattice
plus a count of exceptional classes; the expanded support is every
K +- E1 +- ... +- Ec with the value of K.
"""

import logging
from dataclasses import dataclass, replace
from functools import cached_property
from itertools import product
from typing import Dict, Iterator, Optional, Tuple

from django.conf import settings

from config.exceptions import InputError
from lattice.intersection_forms import IntLattice, LatticeVector, format_lattice_literal, is_characteristic
from swengine.exceptions import NonCharacteristicClassError, StateSymmetryError, StateTooLargeError

logger = logging.getLogger(__name__)


def formal_dimension(k_squared: int, chi: int, sigma: int) -> Optional[int]:
    """(K^2 - 3 sigma - 2 chi) / 4, or None when that is not an integer."""
    numerator = k_squared - 3 * sigma - 2 * chi
    if numerator % 4:
        return None
    return numerator // 4


@dataclass(frozen=True)
class SWState:
    base_lattice: IntLattice
    b2plus: int
    base_values: Tuple[Tuple[LatticeVector, int], ...] = ()
    chambered: bool = False
    exceptional: int = 0

    def __post_init__(self):
        if self.exceptional < 0:
            raise InputError(f"negative exceptional class count {self.exceptional}")
        values: Dict[LatticeVector, int] = {}
        for key, value in self.base_values:
            key = self.base_lattice.coerce(key)
            if key in values:
                raise StateSymmetryError(f"class {key} listed twice")
            if value:
                values[key] = int(value)
        for key in values:
            if not is_characteristic(self.base_lattice, key):
                raise NonCharacteristicClassError(f"{key} is not characteristic in {self.base_lattice}")
            partner = values.get(-key)
            if partner is None or abs(partner) != abs(values[key]):
                raise StateSymmetryError(f"class {key} has no matching -K entry")
        object.__setattr__(self, 'base_values', tuple(sorted(values.items())))

    # ========================
    # SUPPORT
    # ========================

    @cached_property
    def lattice(self) -> IntLattice:
        if not self.exceptional:
            return self.base_lattice
        return self.base_lattice.extend_diagonal(self.exceptional)

    @cached_property
    def _lookup(self):
        return dict(self.base_values)

    @property
    def is_empty(self):
        return not self.base_values

    @property
    def support_size(self):
        return len(self.base_values) * 2 ** self.exceptional

    def base_square(self, key):
        return self.base_lattice.square(key)

    def items(self) -> Iterator[Tuple[LatticeVector, int]]:
        """Expanded support in lexicographic order of coordinates."""
        for key, value in self.base_values:
            for signs in product((-1, 1), repeat=self.exceptional):
                yield LatticeVector(key.coords + signs), value

    def value(self, key) -> int:
        key = self.lattice.coerce(key)
        rank = self.base_lattice.rank
        tail = key.coords[rank:]
        if any(abs(c) != 1 for c in tail):
            return 0
        return self._lookup.get(LatticeVector(key.coords[:rank]), 0)

    def distinct_values(self):
        return frozenset(value for _, value in self.base_values)

    def negated(self):
        return replace(self, base_values=tuple((k, -v) for k, v in self.base_values))

    def with_values(self, values):
        return replace(self, base_values=tuple(values))

    # ========================
    # JSON
    # ========================

    def to_json(self, max_keys: Optional[int] = None):
        max_keys = settings.FOURCALC_MAX_SW_KEYS if max_keys is None else max_keys
        if self.support_size > max_keys:
            raise StateTooLargeError(
                f"state on {self.lattice} has {self.support_size} classes, more than {max_keys}"
            )
        return {
            'lattice': format_lattice_literal(self.lattice),
            'b2plus': self.b2plus,
            'chambered': self.chambered,
            'entries': [{'coords': list(key.coords), 'value': value} for key, value in self.items()],
        }

    @classmethod
    def from_json(cls, data, lattice: IntLattice):
        """The expanded state: blow-up classes come back as ordinary basis vectors."""
        entries = tuple((LatticeVector(tuple(e['coords'])), e['value']) for e in data['entries'])
        return cls(lattice, data['b2plus'], entries, chambered=data.get('chambered', False))

    def __str__(self):
        shown = ', '.join(f"{k}: {v}" for k, v in self.base_values)
        suffix = f" blown up {self.exceptional}x" if self.exceptional else ''
        return f"SW[{self.lattice}]{{{shown}}}{suffix}"


def seed_state(lattice: IntLattice, b2plus: int, K, chi: int, sigma: int, chambered=False) -> SWState:
    """
    Symplectic seed: SW(K) = 1 and SW(-K) = (-1)^((chi + sigma)/4).
    """
    if (chi + sigma) % 4:
        raise InputError(f"chi + sigma = {chi + sigma} is not divisible by 4")
    K = lattice.coerce(K)
    if K.is_zero():
        return SWState(lattice, b2plus, ((K, 1),), chambered)
    sign = -1 if ((chi + sigma) // 4) % 2 else 1
    state = SWState(lattice, b2plus, ((K, 1), (-K, sign)), chambered)
    logger.debug(f"Seeded {state}")
    return state
