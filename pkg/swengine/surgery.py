"""
Torus surgery arithmetic: F(p, q) = p F(1, 0) + q F(0, 1).
"""

import logging
from dataclasses import dataclass
from math import gcd
from typing import Callable, List, Optional, Sequence, Tuple

from config.exceptions import InputError
from swengine.exceptions import InsufficientDataError, NonCoprimeCoefficientError
from swengine.state import SWState

logger = logging.getLogger(__name__)


def _check_coprime(p, q):
    if gcd(p, q) != 1:
        raise NonCoprimeCoefficientError(f"surgery coefficient ({p}, {q}) is not coprime")


def torus_surgery_sw(F10: int, F01: int, p: int, q: int) -> int:
    _check_coprime(p, q)
    return p * F10 + q * F01


@dataclass(frozen=True)
class SurgerySpec:
    torus_label: str
    coefficient: Tuple[int, int]
    luttinger: bool = True
    kills_pair: Optional[Tuple[str, str]] = None
    # F(0,1) when it is known not to vanish
    f01: Optional[int] = None
    # id of the axiom asserting F(0,1) = 0 for this step
    vanishing_axiom: Optional[str] = None

    def __post_init__(self):
        p, q = (int(c) for c in self.coefficient)
        _check_coprime(p, q)
        object.__setattr__(self, 'coefficient', (p, q))
        if self.kills_pair is not None:
            object.__setattr__(self, 'kills_pair', tuple(self.kills_pair))

    @property
    def p(self):
        return self.coefficient[0]

    @property
    def q(self):
        return self.coefficient[1]

    @property
    def is_identity(self):
        return self.coefficient == (1, 0)

    def __str__(self):
        return f"{self.torus_label}({self.p}/{self.q})"


VanishingOracle = Callable[[SurgerySpec], bool]


def axiom_oracle(spec: SurgerySpec) -> bool:
    """Default oracle: F(0,1) vanishes exactly when an axiom says so."""
    return spec.vanishing_axiom is not None


def _step_f01(spec: SurgerySpec, vanishing_oracle: VanishingOracle) -> int:
    if vanishing_oracle(spec):
        return 0
    if spec.f01 is not None:
        return spec.f01
    raise InsufficientDataError(f"surgery {spec} has neither a vanishing axiom nor an F(0,1) value")


def trace_surgery_chain(base_value: int, chain: Sequence[SurgerySpec],
                        vanishing_oracle: VanishingOracle = axiom_oracle) -> List[int]:
    """Signed values after each step, starting with the base value."""
    values = [base_value]
    for spec in chain:
        values.append(torus_surgery_sw(values[-1], _step_f01(spec, vanishing_oracle), spec.p, spec.q))
        logger.debug(f"After {spec}: {values[-1]}")
    return values


def run_surgery_chain(base_value: int, chain: Sequence[SurgerySpec],
                      vanishing_oracle: VanishingOracle = axiom_oracle) -> int:
    """|SW| after the chain; signs carry the usual +- ambiguity."""
    return abs(trace_surgery_chain(base_value, chain, vanishing_oracle)[-1])


def apply_surgery_chain(state: SWState, chain: Sequence[SurgerySpec],
                        vanishing_oracle: VanishingOracle = axiom_oracle) -> SWState:
    """
    Carry a whole state through a chain of surgeries. Each step multiplies
    every value by p (F(0,1) must vanish for every class) and removes the
    killed hyperbolic pair, which every basic class must evaluate to zero on,
    lowering b2+ by one.
    """
    if state.exceptional:
        raise InputError("apply surgeries before blowing up")
    current = state
    for spec in chain:
        if not vanishing_oracle(spec):
            raise InsufficientDataError(f"surgery {spec} is not covered by a vanishing axiom")
        values = [(K, torus_surgery_sw(v, 0, spec.p, spec.q)) for K, v in current.base_values]
        lattice, b2plus = current.base_lattice, current.b2plus
        if spec.kills_pair:
            lattice, values = _kill_pair(current.base_lattice, values, spec.kills_pair)
            b2plus -= 1
        current = SWState(lattice, b2plus, tuple(values), current.chambered or b2plus == 1)
        logger.debug(f"After {spec}: {current}")
    return current


def _kill_pair(lattice, values, pair):
    smaller = lattice.drop_labels(pair)
    kept = []
    for K, v in values:
        restricted = lattice.restrict_vector(K, smaller)
        evaluations = lattice.evaluations(K)
        if any(evaluations[lattice.index(label)] for label in pair):
            raise InputError(f"class {K} pairs nontrivially with the killed classes {pair}")
        expected = tuple(evaluations[lattice.index(label)] for label in smaller.basis_labels)
        if smaller.evaluations(restricted) != expected:
            raise InputError(f"{pair} does not split off {lattice} orthogonally for {K}")
        kept.append((restricted, v))
    return smaller, kept
