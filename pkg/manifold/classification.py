"""
Homeomorphism classes of smooth profiles.

Simply connected profiles are classified by (b2+, b2-, parity), definite
pi1 = Z2 profiles with b2 > 0 by b2 and orientation, and pi1 = Z2 profiles
with b2 = 0 by their spin bit. Each class records the classification
result it relies on. Kirby-Siebenmann is taken to vanish throughout.
"""

import logging
from dataclasses import dataclass, field
from typing import Optional, Tuple

from lattice.intersection_forms import signature_and_parity
from manifold.exceptions import UnclassifiableProfileError
from manifold.profiles import NO, PI1_Z2, UNKNOWN, YES, ManifoldProfile

logger = logging.getLogger(__name__)

SC_ODD = 'SimplyConnectedOdd'
SC_EVEN = 'SimplyConnectedEven'
Z2_DEFINITE = 'Z2Definite'
Z2_EULER_TWO = 'Z2EulerTwo'
UNSUPPORTED = 'Unsupported'

FREEDMAN = 'freedman'
DONALDSON = 'donaldson'
HAMBLETON_KRECK = 'hambleton-kreck'
EULER_TWO = 'euler-two-covers'


@dataclass(frozen=True)
class HomeoClass:
    kind: str
    invariants: Tuple[int, ...] = ()
    axiom: str = field(default='', compare=False)

    @property
    def is_supported(self):
        return self.kind != UNSUPPORTED

    def model_name(self) -> Optional[str]:
        """A standard manifold in the class, when one is catalogued."""
        if self.kind == SC_ODD:
            plus, minus = self.invariants
            return _sum_name([(plus, 'CP2'), (minus, 'CP2bar')]) or 'S4'
        if self.kind == SC_EVEN and self.invariants[0] == self.invariants[1]:
            return _sum_name([(self.invariants[0], 'S2xS2')]) or 'S4'
        if self.kind == Z2_DEFINITE:
            b2, sign = self.invariants
            return _sum_name([(1, 'Z1'), (b2, 'CP2' if sign > 0 else 'CP2bar')])
        if self.kind == Z2_EULER_TWO:
            return 'Z0' if self.invariants[0] else 'Z1'
        return None

    def __str__(self):
        return f"{self.kind}({', '.join(str(i) for i in self.invariants)})"


def _sum_name(parts):
    names = []
    for count, name in parts:
        if count == 1:
            names.append(name)
        elif count > 1:
            names.append(f"{count}{name}")
    return '#'.join(names)


def _spin_bit(p: ManifoldProfile) -> str:
    if p.spin != UNKNOWN or p.intersection_form is None:
        return p.spin
    if p.pi1.is_trivial:
        return YES if signature_and_parity(p.intersection_form)[1] == 'even' else NO
    return UNKNOWN


def homeo_classify(p: ManifoldProfile) -> HomeoClass:
    if p.pi1.is_trivial:
        spin = _spin_bit(p)
        if spin == UNKNOWN:
            raise UnclassifiableProfileError(f"parity of the form of {p.name} is unknown")
        if spin == YES:
            if p.is_definite and p.b2 > 0:
                # smooth definite forms are diagonal, hence odd
                return HomeoClass(UNSUPPORTED, (), DONALDSON)
            klass = HomeoClass(SC_EVEN, (p.b2plus, p.b2minus), FREEDMAN)
        else:
            klass = HomeoClass(SC_ODD, (p.b2plus, p.b2minus), FREEDMAN)
    elif p.pi1.kind == PI1_Z2:
        if p.b2 > 0 and p.is_definite:
            klass = HomeoClass(Z2_DEFINITE, (p.b2, 1 if p.sigma > 0 else -1), HAMBLETON_KRECK)
        elif p.b2 == 0:
            if p.spin == UNKNOWN:
                raise UnclassifiableProfileError(f"spin bit of {p.name} is unknown")
            klass = HomeoClass(Z2_EULER_TWO, (1 if p.spin == YES else 0,), EULER_TWO)
        else:
            klass = HomeoClass(UNSUPPORTED)
    else:
        raise UnclassifiableProfileError(f"pi1 of {p.name} is {p.pi1}, not trivial or Z2")
    logger.debug(f"{p.name} classified as {klass}")
    return klass


def homeo_equivalent(p1: ManifoldProfile, p2: ManifoldProfile) -> bool:
    first, second = homeo_classify(p1), homeo_classify(p2)
    for p, klass in ((p1, first), (p2, second)):
        if not klass.is_supported:
            raise UnclassifiableProfileError(f"{p.name} lies outside the supported classification")
    return first == second
