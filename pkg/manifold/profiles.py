"""
Invariant profiles of closed oriented smooth 4-manifolds.

A profile records Euler characteristic, signature, first Betti number, a
fundamental group descriptor and spin data. Profiles are immutable and
validated on construction; every operation returns a new profile.
"""

from dataclasses import dataclass, field, replace
from typing import FrozenSet, Optional, Tuple

from fpgroup.presentation import Presentation
from lattice.intersection_forms import IntLattice
from manifold.exceptions import ProfileInvariantError
from swengine.state import SWState


# ========================
# FUNDAMENTAL GROUP
# ========================

PI1_TRIVIAL = 'trivial'
PI1_Z2 = 'z2'
PI1_PRESENTED = 'presented'
PI1_UNKNOWN = 'unknown'
PI1_KINDS = (PI1_TRIVIAL, PI1_Z2, PI1_PRESENTED, PI1_UNKNOWN)


@dataclass(frozen=True)
class Pi1:
    kind: str
    ref: str = ''
    presentation: Optional[Presentation] = field(default=None, compare=False, repr=False)

    def __post_init__(self):
        if self.kind not in PI1_KINDS:
            raise ProfileInvariantError(f"unknown pi1 kind '{self.kind}'")
        if self.kind == PI1_PRESENTED and not self.ref:
            raise ProfileInvariantError("a presented pi1 needs a reference name")
        if self.kind != PI1_PRESENTED and self.ref:
            raise ProfileInvariantError(f"pi1 kind '{self.kind}' takes no reference")

    @classmethod
    def parse(cls, text: str) -> 'Pi1':
        """Read 'trivial', 'z2', 'unknown' or 'presented:<ref>'."""
        kind, _, ref = text.partition(':')
        return cls(kind, ref)

    @property
    def is_trivial(self):
        return self.kind == PI1_TRIVIAL

    @property
    def is_known(self):
        return self.kind in (PI1_TRIVIAL, PI1_Z2)

    def __str__(self):
        return f"{self.kind}:{self.ref}" if self.kind == PI1_PRESENTED else self.kind


TRIVIAL = Pi1(PI1_TRIVIAL)
Z2 = Pi1(PI1_Z2)
UNKNOWN_PI1 = Pi1(PI1_UNKNOWN)

# ========================
# SPIN DATA
# ========================

YES = 'yes'
NO = 'no'
UNKNOWN = 'unknown'
SPIN_VALUES = (YES, NO, UNKNOWN)

INVOLUTION = 'involution'
SURFACE_PREFIX = 'surface:g'


def surface_flag(genus: int) -> str:
    """Flag recording an embedded genus-``genus`` surface of square zero."""
    return f"{SURFACE_PREFIX}{genus}"


def both_spin(first: str, second: str) -> str:
    if first == NO or second == NO:
        return NO
    if first == YES and second == YES:
        return YES
    return UNKNOWN


# ========================
# PROFILE
# ========================

@dataclass(frozen=True)
class ManifoldProfile:
    name: str
    chi: int
    sigma: int
    b1: int = 0
    pi1: Pi1 = TRIVIAL
    spin: str = UNKNOWN
    cover_spin: str = UNKNOWN
    flags: FrozenSet[str] = frozenset()
    definite_diagonal: Optional[bool] = None
    sw: Optional[SWState] = field(default=None, compare=False, repr=False)
    intersection_form: Optional[IntLattice] = field(default=None, compare=False, repr=False)

    def __post_init__(self):
        if isinstance(self.pi1, str):
            object.__setattr__(self, 'pi1', Pi1.parse(self.pi1))
        object.__setattr__(self, 'flags', frozenset(self.flags))
        self._validate()

    def _fail(self, message):
        raise ProfileInvariantError(f"profile {self.name}: {message}")

    def _validate(self):
        if self.b1 < 0:
            self._fail(f"b1 = {self.b1} is negative")
        if self.b2 < 0:
            self._fail(f"b2 = chi - 2 + 2 b1 = {self.b2} is negative")
        if (self.b2 + self.sigma) % 2 or abs(self.sigma) > self.b2:
            self._fail(f"signature {self.sigma} does not fit b2 = {self.b2}")
        for label, value in (('spin', self.spin), ('cover_spin', self.cover_spin)):
            if value not in SPIN_VALUES:
                self._fail(f"{label} must be one of {SPIN_VALUES}, got '{value}'")
        if self.spin == YES and self.sigma % 16:
            self._fail(f"spin with signature {self.sigma}, not divisible by 16")
        if self.spin == YES and self.cover_spin == NO:
            self._fail("spin manifold with a non-spin cover")
        if self.pi1.kind in (PI1_TRIVIAL, PI1_Z2) and self.b1:
            self._fail(f"pi1 {self.pi1} with b1 = {self.b1}")
        if self.pi1.is_trivial and YES in (self.spin, self.cover_spin) and NO in (self.spin, self.cover_spin):
            self._fail("simply connected, so spin and cover_spin must agree")
        if self.is_definite and self.b2 > 0:
            # smooth definite forms diagonalize
            if self.definite_diagonal is False:
                self._fail("definite form that does not diagonalize")
            if self.pi1.kind == PI1_Z2 and YES in (self.spin, self.cover_spin):
                self._fail("pi1 = Z2 definite manifolds with b2 > 0 are non-spin, as are their covers")
        if self.sw is not None and self.sw.b2plus != self.b2plus:
            self._fail(f"SW state has b2+ = {self.sw.b2plus}, profile has {self.b2plus}")

    # ========================
    # DERIVED INVARIANTS
    # ========================

    @property
    def b2(self) -> int:
        return self.chi - 2 + 2 * self.b1

    @property
    def b2plus(self) -> int:
        return (self.b2 + self.sigma) // 2

    @property
    def b2minus(self) -> int:
        return (self.b2 - self.sigma) // 2

    @property
    def is_definite(self) -> bool:
        return abs(self.sigma) == self.b2

    @property
    def has_involution(self) -> bool:
        return INVOLUTION in self.flags

    def surface_genera(self) -> Tuple[int, ...]:
        return tuple(sorted(int(f[len(SURFACE_PREFIX):]) for f in self.flags if f.startswith(SURFACE_PREFIX)))

    def has_surface(self, genus: int) -> bool:
        return surface_flag(genus) in self.flags

    def renamed(self, name: str) -> 'ManifoldProfile':
        return replace(self, name=name)

    def with_changes(self, **changes) -> 'ManifoldProfile':
        return replace(self, **changes)

    def to_json(self):
        return {
            'name': self.name,
            'chi': self.chi,
            'sigma': self.sigma,
            'b1': self.b1,
            'pi1': str(self.pi1),
            'spin': self.spin,
            'cover_spin': self.cover_spin,
            'flags': sorted(self.flags),
            'definite_diagonal': self.definite_diagonal,
        }

    def __str__(self):
        return f"{self.name} (chi={self.chi}, sigma={self.sigma}, b1={self.b1}, pi1={self.pi1})"


def betti_split(p: ManifoldProfile) -> Tuple[int, int]:
    """(b2+, b2-) of an accepted profile."""
    return p.b2plus, p.b2minus
