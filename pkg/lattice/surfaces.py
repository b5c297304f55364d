"""
Embedded surfaces recorded as (homology class, genus, self-intersection).
"""

from dataclasses import dataclass

from lattice.exceptions import SurfaceSmoothingError
from lattice.intersection_forms import IntLattice, LatticeVector


@dataclass(frozen=True)
class SurfaceClass:
    klass: LatticeVector
    genus: int
    square: int
    label: str = ''

    def __post_init__(self):
        if self.genus < 0:
            raise SurfaceSmoothingError(f"surface {self.label or self.klass} has negative genus {self.genus}")

    @classmethod
    def on(cls, lattice: IntLattice, klass, genus, label=''):
        """Build a surface whose square is read off ``lattice``."""
        klass = lattice.coerce(klass)
        return cls(klass, genus, lattice.square(klass), label)

    def constrains(self):
        """Adjunction only bites on positive genus and non-negative square."""
        return self.genus > 0 and self.square >= 0

    def adjunction_slack(self):
        return 2 * self.genus - 2 - self.square

    def __str__(self):
        return f"{self.label or self.klass} (g={self.genus}, sq={self.square})"


def combine_surfaces(L: IntLattice, s1: SurfaceClass, s2: SurfaceClass,
                     positive_intersections: int) -> SurfaceClass:
    """
    Smooth the ``positive_intersections`` transverse points of s1 and s2.
    Each smoothed point beyond the first adds a handle.
    """
    k = positive_intersections
    if k < 1:
        raise SurfaceSmoothingError(f"cannot smooth {s1} and {s2} with {k} intersection points")
    crossing = L.pairing(s1.klass, s2.klass)
    if crossing != k:
        raise SurfaceSmoothingError(
            f"{s1} . {s2} = {crossing} in {L}, but {k} positive intersections were asserted"
        )
    klass = s1.klass + s2.klass
    label = f"{s1.label}+{s2.label}" if s1.label and s2.label else ''
    return SurfaceClass(klass, s1.genus + s2.genus + k - 1, L.square(klass), label)
