"""
Results that enter the computations as inputs rather than being computed.
"""

from dataclasses import dataclass
from typing import Dict, Tuple

from paperlib.exceptions import ScenarioParameterError


@dataclass(frozen=True)
class AxiomRecord:
    axiom_id: str
    justification: str
    payload: Tuple[Tuple[str, str], ...] = ()

    def to_json(self):
        return {'id': self.axiom_id, 'justification': self.justification, 'payload': dict(self.payload)}


AXIOMS: Dict[str, AxiomRecord] = {
    a.axiom_id: a
    for a in (
        AxiomRecord(
            'symplectic-seed',
            "A closed symplectic 4-manifold with b2+ > 1 has SW(+-c1) = +-1 for its canonical class.",
            (('seed_value', '1'),),
        ),
        AxiomRecord(
            'vanishing-P',
            "Every 0-framed surgery of the U chain has vanishing SW invariants; the adjunction "
            "inequality leaves no basic class on the vanishing-P block.",
            (('blocks', 'vanishing-P'),),
        ),
        AxiomRecord(
            'vanishing-Q',
            "Every 0-framed surgery of the R chain has vanishing SW invariants; the adjunction "
            "inequality leaves no basic class on the vanishing-Q-odd and vanishing-Q-even blocks.",
            (('blocks', 'vanishing-Q-odd,vanishing-Q-even'),),
        ),
        AxiomRecord(
            'surgery-formula',
            "Torus surgery with coefficient p/q gives SW = p SW(1,0) + q SW(0,1) on matching classes.",
        ),
        AxiomRecord(
            'blowup-formula',
            "Blowing up sends each basic class K to K +- E with the same value.",
        ),
        AxiomRecord(
            'wall-crossing',
            "With b2+ = 1 every SW value can shift by at most one between chambers.",
        ),
        AxiomRecord(
            'free-involution',
            "X_n and Y_n carry a free orientation-preserving involution whose quotient has pi1 = Z2.",
        ),
        AxiomRecord(
            'sigma-multiplicative',
            "Euler characteristic and signature multiply by the degree of a finite free cover.",
        ),
        AxiomRecord(
            'normal-generation',
            "pi1 of each piece is normally generated by s1, t1, s2, t2 and the meridian image.",
        ),
        AxiomRecord(
            'freedman',
            "Simply connected closed smooth 4-manifolds are classified up to homeomorphism by their "
            "intersection forms.",
        ),
        AxiomRecord(
            'donaldson',
            "The intersection form of a smooth definite 4-manifold is diagonal.",
        ),
        AxiomRecord(
            'hambleton-kreck',
            "Smooth definite manifolds with pi1 = Z2 and b2 > 0 are homeomorphic iff their Euler "
            "characteristics agree.",
        ),
        AxiomRecord(
            'euler-two-covers',
            "A smooth manifold with pi1 = Z2 and chi = 2 is Z0 or Z1, distinguished by spin.",
        ),
        AxiomRecord(
            'irreducibility',
            "A 4-manifold with nonvanishing SW invariants whose basic classes never differ by a "
            "class of square -4 is irreducible.",
        ),
    )
}


def axiom(axiom_id: str) -> AxiomRecord:
    try:
        return AXIOMS[axiom_id]
    except KeyError:
        raise ScenarioParameterError(f"unknown axiom '{axiom_id}'") from None


def axioms(*axiom_ids: str) -> Tuple[AxiomRecord, ...]:
    return tuple(axiom(a) for a in axiom_ids)
