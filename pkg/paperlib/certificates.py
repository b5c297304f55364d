"""
Fundamental group certificates for the two families.

Relators are written in the presentation text format, one per entry, in
the order the triviality arguments use them. The second copy of each
piece uses capitalized generator names.
"""

import re
from typing import List

from fpgroup.presentation import Presentation, parse_presentation
from paperlib.exceptions import ScenarioParameterError

V0_GENERATORS = ('x', 'y', 'a', 'b')
CERTIFICATE_GENERATORS = ('s1', 't1', 's2', 't2', 'S1', 'T1', 'S2', 'T2')

_LOWER_NAME = re.compile(r'\b([st])([12])\b')


def _check_n(n):
    if n < 1:
        raise ScenarioParameterError(f"n must be at least 1, got {n}")


def _build(generators, relators: List[str]) -> Presentation:
    return parse_presentation(f"gens: {' '.join(generators)}; rels: {' '.join(relators)}")


def capitalized(relator: str) -> str:
    """s1 -> S1, t2 -> T2; other names are untouched."""
    return _LOWER_NAME.sub(lambda m: m.group(1).upper() + m.group(2), relator)


def v0_relators(n: int) -> List[str]:
    return ["[x,a]", "[y,a]", "[b^-1,y^-1]*x^-1", f"[b^-1,x^-1]^{n}*a^-1"]


def v0_presentation(n: int) -> Presentation:
    _check_n(n)
    return _build(V0_GENERATORS, v0_relators(n))


def w2_relators(n: int) -> List[str]:
    return [
        "[s1,s2]",
        "[t1,s2]",
        "[t2^-1,t1^-1]*s1^-1",
        f"[t2^-1,s1^-1]^{n}*s2^-1",
        "[s1,t1]",
        "[s2,t2]",
    ]


def w2_presentation(n: int) -> Presentation:
    """The v0 relators renamed x, y, a, b -> s1, t1, s2, t2, plus [s1,t1] and [s2,t2]."""
    _check_n(n)
    return _build(CERTIFICATE_GENERATORS[:4], w2_relators(n))


XN_GLUING = ["s1*T2", "t1*S2", "s2*T1", "t2*S1"]


def xn_certificate(n: int) -> Presentation:
    """Two W2 pieces glued along the genus-2 boundary."""
    _check_n(n)
    pieces = w2_relators(n)
    return _build(CERTIFICATE_GENERATORS, pieces + [capitalized(r) for r in pieces] + XN_GLUING)


def w1_relators(n: int) -> List[str]:
    return [
        "[s1,s2]",
        "[t1,s2]",
        "[t2^-1,t1^-1]*s1^-1",
        f"[t2^-1,s1^-1]^{n}*s2^-1",
        "mu*[s2,t2]",
        "[s1^2*mu^-1,t1]*mu^-1",
    ]


YN_MU_COMMUTATION = ["[mu,t1]", "[mu,s2]", "[mu,t2]", "[mu,s1^2]"]

YN_GLUING = [
    "(s1^2*mu^-1)*(T2^-1*mu)^-1",
    "t1*(mu^-1*S2^-1)^-1",
    "s2*(mu^-1*T1^-1)^-1",
    "t2*(mu*S1^-2*mu)^-1",
]


def yn_certificate(n: int) -> Presentation:
    """
    Two W1 pieces sharing the meridian mu, with mu commuting with the
    images of both pieces' generators, glued by the boundary map.
    """
    _check_n(n)
    pieces = w1_relators(n)
    relators = (
        pieces
        + [capitalized(r) for r in pieces]
        + YN_MU_COMMUTATION
        + [capitalized(r) for r in YN_MU_COMMUTATION]
        + YN_GLUING
    )
    return _build(CERTIFICATE_GENERATORS + ('mu',), relators)


BUILTIN_CERTIFICATES = {
    'v0': v0_presentation,
    'w2': w2_presentation,
    'xn': xn_certificate,
    'yn': yn_certificate,
}
