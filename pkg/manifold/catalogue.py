"""
Named standard manifolds.

``get_profile`` also resolves blow-ups of catalogued manifolds written as
``<name>#CP2bar`` or ``<name>#<k>CP2bar``.
"""

import re
from functools import lru_cache
from typing import Dict

from fpgroup.presentation import parse_presentation
from lattice.intersection_forms import diagonal, direct_sum, hyperbolic
from manifold.exceptions import UnknownProfileError
from manifold.operations import blow_up, with_surface
from manifold.profiles import INVOLUTION, NO, PI1_PRESENTED, YES, Z2, ManifoldProfile, Pi1

BLOWUP_NAME = re.compile(r'^(?P<base>.+?)#(?P<count>\d*)CP2bar$')

T4_PI1 = "gens: a b c d; rels: [a,b] [a,c] [a,d] [b,c] [b,d] [c,d]"


@lru_cache(maxsize=None)
def catalogue() -> Dict[str, ManifoldProfile]:
    t4_form = direct_sum(
        hyperbolic(('t1', 'T1')), hyperbolic(('t2', 'T2')), hyperbolic(('t3', 'T3')), name='T4'
    )
    t4 = ManifoldProfile(
        'T4', 0, 0, b1=4,
        pi1=Pi1(PI1_PRESENTED, 'Z^4', parse_presentation(T4_PI1)),
        spin=YES, cover_spin=YES, intersection_form=t4_form,
    )
    profiles = [
        ManifoldProfile('S4', 2, 0, spin=YES, cover_spin=YES),
        ManifoldProfile('CP2', 3, 1, spin=NO, cover_spin=NO, intersection_form=diagonal((1,), ('h',), 'CP2')),
        ManifoldProfile('CP2bar', 3, -1, spin=NO, cover_spin=NO,
                        intersection_form=diagonal((-1,), ('e',), 'CP2bar')),
        ManifoldProfile('S2xS2', 4, 0, spin=YES, cover_spin=YES, flags={INVOLUTION},
                        intersection_form=hyperbolic(('a', 'b'))),
        t4,
        with_surface(blow_up(t4, 1), 2),
        with_surface(blow_up(t4, 2), 2),
        ManifoldProfile('Z0', 2, 0, pi1=Z2, spin=YES, cover_spin=YES),
        ManifoldProfile('Z1', 2, 0, pi1=Z2, spin=NO, cover_spin=YES),
    ]
    return {p.name: p for p in profiles}


def get_profile(name: str) -> ManifoldProfile:
    profiles = catalogue()
    if name in profiles:
        return profiles[name]
    match = BLOWUP_NAME.match(name)
    if match and match.group('base') in profiles:
        count = int(match.group('count') or 1)
        if count >= 1:
            return blow_up(profiles[match.group('base')], count, name=name)
    raise UnknownProfileError(f"no catalogued profile named '{name}'; known: {', '.join(profiles)}")
