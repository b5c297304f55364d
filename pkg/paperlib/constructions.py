"""
The exotic families: X_n and Y_n from four torus surgeries on U and R,
their free quotients X'_n and Y'_n, and A_n = Y'_n # (b2 - 1) CP2bar.
"""

import logging
from dataclasses import dataclass
from functools import lru_cache
from typing import List, Optional, Tuple

from django.conf import settings

from fpgroup.presentation import Presentation
from lattice.intersection_forms import LatticeVector
from manifold.operations import (
    attach_sw,
    blow_up,
    certify_pi1,
    free_quotient,
    torus_surgery_profile,
    with_intersection_form,
)
from manifold.profiles import INVOLUTION, ManifoldProfile
from paperlib.axioms import AxiomRecord, axioms
from paperlib.blocks import TORUS_PAIRS, Block, build_block
from paperlib.certificates import xn_certificate, yn_certificate
from paperlib.exceptions import ScenarioParameterError
from swengine.blowup import blowup_sw
from swengine.state import SWState, seed_state
from swengine.surgery import SurgerySpec, trace_surgery_chain

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class Construction:
    profile: ManifoldProfile
    sw: Optional[SWState]
    certificate: Optional[Presentation]
    trace: Tuple[int, ...] = ()
    axioms: Tuple[AxiomRecord, ...] = ()


def check_n(n: int):
    if not 1 <= n <= settings.FOURCALC_MAX_N:
        raise ScenarioParameterError(f"n must lie in 1..{settings.FOURCALC_MAX_N}, got {n}")


def check_b2(b2: int):
    if not 1 <= b2 <= settings.FOURCALC_MAX_B2:
        raise ScenarioParameterError(f"b2 must lie in 1..{settings.FOURCALC_MAX_B2}, got {b2}")


def surgery_chain(n: int, vanishing_axiom: str) -> List[SurgerySpec]:
    """Coefficients -1, -n, -1, -n on the four torus pairs, i.e. (1,-1), (n,-1), (1,-1), (n,-1)."""
    chain = []
    for i, pair in enumerate(TORUS_PAIRS):
        p = 1 if i % 2 == 0 else n
        chain.append(SurgerySpec(pair[0], (p, -1), kills_pair=pair, vanishing_axiom=vanishing_axiom))
    return chain


def canonical_class(block: Block) -> LatticeVector:
    """The candidate pairing positively with x."""
    x = block.lattice.index('x')
    for K in block.candidates():
        if block.lattice.evaluations(K)[x] > 0:
            return K
    raise ScenarioParameterError(f"block {block.block_id} has no basic class to seed from")


@lru_cache(maxsize=None)
def _build_family(block_id: str, name: str, n: int, vanishing_axiom: str) -> Construction:
    certificate = xn_certificate(n) if block_id == 'U' else yn_certificate(n)
    block = build_block(block_id)
    base = block.profile
    state = seed_state(block.lattice, base.b2plus, canonical_class(block), base.chi, base.sigma)
    profile = attach_sw(base, state)
    chain = surgery_chain(n, vanishing_axiom)
    for spec in chain:
        profile = torus_surgery_profile(profile, spec)
    profile = certify_pi1(profile, certificate, ref=name)
    profile = with_intersection_form(profile, profile.intersection_form)
    profile = profile.with_changes(name=name, flags=profile.flags | {INVOLUTION})
    trace = tuple(trace_surgery_chain(1, chain))
    used = block.axioms + axioms(vanishing_axiom, 'surgery-formula', 'normal-generation')
    logger.info(f"Built {profile} with SW trace {list(trace)}")
    return Construction(profile, profile.sw, certificate, trace, used)


def build_Xn(n: int) -> Construction:
    check_n(n)
    return _build_family('U', f"X_{n}", n, 'vanishing-P')


def build_Yn(n: int) -> Construction:
    check_n(n)
    return _build_family('R', f"Y_{n}", n, 'vanishing-Q')


def _quotient(cover: Construction, name: str) -> Construction:
    quotient = free_quotient(cover.profile, 2, name=name)
    return Construction(quotient, None, cover.certificate, cover.trace,
                        cover.axioms + axioms('free-involution', 'sigma-multiplicative'))


def build_Xn_quotient(n: int) -> Construction:
    return _quotient(build_Xn(n), f"X'_{n}")


def build_Yn_quotient(n: int) -> Construction:
    return _quotient(build_Yn(n), f"Y'_{n}")


def build_An(n: int, b2: int) -> Construction:
    """
    A_n with b2(A_n) = b2. The attached state is the SW state of the double
    cover Y_n # (2 b2 - 2) CP2bar, which has b2+ = 1.
    """
    check_b2(b2)
    return _build_an(n, b2)


@lru_cache(maxsize=None)
def _build_an(n: int, b2: int) -> Construction:
    quotient = build_Yn_quotient(n)
    profile = quotient.profile
    cover_sw = build_Yn(n).sw
    if b2 > 1:
        profile = blow_up(profile, b2 - 1)
        cover_sw = blowup_sw(cover_sw, 2 * b2 - 2)
    profile = profile.renamed(f"A_{n}" if b2 == 1 else f"A_{n}(b2={b2})")
    used = quotient.axioms + axioms(*(('blowup-formula',) if b2 > 1 else ()), 'wall-crossing')
    return Construction(profile, cover_sw, quotient.certificate, quotient.trace, used)
