"""
Profile arithmetic under the standard cut-and-paste operations.

Fundamental groups are never inferred here. An operation either keeps a
descriptor it can justify (a simply connected summand, a free quotient of
a simply connected manifold) or sets it to unknown; only certify_pi1
attaches a computed group.
"""

import logging
from typing import Optional

from fpgroup.coset_enumeration import EnumerationBounds, coset_enumerate
from fpgroup.presentation import Presentation
from fpgroup.triviality import NONTRIVIAL, TRIVIAL as VERDICT_TRIVIAL, TrivialityVerdict, is_trivial
from lattice.intersection_forms import IntLattice, direct_sum, signature_and_parity
from manifold.exceptions import ProfileInvariantError, UnsupportedOperationError
from manifold.profiles import (
    INVOLUTION,
    NO,
    PI1_PRESENTED,
    PI1_Z2,
    SURFACE_PREFIX,
    TRIVIAL,
    UNKNOWN,
    UNKNOWN_PI1,
    YES,
    Z2,
    ManifoldProfile,
    Pi1,
    both_spin,
    surface_flag,
)
from swengine.blowup import blowup_sw
from swengine.state import SWState
from swengine.surgery import SurgerySpec, apply_surgery_chain

logger = logging.getLogger(__name__)


def _cover_spin(p: ManifoldProfile) -> str:
    return p.spin if p.pi1.is_trivial else p.cover_spin


def _surface_flags(p: ManifoldProfile):
    return {f for f in p.flags if f.startswith(SURFACE_PREFIX)}


def _disjoint_sum(first: IntLattice, second: IntLattice) -> IntLattice:
    taken = set(first.basis_labels)
    labels = []
    for label in second.basis_labels:
        while label in taken:
            label = f"{label}'"
        taken.add(label)
        labels.append(label)
    second = IntLattice(second.gram, tuple(labels), second.name, second.unimodular)
    return direct_sum(first, second)


# ========================
# SUMS
# ========================

def connected_sum(p1: ManifoldProfile, p2: ManifoldProfile, name: Optional[str] = None) -> ManifoldProfile:
    if not (p1.pi1.is_trivial or p2.pi1.is_trivial):
        raise UnsupportedOperationError(
            f"connected sum of {p1.name} and {p2.name}: neither summand is simply connected"
        )
    pi1 = p2.pi1 if p1.pi1.is_trivial else p1.pi1
    form = None
    if p1.intersection_form is not None and p2.intersection_form is not None:
        form = _disjoint_sum(p1.intersection_form, p2.intersection_form)
    result = ManifoldProfile(
        name=name or f"{p1.name}#{p2.name}",
        chi=p1.chi + p2.chi - 2,
        sigma=p1.sigma + p2.sigma,
        b1=p1.b1 + p2.b1,
        pi1=pi1,
        spin=both_spin(p1.spin, p2.spin),
        cover_spin=both_spin(_cover_spin(p1), _cover_spin(p2)),
        flags=_surface_flags(p1) | _surface_flags(p2),
        intersection_form=form,
    )
    logger.debug(f"Connected sum: {result}")
    return result


def blow_up(p: ManifoldProfile, count: int = 1, name: Optional[str] = None) -> ManifoldProfile:
    """p # count CP2bar, carrying an attached SW state and form along."""
    if count < 1:
        raise UnsupportedOperationError(f"blow-up count must be positive, got {count}")
    suffix = 'CP2bar' if count == 1 else f"{count}CP2bar"
    cp2bar = ManifoldProfile('CP2bar', 3, -1, spin=NO)
    result = p
    for _ in range(count):
        result = connected_sum(result, cp2bar)
    form = p.intersection_form.extend_diagonal(count) if p.intersection_form is not None else None
    sw = blowup_sw(p.sw, count) if p.sw is not None else None
    return result.with_changes(name=name or f"{p.name}#{suffix}", intersection_form=form, sw=sw)


def fiber_sum(p1: ManifoldProfile, p2: ManifoldProfile, genus: int, b1: Optional[int] = None,
              name: Optional[str] = None, flags=()) -> ManifoldProfile:
    """
    Fiber sum along genus-``genus`` surfaces of square zero. Without an
    explicit b1 the generic estimate max(0, b1 + b1' - 2 genus) is used.
    """
    if genus < 1:
        raise UnsupportedOperationError(f"fiber sum genus must be positive, got {genus}")
    for p in (p1, p2):
        if not p.has_surface(genus):
            raise UnsupportedOperationError(f"{p.name} records no square-zero genus {genus} surface")
    if b1 is None:
        b1 = max(0, p1.b1 + p2.b1 - 2 * genus)
    result = ManifoldProfile(
        name=name or f"{p1.name}#_g{genus}{p2.name}",
        chi=p1.chi + p2.chi + 4 * (genus - 1),
        sigma=p1.sigma + p2.sigma,
        b1=b1,
        pi1=UNKNOWN_PI1,
        flags=flags,
    )
    logger.debug(f"Fiber sum: {result}")
    return result


# ========================
# SURGERY
# ========================

def torus_surgery_profile(p: ManifoldProfile, spec: SurgerySpec, pi1: Optional[Pi1] = None,
                          name: Optional[str] = None) -> ManifoldProfile:
    """
    Chi and sigma are unchanged. A surgery that kills a hyperbolic pair
    lowers b1 by one; an attached SW state follows when the step has a
    vanishing axiom.
    """
    if spec.is_identity:
        return p
    b1 = p.b1
    form = p.intersection_form
    if spec.kills_pair:
        if not b1:
            raise ProfileInvariantError(f"surgery {spec} kills a class of {p.name}, which has b1 = 0")
        b1 -= 1
        if form is not None:
            form = form.drop_labels(spec.kills_pair)
    sw = None
    if p.sw is not None and spec.vanishing_axiom and not p.sw.exceptional:
        sw = apply_surgery_chain(p.sw, [spec])
    result = ManifoldProfile(
        name=name or f"{p.name}[{spec}]",
        chi=p.chi,
        sigma=p.sigma,
        b1=b1,
        pi1=pi1 or UNKNOWN_PI1,
        sw=sw,
        intersection_form=form,
    )
    logger.debug(f"Torus surgery {spec}: {result}")
    return result


# ========================
# COVERS AND QUOTIENTS
# ========================

def free_quotient(p: ManifoldProfile, order: int = 2, name: Optional[str] = None,
                  spin: str = UNKNOWN) -> ManifoldProfile:
    """
    Quotient of a simply connected profile by a free orientation-preserving
    action. Chi and sigma divide by the order. Definite quotients with
    b2 > 0 are non-spin, as are their covers.
    """
    if order < 2:
        raise UnsupportedOperationError(f"quotient order must be at least 2, got {order}")
    if not p.pi1.is_trivial:
        raise UnsupportedOperationError(f"free quotient of {p.name} needs a simply connected profile")
    if not p.has_involution:
        raise UnsupportedOperationError(f"{p.name} records no free involution")
    if p.chi % order or p.sigma % order:
        raise UnsupportedOperationError(
            f"chi = {p.chi} and sigma = {p.sigma} of {p.name} are not both divisible by {order}"
        )
    chi, sigma = p.chi // order, p.sigma // order
    pi1 = Z2 if order == 2 else Pi1(PI1_PRESENTED, f"Z/{order}")
    cover_spin = p.spin
    b2 = chi - 2
    if b2 > 0 and abs(sigma) == b2:
        if p.spin == YES:
            raise ProfileInvariantError(f"spin {p.name} cannot cover a definite manifold with b2 = {b2}")
        spin, cover_spin = NO, NO
    result = ManifoldProfile(
        name=name or f"{p.name}/Z{order}",
        chi=chi,
        sigma=sigma,
        b1=0,
        pi1=pi1,
        spin=spin,
        cover_spin=cover_spin,
    )
    logger.debug(f"Free quotient: {result}")
    return result


def double_cover(p: ManifoldProfile, name: Optional[str] = None) -> ManifoldProfile:
    """Universal cover of a pi1 = Z2 profile, with its deck involution."""
    if p.pi1.kind != PI1_Z2:
        raise UnsupportedOperationError(f"double cover of {p.name} needs pi1 = Z2, got {p.pi1}")
    return ManifoldProfile(
        name=name or f"cover({p.name})",
        chi=2 * p.chi,
        sigma=2 * p.sigma,
        pi1=TRIVIAL,
        spin=p.cover_spin,
        cover_spin=p.cover_spin,
        flags={INVOLUTION},
    )


# ========================
# ATTACHING DATA
# ========================

def _certifies_z2(presentation: Presentation, verdict: TrivialityVerdict, bounds) -> bool:
    if verdict.status != NONTRIVIAL:
        return False
    if verdict.source == 'enumeration':
        return verdict.witness == 'order 2'
    if verdict.source == 'abelianization' and verdict.witness == 'Z/2':
        outcome = coset_enumerate(presentation, bounds=bounds)
        return outcome.completed and outcome.index == 2
    return False


def certify_pi1(p: ManifoldProfile, presentation: Presentation, verdict: Optional[TrivialityVerdict] = None,
                ref: str = '', bounds: Optional[EnumerationBounds] = None) -> ManifoldProfile:
    """
    Set pi1 from a triviality verdict on ``presentation``. A group of
    order 2, certified by a completed enumeration, sets Z2; any other
    nontrivial or unknown outcome keeps the presentation as the descriptor.
    """
    if verdict is None:
        verdict = is_trivial(presentation, bounds=bounds)
    cover_spin = p.cover_spin
    if verdict.status == VERDICT_TRIVIAL:
        pi1 = TRIVIAL
        cover_spin = p.spin
    elif _certifies_z2(presentation, verdict, bounds):
        pi1 = Z2
    else:
        pi1 = Pi1(PI1_PRESENTED, ref or p.name, presentation)
    logger.info(f"pi1 of {p.name}: {verdict} -> {pi1}")
    return p.with_changes(pi1=pi1, cover_spin=cover_spin)


def with_intersection_form(p: ManifoldProfile, L: IntLattice) -> ManifoldProfile:
    """
    Attach an intersection form. Its rank and signature must match the
    profile. Odd forms are never spin; even forms are spin when the
    profile is simply connected.
    """
    if L.rank != p.b2:
        raise ProfileInvariantError(f"form of rank {L.rank} on {p.name}, which has b2 = {p.b2}")
    sigma, parity = signature_and_parity(L)
    if sigma != p.sigma:
        raise ProfileInvariantError(f"form of signature {sigma} on {p.name}, which has sigma = {p.sigma}")
    spin = p.spin
    if parity == 'odd':
        if spin == YES:
            raise ProfileInvariantError(f"odd form on spin profile {p.name}")
        spin = NO
    elif p.pi1.is_trivial:
        if spin == NO:
            raise ProfileInvariantError(f"even form on simply connected non-spin profile {p.name}")
        spin = YES
    cover_spin = spin if p.pi1.is_trivial else p.cover_spin
    definite_diagonal = p.definite_diagonal
    if p.is_definite and p.b2 > 0:
        definite_diagonal = all(
            L.gram[i][j] == 0 for i in range(L.rank) for j in range(L.rank) if i != j
        )
    return p.with_changes(spin=spin, cover_spin=cover_spin, definite_diagonal=definite_diagonal,
                          intersection_form=L)


def attach_sw(p: ManifoldProfile, state: SWState) -> ManifoldProfile:
    if state.lattice.rank != p.b2:
        raise ProfileInvariantError(f"SW state on rank {state.lattice.rank} for {p.name}, which has b2 = {p.b2}")
    return p.with_changes(sw=state)


def with_surface(p: ManifoldProfile, genus: int) -> ManifoldProfile:
    return p.with_changes(flags=p.flags | {surface_flag(genus)})
