"""
Adjunction filtering and exhaustive basic-class candidate enumeration.

The search runs over evaluation vectors e_j = K . b_j on a search basis
b_j of a unimodular lattice. Every such vector determines K uniquely, the
characteristic condition is a parity condition on each e_j, and
K^2 = e^T G^-1 e.
"""

import logging
from dataclasses import dataclass
from itertools import islice, product
from typing import List, Optional, Tuple

import numpy as np
from django.conf import settings

from config.exceptions import FourCalcError, InputError
from lattice.intersection_forms import BasisChange, IntLattice, LatticeVector, is_characteristic
from lattice.surfaces import SurfaceClass
from swengine.exceptions import SearchSpaceOverflowError
from swengine.state import formal_dimension

logger = logging.getLogger(__name__)

CHUNK_SIZE = 65536


def adjunction_admits(lattice: IntLattice, K, s: SurfaceClass) -> bool:
    """2g - 2 >= [S]^2 + |K . [S]| when g > 0 and [S]^2 >= 0; otherwise vacuous."""
    if not s.constrains():
        return True
    return s.adjunction_slack() >= abs(lattice.pairing(K, s.klass))


@dataclass(frozen=True)
class AdjunctionConfig:
    surfaces: Tuple[SurfaceClass, ...]
    chi: int
    sigma: int
    eval_bound: Optional[int] = None
    search_basis: Optional[BasisChange] = None
    box_limit: Optional[int] = None

    def __post_init__(self):
        object.__setattr__(self, 'surfaces', tuple(self.surfaces))
        if self.eval_bound is None:
            object.__setattr__(self, 'eval_bound', settings.FOURCALC_EVAL_BOUND)
        if self.box_limit is None:
            object.__setattr__(self, 'box_limit', settings.FOURCALC_SEARCH_BOX_LIMIT)
        if self.eval_bound < 1:
            raise InputError(f"eval_bound must be positive, got {self.eval_bound}")

    def admits(self, lattice: IntLattice, K) -> bool:
        """Exact re-check of every condition a candidate must meet."""
        if not is_characteristic(lattice, K):
            return False
        d = formal_dimension(lattice.square(K), self.chi, self.sigma)
        if d is None or d < 0:
            return False
        return all(adjunction_admits(lattice, K, s) for s in self.surfaces)


def _axis_values(bound, parity, limit=None):
    top = bound if limit is None else min(bound, limit)
    return [e for e in range(-top, top + 1) if (e - parity) % 2 == 0]


def search_axes(cfg: AdjunctionConfig, search: IntLattice, surfaces_in_search):
    """
    Allowed values of each e_j after propagating single-support surfaces.
    Tori force their coordinate to zero.
    """
    limits = [None] * search.rank
    for s, coords in zip(cfg.surfaces, surfaces_in_search):
        support = [j for j, c in enumerate(coords) if c]
        if len(support) != 1 or not s.constrains():
            continue
        j = support[0]
        bound = s.adjunction_slack() // abs(coords[j])
        limits[j] = bound if limits[j] is None else min(limits[j], bound)
    parities = [d % 2 for d in search.diagonal_entries()]
    return [_axis_values(cfg.eval_bound, parities[j], limits[j]) for j in range(search.rank)]


def enumerate_basic_candidates(cfg: AdjunctionConfig, lattice: IntLattice) -> List[LatticeVector]:
    """
    Every characteristic K (raw coordinates of ``lattice``) with non-negative
    formal dimension that satisfies adjunction for every configured surface,
    within |K . b_j| <= eval_bound on the search basis. Sorted, negation closed.
    """
    change = cfg.search_basis
    if change is not None and change.source != lattice:
        raise InputError(f"search basis is defined on {change.source}, not {lattice}")
    search = change.target if change is not None else lattice
    to_search = change.to_target if change is not None else lattice.coerce
    to_raw = change.to_source if change is not None else lattice.coerce

    surfaces_in_search = [to_search(s.klass).coords for s in cfg.surfaces]
    axes = search_axes(cfg, search, surfaces_in_search)
    box = 1
    for axis in axes:
        box *= len(axis)
    if box > cfg.box_limit:
        raise SearchSpaceOverflowError(f"residual search box of {box} points exceeds {cfg.box_limit}")
    logger.debug(f"Searching {box} evaluation vectors on {lattice}")
    if box == 0:
        return []

    G_inv = np.array(search.inverse_gram, dtype=np.int64).reshape(search.rank, search.rank)
    minimum_square = 3 * cfg.sigma + 2 * cfg.chi
    constraining = [
        (np.array(coords, dtype=np.int64), s.adjunction_slack())
        for s, coords in zip(cfg.surfaces, surfaces_in_search)
        if s.constrains()
    ]

    survivors = []
    points = product(*axes)
    while True:
        chunk = list(islice(points, CHUNK_SIZE))
        if not chunk:
            break
        E = np.array(chunk, dtype=np.int64).reshape(len(chunk), search.rank)
        squares = np.einsum('ij,jk,ik->i', E, G_inv, E)
        keep = (squares >= minimum_square) & ((squares - minimum_square) % 4 == 0)
        for coords, slack in constraining:
            keep &= np.abs(E @ coords) <= slack
        survivors.extend(E[keep].tolist())

    candidates = []
    for e in survivors:
        c = G_inv.dot(np.array(e, dtype=np.int64)).tolist()
        K = to_raw(LatticeVector(tuple(int(x) for x in c)))
        if not cfg.admits(lattice, K):
            raise FourCalcError(f"candidate {K} failed re-verification on {lattice}")
        candidates.append(K)
    candidates.sort()
    logger.info(f"Enumerated {len(candidates)} basic class candidates on {lattice}")
    return candidates
