"""
Homology configurations of the building blocks U and R and of the 0-surgered
blocks whose SW invariants vanish.

U has four hyperbolic pairs of tori d_i, D_i, a pair x, y of genus-2
surfaces with x.y = 1, and four square -1 classes q_i meeting x once. R
has the same tori and x, y, with two genus-2 square -1 classes q_i meeting
x twice. Smoothing x with q_i gives the derived surfaces of positive
square. Every search basis replaces q_i by m y - q_i (m = 1 for U, m = 2
for R), which splits the form as a sum of hyperbolic pairs and -1's.
"""

import logging
from dataclasses import dataclass
from functools import lru_cache
from typing import Dict, Optional, Sequence, Tuple

from lattice.intersection_forms import BasisChange, IntLattice, LatticeVector
from lattice.surfaces import SurfaceClass, combine_surfaces
from manifold.catalogue import get_profile
from manifold.operations import fiber_sum, torus_surgery_profile, with_intersection_form
from manifold.profiles import ManifoldProfile
from paperlib.axioms import AxiomRecord, axioms
from paperlib.exceptions import UnknownBlockError
from swengine.adjunction import AdjunctionConfig, enumerate_basic_candidates
from swengine.surgery import SurgerySpec

logger = logging.getLogger(__name__)

TORUS_PAIRS = tuple((f"d{i}", f"D{i}") for i in range(1, 5))
TORUS_LABELS = tuple(label for pair in TORUS_PAIRS for label in pair)

BLOCK_IDS = ('U', 'R', 'vanishing-P', 'vanishing-Q-odd', 'vanishing-Q-even')


@dataclass(frozen=True)
class Block:
    block_id: str
    profile: ManifoldProfile
    lattice: IntLattice
    surfaces: Tuple[SurfaceClass, ...]
    search: BasisChange
    axioms: Tuple[AxiomRecord, ...] = ()

    def config(self, eval_bound: Optional[int] = None) -> AdjunctionConfig:
        return AdjunctionConfig(self.surfaces, self.profile.chi, self.profile.sigma,
                                eval_bound=eval_bound, search_basis=self.search)

    def candidates(self, eval_bound: Optional[int] = None):
        return enumerate_basic_candidates(self.config(eval_bound), self.lattice)


def _lattice(name, q_count, q_on_x):
    labels = TORUS_LABELS + ('x', 'y') + tuple(f"q{i}" for i in range(1, q_count + 1))
    index = {label: i for i, label in enumerate(labels)}
    gram = [[0] * len(labels) for _ in labels]

    def pair(a, b, value):
        gram[index[a]][index[b]] = gram[index[b]][index[a]] = value

    for d, D in TORUS_PAIRS:
        pair(d, D, 1)
    pair('x', 'y', 1)
    for i in range(1, q_count + 1):
        pair(f"q{i}", f"q{i}", -1)
        pair('x', f"q{i}", q_on_x)
    return IntLattice(tuple(map(tuple, gram)), labels, name, unimodular=True)


def _search_basis(L: IntLattice, y_multiple: int) -> BasisChange:
    rows, labels = [], []
    for label in L.basis_labels:
        if label.startswith('q'):
            rows.append(L.vector({'y': y_multiple, label: -1}))
            labels.append(f"e{label[1:]}")
        else:
            rows.append(L.basis_vector(label))
            labels.append(label)
    return L.change_basis(rows, labels)


def _surfaces(L: IntLattice, genera: Dict[str, int], smoothing: int, extra: Sequence[SurfaceClass] = ()):
    """Embedded surfaces on the basis classes, plus each x + q_i smoothed at ``smoothing`` points."""
    surfaces = [SurfaceClass.on(L, L.basis_vector(label), genus, label) for label, genus in genera.items()]
    by_label = {s.label: s for s in surfaces}
    for label in L.basis_labels:
        if label.startswith('q') and 'x' in by_label:
            surfaces.append(combine_surfaces(L, by_label['x'], by_label[label], smoothing))
    return tuple(surfaces) + tuple(extra)


def _genera(L: IntLattice, y_genus: Optional[int], q_genus: int):
    genera = {label: 1 for label in L.basis_labels if label[0] in 'dD'}
    genera['x'] = 2
    if y_genus is not None:
        genera['y'] = y_genus
    genera.update({label: q_genus for label in L.basis_labels if label.startswith('q')})
    return genera


# (q count, q . x, genus of q); q . x is also the search multiple of y
# and the number of points smoothed in x + q
FAMILIES = {'U': (4, 1, 1), 'R': (2, 2, 2)}


def _build_base(block_id: str, piece_name: str) -> Block:
    q_count, q_on_x, q_genus = FAMILIES[block_id]
    L = _lattice(block_id, q_count, q_on_x)
    piece = get_profile(piece_name)
    profile = with_intersection_form(fiber_sum(piece, piece, 2, name=block_id), L)
    surfaces = _surfaces(L, _genera(L, 2, q_genus), q_on_x)
    return Block(block_id, profile, L, surfaces, _search_basis(L, q_on_x), axioms('symplectic-seed'))


def _zero_surgery(parent: Block, block_id: str, pair, y_genus: Optional[int], axiom_id: str,
                  extra_y_multiple: Optional[int] = None) -> Block:
    """The 0-surgery on the torus pair[0]: the pair leaves the lattice."""
    _, q_on_x, q_genus = FAMILIES[parent.block_id]
    L = parent.lattice.drop_labels(pair, name=block_id)
    profile = torus_surgery_profile(parent.profile, SurgerySpec(pair[0], (0, 1), kills_pair=pair))
    profile = profile.with_changes(name=block_id, intersection_form=L)
    extra = ()
    if extra_y_multiple:
        extra = (SurfaceClass.on(L, L.vector({'y': extra_y_multiple}), 2, f"{extra_y_multiple}y"),)
    surfaces = _surfaces(L, _genera(L, y_genus, q_genus), q_on_x, extra)
    return Block(block_id, profile, L, surfaces, _search_basis(L, q_on_x), axioms(axiom_id))


@lru_cache(maxsize=None)
def build_block(block_id: str) -> Block:
    if block_id == 'U':
        block = _build_base('U', 'T4#2CP2bar')
    elif block_id == 'R':
        block = _build_base('R', 'T4#CP2bar')
    elif block_id == 'vanishing-P':
        block = _zero_surgery(build_block('U'), block_id, ('d1', 'D1'), 1, 'vanishing-P')
    elif block_id == 'vanishing-Q-odd':
        block = _zero_surgery(build_block('R'), block_id, ('d1', 'D1'), 1, 'vanishing-Q')
    elif block_id == 'vanishing-Q-even':
        block = _zero_surgery(build_block('R'), block_id, ('d2', 'D2'), None, 'vanishing-Q',
                              extra_y_multiple=2)
    else:
        raise UnknownBlockError(f"unknown block '{block_id}'; known: {', '.join(BLOCK_IDS)}")
    logger.info(f"Built block {block_id}: rank {block.lattice.rank}, {len(block.surfaces)} surfaces")
    return block


def candidate_summary(block: Block, candidates: Sequence[LatticeVector]):
    """Count, squares and negation closure of a candidate list."""
    keys = set(candidates)
    return {
        'count': len(candidates),
        'squares': sorted({block.lattice.square(K) for K in candidates}),
        'negation_closed': all(-K in keys for K in keys),
    }
