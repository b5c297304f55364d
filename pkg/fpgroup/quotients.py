"""
Surjections onto a small library of finite groups.

Targets are built as sympy permutation groups and flattened to
multiplication tables; the search assigns generator images by
backtracking and rejects a partial assignment as soon as a relator whose
generators are all assigned fails to evaluate to the identity.
"""

import logging
from dataclasses import dataclass
from functools import lru_cache
from typing import List, Optional, Tuple

from django.conf import settings
from sympy.combinatorics import Permutation, PermutationGroup
from sympy.combinatorics.named_groups import CyclicGroup, DihedralGroup, SymmetricGroup

from fpgroup.exceptions import QuotientCeilingError
from fpgroup.presentation import Presentation
from fpgroup.words import Word

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class FiniteGroup:
    group_id: str
    table: Tuple[Tuple[int, ...], ...]
    identity: int
    inverse: Tuple[int, ...]

    @property
    def order(self):
        return len(self.table)

    @classmethod
    def from_permutations(cls, group_id, group: PermutationGroup):
        elements = sorted(group.elements, key=lambda g: g.array_form)
        index = {g: i for i, g in enumerate(elements)}
        table = tuple(tuple(index[a * b] for b in elements) for a in elements)
        identity = next(i for i, g in enumerate(elements) if g.is_Identity)
        inverse = tuple(index[g ** -1] for g in elements)
        return cls(group_id, table, identity, inverse)

    def evaluate(self, word: Word, images) -> int:
        value = self.identity
        for generator, sign in word.letters:
            image = images[generator]
            value = self.table[value][image if sign == 1 else self.inverse[image]]
        return value

    def generated_order(self, elements) -> int:
        reached = {self.identity}
        frontier = [self.identity]
        while frontier:
            current = frontier.pop()
            for g in elements:
                nxt = self.table[current][g]
                if nxt not in reached:
                    reached.add(nxt)
                    frontier.append(nxt)
        return len(reached)


def _dicyclic(m) -> PermutationGroup:
    """Regular representation of the quaternion-type group of order 4m."""
    elements = [(k, e) for e in (0, 1) for k in range(2 * m)]
    position = {x: i for i, x in enumerate(elements)}

    def multiply(x, y):
        (k, e), (l, f) = x, y
        if e == 0:
            return ((k + l) % (2 * m), f)
        if f == 0:
            return ((k - l) % (2 * m), 1)
        return ((k - l + m) % (2 * m), 0)

    def left(x):
        return Permutation([position[multiply(x, y)] for y in elements])

    return PermutationGroup([left((1, 0)), left((0, 1))])


@lru_cache(maxsize=None)
def quotient_library(max_order: int) -> Tuple[FiniteGroup, ...]:
    groups = []
    for k in range(2, max_order + 1):
        groups.append(FiniteGroup.from_permutations(f"Z/{k}", CyclicGroup(k)))
    for m in range(3, max_order // 2 + 1):
        groups.append(FiniteGroup.from_permutations(f"D{2 * m}", DihedralGroup(m)))
    for order, m in ((8, 2), (16, 4)):
        if order <= max_order:
            groups.append(FiniteGroup.from_permutations(f"Q{order}", _dicyclic(m)))
    if max_order >= 6:
        groups.append(FiniteGroup.from_permutations("S3", SymmetricGroup(3)))
    return tuple(groups)


@dataclass(frozen=True)
class Epimorphism:
    group_id: str
    images: Tuple[Tuple[str, int], ...]

    def __str__(self):
        return f"epimorphism onto {self.group_id}"


def _generator_order(p: Presentation):
    """Greedy order that completes as many relators as early as possible."""
    remaining = set(range(p.rank))
    assigned = set()
    order = []
    supports = [r.generators() for r in p.relators]
    while remaining:
        def score(g):
            closes = sum(1 for s in supports if g in s and s <= assigned | {g})
            touches = sum(1 for s in supports if g in s)
            return (-closes, -touches, g)
        g = min(remaining, key=score)
        order.append(g)
        assigned.add(g)
        remaining.discard(g)
    return order


def _search(p: Presentation, group: FiniteGroup, order, checks):
    images = [None] * p.rank
    found = []

    def assign(depth):
        if depth == len(order):
            if group.generated_order(images) == group.order:
                found.append(tuple(images))
            return
        generator = order[depth]
        for candidate in range(group.order):
            images[generator] = candidate
            if all(group.evaluate(r, images) == group.identity for r in checks[depth]):
                assign(depth + 1)
        images[generator] = None

    assign(0)
    return found


def finite_quotient_scan(p: Presentation, max_order: Optional[int] = None) -> List[Epimorphism]:
    """
    Every surjection of ``p`` onto a library group of order <= max_order.
    Duplicates across isomorphic library entries are kept.
    """
    ceiling = settings.FOURCALC_QUOTIENT_CEILING
    if max_order is None:
        max_order = ceiling
    if max_order > ceiling:
        raise QuotientCeilingError(f"max_order {max_order} exceeds the configured ceiling {ceiling}")
    if max_order < 2:
        return []

    order = _generator_order(p)
    position = {g: depth for depth, g in enumerate(order)}
    checks = [[] for _ in order]
    for relator in p.relators:
        checks[max(position[g] for g in relator.generators())].append(relator)

    results = []
    for group in quotient_library(max_order):
        for images in _search(p, group, order, checks):
            results.append(Epimorphism(group.group_id, tuple(zip(p.generator_names, images))))
    logger.debug(f"Quotient scan up to order {max_order}: {len(results)} surjections")
    return results
