"""
Todd-Coxeter coset enumeration.

Two strategies share one table: HLT (relator based, fills scans by defining
new cosets, with a lookahead pass when the live-coset bound is hit) and
Felsch (defines cosets in order and scans every relator conjugate through
each new deduction). Generator g owns columns 2g (g) and 2g+1 (g^-1).
"""

import logging
from collections import deque
from dataclasses import dataclass, field
from typing import Optional, Sequence, Tuple, Union

from django.conf import settings

from config.exceptions import InputError
from fpgroup.presentation import Presentation
from fpgroup.words import Word, free_reduce

logger = logging.getLogger(__name__)

STRATEGIES = ('hlt', 'felsch')


@dataclass(frozen=True)
class CompletedIndex:
    index: int

    def __str__(self):
        return f"CompletedIndex({self.index})"


@dataclass(frozen=True)
class BoundExceeded:
    bound: str = 'max_cosets'

    def __str__(self):
        return "BoundExceeded"


@dataclass(frozen=True)
class EnumerationBounds:
    max_cosets: Optional[int] = None
    max_definitions: Optional[int] = None

    def __post_init__(self):
        if self.max_cosets is None:
            object.__setattr__(self, 'max_cosets', settings.FOURCALC_MAX_COSETS)
        if self.max_definitions is None:
            object.__setattr__(self, 'max_definitions', settings.FOURCALC_MAX_DEFINITIONS)
        if self.max_cosets < 1 or self.max_definitions < 1:
            raise InputError(
                f"enumeration bounds must be positive, got max_cosets={self.max_cosets}, "
                f"max_definitions={self.max_definitions}"
            )


@dataclass(frozen=True)
class EnumerationOutcome:
    verdict: Union[CompletedIndex, BoundExceeded]
    cosets_defined: int
    max_live_cosets: int
    strategy: str = 'hlt'
    table: Optional[Tuple[Tuple[int, ...], ...]] = field(default=None, compare=False, repr=False)

    @property
    def completed(self):
        return isinstance(self.verdict, CompletedIndex)

    @property
    def index(self):
        return self.verdict.index if self.completed else None

    def __str__(self):
        return (
            f"{self.verdict} (strategy={self.strategy}, cosets_defined={self.cosets_defined}, "
            f"max_live_cosets={self.max_live_cosets})"
        )


class _BoundReached(Exception):
    def __init__(self, bound):
        super().__init__(bound)
        self.bound = bound


def _columns(word: Word):
    return tuple(2 * g + (0 if s == 1 else 1) for g, s in word.letters)


class CosetTable:
    """
    Coset table for the subgroup generated by ``subgroup_gens``.

    ``p`` is the coincidence forest: p[a] == a exactly for live cosets.
    """

    # deduction stack size that triggers a lookahead pass (Felsch)
    max_stack_size = 500

    def __init__(self, presentation: Presentation, subgroup_gens: Sequence[Word],
                 bounds: EnumerationBounds, lookahead=True):
        self.presentation = presentation
        self.bounds = bounds
        self.lookahead = lookahead
        self.ncols = 2 * presentation.rank
        self.table = [[None] * self.ncols]
        self.p = [0]
        self.live = 1
        self.cosets_defined = 1
        self.max_live = 1
        self.relators = [_columns(r) for r in presentation.relators]
        self.subgroup = [_columns(free_reduce(w)) for w in subgroup_gens]
        self.record_deductions = False
        self.deductions = []

    # ========================
    # TABLE PRIMITIVES
    # ========================

    def is_live(self, coset):
        return self.p[coset] == coset

    def is_complete(self):
        return all(
            None not in row for coset, row in enumerate(self.table) if self.p[coset] == coset
        )

    def define(self, alpha, column):
        if self.live >= self.bounds.max_cosets:
            raise _BoundReached('max_cosets')
        if self.cosets_defined >= self.bounds.max_definitions:
            raise _BoundReached('max_definitions')
        beta = len(self.table)
        self.table.append([None] * self.ncols)
        self.p.append(beta)
        self.table[alpha][column] = beta
        self.table[beta][column ^ 1] = alpha
        self.cosets_defined += 1
        self.live += 1
        if self.live > self.max_live:
            self.max_live = self.live
        if self.record_deductions:
            self.deductions.append((alpha, column))

    def scan(self, alpha, word, fill=False):
        table = self.table
        f, i = alpha, 0
        b, j = alpha, len(word) - 1
        while True:
            while i <= j and table[f][word[i]] is not None:
                f = table[f][word[i]]
                i += 1
            if i > j:
                if f != b:
                    self.coincidence(f, b)
                return
            while j >= i and table[b][word[j] ^ 1] is not None:
                b = table[b][word[j] ^ 1]
                j -= 1
            if j < i:
                self.coincidence(f, b)
                return
            if j == i:
                # deduction
                table[f][word[i]] = b
                table[b][word[i] ^ 1] = f
                if self.record_deductions:
                    self.deductions.append((f, word[i]))
                return
            if not fill:
                return
            self.define(f, word[i])

    def rep(self, k):
        p = self.p
        root = k
        while p[root] != root:
            root = p[root]
        while p[k] != root:
            p[k], k = root, p[k]
        return root

    def merge(self, k, lamda, queue):
        phi = self.rep(k)
        psi = self.rep(lamda)
        if phi != psi:
            mu, v = min(phi, psi), max(phi, psi)
            self.p[v] = mu
            self.live -= 1
            queue.append(v)

    def coincidence(self, alpha, beta):
        table = self.table
        queue = deque()
        self.merge(alpha, beta, queue)
        while queue:
            gamma = queue.popleft()
            for column in range(self.ncols):
                delta = table[gamma][column]
                if delta is None:
                    continue
                table[delta][column ^ 1] = None
                if self.record_deductions:
                    self.deductions.append((delta, column ^ 1))
                mu = self.rep(gamma)
                nu = self.rep(delta)
                if table[mu][column] is not None:
                    self.merge(nu, table[mu][column], queue)
                elif table[nu][column ^ 1] is not None:
                    self.merge(mu, table[nu][column ^ 1], queue)
                else:
                    table[mu][column] = nu
                    table[nu][column ^ 1] = mu

    def look_ahead(self):
        """Scan every relator at every live coset without defining anything."""
        for beta in range(len(self.table)):
            if self.p[beta] != beta:
                continue
            for word in self.relators:
                self.scan(beta, word)
                if self.p[beta] != beta:
                    break

    def verify_closed(self):
        """True when the table is complete and every relator closes at every coset."""
        before = self.live
        for word in self.subgroup:
            self.scan(0, word)
        self.look_ahead()
        return self.live == before and self.is_complete()

    # ========================
    # STRATEGIES
    # ========================

    def run_hlt(self):
        for word in self.subgroup:
            self.scan(0, word, fill=True)
        alpha = 0
        while alpha < len(self.table):
            if self.p[alpha] == alpha:
                try:
                    for word in self.relators:
                        self.scan(alpha, word, fill=True)
                        if self.p[alpha] != alpha:
                            break
                    if self.p[alpha] == alpha:
                        for column in range(self.ncols):
                            if self.table[alpha][column] is None:
                                self.define(alpha, column)
                except _BoundReached as reached:
                    if not self.lookahead or reached.bound != 'max_cosets':
                        raise
                    self.look_ahead()
                    logger.debug(f"Lookahead at coset {alpha}: {self.live} live cosets remain")
                    if self.live >= self.bounds.max_cosets:
                        raise
                    continue
            alpha += 1

    def _conjugates(self):
        by_column = {column: set() for column in range(self.ncols)}
        for word in self.relators:
            inverse = tuple(c ^ 1 for c in reversed(word))
            for variant in (word, inverse):
                for shift in range(len(variant)):
                    rotated = variant[shift:] + variant[:shift]
                    by_column[rotated[0]].add(rotated)
        return {column: sorted(words) for column, words in by_column.items()}

    def process_deductions(self, conjugates):
        while self.deductions:
            if len(self.deductions) >= self.max_stack_size:
                self.look_ahead()
                self.deductions.clear()
                continue
            alpha, column = self.deductions.pop()
            if self.p[alpha] == alpha:
                for word in conjugates[column]:
                    self.scan(alpha, word)
                    if self.p[alpha] != alpha:
                        break
            beta = self.table[alpha][column]
            if beta is not None and self.p[beta] == beta:
                for word in conjugates[column ^ 1]:
                    self.scan(beta, word)
                    if self.p[beta] != beta:
                        break

    def run_felsch(self):
        self.record_deductions = True
        conjugates = self._conjugates()
        for word in self.subgroup:
            self.scan(0, word, fill=True)
        self.process_deductions(conjugates)
        alpha = 0
        while alpha < len(self.table):
            if self.p[alpha] == alpha:
                for column in range(self.ncols):
                    if self.p[alpha] != alpha:
                        break
                    if self.table[alpha][column] is None:
                        self.define(alpha, column)
                        self.process_deductions(conjugates)
            alpha += 1

    def compressed(self):
        live = [c for c in range(len(self.table)) if self.p[c] == c]
        position = {coset: i for i, coset in enumerate(live)}
        return tuple(
            tuple(position[self.rep(entry)] for entry in self.table[coset]) for coset in live
        )


def coset_enumerate(p: Presentation, subgroup_gens: Sequence[Word] = (),
                    bounds: Optional[EnumerationBounds] = None,
                    strategy: Optional[str] = None,
                    lookahead: Optional[bool] = None) -> EnumerationOutcome:
    """
    Enumerate the cosets of the subgroup generated by ``subgroup_gens``.

    Deterministic for fixed inputs; always terminates, either with the exact
    index or with a BoundExceeded verdict.
    """
    bounds = bounds or EnumerationBounds()
    strategy = strategy or settings.FOURCALC_ENUMERATION_STRATEGY
    if strategy not in STRATEGIES:
        raise InputError(f"unknown enumeration strategy '{strategy}', expected one of {STRATEGIES}")
    if lookahead is None:
        lookahead = settings.FOURCALC_LOOKAHEAD
    for word in subgroup_gens:
        p.check_word(word)

    table = CosetTable(p, subgroup_gens, bounds, lookahead=lookahead)
    run = table.run_hlt if strategy == 'hlt' else table.run_felsch
    try:
        while True:
            run()
            if table.verify_closed():
                break
        verdict = CompletedIndex(table.live)
        rows = table.compressed()
    except _BoundReached as reached:
        verdict = BoundExceeded(reached.bound)
        rows = None
        logger.warning(
            f"Coset enumeration stopped at {reached.bound}: "
            f"{table.cosets_defined} defined, {table.max_live} max live"
        )

    outcome = EnumerationOutcome(
        verdict=verdict,
        cosets_defined=table.cosets_defined,
        max_live_cosets=table.max_live,
        strategy=strategy,
        table=rows,
    )
    logger.info(f"Enumerated {p.rank} generators / {len(p.relators)} relators: {outcome}")
    return outcome
