"""
Finitely presented groups: the Presentation value, its text format and
Tietze elimination of redundant generators.

Text format::

    gens: a b c; rels: [a,b] a^3 (a*b)^-2

Relators are separated by whitespace, ``*`` concatenates, ``^`` takes an
integer power, ``[x,y]`` is x*y*x^-1*y^-1 and ``1`` is the empty word.
"""

import logging
import re
from dataclasses import dataclass, field
from typing import List, Optional, Sequence, Tuple

from fpgroup.exceptions import GeneratorIndexError, PresentationSyntaxError
from fpgroup.words import Word, cyclic_reduce, free_reduce, relabel, substitute

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class Presentation:
    generator_names: Tuple[str, ...]
    relators: Tuple[Word, ...] = ()

    def __post_init__(self):
        names = tuple(self.generator_names)
        if len(set(names)) != len(names):
            raise GeneratorIndexError(f"duplicate generator names in {names}")
        relators = []
        for relator in self.relators:
            if relator.max_generator() >= len(names):
                raise GeneratorIndexError(
                    f"relator uses generator {relator.max_generator()} "
                    f"but only {len(names)} generators exist"
                )
            reduced = cyclic_reduce(relator)
            if reduced:
                relators.append(reduced)
        object.__setattr__(self, 'generator_names', names)
        object.__setattr__(self, 'relators', tuple(relators))

    @property
    def rank(self):
        return len(self.generator_names)

    @property
    def total_length(self):
        return sum(len(r) for r in self.relators)

    def generator_index(self, name):
        try:
            return self.generator_names.index(name)
        except ValueError:
            raise GeneratorIndexError(f"unknown generator '{name}'") from None

    def generator(self, name, power=1):
        return Word.generator(self.generator_index(name), power)

    def word(self, text):
        """Parse a single word over this presentation's generators."""
        parser = _Parser(text, self.generator_names)
        word = parser.parse_relator()
        parser.expect_end()
        return free_reduce(word)

    def with_relators(self, extra: Sequence[Word]):
        return Presentation(self.generator_names, self.relators + tuple(extra))

    def without_relators(self, indices):
        dropped = set(indices)
        kept = tuple(r for i, r in enumerate(self.relators) if i not in dropped)
        return Presentation(self.generator_names, kept)

    def permuted(self, order: Sequence[int]):
        return Presentation(self.generator_names, tuple(self.relators[i] for i in order))

    def check_word(self, w: Word):
        if w.max_generator() >= self.rank:
            raise GeneratorIndexError(
                f"word uses generator {w.max_generator()} but only {self.rank} generators exist"
            )

    def __str__(self):
        return format_presentation(self)


# ============================================================================
# PRINTING
# ============================================================================

def format_word(names: Sequence[str], w: Word) -> str:
    if not w:
        return '1'
    parts = []
    letters = w.letters
    i = 0
    while i < len(letters):
        j = i
        while j < len(letters) and letters[j] == letters[i]:
            j += 1
        generator, sign = letters[i]
        power = sign * (j - i)
        parts.append(names[generator] if power == 1 else f"{names[generator]}^{power}")
        i = j
    return '*'.join(parts)


def format_presentation(p: Presentation) -> str:
    gens = ' '.join(p.generator_names)
    rels = ' '.join(format_word(p.generator_names, r) for r in p.relators)
    return f"gens: {gens}; rels: {rels}".rstrip()


# ============================================================================
# PARSING
# ============================================================================

_TOKEN = re.compile(r"\s*(?:(?P<ident>[^\W\d]\w*)|(?P<int>\d+)|(?P<sym>[\^*()\[\],;:\-]))")


class _Parser:
    def __init__(self, text, generator_names=None):
        self.text = text
        self.tokens = self._tokenize(text)
        self.pos = 0
        self.names = list(generator_names) if generator_names is not None else None

    @staticmethod
    def _tokenize(text):
        tokens = []
        index = 0
        while index < len(text):
            if text[index:].strip() == '':
                break
            match = _TOKEN.match(text, index)
            if not match:
                offset = index + (len(text[index:]) - len(text[index:].lstrip()))
                raise PresentationSyntaxError(f"unexpected character {text[offset]!r}", offset)
            kind = match.lastgroup
            start = match.start(kind)
            tokens.append((kind, match.group(kind), start))
            index = match.end()
        tokens.append(('end', '', len(text)))
        return tokens

    def peek(self):
        return self.tokens[self.pos]

    def advance(self):
        token = self.tokens[self.pos]
        self.pos += 1
        return token

    def expect(self, kind, value=None):
        token = self.advance()
        if token[0] != kind or (value is not None and token[1] != value):
            wanted = value or kind
            found = token[1] or 'end of input'
            raise PresentationSyntaxError(f"expected {wanted!r}, found {found!r}", token[2])
        return token

    def expect_end(self):
        token = self.peek()
        if token[0] != 'end':
            raise PresentationSyntaxError(f"unexpected {token[1]!r}", token[2])

    def parse_document(self):
        self.expect('ident', 'gens')
        self.expect('sym', ':')
        names = []
        while self.peek()[0] == 'ident':
            kind, name, position = self.advance()
            if name in names:
                raise PresentationSyntaxError(f"duplicate generator {name!r}", position)
            names.append(name)
        self.expect('sym', ';')
        self.names = names
        self.expect('ident', 'rels')
        self.expect('sym', ':')
        relators = []
        while self.peek()[0] != 'end' and self.peek()[1] != ';':
            relators.append(self.parse_relator())
        if self.peek()[1] == ';':
            self.advance()
        self.expect_end()
        return Presentation(tuple(names), tuple(relators))

    def parse_relator(self):
        word = self.parse_factor()
        while self.peek()[1] == '*':
            self.advance()
            word = word * self.parse_factor()
        return word

    def parse_factor(self):
        word = self.parse_atom()
        if self.peek()[1] == '^':
            self.advance()
            sign = 1
            if self.peek()[1] == '-':
                self.advance()
                sign = -1
            _, digits, _ = self.expect('int')
            word = word ** (sign * int(digits))
        return word

    def parse_atom(self):
        kind, value, position = self.advance()
        if kind == 'ident':
            if value not in self.names:
                raise PresentationSyntaxError(f"unknown generator {value!r}", position)
            return Word.generator(self.names.index(value))
        if kind == 'int' and value == '1':
            return Word()
        if value == '(':
            word = self.parse_relator()
            self.expect('sym', ')')
            return word
        if value == '[':
            left = self.parse_relator()
            self.expect('sym', ',')
            right = self.parse_relator()
            self.expect('sym', ']')
            return left * right * left.inverse() * right.inverse()
        found = value or 'end of input'
        raise PresentationSyntaxError(f"expected a generator, '(' or '[', found {found!r}", position)


def parse_presentation(text: str) -> Presentation:
    return _Parser(text).parse_document()


# ============================================================================
# TIETZE ELIMINATION
# ============================================================================

@dataclass(frozen=True)
class Simplification:
    presentation: Presentation
    eliminated: Tuple[Tuple[str, str], ...] = field(default=())


def _elimination_candidate(p: Presentation, max_length):
    best = None
    for index, relator in enumerate(p.relators):
        if len(relator) > max_length:
            continue
        for generator in sorted(relator.generators()):
            if relator.occurrences(generator) == 1:
                key = (len(relator), index, generator)
                if best is None or key < best:
                    best = key
    return best


def eliminate_generators(p: Presentation, max_length: Optional[int] = None) -> Simplification:
    """
    Repeatedly remove a generator that occurs exactly once in a relator of
    length at most ``max_length``, substituting its solved value into the
    remaining relators. The result presents an isomorphic group.
    """
    if max_length is None:
        from django.conf import settings
        max_length = settings.FOURCALC_TIETZE_MAX_LENGTH

    eliminated: List[Tuple[str, str]] = []
    current = p
    while True:
        candidate = _elimination_candidate(current, max_length)
        if candidate is None:
            break
        _, index, generator = candidate
        relator = current.relators[index]
        position = next(i for i, (g, _) in enumerate(relator.letters) if g == generator)
        sign = relator.letters[position][1]
        # relator = u g^s v, so g^s = u^-1 v^-1
        before = Word(relator.letters[:position])
        after = Word(relator.letters[position + 1:])
        value = free_reduce(before.inverse() * after.inverse())
        if sign == -1:
            value = value.inverse()
        name = current.generator_names[generator]
        eliminated.append((name, format_word(current.generator_names, value)))

        remaining = [g for g in range(current.rank) if g != generator]
        mapping = {old: new for new, old in enumerate(remaining)}
        relators = []
        for i, other in enumerate(current.relators):
            if i == index:
                continue
            reduced = cyclic_reduce(substitute(other, generator, value))
            if not reduced:
                continue
            reduced = relabel(reduced, mapping)
            if reduced not in relators:
                relators.append(reduced)
        names = tuple(current.generator_names[g] for g in remaining)
        current = Presentation(names, tuple(relators))

    if eliminated:
        logger.debug(
            f"Tietze elimination removed {len(eliminated)} generators: "
            f"{p.rank} -> {current.rank} generators, length {p.total_length} -> {current.total_length}"
        )
    return Simplification(current, tuple(eliminated))
