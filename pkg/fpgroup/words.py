"""
Words in a free group.

A letter is a pair (generator index, sign) with sign in {1, -1}; a Word is an
immutable tuple of letters. Powers are always stored expanded.
"""

from dataclasses import dataclass
from typing import Iterable, Tuple

Letter = Tuple[int, int]


@dataclass(frozen=True)
class Word:
    letters: Tuple[Letter, ...] = ()

    def __post_init__(self):
        letters = tuple((int(g), int(s)) for g, s in self.letters)
        for generator, sign in letters:
            if generator < 0 or sign not in (1, -1):
                raise ValueError(f"bad letter ({generator}, {sign})")
        object.__setattr__(self, 'letters', letters)

    @classmethod
    def generator(cls, index, power=1):
        sign = 1 if power >= 0 else -1
        return cls(((index, sign),) * abs(power))

    def __len__(self):
        return len(self.letters)

    def __iter__(self):
        return iter(self.letters)

    def __bool__(self):
        return bool(self.letters)

    def __mul__(self, other):
        return Word(self.letters + other.letters)

    def __pow__(self, exponent):
        if exponent < 0:
            return self.inverse() ** -exponent
        return Word(self.letters * exponent)

    def inverse(self):
        return Word(tuple((g, -s) for g, s in reversed(self.letters)))

    def max_generator(self):
        """Largest generator index used, or -1 for the empty word."""
        return max((g for g, _ in self.letters), default=-1)

    def generators(self):
        return frozenset(g for g, _ in self.letters)

    def exponent_sum(self, index):
        return sum(s for g, s in self.letters if g == index)

    def occurrences(self, index):
        return sum(1 for g, _ in self.letters if g == index)


IDENTITY = Word()


def free_reduce(w: Word) -> Word:
    stack = []
    for letter in w.letters:
        if stack and stack[-1][0] == letter[0] and stack[-1][1] == -letter[1]:
            stack.pop()
        else:
            stack.append(letter)
    return Word(tuple(stack))


def cyclic_reduce(w: Word) -> Word:
    letters = free_reduce(w).letters
    start, end = 0, len(letters)
    while end - start >= 2:
        first, last = letters[start], letters[end - 1]
        if first[0] == last[0] and first[1] == -last[1]:
            start += 1
            end -= 1
        else:
            break
    return Word(letters[start:end])


def commutator(x: Word, y: Word) -> Word:
    """[x, y] = x y x^-1 y^-1"""
    return x * y * x.inverse() * y.inverse()


def product(words: Iterable[Word]) -> Word:
    letters = []
    for word in words:
        letters.extend(word.letters)
    return Word(tuple(letters))


def substitute(w: Word, index: int, replacement: Word) -> Word:
    """Replace every occurrence of generator ``index`` by ``replacement``."""
    letters = []
    for generator, sign in w.letters:
        if generator == index:
            letters.extend(replacement.letters if sign == 1 else replacement.inverse().letters)
        else:
            letters.append((generator, sign))
    return free_reduce(Word(tuple(letters)))


def relabel(w: Word, mapping) -> Word:
    return Word(tuple((mapping[g], s) for g, s in w.letters))
