"""
Integral symmetric bilinear forms with a distinguished, labelled basis.

All arithmetic is exact: integers for pairings, sympy for determinants and
inverses, Fractions for the congruence diagonalization behind the signature.
"""

import json
import logging
from dataclasses import dataclass, field
from fractions import Fraction
from functools import cached_property
from typing import Dict, Iterable, Optional, Sequence, Tuple, Union

import numpy as np
from sympy import Matrix

from lattice.exceptions import (
    DegenerateLatticeError,
    LatticeLiteralError,
    LatticeShapeError,
    NonUnimodularLatticeError,
)

logger = logging.getLogger(__name__)

Gram = Tuple[Tuple[int, ...], ...]

HYPERBOLIC = ((0, 1), (1, 0))


@dataclass(frozen=True, order=True)
class LatticeVector:
    coords: Tuple[int, ...]

    def __post_init__(self):
        object.__setattr__(self, 'coords', tuple(int(c) for c in self.coords))

    def __len__(self):
        return len(self.coords)

    def __iter__(self):
        return iter(self.coords)

    def __getitem__(self, index):
        return self.coords[index]

    def __add__(self, other):
        _check_same_length(self, other)
        return LatticeVector(tuple(a + b for a, b in zip(self.coords, other.coords)))

    def __sub__(self, other):
        _check_same_length(self, other)
        return LatticeVector(tuple(a - b for a, b in zip(self.coords, other.coords)))

    def __neg__(self):
        return LatticeVector(tuple(-a for a in self.coords))

    def __mul__(self, scalar):
        return LatticeVector(tuple(scalar * a for a in self.coords))

    __rmul__ = __mul__

    def is_zero(self):
        return not any(self.coords)

    def __str__(self):
        return '(' + ', '.join(str(c) for c in self.coords) + ')'


def _check_same_length(v, w):
    if len(v) != len(w):
        raise LatticeShapeError(f"vector lengths differ: {len(v)} vs {len(w)}")


@dataclass(frozen=True)
class IntLattice:
    gram: Gram
    basis_labels: Tuple[str, ...] = ()
    name: str = ''
    unimodular: bool = field(default=False)

    def __post_init__(self):
        gram = tuple(tuple(int(x) for x in row) for row in self.gram)
        rank = len(gram)
        if any(len(row) != rank for row in gram):
            raise LatticeShapeError(f"Gram matrix of {self.name or 'lattice'} is not square")
        for i in range(rank):
            for j in range(i + 1, rank):
                if gram[i][j] != gram[j][i]:
                    raise LatticeShapeError(
                        f"Gram matrix of {self.name or 'lattice'} is not symmetric at ({i}, {j})"
                    )
        labels = tuple(self.basis_labels) or tuple(f"e{i}" for i in range(rank))
        if len(labels) != rank:
            raise LatticeShapeError(f"{len(labels)} basis labels for rank {rank}")
        if len(set(labels)) != rank:
            raise LatticeShapeError(f"duplicate basis labels in {labels}")
        object.__setattr__(self, 'gram', gram)
        object.__setattr__(self, 'basis_labels', labels)
        if self.unimodular and abs(self.determinant) != 1:
            raise NonUnimodularLatticeError(
                f"{self.name or 'lattice'} flagged unimodular but det = {self.determinant}"
            )

    @property
    def rank(self):
        return len(self.gram)

    @cached_property
    def determinant(self):
        if self.rank == 0:
            return 1
        return int(Matrix(self.gram).det())

    def is_unimodular(self):
        return abs(self.determinant) == 1

    @cached_property
    def inverse_gram(self):
        """Exact integer inverse; only defined for unimodular lattices."""
        if not self.is_unimodular():
            raise NonUnimodularLatticeError(f"{self.name or 'lattice'} has det {self.determinant}")
        if self.rank == 0:
            return ()
        inverse = Matrix(self.gram).inv()
        return tuple(tuple(int(inverse[i, j]) for j in range(self.rank)) for i in range(self.rank))

    def index(self, label):
        try:
            return self.basis_labels.index(label)
        except ValueError:
            raise LatticeShapeError(f"{self.name or 'lattice'} has no basis label '{label}'") from None

    def basis_vector(self, label):
        coords = [0] * self.rank
        coords[self.index(label)] = 1
        return LatticeVector(tuple(coords))

    def vector(self, values: Union[Dict[str, int], Sequence[int]]):
        if isinstance(values, dict):
            coords = [0] * self.rank
            for label, value in values.items():
                coords[self.index(label)] += value
            return LatticeVector(tuple(coords))
        return self.coerce(LatticeVector(tuple(values)))

    def coerce(self, v):
        if not isinstance(v, LatticeVector):
            v = LatticeVector(tuple(v))
        if len(v) != self.rank:
            raise LatticeShapeError(
                f"vector of length {len(v)} does not fit {self.name or 'lattice'} of rank {self.rank}"
            )
        return v

    def pairing(self, v, w):
        return pairing(self, v, w)

    def square(self, v):
        return pairing(self, v, v)

    def evaluations(self, v):
        """(v . b) for every basis vector b."""
        v = self.coerce(v)
        return tuple(sum(g * c for g, c in zip(row, v.coords)) for row in self.gram)

    def diagonal_entries(self):
        return tuple(self.gram[i][i] for i in range(self.rank))

    # ========================
    # CONSTRUCTIONS
    # ========================

    def drop_labels(self, labels: Iterable[str], name=None):
        dropped = set(labels)
        for label in dropped:
            self.index(label)
        keep = [i for i, label in enumerate(self.basis_labels) if label not in dropped]
        gram = tuple(tuple(self.gram[i][j] for j in keep) for i in keep)
        sub = IntLattice(gram, tuple(self.basis_labels[i] for i in keep), name or self.name)
        if self.unimodular and sub.is_unimodular():
            sub = IntLattice(sub.gram, sub.basis_labels, sub.name, unimodular=True)
        return sub

    def restrict_vector(self, v, sub: 'IntLattice'):
        """Coordinates of ``v`` on the labels kept in ``sub``."""
        v = self.coerce(v)
        return LatticeVector(tuple(v.coords[self.index(label)] for label in sub.basis_labels))

    def extend_diagonal(self, count, value=-1, prefix='E', name=None):
        start = 1 + sum(1 for label in self.basis_labels if label.startswith(prefix))
        labels = tuple(f"{prefix}{start + k}" for k in range(count))
        extra = diagonal([value] * count, labels)
        return direct_sum(self, extra, name=name or self.name)

    def change_basis(self, rows, labels, name=None):
        return BasisChange.build(self, rows, labels, name=name)

    def __str__(self):
        return self.name or f"lattice(rank={self.rank})"


def pairing(L: IntLattice, v, w) -> int:
    v = L.coerce(v)
    w = L.coerce(w)
    return sum(v.coords[i] * L.gram[i][j] * w.coords[j]
               for i in range(L.rank) if v.coords[i]
               for j in range(L.rank) if w.coords[j])


def is_characteristic(L: IntLattice, K) -> bool:
    """K . x == x . x (mod 2) for every basis vector x."""
    if not L.is_unimodular():
        raise NonUnimodularLatticeError(
            f"characteristic vectors need a unimodular lattice; {L} has det {L.determinant}"
        )
    evaluations = L.evaluations(K)
    return all((e - d) % 2 == 0 for e, d in zip(evaluations, L.diagonal_entries()))


def signature_and_parity(L: IntLattice) -> Tuple[int, str]:
    """
    Exact signature by symmetric Gaussian elimination over the rationals.
    Parity is 'even' iff every diagonal Gram entry is even.
    """
    n = L.rank
    parity = 'even' if all(d % 2 == 0 for d in L.diagonal_entries()) else 'odd'
    if n == 0:
        return 0, parity
    A = np.array([[Fraction(x) for x in row] for row in L.gram], dtype=object)
    positive = negative = 0
    for i in range(n):
        if A[i, i] == 0:
            j = next((j for j in range(i + 1, n) if A[j, j] != 0), None)
            if j is not None:
                A[[i, j], :] = A[[j, i], :]
                A[:, [i, j]] = A[:, [j, i]]
            else:
                j = next((j for j in range(i + 1, n) if A[i, j] != 0), None)
                if j is None:
                    raise DegenerateLatticeError(f"{L} is degenerate (radical at basis index {i})")
                A[i, :] = A[i, :] + A[j, :]
                A[:, i] = A[:, i] + A[:, j]
        pivot = A[i, i]
        for j in range(i + 1, n):
            if A[j, i] != 0:
                factor = A[j, i] / pivot
                A[j, :] = A[j, :] - factor * A[i, :]
                A[:, j] = A[:, j] - factor * A[:, i]
        if pivot > 0:
            positive += 1
        else:
            negative += 1
    return positive - negative, parity


def positive_negative_rank(L: IntLattice) -> Tuple[int, int]:
    sigma, _ = signature_and_parity(L)
    return (L.rank + sigma) // 2, (L.rank - sigma) // 2


# ============================================================================
# BUILDERS
# ============================================================================

def direct_sum(*lattices: IntLattice, name='') -> IntLattice:
    rank = sum(L.rank for L in lattices)
    gram = [[0] * rank for _ in range(rank)]
    labels = []
    offset = 0
    for L in lattices:
        for i in range(L.rank):
            for j in range(L.rank):
                gram[offset + i][offset + j] = L.gram[i][j]
        labels.extend(L.basis_labels)
        offset += L.rank
    unimodular = all(L.unimodular for L in lattices)
    return IntLattice(tuple(map(tuple, gram)), tuple(labels), name, unimodular=unimodular)


def hyperbolic(labels=('h1', 'h2')) -> IntLattice:
    return IntLattice(HYPERBOLIC, tuple(labels), unimodular=True)


def diagonal(entries: Sequence[int], labels: Optional[Sequence[str]] = None, name='') -> IntLattice:
    size = len(entries)
    gram = tuple(tuple(entries[i] if i == j else 0 for j in range(size)) for i in range(size))
    lattice = IntLattice(gram, tuple(labels or ()), name)
    if lattice.is_unimodular():
        lattice = IntLattice(gram, lattice.basis_labels, name, unimodular=True)
    return lattice


def from_blocks(blocks: Sequence[Union[str, int]], labels: Sequence[str], name='') -> IntLattice:
    parts = []
    for block in blocks:
        if block == 'H':
            parts.append(HYPERBOLIC)
        elif isinstance(block, int):
            parts.append(((block,),))
        else:
            raise LatticeLiteralError(f"unknown block {block!r}; expected H or an integer")
    size = sum(len(part) for part in parts)
    if len(labels) != size:
        raise LatticeLiteralError(f"{len(labels)} basis labels for blocks of total rank {size}")
    pieces = []
    offset = 0
    for part in parts:
        pieces.append(IntLattice(part, tuple(labels[offset:offset + len(part)])))
        offset += len(part)
    lattice = direct_sum(*pieces, name=name)
    if lattice.is_unimodular():
        lattice = IntLattice(lattice.gram, lattice.basis_labels, name, unimodular=True)
    return lattice


@dataclass(frozen=True)
class BasisChange:
    """
    A unimodular change of basis. ``rows`` are the new basis vectors in
    source coordinates; ``target`` is the lattice in the new basis.
    """

    source: IntLattice
    rows: Tuple[LatticeVector, ...]
    target: IntLattice
    inverse: Tuple[Tuple[int, ...], ...]

    @classmethod
    def build(cls, source: IntLattice, rows, labels, name=None):
        rows = tuple(source.coerce(r) for r in rows)
        if len(rows) != source.rank:
            raise LatticeShapeError(f"{len(rows)} basis rows for rank {source.rank}")
        T = Matrix([list(r.coords) for r in rows])
        if abs(T.det()) != 1:
            raise NonUnimodularLatticeError(f"change of basis has det {T.det()}")
        G = Matrix(source.gram)
        new_gram = T * G * T.T
        target = IntLattice(
            tuple(tuple(int(new_gram[i, j]) for j in range(source.rank)) for i in range(source.rank)),
            tuple(labels),
            name or source.name,
            unimodular=source.unimodular,
        )
        T_inv = T.inv()
        inverse = tuple(tuple(int(T_inv[i, j]) for j in range(source.rank)) for i in range(source.rank))
        return cls(source, rows, target, inverse)

    def to_target(self, v) -> LatticeVector:
        """Coordinates c in the new basis with sum c_i rows_i == v."""
        v = self.source.coerce(v)
        n = self.source.rank
        return LatticeVector(tuple(sum(v.coords[k] * self.inverse[k][j] for k in range(n)) for j in range(n)))

    def to_source(self, c) -> LatticeVector:
        c = self.target.coerce(c)
        n = self.source.rank
        return LatticeVector(tuple(sum(c.coords[k] * self.rows[k].coords[j] for k in range(n)) for j in range(n)))


# ============================================================================
# LITERALS
# ============================================================================

def _parse_label_list(text):
    text = text.strip()
    if not (text.startswith('[') and text.endswith(']')):
        raise LatticeLiteralError(f"expected a bracketed label list, got {text!r}")
    inner = text[1:-1].strip()
    return [label.strip() for label in inner.split(',')] if inner else []


def parse_lattice_literal(text: str) -> IntLattice:
    """
    ``name = U; basis = [x, y]; gram = [[0, 1], [1, 0]]`` or
    ``basis = [x, y, q]; blocks = [H, -1]``.
    """
    fields = {}
    for part in text.split(';'):
        if not part.strip():
            continue
        if '=' not in part:
            raise LatticeLiteralError(f"expected key = value, got {part.strip()!r}")
        key, value = part.split('=', 1)
        fields[key.strip()] = value.strip()
    unknown = set(fields) - {'name', 'basis', 'gram', 'blocks', 'unimodular'}
    if unknown:
        raise LatticeLiteralError(f"unknown lattice literal keys {sorted(unknown)}")
    if 'basis' not in fields:
        raise LatticeLiteralError("lattice literal needs a basis")
    labels = _parse_label_list(fields['basis'])
    name = fields.get('name', '')
    if ('gram' in fields) == ('blocks' in fields):
        raise LatticeLiteralError("lattice literal needs exactly one of gram or blocks")
    if 'gram' in fields:
        try:
            gram = json.loads(fields['gram'])
        except ValueError as e:
            raise LatticeLiteralError(f"bad gram matrix: {e}") from e
        if not isinstance(gram, list) or not all(isinstance(row, list) for row in gram):
            raise LatticeLiteralError("gram must be a list of rows")
        if not all(isinstance(x, int) for row in gram for x in row):
            raise LatticeLiteralError("gram entries must be integers")
        flagged = fields.get('unimodular', 'false').lower() == 'true'
        return IntLattice(tuple(map(tuple, gram)), tuple(labels), name, unimodular=flagged)
    blocks = []
    for item in _parse_label_list(fields['blocks']):
        if item == 'H':
            blocks.append('H')
        else:
            try:
                blocks.append(int(item))
            except ValueError:
                raise LatticeLiteralError(f"unknown block {item!r}") from None
    return from_blocks(blocks, labels, name)


def format_lattice_literal(L: IntLattice) -> str:
    parts = []
    if L.name:
        parts.append(f"name = {L.name}")
    parts.append(f"basis = [{', '.join(L.basis_labels)}]")
    parts.append(f"gram = {json.dumps([list(row) for row in L.gram])}")
    if L.unimodular:
        parts.append("unimodular = true")
    return '; '.join(parts)
