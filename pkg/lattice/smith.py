"""
Smith normal form over the integers with transformation certificate.

For an m x n integer matrix M the result carries unimodular U (m x m) and
V (n x n) with U . M . V = D, D diagonal, d1 | d2 | ... and every d > 0.
"""

from dataclasses import dataclass
from typing import Tuple

import numpy as np

Matrix = Tuple[Tuple[int, ...], ...]


def _identity(size):
    return [[int(i == j) for j in range(size)] for i in range(size)]


def _freeze(rows):
    return tuple(tuple(int(x) for x in row) for row in rows)


@dataclass(frozen=True)
class SmithForm:
    invariants: Tuple[int, ...]
    left: Matrix
    right: Matrix
    diagonal: Matrix

    @property
    def rank(self):
        return len(self.invariants)

    def verify(self, matrix):
        """Check U . M . V == D exactly."""
        M = np.array(matrix, dtype=object).reshape(len(self.left), len(self.right))
        U = np.array(self.left, dtype=object).reshape(len(self.left), len(self.left))
        V = np.array(self.right, dtype=object).reshape(len(self.right), len(self.right))
        D = np.array(self.diagonal, dtype=object).reshape(M.shape)
        return bool((U.dot(M).dot(V) == D).all())


class _Reducer:
    def __init__(self, matrix):
        self.A = [[int(x) for x in row] for row in matrix]
        self.m = len(self.A)
        self.n = len(self.A[0]) if self.m else 0
        self.U = _identity(self.m)
        self.V = _identity(self.n)

    def swap_rows(self, i, j):
        if i != j:
            self.A[i], self.A[j] = self.A[j], self.A[i]
            self.U[i], self.U[j] = self.U[j], self.U[i]

    def swap_cols(self, i, j):
        if i != j:
            for row in self.A:
                row[i], row[j] = row[j], row[i]
            for row in self.V:
                row[i], row[j] = row[j], row[i]

    def add_row(self, target, source, factor):
        """row[target] += factor * row[source]"""
        for M in (self.A, self.U):
            M[target] = [a + factor * b for a, b in zip(M[target], M[source])]

    def add_col(self, target, source, factor):
        for M in (self.A, self.V):
            for row in M:
                row[target] += factor * row[source]

    def negate_row(self, i):
        self.A[i] = [-a for a in self.A[i]]
        self.U[i] = [-a for a in self.U[i]]

    def pivot(self, t):
        best = None
        for i in range(t, self.m):
            for j in range(t, self.n):
                if self.A[i][j] != 0 and (best is None or abs(self.A[i][j]) < best[0]):
                    best = (abs(self.A[i][j]), i, j)
        return best

    def clear(self, t):
        A = self.A
        while True:
            settled = True
            for i in range(t + 1, self.m):
                if A[i][t] != 0:
                    self.add_row(i, t, -(A[i][t] // A[t][t]))
                    if A[i][t] != 0:
                        self.swap_rows(t, i)
                        settled = False
            for j in range(t + 1, self.n):
                if A[t][j] != 0:
                    self.add_col(j, t, -(A[t][j] // A[t][t]))
                    if A[t][j] != 0:
                        self.swap_cols(t, j)
                        settled = False
            if not settled:
                continue
            # divisibility of the remaining block by the pivot
            offender = next(
                (i for i in range(t + 1, self.m)
                 for j in range(t + 1, self.n) if A[i][j] % A[t][t] != 0),
                None,
            )
            if offender is None:
                return
            self.add_row(t, offender, 1)

    def run(self):
        t = 0
        while t < min(self.m, self.n):
            found = self.pivot(t)
            if found is None:
                break
            _, i, j = found
            self.swap_rows(t, i)
            self.swap_cols(t, j)
            self.clear(t)
            if self.A[t][t] < 0:
                self.negate_row(t)
            t += 1
        return t


def smith_normal_form(matrix) -> SmithForm:
    reducer = _Reducer(matrix)
    rank = reducer.run()
    return SmithForm(
        invariants=tuple(reducer.A[k][k] for k in range(rank)),
        left=_freeze(reducer.U),
        right=_freeze(reducer.V),
        diagonal=_freeze(reducer.A),
    )
