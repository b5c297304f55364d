from itertools import combinations
from math import gcd

import numpy as np
from django.test import SimpleTestCase
from hypothesis import assume, given, settings, strategies as st
from sympy import Matrix

from lattice.intersection_forms import (
    IntLattice,
    LatticeVector,
    diagonal,
    direct_sum,
    hyperbolic,
    is_characteristic,
    pairing,
    signature_and_parity,
)
from lattice.smith import smith_normal_form
from lattice.surfaces import SurfaceClass, combine_surfaces

small = st.integers(min_value=-5, max_value=5)


def symmetric_matrices(size):
    return st.lists(small, min_size=size * (size + 1) // 2, max_size=size * (size + 1) // 2).map(
        lambda values: _symmetric(size, values)
    )


def _symmetric(size, values):
    gram = [[0] * size for _ in range(size)]
    it = iter(values)
    for i in range(size):
        for j in range(i, size):
            gram[i][j] = gram[j][i] = next(it)
    return tuple(map(tuple, gram))


def matrices(rows, cols):
    return st.lists(st.lists(small, min_size=cols, max_size=cols), min_size=rows, max_size=rows)


def determinantal_invariants(matrix):
    """Invariant factors from gcds of k x k minors."""
    M = Matrix(matrix)
    divisors = [1]
    for k in range(1, min(M.shape) + 1):
        g = 0
        for rows in combinations(range(M.shape[0]), k):
            for cols in combinations(range(M.shape[1]), k):
                g = gcd(g, int(M.extract(list(rows), list(cols)).det()))
        if g == 0:
            break
        divisors.append(g)
    return tuple(divisors[k] // divisors[k - 1] for k in range(1, len(divisors)))


@st.composite
def unimodular(draw, size):
    U = np.identity(size, dtype=object)
    for _ in range(draw(st.integers(min_value=0, max_value=6))):
        i = draw(st.integers(min_value=0, max_value=size - 1))
        j = draw(st.integers(min_value=0, max_value=size - 1))
        if i == j:
            U[i, :] = -U[i, :]
        else:
            U[i, :] = U[i, :] + draw(st.integers(min_value=-3, max_value=3)) * U[j, :]
    return U


class PairingProperties(SimpleTestCase):
    @settings(max_examples=1000, deadline=None)
    @given(symmetric_matrices(4), st.lists(small, min_size=4, max_size=4), st.lists(small, min_size=4, max_size=4))
    def test_symmetry(self, gram, v, w):
        L = IntLattice(gram)
        self.assertEqual(pairing(L, v, w), pairing(L, w, v))

    @settings(max_examples=1000, deadline=None)
    @given(st.lists(small, min_size=6, max_size=6), st.lists(small, min_size=6, max_size=6))
    def test_characteristic_stable_under_even_shift(self, k, w):
        L = direct_sum(hyperbolic(('a', 'b')), diagonal((1, -1, -1, -1), ('c', 'd', 'e', 'f')))
        K = LatticeVector(tuple(k))
        shifted = K + 2 * LatticeVector(tuple(w))
        self.assertEqual(is_characteristic(L, K), is_characteristic(L, shifted))


class SmithProperties(SimpleTestCase):
    @settings(max_examples=300, deadline=None)
    @given(st.integers(min_value=1, max_value=4), st.integers(min_value=1, max_value=4), st.data())
    def test_certificate_and_minors(self, rows, cols, data):
        matrix = data.draw(matrices(rows, cols))
        form = smith_normal_form(matrix)
        self.assertTrue(form.verify(matrix))
        self.assertEqual(form.invariants, determinantal_invariants(matrix))
        for first, second in zip(form.invariants, form.invariants[1:]):
            self.assertEqual(second % first, 0)

    @settings(max_examples=1000, deadline=None)
    @given(st.data())
    def test_invariant_under_unimodular_transforms(self, data):
        matrix = np.array(data.draw(matrices(3, 3)), dtype=object)
        left = data.draw(unimodular(3))
        right = data.draw(unimodular(3))
        transformed = left.dot(matrix).dot(right)
        self.assertEqual(
            smith_normal_form(transformed.tolist()).invariants,
            smith_normal_form(matrix.tolist()).invariants,
        )


class SignatureProperties(SimpleTestCase):
    @settings(max_examples=1000, deadline=None)
    @given(symmetric_matrices(3), symmetric_matrices(2))
    def test_additivity(self, first, second):
        L1, L2 = IntLattice(first), IntLattice(second)
        assume(L1.determinant != 0 and L2.determinant != 0)
        total, _ = signature_and_parity(direct_sum(L1, L2))
        self.assertEqual(total, signature_and_parity(L1)[0] + signature_and_parity(L2)[0])

    @settings(max_examples=1000, deadline=None)
    @given(symmetric_matrices(4))
    def test_matches_eigenvalue_signs(self, gram):
        L = IntLattice(gram)
        assume(L.determinant != 0)
        eigenvalues = np.linalg.eigvalsh(np.array(gram, dtype=float))
        expected = int((eigenvalues > 0).sum() - (eigenvalues < 0).sum())
        self.assertEqual(signature_and_parity(L)[0], expected)


class SurfaceProperties(SimpleTestCase):
    @settings(max_examples=1000, deadline=None)
    @given(symmetric_matrices(3), st.lists(small, min_size=3, max_size=3),
           st.lists(small, min_size=3, max_size=3), st.integers(min_value=0, max_value=3),
           st.integers(min_value=0, max_value=3))
    def test_square_recomputed(self, gram, v, w, g1, g2):
        L = IntLattice(gram)
        s1, s2 = SurfaceClass.on(L, v, g1), SurfaceClass.on(L, w, g2)
        k = pairing(L, v, w)
        assume(k >= 1)
        combined = combine_surfaces(L, s1, s2, k)
        self.assertEqual(combined.square, pairing(L, combined.klass, combined.klass))
        self.assertEqual(combined.square, s1.square + s2.square + 2 * k)
        self.assertEqual(combined.genus, g1 + g2 + k - 1)
