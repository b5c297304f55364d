from django.test import SimpleTestCase
from hypothesis import assume, given, settings, strategies as st

from fpgroup.abelian import abelianization
from fpgroup.coset_enumeration import EnumerationBounds, coset_enumerate
from fpgroup.presentation import Presentation, eliminate_generators, parse_presentation
from fpgroup.tests import CORPUS, sympy_order
from fpgroup.words import Word, cyclic_reduce, free_reduce

letters = st.tuples(st.integers(min_value=0, max_value=2), st.sampled_from((1, -1)))
words = st.lists(letters, max_size=30).map(lambda ls: Word(tuple(ls)))
two_generator_words = st.lists(
    st.tuples(st.integers(min_value=0, max_value=1), st.sampled_from((1, -1))),
    min_size=1, max_size=8,
).map(lambda ls: Word(tuple(ls)))

a = Word.generator(0)
b = Word.generator(1)

# (k, m, l) with 1/k + 1/m + 1/l > 1: a^k = b^m = (ab)^l presents a finite group
SPHERICAL_TRIPLES = [(2, 2, 2), (2, 2, 5), (2, 3, 3), (2, 3, 4), (2, 3, 5), (3, 3, 2)]


class WordProperties(SimpleTestCase):
    @settings(max_examples=1000, deadline=None)
    @given(words)
    def test_free_reduce_idempotent_and_shortening(self, w):
        reduced = free_reduce(w)
        self.assertEqual(free_reduce(reduced), reduced)
        self.assertLessEqual(len(reduced), len(w))

    @settings(max_examples=1000, deadline=None)
    @given(words)
    def test_inverse_cancels(self, w):
        self.assertEqual(free_reduce(w * w.inverse()), Word())

    @settings(max_examples=1000, deadline=None)
    @given(words, words)
    def test_cyclic_reduce_invariant_under_conjugation(self, w, u):
        conjugate = u * w * u.inverse()
        self.assertEqual(len(cyclic_reduce(conjugate)), len(cyclic_reduce(w)))


class EnumerationProperties(SimpleTestCase):
    @settings(max_examples=200, deadline=None)
    @given(st.sampled_from(CORPUS), st.randoms(use_true_random=False))
    def test_relator_order_irrelevant(self, entry, rnd):
        p = parse_presentation(entry[0])
        order = list(range(len(p.relators)))
        rnd.shuffle(order)
        self.assertEqual(coset_enumerate(p.permuted(order)).index, entry[1].order())

    @settings(max_examples=50, deadline=None)
    @given(st.sampled_from(CORPUS))
    def test_tietze_preserves_order(self, entry):
        p = parse_presentation(entry[0])
        simplified = eliminate_generators(p).presentation
        self.assertEqual(coset_enumerate(simplified).index, coset_enumerate(p).index)

    @settings(max_examples=200, deadline=None)
    @given(st.sampled_from(SPHERICAL_TRIPLES), st.lists(two_generator_words, max_size=2))
    def test_completed_index_matches_sympy(self, triple, extra):
        k, m, l = triple
        relators = (Word.generator(0, k), Word.generator(1, m), (a * b) ** l) + tuple(extra)
        p = Presentation(('a', 'b'), relators)
        outcome = coset_enumerate(p, bounds=EnumerationBounds(max_cosets=2000, max_definitions=20000))
        assume(outcome.completed)
        if outcome.index == 1:
            self.assertTrue(abelianization(p).is_trivial)
        self.assertEqual(outcome.index, sympy_order(p))
