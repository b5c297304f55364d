from django.test import SimpleTestCase, override_settings
from sympy.combinatorics.fp_groups import FpGroup
from sympy.combinatorics.free_groups import free_group
from sympy.combinatorics.named_groups import (
    AlternatingGroup,
    CyclicGroup,
    DihedralGroup,
    SymmetricGroup,
)

from fpgroup.abelian import AbelianInvariants, abelianization
from fpgroup.coset_enumeration import (
    BoundExceeded,
    CompletedIndex,
    EnumerationBounds,
    EnumerationOutcome,
    coset_enumerate,
)
from fpgroup.exceptions import GeneratorIndexError, PresentationSyntaxError, QuotientCeilingError
from fpgroup.presentation import (
    Presentation,
    eliminate_generators,
    format_presentation,
    parse_presentation,
)
from fpgroup.quotients import _dicyclic, finite_quotient_scan
from fpgroup.triviality import NONTRIVIAL, TRIVIAL, UNKNOWN, is_trivial
from fpgroup.words import Word, commutator, cyclic_reduce, free_reduce
from config.exceptions import InputError

a = Word.generator(0)
b = Word.generator(1)

# (presentation text, permutation group of the same order)
CORPUS = [
    ("gens: a; rels: a^7", CyclicGroup(7)),
    ("gens: r s; rels: r^3 s^2 (s*r)^2", DihedralGroup(3)),
    ("gens: r s; rels: r^5 s^2 (s*r)^2", DihedralGroup(5)),
    ("gens: r s; rels: r^6 s^2 (s*r)^2", DihedralGroup(6)),
    ("gens: i j; rels: i^4 i^2*j^-2 j^-1*i*j*i", _dicyclic(2)),
    ("gens: a b; rels: a^2 b^3 (a*b)^2", SymmetricGroup(3)),
    ("gens: a b; rels: a^2 b^3 (a*b)^3", AlternatingGroup(4)),
]


def sympy_order(p: Presentation):
    F = free_group(','.join(p.generator_names))
    free, gens = F[0], F[1:]
    relators = []
    for relator in p.relators:
        element = free.identity
        for generator, sign in relator.letters:
            element = element * gens[generator] ** sign
        relators.append(element)
    return FpGroup(free, relators).order()


class WordTests(SimpleTestCase):
    def test_free_reduce_cancels(self):
        self.assertEqual(free_reduce(a * a.inverse()), Word())
        self.assertEqual(free_reduce(a * b * b.inverse() * a), a ** 2)
        self.assertEqual(free_reduce(Word()), Word())

    def test_cyclic_reduce_strips_conjugation(self):
        self.assertEqual(cyclic_reduce(b * a * a * b.inverse()), a ** 2)

    def test_commutator_expands(self):
        self.assertEqual(commutator(a, b).letters, ((0, 1), (1, 1), (0, -1), (1, -1)))

    def test_negative_power_inverts(self):
        self.assertEqual((a * b) ** -2, b.inverse() * a.inverse() * b.inverse() * a.inverse())

    def test_bad_letter_rejected(self):
        with self.assertRaises(ValueError):
            Word(((0, 2),))


class PresentationTests(SimpleTestCase):
    def test_parse_and_format(self):
        p = parse_presentation("gens: a b c; rels: [a,b] a^3 (a*b)^-2")
        self.assertEqual(p.generator_names, ('a', 'b', 'c'))
        self.assertEqual(len(p.relators), 3)
        self.assertEqual(
            format_presentation(p),
            "gens: a b c; rels: a*b*a^-1*b^-1 a^3 b^-1*a^-1*b^-1*a^-1",
        )

    def test_round_trip(self):
        for text, _ in CORPUS:
            p = parse_presentation(text)
            self.assertEqual(parse_presentation(format_presentation(p)), p)

    def test_relators_stored_cyclically_reduced(self):
        p = Presentation(('a', 'b'), (b * a ** 3 * b.inverse(), a * a.inverse()))
        self.assertEqual(p.relators, (a ** 3,))

    def test_syntax_error_position(self):
        with self.assertRaises(PresentationSyntaxError) as cm:
            parse_presentation("gens: a; rels: [")
        self.assertEqual(cm.exception.position, 16)

    def test_unknown_generator_position(self):
        with self.assertRaises(PresentationSyntaxError) as cm:
            parse_presentation("gens: a; rels: b")
        self.assertEqual(cm.exception.position, 15)
        self.assertIn("position 15", str(cm.exception))

    def test_relator_index_out_of_range(self):
        with self.assertRaises(GeneratorIndexError):
            Presentation(('a',), (b,))

    def test_identity_atom(self):
        p = parse_presentation("gens: a; rels: 1 a^2")
        self.assertEqual(p.relators, (a ** 2,))

    def test_tietze_elimination(self):
        p = parse_presentation("gens: a b; rels: a*b^-1 b^5")
        result = eliminate_generators(p)
        self.assertEqual(result.presentation.generator_names, ('b',))
        self.assertEqual(result.presentation.relators, (Word.generator(0, 5),))
        self.assertEqual(result.eliminated, (('a', 'b'),))


class AbelianizationTests(SimpleTestCase):
    def test_free_abelian_from_commutator(self):
        p = parse_presentation("gens: a b; rels: [a,b]")
        self.assertEqual(abelianization(p), AbelianInvariants(2, ()))

    def test_cyclic(self):
        p = parse_presentation("gens: a; rels: a^3")
        self.assertEqual(abelianization(p), AbelianInvariants(0, (3,)))

    def test_divisibility_chain(self):
        p = parse_presentation("gens: a b; rels: a^2 b^4 [a,b]")
        invariants = abelianization(p)
        self.assertEqual(invariants.torsion_factors, (2, 4))
        self.assertEqual(str(invariants), "Z/2 x Z/4")

    def test_no_relators(self):
        self.assertEqual(abelianization(Presentation(('x', 'y', 'z'))).free_rank, 3)

    def test_chain_validated(self):
        with self.assertRaises(ValueError):
            AbelianInvariants(0, (4, 2))


class CosetEnumerationTests(SimpleTestCase):
    def test_cyclic_order_five(self):
        outcome = coset_enumerate(parse_presentation("gens: a; rels: a^5"))
        self.assertEqual(outcome.verdict, CompletedIndex(5))

    def test_cyclic_orders_up_to_fifty(self):
        for k in range(1, 51):
            with self.subTest(k=k):
                p = Presentation(('a',), (Word.generator(0, k),))
                self.assertEqual(coset_enumerate(p).index, k)

    def test_a4_index_of_involution(self):
        p = parse_presentation("gens: a b; rels: a^2 b^3 (a*b)^3")
        self.assertEqual(coset_enumerate(p, [a]).verdict, CompletedIndex(6))

    def test_corpus_matches_oracles(self):
        for text, group in CORPUS:
            p = parse_presentation(text)
            for strategy in ('hlt', 'felsch'):
                with self.subTest(text=text, strategy=strategy):
                    outcome = coset_enumerate(p, strategy=strategy)
                    self.assertEqual(outcome.index, group.order())
                    self.assertEqual(outcome.index, sympy_order(p))
                    self.assertGreaterEqual(outcome.cosets_defined, outcome.max_live_cosets)
                    self.assertGreaterEqual(outcome.max_live_cosets, outcome.index)

    def test_whole_group_subgroup(self):
        p = parse_presentation("gens: a b; rels: a^2 b^3 (a*b)^2")
        self.assertEqual(coset_enumerate(p, [a, b]).index, 1)

    def test_free_group_hits_bound(self):
        p = Presentation(('a', 'b'))
        outcome = coset_enumerate(p, bounds=EnumerationBounds(max_cosets=50))
        self.assertEqual(outcome.verdict, BoundExceeded('max_cosets'))
        self.assertFalse(outcome.completed)
        self.assertIsNone(outcome.index)

    def test_definition_bound(self):
        p = Presentation(('a', 'b'))
        outcome = coset_enumerate(p, bounds=EnumerationBounds(max_definitions=20))
        self.assertEqual(outcome.verdict, BoundExceeded('max_definitions'))
        self.assertLessEqual(outcome.cosets_defined, 20)

    def test_deterministic(self):
        p = parse_presentation("gens: r s; rels: r^6 s^2 (s*r)^2")
        self.assertEqual(coset_enumerate(p), coset_enumerate(p))

    def test_bad_bounds_rejected(self):
        with self.assertRaises(InputError):
            EnumerationBounds(max_cosets=0)

    def test_bad_strategy_rejected(self):
        with self.assertRaises(InputError):
            coset_enumerate(Presentation(('a',)), strategy='knuth-bendix')

    def test_bad_subgroup_word_rejected(self):
        with self.assertRaises(GeneratorIndexError):
            coset_enumerate(Presentation(('a',)), [b])

    @override_settings(FOURCALC_ENUMERATION_STRATEGY='felsch')
    def test_strategy_read_from_settings(self):
        self.assertEqual(coset_enumerate(parse_presentation("gens: a; rels: a^3")).strategy, 'felsch')


class QuotientScanTests(SimpleTestCase):
    def test_cyclic_two(self):
        found = finite_quotient_scan(parse_presentation("gens: a; rels: a^2"), 8)
        self.assertIn('Z/2', {e.group_id for e in found})

    def test_free_abelian(self):
        found = finite_quotient_scan(parse_presentation("gens: a b; rels: [a,b]"), 4)
        self.assertIn('Z/2', {e.group_id for e in found})

    def test_quaternion_maps_onto_itself(self):
        found = finite_quotient_scan(parse_presentation(CORPUS[4][0]), 8)
        self.assertIn('Q8', {e.group_id for e in found})
        self.assertNotIn('Z/8', {e.group_id for e in found})

    def test_trivial_group_has_none(self):
        self.assertEqual(finite_quotient_scan(parse_presentation("gens: a b; rels: a b"), 8), [])

    def test_images_are_labelled(self):
        found = finite_quotient_scan(parse_presentation("gens: a; rels: a^3"), 3)
        self.assertEqual([e.group_id for e in found], ['Z/3', 'Z/3'])
        self.assertEqual(found[0].images[0][0], 'a')

    def test_ceiling(self):
        with self.assertRaises(QuotientCeilingError):
            finite_quotient_scan(parse_presentation("gens: a; rels: a^2"), 17)


class TrivialityTests(SimpleTestCase):
    def test_trivial(self):
        verdict = is_trivial(parse_presentation("gens: a b; rels: a b"))
        self.assertEqual(verdict.status, TRIVIAL)
        self.assertEqual(str(verdict), "Trivial")

    def test_nontrivial_by_abelianization(self):
        verdict = is_trivial(parse_presentation("gens: a; rels: a^2"))
        self.assertEqual(verdict.status, NONTRIVIAL)
        self.assertEqual(str(verdict), "Nontrivial(Z/2)")
        self.assertEqual(verdict.source, 'abelianization')

    def test_perfect_group_nontrivial_by_order(self):
        verdict = is_trivial(parse_presentation("gens: a b; rels: a^2 b^3 (a*b)^5"))
        self.assertEqual(verdict.status, NONTRIVIAL)
        self.assertEqual(verdict.witness, "order 60")

    def test_perfect_group_unknown_under_tight_bounds(self):
        p = parse_presentation("gens: a b; rels: a^2 b^3 (a*b)^5")
        verdict = is_trivial(p, bounds=EnumerationBounds(max_cosets=10))
        self.assertEqual(verdict.status, UNKNOWN)
        self.assertEqual(str(verdict), "Unknown")

    def test_enumerator_is_pluggable(self):
        calls = []

        def enumerator(p, subgroup_gens, bounds=None, strategy=None):
            calls.append(p)
            return EnumerationOutcome(CompletedIndex(1), 1, 1)

        verdict = is_trivial(parse_presentation("gens: a b; rels: a*b b"), enumerator=enumerator)
        self.assertTrue(verdict.is_trivial)
        self.assertEqual(len(calls), 1)
