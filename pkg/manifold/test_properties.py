from django.test import SimpleTestCase
from hypothesis import given, settings, strategies as st

from manifold.classification import homeo_classify, homeo_equivalent
from manifold.operations import connected_sum, double_cover, free_quotient
from manifold.profiles import INVOLUTION, ManifoldProfile, betti_split

ranks = st.integers(min_value=0, max_value=6)


@st.composite
def simply_connected(draw):
    plus, minus = draw(ranks), draw(ranks)
    sigma = plus - minus
    spin = draw(st.sampled_from(('yes', 'no', 'unknown') if sigma % 16 == 0 else ('no', 'unknown')))
    if spin == 'yes' and plus + minus and (plus == 0 or minus == 0):
        spin = 'no'
    return ManifoldProfile('M', 2 + plus + minus, sigma, spin=spin, cover_spin=spin)


@st.composite
def z2_definite(draw):
    b2 = draw(st.integers(min_value=1, max_value=8))
    sign = draw(st.sampled_from((-1, 1)))
    return ManifoldProfile('Q', 2 + b2, sign * b2, pi1='z2', spin='no', cover_spin='no')


def invariants(p):
    return p.chi, p.sigma, p.b1, p.spin, p.cover_spin, str(p.pi1)


class ConnectedSumProperties(SimpleTestCase):
    @settings(max_examples=1000, deadline=None)
    @given(simply_connected(), simply_connected())
    def test_commutative(self, first, second):
        self.assertEqual(invariants(connected_sum(first, second)), invariants(connected_sum(second, first)))

    @settings(max_examples=1000, deadline=None)
    @given(simply_connected(), simply_connected(), simply_connected())
    def test_associative(self, first, second, third):
        self.assertEqual(
            invariants(connected_sum(connected_sum(first, second), third)),
            invariants(connected_sum(first, connected_sum(second, third))),
        )

    @settings(max_examples=1000, deadline=None)
    @given(z2_definite(), simply_connected())
    def test_keeps_nontrivial_group(self, quotient, other):
        self.assertEqual(invariants(connected_sum(quotient, other)), invariants(connected_sum(other, quotient)))
        self.assertEqual(str(connected_sum(other, quotient).pi1), 'z2')

    @settings(max_examples=1000, deadline=None)
    @given(simply_connected(), simply_connected())
    def test_betti_split_adds(self, first, second):
        plus, minus = betti_split(connected_sum(first, second))
        self.assertGreaterEqual(min(plus, minus), 0)
        self.assertEqual((plus, minus), tuple(a + b for a, b in zip(betti_split(first), betti_split(second))))


class QuotientProperties(SimpleTestCase):
    @settings(max_examples=1000, deadline=None)
    @given(z2_definite())
    def test_cover_round_trip(self, quotient):
        again = free_quotient(double_cover(quotient))
        self.assertEqual((again.chi, again.sigma), (quotient.chi, quotient.sigma))
        self.assertTrue(homeo_equivalent(again, quotient))


class ClassificationProperties(SimpleTestCase):
    @settings(max_examples=1000, deadline=None)
    @given(st.lists(st.one_of(z2_definite(), simply_connected().filter(lambda p: p.spin == 'no')),
                    min_size=3, max_size=3))
    def test_equivalence_relation(self, profiles):
        first, second, third = profiles
        self.assertTrue(homeo_equivalent(first, first))
        self.assertEqual(homeo_equivalent(first, second), homeo_equivalent(second, first))
        if homeo_equivalent(first, second) and homeo_equivalent(second, third):
            self.assertTrue(homeo_equivalent(first, third))

    @settings(max_examples=1000, deadline=None)
    @given(simply_connected().filter(lambda p: p.spin == 'no'))
    def test_involution_flag_does_not_matter(self, p):
        self.assertEqual(homeo_classify(p), homeo_classify(p.with_changes(flags={INVOLUTION})))
