from django.test import SimpleTestCase
from hypothesis import given, settings, strategies as st

from fpgroup.triviality import is_trivial
from fpgroup.words import cyclic_reduce
from paperlib.certificates import (
    XN_GLUING,
    YN_GLUING,
    v0_presentation,
    v0_relators,
    w1_relators,
    w2_relators,
    xn_certificate,
    yn_certificate,
)
from paperlib.constructions import build_Xn, surgery_chain
from paperlib.scenarios import parse_params
from swengine.invariants import sw_fingerprint
from swengine.surgery import trace_surgery_chain

small_n = st.integers(min_value=1, max_value=5)
desk_n = st.integers(min_value=1, max_value=100)


class CertificateProperties(SimpleTestCase):
    @settings(max_examples=10, deadline=None)
    @given(small_n, st.randoms(use_true_random=False))
    def test_xn_trivial_under_permutation(self, n, rnd):
        p = xn_certificate(n)
        order = list(range(len(p.relators)))
        rnd.shuffle(order)
        self.assertTrue(is_trivial(p.permuted(order)).is_trivial)

    @settings(max_examples=10, deadline=None)
    @given(small_n, st.randoms(use_true_random=False))
    def test_yn_trivial_under_permutation(self, n, rnd):
        p = yn_certificate(n)
        order = list(range(len(p.relators)))
        rnd.shuffle(order)
        self.assertTrue(is_trivial(p.permuted(order)).is_trivial)

    @settings(max_examples=1000, deadline=None)
    @given(desk_n)
    def test_relators_already_reduced(self, n):
        v0, yn = v0_presentation(n), yn_certificate(n)
        texts = [(v0, r) for r in v0_relators(n)]
        texts += [(yn, r) for r in w1_relators(n) + w2_relators(n) + XN_GLUING + YN_GLUING]
        for p, text in texts:
            word = p.word(text)
            self.assertEqual(cyclic_reduce(word), word, text)


class ChainProperties(SimpleTestCase):
    @settings(max_examples=1000, deadline=None)
    @given(desk_n)
    def test_trace(self, n):
        trace = trace_surgery_chain(1, surgery_chain(n, 'vanishing-P'))
        self.assertEqual([abs(v) for v in trace], [1, 1, n, n, n * n])

    @settings(max_examples=10, deadline=None)
    @given(st.integers(min_value=1, max_value=10), st.integers(min_value=1, max_value=10))
    def test_fingerprints_separate_n(self, n, m):
        self.assertEqual(sw_fingerprint(build_Xn(n).sw) == sw_fingerprint(build_Xn(m).sw), n == m)


class ParamProperties(SimpleTestCase):
    @settings(max_examples=1000, deadline=None)
    @given(desk_n, desk_n)
    def test_range_text(self, a, b):
        low, high = min(a, b), max(a, b)
        self.assertEqual(parse_params({'n': f"{low}..{high}"})['n'], tuple(range(low, high + 1)))
