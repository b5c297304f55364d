from itertools import product
from math import gcd

from django.test import SimpleTestCase
from hypothesis import assume, given, settings, strategies as st

from lattice.intersection_forms import LatticeVector, diagonal, direct_sum, hyperbolic, is_characteristic
from lattice.surfaces import SurfaceClass
from swengine.adjunction import AdjunctionConfig, enumerate_basic_candidates
from swengine.blowup import blowup_sw, chamber_spread
from swengine.invariants import check_irreducible, sw_fingerprint
from swengine.state import SWState, formal_dimension
from swengine.surgery import torus_surgery_sw

ONE_FIVE = diagonal((1, -1, -1, -1, -1, -1), name='CP2#5CP2bar')

values = st.integers(min_value=-50, max_value=50)
odd = st.sampled_from((-5, -3, -1, 1, 3, 5))


@st.composite
def coprime_pairs(draw):
    p = draw(st.integers(min_value=-20, max_value=20))
    q = draw(st.integers(min_value=-20, max_value=20))
    assume(gcd(p, q) == 1)
    return p, q


@st.composite
def one_five_states(draw):
    entries = {}
    for _ in range(draw(st.integers(min_value=0, max_value=4))):
        K = LatticeVector(tuple(draw(odd) for _ in range(6)))
        v = draw(st.integers(min_value=1, max_value=9))
        entries[K] = v
        entries[-K] = -v
    return SWState(ONE_FIVE, 1, tuple(entries.items()))


@st.composite
def small_lattices(draw):
    """Direct sums of H, <1> and <-1> of rank at most 4."""
    blocks = []
    rank = 0
    while rank < 4 and (not blocks or draw(st.booleans())):
        kind = draw(st.sampled_from(('H', '+', '-') if rank <= 2 else ('+', '-')))
        labels = tuple(f"b{rank + i}" for i in range(2 if kind == 'H' else 1))
        if kind == 'H':
            blocks.append(hyperbolic(labels))
        else:
            blocks.append(diagonal((1 if kind == '+' else -1,), labels))
        rank += len(labels)
    return direct_sum(*blocks)


class SurgeryProperties(SimpleTestCase):
    @settings(max_examples=1000, deadline=None)
    @given(coprime_pairs(), values, values, values, values)
    def test_linear_in_both_values(self, coefficient, a, b, c, d):
        p, q = coefficient
        self.assertEqual(
            torus_surgery_sw(a + c, b + d, p, q),
            torus_surgery_sw(a, b, p, q) + torus_surgery_sw(c, d, p, q),
        )

    @settings(max_examples=1000, deadline=None)
    @given(coprime_pairs(), values)
    def test_vanishing_f01_scales_by_p(self, coefficient, base):
        p, q = coefficient
        self.assertEqual(torus_surgery_sw(base, 0, p, q), p * base)


class BlowupProperties(SimpleTestCase):
    @settings(max_examples=200, deadline=None)
    @given(one_five_states(), st.integers(min_value=1, max_value=3))
    def test_formal_dimension_preserved(self, state, count):
        blown = blowup_sw(state, count)
        for key, _ in blown.items():
            base = LatticeVector(key.coords[:6])
            self.assertEqual(
                formal_dimension(blown.lattice.square(key), 8 + count, -4 - count),
                formal_dimension(ONE_FIVE.square(base), 8, -4),
            )

    @settings(max_examples=200, deadline=None)
    @given(one_five_states(), st.integers(min_value=1, max_value=3))
    def test_expanded_support_is_consistent(self, state, count):
        blown = blowup_sw(state, count)
        listed = list(blown.items())
        self.assertEqual(len(listed), blown.support_size)
        for key, value in listed:
            self.assertTrue(is_characteristic(blown.lattice, key))
            self.assertEqual(blown.value(key), value)
            self.assertIn(value, chamber_spread(blown)[key])


class InvariantProperties(SimpleTestCase):
    @settings(max_examples=1000, deadline=None)
    @given(one_five_states(), st.permutations(range(1, 6)))
    def test_irreducibility_invariant(self, state, order):
        self.assertEqual(check_irreducible(state.negated()), check_irreducible(state))

        def permute(K):
            return LatticeVector((K.coords[0],) + tuple(K.coords[i] for i in order))

        permuted = state.with_values((permute(K), v) for K, v in state.base_values)
        self.assertEqual(check_irreducible(permuted), check_irreducible(state))
        self.assertEqual(sw_fingerprint(permuted), sw_fingerprint(state))


class EnumerationProperties(SimpleTestCase):
    @settings(max_examples=300, deadline=None)
    @given(small_lattices(), st.integers(min_value=-4, max_value=8), st.data())
    def test_matches_brute_force(self, lattice, chi, data):
        rank = lattice.rank
        surfaces = tuple(
            SurfaceClass.on(lattice, data.draw(st.lists(st.integers(-2, 2), min_size=rank, max_size=rank)),
                            data.draw(st.integers(min_value=0, max_value=3)))
            for _ in range(data.draw(st.integers(min_value=0, max_value=3)))
        )
        sigma = sum(lattice.diagonal_entries())
        bound = 2
        cfg = AdjunctionConfig(surfaces, chi=chi, sigma=sigma, eval_bound=bound)

        expected = []
        for coords in product(range(-bound, bound + 1), repeat=rank):
            K = LatticeVector(coords)
            if any(abs(e) > bound for e in lattice.evaluations(K)):
                continue
            if not is_characteristic(lattice, K):
                continue
            numerator = lattice.square(K) - 3 * sigma - 2 * chi
            if numerator < 0 or numerator % 4:
                continue
            if all(not s.constrains() or 2 * s.genus - 2 - s.square >= abs(lattice.pairing(K, s.klass))
                   for s in surfaces):
                expected.append(K)

        candidates = enumerate_basic_candidates(cfg, lattice)
        self.assertEqual(candidates, sorted(expected))
        self.assertEqual(candidates, sorted(-K for K in candidates))
