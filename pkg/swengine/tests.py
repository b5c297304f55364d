from django.test import SimpleTestCase

from config.exceptions import InputError
from lattice.intersection_forms import IntLattice, LatticeVector, diagonal, format_lattice_literal, hyperbolic
from lattice.surfaces import SurfaceClass, combine_surfaces
from swengine.adjunction import AdjunctionConfig, adjunction_admits, enumerate_basic_candidates
from swengine.blowup import ChamberSpread, blowup_sw, chamber_spread
from swengine.exceptions import (
    ChamberStructureError,
    InsufficientDataError,
    NonCharacteristicClassError,
    NonCoprimeCoefficientError,
    SearchSpaceOverflowError,
    StateSymmetryError,
    StateTooLargeError,
)
from swengine.invariants import check_irreducible, sw_fingerprint
from swengine.serializers import SurgeryChainSerializer, SWStateSerializer
from swengine.state import SWState, formal_dimension, seed_state
from swengine.surgery import (
    SurgerySpec,
    apply_surgery_chain,
    run_surgery_chain,
    torus_surgery_sw,
    trace_surgery_chain,
)

ONE_FIVE = diagonal((1, -1, -1, -1, -1, -1), name='CP2#5CP2bar')
L_ONE_FIVE = LatticeVector((3, 1, 1, 1, 1, 1))

# d D x y q: one hyperbolic pair of tori, x.y = 1, x.q = 1, q.q = -1
TOY_GRAM = (
    (0, 1, 0, 0, 0),
    (1, 0, 0, 0, 0),
    (0, 0, 0, 1, 1),
    (0, 0, 1, 0, 0),
    (0, 0, 1, 0, -1),
)


def toy_block(y_genus=2):
    raw = IntLattice(TOY_GRAM, ('d', 'D', 'x', 'y', 'q'), 'toy', unimodular=True)
    v = raw.basis_vector
    change = raw.change_basis([v('d'), v('D'), v('x'), v('y'), v('y') - v('q')], ('d', 'D', 'x', 'y', 'e'))
    x = SurfaceClass.on(raw, v('x'), 2, 'x')
    q = SurfaceClass.on(raw, v('q'), 1, 'q')
    surfaces = [
        SurfaceClass.on(raw, v('d'), 1, 'd'),
        SurfaceClass.on(raw, v('D'), 1, 'D'),
        x,
        SurfaceClass.on(raw, v('y'), y_genus, 'y'),
        q,
        combine_surfaces(raw, x, q, 1),
    ]
    return raw, AdjunctionConfig(tuple(surfaces), chi=5, sigma=-1, search_basis=change)


def symmetric_state(lattice, K, value, b2plus=1):
    return SWState(lattice, b2plus, ((K, value), (-K, -value)))


class FormalDimensionTests(SimpleTestCase):
    def test_examples(self):
        self.assertEqual(formal_dimension(4, 8, -4), 0)
        self.assertEqual(formal_dimension(6, 6, -2), 0)
        self.assertEqual(formal_dimension(0, 4, 0), -2)

    def test_non_integral(self):
        self.assertIsNone(formal_dimension(1, 4, 0))


class AdjunctionTests(SimpleTestCase):
    def test_torus_forces_zero(self):
        L = hyperbolic(('t', 's'))
        torus = SurfaceClass.on(L, (1, 0), 1)
        self.assertFalse(adjunction_admits(L, LatticeVector((0, 1)), torus))
        self.assertTrue(adjunction_admits(L, LatticeVector((0, 0)), torus))

    def test_genus_two(self):
        L = hyperbolic()
        self.assertTrue(adjunction_admits(L, LatticeVector((0, 2)), SurfaceClass.on(L, (1, 0), 2)))

    def test_genus_three_square_one(self):
        L = diagonal((1,))
        self.assertFalse(adjunction_admits(L, LatticeVector((5,)), SurfaceClass.on(L, (1,), 3)))

    def test_negative_square_not_applicable(self):
        L = diagonal((-1,))
        self.assertTrue(adjunction_admits(L, LatticeVector((9,)), SurfaceClass.on(L, (1,), 1)))


class EnumerationTests(SimpleTestCase):
    def test_two_candidates(self):
        raw, cfg = toy_block()
        candidates = enumerate_basic_candidates(cfg, raw)
        self.assertEqual(candidates, [LatticeVector((0, 0, -2, -1, -1)), LatticeVector((0, 0, 2, 1, 1))])
        K = candidates[1]
        self.assertEqual(raw.pairing(K, raw.basis_vector('x')), 2)
        self.assertEqual(raw.pairing(K, raw.basis_vector('y')), 2)
        self.assertEqual(raw.square(K), 7)
        self.assertEqual(formal_dimension(raw.square(K), 5, -1), 0)

    def test_torus_y_vanishes(self):
        raw, cfg = toy_block(y_genus=1)
        self.assertEqual(enumerate_basic_candidates(cfg, raw), [])

    def test_without_search_basis(self):
        L = diagonal((1, -1, -1, -1, -1, -1))
        cfg = AdjunctionConfig((), chi=8, sigma=-4, eval_bound=3)
        candidates = enumerate_basic_candidates(cfg, L)
        self.assertIn(L_ONE_FIVE, candidates)
        self.assertEqual(candidates, sorted(-K for K in candidates))

    def test_box_limit(self):
        raw, cfg = toy_block()
        tight = AdjunctionConfig(cfg.surfaces, cfg.chi, cfg.sigma, search_basis=cfg.search_basis, box_limit=5)
        with self.assertRaises(SearchSpaceOverflowError):
            enumerate_basic_candidates(tight, raw)

    def test_search_basis_must_match(self):
        _, cfg = toy_block()
        with self.assertRaises(InputError):
            enumerate_basic_candidates(cfg, ONE_FIVE)


class SurgeryTests(SimpleTestCase):
    def test_formula(self):
        self.assertEqual(torus_surgery_sw(1, 0, 7, -1), 7)
        self.assertEqual(torus_surgery_sw(5, 11, 1, 0), 5)
        self.assertEqual(torus_surgery_sw(1, 0, 1, -1), 1)

    def test_non_coprime(self):
        with self.assertRaises(NonCoprimeCoefficientError):
            torus_surgery_sw(1, 0, 2, 4)
        with self.assertRaises(NonCoprimeCoefficientError):
            SurgerySpec('d1', (0, 0))

    def test_chain_squares_n(self):
        for n in range(1, 11):
            chain = [
                SurgerySpec('d1', (1, -1), vanishing_axiom='v'),
                SurgerySpec('d2', (n, -1), vanishing_axiom='v'),
                SurgerySpec('d3', (1, -1), vanishing_axiom='v'),
                SurgerySpec('d4', (n, -1), vanishing_axiom='v'),
            ]
            with self.subTest(n=n):
                self.assertEqual(run_surgery_chain(1, chain), n * n)
                self.assertEqual([abs(v) for v in trace_surgery_chain(1, chain)], [1, 1, n, n, n * n])

    def test_empty_and_identity_chains(self):
        self.assertEqual(run_surgery_chain(1, []), 1)
        self.assertEqual(run_surgery_chain(1, [SurgerySpec('t', (1, 0))] * 4), 1)

    def test_insufficient_data(self):
        with self.assertRaises(InsufficientDataError):
            run_surgery_chain(1, [SurgerySpec('t', (3, 2))])

    def test_explicit_f01(self):
        self.assertEqual(run_surgery_chain(2, [SurgerySpec('t', (3, 2), f01=-4)]), 2)

    def test_custom_oracle(self):
        spec = SurgerySpec('t', (3, 1))
        self.assertEqual(run_surgery_chain(2, [spec], vanishing_oracle=lambda s: True), 6)

    def test_apply_chain_kills_pair(self):
        raw, cfg = toy_block()
        K = enumerate_basic_candidates(cfg, raw)[1]
        state = seed_state(raw, 2, K, 5, -1)
        after = apply_surgery_chain(state, [SurgerySpec('d', (3, -1), kills_pair=('d', 'D'), vanishing_axiom='v')])
        self.assertEqual(after.base_lattice.basis_labels, ('x', 'y', 'q'))
        self.assertEqual(after.b2plus, 1)
        self.assertTrue(after.chambered)
        self.assertEqual(dict(after.base_values)[LatticeVector((2, 1, 1))], 3)

    def test_apply_chain_rejects_pairing_class(self):
        L = hyperbolic(('d', 'D'))
        state = symmetric_state(L, LatticeVector((2, 0)), 1)
        with self.assertRaises(InputError):
            apply_surgery_chain(state, [SurgerySpec('d', (1, -1), kills_pair=('d', 'D'), vanishing_axiom='v')])


class StateTests(SimpleTestCase):
    def test_seed_signs(self):
        state = seed_state(ONE_FIVE, 1, L_ONE_FIVE, 8, -4)
        self.assertEqual(state.value(L_ONE_FIVE), 1)
        self.assertEqual(state.value(-L_ONE_FIVE), -1)
        self.assertEqual(seed_state(ONE_FIVE, 1, L_ONE_FIVE, 8, 0).value(-L_ONE_FIVE), 1)

    def test_non_characteristic_rejected(self):
        with self.assertRaises(NonCharacteristicClassError):
            symmetric_state(ONE_FIVE, LatticeVector((2, 1, 1, 1, 1, 1)), 1)

    def test_missing_partner_rejected(self):
        with self.assertRaises(StateSymmetryError):
            SWState(ONE_FIVE, 1, ((L_ONE_FIVE, 1),))

    def test_zero_values_dropped(self):
        self.assertTrue(SWState(ONE_FIVE, 1, ((L_ONE_FIVE, 0), (-L_ONE_FIVE, 0))).is_empty)

    def test_json_sorted(self):
        data = symmetric_state(ONE_FIVE, L_ONE_FIVE, 4).to_json()
        self.assertEqual(data['lattice'], format_lattice_literal(ONE_FIVE))
        self.assertEqual([e['coords'] for e in data['entries']], [[-3, -1, -1, -1, -1, -1], [3, 1, 1, 1, 1, 1]])
        serializer = SWStateSerializer(data=data)
        self.assertTrue(serializer.is_valid(), serializer.errors)
        self.assertEqual(serializer.save(), symmetric_state(ONE_FIVE, L_ONE_FIVE, 4))

    def test_json_of_blown_up_state_expands(self):
        state = blowup_sw(symmetric_state(ONE_FIVE, L_ONE_FIVE, 4), 2)
        serializer = SWStateSerializer(data=state.to_json())
        self.assertTrue(serializer.is_valid(), serializer.errors)
        loaded = serializer.save()
        self.assertEqual(loaded.exceptional, 0)
        self.assertEqual(loaded.lattice.rank, 8)
        self.assertEqual(sw_fingerprint(loaded), sw_fingerprint(state))
        self.assertFalse(check_irreducible(loaded))

    def test_json_rejects_bad_lattice(self):
        data = symmetric_state(ONE_FIVE, L_ONE_FIVE, 4).to_json()
        serializer = SWStateSerializer(data=dict(data, lattice='basis = [x]; blocks = [H]'))
        self.assertFalse(serializer.is_valid())
        self.assertIn('lattice', serializer.errors)

    def test_json_size_bound(self):
        state = blowup_sw(symmetric_state(ONE_FIVE, L_ONE_FIVE, 4), 3)
        self.assertEqual(len(state.to_json()['entries']), 16)
        with self.assertRaises(StateTooLargeError):
            state.to_json(max_keys=8)


class BlowupTests(SimpleTestCase):
    def test_one_blowup(self):
        n = 3
        state = blowup_sw(symmetric_state(ONE_FIVE, L_ONE_FIVE, n * n), 1)
        items = list(state.items())
        self.assertEqual(len(items), 4)
        self.assertTrue(all(abs(v) == n * n for _, v in items))
        self.assertEqual(state.lattice.rank, 7)
        self.assertEqual(state.value(LatticeVector((3, 1, 1, 1, 1, 1, -1))), n * n)
        self.assertEqual(state.value(LatticeVector((3, 1, 1, 1, 1, 1, 3))), 0)

    def test_empty(self):
        self.assertTrue(blowup_sw(SWState(ONE_FIVE, 1), 3).is_empty)

    def test_cover_blowups(self):
        b2 = 3
        state = blowup_sw(symmetric_state(ONE_FIVE, L_ONE_FIVE, 4), 2 * b2 - 2)
        self.assertEqual(state.support_size, 2 ** (2 * b2 - 1))

    def test_count_positive(self):
        with self.assertRaises(InputError):
            blowup_sw(SWState(ONE_FIVE, 1), 0)


class ChamberTests(SimpleTestCase):
    def test_spread(self):
        n = 4
        spread = chamber_spread(symmetric_state(ONE_FIVE, L_ONE_FIVE, n * n))
        self.assertEqual(spread[LatticeVector((1, 1, 1, 1, 1, 1))], frozenset({-1, 0, 1}))
        self.assertEqual(spread[L_ONE_FIVE], frozenset({15, 16, 17}))
        allowed = {0, 1, -1, 16, -16, 15, 17, -15, -17}
        self.assertTrue(spread.value_union() <= allowed)
        self.assertIn(16, spread.value_union())
        self.assertIn(-16, spread.value_union())

    def test_requires_b2plus_one(self):
        with self.assertRaises(ChamberStructureError):
            chamber_spread(symmetric_state(ONE_FIVE, L_ONE_FIVE, 1, b2plus=3))

    def test_items(self):
        spread = ChamberSpread(blowup_sw(symmetric_state(ONE_FIVE, L_ONE_FIVE, 1), 1))
        self.assertEqual(len(list(spread.items())), 4)


class InvariantTests(SimpleTestCase):
    def test_irreducible(self):
        self.assertTrue(check_irreducible(symmetric_state(ONE_FIVE, L_ONE_FIVE, 1)))

    def test_square_minus_four_difference(self):
        other = LatticeVector((3, -1, 1, 1, 1, 1))
        state = SWState(ONE_FIVE, 1, ((L_ONE_FIVE, 1), (-L_ONE_FIVE, -1), (other, 1), (-other, -1)))
        self.assertFalse(check_irreducible(state))

    def test_empty_is_not_irreducible(self):
        self.assertFalse(check_irreducible(SWState(ONE_FIVE, 1)))

    def test_blown_up_is_reducible(self):
        self.assertFalse(check_irreducible(blowup_sw(symmetric_state(ONE_FIVE, L_ONE_FIVE, 1), 1)))

    def test_fingerprints(self):
        first = symmetric_state(ONE_FIVE, L_ONE_FIVE, 4)
        self.assertEqual(sw_fingerprint(first), (((4, 4), 2),))
        self.assertEqual(sw_fingerprint(first), sw_fingerprint(first.negated()))
        self.assertNotEqual(sw_fingerprint(first), sw_fingerprint(symmetric_state(ONE_FIVE, L_ONE_FIVE, 9)))

    def test_blown_up_fingerprint(self):
        state = blowup_sw(symmetric_state(ONE_FIVE, L_ONE_FIVE, 4), 2)
        self.assertEqual(sw_fingerprint(state), (((4, 2), 8),))


class ChainDocumentTests(SimpleTestCase):
    def test_steps(self):
        serializer = SurgeryChainSerializer(data={
            'base_value': 1,
            'chain': [{'torus': 'd1', 'p': 2, 'q': -1, 'vanishing': True}],
        })
        self.assertTrue(serializer.is_valid(), serializer.errors)
        spec = serializer.validated_data['specs'][0]
        self.assertEqual(spec.coefficient, (2, -1))
        self.assertEqual(spec.vanishing_axiom, 'declared')

    def test_non_coprime_rejected(self):
        serializer = SurgeryChainSerializer(data={'chain': [{'torus': 'd1', 'p': 2, 'q': 2}]})
        self.assertFalse(serializer.is_valid())

    def test_builtin_needs_n(self):
        self.assertFalse(SurgeryChainSerializer(data={'builtin': 'xn'}).is_valid())
