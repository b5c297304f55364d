from django.test import SimpleTestCase

from fpgroup.presentation import parse_presentation
from lattice.intersection_forms import diagonal, hyperbolic
from manifold.catalogue import catalogue, get_profile
from manifold.classification import (
    SC_EVEN,
    SC_ODD,
    UNSUPPORTED,
    Z2_DEFINITE,
    Z2_EULER_TWO,
    HomeoClass,
    homeo_classify,
    homeo_equivalent,
)
from manifold.exceptions import (
    ProfileInvariantError,
    UnclassifiableProfileError,
    UnknownProfileError,
    UnsupportedOperationError,
)
from manifold.operations import (
    blow_up,
    certify_pi1,
    connected_sum,
    double_cover,
    fiber_sum,
    free_quotient,
    torus_surgery_profile,
    with_intersection_form,
    with_surface,
)
from manifold.profiles import INVOLUTION, ManifoldProfile, Pi1, betti_split
from manifold.serializers import ProfileSerializer
from swengine.surgery import SurgerySpec


def x_profile(**changes):
    defaults = dict(name='X', chi=8, sigma=-4, flags={INVOLUTION})
    defaults.update(changes)
    return ManifoldProfile(**defaults)


def y_profile():
    return ManifoldProfile('Y', 6, -2, flags={INVOLUTION})


class ProfileTests(SimpleTestCase):
    def test_betti_split(self):
        self.assertEqual(betti_split(x_profile()), (1, 5))
        self.assertEqual(betti_split(y_profile()), (1, 3))
        self.assertEqual(betti_split(get_profile('S2xS2')), (1, 1))
        self.assertEqual(betti_split(get_profile('T4')), (3, 3))

    def test_negative_b2(self):
        with self.assertRaises(ProfileInvariantError):
            ManifoldProfile('bad', 0, 0)

    def test_parity(self):
        with self.assertRaises(ProfileInvariantError):
            ManifoldProfile('bad', 4, 1)
        with self.assertRaises(ProfileInvariantError):
            ManifoldProfile('bad', 3, 3)

    def test_rokhlin(self):
        with self.assertRaises(ProfileInvariantError):
            ManifoldProfile('bad', 10, -8, spin='yes')
        ManifoldProfile('ok', 24, -16, b1=0, spin='yes')

    def test_z2_needs_zero_b1(self):
        with self.assertRaises(ProfileInvariantError):
            ManifoldProfile('bad', 4, 0, b1=1, pi1='z2')

    def test_z2_definite_is_non_spin(self):
        with self.assertRaises(ProfileInvariantError):
            ManifoldProfile('bad', 4, -2, pi1='z2', cover_spin='yes')
        ManifoldProfile('ok', 4, -2, pi1='z2', spin='no', cover_spin='no')

    def test_definite_forms_diagonalize(self):
        with self.assertRaises(ProfileInvariantError):
            ManifoldProfile('bad', 4, -2, definite_diagonal=False)

    def test_pi1_descriptors(self):
        self.assertEqual(str(Pi1.parse('presented:v0')), 'presented:v0')
        self.assertEqual(Pi1.parse('z2').kind, 'z2')
        for text in ('presented', 'bogus', 'trivial:x'):
            with self.subTest(text=text):
                with self.assertRaises(ProfileInvariantError):
                    Pi1.parse(text)

    def test_surface_genera(self):
        self.assertEqual(get_profile('T4#2CP2bar').surface_genera(), (2,))


class ConnectedSumTests(SimpleTestCase):
    def test_cp2_cp2bar(self):
        p = connected_sum(get_profile('CP2'), get_profile('CP2bar'))
        self.assertEqual((p.chi, p.sigma, p.spin), (4, 0, 'no'))
        self.assertEqual(p.intersection_form.rank, 2)

    def test_blown_up_x(self):
        p = blow_up(x_profile())
        self.assertEqual((p.chi, p.sigma), (9, -5))
        self.assertFalse(p.has_involution)

    def test_cover_blowups(self):
        y_quotient = free_quotient(y_profile())
        for b2 in range(2, 8):
            with self.subTest(b2=b2):
                p = blow_up(y_quotient, b2 - 1)
                self.assertEqual((p.chi, p.sigma), (3 + (b2 - 1), -1 - (b2 - 1)))
                self.assertEqual(p.b2, b2)
                self.assertEqual(str(p.pi1), 'z2')

    def test_spin_of_sum(self):
        self.assertEqual(connected_sum(get_profile('S2xS2'), get_profile('S2xS2')).spin, 'yes')
        self.assertEqual(connected_sum(get_profile('S2xS2'), ManifoldProfile('M', 4, 0)).spin, 'unknown')

    def test_two_nontrivial_groups(self):
        with self.assertRaises(UnsupportedOperationError):
            connected_sum(get_profile('Z0'), get_profile('Z1'))

    def test_blow_up_count(self):
        with self.assertRaises(UnsupportedOperationError):
            blow_up(x_profile(), 0)


class FiberSumTests(SimpleTestCase):
    def test_u_invariants(self):
        piece = get_profile('T4#2CP2bar')
        u = fiber_sum(piece, piece, 2)
        self.assertEqual((u.chi, u.sigma, u.b1), (8, -4, 4))
        self.assertEqual(u.chi, 2 * piece.chi + 4)
        self.assertEqual(str(u.pi1), 'unknown')
        self.assertEqual(u.spin, 'unknown')

    def test_r_invariants(self):
        piece = get_profile('T4#CP2bar')
        r = fiber_sum(piece, piece, 2)
        self.assertEqual((r.chi, r.sigma), (6, -2))

    def test_genus_one(self):
        torus_piece = with_surface(get_profile('T4'), 1)
        p = fiber_sum(torus_piece, torus_piece, 1)
        self.assertEqual(p.chi, 0)

    def test_missing_surface(self):
        with self.assertRaises(UnsupportedOperationError):
            fiber_sum(get_profile('T4'), get_profile('T4'), 2)


class SurgeryTests(SimpleTestCase):
    def test_four_surgeries_keep_chi_sigma(self):
        piece = get_profile('T4#2CP2bar')
        p = fiber_sum(piece, piece, 2)
        for i, coefficient in enumerate([(1, -1), (3, -1), (1, -1), (3, -1)], start=1):
            p = torus_surgery_profile(p, SurgerySpec(f"d{i}", coefficient, kills_pair=(f"d{i}", f"D{i}")))
        self.assertEqual((p.chi, p.sigma, p.b1), (8, -4, 0))
        self.assertEqual(betti_split(p), (1, 5))

    def test_identity_surgery(self):
        p = get_profile('T4#CP2bar')
        self.assertIs(torus_surgery_profile(p, SurgerySpec('t', (1, 0))), p)

    def test_kill_without_b1(self):
        with self.assertRaises(ProfileInvariantError):
            torus_surgery_profile(x_profile(), SurgerySpec('t', (1, -1), kills_pair=('a', 'b')))


class QuotientTests(SimpleTestCase):
    def test_x_quotient(self):
        q = free_quotient(x_profile())
        self.assertEqual((q.chi, q.sigma, q.b2, q.b1), (4, -2, 2, 0))
        self.assertEqual(str(q.pi1), 'z2')
        self.assertEqual((q.spin, q.cover_spin), ('no', 'no'))

    def test_s2xs2_quotient(self):
        q = free_quotient(get_profile('S2xS2'), spin='no')
        self.assertEqual((q.chi, q.sigma, q.b2), (2, 0, 0))
        self.assertEqual(q.cover_spin, 'yes')
        self.assertEqual(homeo_classify(q), homeo_classify(get_profile('Z1')))

    def test_y_quotient(self):
        q = free_quotient(y_profile())
        self.assertEqual((q.chi, q.sigma, q.b2), (3, -1, 1))

    def test_preconditions(self):
        with self.assertRaises(UnsupportedOperationError):
            free_quotient(x_profile(flags=()))
        with self.assertRaises(UnsupportedOperationError):
            free_quotient(ManifoldProfile('odd', 5, -1, flags={INVOLUTION}))
        with self.assertRaises(UnsupportedOperationError):
            free_quotient(get_profile('Z1'))

    def test_spin_cover_of_definite_quotient(self):
        with self.assertRaises(ProfileInvariantError):
            free_quotient(ManifoldProfile('M', 20, -16, spin='yes', flags={INVOLUTION}))

    def test_round_trip(self):
        q = free_quotient(x_profile())
        cover = double_cover(q)
        self.assertEqual((cover.chi, cover.sigma, str(cover.pi1)), (8, -4, 'trivial'))
        again = free_quotient(cover)
        self.assertEqual((again.chi, again.sigma), (q.chi, q.sigma))

    def test_double_cover_needs_z2(self):
        with self.assertRaises(UnsupportedOperationError):
            double_cover(x_profile())


class AttachTests(SimpleTestCase):
    def test_certify_trivial(self):
        p = x_profile(pi1='unknown')
        certified = certify_pi1(p, parse_presentation("gens: a b; rels: a*b^-1 b^2*a^-1"))
        self.assertTrue(certified.pi1.is_trivial)

    def test_certify_z2(self):
        p = ManifoldProfile('Q', 4, -2, pi1='unknown')
        certified = certify_pi1(p, parse_presentation("gens: a; rels: a^2"))
        self.assertEqual(str(certified.pi1), 'z2')

    def test_certify_other_group(self):
        p = ManifoldProfile('Q', 4, -2, pi1='unknown')
        certified = certify_pi1(p, parse_presentation("gens: a; rels: a^3"), ref='cyclic')
        self.assertEqual(str(certified.pi1), 'presented:cyclic')
        self.assertIsNotNone(certified.pi1.presentation)

    def test_odd_form(self):
        p = with_intersection_form(x_profile(), diagonal((1, -1, -1, -1, -1, -1)))
        self.assertEqual(p.spin, 'no')
        self.assertEqual(homeo_classify(p).model_name(), 'CP2#5CP2bar')

    def test_even_form(self):
        p = with_intersection_form(ManifoldProfile('M', 4, 0), hyperbolic())
        self.assertEqual((p.spin, p.cover_spin), ('yes', 'yes'))

    def test_definite_form(self):
        p = with_intersection_form(ManifoldProfile('D', 4, -2, pi1='z2'), diagonal((-1, -1)))
        self.assertTrue(p.definite_diagonal)

    def test_form_mismatch(self):
        with self.assertRaises(ProfileInvariantError):
            with_intersection_form(x_profile(), diagonal((1, -1)))
        with self.assertRaises(ProfileInvariantError):
            with_intersection_form(x_profile(), diagonal((1, 1, -1, -1, -1, -1)))
        with self.assertRaises(ProfileInvariantError):
            with_intersection_form(get_profile('S2xS2').with_changes(intersection_form=None), diagonal((1, -1)))


class ClassificationTests(SimpleTestCase):
    def test_x_is_cp2_5cp2bar(self):
        klass = homeo_classify(x_profile(spin='no'))
        self.assertEqual(klass, HomeoClass(SC_ODD, (1, 5)))
        self.assertEqual(klass.model_name(), 'CP2#5CP2bar')
        self.assertEqual(klass.axiom, 'freedman')

    def test_unknown_parity(self):
        with self.assertRaises(UnclassifiableProfileError):
            homeo_classify(x_profile())

    def test_x_quotient_vs_model(self):
        model = get_profile('Z1#2CP2bar')
        q = free_quotient(x_profile())
        self.assertTrue(homeo_equivalent(q, model))
        self.assertEqual(homeo_classify(q), HomeoClass(Z2_DEFINITE, (2, -1)))
        self.assertEqual(homeo_classify(q).model_name(), 'Z1#2CP2bar')

    def test_y_quotient_vs_model(self):
        self.assertTrue(homeo_equivalent(free_quotient(y_profile()), get_profile('Z1#CP2bar')))

    def test_euler_characteristic_separates(self):
        four = ManifoldProfile('A', 4, -2, pi1='z2')
        five = ManifoldProfile('B', 5, -3, pi1='z2')
        self.assertFalse(homeo_equivalent(four, five))

    def test_orientation_separates(self):
        self.assertFalse(homeo_equivalent(ManifoldProfile('A', 4, -2, pi1='z2'),
                                          ManifoldProfile('B', 4, 2, pi1='z2')))

    def test_z0_z1(self):
        self.assertEqual(homeo_classify(get_profile('Z0')), HomeoClass(Z2_EULER_TWO, (1,)))
        self.assertFalse(homeo_equivalent(get_profile('Z0'), get_profile('Z1')))

    def test_simply_connected_even(self):
        self.assertEqual(homeo_classify(get_profile('S2xS2')), HomeoClass(SC_EVEN, (1, 1)))
        self.assertEqual(homeo_classify(get_profile('S4')).model_name(), 'S4')

    def test_unknown_pi1_rejected(self):
        with self.assertRaises(UnclassifiableProfileError):
            homeo_classify(x_profile(pi1='unknown'))
        with self.assertRaises(UnclassifiableProfileError):
            homeo_classify(get_profile('T4'))

    def test_unsupported_is_an_error(self):
        indefinite = ManifoldProfile('I', 4, 0, pi1='z2', spin='no')
        self.assertEqual(homeo_classify(indefinite).kind, UNSUPPORTED)
        with self.assertRaises(UnclassifiableProfileError):
            homeo_equivalent(indefinite, indefinite)
        even_definite = ManifoldProfile('E', 18, -16, spin='yes')
        self.assertEqual(homeo_classify(even_definite).kind, UNSUPPORTED)


class CatalogueTests(SimpleTestCase):
    def test_names(self):
        self.assertEqual(
            list(catalogue()),
            ['S4', 'CP2', 'CP2bar', 'S2xS2', 'T4', 'T4#CP2bar', 'T4#2CP2bar', 'Z0', 'Z1'],
        )

    def test_forms_match(self):
        for name in ('CP2', 'S2xS2', 'T4', 'T4#CP2bar', 'T4#2CP2bar'):
            p = get_profile(name)
            with self.subTest(name=name):
                self.assertEqual(p.intersection_form.rank, p.b2)

    def test_blown_up_names(self):
        p = get_profile('CP2#5CP2bar')
        self.assertEqual((p.chi, p.sigma), (8, -4))

    def test_unknown_name(self):
        with self.assertRaises(UnknownProfileError):
            get_profile('K3')


class ProfileSerializerTests(SimpleTestCase):
    def test_round_trip(self):
        for p in list(catalogue().values()) + [free_quotient(x_profile())]:
            serializer = ProfileSerializer(data=p.to_json())
            with self.subTest(name=p.name):
                self.assertTrue(serializer.is_valid(), serializer.errors)
                restored = serializer.save()
                self.assertEqual(restored, p)
                self.assertEqual(restored.to_json(), p.to_json())

    def test_invalid_documents(self):
        for data in ({'name': 'bad', 'chi': 0, 'sigma': 0},
                     {'name': 'bad', 'chi': 4, 'sigma': 0, 'pi1': 'bogus'},
                     {'name': 'bad', 'chi': 4, 'sigma': 0, 'spin': 'maybe'}):
            with self.subTest(data=data):
                self.assertFalse(ProfileSerializer(data=data).is_valid())
