from django.test import SimpleTestCase

from lattice.exceptions import (
    DegenerateLatticeError,
    LatticeLiteralError,
    LatticeShapeError,
    NonUnimodularLatticeError,
    SurfaceSmoothingError,
)
from lattice.intersection_forms import (
    IntLattice,
    LatticeVector,
    diagonal,
    direct_sum,
    format_lattice_literal,
    hyperbolic,
    is_characteristic,
    pairing,
    parse_lattice_literal,
    positive_negative_rank,
    signature_and_parity,
)
from lattice.smith import smith_normal_form
from lattice.surfaces import SurfaceClass, combine_surfaces

ONE_FIVE = diagonal((1, -1, -1, -1, -1, -1))


def u_shaped_lattice():
    pairs = [hyperbolic((f"h{i}", f"H{i}")) for i in range(1, 6)]
    return direct_sum(*pairs, diagonal((-1, -1, -1, -1), ('e1', 'e2', 'e3', 'e4')), name='U')


class PairingTests(SimpleTestCase):
    def test_examples(self):
        self.assertEqual(pairing(diagonal((1, -1)), (1, 0), (1, 0)), 1)
        self.assertEqual(pairing(ONE_FIVE, (3, 1, 1, 1, 1, 1), (3, 1, 1, 1, 1, 1)), 4)
        self.assertEqual(pairing(hyperbolic(), (1, 0), (0, 1)), 1)

    def test_dimension_mismatch(self):
        with self.assertRaises(LatticeShapeError):
            pairing(hyperbolic(), (1, 0, 0), (0, 1))

    def test_vector_by_label(self):
        L = hyperbolic(('x', 'y'))
        self.assertEqual(L.vector({'x': 2, 'y': -1}), LatticeVector((2, -1)))
        self.assertEqual(L.evaluations(L.vector({'x': 1})), (0, 1))


class CharacteristicTests(SimpleTestCase):
    def test_all_odd_vector(self):
        self.assertTrue(is_characteristic(ONE_FIVE, LatticeVector((3, 1, 1, 1, 1, 1))))
        self.assertFalse(is_characteristic(ONE_FIVE, LatticeVector((2, 1, 1, 1, 1, 1))))

    def test_zero_is_characteristic_for_even_forms(self):
        self.assertTrue(is_characteristic(hyperbolic(), LatticeVector((0, 0))))

    def test_non_unimodular_rejected(self):
        with self.assertRaises(NonUnimodularLatticeError):
            is_characteristic(diagonal((2, 1)), LatticeVector((0, 1)))


class SmithTests(SimpleTestCase):
    def test_coprime_diagonal(self):
        form = smith_normal_form([[2, 0], [0, 3]])
        self.assertEqual(form.invariants, (1, 6))
        self.assertTrue(form.verify([[2, 0], [0, 3]]))

    def test_zero_matrix(self):
        form = smith_normal_form([[0, 0], [0, 0]])
        self.assertEqual(form.invariants, ())
        self.assertEqual(form.rank, 0)
        self.assertTrue(form.verify([[0, 0], [0, 0]]))

    def test_rectangular(self):
        matrix = [[2, 4, 4], [-6, 6, 12], [10, -4, -16], [0, 0, 0]]
        form = smith_normal_form(matrix)
        self.assertEqual(form.invariants, (2, 6, 12))
        self.assertTrue(form.verify(matrix))

    def test_empty(self):
        self.assertEqual(smith_normal_form([]).invariants, ())


class SignatureTests(SimpleTestCase):
    def test_hyperbolic(self):
        self.assertEqual(signature_and_parity(hyperbolic()), (0, 'even'))

    def test_diagonal(self):
        self.assertEqual(signature_and_parity(ONE_FIVE), (-4, 'odd'))

    def test_u_shaped(self):
        L = u_shaped_lattice()
        self.assertEqual(L.rank, 14)
        self.assertTrue(L.unimodular)
        self.assertEqual(signature_and_parity(L), (-4, 'odd'))
        self.assertEqual(positive_negative_rank(L), (5, 9))

    def test_zero_diagonal_needs_pair_trick(self):
        L = IntLattice(((0, 1, 0), (1, 0, 1), (0, 1, 0)))
        with self.assertRaises(DegenerateLatticeError):
            signature_and_parity(L)
        self.assertEqual(signature_and_parity(IntLattice(((0, 2), (2, 0)))), (0, 'even'))

    def test_empty(self):
        self.assertEqual(signature_and_parity(IntLattice(())), (0, 'even'))


class LatticeConstructionTests(SimpleTestCase):
    def test_asymmetric_rejected(self):
        with self.assertRaises(LatticeShapeError):
            IntLattice(((0, 1), (2, 0)))

    def test_non_square_rejected(self):
        with self.assertRaises(LatticeShapeError):
            IntLattice(((0, 1),))

    def test_unimodular_flag_checked(self):
        with self.assertRaises(NonUnimodularLatticeError):
            IntLattice(((2,),), unimodular=True)

    def test_duplicate_labels(self):
        with self.assertRaises(LatticeShapeError):
            IntLattice(((1, 0), (0, 1)), ('x', 'x'))

    def test_drop_labels(self):
        L = u_shaped_lattice().drop_labels(['h1', 'H1'])
        self.assertEqual(L.rank, 12)
        self.assertTrue(L.unimodular)
        self.assertEqual(signature_and_parity(L), (-4, 'odd'))

    def test_extend_diagonal(self):
        L = hyperbolic(('x', 'y')).extend_diagonal(2)
        self.assertEqual(L.basis_labels, ('x', 'y', 'E1', 'E2'))
        self.assertEqual(L.extend_diagonal(1).basis_labels[-1], 'E3')
        self.assertEqual(signature_and_parity(L), (-2, 'odd'))

    def test_inverse_gram(self):
        L = IntLattice(((0, 1, 1), (1, 0, 0), (1, 0, -1)))
        self.assertEqual(L.determinant, 1)
        inverse = L.inverse_gram
        for i in range(3):
            for j in range(3):
                self.assertEqual(sum(L.gram[i][k] * inverse[k][j] for k in range(3)), int(i == j))

    def test_basis_change(self):
        raw = IntLattice(((0, 1, 1), (1, 0, 0), (1, 0, -1)), ('x', 'y', 'q'), unimodular=True)
        change = raw.change_basis(
            [raw.vector({'x': 1}), raw.vector({'y': 1}), raw.vector({'y': 1, 'q': -1})],
            ('x', 'y', 'e'),
        )
        self.assertEqual(change.target.gram, ((0, 1, 0), (1, 0, 0), (0, 0, -1)))
        q = raw.vector({'q': 1})
        self.assertEqual(change.to_target(q), LatticeVector((0, 1, -1)))
        self.assertEqual(change.to_source(change.to_target(q)), q)

    def test_basis_change_must_be_unimodular(self):
        with self.assertRaises(NonUnimodularLatticeError):
            hyperbolic().change_basis([(2, 0), (0, 1)], ('a', 'b'))


class LiteralTests(SimpleTestCase):
    def test_blocks(self):
        L = parse_lattice_literal("name = U; basis = [a, b, c]; blocks = [H, -1]")
        self.assertEqual(L.gram, ((0, 1, 0), (1, 0, 0), (0, 0, -1)))
        self.assertEqual(L.name, 'U')
        self.assertTrue(L.unimodular)

    def test_gram(self):
        L = parse_lattice_literal("basis = [x, y]; gram = [[0, 1], [1, 0]]")
        self.assertEqual(L.basis_labels, ('x', 'y'))

    def test_round_trip(self):
        for L in (u_shaped_lattice(), diagonal((2, 3), ('s', 't'), 'D'), IntLattice(((0, 2), (2, -1)))):
            self.assertEqual(parse_lattice_literal(format_lattice_literal(L)), L)

    def test_errors(self):
        for text in (
            "gram = [[1]]",
            "basis = [x]; gram = [[1]]; blocks = [1]",
            "basis = [x, y]; blocks = [H, -1]",
            "basis = [x]; blocks = [Q]",
            "basis = [x]; gram = [[1.5]]",
            "basis = [x]; shape = round",
            "basis = x; gram = [[1]]",
        ):
            with self.subTest(text=text):
                with self.assertRaises(LatticeLiteralError):
                    parse_lattice_literal(text)


class SurfaceTests(SimpleTestCase):
    def test_genus_three_from_one_crossing(self):
        L = IntLattice(((0, 1), (1, -1)), ('x', 'q'))
        x = SurfaceClass.on(L, L.vector({'x': 1}), 2, 'x')
        q = SurfaceClass.on(L, L.vector({'q': 1}), 1, 'q')
        combined = combine_surfaces(L, x, q, 1)
        self.assertEqual((combined.genus, combined.square), (3, 1))
        self.assertEqual(combined.label, 'x+q')

    def test_genus_five_from_two_crossings(self):
        L = IntLattice(((0, 2), (2, -1)), ('x', 'q'))
        x = SurfaceClass.on(L, (1, 0), 2)
        q = SurfaceClass.on(L, (0, 1), 2)
        combined = combine_surfaces(L, x, q, 2)
        self.assertEqual((combined.genus, combined.square), (5, 3))

    def test_two_tori(self):
        L = hyperbolic()
        combined = combine_surfaces(L, SurfaceClass.on(L, (1, 0), 1), SurfaceClass.on(L, (0, 1), 1), 1)
        self.assertEqual((combined.genus, combined.square), (2, 2))

    def test_no_crossings_rejected(self):
        L = diagonal((1, 1))
        with self.assertRaises(SurfaceSmoothingError):
            combine_surfaces(L, SurfaceClass.on(L, (1, 0), 1), SurfaceClass.on(L, (0, 1), 1), 0)

    def test_wrong_crossing_count_rejected(self):
        L = hyperbolic()
        with self.assertRaises(SurfaceSmoothingError):
            combine_surfaces(L, SurfaceClass.on(L, (1, 0), 1), SurfaceClass.on(L, (0, 1), 1), 2)

    def test_constraint_applicability(self):
        L = diagonal((-1,))
        self.assertFalse(SurfaceClass.on(L, (1,), 1).constrains())
        self.assertTrue(SurfaceClass.on(hyperbolic(), (1, 0), 1).constrains())
