import unittest

from sympy.polys.domains import QQ

from hopftwist import linalg
from hopftwist.comodule import Comodule
from hopftwist.errors import DimensionMismatch, NotEquivariant, SchemaError, SingularForm
from hopftwist.examples import build_mu_n, build_v_form, cyclotomic_ring, v_form_diagonalization
from hopftwist.ring import NumberField, RingSpec
from hopftwist.symbundle import (SymBundle, is_equivariant, fixed_form, verify_isometry, diagonalize,
                                 hilbert_symbol, rational_invariants, decide_isometry_Q, discriminant)


class TestVForm(unittest.TestCase):

    def setUp(self):
        self.ring = cyclotomic_ring(5, [2, 3])
        self.mu = build_mu_n(5, self.ring)
        self.V = build_v_form(self.mu)

    def test_gram(self):
        half = self.mu.field.convert(QQ(1, 2))
        self.assertEqual(list(self.V.gram.reshape(-1)), [0, half, half, 0])
        self.assertTrue(self.V.is_symmetric())
        self.assertTrue(self.V.is_perfect())

    def test_equivariant(self):
        self.assertTrue(is_equivariant(self.V))

    def test_corrupted_coaction(self):
        # eps2 -> eps2 (x) t instead of eps2 (x) t^4
        coaction = self.V.module.coaction.copy()
        coaction[1, 1, 4] = self.mu.field.zero
        coaction[1, 1, 1] = self.mu.field.one
        corrupted = SymBundle(self.V.gram, module=Comodule(self.mu, coaction))
        self.assertEqual(corrupted.module.check_axioms(), [])
        self.assertFalse(is_equivariant(corrupted))
        with self.assertRaises(NotEquivariant):
            fixed_form(corrupted)

    def test_diagonalization(self):
        ring = cyclotomic_ring(4, [2])
        field = ring.field
        half = field.convert(QQ(1, 2))
        V = SymBundle(linalg.matrix(field, [[0, half], [half, 0]]), ring=ring)
        sum_of_squares = SymBundle(linalg.identity(field, 2), ring=ring)
        P = v_form_diagonalization(field, field.gen)
        self.assertTrue(verify_isometry(P, V, sum_of_squares))
        with self.assertRaises(SchemaError):
            v_form_diagonalization(field, 2)


class TestSymBundle(unittest.TestCase):

    def setUp(self):
        self.ring = RingSpec(NumberField.rationals(), inverted_primes=[2])
        self.field = self.ring.field

    def form(self, rows):
        return SymBundle(linalg.matrix(self.field, rows), ring=self.ring)

    def test_construction_errors(self):
        with self.assertRaises(SchemaError):
            SymBundle(linalg.identity(self.field, 2))
        with self.assertRaises(DimensionMismatch):
            SymBundle(linalg.zeros(self.field, (2, 3)), ring=self.ring)
        mu = build_mu_n(3, self.ring)
        with self.assertRaises(DimensionMismatch):
            SymBundle(linalg.identity(self.field, 3), module=build_v_form(mu).module)

    def test_perfect(self):
        self.assertTrue(self.form([[0, 1], [1, 0]]).is_perfect())
        self.assertTrue(self.form([[2, 0], [0, 1]]).is_perfect())
        self.assertFalse(self.form([[3, 0], [0, 1]]).is_perfect())
        self.assertFalse(self.form([[1, 1], [1, 1]]).is_perfect())

    def test_verify_isometry(self):
        identity, double = self.form([[1, 0], [0, 1]]), self.form([[2, 0], [0, 2]])
        self.assertTrue(verify_isometry(linalg.matrix(self.field, [[1, 1], [1, -1]]), identity, double))
        self.assertFalse(verify_isometry(linalg.identity(self.field, 2), identity, double))
        # det 3 is not a unit of Z[1/2]
        self.assertFalse(verify_isometry(linalg.matrix(self.field, [[1, 1], [1, 4]]), identity, identity))
        with self.assertRaises(DimensionMismatch):
            verify_isometry(linalg.identity(self.field, 3), identity, double)

    def test_diagonalize(self):
        gram = linalg.matrix(self.field, [[0, 1, 2], [1, 0, 3], [2, 3, 1]])
        diagonal, P = diagonalize(self.field, gram)
        image = linalg.dot(P.T, linalg.dot(gram, P))
        for i in range(3):
            for j in range(3):
                self.assertEqual(image[i, j], diagonal[i] if i == j else 0)
        self.assertTrue(linalg.det(self.field, P))

    def test_discriminant(self):
        b = self.form([[2, 0], [0, -6]])
        self.assertEqual(discriminant(b), -12)
        self.assertEqual(discriminant(b, squares=[2]), -3)


class TestRationalInvariants(unittest.TestCase):

    def setUp(self):
        self.ring = RingSpec.over_field(NumberField.rationals())
        self.field = self.ring.field

    def form(self, rows):
        return SymBundle(linalg.matrix(self.field, rows), ring=self.ring)

    def test_hilbert_symbols(self):
        self.assertEqual(hilbert_symbol(QQ(-1), QQ(-1), 'inf'), -1)
        self.assertEqual(hilbert_symbol(QQ(-1), QQ(-1), 2), -1)
        self.assertEqual(hilbert_symbol(QQ(-1), QQ(-1), 3), 1)
        self.assertEqual(hilbert_symbol(QQ(2), QQ(5), 5), -1)
        self.assertEqual(hilbert_symbol(QQ(3), QQ(5), 5), -1)
        self.assertEqual(hilbert_symbol(QQ(1, 4), QQ(7), 7), 1)
        self.assertEqual(hilbert_symbol(QQ(2), QQ(7), 2), 1)

    def test_invariants(self):
        invariants = rational_invariants(self.form([[1, 0, 0], [0, 3, 0], [0, 0, -5]]))
        self.assertEqual(invariants.rank, 3)
        self.assertEqual(invariants.signature, (2, 1))
        self.assertEqual(invariants.det_class, -15)
        self.assertTrue(invariants.product_formula())

    def test_square_classes(self):
        self.assertEqual(rational_invariants(self.form([[QQ(8, 9)]])).det_class, 2)
        self.assertEqual(rational_invariants(self.form([[0, 1], [1, 0]])).det_class, -1)

    def test_decisions(self):
        identity = self.form([[1, 0], [0, 1]])
        self.assertTrue(decide_isometry_Q(identity, self.form([[2, 0], [0, 2]])))
        self.assertTrue(decide_isometry_Q(self.form([[1, 0], [0, -1]]), self.form([[0, 1], [1, 0]])))
        self.assertFalse(decide_isometry_Q(identity, self.form([[1, 0], [0, -1]])))
        self.assertFalse(decide_isometry_Q(identity, self.form([[3, 0], [0, 3]])))
        self.assertFalse(decide_isometry_Q(self.form([[1, 0], [0, -2]]), self.form([[1, 0], [0, 2]])))

    def test_errors(self):
        with self.assertRaises(SingularForm):
            rational_invariants(self.form([[1, 1], [1, 1]]))
        ring = cyclotomic_ring(5, [2, 3])
        with self.assertRaises(SchemaError):
            rational_invariants(SymBundle(linalg.identity(ring.field, 2), ring=ring))


if __name__ == '__main__':
    unittest.main()
