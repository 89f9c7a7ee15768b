import unittest

import numpy as np
from sympy.polys.domains import QQ

from hopftwist import linalg
from hopftwist.algebra import FiniteAlgebra
from hopftwist.comodule import lattice_contains, lattice_equal
from hopftwist.errors import DimensionMismatch, SchemaError
from hopftwist.ring import NumberField, RingSpec


class TestLinalg(unittest.TestCase):

    def setUp(self):
        self.field = NumberField.rationals()

    def test_kernel(self):
        A = linalg.matrix(self.field, [[1, 2, 3], [2, 4, 6]])
        kernel = linalg.kernel(self.field, A)
        self.assertEqual(kernel.shape, (2, 3))
        self.assertTrue(linalg.is_zero(linalg.dot(A, kernel.T)))

    def test_det_and_inverse(self):
        A = linalg.matrix(self.field, [[2, 1], [1, 1]])
        self.assertEqual(linalg.det(self.field, A), 1)
        product = linalg.dot(A, linalg.inverse(self.field, A))
        self.assertEqual(list(product.reshape(-1)), [1, 0, 0, 1])

    def test_solve(self):
        A = linalg.matrix(self.field, [[1, 1], [1, -1]])
        x = linalg.solve(self.field, A, linalg.vector(self.field, [3, 1]))
        self.assertEqual(list(x), [2, 1])
        singular = linalg.matrix(self.field, [[1, 1], [1, 1]])
        self.assertIsNone(linalg.solve(self.field, singular, linalg.vector(self.field, [1, 0])))

    def test_invertible_over(self):
        ring = RingSpec(self.field, inverted_primes=[2])
        self.assertTrue(linalg.is_invertible_over(ring, linalg.matrix(self.field, [[1, 1], [1, -1]])))
        self.assertFalse(linalg.is_invertible_over(ring, linalg.matrix(self.field, [[1, 1], [1, 4]])))

    def test_ragged(self):
        with self.assertRaises(DimensionMismatch):
            linalg.matrix(self.field, [[1, 2], [3]])

    def test_cyclotomic_det(self):
        field = NumberField.cyclotomic(3)
        z = field.gen
        A = linalg.matrix(field, [[1, z], [z, 1]])
        self.assertEqual(linalg.det(field, A), 1 - z * z)

    def test_cyclotomic_elimination(self):
        field = NumberField.cyclotomic(3)
        z = field.gen
        A = linalg.matrix(field, [[1, z], [z, z * z]])
        kernel = linalg.kernel(field, A)
        self.assertEqual(kernel.shape, (1, 2))
        self.assertTrue(linalg.is_zero(linalg.dot(A, kernel.T)))
        self.assertEqual(linalg.rref(A)[1], [0])
        self.assertEqual(linalg.rank(A), 1)
        B = linalg.matrix(field, [[1, z], [z, 1]])
        product = linalg.dot(linalg.inverse(field, B), B)
        self.assertEqual(list(product.reshape(-1)), [1, 0, 0, 1])

    def test_reducible_modulus(self):
        field = NumberField([-1, 0, 1])
        with self.assertRaises(SchemaError):
            linalg.kernel(field, linalg.matrix(field, [[1, 1]]))

    def test_saturation(self):
        ring = RingSpec(self.field, inverted_primes=[2])
        third = self.field.convert(1) / 3
        saturated = linalg.saturation(ring, linalg.matrix(self.field, [[1], [third]]))
        self.assertTrue(lattice_equal(ring, saturated, linalg.matrix(self.field, [[3], [1]])))

        field = NumberField.cyclotomic(3)
        z = field.gen
        eisenstein = RingSpec(field)
        saturated = linalg.saturation(eisenstein, linalg.matrix(field, [[1], [z / 2]]))
        self.assertEqual(saturated.shape, (2, 2))
        self.assertTrue(lattice_contains(eisenstein, linalg.matrix(field, [[2], [z]]), saturated))
        self.assertTrue(linalg.entries_in(eisenstein, saturated))


class TestFiniteAlgebra(unittest.TestCase):

    def setUp(self):
        self.ring = RingSpec(NumberField.rationals(), inverted_primes=[2, 3])
        self.field = self.ring.field

    def helper_root_relation(self, algebra, beta, degree):
        self.assertEqual(algebra.root() ** degree, beta)

    def test_adjoin_root(self):
        B = FiniteAlgebra.trivial(self.ring).adjoin_root([2], 3)
        self.assertEqual(B.rank, 3)
        self.assertEqual(B.check_axioms(), [])
        self.assertTrue(B.is_commutative())
        self.helper_root_relation(B, B.scalar(2), 3)

    def test_tower(self):
        # E = R[d]/(d^2 - 3), B = E[X]/(X^2 - d)
        E = FiniteAlgebra.trivial(self.ring).adjoin_root([3], 2)
        d = E.root()
        B = E.adjoin_root(d, 2)
        self.assertEqual(B.rank, 4)
        self.assertEqual(B.check_axioms(), [])
        x = B.root()
        self.assertEqual(x * x, B.include_base(d))
        self.assertEqual(x ** 4, B.scalar(3))

    def test_trace(self):
        B = FiniteAlgebra.trivial(self.ring).adjoin_root([2], 3)
        # Tr(1) = 3, Tr(x) = Tr(x^2) = 0
        self.assertEqual(list(B.trace_vector()), [3, 0, 0])
        gram = B.trace_form()
        self.assertEqual(list(gram.reshape(-1)), [3, 0, 0, 0, 0, 6, 0, 6, 0])
        self.assertTrue(B.is_separable())

    def test_inseparable(self):
        dual_numbers = FiniteAlgebra.trivial(self.ring).adjoin_root([0], 2)
        self.assertFalse(dual_numbers.is_separable())

    def test_noncommutative(self):
        # 2x2 matrices over R on the basis E11, E12, E21, E22
        def products(i, j):
            a, b = divmod(i, 2)
            c, d = divmod(j, 2)
            coords = [0] * 4
            if b == c:
                coords[2 * a + d] = 1
            return coords

        M2 = FiniteAlgebra.from_table(self.ring, 4, products, [1, 0, 0, 1])
        self.assertEqual(M2.check_axioms(), [])
        self.assertFalse(M2.is_commutative())

    def test_axiom_failures(self):
        mult = linalg.zeros(self.field, (2, 2, 2))
        mult[0, 0, 0] = mult[0, 1, 1] = mult[1, 0, 1] = self.field.one
        mult[1, 1, 0] = self.field.one
        mult[1, 1, 1] = self.field.one
        broken = FiniteAlgebra(self.ring, mult, [1, 0])
        self.assertEqual(broken.check_axioms(), [])
        mult = mult.copy()
        mult[1, 1, 0] = self.field.convert(QQ(1, 5))
        mult[0, 1, 0] = self.field.one
        names = [name for name, _ in FiniteAlgebra(self.ring, mult, [1, 0]).check_axioms()]
        self.assertIn('structure constants', names)
        self.assertIn('unit law', names)

    def test_endomorphism(self):
        # x -> -x on R[X]/(X^2 - 3)
        E = FiniteAlgebra.trivial(self.ring).adjoin_root([3], 2)
        base = FiniteAlgebra.trivial(self.ring)
        matrix = E.endomorphism_matrix([E.include_base(base.unit)], -E.root())
        self.assertEqual(list(matrix.reshape(-1)), [1, 0, 0, -1])
        self.assertTrue(E.is_algebra_map(matrix))
        self.assertFalse(E.is_algebra_map(linalg.scale(linalg.identity(self.field, 2), 2)))

    def test_shape_errors(self):
        with self.assertRaises(DimensionMismatch):
            FiniteAlgebra(self.ring, np.zeros((2, 2, 3), dtype=object), [1, 0])
        with self.assertRaises(DimensionMismatch):
            FiniteAlgebra(self.ring, linalg.zeros(self.field, (2, 2, 2)), [1])


if __name__ == '__main__':
    unittest.main()
