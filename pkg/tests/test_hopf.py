import unittest

from hopftwist import linalg
from hopftwist.errors import H2Failure, NoFreeGenerator, NotASquare, NotCommutative, SchemaError
from hopftwist.examples import (build_constant, build_dihedral_order, build_group_algebra, build_mu_n, cyclic_group,
                                cyclotomic_ring, gauss_sum, standard_dihedral, symmetric_group_3)
from hopftwist.hopf import (HopfAlgebra, validate_hopf, dual, integrals, check_H1, check_H2, h2_integrals,
                            is_unimodular, antipode_on_integrals, counit_product_check, theta_pairing_check,
                            is_larson_sweedler_iso, larson_sweedler_matrix)
from hopftwist.ring import NumberField, RingSpec


class TestHopfAxioms(unittest.TestCase):

    def setUp(self):
        self.ring = RingSpec(NumberField.rationals(), inverted_primes=[2])

    def helper_group(self, table):
        G = build_group_algebra(table, self.ring)
        F = build_constant(table, self.ring)
        self.assertTrue(validate_hopf(G).passed)
        self.assertTrue(validate_hopf(F).passed)
        self.assertTrue(dual(F).same_structure(G))
        self.assertTrue(dual(dual(G)).same_structure(G))
        return G, F

    def test_cyclic(self):
        for n in (2, 5):
            G, F = self.helper_group(cyclic_group(n))
            self.assertTrue(G.alg.is_commutative())
            self.assertTrue(F.alg.is_commutative())

    def test_symmetric_group(self):
        G, F = self.helper_group(symmetric_group_3())
        self.assertFalse(G.alg.is_commutative())
        self.assertTrue(F.alg.is_commutative())

    def test_mu_n(self):
        for n in (2, 3):
            self.assertTrue(validate_hopf(build_mu_n(n, self.ring)).passed)
        mu = build_mu_n(5, cyclotomic_ring(5, [2, 3]))
        self.assertTrue(validate_hopf(mu).passed)
        with self.assertRaises(SchemaError):
            build_mu_n(1, self.ring)

    def test_dihedral(self):
        data = standard_dihedral(3)
        self.assertTrue(validate_hopf(data.H).passed)
        self.assertTrue(validate_hopf(data.A).passed)
        self.assertFalse(data.H.alg.is_commutative())

    def test_dihedral_orders(self):
        ring = cyclotomic_ring(3, [2, 3, 5])
        for n in (4, 5):
            H = build_dihedral_order(n, ring)
            self.assertTrue(validate_hopf(H).passed, n)
            self.assertTrue(validate_hopf(dual(H)).passed, n)
        self.assertTrue(validate_hopf(standard_dihedral(4).A).passed)

    def helper_corrupted(self, H, expected):
        failed = [check['name'] for check in validate_hopf(H).failures()]
        self.assertIn(expected, failed)
        return failed

    def test_corrupted_antipode(self):
        mu = build_mu_n(5, cyclotomic_ring(5, [2, 3]))
        corrupted = HopfAlgebra(mu.alg, mu.comult, mu.counit, linalg.identity(mu.field, 5))
        self.assertEqual(self.helper_corrupted(corrupted, 'antipode law'), ['antipode law'])

    def test_corrupted_counit(self):
        G = build_group_algebra(cyclic_group(3), self.ring)
        corrupted = HopfAlgebra(G.alg, G.comult, [1, 1, 0], G.antipode)
        self.helper_corrupted(corrupted, 'counit law')

    def test_corrupted_comultiplication(self):
        G = build_group_algebra(cyclic_group(3), self.ring)
        comult = G.comult.copy()
        comult[1, 1, 2] = G.field.one
        self.helper_corrupted(HopfAlgebra(G.alg, comult, G.counit, G.antipode), 'coassociativity')


class TestIntegrals(unittest.TestCase):

    def setUp(self):
        self.field_q = RingSpec.over_field(NumberField.rationals())
        self.ring5 = cyclotomic_ring(5, [2, 3])

    def helper_integrals(self, H, expected):
        data = integrals(H)
        self.assertEqual(list(data.theta), expected)
        self.assertTrue(check_H1(H))
        self.assertTrue(is_unimodular(H))
        self.assertEqual(antipode_on_integrals(H), 1)
        self.assertTrue(counit_product_check(H, data))
        self.assertTrue(theta_pairing_check(H, data))
        self.assertTrue(is_larson_sweedler_iso(H, data))
        self.assertEqual(list(linalg.dot(larson_sweedler_matrix(H, data.theta), data.theta_dual)), list(H.alg.unit))
        return data

    def test_group_algebra(self):
        data = self.helper_integrals(build_group_algebra(cyclic_group(5), self.field_q), [1] * 5)
        self.assertEqual(data.lambda_, 5)

    def test_constant(self):
        data = self.helper_integrals(build_constant(cyclic_group(5), self.field_q), [1, 0, 0, 0, 0])
        self.assertEqual(data.lambda_, 1)

    def test_nonabelian(self):
        self.helper_integrals(build_group_algebra(symmetric_group_3(), self.field_q), [1] * 6)

    def test_mu_5(self):
        mu = build_mu_n(5, self.ring5)
        self.helper_integrals(mu, [1] * 5)
        h2 = check_H2(mu, gauss_sum(mu.field, 5))
        self.assertEqual(h2.lambda_.generator, 5)

    def test_h2_normalization(self):
        mu = build_mu_n(5, self.ring5)
        data = h2_integrals(mu, gauss_sum(mu.field, 5))
        self.assertEqual(data.lambda_, 5)
        self.assertEqual(list(data.theta), [1] * 5)
        self.assertEqual(mu.counit_of(data.idempotent), 1)

    def test_not_a_square(self):
        mu = build_mu_n(5, self.ring5)
        with self.assertRaises(NotASquare):
            check_H2(mu, 1)

    def test_antipode_sign_h2(self):
        mu = build_mu_n(5, self.ring5)
        negated = HopfAlgebra(mu.alg, mu.comult, mu.counit, linalg.scale(linalg.identity(mu.field, 5), -1))
        self.assertEqual(antipode_on_integrals(negated), -1)
        with self.assertRaises(H2Failure):
            check_H2(negated, gauss_sum(mu.field, 5))

    def test_noncommutative_h2(self):
        G = build_group_algebra(symmetric_group_3(), self.field_q)
        with self.assertRaises(NotCommutative):
            check_H2(G, 1)

    def test_dihedral(self):
        data = standard_dihedral(3)
        theta_H = integrals(data.H).theta
        self.assertEqual(list(theta_H), [1, 0, 0, 1, 0, 0])
        theta_A = integrals(data.A).theta
        self.assertEqual(list(theta_A), [1, 1, 1, 0, 0, 0])
        self.assertEqual(data.H.counit_of(theta_H) * data.A.counit_of(theta_A), 6)

    def test_bad_side(self):
        with self.assertRaises(SchemaError):
            integrals(build_mu_n(3, self.field_q), side='up')

    def test_witness(self):
        G = build_group_algebra(cyclic_group(3), self.field_q)
        data = integrals(G, witness=[2, 2, 2])
        self.assertEqual(list(data.theta), [2, 2, 2])
        with self.assertRaises(NoFreeGenerator):
            integrals(G, witness=[1, 0, 0])

    def test_right_integrals(self):
        G = build_group_algebra(symmetric_group_3(), self.field_q)
        self.assertEqual(list(integrals(G, side='right').theta), [1] * 6)


if __name__ == '__main__':
    unittest.main()
