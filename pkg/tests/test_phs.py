import unittest

from hopftwist import linalg
from hopftwist.algebra import FiniteAlgebra
from hopftwist.errors import DimensionMismatch, H2Failure, NotAUnit, NotCommutative, SchemaError
from hopftwist.examples import (build_constant, build_dihedral, build_galois_kummer_torsor, build_kummer_torsor,
                                build_mu_n, build_v_form, cyclic_group, cyclotomic_ring, gauss_sum, standard_dihedral,
                                verify_dihedral_twist, verify_kummer_twist, verify_unit_form)
from hopftwist.hopf import h2_integrals
from hopftwist.phs import (PHS, is_phs, regular_phs, torsor_matrix, codifferent, trace_bundle, unit_form, twist,
                           check_trivial_twist, trace_identity_check, scalar_extension_integrals_check)
from hopftwist.ring import NumberField, RingSpec, PrincipalIdeal
from hopftwist.symbundle import fixed_form, is_equivariant


class TestKummerTorsors(unittest.TestCase):

    def setUp(self):
        self.ring = cyclotomic_ring(5, [2, 3])
        self.field = self.ring.field
        self.mu = build_mu_n(5, self.ring)
        self.sqrt5 = gauss_sum(self.field, 5)

    def helper_torsor(self, y):
        B = build_kummer_torsor(self.mu, y)
        report = is_phs(B)
        self.assertTrue(report.passed, report.failures())
        self.assertTrue(linalg.is_invertible_over(self.ring, torsor_matrix(B)))
        return B

    def test_torsors(self):
        for y in (1, 2, 3, -1):
            self.helper_torsor(y)

    def test_trivial_torsor(self):
        self.assertTrue(is_phs(regular_phs(self.mu)).passed)

    def test_not_a_unit(self):
        with self.assertRaises(NotAUnit):
            build_kummer_torsor(self.mu, 5)
        with self.assertRaises(NotAUnit):
            build_kummer_torsor(self.mu, 0)

    def test_codifferent(self):
        B = self.helper_torsor(2)
        self.assertTrue(codifferent(B).same_ideal(PrincipalIdeal(self.ring, self.field.convert(1) / 5)))

    def test_trace_checks(self):
        B = self.helper_torsor(2)
        self.assertTrue(trace_identity_check(B))
        self.assertTrue(scalar_extension_integrals_check(B))

    def test_trace_bundle(self):
        B = self.helper_torsor(2)
        bundle = trace_bundle(B, self.sqrt5)
        # Tr(1) / 5 = 1, Tr(x^2 x^3) / 5 = 2
        self.assertEqual(bundle.gram[0, 0], 1)
        self.assertEqual(bundle.gram[2, 3], 2)
        self.assertTrue(bundle.is_perfect())
        self.assertTrue(is_equivariant(bundle))
        with self.assertRaises(H2Failure):
            trace_bundle(B, 1)

    def test_twist_rank(self):
        result = twist(build_v_form(self.mu), self.helper_torsor(3), self.sqrt5)
        self.assertEqual(result.gram.shape, (2, 2))
        self.assertTrue(result.bundle.is_perfect())

    def test_twist_over_other_hopf(self):
        V3 = build_v_form(build_mu_n(3, self.ring))
        with self.assertRaises(DimensionMismatch):
            twist(V3, self.helper_torsor(2), self.sqrt5)

    def test_rank_mismatch(self):
        B = self.helper_torsor(2)
        with self.assertRaises(DimensionMismatch):
            PHS(FiniteAlgebra.trivial(self.ring).adjoin_root([2], 3), B.comodule)

    def test_trivial_twist(self):
        report = check_trivial_twist(build_v_form(self.mu), self.sqrt5)
        self.assertTrue(report.passed, report.failures())


class TestKummerTwist(unittest.TestCase):

    def helper_twist(self, y, p=5):
        report = verify_kummer_twist(p, y)
        self.assertTrue(report.passed, report.failures())
        return report

    def test_units(self):
        for y in (1, 2, 3, -1):
            self.helper_twist(y)

    def test_gram_values(self):
        report = self.helper_twist(2)
        gram = report.values['twisted gram']
        self.assertEqual(list(gram.reshape(-1)), [0, 1, 1, 0])

    def test_three_mod_four(self):
        report = self.helper_twist(2, p=3)
        self.assertEqual(report.values['gauss sum scale'], -1)
        self.assertIn('isometric to V', [check['name'] for check in report.checks])
        self.assertEqual(list(report.values['twisted gram'].reshape(-1)), [0, -1, -1, 0])

    def test_non_unit(self):
        with self.assertRaises(NotAUnit):
            verify_kummer_twist(5, 5)


class TestUnitForm(unittest.TestCase):

    def setUp(self):
        self.field_q = RingSpec.over_field(NumberField.rationals())
        self.constant = build_constant(cyclic_group(5), self.field_q)

    def test_orthonormal(self):
        kappa = unit_form(self.constant)
        self.assertEqual(list(kappa.gram.reshape(-1)), list(linalg.identity(self.constant.field, 5).reshape(-1)))
        self.assertTrue(is_equivariant(kappa))
        fixed = fixed_form(unit_form(self.constant, 1), h2_integrals(self.constant, 1).theta_dual)
        self.assertEqual(list(fixed.gram.reshape(-1)), [1])

    def test_trivial_torsor(self):
        report = verify_unit_form(self.constant, regular_phs(self.constant), 1, unit=2)
        self.assertTrue(report.passed, report.failures())

    def test_kummer_torsor(self):
        ring = cyclotomic_ring(5, [2, 3])
        mu = build_mu_n(5, ring)
        report = verify_unit_form(mu, build_kummer_torsor(mu, 2), gauss_sum(mu.field, 5))
        self.assertTrue(report.passed, report.failures())

    def test_constant_kummer_torsor(self):
        ring = cyclotomic_ring(3, [2, 3])
        constant = build_constant(cyclic_group(3), ring)
        torsor = build_galois_kummer_torsor(constant, 2, ring.field.gen)
        self.assertTrue(is_phs(torsor).passed)
        report = verify_unit_form(constant, torsor, 1)
        self.assertTrue(report.passed, report.failures())
        with self.assertRaises(SchemaError):
            build_galois_kummer_torsor(constant, 2, 1)

    def test_noncommutative(self):
        with self.assertRaises(NotCommutative):
            unit_form(standard_dihedral(3).H)

    def test_trivial_twist(self):
        report = check_trivial_twist(unit_form(self.constant), 1)
        self.assertTrue(report.passed, report.failures())


class TestDihedral(unittest.TestCase):

    def test_torsor(self):
        data = standard_dihedral(3)
        report = is_phs(data.B)
        self.assertTrue(report.passed, report.failures())
        self.assertTrue(is_equivariant(data.M))

    def test_degenerate(self):
        data = standard_dihedral(3)
        degenerate = build_dihedral(3, data.ring, 0, [1, 0], 1, strict=False)
        self.assertFalse(is_phs(degenerate.B).passed)

    def test_twist(self):
        report = verify_dihedral_twist(3)
        self.assertTrue(report.passed, report.failures())
        data = standard_dihedral(3)
        a, d = data.a, data.d
        self.assertEqual(list(report.values['twisted gram'].reshape(-1)), [2 * a, 0, 0, -2 * a * d])

    def test_twist_order_10(self):
        report = verify_dihedral_twist(5)
        self.assertTrue(report.passed, report.failures())

    def test_even_rotation_torsor(self):
        data = standard_dihedral(4)
        self.assertEqual(list(data.beta.coords), [data.d * data.d, 0])
        report = is_phs(data.B)
        self.assertTrue(report.passed, report.failures())


if __name__ == '__main__':
    unittest.main()
