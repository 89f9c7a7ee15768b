import random
import unittest

import numpy as np

from hopftwist import linalg
from hopftwist.comodule import (Comodule, regular_comodule, dual_regular_comodule, trivial_comodule, to_module,
                                from_module, fixed_points, coinvariants, tensor_diagonal, hom_fixed_check,
                                free_generators, lattice_equal)
from hopftwist.errors import DimensionMismatch, FreenessUncertified
from hopftwist.examples import (build_constant, build_group_algebra, build_mu_n, build_v_form, cyclic_group,
                                cyclotomic_ring, random_free_module)
from hopftwist.hopf import integrals
from hopftwist.ring import NumberField, RingSpec


class TestComodule(unittest.TestCase):

    def setUp(self):
        self.ring = cyclotomic_ring(5, [2, 3])
        self.mu = build_mu_n(5, self.ring)
        self.field = self.mu.field
        self.V = build_v_form(self.mu).module

    def helper_axioms(self, M):
        self.assertEqual(M.check_axioms(), [])
        self.assertEqual(to_module(M).check_axioms(), [])

    def test_standard_comodules(self):
        self.helper_axioms(regular_comodule(self.mu))
        self.helper_axioms(dual_regular_comodule(self.mu))
        self.helper_axioms(trivial_comodule(self.mu, 3))
        self.helper_axioms(self.V)

    def test_module_round_trip(self):
        back = from_module(to_module(self.V))
        self.assertEqual(list(back.coaction.reshape(-1)), list(self.V.coaction.reshape(-1)))

    def test_flattened_input(self):
        M = Comodule(self.mu, self.V.flattened())
        self.assertEqual(list(M.coaction.reshape(-1)), list(self.V.coaction.reshape(-1)))

    def test_shape_errors(self):
        with self.assertRaises(DimensionMismatch):
            Comodule(self.mu, linalg.zeros(self.field, (2, 3)))
        with self.assertRaises(DimensionMismatch):
            Comodule(self.mu, linalg.zeros(self.field, (2, 2, 4)))

    def test_broken_counit(self):
        coaction = self.V.coaction.copy()
        coaction[1, 1, 4] = self.field.convert(2)
        names = [name for name, _ in Comodule(self.mu, coaction).check_axioms()]
        self.assertIn('counit law', names)

    def test_fixed_points_of_regular(self):
        fixed = fixed_points(regular_comodule(self.mu))
        self.assertTrue(lattice_equal(self.ring, fixed, self.mu.alg.unit.reshape(5, 1)))

    def test_fixed_points_of_trivial(self):
        self.assertEqual(fixed_points(trivial_comodule(self.mu, 3)).shape, (3, 3))

    def test_v_form_has_no_fixed_points(self):
        self.assertEqual(fixed_points(self.V).shape[1], 0)

    def test_tensor(self):
        T = tensor_diagonal(self.V, self.V)
        self.assertEqual(T.rank, 4)
        self.assertEqual(T.check_axioms(), [])
        # eps1 (x) eps2 and eps2 (x) eps1
        expected = linalg.zeros(self.field, (4, 2))
        expected[1, 0] = self.field.one
        expected[2, 1] = self.field.one
        self.assertTrue(lattice_equal(self.ring, fixed_points(T), expected))

    def test_tensor_over_different_hopf(self):
        other = build_v_form(build_mu_n(3, self.ring)).module
        with self.assertRaises(DimensionMismatch):
            tensor_diagonal(self.V, other)

    def test_free_generators(self):
        regular = dual_regular_comodule(self.mu)
        generators, basis = free_generators(regular)
        self.assertEqual(len(generators), 1)
        self.assertTrue(linalg.is_invertible_over(self.ring, basis))
        with self.assertRaises(FreenessUncertified):
            free_generators(self.V)

    def test_fixed_points_are_saturated(self):
        ring = RingSpec(NumberField.rationals(), inverted_primes=[2])
        H = build_group_algebra(cyclic_group(2), ring)
        projector = linalg.matrix(ring.field, [[0, 3], [0, 1]])
        coaction = np.stack([projector, linalg.identity(ring.field, 2) - projector], axis=2)
        M = Comodule(H, coaction)
        self.assertEqual(M.check_axioms(), [])
        expected = linalg.matrix(ring.field, [[3], [1]])
        self.assertTrue(lattice_equal(ring, fixed_points(M), expected))
        self.assertTrue(lattice_equal(ring, fixed_points(M, integrals(H).theta_dual), expected))

    def test_hom_identity(self):
        regular = dual_regular_comodule(self.mu)
        self.assertTrue(hom_fixed_check(regular, regular))
        self.assertTrue(hom_fixed_check(self.V, self.V))
        self.assertTrue(hom_fixed_check(trivial_comodule(self.mu, 2), regular))


class TestRandomModules(unittest.TestCase):

    def helper_random(self, H, seed):
        rng = random.Random(seed)
        data = integrals(H)
        regular = dual_regular_comodule(H)
        for _ in range(3):
            copies = rng.randint(1, 2)
            module = random_free_module(regular, copies, rng)
            self.assertEqual(module.check_axioms(), [])
            self.assertTrue(hom_fixed_check(regular, module))
            self.assertEqual(fixed_points(module, data.theta_dual).shape[1], copies)
            self.assertTrue(coinvariants(module, data.theta_dual).is_isomorphism())

    def test_mu_5(self):
        self.helper_random(build_mu_n(5, cyclotomic_ring(5, [2, 3])), 1)

    def test_constant(self):
        self.helper_random(build_constant(cyclic_group(5), RingSpec.over_field(NumberField.rationals())), 2)


if __name__ == '__main__':
    unittest.main()
