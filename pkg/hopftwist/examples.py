"""Constructions of the standard Hopf algebras, bundles and torsors, and the example suites.

Each suite returns a CheckReport. Expected values carry a provenance tag:
'published' for values quoted from the literature, 'trivial' for values that
follow directly from the definitions and 'derived' for values obtained by an
independent hand computation.
"""
import itertools
import json
import os
import random
from collections import OrderedDict

import numpy as np
from sympy import legendre_symbol, primefactors

from . import linalg
from .algebra import FiniteAlgebra
from .common import CheckReport
from .comodule import (Comodule, ModuleAction, from_module, fixed_points, coinvariants, dual_regular_comodule,
                       trivial_comodule, lattice_equal, hom_fixed_check)
from .errors import BadGroupTable, NotAUnit, NotCommutative, SchemaError, HopfTwistError, MathematicalError
from .hopf import (HopfAlgebra, validate_hopf, dual, integrals, check_H1, check_H2, is_unimodular,
                   antipode_on_integrals, counit_product_check, theta_pairing_check, is_larson_sweedler_iso,
                   h2_integrals)
from .parsers import bundle_document, comodule_document, encode_element, hopf_document, phs_document
from .phs import (PHS, is_phs, codifferent, trace_bundle, unit_form, twist, regular_phs, check_trivial_twist,
                  scalar_extension_integrals_check, trace_identity_check)
from .ring import NumberField, RingSpec, PrincipalIdeal
from .symbundle import (SymBundle, is_equivariant, fixed_form, verify_isometry, discriminant, restriction_check,
                        decide_isometry_Q, rational_invariants)


# Groups

def cyclic_group(n):
    return [[(a + b) % n for b in range(n)] for a in range(n)]


def symmetric_group_3():
    """Cayley table of S_3 on the permutations of (0, 1, 2) in lexicographic order."""
    elements = list(itertools.permutations(range(3)))
    index = {p: i for i, p in enumerate(elements)}
    return [[index[tuple(p[q[k]] for k in range(3))] for q in elements] for p in elements]


def _check_group(table):
    n = len(table)
    if n == 0 or any(len(row) != n for row in table):
        raise BadGroupTable('Cayley table must be square and non-empty')
    if any(not isinstance(x, int) or not 0 <= x < n for row in table for x in row):
        raise BadGroupTable('Cayley table entries must be element indices 0..{}'.format(n - 1))
    identity = next((e for e in range(n) if all(table[e][g] == g and table[g][e] == g for g in range(n))), None)
    if identity is None:
        raise BadGroupTable('Cayley table has no identity element')
    inverses = []
    for g in range(n):
        inverse = next((h for h in range(n) if table[g][h] == identity), None)
        if inverse is None or table[inverse][g] != identity:
            raise BadGroupTable('Element {} has no inverse'.format(g))
        inverses.append(inverse)
    for a, b, c in itertools.product(range(n), repeat=3):
        if table[table[a][b]][c] != table[a][table[b][c]]:
            raise BadGroupTable('Cayley table is not associative at ({}, {}, {})'.format(a, b, c))
    return identity, inverses


def build_group_algebra(table, ring):
    """R[G]: basis the group elements, Delta(g) = g (x) g."""
    identity, inverses = _check_group(table)
    n = len(table)
    field = ring.field
    alg = FiniteAlgebra.from_table(ring, n, lambda a, b: [int(table[a][b] == k) for k in range(n)],
                                   [int(k == identity) for k in range(n)])
    comult = linalg.zeros(field, (n, n, n))
    antipode = linalg.zeros(field, (n, n))
    for g in range(n):
        comult[g, g, g] = field.one
        antipode[inverses[g], g] = field.one
    return HopfAlgebra(alg, comult, [1] * n, antipode)


def build_constant(table, ring):
    """Map(G, R): basis the indicator functions, the dual of R[G]."""
    return dual(build_group_algebra(table, ring))


# mu_n and the Kummer torsors

def build_mu_n(n, ring):
    """R[t]/(t^n - 1) with t group-like."""
    if n < 2:
        raise SchemaError('mu_n needs n >= 2, got {}'.format(n))
    field = ring.field
    alg = FiniteAlgebra.trivial(ring).adjoin_root([1], n)
    comult = linalg.zeros(field, (n, n, n))
    antipode = linalg.zeros(field, (n, n))
    for k in range(n):
        comult[k, k, k] = field.one
        antipode[(-k) % n, k] = field.one
    return HopfAlgebra(alg, comult, [1] * n, antipode)


def build_v_form(A):
    """The plane with q(e1, e2) = 1/2, coaction e1 -> e1 (x) t and e2 -> e2 (x) t^(n-1)."""
    n = A.rank
    coaction = linalg.zeros(A.field, (2, 2, n))
    coaction[0, 0, 1 % n] = A.field.one
    coaction[1, 1, (n - 1) % n] = A.field.one
    half = A.field.convert(1) / 2
    return SymBundle(linalg.matrix(A.field, [[0, half], [half, 0]]), module=Comodule(A, coaction))


def v_form_diagonalization(field, i):
    """e1 = eps1 + eps2, e2 = i (eps1 - eps2): takes the V-form to x^2 + y^2."""
    i = field.convert(i)
    if i * i != -1:
        raise SchemaError('{} is not a square root of -1'.format(i))
    return linalg.matrix(field, [[1, i], [1, -i]])


def build_kummer_torsor(A, y):
    """B_y = R[X]/(X^p - y) with alpha(x^k) = x^k (x) t^k."""
    ring, p = A.base, A.rank
    y = ring.field.convert(y)
    if not y or not ring.is_unit(y):
        raise NotAUnit('Kummer parameter {} is not a unit of R'.format(y))
    alg = FiniteAlgebra.trivial(ring).adjoin_root([y], p)
    coaction = linalg.zeros(ring.field, (p, p, p))
    for k in range(p):
        coaction[k, k, k] = ring.field.one
    return PHS(alg, Comodule(A, coaction))


def build_galois_kummer_torsor(A, y, zeta):
    """B_y = R[X]/(X^n - y) as a Map(C_n, R)-comodule: g acts by x -> zeta^g x."""
    ring, n = A.base, A.rank
    y, zeta = ring.field.convert(y), ring.field.convert(zeta)
    if not y or not ring.is_unit(y):
        raise NotAUnit('Kummer parameter {} is not a unit of R'.format(y))
    if zeta ** n != 1 or any(zeta ** k == 1 for k in range(1, n)):
        raise SchemaError('{} is not a primitive {}-th root of unity'.format(zeta, n))
    alg = FiniteAlgebra.trivial(ring).adjoin_root([y], n)
    coaction = linalg.zeros(ring.field, (n, n, n))
    for k, g in itertools.product(range(n), repeat=2):
        coaction[k, k, g] = zeta ** (g * k)
    return PHS(alg, Comodule(A, coaction))


def gauss_sum(field, p):
    """sum_k (k/p) z^k in Q(zeta_p); its square is +-p."""
    return field.element([0] + [legendre_symbol(k, p) for k in range(1, p)])


def cyclotomic_ring(n, inverted_primes):
    return RingSpec(NumberField.cyclotomic(n), inverted_primes=inverted_primes)


# Dihedral orders

class DihedralData(object):
    """Objects of the dihedral construction of order 2n."""

    def __init__(self, **kwargs):
        self.__dict__.update(kwargs)


def _dihedral_index(n, k, twisted):
    return (k % n) + (n if twisted else 0)


def build_dihedral_order(n, ring):
    """The order H spanned by the idempotents e_k of the cyclic part and e_k tau.

    Relations: e_a e_b = delta_ab e_a, tau e_k = e_{-k} tau and tau^2 = 1.
    """
    field = ring.field
    size = 2 * n

    def products(i, j):
        a, s = i % n, i // n
        b, t = j % n, j // n
        coords = [0] * size
        if s == 0 and t == 0 and a == b:
            coords[_dihedral_index(n, a, False)] = 1
        elif s == 0 and t == 1 and a == b:
            coords[_dihedral_index(n, a, True)] = 1
        elif s == 1 and t == 0 and a == (-b) % n:
            coords[_dihedral_index(n, a, True)] = 1
        elif s == 1 and t == 1 and a == (-b) % n:
            coords[_dihedral_index(n, a, False)] = 1
        return coords

    alg = FiniteAlgebra.from_table(ring, size, products, [1] * n + [0] * n)

    comult = linalg.zeros(field, (size, size, size))
    antipode = linalg.zeros(field, (size, size))
    counit = [0] * size
    index = _dihedral_index
    for k in range(n):
        for a in range(n):
            b = (k - a) % n
            comult[index(n, k, False), index(n, a, False), index(n, b, False)] = field.one
            comult[index(n, k, True), index(n, a, True), index(n, b, True)] = field.one
        antipode[index(n, -k, False), index(n, k, False)] = field.one
        antipode[index(n, k, True), index(n, k, True)] = field.one
    counit[index(n, 0, False)] = 1
    counit[index(n, 0, True)] = 1
    return HopfAlgebra(alg, comult, counit, antipode)


def _left_regular_restriction(H, span):
    """Action of the basis of H by left multiplication on the span of the given basis indices."""
    matrices = []
    for i in range(H.rank):
        L = H.alg.left_mult_matrix(H.alg.basis_element(i))
        matrices.append(L[np.ix_(span, span)])
    return np.array(matrices, dtype=object)


def build_dihedral(n, ring, d, beta, a, character=1, strict=True):
    """Dihedral Hopf order, its dual, the plane (M, q) and the torsor B = E[X]/(X^n - beta).

    Args:
        n: order of the rotation, n >= 3
        ring: RingSpec with 2 and n invertible
        d: delta^2, a unit of R, E = R[delta]/(delta^2 - d)
        beta: coordinates of beta = alpha^n in E (basis 1, delta)
        a: unit of R with beta tau(beta) = a^n
        character: index c of the character chi, with 2c != 0 mod n
        strict: reject non-unit parameters instead of building a degenerate object

    Returns:
        DihedralData with H, A, M (SymBundle), E, B (PHS) and the parameters
    """
    field = ring.field
    if n < 3:
        raise SchemaError('Dihedral construction needs n >= 3')
    if (2 * character) % n == 0:
        raise SchemaError('Character index {} has order <= 2 modulo {}'.format(character, n))
    if not ring.is_unit_denominator(n):
        raise SchemaError('{} must be invertible in R'.format(n))
    d, a = field.convert(d), field.convert(a)
    if strict and (not d or not ring.is_unit(d)):
        raise NotAUnit('delta^2 = {} is not a unit'.format(d))
    if not a or not ring.is_unit(a):
        raise NotAUnit('a = {} is not a unit'.format(a))

    H = build_dihedral_order(n, ring)
    A = dual(H)

    # The plane M = R e_chi + R e_{-chi} tau, with H acting by left multiplication
    span = [_dihedral_index(n, character, False), _dihedral_index(n, -character, True)]
    module = from_module(ModuleAction(A, _left_regular_restriction(H, span)))
    M = SymBundle(dihedral_plane_gram(H, span), module=module)

    E = FiniteAlgebra.trivial(ring).adjoin_root([d], 2)
    beta_elem = E.element(beta)
    tau_beta = E.element([beta[0], -field.convert(beta[1])])
    if (beta_elem * tau_beta) != E.scalar(a ** n):
        raise SchemaError('beta tau(beta) != a^{}'.format(n))

    B = E.adjoin_root(beta_elem, n)
    inverse_coords = linalg.solve(field, E.left_mult_matrix(beta_elem), E.unit)
    if inverse_coords is None:
        raise NotAUnit('beta is not invertible in E')
    beta_inverse = E.element(inverse_coords)

    x = B.root()
    tau_x = B.include_base(beta_inverse) * a * x ** (n - 1)
    tau = B.endomorphism_matrix([B.one(), -B.include_base(E.root())], tau_x)

    projectors = []
    for k in range(n):
        P = linalg.zeros(field, (B.rank, B.rank))
        for i, m in itertools.product(range(2), range(n)):
            if (character * m - k) % n == 0:
                P[i * n + m, i * n + m] = field.one
        projectors.append(P)
    matrices = projectors + [linalg.dot(P, tau) for P in projectors]
    torsor = PHS(B, from_module(ModuleAction(A, np.array(matrices, dtype=object))))

    return DihedralData(n=n, ring=ring, H=H, A=A, M=M, E=E, B=torsor, d=d, beta=beta_elem, a=a,
                        character=character, tau=tau, tau_x=tau_x)


def dihedral_plane_gram(H, span):
    """q(x, y) = 1/2 tr(x tau S(y)) with tau = sum_k e_k tau and tr the regular trace of H."""
    n = H.rank // 2
    tau = linalg.vector(H.field, [0] * n + [1] * n)
    trace = H.alg.trace_vector()
    gram = linalg.zeros(H.field, (len(span), len(span)))
    for r, i in enumerate(span):
        for s, j in enumerate(span):
            x = linalg.unit_vector(H.field, H.rank, i)
            y = H.apply_antipode(linalg.unit_vector(H.field, H.rank, j))
            product = H.alg.product(H.alg.product(x, tau), y)
            gram[r, s] = linalg.dot(product, trace) / 2
    return gram


def standard_dihedral(n=3):
    """Over Z[zeta_3][1/30n]: delta^2 = zeta_3, beta = delta^n, a = -zeta_3."""
    ring = cyclotomic_ring(3, sorted({2, 3, 5} | set(primefactors(n))))
    field = ring.field
    z = field.gen
    # delta^n = d^(n/2) for n even, d^((n-1)/2) delta for n odd
    beta = [z ** (n // 2), 0] if n % 2 == 0 else [0, z ** ((n - 1) // 2)]
    return build_dihedral(n, ring, z, beta, -z)


def dihedral_twist_basis(data):
    """tau(x) (x) e_chi + x (x) e_{-chi} tau and delta tau(x) (x) e_chi - delta x (x) e_{-chi} tau."""
    B = data.B.alg
    x = B.root()
    delta = B.include_base(data.E.root())
    first = np.kron(data.tau_x.coords, [1, 0]) + np.kron(x.coords, [0, 1])
    second = np.kron((delta * data.tau_x).coords, [1, 0]) - np.kron((delta * x).coords, [0, 1])
    return np.array([first, second], dtype=object).T.copy()


# Suites

class ExampleSuite(object):
    """A named, parameterized verification.

    Args:
        name: identifier used on the command line
        description: one line summary
        defaults: default parameters; values given on the command line are cast to their type
        run: callable(**params) -> CheckReport
        expected: map from check name to (expected value, provenance tag)
    """

    def __init__(self, name, description, defaults, run, expected):
        self.name = name
        self.description = description
        self.defaults = defaults
        self.run_function = run
        self.expected = expected

    def parameters(self, overrides=None):
        params = OrderedDict(self.defaults)
        for key, value in (overrides or {}).items():
            if key not in params:
                raise SchemaError('Unknown parameter {} for suite {}'.format(key, self.name))
            params[key] = type(self.defaults[key])(value) if not isinstance(value, type(self.defaults[key])) \
                else value
        return params

    def run(self, overrides=None):
        """Run with the given overrides; a failed mathematical precondition is a failed check."""
        params = self.parameters(overrides)
        try:
            report = self.run_function(**params)
        except MathematicalError as e:
            report = CheckReport(self.name)
            report.add(type(e).__name__, False, str(e))
        report.record('parameters', dict(params))
        report.record('provenance', {k: tag for k, (_, tag) in self.expected.items()})
        return report


def _guarded(report, name, function, *args, **kwargs):
    """Run a check that may raise; a raised HopfTwistError is a failed check."""
    try:
        return report.add(name, function(*args, **kwargs))
    except HopfTwistError as e:
        return report.add(name, False, '{}: {}'.format(type(e).__name__, e))


def run_hopf_axioms(n=5):
    report = CheckReport('hopf-axioms')
    rationals = RingSpec(NumberField.rationals(), inverted_primes=[2])
    for label, table in (('C2', cyclic_group(2)), ('C5', cyclic_group(5)), ('S3', symmetric_group_3())):
        G = build_group_algebra(table, rationals)
        F = build_constant(table, rationals)
        report.add('R[{}] axioms'.format(label), validate_hopf(G).passed)
        report.add('Map({}, R) axioms'.format(label), validate_hopf(F).passed)
        report.add('Map({}, R) dual to R[{}]'.format(label, label), dual(F).same_structure(G))
    for m in (2, 3):
        report.add('mu_{} axioms'.format(m), validate_hopf(build_mu_n(m, rationals)).passed)

    ring = cyclotomic_ring(5, [2, 3])
    mu = build_mu_n(n, ring)
    report.add('mu_{} axioms'.format(n), validate_hopf(mu).passed)
    report.add('double dual of mu_{}'.format(n), dual(dual(mu)).same_structure(mu))

    corrupted = HopfAlgebra(mu.alg, mu.comult, mu.counit, linalg.identity(mu.field, n))
    failed = [c['name'] for c in validate_hopf(corrupted).failures()]
    report.add('corrupted antipode flagged', failed == ['antipode law'], ', '.join(failed))

    dihedral = standard_dihedral(3)
    report.add('dihedral order axioms', validate_hopf(dihedral.H).passed)
    return report


def run_integrals(p=5):
    report = CheckReport('integrals')
    field_q = RingSpec.over_field(NumberField.rationals())
    table = cyclic_group(p)
    cases = [('Q[C{}]'.format(p), build_group_algebra(table, field_q), [1] * p),
             ('Map(C{}, Q)'.format(p), build_constant(table, field_q), [1] + [0] * (p - 1))]
    ring = cyclotomic_ring(p, [2, 3])
    mu = build_mu_n(p, ring)
    cases.append(('mu_{}'.format(p), mu, [1] * p))

    for label, H, expected in cases:
        data = integrals(H)
        report.add('I({})'.format(label), list(data.theta) == list(linalg.vector(H.field, expected)))
        report.add('{} unimodular, S = +1 on integrals'.format(label),
                   is_unimodular(H) and antipode_on_integrals(H) == 1)
        report.add('{} satisfies H1'.format(label), check_H1(H))
        report.add('{} counit product = rank'.format(label), counit_product_check(H, data))
        report.add('{} theta pairings'.format(label), theta_pairing_check(H, data))
        report.add('{} u -> u theta invertible'.format(label), is_larson_sweedler_iso(H, data))

    h2 = check_H2(mu, gauss_sum(mu.field, p))
    report.add('Lambda = {}R for mu_{}'.format(p, p), h2.lambda_.generator == p)

    dihedral = standard_dihedral(3)
    theta_H = integrals(dihedral.H).theta
    n = dihedral.n
    report.add('I(H) = R (e_0 + e_0 tau)', list(theta_H) == list(
        linalg.vector(dihedral.H.field, [1] + [0] * (n - 1) + [1] + [0] * (n - 1))))
    theta_A = integrals(dihedral.A).theta
    report.add('I(A) = R sum l_k', list(theta_A) == list(linalg.vector(dihedral.H.field, [1] * n + [0] * n)))
    report.add('dihedral counit product = 2n',
               dihedral.H.counit_of(theta_H) * dihedral.A.counit_of(theta_A) == 2 * n)
    report.add('dihedral A satisfies H1', check_H1(dihedral.A))
    report.record('theta_H', theta_H)
    report.record('theta_A', theta_A)
    return report


def verify_unit_form(A, B, sqrt_witness, unit=None):
    """The unit form on the dual, its fixed form, and its twist by B against the trace bundle of B."""
    report = CheckReport('unit-form')
    kappa = unit_form(A, sqrt_witness)
    data = h2_integrals(A, sqrt_witness)
    report.add('kappa symmetric', kappa.is_symmetric())
    report.add('kappa equivariant', is_equivariant(kappa))
    report.add('kappa perfect', kappa.is_perfect())

    fixed = fixed_form(kappa, data.theta_dual)
    report.add('fixed form is <1>', list(fixed.gram.reshape(-1)) == [A.field.one])
    report.add('restriction is eps(theta_dual) q^A', restriction_check(kappa, fixed, data.theta_dual))

    result = twist(kappa, B, sqrt_witness)
    trace = trace_bundle(B, sqrt_witness)
    action = result.tensor.act(data.theta_dual)
    images = linalg.dot(action, np.kron(linalg.identity(A.field, B.alg.rank), A.counit.reshape(A.rank, 1)))
    witness = linalg.solve_columns(A.field, result.basis, images)
    report.add('twist of kappa is the trace bundle', witness is not None and
               verify_isometry(witness, result.bundle, trace))

    if unit is not None:
        unit = A.field.convert(unit)
        rescaled = unit_form(A, A.field.convert(sqrt_witness) * unit)
        report.add('witness change rescales kappa by a unit square',
                   verify_isometry(linalg.scale(linalg.identity(A.field, A.rank), unit), kappa, rescaled))

    report.record('kappa', kappa.gram)
    report.record('twisted gram', result.gram)
    return report


def run_unit_form(p=5, y=2):
    report = CheckReport('unit-form')
    field_q = RingSpec.over_field(NumberField.rationals())
    constant = build_constant(cyclic_group(p), field_q)
    kappa = unit_form(constant)
    report.add('Map(C{}) unit form orthonormal'.format(p),
               list(kappa.gram.reshape(-1)) == list(linalg.identity(constant.field, p).reshape(-1)))
    report.extend(verify_unit_form(constant, regular_phs(constant), 1, unit=2), 'Map(C{}) trivial torsor'.format(p))

    ring = cyclotomic_ring(p, [2, 3])
    mu = build_mu_n(p, ring)
    torsor = build_kummer_torsor(mu, y)
    report.extend(verify_unit_form(mu, torsor, gauss_sum(mu.field, p)), 'mu_{} and B_{}'.format(p, y))

    # over Q(zeta_3) the group scheme mu_3 is constant, B_y is a nontrivial C_3-torsor
    ring = cyclotomic_ring(3, [2, 3])
    mu = build_mu_n(3, ring)
    report.extend(verify_unit_form(mu, build_kummer_torsor(mu, y), gauss_sum(mu.field, 3)), 'mu_3 and B_{}'.format(y))
    constant = build_constant(cyclic_group(3), ring)
    report.extend(verify_unit_form(constant, build_galois_kummer_torsor(constant, y, ring.field.gen), 1),
                  'Map(C3) and B_{}'.format(y))

    dihedral = standard_dihedral(3)
    try:
        unit_form(dihedral.H)
        report.add('noncommutative H rejected', False)
    except NotCommutative:
        report.add('noncommutative H rejected', True)
    return report


def verify_kummer_twist(p=5, y=2):
    """Twist of the V-form by B_y: Gram s [[0, y/2], [y/2, 0]] and isometry diag(1, 1/(s y)), s = p / g^2."""
    report = CheckReport('kummer-twist')
    ring = cyclotomic_ring(p, [2, 3])
    field = ring.field
    A = build_mu_n(p, ring)
    V = build_v_form(A)
    B = build_kummer_torsor(A, y)
    witness = gauss_sum(field, p)
    y = field.convert(y)

    report.add('V-form equivariant', is_equivariant(V))
    report.extend(is_phs(B), 'B_y')
    report.add('codifferent is 1/p', codifferent(B).same_ideal(PrincipalIdeal(ring, field.convert(1) / p)))
    report.add('trace identity', trace_identity_check(B))
    report.add('scalar extension of integrals', scalar_extension_integrals_check(B))

    result = twist(V, B, witness)
    report.add('twist rank', result.gram.shape == (2, 2))

    # x^(p-1) (x) eps1 and x (x) eps2
    expected = linalg.zeros(field, (2 * p, 2))
    expected[2 * (p - 1), 0] = field.one
    expected[2 * 1 + 1, 1] = field.one
    report.add('fixed basis', lattice_equal(ring, result.basis, expected))

    change = linalg.solve_columns(field, result.basis, expected)
    gram = linalg.dot(change.T, linalg.dot(result.gram, change))
    scale = field.convert(p) / (witness * witness)
    half = y * scale / 2
    report.add('twisted gram', list(gram.reshape(-1)) == [0, half, half, 0])

    # p / g^2 is -1 for p = 3 mod 4
    twisted = SymBundle(gram, ring=ring)
    isometry = linalg.matrix(field, [[1, 0], [0, (scale * y).inverse()]])
    report.add('isometric to V', verify_isometry(isometry, twisted, V), 'diag(1, 1/({} y))'.format(scale))
    report.record('twisted gram', gram)
    report.record('gauss sum scale', scale)
    return report


def verify_dihedral_twist(n=3):
    """Twist of the dihedral plane by B: Gram diag(2a, -2a delta^2)."""
    report = CheckReport('dihedral-twist')
    data = standard_dihedral(n)
    field, ring = data.ring.field, data.ring
    a, d = data.a, data.d

    report.add('H axioms', validate_hopf(data.H).passed)
    report.add('A axioms', validate_hopf(data.A).passed)
    report.add('(M, q) equivariant', is_equivariant(data.M))
    report.add('(M, q) gram', list(data.M.gram.reshape(-1)) == [0, 1, 1, 0])
    report.add('(M, q) discriminant -1', discriminant(data.M) == -1)
    report.extend(is_phs(data.B), 'B')

    # e_0 projects onto the rotation invariants
    report.add('E is the rotation-fixed subalgebra', linalg.rank(data.B.comodule.coaction[:, :, 0]) == 2)

    degenerate = build_dihedral(n, ring, 0, [1, 0], 1, strict=False)
    report.add('degenerate E flagged', not is_phs(degenerate.B).passed, 'delta^2 = 0')

    _guarded(report, 'codifferent is 1/n', lambda: codifferent(data.B).same_ideal(
        PrincipalIdeal(ring, field.convert(1) / n)))
    report.add('trace identity', trace_identity_check(data.B))
    report.add('scalar extension of integrals', scalar_extension_integrals_check(data.B))

    result = twist(data.M, data.B, 1)
    expected = dihedral_twist_basis(data)
    report.add('fixed basis', lattice_equal(ring, result.basis, expected))
    change = linalg.solve_columns(field, result.basis, expected)
    gram = linalg.dot(change.T, linalg.dot(result.gram, change))
    report.add('twisted gram', list(gram.reshape(-1)) == [2 * a, 0, 0, -2 * a * d])

    tensor_gram = np.kron(trace_bundle(data.B, 1).gram, data.M.gram)
    scaled = linalg.scale(linalg.dot(expected.T, linalg.dot(tensor_gram, expected)), field.convert(1) / (2 * n))
    report.add('q~ = (Tr (x) q) / 2n on the basis', list(scaled.reshape(-1)) == list(gram.reshape(-1)))
    report.add('discriminant -delta^2 up to squares',
               discriminant(SymBundle(gram, ring=ring), squares=[2 * a]) == -d)
    report.record('twisted gram', gram)
    return report


def run_trivial_twist(p=5):
    report = CheckReport('trivial-twist')
    ring = cyclotomic_ring(p, [2, 3])
    A = build_mu_n(p, ring)
    report.extend(check_trivial_twist(build_v_form(A), gauss_sum(A.field, p)), 'V-form')

    field_q = RingSpec.over_field(NumberField.rationals())
    constant = build_constant(cyclic_group(p), field_q)
    report.extend(check_trivial_twist(unit_form(constant), 1), 'Map(C{}) unit form'.format(p))
    return report


def run_fixed_points(p=5, samples=10, seed=0):
    """Fixed points by kernel and by theta_dual, coinvariants and Hom identity on random free modules."""
    report = CheckReport('fixed-points')
    rng = random.Random(seed)
    ring = cyclotomic_ring(p, [2, 3])
    field_q = RingSpec.over_field(NumberField.rationals())
    for H in (build_mu_n(p, ring), build_constant(cyclic_group(p), field_q)):
        data = integrals(H)
        regular = dual_regular_comodule(H)
        for sample in range(samples):
            rank = rng.randint(1, 3)
            module = random_free_module(regular, rank, rng)
            label = '{} sample {}'.format(H.rank, sample)
            report.add('{} kernel = theta_dual image'.format(label),
                       fixed_points(module, data.theta_dual).shape[1] == rank)
            report.add('{} coinvariants'.format(label), coinvariants(module, data.theta_dual).is_isomorphism())
            report.add('{} Hom identity'.format(label), hom_fixed_check(regular, module))
        report.add('Hom identity', hom_fixed_check(regular, regular))
        report.add('Hom identity, trivial', hom_fixed_check(trivial_comodule(H, 2), trivial_comodule(H, 1)))
    return report


def random_free_module(regular, copies, rng):
    """A free module of the given rank over the dual, presented in a random unimodular basis."""
    H = regular.hopf
    n = H.rank
    size = n * copies
    field = H.field
    action = linalg.zeros(field, (n, size, size))
    for i in range(n):
        for c in range(copies):
            block = slice(c * n, (c + 1) * n)
            action[i, block, block] = regular.coaction[:, :, i]
    change = linalg.identity(field, size)
    for _ in range(size):
        i, j = rng.sample(range(size), 2) if size > 1 else (0, 0)
        if i != j:
            change[:, j] = change[:, j] + change[:, i] * rng.randint(-2, 2)
    inverse = linalg.inverse(field, change)
    matrices = np.array([linalg.dot(inverse, linalg.dot(action[i], change)) for i in range(n)], dtype=object)
    return from_module(ModuleAction(H, matrices))


def run_rational_invariants(samples=50, seed=0):
    """Isometry decisions over Q against explicit witnesses and random congruent pairs."""
    report = CheckReport('rational-invariants')
    ring = RingSpec.over_field(NumberField.rationals())
    field = ring.field
    half = field.convert(1) / 2

    def form(rows):
        return SymBundle(linalg.matrix(field, rows), ring=ring)

    identity, double = form([[1, 0], [0, 1]]), form([[2, 0], [0, 2]])
    split, hyperbolic = form([[1, 0], [0, -1]]), form([[0, 1], [1, 0]])
    report.add('diag(1, 1) ~ diag(2, 2) by witness', verify_isometry(linalg.matrix(field, [[1, 1], [1, -1]]),
                                                                    identity, double))
    report.add('diag(1, -1) ~ hyperbolic by witness',
               verify_isometry(linalg.matrix(field, [[1, half], [1, -half]]), split, hyperbolic))
    report.add('identity is no witness for diag(1, 1) ~ diag(1, -1)',
               not verify_isometry(linalg.identity(field, 2), identity, split))
    report.add('diag(1, 1) ~ diag(2, 2) decided', decide_isometry_Q(identity, double))
    report.add('diag(1, 1) !~ diag(1, -1) decided', not decide_isometry_Q(identity, split))
    report.add('diag(1, -2) !~ diag(1, 2) decided', not decide_isometry_Q(form([[1, 0], [0, -2]]),
                                                                          form([[1, 0], [0, 2]])))

    rng = random.Random(seed)
    agreed, product_formula = 0, 0
    for _ in range(samples):
        size = rng.randint(1, 4)
        gram = linalg.zeros(field, (size, size))
        for i in range(size):
            gram[i, i] = field.convert(rng.choice([-1, 1]) * rng.randint(1, 12))
        while True:
            P = linalg.matrix(field, [[rng.randint(-3, 3) for _ in range(size)] for _ in range(size)])
            if linalg.det(field, P):
                break
        first = SymBundle(gram, ring=ring)
        second = SymBundle(linalg.dot(P.T, linalg.dot(gram, P)), ring=ring)
        agreed += verify_isometry(P, first, second) and decide_isometry_Q(first, second)
        product_formula += rational_invariants(first).product_formula() and \
            rational_invariants(second).product_formula()
    report.add('random congruent pairs decided isometric', agreed == samples, '{}/{}'.format(agreed, samples))
    report.add('Hasse product formula', product_formula == samples, '{}/{}'.format(product_formula, samples))
    return report


SUITES = OrderedDict((suite.name, suite) for suite in [
    ExampleSuite('hopf-axioms', 'Hopf axioms for group, constant, mu_n and dihedral orders', {'n': 5},
                 run_hopf_axioms, {'corrupted antipode flagged': ('antipode law', 'trivial'),
                                   'dihedral order axioms': ('pass', 'published')}),
    ExampleSuite('integrals', 'Integrals, H1 and the counit product', {'p': 5}, run_integrals,
                 {'I(mu_5)': ('1 + t + ... + t^4', 'published'),
                  'I(H) = R (e_0 + e_0 tau)': ('2R e_D', 'published'),
                  'Lambda = 5R for mu_5': ('5R', 'published')}),
    ExampleSuite('fixed-points', 'Fixed points, coinvariants and Hom on random free modules',
                 {'p': 5, 'samples': 10, 'seed': 0}, run_fixed_points,
                 {'kernel = theta_dual image': ('rank', 'derived')}),
    ExampleSuite('rational-invariants', 'Rational isometry decisions against witnesses',
                 {'samples': 50, 'seed': 0}, run_rational_invariants,
                 {'diag(1, 1) ~ diag(2, 2) decided': ('isometric', 'trivial'),
                  'diag(1, -2) !~ diag(1, 2) decided': ('not isometric', 'derived')}),
    ExampleSuite('unit-form', 'Unit form, its fixed form and its twists', {'p': 5, 'y': 2}, run_unit_form,
                 {'Map(C5) unit form orthonormal': ('identity', 'published'),
                  'fixed form is <1>': ('[[1]]', 'published')}),
    ExampleSuite('trivial-twist', 'Twisting by the trivial torsor', {'p': 5}, run_trivial_twist,
                 {'isometry': ('exact', 'published')}),
    ExampleSuite('kummer-twist', 'Twist of the V-form by a Kummer torsor', {'p': 5, 'y': 2}, verify_kummer_twist,
                 {'twisted gram': ('[[0, y/2], [y/2, 0]]', 'published'),
                  'isometric to V': ('diag(1, 1/y)', 'published')}),
    ExampleSuite('dihedral-twist', 'Twist of the dihedral plane', {'n': 3}, verify_dihedral_twist,
                 {'twisted gram': ('diag(2a, -2a delta^2)', 'published'),
                  '(M, q) discriminant -1': ('-1', 'published')}),
])


def get_suite(name):
    if name not in SUITES:
        raise SchemaError('Unknown example suite {}; choose from {}'.format(name, ', '.join(SUITES)))
    return SUITES[name]


def export_documents(directory, p=5, y=2):
    """Write mu_p, the V-form, B_y, a corrupted mu_p and a manifest running the twist pipeline.

    Returns:
        map from document name to the path written
    """
    ring = cyclotomic_ring(p, [2, 3])
    mu = build_mu_n(p, ring)
    hopf_name = 'mu{}.json'.format(p)
    documents = OrderedDict()

    documents[hopf_name] = hopf_document(mu)
    documents[hopf_name]['ring']['constants'] = {'sqrt{}'.format(p): encode_element(gauss_sum(mu.field, p))}
    V = build_v_form(mu)
    documents['v.json'] = bundle_document(V, module_ref=comodule_document(V.module, hopf_ref=hopf_name))
    documents['by{}.json'.format(y)] = phs_document(build_kummer_torsor(mu, y), hopf_ref=hopf_name)

    corrupted = HopfAlgebra(mu.alg, mu.comult, mu.counit, linalg.identity(mu.field, p))
    documents['corrupted.json'] = hopf_document(corrupted)

    sqrt = 'sqrt{}'.format(p)
    documents['manifest.json'] = {
        'type': 'manifest',
        'version': '1',
        'objects': {'mu': hopf_name, 'v': 'v.json', 'torsor': 'by{}.json'.format(y)},
        'commands': [
            ['hopf', 'validate', 'mu'],
            ['hopf', 'integrals', 'mu'],
            ['hopf', 'check-h2', 'mu', '--sqrt', sqrt],
            ['twist', '--hopf', 'mu', '--phs', 'torsor', '--bundle', 'v', '--sqrt', sqrt],
        ],
    }

    if not os.path.isdir(directory):
        os.makedirs(directory)
    paths = OrderedDict()
    for name, document in documents.items():
        paths[name] = os.path.join(directory, name)
        with open(paths[name], 'w') as outfile:
            json.dump(document, outfile, sort_keys=True, indent=2)
            outfile.write('\n')
    return paths
