"""Principal homogeneous spaces, trace bundles and the algebraic twist."""
import logging

import numpy as np

from . import linalg
from .algebra import tensor_product
from .common import CheckReport
from .comodule import (regular_comodule, dual_regular_comodule, tensor_diagonal, fixed_points, free_generators,
                       lattice_contains, lattice_equal)
from .errors import (DimensionMismatch, DualLatticeMismatch, H1Failure, H2Failure, NoFreeGenerator,
                     KernelRankError, NotCommutative, NotASquare, NotSeparable, LatticeNotFree)
from .hopf import integrals, h2_integrals, dual, check_H2
from .ring import PrincipalIdeal
from .symbundle import SymBundle, fixed_form, verify_isometry

logger = logging.getLogger(__name__)


class PHS(object):
    """A commutative algebra B with a coaction of A that makes it a torsor.

    Args:
        alg: FiniteAlgebra B
        comodule: Comodule on the basis of B
    """

    def __init__(self, alg, comodule):
        if alg.rank != comodule.rank:
            raise DimensionMismatch('Algebra of rank {} with a coaction of rank {}'.format(alg.rank, comodule.rank))
        self.alg = alg
        self.comodule = comodule
        self.hopf = comodule.hopf

    def __repr__(self):
        return 'PHS(rank={}, hopf={})'.format(self.alg.rank, self.hopf)


class TwistResult(object):
    """The twisted bundle, its basis in the tensor lattice and the integrals used."""

    def __init__(self, bundle, basis, theta, theta_dual, lambda_sqrt, tensor=None):
        self.bundle = bundle
        self.basis = basis
        self.gram = bundle.gram
        self.theta = theta
        self.theta_dual = theta_dual
        self.lambda_sqrt = lambda_sqrt
        self.tensor = tensor

    def to_json(self):
        return {
            'basis': [[x.to_json() for x in column] for column in self.basis.T],
            'gram': [[x.to_json() for x in row] for row in self.gram],
            'theta': [x.to_json() for x in self.theta],
            'theta_dual': [x.to_json() for x in self.theta_dual],
            'lambda_sqrt': self.lambda_sqrt.to_json(),
        }


def regular_phs(H):
    """The trivial torsor: A coacting on itself through the comultiplication."""
    return PHS(H.alg, regular_comodule(H))


def is_phs(P):
    """Check that the coaction is an algebra map, B^A = R and B (x) B -> B (x) A is invertible."""
    report = CheckReport('phs')
    B, M, H = P.alg, P.comodule, P.hopf
    C = M.coaction

    report.add('commutative', B.is_commutative())
    failures = M.check_axioms()
    report.add('comodule axioms', not failures, '; '.join(detail for _, detail in failures))

    multiplicative = True
    for i in range(B.rank):
        for j in range(B.rank):
            lhs = np.tensordot(B.mult[i, j, :], C, axes=([0], [1]))
            if list(lhs.reshape(-1)) != list(tensor_product(C[:, i, :], C[:, j, :], B.mult, H.alg.mult).reshape(-1)):
                multiplicative = False
                break
        if not multiplicative:
            break
    unital = list(np.tensordot(C, B.unit, axes=([1], [0])).reshape(-1)) == \
        list(np.multiply.outer(B.unit, H.alg.unit).reshape(-1))
    report.add('coaction is an algebra map', multiplicative and unital)

    try:
        fixed = fixed_points(M)
        trivial = lattice_equal(H.base, fixed, B.unit.reshape(B.rank, 1))
    except LatticeNotFree as e:
        trivial = False
        report.record('fixed points error', str(e))
    report.add('fixed points are R', trivial, 'B^A = R 1_B')

    report.add('torsor map invertible', B.rank == H.rank and linalg.is_invertible_over(H.base, torsor_matrix(P)),
               '(id (x) 1, alpha): B (x) B -> B (x) A')
    return report


def torsor_matrix(P):
    """Matrix of b (x) b' -> (b (x) 1) alpha(b'), basis e_s (x) h_l at index s * rank(A) + l."""
    B, C = P.alg, P.comodule.coaction
    full = np.tensordot(B.mult, C, axes=([1], [0])).transpose(1, 3, 0, 2)
    return full.reshape(B.rank * P.hopf.rank, B.rank * B.rank).copy()


def _integral_data(H):
    try:
        return integrals(H)
    except (NoFreeGenerator, KernelRankError) as e:
        raise H1Failure(str(e))


def codifferent(P, data=None):
    """Lambda^-1 with Lambda = eps(theta) R, checked against the trace dual lattice of B.

    Returns:
        PrincipalIdeal generated by Lambda^-1
    """
    H, B = P.hopf, P.alg
    if not H.alg.is_commutative():
        raise NotCommutative('Codifferent needs a commutative Hopf algebra')
    if not H.alg.is_separable():
        raise NotSeparable('Trace form of A_K is degenerate')
    data = data or _integral_data(H)
    lam = H.counit_of(data.theta)

    dual_basis = linalg.inverse(H.field, B.trace_form())
    if not linalg.is_invertible_over(H.base, linalg.scale(dual_basis, lam)):
        raise DualLatticeMismatch('Trace dual of B is not {}^-1 B'.format(lam))
    return PrincipalIdeal(H.base, lam.inverse())


def trace_bundle(P, sqrt_witness):
    """The trace form on the lattice mu^-1 B, with mu^2 generating eps(I(A))."""
    try:
        check_H2(P.hopf, sqrt_witness)
    except (NotASquare, NotCommutative, NotSeparable) as e:
        raise H2Failure(str(e))
    mu = P.hopf.field.convert(sqrt_witness)
    return SymBundle(P.alg.trace_gram(mu.inverse()), module=P.comodule)


def unit_form(H, sqrt_witness=None, theta=None):
    """kappa(u, v) = <S(u) v, theta> on the dual algebra, as a bundle over A.

    With a square-root witness theta is the normalized integral lambda e.
    """
    if not H.alg.is_commutative():
        raise NotCommutative('The unit form needs a commutative Hopf algebra')
    if theta is None:
        try:
            theta = h2_integrals(H, sqrt_witness).theta if sqrt_witness is not None else integrals(H).theta
        except (NoFreeGenerator, KernelRankError) as e:
            raise H1Failure(str(e))

    D = dual(H)
    n = H.rank
    gram = linalg.zeros(H.field, (n, n))
    for a in range(n):
        for b in range(n):
            gram[a, b] = linalg.dot(D.alg.product(H.antipode[a, :], linalg.unit_vector(H.field, n, b)), theta)
    return SymBundle(gram, module=dual_regular_comodule(H))


def twist(b, P, sqrt_witness, attempts=200, seed=0):
    """(mu^-1 B (x) M, Tr (x) q)^A for an equivariant bundle (M, q) and a torsor B.

    Returns:
        TwistResult
    """
    H = P.hopf
    if b.module is None or not b.module.hopf.same_structure(H):
        raise DimensionMismatch('Bundle and torsor are over different Hopf algebras')
    data = h2_integrals(H, sqrt_witness)
    trace = trace_bundle(P, sqrt_witness)

    tensor = tensor_diagonal(trace.module, b.module)
    gram = np.kron(trace.gram, b.gram)

    generators, _ = free_generators(P.comodule, attempts=attempts, seed=seed)
    logger.debug('Torsor generators %s', generators)
    hints = [np.kron(g, linalg.unit_vector(H.field, b.rank, k)) for g in generators for k in range(b.rank)]
    fixed = fixed_form(SymBundle(gram, module=tensor), data.theta_dual, hints=hints, attempts=attempts, seed=seed)
    return TwistResult(fixed, fixed.basis, data.theta, data.theta_dual, H.field.convert(sqrt_witness), tensor)


def trivial_twist_isometry(b, sqrt_witness, result=None):
    """The isometry m -> theta_dual . (mu^-1 theta (x) m) from (M, q) onto its twist by A itself.

    Returns:
        (P, Q): P maps M into the twist basis, Q = mu * eps-tilde maps back
    """
    H = b.module.hopf
    result = result or twist(b, regular_phs(H), sqrt_witness)
    field, m = H.field, b.rank

    action = result.tensor.act(result.theta_dual)
    columns = np.array([linalg.dot(action, np.kron(result.theta, linalg.unit_vector(field, m, k)))
                        for k in range(m)], dtype=object).reshape(m, H.rank * m).T
    forward = linalg.solve_columns(field, result.basis, columns)
    if forward is None:
        raise H1Failure('Image of the trivial twist map leaves the fixed lattice')

    counit_tilde = np.kron(H.counit.reshape(1, H.rank), linalg.identity(field, m))
    backward = linalg.dot(counit_tilde, result.basis)
    return forward, backward


def check_trivial_twist(b, sqrt_witness):
    """Report for the trivial torsor: the twist is isometric to (M, q) through the explicit map."""
    report = CheckReport('trivial twist')
    H = b.module.hopf
    result = twist(b, regular_phs(H), sqrt_witness)
    forward, backward = trivial_twist_isometry(b, sqrt_witness, result)
    report.add('isometry', verify_isometry(forward, result.bundle, b), 'P^T q~ P = q')
    report.add('inverse', list(linalg.dot(backward, forward).reshape(-1)) ==
               list(linalg.identity(H.field, b.rank).reshape(-1)), 'mu eps~ inverts the map')
    report.record('isometry', forward)
    report.record('twisted gram', result.gram)
    return report


def scalar_extension_integrals_check(P, data=None):
    """Left integrals of B (x) A over B are B (x) I(A)."""
    H, B = P.hopf, P.alg
    data = data or _integral_data(H)
    n, m = H.rank, B.rank
    identity = linalg.identity(H.field, m * n)
    system = np.vstack([np.kron(linalg.identity(H.field, m), H.alg.left_mult_matrix(H.alg.basis_element(a))) -
                        linalg.scale(identity, H.counit[a]) for a in range(n)])
    kernel = linalg.kernel(H.field, system).T.copy()
    expected = np.kron(linalg.identity(H.field, m), data.theta.reshape(n, 1))
    if kernel.shape != expected.shape or linalg.rank(np.hstack([kernel, expected])) != kernel.shape[1]:
        return False
    if not linalg.entries_in(H.base, expected):
        return False
    saturated = kernel if H.base.is_field else linalg.saturation(H.base, kernel)
    return lattice_contains(H.base, expected, saturated)


def trace_identity_check(P, data=None):
    """The regular trace t of A acts on B as b -> Tr_B(b) 1_B."""
    H, B = P.hopf, P.alg
    trace = data.trace_functional if data is not None and data.trace_functional is not None \
        else H.alg.trace_vector()
    action = P.comodule.act(trace)
    expected = np.multiply.outer(B.unit, B.trace_vector())
    return list(action.reshape(-1)) == list(expected.reshape(-1))
