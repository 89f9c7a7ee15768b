"""Hopf structure on a finite free algebra: axioms, duality and integrals."""
import itertools
import logging

import numpy as np
from sympy import factorint
from sympy.polys.domains import QQ

from . import linalg
from .algebra import FiniteAlgebra, tensor_product
from .common import CheckReport
from .errors import (DimensionMismatch, KernelRankError, NoFreeGenerator, NotCommutative, NotSeparable,
                     NotASquare, H2Failure, SchemaError)
from .ring import PrincipalIdeal

logger = logging.getLogger(__name__)


def _same(a, b):
    return list(a.reshape(-1)) == list(b.reshape(-1))


class HopfAlgebra(object):
    """A Hopf algebra A over R, free of rank n.

    Args:
        alg: the underlying FiniteAlgebra
        comult: n x n x n tensor, Delta(e_i) = sum_jk comult[i, j, k] e_j (x) e_k
        counit: length n vector, counit[i] = eps(e_i)
        antipode: n x n matrix whose column j is S(e_j)
    """

    def __init__(self, alg, comult, counit, antipode):
        n = alg.rank
        comult = np.asarray(comult, dtype=object)
        if comult.shape == (n, n * n):
            comult = comult.reshape(n, n, n)
        antipode = np.asarray(antipode, dtype=object)
        if comult.shape != (n, n, n) or len(counit) != n or antipode.shape != (n, n):
            raise DimensionMismatch('Hopf structure does not match rank {}'.format(n))

        self.alg = alg
        self.base = alg.base
        self.field = alg.field
        self.rank = n
        self.comult = comult
        self.counit = linalg.vector(self.field, list(counit))
        self.antipode = antipode

    def counit_of(self, x):
        return linalg.dot(x, self.counit)

    def apply_antipode(self, x):
        return linalg.dot(self.antipode, x)

    def action_matrix(self, g):
        """Matrix of a -> g.a = sum a_(1) <g, a_(2)> for g in the dual algebra."""
        return np.tensordot(self.comult, g, axes=([2], [0])).T.copy()

    def same_structure(self, other):
        """Same base ring and structure tensors; objects loaded twice compare equal."""
        if self is other:
            return True
        return (self.base == other.base and self.rank == other.rank and
                all(_same(x, y) for x, y in ((self.alg.mult, other.alg.mult), (self.alg.unit, other.alg.unit),
                                             (self.comult, other.comult), (self.counit, other.counit),
                                             (self.antipode, other.antipode))))

    def __repr__(self):
        return 'HopfAlgebra(rank={}, base={})'.format(self.rank, self.base)


class IntegralData(object):
    """Integrals of a Hopf algebra together with the dual pairing data.

    theta_dual satisfies theta_dual . theta = 1_A under the regular action of the dual.
    """

    def __init__(self, side, span_K, theta=None, theta_dual=None, lambda_=None, idempotent=None,
                 trace_functional=None):
        self.side = side
        self.span_K = span_K
        self.theta = theta
        self.theta_dual = theta_dual
        self.lambda_ = lambda_
        self.idempotent = idempotent
        self.trace_functional = trace_functional

    def to_json(self):
        return {
            'side': self.side,
            'span_K': [[x.to_json() for x in row] for row in self.span_K],
            'theta': None if self.theta is None else [x.to_json() for x in self.theta],
            'theta_dual': None if self.theta_dual is None else [x.to_json() for x in self.theta_dual],
            'lambda': None if self.lambda_ is None else self.lambda_.to_json(),
        }


class H2Data(object):

    def __init__(self, lambda_, lambda_sqrt):
        self.lambda_ = lambda_
        self.lambda_sqrt = lambda_sqrt

    def to_json(self):
        return {'lambda': self.lambda_.generator.to_json(), 'lambda_sqrt': self.lambda_sqrt.generator.to_json()}


def validate_hopf(H):
    """Check every Hopf axiom on basis elements.

    Returns:
        CheckReport with one entry per axiom
    """
    report = CheckReport('hopf validate')
    A, n = H.alg, H.rank
    c, D, eps, S = A.mult, H.comult, H.counit, H.antipode
    one = linalg.identity(H.field, n)

    failures = A.check_axioms()
    for name, detail in failures:
        report.add(name, False, detail)
    if not failures:
        report.add('algebra axioms', True)

    report.add('structure in R', H.base.contains_all(D.reshape(-1)) and H.base.contains_all(eps) and
               H.base.contains_all(S.reshape(-1)), 'comultiplication, counit and antipode lie in R')

    left = np.tensordot(D, D, axes=([1], [0])).transpose(0, 2, 3, 1)
    right = np.tensordot(D, D, axes=([2], [0]))
    report.add('coassociativity', _same(left, right))

    report.add('counit law', _same(np.tensordot(D, eps, axes=([1], [0])), one) and
               _same(np.tensordot(D, eps, axes=([2], [0])), one))

    expected = np.multiply.outer(eps, A.unit)
    s_left = np.tensordot(np.tensordot(D, S, axes=([1], [1])), c, axes=([2, 1], [0, 1]))
    s_right = np.tensordot(np.tensordot(D, S, axes=([2], [1])), c, axes=([1, 2], [0, 1]))
    report.add('antipode law', _same(s_left, expected) and _same(s_right, expected), 'm(S (x) id)Delta = eta eps')

    report.add('antipode involution', _same(linalg.dot(S, S), one), 'S^2 = id')

    delta_of_product = linalg.dot(c.reshape(n * n, n), D.reshape(n, n * n)).reshape(n, n, n, n)
    multiplicative = all(_same(delta_of_product[i, j], tensor_product(D[i], D[j], c, c))
                         for i, j in itertools.product(range(n), repeat=2))
    unital = _same(np.tensordot(A.unit, D, axes=([0], [0])), np.multiply.outer(A.unit, A.unit))
    report.add('comultiplication is an algebra map', multiplicative and unital)

    eps_of_product = linalg.dot(c.reshape(n * n, n), eps).reshape(n, n)
    report.add('counit is an algebra map', _same(eps_of_product, np.multiply.outer(eps, eps)) and
               H.counit_of(A.unit) == 1)
    return report


def dual(H):
    """The dual Hopf algebra on the dual basis f_i of the basis e_i."""
    mult = H.comult.transpose(1, 2, 0).copy()
    comult = H.alg.mult.transpose(2, 0, 1).copy()
    alg = FiniteAlgebra(H.base, mult, H.counit)
    return HopfAlgebra(alg, comult, H.alg.unit, H.antipode.T.copy())


def _certify(H, theta):
    """theta_dual with theta_dual . theta = 1_A, or None when no such element exists over K."""
    return linalg.solve(H.field, larson_sweedler_matrix(H, theta), H.alg.unit)


def _rescalings(ring, theta_dual, bound):
    """Rational scales p^k, |k| <= bound, at the non-invertible primes seen in theta_dual."""
    primes = set()
    for x in theta_dual:
        for w in ring.basis_coordinates(x):
            if w:
                primes.update(p for p in factorint(int(QQ.denom(w))) if not ring.is_unit_denominator(p))
                primes.update(p for p in factorint(abs(int(QQ.numer(w)))) if not ring.is_unit_denominator(p))
    for p in sorted(primes):
        for k in range(1, bound + 1):
            yield p ** k
            yield QQ(1, p ** k)


def integrals(H, side='left', witness=None, rescale_bound=2):
    """Module of integrals I(A) = {x : a x = eps(a) x} and its free generator.

    Args:
        H: HopfAlgebra
        side: 'left' or 'right'
        witness: optional caller-supplied generator theta
        rescale_bound: largest exponent tried when rescaling at non-invertible primes

    Returns:
        IntegralData
    """
    if side not in ('left', 'right'):
        raise SchemaError('Unknown integral side: {}'.format(side))
    span_K = integrals_span(H, side)[0]

    if witness is not None:
        theta = linalg.vector(H.field, list(witness))
        if linalg.rank(np.vstack([span_K, theta])) != 1 or linalg.is_zero(theta):
            raise NoFreeGenerator('Supplied witness is not a {} integral'.format(side))
        candidates = [theta]
    else:
        theta = linalg.scale(span_K, H.field.convert(H.base.primitive_scale(span_K)))
        candidates = [theta]
        theta_dual = _certify(H, theta)
        if theta_dual is not None:
            candidates.extend(linalg.scale(theta, H.field.convert(s))
                              for s in _rescalings(H.base, theta_dual, rescale_bound))

    for theta in candidates:
        theta_dual = _certify(H, theta)
        if theta_dual is None:
            logger.debug('No dual element for candidate %s', theta)
            continue
        if H.base.contains_all(theta) and H.base.contains_all(theta_dual):
            logger.debug('%s integral generator %s', side, theta)
            return _integral_data(H, side, span_K, theta, theta_dual)

    raise NoFreeGenerator('No generator of the {} integrals with an integral dual element was found'.format(side))


def _integral_data(H, side, span_K, theta, theta_dual, lambda_=None):
    lam = H.counit_of(theta)
    idempotent = linalg.scale(theta, lam.inverse()) if lam else None
    return IntegralData(side, [span_K], theta, theta_dual,
                        lambda_=lam if lambda_ is None else lambda_, idempotent=idempotent,
                        trace_functional=H.alg.trace_vector())


def larson_sweedler_matrix(H, theta):
    """Matrix of u -> u.theta from the dual algebra to A; column k is f_k . theta."""
    return np.tensordot(theta, H.comult, axes=([0], [0]))


def is_unimodular(H):
    left = integrals_span(H, 'left')
    right = integrals_span(H, 'right')
    return _same(left, right)


def integrals_span(H, side):
    """Echelonized K-span of the integrals on one side."""
    A, n = H.alg, H.rank
    identity = linalg.identity(H.field, n)
    mult_matrix = A.left_mult_matrix if side == 'left' else A.right_mult_matrix
    system = np.vstack([mult_matrix(A.basis_element(i)) - linalg.scale(identity, H.counit[i])
                        for i in range(n)])
    span = linalg.kernel(H.field, system)
    if span.shape[0] != 1:
        raise KernelRankError('Module of {} integrals has rank {} over K, expected 1'.format(side, span.shape[0]))
    return span


def antipode_on_integrals(H):
    """The sign with S(x) = sign * x on left integrals, or None if S does not preserve them."""
    span = integrals_span(H, 'left')[0]
    image = H.apply_antipode(span)
    pivot = next(i for i, x in enumerate(span) if x)
    sign = image[pivot] / span[pivot]
    if sign not in (1, -1) or not _same(image, linalg.scale(span, sign)):
        return None
    return int(sign.to_rational())


def check_H1(H, witness=None, rescale_bound=2):
    """True iff A is unimodular with a free generator theta fixed by the antipode."""
    try:
        if not is_unimodular(H):
            return False
        data = integrals(H, witness=witness, rescale_bound=rescale_bound)
    except (KernelRankError, NoFreeGenerator):
        return False
    return _same(H.apply_antipode(data.theta), data.theta)


def check_H2(H, sqrt_witness, data=None):
    """Lambda = eps(theta) R must be the square of the principal ideal generated by the witness.

    A separable A_K forces the antipode to fix the integrals; any other sign is an H2Failure.

    Returns:
        H2Data holding Lambda and its square root
    """
    if not H.alg.is_commutative():
        raise NotCommutative('H2 needs a commutative Hopf algebra')
    if not H.alg.is_separable():
        raise NotSeparable('Trace form of A_K is degenerate')
    sign = antipode_on_integrals(H)
    if sign != 1:
        raise H2Failure('A_K is separable but the antipode acts on the integrals by {}'.format(sign))
    data = data or integrals(H)
    lam = H.counit_of(data.theta)
    witness = H.field.convert(sqrt_witness)
    if not lam or not witness or not H.base.is_square_up_to_unit(lam, witness):
        raise NotASquare('eps(theta) = {} is not {}^2 up to a unit'.format(lam, witness))
    return H2Data(PrincipalIdeal(H.base, lam), PrincipalIdeal(H.base, witness))


def h2_integrals(H, sqrt_witness):
    """Integral pair normalized through the idempotent: theta = mu^2 e, theta_dual = mu^-2 t.

    Here mu is the square-root witness, e = theta / eps(theta) and t is the regular
    trace of A seen as an element of the dual.
    """
    check_H2(H, sqrt_witness)
    mu = H.field.convert(sqrt_witness)
    base = integrals(H)
    lam = mu * mu
    idempotent = linalg.scale(base.theta, H.counit_of(base.theta).inverse())
    theta = linalg.scale(idempotent, lam)
    trace = H.alg.trace_vector()
    theta_dual = linalg.scale(trace, lam.inverse())

    if not _same(linalg.dot(larson_sweedler_matrix(H, theta), theta_dual), H.alg.unit):
        raise H2Failure('theta_dual . theta != 1 for the normalized integrals')
    if not H.base.contains_all(theta) or not H.base.contains_all(theta_dual):
        raise H2Failure('Normalized integrals are not integral for witness {}'.format(mu))
    return IntegralData('left', base.span_K, theta, theta_dual, lambda_=lam, idempotent=idempotent,
                        trace_functional=trace)


def counit_product_check(H, data=None):
    """eps(theta) eps_dual(theta_dual) = rank."""
    data = data or integrals(H)
    return H.counit_of(data.theta) * linalg.dot(data.theta_dual, H.alg.unit) == H.rank


def theta_pairing_check(H, data=None):
    """theta . theta_dual = 1 in the dual algebra, the mirror of theta_dual . theta = 1_A."""
    data = data or integrals(H)
    D = dual(H)
    return _same(linalg.dot(D.action_matrix(data.theta), data.theta_dual), D.alg.unit)


def is_larson_sweedler_iso(H, data=None):
    data = data or integrals(H)
    return linalg.is_invertible_over(H.base, larson_sweedler_matrix(H, data.theta))
