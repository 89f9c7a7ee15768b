"""Symmetric bundles: Gram matrices on comodules, fixed-point forms and invariants."""
from sympy import factorint, legendre_symbol
from sympy.polys.domains import QQ

import numpy as np

from . import linalg
from .comodule import fixed_points, free_generators
from .errors import (DimensionMismatch, NotEquivariant, SingularForm, SchemaError, LatticeNotFree,
                     H1Failure, NoFreeGenerator, KernelRankError)
from .hopf import integrals


class SymBundle(object):
    """A symmetric bilinear form on a free lattice, optionally carrying a coaction.

    Args:
        gram: m x m Gram matrix
        module: Comodule on the lattice, or None for a plain form
        ring: base RingSpec, taken from the module when omitted
        basis: ambient coordinates of the lattice basis, for forms living on a sublattice
    """

    def __init__(self, gram, module=None, ring=None, basis=None):
        if ring is None and module is None:
            raise SchemaError('A symmetric bundle needs a module or a base ring')
        self.module = module
        self.ring = ring or module.hopf.base
        self.field = self.ring.field
        self.gram = gram if isinstance(gram, np.ndarray) else linalg.matrix(self.field, gram)
        self.rank = self.gram.shape[0]
        self.basis = basis

        if self.gram.shape != (self.rank, self.rank):
            raise DimensionMismatch('Gram matrix must be square, got {}'.format(self.gram.shape))
        if module is not None and module.rank != self.rank:
            raise DimensionMismatch('Gram of size {} on a module of rank {}'.format(self.rank, module.rank))

    def is_symmetric(self):
        return list(self.gram.reshape(-1)) == list(self.gram.T.reshape(-1))

    def determinant(self):
        return linalg.det(self.field, self.gram)

    def is_perfect(self):
        """Non-degenerate over R: integral Gram with unit determinant."""
        d = self.determinant()
        if not d:
            return False
        return linalg.entries_in(self.ring, self.gram) and self.ring.is_unit(d)

    def pairing(self, x, y):
        return linalg.dot(x, linalg.dot(self.gram, y))

    def to_json(self):
        return {'rank': self.rank, 'gram': [[x.to_json() for x in row] for row in self.gram]}

    def __repr__(self):
        return 'SymBundle(rank={})'.format(self.rank)


class FormInvariants(object):
    """Invariants of a non-degenerate rational quadratic form."""

    def __init__(self, rank, det_class, signature, hasse):
        self.rank = rank
        self.det_class = det_class
        self.signature = signature
        self.hasse = hasse

    def product_formula(self):
        result = 1
        for value in self.hasse.values():
            result *= value
        return result == 1

    def to_json(self):
        return {
            'rank': self.rank,
            'det_class': self.det_class,
            'signature': list(self.signature),
            'hasse': {str(k): v for k, v in sorted(self.hasse.items(), key=lambda item: str(item[0]))},
        }


def is_equivariant(b):
    """q(g m, n) = q(m, S(g) n) for every dual basis element g."""
    M = b.module
    if M is None:
        return True
    H = M.hopf
    for i in range(H.rank):
        g = linalg.unit_vector(H.field, H.rank, i)
        lhs = linalg.dot(M.act(g).T, b.gram)
        rhs = linalg.dot(b.gram, M.act(H.antipode[i, :]))
        if list(lhs.reshape(-1)) != list(rhs.reshape(-1)):
            return False
    return True


def _theta_dual_for(M, theta_dual):
    if theta_dual is not None:
        return theta_dual
    try:
        return integrals(M.hopf).theta_dual
    except (NoFreeGenerator, KernelRankError) as e:
        raise H1Failure('No free generator of the dual integrals: {}'.format(e))


def fixed_form(b, theta_dual=None, hints=(), certify=True, attempts=200, seed=0):
    """The form q^A on the fixed lattice, q^A(x, y) = q(m, y) for any m with theta_dual . m = x.

    Args:
        b: equivariant SymBundle with a module
        theta_dual: dual integral with theta_dual . theta = 1_A; computed when omitted
        hints: candidate generators passed to the freeness certificate
        certify: require an explicit free basis of the module over the dual algebra

    Returns:
        SymBundle on the fixed lattice, with `basis` holding its ambient coordinates
    """
    M = b.module
    if not is_equivariant(b):
        raise NotEquivariant('Form is not equivariant for the coaction')
    theta_dual = _theta_dual_for(M, theta_dual)
    if certify:
        free_generators(M, hints=hints, attempts=attempts, seed=seed)

    basis = fixed_points(M, theta_dual)
    image = M.act(theta_dual)
    preimages = linalg.solve_columns(M.field, image, basis)
    if preimages is None:
        raise LatticeNotFree('Fixed lattice is not contained in the image of theta_dual')

    gram = linalg.dot(preimages.T, linalg.dot(b.gram, basis))

    # Any other preimage must give the same values
    kernel = linalg.kernel(M.field, image)
    if kernel.shape[0]:
        shift = kernel.sum(axis=0)
        alternative = preimages + np.multiply.outer(shift, np.ones(basis.shape[1], dtype=object))
        if list(linalg.dot(alternative.T, linalg.dot(b.gram, basis)).reshape(-1)) != list(gram.reshape(-1)):
            raise NotEquivariant('Fixed form depends on the chosen preimage')

    return SymBundle(gram, ring=b.ring, basis=basis)


def restriction_check(b, fixed, theta_dual):
    """q restricted to the fixed lattice equals eps(theta_dual) times q^A."""
    restricted = linalg.dot(fixed.basis.T, linalg.dot(b.gram, fixed.basis))
    factor = linalg.dot(theta_dual, b.module.hopf.alg.unit)
    return list(restricted.reshape(-1)) == list(linalg.scale(fixed.gram, factor).reshape(-1))


def verify_isometry(P, b1, b2):
    """P^T G1 P = G2 with P in GL(R)."""
    P = P if isinstance(P, np.ndarray) else linalg.matrix(b1.field, P)
    if P.shape != (b1.rank, b2.rank) or b1.rank != b2.rank:
        raise DimensionMismatch('Isometry of shape {} between ranks {} and {}'.format(P.shape, b1.rank, b2.rank))
    if not linalg.is_invertible_over(b1.ring, P):
        return False
    image = linalg.dot(P.T, linalg.dot(b1.gram, P))
    return list(image.reshape(-1)) == list(b2.gram.reshape(-1))


def diagonalize(field, gram):
    """Symmetric Gaussian elimination.

    Returns:
        (diagonal entries, P) with P^T gram P diagonal
    """
    A = np.array(gram, dtype=object)
    m = A.shape[0]
    P = linalg.identity(field, m)

    def swap(i, j):
        A[[i, j], :] = A[[j, i], :]
        A[:, [i, j]] = A[:, [j, i]]
        P[:, [i, j]] = P[:, [j, i]]

    def add(target, source, factor):
        A[:, target] = A[:, target] + A[:, source] * factor
        A[target, :] = A[target, :] + A[source, :] * factor
        P[:, target] = P[:, target] + P[:, source] * factor

    for i in range(m):
        if not A[i, i]:
            j = next((j for j in range(i + 1, m) if A[j, j]), None)
            if j is not None:
                swap(i, j)
            else:
                j = next((j for j in range(i + 1, m) if A[i, j]), None)
                if j is None:
                    continue
                add(i, j, field.one)
        pivot = A[i, i]
        for j in range(i + 1, m):
            if A[j, i]:
                add(j, i, -A[j, i] / pivot)
    return [A[i, i] for i in range(m)], P


def _squarefree(q):
    """Squarefree integer in the square class of a nonzero rational."""
    n = int(QQ.numer(q)) * int(QQ.denom(q))
    result = -1 if n < 0 else 1
    for p, e in factorint(abs(n)).items():
        if e % 2:
            result *= p
    return result


def hilbert_symbol(a, b, p):
    """Hilbert symbol (a, b)_p of nonzero rationals; p is a prime or 'inf'."""
    a, b = _squarefree(a), _squarefree(b)
    if p == 'inf':
        return -1 if a < 0 and b < 0 else 1

    alpha, u = _split(a, p)
    beta, v = _split(b, p)
    if p == 2:
        def eps(x):
            return ((x - 1) // 2) % 2

        def omega(x):
            return ((x * x - 1) // 8) % 2

        exponent = eps(u) * eps(v) + alpha * omega(v) + beta * omega(u)
        return -1 if exponent % 2 else 1

    sign = -1 if (alpha * beta * ((p - 1) // 2)) % 2 else 1
    return sign * legendre_symbol(u % p, p) ** beta * legendre_symbol(v % p, p) ** alpha


def _split(n, p):
    alpha = 0
    while n % p == 0:
        n //= p
        alpha += 1
    return alpha, n


def rational_invariants(b):
    """Rank, signature, squarefree determinant class and Hasse invariants over Q."""
    if b.field.degree != 1:
        raise SchemaError('Rational invariants need the base field Q')
    diagonal, _ = diagonalize(b.field, b.gram)
    if not all(diagonal):
        raise SingularForm('Gram matrix is singular')
    entries = [d.to_rational() for d in diagonal]

    signature = (sum(1 for d in entries if d > 0), sum(1 for d in entries if d < 0))
    det = QQ.one
    for d in entries:
        det *= d
    det_class = _squarefree(det)

    primes = {2}
    for d in entries:
        primes.update(factorint(abs(_squarefree(d))))
    hasse = {}
    for p in sorted(primes) + ['inf']:
        value = 1
        for i in range(len(entries)):
            for j in range(i + 1, len(entries)):
                value *= hilbert_symbol(entries[i], entries[j], p)
        hasse[p] = value
    return FormInvariants(len(entries), det_class, signature, hasse)


def decide_isometry_Q(b1, b2):
    first, second = rational_invariants(b1), rational_invariants(b2)
    if (first.rank, first.det_class, first.signature) != (second.rank, second.det_class, second.signature):
        return False
    places = set(first.hasse) | set(second.hasse)
    return all(first.hasse.get(p, 1) == second.hasse.get(p, 1) for p in places)


def discriminant(b, squares=()):
    """det(gram) divided by the squares of the given witnesses."""
    d = b.determinant()
    for w in squares:
        d = d / (b.field.convert(w) ** 2)
    return d
