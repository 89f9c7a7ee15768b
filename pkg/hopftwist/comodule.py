"""Comodules over a Hopf algebra A and the equivalent modules over its dual.

Coordinates: with a basis h_i of A and the dual basis f_i of the dual algebra, a
coaction on a lattice with basis e_j is the tensor C[k, j, i] in

    alpha(e_j) = sum_{k, i} C[k, j, i] e_k (x) h_i

and the dual basis element f_i acts through the matrix C[:, :, i].
"""
import itertools
import logging
import random

import numpy as np

from . import linalg
from .errors import DimensionMismatch, LatticeNotFree, FreenessUncertified

logger = logging.getLogger(__name__)


class Comodule(object):
    """A free R-lattice of rank m with a coaction of a Hopf algebra.

    Args:
        hopf: the coacting HopfAlgebra A
        coaction: m x m x n tensor C[k, j, i], or its m x (m*n) flattening with rows j
    """

    def __init__(self, hopf, coaction):
        coaction = np.asarray(coaction, dtype=object)
        n = hopf.rank
        if coaction.ndim == 2:
            m = coaction.shape[0]
            if coaction.shape != (m, m * n):
                raise DimensionMismatch('Flattened coaction must be m x (m*{}), got {}'.format(n, coaction.shape))
            coaction = coaction.reshape(m, m, n).transpose(1, 0, 2).copy()
        m = coaction.shape[0]
        if coaction.shape != (m, m, n):
            raise DimensionMismatch('Coaction tensor has shape {}, expected ({m}, {m}, {})'.format(
                coaction.shape, n, m=m))

        self.hopf = hopf
        self.field = hopf.field
        self.rank = m
        self.coaction = coaction

    def flattened(self):
        return self.coaction.transpose(1, 0, 2).reshape(self.rank, self.rank * self.hopf.rank)

    def act(self, g):
        """Matrix of m -> g.m for g in the dual algebra, given by dual-basis coordinates."""
        return np.tensordot(self.coaction, g, axes=([2], [0]))

    def check_axioms(self):
        """Coassociativity, counit law and integrality, as a list of (name, detail) failures."""
        H, C = self.hopf, self.coaction
        failures = []
        if not H.base.contains_all(C.reshape(-1)):
            failures.append(('coaction in R', 'coaction coefficients do not lie in R'))

        left = np.tensordot(C, C, axes=([1], [0])).transpose(0, 2, 1, 3)
        right = np.tensordot(C, H.comult, axes=([2], [0]))
        if list(left.reshape(-1)) != list(right.reshape(-1)):
            failures.append(('coassociativity', '(alpha (x) id) alpha != (id (x) Delta) alpha'))

        counit = np.tensordot(C, H.counit, axes=([2], [0]))
        if list(counit.reshape(-1)) != list(linalg.identity(self.field, self.rank).reshape(-1)):
            failures.append(('counit law', '(id (x) eps) alpha != id'))
        return failures

    def __repr__(self):
        return 'Comodule(rank={}, hopf={})'.format(self.rank, self.hopf)


class ModuleAction(object):
    """Left action of the dual algebra: matrices[i] is the action of the dual basis element f_i."""

    def __init__(self, hopf, matrices):
        matrices = np.asarray(matrices, dtype=object)
        if matrices.ndim != 3 or matrices.shape[0] != hopf.rank or matrices.shape[1] != matrices.shape[2]:
            raise DimensionMismatch('Expected {} square action matrices, got shape {}'.format(
                hopf.rank, matrices.shape))
        self.hopf = hopf
        self.field = hopf.field
        self.rank = matrices.shape[1]
        self.matrices = matrices

    def act(self, g):
        return np.tensordot(g, self.matrices, axes=([0], [0]))

    def check_axioms(self):
        """psi(f_a) psi(f_b) = psi(f_a f_b) and psi(1) = id."""
        H = self.hopf
        failures = []
        for a, b in itertools.product(range(H.rank), repeat=2):
            product = linalg.dot(self.matrices[a], self.matrices[b])
            expected = self.act(H.comult[:, a, b])
            if list(product.reshape(-1)) != list(expected.reshape(-1)):
                failures.append(('associative action', 'psi(f_{0}) psi(f_{1}) != psi(f_{0} f_{1})'.format(a, b)))
                break
        unit = self.act(H.counit)
        if list(unit.reshape(-1)) != list(linalg.identity(self.field, self.rank).reshape(-1)):
            failures.append(('unital action', 'the identity of the dual does not act trivially'))
        return failures


def to_module(M):
    return ModuleAction(M.hopf, M.coaction.transpose(2, 0, 1).copy())


def from_module(action):
    return Comodule(action.hopf, action.matrices.transpose(1, 2, 0).copy())


def regular_comodule(H):
    """A coacting on itself through the comultiplication."""
    return Comodule(H, H.comult.transpose(1, 0, 2).copy())


def dual_regular_comodule(H):
    """The dual algebra as a module over itself by left multiplication."""
    return from_module(ModuleAction(H, H.comult.transpose(1, 0, 2).copy()))


def trivial_comodule(H, rank):
    """alpha(m) = m (x) 1."""
    coaction = np.multiply.outer(linalg.identity(H.field, rank), H.alg.unit)
    return Comodule(H, coaction)


def _stacked_fixed_system(M):
    H = M.hopf
    identity = linalg.identity(M.field, M.rank)
    return np.vstack([M.coaction[:, :, i] - linalg.scale(identity, H.alg.unit[i]) for i in range(H.rank)])


def _primitive_columns(ring, columns):
    result = columns.copy()
    for j in range(columns.shape[1]):
        result[:, j] = linalg.scale(columns[:, j], ring.primitive_scale(columns[:, j]))
    return result


def fixed_points(M, theta_dual=None):
    """R-basis (as columns) of the fixed lattice {m : alpha(m) = m (x) 1}.

    The kernel over K is saturated in R^m. Candidate bases (the reduced echelon
    basis, its primitive rescaling, the saturation itself when it has the right
    size, then the theta_dual image) are accepted once they generate the
    saturation. With theta_dual given, its image must be the same lattice.

    Args:
        M: Comodule
        theta_dual: optional dual integral with theta_dual . theta = 1_A
    """
    ring = M.hopf.base
    kernel = linalg.kernel(M.field, _stacked_fixed_system(M)).T.copy()
    rank = kernel.shape[1]
    if ring.is_field:
        saturated = kernel
    else:
        saturated = linalg.saturation(ring, kernel)

    from_theta = None
    if theta_dual is not None:
        image = M.act(theta_dual)
        _, pivots = linalg.rref(image)
        basis = image[:, pivots]
        if len(pivots) == rank and lattice_contains(ring, basis, image):
            from_theta = basis

    candidates = [kernel, _primitive_columns(ring, kernel)]
    if saturated.shape[1] == rank:
        candidates.append(saturated)
    if from_theta is not None:
        candidates.append(from_theta)
    found = next((c for c in candidates if linalg.entries_in(ring, c) and lattice_contains(ring, c, saturated)), None)
    if found is None:
        raise LatticeNotFree('No R-basis found for the fixed points of {}'.format(M))
    if from_theta is not None and not lattice_equal(ring, found, from_theta):
        raise LatticeNotFree('Fixed lattice differs from the image of theta_dual')
    logger.debug('Fixed lattice of %s has rank %d', M, rank)
    return found


def coinvariants(M, theta_dual):
    """The map m -> theta_dual . m from M / ker(eps) M onto the fixed lattice.

    Returns:
        Coinvariants holding the relations, the map and its matrix on a complement
    """
    H = M.hopf
    identity = linalg.identity(M.field, M.rank)
    relations = np.hstack([M.coaction[:, :, i] - linalg.scale(identity, H.alg.unit[i]) for i in range(H.rank)])
    image = M.act(theta_dual)
    fixed = fixed_points(M, theta_dual)

    representatives = []
    span = relations
    for j in range(M.rank):
        candidate = np.hstack([span, linalg.unit_vector(M.field, M.rank, j).reshape(M.rank, 1)])
        if linalg.rank(candidate) > linalg.rank(span):
            representatives.append(j)
            span = candidate

    columns = image[:, representatives]
    matrix = linalg.solve_columns(M.field, fixed, columns) if representatives else linalg.zeros(M.field, (0, 0))
    return Coinvariants(relations, image, representatives, fixed, matrix, M.hopf.base)


class Coinvariants(object):

    def __init__(self, relations, image, representatives, fixed, matrix, ring):
        self.relations = relations
        self.image = image
        self.representatives = representatives
        self.fixed = fixed
        self.matrix = matrix
        self.rank = len(representatives)
        self.ring = ring

    def kills_relations(self):
        return linalg.is_zero(linalg.dot(self.image, self.relations))

    def is_isomorphism(self):
        """Same rank as the fixed lattice and the induced matrix lies in GL(R)."""
        return (self.rank == self.fixed.shape[1] and self.kills_relations() and self.matrix is not None and
                (self.rank == 0 or linalg.is_invertible_over(self.ring, self.matrix)))


def tensor_diagonal(M, N):
    """M (x) N with the diagonal coaction; basis e_k (x) e'_l at index k * rank(N) + l."""
    if not M.hopf.same_structure(N.hopf):
        raise DimensionMismatch('Tensor product of comodules over different Hopf algebras')
    C, Cp, c = M.coaction, N.coaction, M.hopf.alg.mult
    partial = np.tensordot(C, c, axes=([2], [0]))
    full = np.tensordot(partial, Cp, axes=([2], [2])).transpose(0, 3, 1, 4, 2)
    m, mp = M.rank, N.rank
    return Comodule(M.hopf, full.reshape(m * mp, m * mp, M.hopf.rank).copy())


def hom_module(M, N):
    """Action on Hom_R(M, N): (g.phi) = sum g_(1) phi S(g_(2)).

    A map phi is flattened row by row, entry (a, b) at index a * rank(M) + b.
    """
    if not M.hopf.same_structure(N.hopf):
        raise DimensionMismatch('Hom between comodules over different Hopf algebras')
    H = M.hopf
    S_dual = H.antipode.T
    act_N = [N.act(linalg.unit_vector(H.field, H.rank, i)) for i in range(H.rank)]
    act_M_twisted = [M.act(S_dual[:, j]).T for j in range(H.rank)]

    matrices = []
    for a in range(H.rank):
        total = linalg.zeros(H.field, (N.rank * M.rank, N.rank * M.rank))
        for i, j in itertools.product(range(H.rank), repeat=2):
            coefficient = H.alg.mult[i, j, a]
            if coefficient:
                total = total + linalg.scale(np.kron(act_N[i], act_M_twisted[j]), coefficient)
        matrices.append(total)
    return ModuleAction(H, np.array(matrices, dtype=object))


def hom_fixed_check(M, N):
    """Module maps M -> N are exactly the fixed points of the Hom action."""
    H = M.hopf
    blocks = []
    for i in range(H.rank):
        f = linalg.unit_vector(H.field, H.rank, i)
        blocks.append(np.kron(N.act(f), linalg.identity(H.field, M.rank)) -
                      np.kron(linalg.identity(H.field, N.rank), M.act(f).T))
    commuting = linalg.kernel(H.field, np.vstack(blocks))
    fixed = linalg.kernel(H.field, _stacked_fixed_system(from_module(hom_module(M, N))))
    return list(commuting.reshape(-1)) == list(fixed.reshape(-1)) and commuting.shape == fixed.shape


def lattice_contains(ring, basis, vectors):
    """Every column of vectors is an R-combination of the columns of basis."""
    coefficients = linalg.solve_columns(ring.field, basis, vectors)
    return coefficients is not None and linalg.entries_in(ring, coefficients)


def lattice_equal(ring, first, second):
    """Both column bases span the same R-lattice."""
    if first.shape != second.shape:
        return False
    if first.shape[1] == 0:
        return True
    change = linalg.solve_columns(ring.field, first, second)
    return change is not None and linalg.is_invertible_over(ring, change)


def module_basis_matrix(M, generators):
    """Columns f_i . g for every generator g (major) and dual basis element f_i (minor)."""
    H = M.hopf
    columns = []
    for g in generators:
        for i in range(H.rank):
            columns.append(linalg.dot(M.coaction[:, :, i], g))
    return np.array(columns, dtype=object).reshape(len(columns), M.rank).T.copy()


def free_generators(M, hints=(), attempts=200, seed=0):
    """Greedy, bounded search for a basis of M as a free module over the dual algebra.

    Candidates are tried in order: hints, the all-ones vector, standard basis
    vectors, then seeded random small vectors.

    Returns:
        (generators, basis matrix whose columns are f_i . g_j)
    """
    H = M.hopf
    if M.rank % H.rank:
        raise FreenessUncertified('Rank {} is not a multiple of {}'.format(M.rank, H.rank))
    needed = M.rank // H.rank
    ring = M.hopf.base

    def candidates():
        for hint in hints:
            yield linalg.vector(M.field, list(hint))
        yield linalg.vector(M.field, [1] * M.rank)
        for j in range(M.rank):
            yield linalg.unit_vector(M.field, M.rank, j)
        rng = random.Random(seed)
        while True:
            yield linalg.vector(M.field, [rng.randint(-2, 2) for _ in range(M.rank)])

    chosen = []
    for tried, candidate in enumerate(candidates()):
        if tried >= attempts:
            break
        trial = chosen + [candidate]
        block = module_basis_matrix(M, trial)
        if linalg.rank(block) < H.rank * len(trial) or not linalg.entries_in(ring, block):
            continue
        if len(trial) < needed:
            chosen = trial
            continue
        if linalg.is_invertible_over(ring, block):
            logger.debug('Free basis of %s found after %d candidates', M, tried + 1)
            return trial, block

    raise FreenessUncertified('No free basis of {} found in {} attempts'.format(M, attempts))
