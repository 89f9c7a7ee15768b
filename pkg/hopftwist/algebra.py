import itertools

import numpy as np

from . import linalg
from .errors import DimensionMismatch


class FiniteAlgebra(object):
    """A free R-algebra of finite rank presented by structure constants.

    Args:
        base: RingSpec the algebra is defined over
        mult: n x n x n object array, e_i * e_j = sum_k mult[i, j, k] e_k
        unit: coordinates of the identity element
    """

    def __init__(self, base, mult, unit):
        mult = np.asarray(mult, dtype=object)
        n = mult.shape[0]
        if mult.shape != (n, n, n):
            raise DimensionMismatch('Structure constants must have shape (n, n, n), got {}'.format(mult.shape))
        if len(unit) != n:
            raise DimensionMismatch('Unit has {} coordinates, expected {}'.format(len(unit), n))

        self.base = base
        self.field = base.field
        self.rank = n
        self.mult = mult
        self.unit = linalg.vector(self.field, list(unit))

        # Extension data, set by adjoin_root
        self.root_of = None

    @classmethod
    def from_table(cls, base, n, products, unit):
        """Build an algebra from a function (i, j) -> coordinates of e_i * e_j."""
        mult = linalg.zeros(base.field, (n, n, n))
        for i, j in itertools.product(range(n), repeat=2):
            mult[i, j, :] = linalg.vector(base.field, products(i, j))
        return cls(base, mult, unit)

    @classmethod
    def trivial(cls, base):
        """The rank one algebra R itself."""
        return cls(base, linalg.matrix(base.field, [[1]]).reshape(1, 1, 1), [1])

    # Elements

    def element(self, coords):
        return AlgebraElem(self, linalg.vector(self.field, list(coords)))

    def basis_element(self, i):
        return AlgebraElem(self, linalg.unit_vector(self.field, self.rank, i))

    def one(self):
        return AlgebraElem(self, self.unit.copy())

    def zero(self):
        return AlgebraElem(self, linalg.zeros(self.field, self.rank))

    def scalar(self, value):
        return AlgebraElem(self, linalg.scale(self.unit, self.field.convert(value)))

    # Arithmetic on coordinate vectors

    def _partial(self, x):
        """M[j, k] = sum_i x_i c_ijk, so that (x * y)_k = sum_j y_j M[j, k]."""
        n = self.rank
        return linalg.dot(x, self.mult.reshape(n, n * n)).reshape(n, n)

    def product(self, x, y):
        if len(x) != self.rank or len(y) != self.rank:
            raise DimensionMismatch('Coordinate vectors of length {} and {} in a rank {} algebra'.format(
                len(x), len(y), self.rank))
        return linalg.dot(y, self._partial(x))

    def multiply(self, x, y):
        if x.parent is not y.parent or x.parent is not self:
            raise DimensionMismatch('Elements belong to different algebras')
        return AlgebraElem(self, self.product(x.coords, y.coords))

    def left_mult_matrix(self, x):
        """Matrix of b -> x*b; column j is x*e_j."""
        coords = x.coords if isinstance(x, AlgebraElem) else x
        return self._partial(coords).T.copy()

    def right_mult_matrix(self, x):
        """Matrix of b -> b*x; column i is e_i*x."""
        coords = x.coords if isinstance(x, AlgebraElem) else x
        return np.tensordot(self.mult, coords, axes=([1], [0])).T.copy()

    def trace_vector(self):
        """Tr(e_k) for every basis element, the regular trace."""
        return np.array([sum(self.mult[k, l, l] for l in range(self.rank)) for k in range(self.rank)],
                        dtype=object)

    def regular_trace(self, x):
        coords = x.coords if isinstance(x, AlgebraElem) else x
        return linalg.dot(coords, self.trace_vector())

    def trace_form(self):
        """Gram matrix Tr(e_i e_j) over K."""
        n = self.rank
        return linalg.dot(self.mult.reshape(n * n, n), self.trace_vector()).reshape(n, n)

    def trace_gram(self, lattice_scale=1):
        """Gram matrix of Tr on the lattice spanned by s*e_i."""
        s = self.field.convert(lattice_scale)
        return linalg.scale(self.trace_form(), s * s)

    def is_separable(self):
        return bool(linalg.det(self.field, self.trace_form()))

    def is_commutative(self):
        return all(self.mult[i, j, k] == self.mult[j, i, k]
                   for i, j, k in itertools.product(range(self.rank), repeat=3) if i < j)

    def check_axioms(self):
        """Exhaustive check of the algebra invariants.

        Returns:
            list of (name, detail) pairs, one per failed invariant
        """
        n = self.rank
        failures = []
        if not self.base.contains_all(self.mult.reshape(-1)):
            failures.append(('structure constants', 'not all c_ij^k lie in R'))
        if not self.base.contains_all(self.unit):
            failures.append(('unit', 'unit coordinates do not lie in R'))

        for i in range(n):
            e_i = linalg.unit_vector(self.field, n, i)
            if list(self.product(self.unit, e_i)) != list(e_i) or list(self.product(e_i, self.unit)) != list(e_i):
                failures.append(('unit law', 'fails on e_{}'.format(i)))
                break

        # (e_i e_j) e_k = e_i (e_j e_k)
        left = linalg.dot(self.mult.reshape(n * n, n), self.mult.reshape(n, n * n)).reshape(n, n, n, n)
        right = np.tensordot(self.mult, self.mult, axes=([2], [1])).transpose(2, 0, 1, 3)
        for i, j, k in itertools.product(range(n), repeat=3):
            if list(left[i, j, k]) != list(right[i, j, k]):
                failures.append(('associativity', '(e_{0} e_{1}) e_{2} != e_{0} (e_{1} e_{2})'.format(i, j, k)))
                return failures
        return failures

    # Constructions

    def adjoin_root(self, beta, degree):
        """The algebra C[X]/(X^degree - beta) over this algebra C.

        The basis is e_i x^m, stored at index i * degree + m.
        """
        beta = beta.coords if isinstance(beta, AlgebraElem) else linalg.vector(self.field, list(beta))
        r, n = self.rank, degree
        beta_mult = self.left_mult_matrix(beta)
        mult = linalg.zeros(self.field, (r * n, r * n, r * n))
        for i, a, j, b in itertools.product(range(r), range(n), range(r), range(n)):
            product = self.mult[i, j, :]
            power = a + b
            if power >= n:
                product = linalg.dot(beta_mult, product)
                power -= n
            for k in range(r):
                mult[i * n + a, j * n + b, k * n + power] = product[k]

        unit = linalg.zeros(self.field, r * n)
        for i in range(r):
            unit[i * n] = self.unit[i]
        extension = FiniteAlgebra(self.base, mult, unit)
        extension.root_of = (self, degree, beta)
        return extension

    def include_base(self, x):
        """Embed an element of C into C[X]/(X^n - beta)."""
        base, degree, _ = self.root_of
        coords = linalg.zeros(self.field, self.rank)
        source = x.coords if isinstance(x, AlgebraElem) else x
        for i in range(base.rank):
            coords[i * degree] = source[i]
        return AlgebraElem(self, coords)

    def root(self):
        """The class x of X in C[X]/(X^n - beta)."""
        base, degree, beta = self.root_of
        if degree == 1:
            return self.include_base(beta)
        coords = linalg.zeros(self.field, self.rank)
        for i in range(base.rank):
            coords[i * degree + 1] = base.unit[i]
        return AlgebraElem(self, coords)

    def endomorphism_matrix(self, base_images, root_image):
        """Matrix of the algebra endomorphism of C[X]/(X^n - beta) fixing the given data.

        Args:
            base_images: images (AlgebraElem of this algebra) of the basis of C
            root_image: image of x
        """
        base, degree, _ = self.root_of
        columns = []
        for i in range(base.rank):
            power = self.one()
            for _ in range(degree):
                columns.append((base_images[i] * power).coords)
                power = power * root_image
        return np.array(columns, dtype=object).reshape(self.rank, self.rank).T.copy()

    def is_algebra_map(self, matrix, target=None):
        """Check that a linear map (columns = images of basis) respects products and unit."""
        target = target or self
        for i, j in itertools.product(range(self.rank), repeat=2):
            lhs = linalg.dot(matrix, self.mult[i, j, :])
            rhs = target.product(matrix[:, i], matrix[:, j])
            if list(lhs) != list(rhs):
                return False
        return list(linalg.dot(matrix, self.unit)) == list(target.unit)

    def __repr__(self):
        return 'FiniteAlgebra(rank={}, base={})'.format(self.rank, self.base)


class AlgebraElem(object):
    """An element of a FiniteAlgebra, given by its coordinates."""

    def __init__(self, parent, coords):
        self.parent = parent
        self.coords = coords

    def __add__(self, other):
        return AlgebraElem(self.parent, self.coords + other.coords)

    def __sub__(self, other):
        return AlgebraElem(self.parent, self.coords - other.coords)

    def __neg__(self):
        return AlgebraElem(self.parent, linalg.scale(self.coords, -1))

    def __mul__(self, other):
        if isinstance(other, AlgebraElem):
            return self.parent.multiply(self, other)
        return AlgebraElem(self.parent, linalg.scale(self.coords, self.parent.field.convert(other)))

    def __rmul__(self, other):
        return AlgebraElem(self.parent, linalg.scale(self.coords, self.parent.field.convert(other)))

    def __pow__(self, exponent):
        result = self.parent.one()
        for _ in range(exponent):
            result = result * self
        return result

    def __eq__(self, other):
        return (isinstance(other, AlgebraElem) and other.parent is self.parent and
                list(self.coords) == list(other.coords))

    def __ne__(self, other):
        return not self == other

    def __hash__(self):
        return hash(tuple(self.coords))

    def __repr__(self):
        return 'AlgebraElem({})'.format(list(self.coords))


def tensor_product(left, right, mult_left, mult_right):
    """Multiply two elements of C (x) D given as coefficient matrices P[k, l] (e_k (x) f_l).

    Args:
        left, right: coefficient matrices of the factors
        mult_left, mult_right: structure constants of C and D
    """
    partial = np.tensordot(left, mult_left, axes=([0], [0]))
    partial = np.tensordot(partial, right, axes=([1], [0]))
    return np.tensordot(partial, mult_right, axes=([0, 2], [0, 1]))
