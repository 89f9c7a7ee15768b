"""Exact linear algebra over a NumberField.

Matrices are numpy object arrays of FieldElem. numpy handles the bookkeeping
(products, transposes, Kronecker products). Elimination runs on sympy
DomainMatrix over the field's domain, QQ or the algebraic field QQ<z>.
"""
from math import gcd

import numpy as np
from sympy.polys.domains import QQ, ZZ
from sympy.polys.matrices import DomainMatrix
from sympy.polys.matrices.normalforms import hermite_normal_form

from .errors import DimensionMismatch, ZeroElement


def matrix(field, rows):
    """Convert nested lists of ints, rationals or FieldElem to an object array."""
    rows = [list(row) for row in rows]
    width = len(rows[0]) if rows else 0
    if any(len(row) != width for row in rows):
        raise DimensionMismatch('Ragged matrix: row lengths {}'.format([len(row) for row in rows]))
    result = np.empty((len(rows), width), dtype=object)
    for i, row in enumerate(rows):
        for j, entry in enumerate(row):
            result[i, j] = field.convert(entry)
    return result


def vector(field, entries):
    result = np.empty(len(entries), dtype=object)
    for i, entry in enumerate(entries):
        result[i] = field.convert(entry)
    return result


def zeros(field, shape):
    result = np.empty(shape, dtype=object)
    result.fill(field.zero)
    return result


def identity(field, n):
    result = zeros(field, (n, n))
    for i in range(n):
        result[i, i] = field.one
    return result


def unit_vector(field, n, i):
    result = zeros(field, n)
    result[i] = field.one
    return result


def scale(array, factor):
    """Multiply every entry of an object array by a scalar."""
    result = np.empty(array.shape, dtype=object)
    flat_in, flat_out = array.reshape(-1), result.reshape(-1)
    for i in range(flat_in.shape[0]):
        flat_out[i] = flat_in[i] * factor
    return result


def dot(a, b):
    """Matrix/vector product that is safe when an inner dimension is empty."""
    if a.shape[-1] != b.shape[0]:
        raise DimensionMismatch('Cannot multiply shapes {} and {}'.format(a.shape, b.shape))
    return np.dot(a, b)


def is_zero(array):
    return not any(array.reshape(-1))


def to_domain_matrix(field, array):
    """The matrix as a sympy DomainMatrix over field.domain."""
    rows, cols = array.shape
    return DomainMatrix([[field.to_domain(x) for x in row] for row in array], (rows, cols), field.domain)


def from_domain_matrix(field, dm):
    rows, cols = dm.shape
    result = np.empty((rows, cols), dtype=object)
    for i, row in enumerate(dm.to_list()):
        for j, entry in enumerate(row):
            result[i, j] = field.from_domain(entry)
    return result


def _field_of(array):
    return array.reshape(-1)[0].field if array.size else None


def rref(array):
    """Reduced row echelon form of a matrix; returns (nonzero rows, pivots)."""
    field = _field_of(array)
    if field is None:
        return array[:0], []
    reduced, pivots = to_domain_matrix(field, array).rref()
    pivots = list(pivots)
    return from_domain_matrix(field, reduced)[:len(pivots)], pivots


def rank(array):
    field = _field_of(array)
    if field is None:
        return 0
    return to_domain_matrix(field, array).rank()


def kernel(field, array):
    """Basis of the right kernel {x : array x = 0}, in reduced echelon form.

    The vectors are returned as the rows of a matrix.
    """
    n_cols = array.shape[1]
    if array.shape[0] == 0:
        return identity(field, n_cols)
    if n_cols == 0:
        return zeros(field, (0, 0))
    null = to_domain_matrix(field, array).nullspace()
    if null.shape[0] == 0:
        return zeros(field, (0, n_cols))
    return echelon_basis(from_domain_matrix(field, null))


def echelon_basis(vectors):
    """Canonical basis of the row span of `vectors` (reduced row echelon form)."""
    if vectors.shape[0] == 0:
        return vectors
    return rref(vectors)[0]


def solve_columns(field, array, targets):
    """Solve array X = targets by eliminating on [array | targets]; free variables are set to zero.

    Returns:
        the solution X, or None when any column is inconsistent
    """
    n_rows, n_cols = array.shape
    if targets.shape[0] != n_rows:
        raise DimensionMismatch('Cannot solve a {} system for {} targets'.format(array.shape, targets.shape))
    n_targets = targets.shape[1]
    solution = zeros(field, (n_cols, n_targets))
    if n_rows == 0 or n_targets == 0:
        return solution
    augmented = np.hstack([array, targets])
    reduced, pivots = to_domain_matrix(field, augmented).rref()
    reduced = reduced.to_list()
    for r, p in enumerate(pivots):
        if p >= n_cols:
            return None
        for j in range(n_targets):
            solution[p, j] = field.from_domain(reduced[r][n_cols + j])
    return solution


def solve(field, array, rhs):
    """One solution of array x = rhs (free variables set to zero), or None."""
    solution = solve_columns(field, array, np.asarray(rhs, dtype=object).reshape(-1, 1))
    return None if solution is None else solution[:, 0]


def det(field, array):
    n = array.shape[0]
    if array.shape != (n, n):
        raise DimensionMismatch('Determinant of non-square shape {}'.format(array.shape))
    if n == 0:
        return field.one
    return field.from_domain(to_domain_matrix(field, array).det())


def inverse(field, array):
    if not det(field, array):
        raise ZeroElement('Matrix is singular')
    return from_domain_matrix(field, to_domain_matrix(field, array).inv())


def entries_in(ring, array):
    return ring.contains_all(array.reshape(-1))


def is_invertible_over(ring, array):
    """True iff the square matrix lies in GL_n(R): integral entries and a unit determinant."""
    if not entries_in(ring, array):
        return False
    d = det(ring.field, array)
    return bool(d) and ring.is_unit(d)


def _lattice_coordinates(ring, column):
    return [w for x in column for w in ring.basis_coordinates(x)]


def saturation(ring, columns):
    """Z-basis (as columns) of the lattice K.columns intersected with O^m.

    Over a localization of O this is also a basis of K.columns intersected with R^m.
    The number of columns is degree * rank(columns); for Q it is an R-basis.
    """
    field = ring.field
    m, d = columns.shape[0], field.degree
    if columns.shape[1] == 0:
        return columns
    generators, power = [], field.one
    for _ in range(d):
        generators.extend(_lattice_coordinates(ring, column) for column in scale(columns, power).T)
        power = power * field.element([0, 1])
    span, pivots = DomainMatrix(generators, (len(generators), m * d), QQ).rref()
    echelon = span[:len(pivots), :]
    denominator = 1
    for entry in (x for row in echelon.to_list() for x in row):
        denominator = _lcm(denominator, int(QQ.denom(entry)))
    integral = DomainMatrix([[QQ.numer(x * denominator) for x in row] for row in echelon.to_list()],
                            echelon.shape, ZZ)
    hnf = hermite_normal_form(integral).convert_to(QQ)
    rows = hnf.inv().matmul(echelon).to_list()

    result = np.empty((m, len(rows)), dtype=object)
    basis = ring.integral_basis
    for j, row in enumerate(rows):
        for i in range(m):
            coords = [x * denominator for x in row[i * d:(i + 1) * d]]
            result[i, j] = field.element([sum((basis[s][t] * coords[t] for t in range(d)), QQ.zero)
                                          for s in range(d)])
    return result


def _lcm(a, b):
    return a * b // gcd(a, b)
