from fractions import Fraction
from functools import reduce
from math import gcd

from sympy import CRootOf, Rational, cyclotomic_poly, Symbol, Poly
from sympy.polys.domains import QQ
from sympy.polys.densearith import dup_add, dup_sub, dup_neg, dup_mul, dup_rem
from sympy.polys.densebasic import dup_strip
from sympy.polys.euclidtools import dup_invert
from sympy.polys.matrices import DomainMatrix
from sympy.polys.polyerrors import NotInvertible
from sympy.polys.sqfreetools import dup_sqf_p

from .errors import ZeroElement, SchemaError


def to_qq(value):
    """Convert an int, Fraction, sympy Rational or 'p/q' string to a QQ element."""
    if isinstance(value, QQ.dtype):
        return value
    if isinstance(value, Rational):
        return QQ(int(value.p), int(value.q))
    if isinstance(value, str):
        try:
            value = Fraction(value.strip())
        except ValueError:
            raise SchemaError('Not a rational number: {}'.format(value))
    if isinstance(value, Fraction):
        return QQ(value.numerator, value.denominator)
    if isinstance(value, int):
        return QQ(value)
    raise SchemaError('Cannot interpret {!r} as a rational number'.format(value))


def format_rational(q):
    """Canonical string for a rational: 'p/q' with q > 0, or 'p' when q = 1."""
    num, den = int(QQ.numer(q)), int(QQ.denom(q))
    if den == 1:
        return str(num)
    return '{}/{}'.format(num, den)


def _lcm(a, b):
    return a * b // gcd(a, b)


class NumberField(object):
    """The field K = Q[z]/(m(z)).

    Args:
        min_poly: coefficients of the monic minimal polynomial, constant term first
        symbol: name of the generator, used for printing and parsing
    """

    def __init__(self, min_poly, symbol='z'):
        coeffs = [to_qq(c) for c in min_poly]
        while len(coeffs) > 1 and not coeffs[-1]:
            coeffs.pop()
        if len(coeffs) < 2:
            raise SchemaError('Minimal polynomial must have positive degree: {}'.format(min_poly))
        if coeffs[-1] != QQ.one:
            raise SchemaError('Minimal polynomial is not monic: {}'.format(min_poly))

        self.min_poly = tuple(coeffs)
        self.degree = len(coeffs) - 1
        self.symbol = symbol
        self.mod = list(reversed(coeffs))
        self._domain = None

        if not dup_sqf_p(self.mod, QQ):
            raise SchemaError('Minimal polynomial is not squarefree: {}'.format(min_poly))

    @classmethod
    def rationals(cls, symbol='z'):
        return cls([0, 1], symbol)

    @classmethod
    def cyclotomic(cls, n, symbol='z'):
        """Q(zeta_n), with z a primitive n-th root of unity."""
        poly = Poly(cyclotomic_poly(n, Symbol(symbol)), Symbol(symbol))
        return cls([int(c) for c in reversed(poly.all_coeffs())], symbol)

    def element(self, coords):
        """Build an element from power-basis coordinates (constant first)."""
        coords = [to_qq(c) for c in coords]
        if len(coords) > self.degree:
            rep = dup_rem(dup_strip(list(reversed(coords))), self.mod, QQ)
        else:
            rep = dup_strip(list(reversed(coords)))
        return FieldElem(self, rep)

    def convert(self, value):
        if isinstance(value, FieldElem):
            if value.field != self:
                raise SchemaError('Element of {} used in {}'.format(value.field, self))
            return value
        return FieldElem(self, dup_strip([to_qq(value)]))

    @property
    def domain(self):
        """The sympy domain used for elimination: QQ, or QQ<z> when the modulus is irreducible."""
        if self._domain is None:
            if self.degree == 1:
                self._domain = QQ
            else:
                poly = Poly([QQ.to_sympy(c) for c in self.mod], Symbol(self.symbol), domain=QQ)
                if not poly.is_irreducible:
                    raise SchemaError('Linear algebra needs a field, but {} is reducible'.format(poly.as_expr()))
                self._domain = QQ.algebraic_field((poly, CRootOf(poly, 0)))
        return self._domain

    def to_domain(self, x):
        x = self.convert(x)
        if self.degree == 1:
            return x.rep[0] if x.rep else QQ.zero
        return self.domain(list(x.rep)) if x.rep else self.domain.zero

    def from_domain(self, a):
        if self.degree == 1:
            return FieldElem(self, dup_strip([QQ.convert(a)]))
        return FieldElem(self, dup_strip([QQ.convert(c) for c in a.to_list()]))

    @property
    def zero(self):
        return FieldElem(self, [])

    @property
    def one(self):
        return FieldElem(self, [QQ.one])

    @property
    def gen(self):
        return self.element([0, 1])

    def __eq__(self, other):
        return isinstance(other, NumberField) and self.min_poly == other.min_poly

    def __ne__(self, other):
        return not self == other

    def __hash__(self):
        return hash(self.min_poly)

    def __repr__(self):
        return 'NumberField({})'.format(
            ' + '.join('{}*{}^{}'.format(format_rational(c), self.symbol, i)
                       for i, c in enumerate(self.min_poly) if c))


class FieldElem(object):
    """An exact element of a NumberField, reduced modulo the minimal polynomial.

    The dense representation is kept in sympy's descending-coefficient form.
    Elements are immutable and deliberately not iterable, so numpy stores them as
    scalars in object arrays.
    """

    __slots__ = ('field', 'rep')

    def __init__(self, field, rep):
        self.field = field
        self.rep = rep

    @property
    def coords(self):
        """Power-basis coordinates, constant term first, padded to the field degree."""
        coords = list(reversed(self.rep))
        return tuple(coords + [QQ.zero] * (self.field.degree - len(coords)))

    def is_rational(self):
        return len(self.rep) <= 1

    def to_rational(self):
        if not self.is_rational():
            raise ValueError('{} is not rational'.format(self))
        return self.rep[0] if self.rep else QQ.zero

    def _coerce(self, other):
        if isinstance(other, FieldElem):
            if other.field is not self.field and other.field != self.field:
                return None
            return other.rep
        if isinstance(other, (int, Fraction, QQ.dtype)):
            return dup_strip([to_qq(other)])
        return None

    def __add__(self, other):
        rep = self._coerce(other)
        if rep is None:
            return NotImplemented
        return FieldElem(self.field, dup_add(self.rep, rep, QQ))

    __radd__ = __add__

    def __sub__(self, other):
        rep = self._coerce(other)
        if rep is None:
            return NotImplemented
        return FieldElem(self.field, dup_sub(self.rep, rep, QQ))

    def __rsub__(self, other):
        rep = self._coerce(other)
        if rep is None:
            return NotImplemented
        return FieldElem(self.field, dup_sub(rep, self.rep, QQ))

    def __neg__(self):
        return FieldElem(self.field, dup_neg(self.rep, QQ))

    def __mul__(self, other):
        rep = self._coerce(other)
        if rep is None:
            return NotImplemented
        if not self.rep or not rep:
            return FieldElem(self.field, [])
        if len(rep) == 1 or len(self.rep) == 1:
            return FieldElem(self.field, dup_mul(self.rep, rep, QQ))
        return FieldElem(self.field, dup_rem(dup_mul(self.rep, rep, QQ), self.field.mod, QQ))

    __rmul__ = __mul__

    def inverse(self):
        if not self.rep:
            raise ZeroElement('Cannot invert zero')
        if len(self.rep) == 1:
            return FieldElem(self.field, [QQ.one / self.rep[0]])
        try:
            return FieldElem(self.field, dup_invert(self.rep, self.field.mod, QQ))
        except NotInvertible:
            raise ZeroElement('{} is a zero divisor modulo the minimal polynomial'.format(self))

    def __truediv__(self, other):
        rep = self._coerce(other)
        if rep is None:
            return NotImplemented
        return self * FieldElem(self.field, rep).inverse()

    def __rtruediv__(self, other):
        rep = self._coerce(other)
        if rep is None:
            return NotImplemented
        return FieldElem(self.field, rep) * self.inverse()

    def __pow__(self, exponent):
        if not isinstance(exponent, int):
            return NotImplemented
        base = self if exponent >= 0 else self.inverse()
        exponent = abs(exponent)
        result = self.field.one
        while exponent:
            if exponent & 1:
                result = result * base
            base = base * base
            exponent >>= 1
        return result

    def __eq__(self, other):
        rep = self._coerce(other)
        if rep is None:
            return NotImplemented
        return self.rep == rep

    def __ne__(self, other):
        result = self.__eq__(other)
        return result if result is NotImplemented else not result

    def __hash__(self):
        return hash(tuple(self.rep))

    def __bool__(self):
        return bool(self.rep)

    def to_json(self):
        return [format_rational(c) for c in self.coords]

    def __repr__(self):
        terms = []
        for power, c in enumerate(self.coords):
            if not c:
                continue
            if power == 0:
                terms.append(format_rational(c))
            else:
                monomial = self.field.symbol if power == 1 else '{}^{}'.format(self.field.symbol, power)
                terms.append(monomial if c == QQ.one else '({})*{}'.format(format_rational(c), monomial))
        return ' + '.join(terms) if terms else '0'


class RingSpec(object):
    """A base ring R given as a localization of an order O in a number field.

    Exactly one localization is used: `inverted_primes` gives R = O[1/S], and
    `local_primes` gives the semilocal ring where only the primes in T stay
    non-invertible. `inverted_primes='all'` makes R the field itself.

    Args:
        field: NumberField housing R
        integral_basis: degree x degree rational matrix, columns are a Z-basis of O
        inverted_primes: finite set S of rational primes, or 'all'
        local_primes: finite set T of rational primes
    """

    def __init__(self, field, integral_basis=None, inverted_primes=None, local_primes=None):
        self.field = field
        if integral_basis is None:
            integral_basis = [[int(i == j) for j in range(field.degree)] for i in range(field.degree)]

        if len(integral_basis) != field.degree or any(len(row) != field.degree for row in integral_basis):
            raise SchemaError('Integral basis must be a {0}x{0} matrix'.format(field.degree))

        basis = DomainMatrix([[to_qq(c) for c in row] for row in integral_basis], (field.degree, field.degree), QQ)
        if not basis.det():
            raise SchemaError('Integral basis matrix is singular')
        self.integral_basis = tuple(tuple(to_qq(c) for c in row) for row in integral_basis)
        self._basis_inverse = basis.inv().to_list()

        if local_primes is not None and inverted_primes is not None:
            raise SchemaError('Give either inverted_primes or local_primes, not both')

        self.is_field = inverted_primes == 'all'
        self.local_primes = frozenset(int(p) for p in local_primes) if local_primes is not None else None
        if self.is_field or self.local_primes is not None:
            self.inverted_primes = None
        else:
            self.inverted_primes = frozenset(int(p) for p in (inverted_primes or ()))

        if not self.is_unit_denominator(2):
            raise SchemaError('2 must be invertible in the base ring')

    @classmethod
    def over_field(cls, field):
        return cls(field, inverted_primes='all')

    def is_unit_denominator(self, d):
        """True when the positive integer d is invertible in R."""
        d = abs(int(d))
        if self.is_field:
            return d != 0
        if self.local_primes is not None:
            return all(d % p for p in self.local_primes)
        for p in self.inverted_primes:
            while d % p == 0:
                d //= p
        return d == 1

    def basis_coordinates(self, x):
        """Rational coordinates of x in the integral basis of O."""
        coords = self.field.convert(x).coords
        return [reduce(lambda acc, term: acc + term, (a * c for a, c in zip(row, coords)), QQ.zero)
                for row in self._basis_inverse]

    def membership(self, x):
        if self.is_field:
            return True
        return all(self.is_unit_denominator(QQ.denom(w)) for w in self.basis_coordinates(x))

    def contains_all(self, values):
        return all(self.membership(x) for x in values)

    def is_unit(self, x):
        x = self.field.convert(x)
        if not x:
            raise ZeroElement('Zero is never a unit')
        return self.membership(x) and self.membership(x.inverse())

    def is_square_up_to_unit(self, value, witness):
        """Check that value generates the square of the principal ideal (witness)."""
        value, witness = self.field.convert(value), self.field.convert(witness)
        if not value or not witness:
            raise ZeroElement('Square test needs nonzero value and witness')
        return self.is_unit(value / witness ** 2)

    def primitive_scale(self, values):
        """Rational s making s*values integral with trivial content at non-invertible primes."""
        coords = [w for x in values for w in self.basis_coordinates(x) if w]
        if not coords or self.is_field:
            return QQ.one
        den = reduce(_lcm, (int(QQ.denom(w)) for w in coords), 1)
        num = reduce(gcd, (abs(int(QQ.numer(w * den))) for w in coords), 0)
        return QQ(self._non_unit_part(den), self._non_unit_part(num))

    def _non_unit_part(self, n):
        if self.local_primes is not None:
            part = 1
            for p in self.local_primes:
                while n % p == 0:
                    n //= p
                    part *= p
            return part
        for p in self.inverted_primes:
            while n % p == 0:
                n //= p
        return n

    def __eq__(self, other):
        return (isinstance(other, RingSpec) and self.field == other.field and
                self.integral_basis == other.integral_basis and self.is_field == other.is_field and
                self.inverted_primes == other.inverted_primes and self.local_primes == other.local_primes)

    def __ne__(self, other):
        return not self == other

    def __hash__(self):
        return hash((self.field, self.integral_basis, self.inverted_primes, self.local_primes))

    def __repr__(self):
        if self.is_field:
            return 'RingSpec({}, field)'.format(self.field)
        if self.local_primes is not None:
            return 'RingSpec({}, local at {})'.format(self.field, sorted(self.local_primes))
        return 'RingSpec({}, S={})'.format(self.field, sorted(self.inverted_primes))


class PrincipalIdeal(object):
    """A principal (possibly fractional) ideal generator.R of a RingSpec."""

    def __init__(self, ring, generator):
        self.ring = ring
        self.generator = ring.field.convert(generator)
        if not self.generator:
            raise ZeroElement('An ideal generator must be nonzero')

    def same_ideal(self, other):
        return self.ring.is_unit(self.generator / other.generator)

    def contains(self, x):
        return self.ring.membership(self.ring.field.convert(x) / self.generator)

    def is_unit_ideal(self):
        return self.ring.is_unit(self.generator)

    def inverse(self):
        return PrincipalIdeal(self.ring, self.generator.inverse())

    def __mul__(self, other):
        return PrincipalIdeal(self.ring, self.generator * other.generator)

    def __repr__(self):
        return '({})R'.format(self.generator)
