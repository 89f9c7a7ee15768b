"""JSON documents for rings, algebras, Hopf algebras, comodules, bundles and torsors.

A document is a JSON object with a `type` key. Sub-objects are either inlined or
referenced by a path relative to the referencing document. Structure arrays may
be flat or nested; their entries are integers, 'p/q' strings or polynomial
expressions in the field generator, such as "z - z^2 + 1/2".
"""
import json
import os
from tokenize import TokenError

import numpy as np
from sympy import Poly, Symbol, SympifyError
from sympy.parsing.sympy_parser import parse_expr
from sympy.polys.polyerrors import PolynomialError

from .algebra import FiniteAlgebra
from .comodule import Comodule
from .errors import ExpressionError, SchemaError, DimensionMismatch
from .hopf import HopfAlgebra
from .phs import PHS
from .ring import NumberField, RingSpec, format_rational, to_qq
from .symbundle import SymBundle

SCHEMA_VERSION = '1'


class ExpressionParser(object):
    """Parses polynomial expressions in the generator of a number field.

    Sums, products, integer powers and rational literals are accepted, plus
    named constants that are themselves expressions.

    Args:
        field: NumberField
        constants: map from name to expression
    """

    def __init__(self, field, constants=None):
        self.field = field
        self.symbol = Symbol(field.symbol)
        self.constants = {}
        for name, expression in (constants or {}).items():
            self.constants[name] = self._to_sympy(expression)

    def _to_sympy(self, expression):
        local = {self.field.symbol: self.symbol}
        local.update(self.constants)
        try:
            return parse_expr(str(expression).replace('^', '**'), local_dict=local)
        except (SyntaxError, TypeError, SympifyError, TokenError) as e:
            raise ExpressionError('Cannot parse {!r}: {}'.format(expression, e))

    def parse(self, expression):
        expr = self._to_sympy(expression)
        try:
            poly = Poly(expr, self.symbol)
        except PolynomialError:
            raise ExpressionError('{!r} is not a polynomial in {}'.format(expression, self.field.symbol))
        unknown = poly.free_symbols - {self.symbol}
        if unknown:
            raise ExpressionError('Unknown names in {!r}: {}'.format(
                expression, ', '.join(sorted(str(s) for s in unknown))))
        if not all(c.is_Rational for c in poly.all_coeffs()):
            raise ExpressionError('{!r} has non-rational coefficients'.format(expression))
        return self.field.element([to_qq(c) for c in reversed(poly.all_coeffs())])

    def element(self, value):
        """Interpret a JSON scalar as a field element."""
        if isinstance(value, bool) or value is None or isinstance(value, (list, dict)):
            raise SchemaError('Not a field element: {!r}'.format(value))
        if isinstance(value, int):
            return self.field.convert(value)
        if isinstance(value, float):
            raise SchemaError('Floating point value {!r}; write rationals as "p/q"'.format(value))
        return self.parse(value)

    def array(self, values, shape):
        """A flat or nested JSON array of elements, reshaped to the given shape."""
        try:
            flat = np.array(values, dtype=object).reshape(-1)
        except ValueError:
            raise DimensionMismatch('Ragged array where shape {} was expected'.format(shape))
        size = int(np.prod(shape))
        if flat.shape[0] != size:
            raise DimensionMismatch('Expected {} entries for shape {}, got {}'.format(size, shape, flat.shape[0]))
        result = np.empty(size, dtype=object)
        for i, value in enumerate(flat):
            result[i] = self.element(value)
        return result.reshape(shape)


class DocumentParser(object):
    """Reads a JSON document and every document it references.

    Loaded objects are cached by absolute path, so that two documents referencing
    the same Hopf algebra share one object.

    Args:
        input_file: path of the root document
        cache: map from absolute path to parsed object, shared with referenced documents
        constants: map from ring to its named constants, shared the same way
    """

    def __init__(self, input_file, cache=None, constants=None):
        self.input_file = input_file
        self.cache = cache if cache is not None else {}
        self.constants = constants if constants is not None else {}
        self.document = None

    def _validate_file(self):
        if not os.path.isfile(self.input_file):
            raise SchemaError('File does not exist: {}'.format(self.input_file))
        if not self.input_file.endswith('.json'):
            raise SchemaError('File is not a .json: {}'.format(self.input_file))

    def _parse_file(self):
        with open(self.input_file) as infile:
            try:
                self.document = json.load(infile)
            except ValueError as e:
                raise SchemaError('Invalid JSON in {}: {}'.format(self.input_file, e))
        if not isinstance(self.document, dict):
            raise SchemaError('Document {} is not a JSON object'.format(self.input_file))

    def parse(self):
        """Parse the document into a RingSpec, FiniteAlgebra, HopfAlgebra, Comodule, SymBundle, PHS or Manifest."""
        key = os.path.abspath(self.input_file)
        if key in self.cache:
            return self.cache[key]
        self._validate_file()
        self._parse_file()
        result = self.build(self.document)
        self.cache[key] = result
        return result

    def build(self, document, expected=None):
        kind = document.get('type', expected)
        if kind not in BUILT_CLASSES:
            raise SchemaError('Unknown document type: {!r}'.format(kind))
        if expected is not None and kind != expected:
            raise SchemaError('Expected a {} document, got {}'.format(expected, kind))
        version = str(document.get('version', SCHEMA_VERSION))
        if version != SCHEMA_VERSION:
            raise SchemaError('Unsupported schema version {}'.format(version))
        return getattr(self, '_build_{}'.format(kind))(document)

    def reference(self, value, expected):
        """Resolve an inline object or a path relative to this document."""
        if isinstance(value, dict):
            return self.build(value, expected)
        if not isinstance(value, str):
            raise SchemaError('Expected a {} object or path, got {!r}'.format(expected, value))
        path = os.path.join(os.path.dirname(self.input_file), value)
        result = DocumentParser(path, self.cache, self.constants).parse()
        if not isinstance(result, BUILT_CLASSES[expected]):
            raise SchemaError('{} is not a {} document'.format(value, expected))
        return result

    def expressions(self, ring):
        return ExpressionParser(ring.field, self.constants.get(ring))

    def element(self, ring, value):
        return self.expressions(ring).element(value)

    def _require(self, document, *keys):
        missing = [key for key in keys if key not in document]
        if missing:
            raise SchemaError('Missing keys in {} document: {}'.format(
                document.get('type', 'a'), ', '.join(missing)))

    # Builders

    def _build_ring(self, document):
        self._require(document, 'min_poly')
        field = NumberField(document['min_poly'], document.get('symbol', 'z'))
        ring = RingSpec(field, integral_basis=document.get('basis'),
                        inverted_primes=document.get('inverted_primes'),
                        local_primes=document.get('local_primes'))
        constants = document.get('constants', {})
        if not isinstance(constants, dict):
            raise SchemaError('Ring constants must be a map from name to expression')
        self.constants[ring] = dict(self.constants.get(ring, {}), **constants)
        return ring

    def _build_algebra(self, document):
        self._require(document, 'ring', 'rank', 'mult', 'unit')
        ring = self.reference(document['ring'], 'ring')
        n = int(document['rank'])
        parser = self.expressions(ring)
        return FiniteAlgebra(ring, parser.array(document['mult'], (n, n, n)), parser.array(document['unit'], (n,)))

    def _build_hopf(self, document):
        self._require(document, 'comult', 'counit', 'antipode')
        alg = self._build_algebra(document)
        n = alg.rank
        parser = self.expressions(alg.base)
        return HopfAlgebra(alg, parser.array(document['comult'], (n, n, n)),
                           list(parser.array(document['counit'], (n,))),
                           parser.array(document['antipode'], (n, n)))

    def _build_comodule(self, document):
        self._require(document, 'hopf', 'rank', 'coaction')
        hopf = self.reference(document['hopf'], 'hopf')
        m = int(document['rank'])
        return Comodule(hopf, self.expressions(hopf.base).array(document['coaction'], (m, m * hopf.rank)))

    def _build_bundle(self, document):
        self._require(document, 'gram')
        if 'module' in document:
            module = self.reference(document['module'], 'comodule')
            ring, m = module.hopf.base, module.rank
        else:
            self._require(document, 'ring', 'rank')
            module = None
            ring = self.reference(document['ring'], 'ring')
            m = int(document['rank'])
        return SymBundle(self.expressions(ring).array(document['gram'], (m, m)), module=module, ring=ring)

    def _build_phs(self, document):
        self._require(document, 'hopf', 'rank', 'mult', 'unit', 'coaction')
        hopf = self.reference(document['hopf'], 'hopf')
        m = int(document['rank'])
        parser = self.expressions(hopf.base)
        alg = FiniteAlgebra(hopf.base, parser.array(document['mult'], (m, m, m)), parser.array(document['unit'], (m,)))
        return PHS(alg, Comodule(hopf, parser.array(document['coaction'], (m, m * hopf.rank))))

    def _build_manifest(self, document):
        self._require(document, 'objects', 'commands')
        base = os.path.dirname(self.input_file)
        objects = {}
        for name, path in document['objects'].items():
            if not isinstance(path, str):
                raise SchemaError('Manifest object {} must be a path'.format(name))
            objects[name] = os.path.join(base, path)
            if not os.path.isfile(objects[name]):
                raise SchemaError('Manifest object {} does not resolve: {}'.format(name, path))
        commands = []
        for command in document['commands']:
            if not isinstance(command, list) or not all(isinstance(token, str) for token in command):
                raise SchemaError('Manifest commands are lists of strings, got {!r}'.format(command))
            commands.append([objects.get(token, token) for token in command])
        return Manifest(str(document.get('version', SCHEMA_VERSION)), objects, commands)


class Manifest(object):
    """Named object paths and an ordered list of command lines that use them."""

    def __init__(self, version, objects, commands):
        self.version = version
        self.objects = objects
        self.commands = commands


BUILT_CLASSES = {
    'ring': RingSpec,
    'algebra': FiniteAlgebra,
    'hopf': HopfAlgebra,
    'comodule': Comodule,
    'bundle': SymBundle,
    'phs': PHS,
    'manifest': Manifest,
}


# Writers

def encode_element(x):
    """A rational as 'p/q', anything else as a polynomial expression."""
    if not any(x.coords[1:]):
        return format_rational(x.coords[0])
    return repr(x)


def _encode(array):
    return [encode_element(x) for x in np.asarray(array, dtype=object).reshape(-1)]


def ring_document(ring):
    document = {
        'type': 'ring',
        'version': SCHEMA_VERSION,
        'min_poly': [format_rational(c) for c in ring.field.min_poly],
        'symbol': ring.field.symbol,
        'basis': [[format_rational(c) for c in row] for row in ring.integral_basis],
    }
    if ring.is_field:
        document['inverted_primes'] = 'all'
    elif ring.local_primes is not None:
        document['local_primes'] = sorted(ring.local_primes)
    else:
        document['inverted_primes'] = sorted(ring.inverted_primes)
    return document


def hopf_document(H):
    n = H.rank
    return {
        'type': 'hopf',
        'version': SCHEMA_VERSION,
        'ring': ring_document(H.base),
        'rank': n,
        'mult': _encode(H.alg.mult),
        'unit': _encode(H.alg.unit),
        'comult': _encode(H.comult.reshape(n, n * n)),
        'counit': _encode(H.counit),
        'antipode': _encode(H.antipode),
    }


def comodule_document(M, hopf_ref=None):
    return {
        'type': 'comodule',
        'version': SCHEMA_VERSION,
        'hopf': hopf_ref or hopf_document(M.hopf),
        'rank': M.rank,
        'coaction': _encode(M.flattened()),
    }


def phs_document(P, hopf_ref=None):
    return {
        'type': 'phs',
        'version': SCHEMA_VERSION,
        'hopf': hopf_ref or hopf_document(P.hopf),
        'rank': P.alg.rank,
        'mult': _encode(P.alg.mult),
        'unit': _encode(P.alg.unit),
        'coaction': _encode(P.comodule.flattened()),
    }


def bundle_document(b, module_ref=None):
    document = {'type': 'bundle', 'version': SCHEMA_VERSION, 'gram': _encode(b.gram)}
    if b.module is not None:
        document['module'] = module_ref or comodule_document(b.module)
    else:
        document['ring'] = ring_document(b.ring)
        document['rank'] = b.rank
    return document


def load(path, cache=None, constants=None):
    """Parse the document at path, sharing the cache of already built documents."""
    return DocumentParser(path, cache, constants).parse()
