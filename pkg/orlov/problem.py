"""Problem files: a ring, one graded object and the command parameters.

A problem file is a single JSON document::

    {
      "schema": 1, "char": 32003, "vars": ["x", "y"], "ideal": ["x*y"],
      "module": {"target": [0], "source": [1], "matrix": [["x"]]},
      "parameters": {"t": 0}
    }

The object is either a "module" (the cokernel of a matrix whose rows are
indexed by the target twists and columns by the source twists) or a
"complex" of such modules with differentials between their covers.
"""

import json
import logging

from orlov import Configuration
from orlov.complexes import ModuleComplex
from orlov.errors import ValidationError
from orlov.freemodules import GradedFreeModule, GradedMap
from orlov.modules import PresentedModule
from orlov.polynomials import QuotientRing

logger = logging.getLogger(__name__)

SCHEMA = 1
INDENT = 2
PARAMETERS = ('t', 'ell', 'length', 'lo', 'hi', 'i', 'j', 'r')


def _require(data, name, kind, prefix=''):
    field = prefix + name
    if name not in data:
        raise ValidationError('missing field', field=field)
    value = data[name]
    if not isinstance(value, kind) or isinstance(value, bool):
        raise ValidationError(
            'expected %s, got %r' % (kind.__name__, value), field=field)
    return value


def _twists(data, name, prefix):
    twists = _require(data, name, list, prefix)
    for position, twist in enumerate(twists):
        if not isinstance(twist, int) or isinstance(twist, bool):
            raise ValidationError(
                'twists are integers, got %r' % (twist,),
                field='%s%s[%d]' % (prefix, name, position))
    return twists


def _entry(value, field):
    if isinstance(value, bool) or not isinstance(value, (str, int)):
        raise ValidationError(
            'matrix entries are polynomial strings, got %r' % (value,),
            field=field)
    return value


def _matrix(data, rows, cols, prefix):
    matrix = _require(data, 'matrix', list, prefix)
    if len(matrix) != rows:
        raise ValidationError(
            '%d rows given, %d expected' % (len(matrix), rows),
            field=prefix + 'matrix')
    for r, row in enumerate(matrix):
        field = '%smatrix[%d]' % (prefix, r)
        if not isinstance(row, list):
            raise ValidationError('rows are lists', field=field)
        if len(row) != cols:
            raise ValidationError(
                '%d entries given, %d expected' % (len(row), cols),
                field=field)
        for c, value in enumerate(row):
            _entry(value, '%s[%d]' % (field, c))
    return matrix


def _located(error, prefix):
    """Re-raise a ValidationError with the problem-file path of its field."""
    field = prefix + error.field if error.field else prefix.rstrip('.')
    return ValidationError(error.message, field=field, line=error.line)


class ProblemSpec(object):

    """A validated problem file."""

    def __init__(self, characteristic, names, ideal, module=None,
                 complex_=None, parameters=None):
        self.characteristic = characteristic
        self.names = list(names)
        self.ideal = list(ideal)
        self.module = module
        self.complex = complex_
        self.parameters = dict(parameters or {})

    @classmethod
    def from_text(cls, text):
        try:
            data = json.loads(text)
        except json.JSONDecodeError as error:
            raise ValidationError(error.msg, field='json', line=error.lineno)
        return cls.from_dict(data)

    @classmethod
    def load(cls, path):
        with open(path, 'r', encoding='utf-8') as problem_file:
            return cls.from_text(problem_file.read())

    @classmethod
    def from_dict(cls, data):
        if not isinstance(data, dict):
            raise ValidationError('a problem is a JSON object')
        schema = data.get('schema', SCHEMA)
        if schema != SCHEMA:
            raise ValidationError(
                'unsupported schema %r' % (schema,), field='schema')
        characteristic = data.get('char', Configuration().characteristic)
        if not isinstance(characteristic, int) or \
                isinstance(characteristic, bool):
            raise ValidationError('expected an integer prime', field='char')
        names = _require(data, 'vars', list)
        for position, name in enumerate(names):
            if not isinstance(name, str):
                raise ValidationError(
                    'variable names are strings',
                    field='vars[%d]' % position)
        ideal = data.get('ideal', [])
        if not isinstance(ideal, list):
            raise ValidationError('expected a list', field='ideal')
        for position, generator in enumerate(ideal):
            _entry(generator, 'ideal[%d]' % position)
        if ('module' in data) == ('complex' in data):
            raise ValidationError(
                'exactly one of "module" and "complex" is required',
                field='module')
        module = complex_ = None
        if 'module' in data:
            module = _require(data, 'module', dict)
            _check_module(module, 'module.')
        else:
            complex_ = _require(data, 'complex', dict)
            _check_complex(complex_)
        parameters = data.get('parameters', {})
        if not isinstance(parameters, dict):
            raise ValidationError('expected an object', field='parameters')
        for name, value in parameters.items():
            if name not in PARAMETERS:
                raise ValidationError(
                    'unknown parameter', field='parameters.%s' % name)
            if not isinstance(value, int) or isinstance(value, bool):
                raise ValidationError(
                    'expected an integer', field='parameters.%s' % name)
        spec = cls(characteristic, names, ideal, module, complex_, parameters)
        spec.build(spec.ring())
        logger.debug('validated %r', spec)
        return spec

    def __repr__(self):
        return '<ProblemSpec GF(%d)[%s] %s>' % (
            self.characteristic, ','.join(self.names),
            'module' if self.module is not None else 'complex')

    def as_dict(self):
        data = {
            'schema': SCHEMA, 'char': self.characteristic,
            'vars': list(self.names), 'ideal': list(self.ideal),
            'parameters': dict(self.parameters),
        }
        if self.module is not None:
            data['module'] = self.module
        else:
            data['complex'] = self.complex
        return data

    def updated(self, characteristic=None, parameters=None):
        """A copy with the prime replaced and parameters merged in."""
        merged = dict(self.parameters)
        merged.update(parameters or {})
        if characteristic is None:
            characteristic = self.characteristic
        return ProblemSpec(characteristic, self.names, self.ideal,
                           module=self.module, complex_=self.complex,
                           parameters=merged)

    def ring(self, configuration=None):
        """The quotient ring; the configuration may override the prime."""
        if configuration is None:
            configuration = Configuration(characteristic=self.characteristic)
        return QuotientRing(self.names, self.ideal,
                            configuration.characteristic, configuration)

    def build(self, ring):
        """The PresentedModule or ModuleComplex the file describes."""
        if self.module is not None:
            return _build_module(ring, self.module, 'module.')
        return _build_complex(ring, self.complex)

    def parameter(self, name, default=None):
        return self.parameters.get(name, default)

    def export(self, command, result):
        """Canonical JSON text embedding this problem."""
        document = {
            'command': command, 'problem': self.as_dict(), 'result': result}
        return json.dumps(document, sort_keys=True, indent=INDENT) + '\n'


def _check_module(data, prefix):
    target = _twists(data, 'target', prefix)
    source = _twists(data, 'source', prefix)
    if 'matrix' in data or source:
        _matrix(data, len(target), len(source), prefix)


def _check_complex(data):
    terms = _require(data, 'terms', list, 'complex.')
    seen = set()
    for position, term in enumerate(terms):
        prefix = 'complex.terms[%d].' % position
        if not isinstance(term, dict):
            raise ValidationError('terms are objects', field=prefix[:-1])
        degree = _require(term, 'degree', int, prefix)
        if degree in seen:
            raise ValidationError('repeated degree %d' % degree,
                                  field=prefix + 'degree')
        seen.add(degree)
        _check_module(_require(term, 'module', dict, prefix),
                      prefix + 'module.')
    for position, differential in enumerate(data.get('differentials', [])):
        prefix = 'complex.differentials[%d].' % position
        if not isinstance(differential, dict):
            raise ValidationError('differentials are objects',
                                  field=prefix[:-1])
        _require(differential, 'degree', int, prefix)
        _require(differential, 'matrix', list, prefix)


def _build_module(ring, data, prefix):
    source = data.get('source', [])
    matrix = data.get('matrix') or None
    try:
        relations = GradedMap(
            GradedFreeModule(ring, source),
            GradedFreeModule(ring, data['target']), matrix)
    except ValidationError as error:
        raise _located(error, prefix)
    return PresentedModule(relations)


def _build_complex(ring, data):
    terms = {}
    for position, term in enumerate(data['terms']):
        terms[term['degree']] = _build_module(
            ring, term['module'], 'complex.terms[%d].module.' % position)
    maps = {}
    for position, differential in enumerate(data.get('differentials', [])):
        prefix = 'complex.differentials[%d].' % position
        i = differential['degree']
        source = terms.get(i)
        target = terms.get(i + 1)
        if source is None or target is None:
            raise ValidationError(
                'no terms in degrees %d and %d' % (i, i + 1),
                field=prefix + 'degree')
        try:
            maps[i] = GradedMap(source.cover, target.cover,
                                differential['matrix'])
        except ValidationError as error:
            raise _located(error, prefix)
    try:
        complex_ = ModuleComplex(ring, terms, maps)
        complex_.validate()
    except ValidationError as error:
        raise _located(error, 'complex.')
    return complex_
