"""Polynomials over GF(p) with the standard grading.

A QuotientRing is S/I for S = GF(p)[x_0..x_n] with the grevlex order and a
homogeneous ideal I. Polynomials are sympy ring elements of S; an element of
S/I is represented by its normal form modulo a Groebner basis of I.
"""

import keyword
import logging
import re
import threading
from itertools import combinations_with_replacement
from tokenize import TokenError

from sympy import Pow, Symbol
from sympy.parsing.sympy_parser import parse_expr
from sympy.polys.domains import GF
from sympy.polys.groebnertools import groebner
from sympy.polys.orderings import grevlex
from sympy.polys.polyerrors import CoercionFailed
from sympy.polys.rings import PolyElement, PolyRing

from orlov import Configuration
from orlov.errors import ExponentOverflow, ValidationError
from orlov.linalg import PrimeField

logger = logging.getLogger(__name__)

MAX_EXPONENT = 2 ** 16 - 1
NAME = re.compile(r'^[A-Za-z_][A-Za-z0-9_]*$')


def degree(f):
    """Total degree of the leading monomial, None for the zero polynomial."""
    if not f:
        return None
    return sum(f.LM)


def is_homogeneous(f):
    degrees = set(sum(monom) for monom in f.itermonoms())
    return len(degrees) <= 1


def check_exponents(f, field=None):
    for monom in f.itermonoms():
        if monom and max(monom) > MAX_EXPONENT:
            raise ExponentOverflow(
                'exponent %d exceeds %d' % (max(monom), MAX_EXPONENT),
                field=field)
    return f


def multiply(f, g):
    return check_exponents(f * g)


def normal_form(f, gens):
    """Remainder of f on division by gens (all nonzero)."""
    gens = list(gens)
    if not gens or not f:
        return f.copy()
    return f.rem(gens)


class QuotientRing(object):

    """S/I with S = GF(p)[names] in grevlex and I homogeneous."""

    def __init__(self, names, ideal=(), characteristic=None,
                 configuration=None, _polys=None):
        self.configuration = configuration or Configuration()
        if characteristic is None:
            characteristic = self.configuration.characteristic
        self.field = PrimeField(characteristic)
        names = tuple(names)
        self._check_names(names)
        self.names = names
        if _polys is None:
            _polys = PolyRing(names, GF(self.field.p), grevlex)
        self.polys = _polys
        self._lock = threading.RLock()
        self._standard = {}
        self._index = {}
        generators = []
        for position, generator in enumerate(ideal):
            generator = self.polynomial(
                generator, field='ideal[%d]' % position)
            if not generator:
                continue
            if not is_homogeneous(generator):
                raise ValidationError(
                    'generator %s is not homogeneous' % self.format(generator),
                    field='ideal[%d]' % position)
            generators.append(generator)
        self.ideal = tuple(generators)
        if generators:
            basis = groebner(list(generators), self.polys)
        else:
            basis = []
        basis = sorted(
            (g.monic() for g in basis),
            key=lambda g: (sum(g.LM), self.polys.order(g.LM)))
        if any(sum(g.LM) == 0 for g in basis):
            raise ValidationError('the ideal is the unit ideal', field='ideal')
        self.ideal_basis = tuple(basis)
        self.leads = tuple(g.LM for g in basis)
        logger.debug(
            'ring %s: %d generators, Groebner basis of %d elements',
            ','.join(names), len(generators), len(basis))

    @staticmethod
    def _check_names(names):
        if not names:
            raise ValidationError('a ring needs at least one variable',
                                  field='vars')
        if len(set(names)) != len(names):
            raise ValidationError('repeated variable name', field='vars')
        for name in names:
            if not NAME.match(name) or keyword.iskeyword(name):
                raise ValidationError(
                    'invalid variable name %r' % (name,), field='vars')

    @property
    def p(self):
        return self.field.p

    @property
    def nvars(self):
        return len(self.names)

    @property
    def n(self):
        """Dimension of the ambient projective space."""
        return len(self.names) - 1

    @property
    def variables(self):
        return self.polys.gens

    @property
    def zero(self):
        return self.polys.zero

    @property
    def one(self):
        return self.polys.one

    def ambient(self):
        """The polynomial ring S sharing this ring's variables."""
        return QuotientRing(
            self.names, characteristic=self.p,
            configuration=self.configuration, _polys=self.polys)

    def is_polynomial_ring(self):
        return not self.ideal_basis

    def key(self):
        return (self.p, self.names,
                tuple(self.format(g) for g in self.ideal_basis))

    def __eq__(self, other):
        return isinstance(other, QuotientRing) and self.key() == other.key()

    def __ne__(self, other):
        return not self == other

    def __hash__(self):
        return hash(self.key())

    def __repr__(self):
        ideal = ', '.join(self.format(g) for g in self.ideal)
        return '<QuotientRing GF(%d)[%s]/(%s)>' % (
            self.p, ','.join(self.names), ideal)

    def polynomial(self, value, field=None):
        """Coerce ints, strings and ring elements into S."""
        if isinstance(value, PolyElement):
            if value.ring == self.polys:
                return value
            return self.parse(str(value.as_expr()), field=field)
        if isinstance(value, bool):
            raise ValidationError('not a polynomial: %r' % (value,),
                                  field=field)
        if isinstance(value, int):
            return self.polys.ground_new(value)
        if isinstance(value, str):
            return self.parse(value, field=field)
        raise ValidationError('not a polynomial: %r' % (value,), field=field)

    def parse(self, text, field=None):
        symbols = dict((name, Symbol(name)) for name in self.names)
        try:
            expr = parse_expr(text.replace('^', '**'), local_dict=symbols,
                              evaluate=True)
        except (SyntaxError, TypeError, ValueError, TokenError) as error:
            raise ValidationError(
                'cannot parse %r: %s' % (text, error), field=field)
        unknown = sorted(
            str(symbol) for symbol in getattr(expr, 'free_symbols', ())
            if str(symbol) not in symbols)
        if unknown:
            raise ValidationError(
                'unknown variable(s) %s in %r' % (', '.join(unknown), text),
                field=field)
        for power in getattr(expr, 'atoms', lambda *a: ())(Pow):
            exponent = power.exp
            if exponent.is_Integer and int(exponent) > MAX_EXPONENT:
                raise ExponentOverflow(
                    'exponent %s exceeds %d' % (exponent, MAX_EXPONENT),
                    field=field)
        try:
            poly = self.polys.from_expr(expr)
        except (CoercionFailed, ValueError, TypeError) as error:
            raise ValidationError(
                'not a polynomial over GF(%d): %r (%s)' % (
                    self.p, text, error), field=field)
        return check_exponents(poly, field=field)

    def format(self, f):
        if not f:
            return '0'
        pieces = []
        for monom, coeff in f.terms():
            value = self.field.symmetric(int(coeff))
            factors = []
            for name, exponent in zip(self.names, monom):
                if exponent == 1:
                    factors.append(name)
                elif exponent:
                    factors.append('%s^%d' % (name, exponent))
            magnitude = abs(value)
            if not factors:
                body = str(magnitude)
            elif magnitude == 1:
                body = '*'.join(factors)
            else:
                body = '%d*%s' % (magnitude, '*'.join(factors))
            if not pieces:
                pieces.append(body if value > 0 else '-' + body)
            else:
                pieces.append(('+ ' if value > 0 else '- ') + body)
        return ' '.join(pieces)

    def normal_form(self, f):
        return normal_form(f, self.ideal_basis)

    def reduce(self, value):
        return self.normal_form(self.polynomial(value))

    def is_standard(self, monom):
        divides = self.polys.monomial_div
        return all(divides(monom, lead) is None for lead in self.leads)

    def standard_monomials(self, degree):
        """Monomials of the given degree outside the lead ideal, descending."""
        if degree < 0:
            return []
        with self._lock:
            cached = self._standard.get(degree)
            if cached is not None:
                return cached
            count = len(self.names)
            monomials = []
            for choice in combinations_with_replacement(range(count), degree):
                exponents = [0] * count
                for variable in choice:
                    exponents[variable] += 1
                monom = tuple(exponents)
                if self.is_standard(monom):
                    monomials.append(monom)
            monomials.sort(key=self.polys.order, reverse=True)
            self._standard[degree] = monomials
            self._index[degree] = dict(
                (monom, index) for index, monom in enumerate(monomials))
            return monomials

    def monomial_index(self, degree):
        self.standard_monomials(degree)
        return self._index.get(degree, {})

    def hilbert_function(self, degree):
        return len(self.standard_monomials(degree))

    def coordinates(self, f):
        """The coefficients of a normal form as residues keyed by monomial."""
        return dict((monom, int(coeff)) for monom, coeff in f.items())

    def from_coordinates(self, coordinates):
        return self.polys.from_dict(coordinates)

    def monomial(self, monom, coefficient=1):
        return self.polys.from_dict({tuple(monom): coefficient})
