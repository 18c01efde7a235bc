"""Buchberger's algorithm for graded submodules of free modules.

Elements of a free module of rank r are ModuleElements, sparse maps from
component index to a polynomial of S. Leading terms use position over term:
the first nonzero component wins, then grevlex inside it. Computations over
R = S/I are done over S with I.e_c adjoined for every component, and results
are reduced to normal form modulo I afterwards.
"""

import heapq
import logging

from orlov.errors import ValidationError
from orlov.freemodules import GradedFreeModule, GradedMap, minimal_generators
from orlov.polynomials import is_homogeneous

logger = logging.getLogger(__name__)

OVER_S = 'S'
OVER_R = 'R'


class NoLift(object):

    """Falsy marker: the target is not in the image."""

    __slots__ = ()

    def __bool__(self):
        return False

    __nonzero__ = __bool__

    def __repr__(self):
        return 'NO_LIFT'


NO_LIFT = NoLift()


class ModuleElement(object):

    """An element sum f_c e_c of a free module over S."""

    __slots__ = ('terms', 'polys')

    def __init__(self, terms, polys):
        self.polys = polys
        self.terms = dict((c, f) for c, f in terms.items() if f)

    @classmethod
    def from_column(cls, column, polys, offset=0):
        return cls(dict((c + offset, f) for c, f in column.items()), polys)

    def to_column(self, offset=0, stop=None):
        return dict(
            (c - offset, f) for c, f in self.terms.items()
            if c >= offset and (stop is None or c < stop))

    def __repr__(self):
        return '<ModuleElement %s>' % ', '.join(
            'e%d*(%s)' % (c, self.terms[c].as_expr())
            for c in sorted(self.terms))

    def __eq__(self, other):
        return isinstance(other, ModuleElement) and self.terms == other.terms

    def __ne__(self, other):
        return not self == other

    def is_zero(self):
        return not self.terms

    @property
    def lead_component(self):
        return min(self.terms)

    @property
    def lead_monomial(self):
        return self.terms[min(self.terms)].LM

    @property
    def lead_coefficient(self):
        return self.terms[min(self.terms)].LC

    def degree(self, twists):
        c = self.lead_component
        return sum(self.terms[c].LM) + twists[c]

    def is_homogeneous(self, twists):
        degrees = set()
        for c, f in self.terms.items():
            if not is_homogeneous(f):
                return False
            degrees.add(sum(f.LM) + twists[c])
        return len(degrees) <= 1

    def __add__(self, other):
        terms = dict(self.terms)
        for c, f in other.terms.items():
            terms[c] = terms[c] + f if c in terms else f
        return ModuleElement(terms, self.polys)

    def __neg__(self):
        return ModuleElement(
            dict((c, -f) for c, f in self.terms.items()), self.polys)

    def __sub__(self, other):
        return self + (-other)

    def mul_monom(self, monom):
        return ModuleElement(
            dict((c, f.mul_monom(monom)) for c, f in self.terms.items()),
            self.polys)

    def mul_poly(self, poly):
        return ModuleElement(
            dict((c, f * poly) for c, f in self.terms.items()), self.polys)

    def monic(self):
        lead = self.lead_coefficient
        return ModuleElement(
            dict((c, f.quo_ground(lead)) for c, f in self.terms.items()),
            self.polys)

    def lead_term_element(self):
        c = self.lead_component
        term = self.polys.from_dict(
            {self.lead_monomial: self.lead_coefficient})
        return ModuleElement({c: term}, self.polys)

    def project(self, start, stop=None):
        return ModuleElement(self.to_column(start, stop), self.polys)

    def map(self, function):
        return ModuleElement(
            dict((c, function(f)) for c, f in self.terms.items()), self.polys)


class _Reducer(object):

    """Full reduction of module elements against a fixed list."""

    def __init__(self, polys, rank, basis=()):
        self.polys = polys
        self.rank = rank
        self.basis = []
        self._by_component = [[] for _ in range(rank)]
        for element in basis:
            self.add(element)

    def add(self, element):
        self._by_component[element.lead_component].append(len(self.basis))
        self.basis.append(element)

    def reduce(self, element, quotients=None):
        """Remainder of element; quotients collects the multipliers."""
        terms = dict(element.terms)
        zero = self.polys.zero
        for c in range(self.rank):
            poly = terms.get(c)
            indices = self._by_component[c]
            if not poly or not indices:
                continue
            divisors = [self.basis[k].terms[c] for k in indices]
            factors, remainder = poly.div(divisors)
            if remainder:
                terms[c] = remainder
            else:
                del terms[c]
            for k, factor in zip(indices, factors):
                if not factor:
                    continue
                if quotients is not None:
                    quotients[k] = quotients.get(k, zero) + factor
                for c2, other in self.basis[k].terms.items():
                    if c2 == c:
                        continue
                    value = terms.get(c2, zero) - factor * other
                    if value:
                        terms[c2] = value
                    else:
                        terms.pop(c2, None)
        return ModuleElement(terms, self.polys)


class GroebnerBasis(object):

    """A reduced Groebner basis of a graded submodule.

    basis holds every element, including the I.e_c adjoined when working
    over R; elements leaves those out.
    """

    def __init__(self, ring, twists, basis, over=OVER_R):
        self.ring = ring
        self.twists = tuple(twists)
        self.basis = list(basis)
        self.over = over
        self._reducer = _Reducer(ring.polys, len(self.twists), self.basis)

    def __len__(self):
        return len(self.basis)

    def __repr__(self):
        return '<GroebnerBasis over %s: %d elements in rank %d>' % (
            self.over, len(self.basis), len(self.twists))

    @property
    def leads(self):
        return [(g.lead_component, g.lead_monomial) for g in self.basis]

    @property
    def elements(self):
        if self.over == OVER_S:
            return list(self.basis)
        ring = self.ring
        return [
            g for g in self.basis
            if len(g.terms) > 1 or
            ring.normal_form(g.terms[g.lead_component])]

    def reduce(self, element, quotients=None):
        if not isinstance(element, ModuleElement):
            element = ModuleElement(element, self.ring.polys)
        return self._reducer.reduce(element, quotients)

    def contains(self, element):
        return self.reduce(element).is_zero()


def _pair_degree(first, second, twists, polys):
    lcm = polys.monomial_lcm(first.lead_monomial, second.lead_monomial)
    return sum(lcm) + twists[first.lead_component]


def _s_pair(first, second, polys):
    lcm = polys.monomial_lcm(first.lead_monomial, second.lead_monomial)
    return (
        first.mul_monom(polys.monomial_div(lcm, first.lead_monomial)) -
        second.mul_monom(polys.monomial_div(lcm, second.lead_monomial)))


def _ideal_multiples(ring, rank):
    return [
        ModuleElement({c: g}, ring.polys)
        for c in range(rank) for g in ring.ideal_basis]


def buchberger(gens, ring, twists, over=OVER_R):
    """Reduced Groebner basis of the submodule generated by gens.

    Pairs are treated in order of degree, with the coprime-lead criterion
    for single-component elements and the chain criterion.
    """
    polys = ring.polys
    twists = tuple(twists)
    rank = len(twists)
    gens = [g for g in gens if not g.is_zero()]
    for position, g in enumerate(gens):
        if not g.is_homogeneous(twists):
            raise ValidationError(
                'generator %d is not homogeneous' % position, field='gens')
    if over == OVER_R:
        gens = gens + _ideal_multiples(ring, rank)
    basis = []
    reducer = _Reducer(polys, rank)
    pending = set()
    queue = [(g.degree(twists), 0, index, 0) for index, g in enumerate(gens)]
    heapq.heapify(queue)
    zero_monom = polys.zero_monom
    skipped = 0
    while queue:
        _, kind, i, j = heapq.heappop(queue)
        if kind:
            if (i, j) not in pending:
                continue
            pending.discard((i, j))
            first, second = basis[i], basis[j]
            lcm = polys.monomial_lcm(first.lead_monomial, second.lead_monomial)
            if len(first.terms) == 1 and len(second.terms) == 1 and \
                    polys.monomial_gcd(first.lead_monomial,
                                       second.lead_monomial) == zero_monom:
                skipped += 1
                continue
            if _chain_criterion(basis, pending, i, j, lcm, polys):
                skipped += 1
                continue
            element = _s_pair(first, second, polys)
        else:
            element = gens[i]
        element = reducer.reduce(element)
        if element.is_zero():
            continue
        element = element.monic()
        new = len(basis)
        basis.append(element)
        reducer.add(element)
        for old in range(new):
            if basis[old].lead_component == element.lead_component:
                pending.add((old, new))
                heapq.heappush(queue, (
                    _pair_degree(basis[old], element, twists, polys),
                    1, old, new))
    basis = _interreduce(_minimalize(basis, polys), polys, rank)
    logger.debug(
        'Groebner basis over %s: %d elements, %d pairs skipped',
        over, len(basis), skipped)
    return GroebnerBasis(ring, twists, basis, over)


def _chain_criterion(basis, pending, i, j, lcm, polys):
    component = basis[i].lead_component
    for k, other in enumerate(basis):
        if k in (i, j) or other.lead_component != component:
            continue
        if polys.monomial_div(lcm, other.lead_monomial) is None:
            continue
        if (min(i, k), max(i, k)) in pending or \
                (min(j, k), max(j, k)) in pending:
            continue
        return True
    return False


def _minimalize(basis, polys):
    kept = []
    for i, element in enumerate(basis):
        redundant = False
        for j, other in enumerate(basis):
            if i == j or other.lead_component != element.lead_component:
                continue
            if polys.monomial_div(
                    element.lead_monomial, other.lead_monomial) is None:
                continue
            if other.lead_monomial != element.lead_monomial or j < i:
                redundant = True
                break
        if not redundant:
            kept.append(element)
    return kept


def _interreduce(basis, polys, rank):
    reducer = _Reducer(polys, rank, basis)
    result = []
    for element in basis:
        lead = element.lead_term_element()
        tail = reducer.reduce(element - lead)
        result.append(lead + tail)
    result.sort(key=lambda g: (
        g.lead_component, polys.order(g.lead_monomial)))
    return result


def _over(ring, over):
    if over is None:
        return OVER_S if ring.is_polynomial_ring() else OVER_R
    return over


def groebner_basis(columns, module, over=None):
    """Groebner basis of the submodule of module spanned by columns."""
    ring = module.ring
    gens = [ModuleElement.from_column(c, ring.polys) for c in columns]
    return buchberger(gens, ring, module.twists, _over(ring, over))


def syzygies(gb):
    """Generators of the syzygies among gb.elements.

    Returns (free module, columns): one generator per element of
    gb.elements, twisted by its degree, and the syzygy columns in it.
    """
    ring = gb.ring
    polys = ring.polys
    elements = gb.elements
    degrees = [g.degree(gb.twists) for g in elements]
    free = GradedFreeModule(ring, degrees)
    if gb.over == OVER_R:
        columns = [g.to_column() for g in elements]
        inclusion = GradedMap.from_columns(
            free, GradedFreeModule(ring, gb.twists), columns)
        kernel = kernel_of_map(inclusion, over=OVER_R)
        return free, kernel.columns()
    reducer = _Reducer(polys, len(gb.twists), elements)
    result = []
    for i, first in enumerate(elements):
        for j in range(i + 1, len(elements)):
            second = elements[j]
            if first.lead_component != second.lead_component:
                continue
            lcm = polys.monomial_lcm(
                first.lead_monomial, second.lead_monomial)
            left = polys.monomial_div(lcm, first.lead_monomial)
            right = polys.monomial_div(lcm, second.lead_monomial)
            quotients = {}
            remainder = reducer.reduce(_s_pair(first, second, polys),
                                       quotients)
            if not remainder.is_zero():
                raise ValidationError('syzygies need a Groebner basis')
            column = dict((k, -q) for k, q in quotients.items())
            column[i] = column.get(i, polys.zero) + polys.from_dict({left: 1})
            column[j] = column.get(j, polys.zero) - polys.from_dict({right: 1})
            column = dict((k, f) for k, f in column.items() if f)
            if column:
                result.append(column)
    return free, result


def _graph_basis(f, over):
    """Groebner basis of the graph of f, target components first."""
    cached = f._graph_basis
    if cached is not None and cached.over == over:
        return cached
    ring = f.ring
    offset = f.target.rank
    twists = f.target.twists + f.source.twists
    gens = []
    for j in range(f.source.rank):
        column = f.column(j)
        column[offset + j] = ring.one
        gens.append(ModuleElement(column, ring.polys))
    basis = buchberger(gens, ring, twists, over)
    f._graph_basis = basis
    return basis


def kernel_of_map(f, over=None):
    """Inclusion of ker f, with minimal homogeneous generators."""
    ring = f.ring
    over = _over(ring, over)
    if f.is_zero():
        return GradedMap.identity(f.source)
    offset = f.target.rank
    basis = _graph_basis(f, over)
    normal = ring.normal_form if over == OVER_R else (lambda g: g)
    candidates = []
    for element in basis.basis:
        if element.lead_component < offset:
            continue
        column = {}
        for c, entry in element.to_column(offset).items():
            entry = normal(entry)
            if entry:
                column[c] = entry
        if column:
            candidates.append(column)
    chosen = minimal_generators(candidates, f.source)
    columns = [candidates[i] for i in chosen]
    degrees = [
        min(sum(entry.LM) + f.source.twists[c] for c, entry in col.items())
        for col in columns]
    kernel = GradedFreeModule(ring, degrees)
    logger.debug('kernel of %r has %d generators', f, len(columns))
    return GradedMap.from_columns(kernel, f.source, columns)


def lift(target, through, over=None):
    """A column x with through(x) = target, or NO_LIFT."""
    ring = through.ring
    over = _over(ring, over)
    target = through.target.normalize(target)
    if not target:
        return {}
    offset = through.target.rank
    basis = _graph_basis(through, over)
    remainder = basis.reduce(ModuleElement(target, ring.polys))
    normal = ring.normal_form if over == OVER_R else (lambda g: g)
    if any(normal(entry) for entry in remainder.to_column(0, offset).values()):
        return NO_LIFT
    return through.source.normalize(dict(
        (c, -entry) for c, entry in remainder.to_column(offset).items()))
