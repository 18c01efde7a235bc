"""Finitely generated graded modules given by presentations.

A PresentedModule is the cokernel of a homogeneous map G -> F of graded
free modules over a QuotientRing. Hilbert functions are computed degree by
degree with exact linear algebra.
"""

import logging
import threading
from abc import ABCMeta, abstractmethod

from orlov.errors import ValidationError
from orlov.freemodules import (
    GradedFreeModule, GradedMap, degree_piece_map, minimal_generators)
from orlov.groebner import kernel_of_map, lift, NO_LIFT
from orlov.linalg import rank

logger = logging.getLogger(__name__)

__all__ = [
    'GradedModule', 'PresentedModule', 'TruncatedModule', 'degree_piece_map',
    'hilbert_function', 'minimal_presentation', 'truncate_module']


class GradedModule(metaclass=ABCMeta):

    """Interface shared by presented modules and truncated twists."""

    ring = None

    @abstractmethod
    def hilbert_function(self, degree):
        """Dimension of the degree piece."""

    @abstractmethod
    def presentation(self):
        """An equivalent PresentedModule."""

    @abstractmethod
    def twist(self, shift):
        """The module M(shift)."""

    @abstractmethod
    def signature(self, symbol='R'):
        """Short human-readable description."""

    def hilbert_table(self, lo, hi):
        return dict(
            (degree, self.hilbert_function(degree))
            for degree in range(lo, hi + 1))

    def vanishes_on(self, lo, hi):
        return not any(self.hilbert_table(lo, hi).values())


class PresentedModule(GradedModule):

    """coker(relations: G -> F), F being the cover."""

    def __init__(self, relations):
        self.relations = relations
        self.cover = relations.target
        self.ring = relations.ring
        self._lock = threading.RLock()
        self._hilbert = {}
        self._minimal = None

    @classmethod
    def free(cls, module):
        return cls(GradedMap.zero(
            GradedFreeModule(module.ring, ()), module))

    @classmethod
    def zero(cls, ring):
        return cls.free(GradedFreeModule(ring, ()))

    @classmethod
    def from_matrix(cls, ring, target, source, matrix):
        return cls(GradedMap(
            GradedFreeModule(ring, source), GradedFreeModule(ring, target),
            matrix))

    @classmethod
    def quotient(cls, ring, generators):
        """R/(generators) for homogeneous generators."""
        generators = [ring.polynomial(g) for g in generators]
        degrees = []
        for position, g in enumerate(generators):
            g = ring.normal_form(g)
            degrees.append(sum(g.LM) if g else 0)
        return cls.from_matrix(ring, [0], degrees, [generators])

    def __repr__(self):
        return '<PresentedModule %s>' % self.signature()

    def is_free(self):
        return self.relations.is_zero()

    def signature(self, symbol='R'):
        if self.is_free():
            return self.cover.signature(symbol)
        return 'coker(%s -> %s)' % (
            self.relations.source.signature(symbol),
            self.cover.signature(symbol))

    def presentation(self):
        return self

    def twist(self, shift):
        return PresentedModule(self.relations.twist(shift))

    def direct_sum(self, other):
        ring = self.ring
        mine, theirs = self.relations, other.relations
        matrix = [
            row + [ring.zero] * theirs.source.rank for row in mine.matrix]
        matrix += [
            [ring.zero] * mine.source.rank + row for row in theirs.matrix]
        return PresentedModule(GradedMap(
            mine.source.direct_sum(theirs.source),
            mine.target.direct_sum(theirs.target), matrix, validate=False))

    def hilbert_function(self, degree):
        with self._lock:
            value = self._hilbert.get(degree)
            if value is None:
                value = self.cover.dimension(degree)
                if value and self.relations.source.rank:
                    value -= rank(
                        degree_piece_map(self.relations, degree),
                        self.ring.configuration.dense_threshold)
                self._hilbert[degree] = value
            return value

    def minimal_presentation(self):
        with self._lock:
            if self._minimal is None:
                self._minimal = minimal_presentation(self)
            return self._minimal

    def is_zero(self):
        return self.minimal_presentation().cover.rank == 0

    def initial_degree(self):
        """Smallest generator degree, None for the zero module."""
        twists = self.minimal_presentation().cover.twists
        return min(twists) if twists else None

    def top_degree(self):
        twists = self.minimal_presentation().cover.twists
        return max(twists) if twists else None

    def contains(self, column):
        """Whether a column of the cover is zero in the module."""
        column = self.cover.normalize(column)
        if not column:
            return True
        if not self.relations.source.rank:
            return False
        return lift(column, self.relations) is not NO_LIFT

    def key(self):
        return self.relations.key()


def _cancel_units(relations):
    """Drop generator/relation pairs joined by a unit entry."""
    ring = relations.ring
    matrix = [list(row) for row in relations.matrix]
    rows = list(range(relations.target.rank))
    cols = list(range(relations.source.rank))
    while True:
        unit = None
        for r in range(len(rows)):
            for c in range(len(cols)):
                entry = matrix[r][c]
                if entry and sum(entry.LM) == 0:
                    unit = (r, c)
                    break
            if unit:
                break
        if unit is None:
            break
        r, c = unit
        inverse = ring.field.inverse(int(matrix[r][c].LC))
        pivot_row = matrix[r]
        updated = []
        for r2, row in enumerate(matrix):
            if r2 == r:
                continue
            factor = row[c]
            if factor:
                scaled = factor * inverse
                row = [
                    ring.normal_form(entry - scaled * pivot)
                    if pivot else entry
                    for entry, pivot in zip(row, pivot_row)]
            updated.append(row[:c] + row[c + 1:])
        matrix = updated
        del rows[r]
        del cols[c]
    return GradedMap(
        relations.source.restrict(cols), relations.target.restrict(rows),
        matrix, validate=False), rows


def _minimize(module):
    relations, rows = _cancel_units(module.relations)
    columns = relations.columns()
    chosen = minimal_generators(columns, relations.target)
    source = relations.source.restrict(chosen)
    minimal = PresentedModule(GradedMap.from_columns(
        source, relations.target, [columns[i] for i in chosen],
        validate=False))
    logger.debug(
        'minimal presentation %s (from %s)', minimal.signature(),
        module.signature())
    return minimal, rows


def minimal_presentation(module):
    """An isomorphic presentation with no unit entries."""
    return _minimize(module)[0]


def truncation(module, s):
    """M_{>=s} together with the map from its cover into the cover of M."""
    module = module.presentation()
    ring = module.ring
    cover = module.cover
    if all(d >= s for d in cover.twists):
        return module, GradedMap.identity(cover)
    twists = []
    columns = []
    for index, d in enumerate(cover.twists):
        if d >= s:
            twists.append(d)
            columns.append({index: ring.one})
            continue
        for monom in ring.standard_monomials(s - d):
            twists.append(s)
            columns.append({index: ring.monomial(monom)})
    generators = GradedFreeModule(ring, twists)
    inclusion = GradedMap.from_columns(generators, cover, columns,
                                       validate=False)
    relations = kernel_of_map(inclusion.hstack(module.relations))
    projected = [
        dict((c, f) for c, f in column.items() if c < generators.rank)
        for column in relations.columns()]
    projected = [column for column in projected if column]
    source = GradedFreeModule(ring, [
        min(sum(f.LM) + twists[c] for c, f in column.items())
        for column in projected])
    truncated, rows = _minimize(PresentedModule(GradedMap.from_columns(
        source, generators, projected, validate=False)))
    return truncated, inclusion.submatrix(cols=rows)


def truncate_module(module, s):
    """A presentation of the submodule M_{>=s} of M."""
    return truncation(module, s)[0]


def hilbert_function(module, lo, hi):
    if lo > hi:
        raise ValidationError('empty degree window [%d, %d]' % (lo, hi))
    return module.hilbert_table(lo, hi)


class TruncatedModule(GradedModule):

    """The truncated twist M(shift)_{>=s}, kept symbolic until presented."""

    def __init__(self, base, shift, s):
        self.base = base
        self.shift = shift
        self.s = s
        self.ring = base.ring
        self._presentation = None

    def __repr__(self):
        return '<TruncatedModule %s>' % self.signature()

    def __eq__(self, other):
        return (
            isinstance(other, TruncatedModule) and
            (self.shift, self.s) == (other.shift, other.s) and
            self.base.key() == other.base.key())

    def __ne__(self, other):
        return not self == other

    def hilbert_function(self, degree):
        if degree < self.s:
            return 0
        return self.base.hilbert_function(self.shift + degree)

    def twist(self, shift):
        return TruncatedModule(self.base, self.shift + shift, self.s - shift)

    def presentation(self):
        if self._presentation is None:
            self._presentation = truncate_module(
                self.base.twist(self.shift), self.s)
        return self._presentation

    def signature(self, symbol='R'):
        twisted = self.base.twist(self.shift)
        if twisted.is_free():
            body = twisted.cover.signature(symbol)
        else:
            body = '(%s)' % twisted.signature(symbol)
        return '%s_{>=%d}' % (body, self.s)
