"""Graded free modules over a QuotientRing and homogeneous maps between them.

A free module is recorded by its generator degrees: twists (d_0, ..., d_k)
stand for R(-d_0) + ... + R(-d_k). Elements are columns, that is dicts from
generator index to a polynomial in normal form.
"""

import logging
from collections import Counter

from orlov.errors import ValidationError
from orlov.linalg import ExactMatrix, RowEchelon
from orlov.polynomials import degree as poly_degree
from orlov.polynomials import is_homogeneous

logger = logging.getLogger(__name__)


def format_twist(shift, symbol='R'):
    if shift == 0:
        return symbol
    return '%s(%d)' % (symbol, shift)


def column_degree(column, twists):
    for index, entry in column.items():
        if entry:
            return poly_degree(entry) + twists[index]
    return None


class GradedFreeModule(object):

    """The free module sum R(-d_i), one generator of degree d_i each."""

    def __init__(self, ring, twists=()):
        self.ring = ring
        self.twists = tuple(int(d) for d in twists)

    @classmethod
    def zero(cls, ring):
        return cls(ring, ())

    def __len__(self):
        return len(self.twists)

    @property
    def rank(self):
        return len(self.twists)

    def __eq__(self, other):
        return (
            isinstance(other, GradedFreeModule) and
            self.twists == other.twists and self.ring == other.ring)

    def __ne__(self, other):
        return not self == other

    def __hash__(self):
        return hash((self.ring, self.twists))

    def __repr__(self):
        return '<GradedFreeModule %s>' % self.signature()

    def twist(self, shift):
        """M(shift): every generator degree drops by shift."""
        return GradedFreeModule(self.ring, [d - shift for d in self.twists])

    def dual(self):
        return GradedFreeModule(self.ring, [-d for d in self.twists])

    def direct_sum(self, other):
        return GradedFreeModule(self.ring, self.twists + other.twists)

    def restrict(self, indices):
        return GradedFreeModule(self.ring, [self.twists[i] for i in indices])

    def basis(self, degree):
        """k-basis of the degree piece as (generator, monomial) pairs."""
        return [
            (index, monom) for index, twist in enumerate(self.twists)
            for monom in self.ring.standard_monomials(degree - twist)]

    def dimension(self, degree):
        return sum(
            self.ring.hilbert_function(degree - twist)
            for twist in self.twists)

    def index(self, degree):
        return dict(
            (element, position)
            for position, element in enumerate(self.basis(degree)))

    def degree_of(self, generator):
        return self.twists[generator]

    def signature(self, symbol='R'):
        """Like 'R(-3)^2 ++ R(-4)^2'; summands ordered by |shift|."""
        if not self.twists:
            return '0'
        counts = Counter(-d for d in self.twists)
        pieces = []
        for shift in sorted(counts, key=lambda b: (abs(b), b)):
            piece = format_twist(shift, symbol)
            if counts[shift] > 1:
                piece += '^%d' % counts[shift]
            pieces.append(piece)
        return ' ++ '.join(pieces)

    def vector(self, column):
        """Coordinates of a column keyed by (generator, monomial)."""
        vector = {}
        for index, entry in column.items():
            for monom, coeff in entry.items():
                vector[(index, monom)] = int(coeff)
        return vector

    def normalize(self, column):
        ring = self.ring
        result = {}
        for index, entry in column.items():
            entry = ring.normal_form(ring.polynomial(entry))
            if entry:
                result[index] = entry
        return result

    def generator(self, index):
        return {index: self.ring.one}


class GradedMap(object):

    """A homogeneous degree-zero map between graded free modules.

    The matrix has one row per target generator and one column per source
    generator; entry (r, c) has degree source.twists[c] - target.twists[r].
    """

    def __init__(self, source, target, matrix=None, validate=True):
        if source.ring != target.ring:
            raise ValidationError(
                'source and target live over different rings')
        self.source = source
        self.target = target
        self.ring = source.ring
        ring = self.ring
        rows = []
        matrix = matrix or [[0] * source.rank for _ in range(target.rank)]
        if len(matrix) != target.rank:
            raise ValidationError(
                'matrix has %d rows, target has rank %d' % (
                    len(matrix), target.rank), field='matrix')
        for r, row in enumerate(matrix):
            if len(row) != source.rank:
                raise ValidationError(
                    'row %d has %d entries, source has rank %d' % (
                        r, len(row), source.rank), field='matrix')
            entries = []
            for c, entry in enumerate(row):
                field = 'matrix[%d][%d]' % (r, c)
                entry = ring.normal_form(ring.polynomial(entry, field=field))
                if validate and entry:
                    expected = source.twists[c] - target.twists[r]
                    if not is_homogeneous(entry) or \
                            poly_degree(entry) != expected:
                        raise ValidationError(
                            'entry %s is not homogeneous of degree %d' % (
                                ring.format(entry), expected), field=field)
                entries.append(entry)
            rows.append(entries)
        self.matrix = rows
        self._graph_basis = None

    @classmethod
    def from_columns(cls, source, target, columns, validate=True):
        ring = source.ring
        matrix = [[ring.zero for _ in range(source.rank)]
                  for _ in range(target.rank)]
        for c, column in enumerate(columns):
            for r, entry in column.items():
                matrix[r][c] = entry
        return cls(source, target, matrix, validate=validate)

    @classmethod
    def zero(cls, source, target):
        return cls(source, target)

    @classmethod
    def identity(cls, module):
        ring = module.ring
        return cls(module, module, [
            [ring.one if r == c else ring.zero for c in range(module.rank)]
            for r in range(module.rank)], validate=False)

    @property
    def shape(self):
        return (self.target.rank, self.source.rank)

    def __getitem__(self, key):
        row, col = key
        return self.matrix[row][col]

    def __eq__(self, other):
        return (
            isinstance(other, GradedMap) and self.source == other.source and
            self.target == other.target and self.matrix == other.matrix)

    def __ne__(self, other):
        return not self == other

    def __repr__(self):
        return '<GradedMap %s -> %s>' % (
            self.source.signature(), self.target.signature())

    def key(self):
        return (self.source.twists, self.target.twists, tuple(
            tuple(self.ring.format(entry) for entry in row)
            for row in self.matrix))

    def column(self, index):
        return dict(
            (r, row[index]) for r, row in enumerate(self.matrix) if row[index])

    def columns(self):
        return [self.column(c) for c in range(self.source.rank)]

    def is_zero(self):
        return not any(entry for row in self.matrix for entry in row)

    def unit_entries(self):
        """Positions (row, col) holding a nonzero constant."""
        return [
            (r, c) for r, row in enumerate(self.matrix)
            for c, entry in enumerate(row)
            if entry and poly_degree(entry) == 0]

    def apply(self, column):
        ring = self.ring
        image = {}
        for c, entry in column.items():
            if not entry:
                continue
            for r, row in enumerate(self.matrix):
                if row[c]:
                    image[r] = image.get(r, ring.zero) + row[c] * entry
        return self.target.normalize(image)

    def compose(self, other):
        """self after other."""
        if other.target != self.source:
            raise ValidationError('cannot compose %r after %r' % (self, other))
        return GradedMap.from_columns(
            other.source, self.target,
            [self.apply(column) for column in other.columns()],
            validate=False)

    def __mul__(self, other):
        return self.compose(other)

    def __add__(self, other):
        if (self.source, self.target) != (other.source, other.target):
            raise ValidationError('cannot add maps with different shapes')
        return GradedMap(self.source, self.target, [
            [a + b for a, b in zip(mine, theirs)]
            for mine, theirs in zip(self.matrix, other.matrix)],
            validate=False)

    def scale(self, factor):
        return GradedMap(self.source, self.target, [
            [entry * factor for entry in row] for row in self.matrix],
            validate=False)

    def __neg__(self):
        return self.scale(-1)

    def transpose(self):
        """The dual map target* -> source*."""
        return GradedMap(self.target.dual(), self.source.dual(), [
            [self.matrix[r][c] for r in range(self.target.rank)]
            for c in range(self.source.rank)], validate=False)

    def twist(self, shift):
        return GradedMap(
            self.source.twist(shift), self.target.twist(shift),
            [list(row) for row in self.matrix], validate=False)

    def submatrix(self, rows=None, cols=None):
        if rows is None:
            rows = range(self.target.rank)
        if cols is None:
            cols = range(self.source.rank)
        rows, cols = list(rows), list(cols)
        return GradedMap(
            self.source.restrict(cols), self.target.restrict(rows),
            [[self.matrix[r][c] for c in cols] for r in rows],
            validate=False)

    def hstack(self, other):
        """[self | other] out of the direct sum of the sources."""
        if self.target != other.target:
            raise ValidationError('hstack needs a common target')
        return GradedMap(
            self.source.direct_sum(other.source), self.target,
            [mine + theirs for mine, theirs in zip(self.matrix, other.matrix)],
            validate=False)

    def vstack(self, other):
        """The map into the direct sum of the targets."""
        if self.source != other.source:
            raise ValidationError('vstack needs a common source')
        return GradedMap(
            self.source, self.target.direct_sum(other.target),
            [list(row) for row in self.matrix + other.matrix],
            validate=False)

    def degree_piece(self, degree):
        return degree_piece_map(self, degree)


def degree_piece_map(f, degree):
    """The GF(p)-matrix of f between degree pieces, in basis order."""
    ring = f.ring
    source_basis = f.source.basis(degree)
    target_index = f.target.index(degree)
    matrix = ExactMatrix(len(target_index), len(source_basis), ring.p)
    for col, (generator, monom) in enumerate(source_basis):
        for r, row in enumerate(f.matrix):
            entry = row[generator]
            if not entry:
                continue
            image = ring.normal_form(entry.mul_monom(monom))
            for image_monom, coeff in image.items():
                matrix[target_index[(r, image_monom)], col] = int(coeff)
    return matrix


def minimal_generators(columns, module, modulo=()):
    """Indices of a minimal subset of columns generating their span.

    Works one degree at a time: a column is kept when it is not in the span
    of monomial multiples of the columns already kept and of modulo.
    Returned indices are ordered by degree, then position.
    """
    ring = module.ring
    twists = module.twists
    graded = []
    for index, column in enumerate(columns):
        d = column_degree(column, twists)
        if d is not None:
            graded.append((d, index))
    graded.sort()
    fixed = [(column_degree(m, twists), m) for m in modulo]
    fixed = [(d, m) for d, m in fixed if d is not None]
    kept = []
    position = 0
    while position < len(graded):
        current = graded[position][0]
        echelon = RowEchelon(ring.p)
        for d, column in fixed + [(d, columns[i]) for d, i in kept]:
            if d > current:
                continue
            for monom in ring.standard_monomials(current - d):
                echelon.add(module.vector(dict(
                    (g, ring.normal_form(entry.mul_monom(monom)))
                    for g, entry in column.items())))
        while position < len(graded) and graded[position][0] == current:
            index = graded[position][1]
            if echelon.add(module.vector(columns[index])):
                kept.append((current, index))
            position += 1
    logger.debug('kept %d of %d generators', len(kept), len(columns))
    return [index for _, index in kept]
