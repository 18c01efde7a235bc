"""Exact linear algebra over a prime field GF(p).

Every degreewise computation in orlov ends up here: graded pieces of
homogeneous maps become sparse matrices of residues, and ranks, kernels and
solutions are computed exactly. Residues are plain Python ints in [0, p).
Large, dense pieces are handed to numpy, which is exact for p < 2**31.
"""

import heapq
import logging

import numpy
from sympy import isprime

from orlov import DENSE_THRESHOLD
from orlov.errors import ValidationError

logger = logging.getLogger(__name__)

DENSE_LIMIT = 2 ** 31


class NoSolution(object):

    """Falsy marker: the linear system has no solution."""

    __slots__ = ()

    def __bool__(self):
        return False

    __nonzero__ = __bool__

    def __repr__(self):
        return 'NO_SOLUTION'


NO_SOLUTION = NoSolution()


class PrimeField(object):

    """The field GF(p); elements are ints reduced into [0, p)."""

    def __init__(self, p):
        if isinstance(p, bool) or not isinstance(p, int) or p < 2 or \
                not isprime(p):
            raise ValidationError(
                'characteristic must be a prime, got %r' % (p,), field='char')
        self.p = p

    def __eq__(self, other):
        return isinstance(other, PrimeField) and other.p == self.p

    def __ne__(self, other):
        return not self == other

    def __hash__(self):
        return hash(('GF', self.p))

    def __repr__(self):
        return 'GF(%d)' % self.p

    def element(self, value):
        return int(value) % self.p

    def inverse(self, value):
        value = int(value) % self.p
        if not value:
            raise ZeroDivisionError('0 has no inverse in GF(%d)' % self.p)
        return pow(value, self.p - 2, self.p)

    def symmetric(self, value):
        """Representative in (-p/2, p/2], used for printing."""
        value = int(value) % self.p
        if value > self.p // 2:
            return value - self.p
        return value


class ExactMatrix(object):

    """Sparse rows x cols matrix over GF(p) without stored zeros."""

    def __init__(self, rows, cols, p, entries=None):
        if rows < 0 or cols < 0:
            raise ValueError('negative matrix shape %dx%d' % (rows, cols))
        self.rows = rows
        self.cols = cols
        self.p = p
        self._data = {}
        for (row, col), value in (entries or {}).items():
            self[row, col] = value

    @classmethod
    def from_dense(cls, data, p, cols=None):
        data = [list(row) for row in data]
        if cols is None:
            cols = len(data[0]) if data else 0
        matrix = cls(len(data), cols, p)
        for row, values in enumerate(data):
            if len(values) != cols:
                raise ValueError('ragged matrix row %d' % row)
            for col, value in enumerate(values):
                if value % p:
                    matrix[row, col] = value
        return matrix

    @classmethod
    def from_rows(cls, rows, cols, p):
        """Wrap a list of {col: residue} dicts; the dicts are copied."""
        matrix = cls(len(rows), cols, p)
        for index, row in enumerate(rows):
            cleaned = dict(
                (col, value % p) for col, value in row.items() if value % p)
            if cleaned:
                matrix._data[index] = cleaned
        return matrix

    @classmethod
    def identity(cls, size, p):
        return cls(size, size, p, dict(((i, i), 1) for i in range(size)))

    def __setitem__(self, key, value):
        row, col = key
        if not (0 <= row < self.rows and 0 <= col < self.cols):
            raise IndexError('entry (%d, %d) outside %dx%d' % (
                row, col, self.rows, self.cols))
        value %= self.p
        if value:
            self._data.setdefault(row, {})[col] = value
        elif row in self._data:
            self._data[row].pop(col, None)
            if not self._data[row]:
                del self._data[row]

    def __getitem__(self, key):
        row, col = key
        return self._data.get(row, {}).get(col, 0)

    def __eq__(self, other):
        return (
            isinstance(other, ExactMatrix) and
            (self.rows, self.cols, self.p) ==
            (other.rows, other.cols, other.p) and
            self._data == other._data)

    def __ne__(self, other):
        return not self == other

    def __repr__(self):
        return '<ExactMatrix %dx%d over GF(%d), %d nonzero>' % (
            self.rows, self.cols, self.p, self.nnz)

    @property
    def nnz(self):
        return sum(len(row) for row in self._data.values())

    @property
    def shape(self):
        return (self.rows, self.cols)

    def row(self, index):
        return dict(self._data.get(index, {}))

    def column(self, index):
        return [self[row, index] for row in range(self.rows)]

    def entries(self):
        return dict(
            ((row, col), value) for row, values in self._data.items()
            for col, value in values.items())

    def is_zero(self):
        return not self._data

    def to_dense(self):
        dense = [[0] * self.cols for _ in range(self.rows)]
        for row, values in self._data.items():
            for col, value in values.items():
                dense[row][col] = value
        return dense

    def to_array(self):
        array = numpy.zeros((self.rows, self.cols), dtype=numpy.int64)
        for row, values in self._data.items():
            for col, value in values.items():
                array[row, col] = value
        return array

    def transpose(self):
        result = ExactMatrix(self.cols, self.rows, self.p)
        for row, values in self._data.items():
            for col, value in values.items():
                result._data.setdefault(col, {})[row] = value
        return result

    def matmul(self, other):
        if self.cols != other.rows or self.p != other.p:
            raise ValueError('cannot multiply %dx%d by %dx%d' % (
                self.rows, self.cols, other.rows, other.cols))
        p = self.p
        result = ExactMatrix(self.rows, other.cols, p)
        for row, values in self._data.items():
            accumulated = {}
            for middle, left in values.items():
                for col, right in other._data.get(middle, {}).items():
                    accumulated[col] = accumulated.get(col, 0) + left * right
            cleaned = dict(
                (col, value % p) for col, value in accumulated.items()
                if value % p)
            if cleaned:
                result._data[row] = cleaned
        return result

    __matmul__ = matmul

    def apply(self, vector):
        if len(vector) != self.cols:
            raise ValueError('vector of length %d for %d columns' % (
                len(vector), self.cols))
        image = [0] * self.rows
        for row, values in self._data.items():
            image[row] = sum(
                value * vector[col] for col, value in values.items()) % self.p
        return image

    def hstack(self, other):
        if self.rows != other.rows:
            raise ValueError('row counts differ: %d, %d' % (
                self.rows, other.rows))
        result = ExactMatrix(self.rows, self.cols + other.cols, self.p)
        for row in set(self._data) | set(other._data):
            values = dict(self._data.get(row, {}))
            for col, value in other._data.get(row, {}).items():
                values[col + self.cols] = value
            result._data[row] = values
        return result

    def vstack(self, other):
        if self.cols != other.cols:
            raise ValueError('column counts differ: %d, %d' % (
                self.cols, other.cols))
        result = ExactMatrix(self.rows + other.rows, self.cols, self.p)
        for row, values in self._data.items():
            result._data[row] = dict(values)
        for row, values in other._data.items():
            result._data[row + self.rows] = dict(values)
        return result


class RowEchelon(object):

    """Incremental echelon form over GF(p).

    Vectors are dicts from comparable keys to residues; the pivot of a row is
    its smallest key. Used directly with (component, monomial) keys by the
    degreewise module code, and with column indices by rref.
    """

    def __init__(self, p):
        self.p = p
        self._pivots = {}

    def __len__(self):
        return len(self._pivots)

    @property
    def rank(self):
        return len(self._pivots)

    @property
    def pivots(self):
        return sorted(self._pivots)

    def reduce(self, vector):
        p = self.p
        row = dict(
            (key, value % p) for key, value in vector.items() if value % p)
        pending = list(row)
        heapq.heapify(pending)
        while pending:
            key = heapq.heappop(pending)
            value = row.get(key)
            if not value:
                continue
            pivot_row = self._pivots.get(key)
            if pivot_row is None:
                continue
            for other, entry in pivot_row.items():
                updated = (row.get(other, 0) - value * entry) % p
                if updated:
                    if other not in row:
                        heapq.heappush(pending, other)
                    row[other] = updated
                else:
                    row.pop(other, None)
        return row

    def contains(self, vector):
        return not self.reduce(vector)

    def add(self, vector):
        """Insert a vector; True if it was independent of the rows so far."""
        row = self.reduce(vector)
        if not row:
            return False
        lead = min(row)
        inverse = pow(row[lead], self.p - 2, self.p)
        self._pivots[lead] = dict(
            (key, value * inverse % self.p) for key, value in row.items())
        return True

    def reduced(self):
        """Rows of the reduced echelon form as (pivot, row) pairs."""
        p = self.p
        done = {}
        for key in sorted(self._pivots, reverse=True):
            row = dict(self._pivots[key])
            for other in [k for k in row if k != key and k in self._pivots]:
                factor = row.get(other)
                if not factor:
                    continue
                for target, entry in done[other].items():
                    updated = (row.get(target, 0) - factor * entry) % p
                    if updated:
                        row[target] = updated
                    else:
                        row.pop(target, None)
            done[key] = row
        return [(key, done[key]) for key in sorted(done)]


def _use_dense(matrix, dense_threshold):
    size = matrix.rows * matrix.cols
    return (
        matrix.p < DENSE_LIMIT and size >= dense_threshold and
        4 * matrix.nnz >= size)


def _dense_rref(matrix):
    p = matrix.p
    array = matrix.to_array()
    rows, cols = array.shape
    pivots = []
    current = 0
    for col in range(cols):
        if current == rows:
            break
        nonzero = numpy.nonzero(array[current:, col])[0]
        if not len(nonzero):
            continue
        swap = current + int(nonzero[0])
        if swap != current:
            array[[current, swap]] = array[[swap, current]]
        inverse = pow(int(array[current, col]), p - 2, p)
        array[current] = (array[current] * inverse) % p
        factors = array[:, col].copy()
        factors[current] = 0
        array = (array - numpy.outer(factors, array[current]) % p) % p
        pivots.append(col)
        current += 1
    return pivots, array[:current]


def rref(matrix, dense_threshold=DENSE_THRESHOLD):
    """Reduced row echelon form: (rank, pivot columns, reduced matrix)."""
    if _use_dense(matrix, dense_threshold):
        logger.debug('dense elimination of %dx%d', matrix.rows, matrix.cols)
        pivots, array = _dense_rref(matrix)
        reduced = ExactMatrix.from_dense(
            array.tolist(), matrix.p, cols=matrix.cols)
        return len(pivots), pivots, reduced
    echelon = RowEchelon(matrix.p)
    for row in sorted(matrix._data):
        echelon.add(matrix._data[row])
    rows = echelon.reduced()
    reduced = ExactMatrix.from_rows(
        [row for _, row in rows], matrix.cols, matrix.p)
    return len(rows), [pivot for pivot, _ in rows], reduced


def rank(matrix, dense_threshold=DENSE_THRESHOLD):
    if matrix.is_zero():
        return 0
    if _use_dense(matrix, dense_threshold):
        return len(_dense_rref(matrix)[0])
    echelon = RowEchelon(matrix.p)
    for row in sorted(matrix._data):
        echelon.add(matrix._data[row])
    return echelon.rank


def kernel_basis(matrix, dense_threshold=DENSE_THRESHOLD):
    """Columns spanning the null space, one per non-pivot column."""
    p = matrix.p
    _, pivots, reduced = rref(matrix, dense_threshold)
    pivot_set = set(pivots)
    free = [col for col in range(matrix.cols) if col not in pivot_set]
    basis = ExactMatrix(matrix.cols, len(free), p)
    for index, col in enumerate(free):
        basis[col, index] = 1
        for row, pivot in enumerate(pivots):
            value = reduced[row, col]
            if value:
                basis[pivot, index] = -value
    return basis


def solve(matrix, vector, dense_threshold=DENSE_THRESHOLD):
    """A solution x of matrix * x = vector, or NO_SOLUTION."""
    if len(vector) != matrix.rows:
        raise ValueError('right-hand side has %d entries for %d rows' % (
            len(vector), matrix.rows))
    column = ExactMatrix(matrix.rows, 1, matrix.p)
    for row, value in enumerate(vector):
        column[row, 0] = value
    _, pivots, reduced = rref(matrix.hstack(column), dense_threshold)
    if pivots and pivots[-1] == matrix.cols:
        return NO_SOLUTION
    solution = [0] * matrix.cols
    for row, pivot in enumerate(pivots):
        solution[pivot] = reduced[row, matrix.cols]
    return solution
