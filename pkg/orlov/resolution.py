"""Minimal free resolutions, Betti tables and Gorenstein data.

Resolutions over R are computed to a requested length and cached; a cached
resolution serves every shorter request and is extended in place of a
recomputation when a longer one comes in. A module and all its twists share
one cache entry.
"""

import logging
import threading
from math import comb

from cachetools import LRUCache, cached
from cachetools.keys import hashkey

from orlov import CACHE_SIZE
from orlov.complexes import FreeComplex, cohomology, dual
from orlov.errors import OrlovError, ValidationError
from orlov.freemodules import GradedFreeModule, GradedMap
from orlov.groebner import kernel_of_map
from orlov.modules import PresentedModule

logger = logging.getLogger(__name__)

_resolutions = LRUCache(maxsize=CACHE_SIZE)
_lock = threading.RLock()


def clear_cache():
    with _lock:
        _resolutions.clear()


class BettiTable(object):

    """Graded Betti numbers beta_{i,j} of a minimal free complex."""

    def __init__(self, entries=None):
        self.entries = dict(
            (key, value) for key, value in (entries or {}).items() if value)

    @classmethod
    def from_complex(cls, complex_, top=None):
        """Homological degree i counts from the top term of the complex."""
        if top is None:
            top = complex_.hi
        entries = {}
        for k in complex_.indices():
            for twist in complex_.twists(k):
                key = (top - k, twist)
                entries[key] = entries.get(key, 0) + 1
        return cls(entries)

    def __eq__(self, other):
        return isinstance(other, BettiTable) and self.entries == other.entries

    def __ne__(self, other):
        return not self == other

    def __repr__(self):
        return '<BettiTable %r>' % sorted(self.entries.items())

    def betti(self, i, j):
        return self.entries.get((i, j), 0)

    def total(self, i):
        return sum(v for (k, _), v in self.entries.items() if k == i)

    def degrees(self):
        return sorted(set(i for i, _ in self.entries))

    def twists(self, i):
        result = []
        for (k, j), value in sorted(self.entries.items()):
            if k == i:
                result.extend([j] * value)
        return result

    def max_twist(self, i):
        twists = self.twists(i)
        return max(twists) if twists else None

    def to_json(self):
        return dict((str(i), self.twists(i)) for i in self.degrees())

    def format(self):
        """Text grid: columns are homological degrees, rows j - i."""
        if not self.entries:
            return 'total: 0'
        columns = list(range(0, max(self.degrees()) + 1))
        strata = sorted(set(j - i for i, j in self.entries))
        rows = [[''] + [str(i) for i in columns],
                ['total:'] + [str(self.total(i)) for i in columns]]
        for row in range(strata[0], strata[-1] + 1):
            rows.append(['%d:' % row] + [
                str(self.betti(i, i + row) or '.') for i in columns])
        widths = [max(len(r[c]) for r in rows) for c in range(len(rows[0]))]
        return '\n'.join(
            ' '.join(cell.rjust(width) for cell, width in zip(r, widths))
            .rstrip() for r in rows)


class GorensteinData(object):

    """Invariants read off the minimal resolution of R over S."""

    def __init__(self, n, betti, projective_dimension, last_rank,
                 last_twist, d):
        self.n = n
        self.betti = betti
        self.projective_dimension = projective_dimension
        self.last_rank = last_rank
        self.last_twist = last_twist
        self.d = d
        self.codim = n + 1 - d
        self.is_gorenstein = (
            projective_dimension == self.codim and last_rank == 1)
        self.a = n + 1 - last_twist

    def __repr__(self):
        return '<GorensteinData gorenstein=%s a=%d d=%d codim=%d>' % (
            self.is_gorenstein, self.a, self.d, self.codim)

    def as_dict(self):
        return {
            'a': self.a, 'codim': self.codim, 'd': self.d,
            'is_gorenstein': self.is_gorenstein,
            'last_rank': self.last_rank,
            'projective_dimension': self.projective_dimension,
        }


def _normalized(module):
    minimal = module.presentation().minimal_presentation()
    if minimal.cover.rank == 0:
        return minimal, 0
    shift = min(minimal.cover.twists)
    return minimal.twist(shift), shift


def _extend(ring, normalized, entry, length):
    """Grow a resolution (complex, pending map) down to -length."""
    if entry is None:
        terms = {0: normalized.cover}
        maps = {}
        lo = 0
        pending = normalized.relations
        if pending.source.rank == 0:
            pending = None
    else:
        complex_, pending = entry
        terms = dict(complex_._terms)
        maps = dict(complex_._maps)
        lo = complex_.lo
    while pending is not None and lo > -length:
        lo -= 1
        terms[lo] = pending.source
        maps[lo] = pending
        logger.debug('resolution step %d: %s', lo,
                     pending.source.signature())
        pending = kernel_of_map(pending)
        if pending.source.rank == 0:
            pending = None
    complex_ = FreeComplex(
        ring, terms, maps, lo, 0, extends_below=pending is not None)
    return complex_, pending


def _resolve(module, length):
    ring = module.ring
    normalized, shift = _normalized(module)
    if normalized.cover.rank == 0:
        return FreeComplex.zero(ring)
    key = hashkey(ring.key(), normalized.key())
    with _lock:
        entry = _resolutions.get(key)
        if entry is None or (entry[1] is not None and entry[0].lo > -length):
            entry = _extend(ring, normalized, entry, length)
            _resolutions[key] = entry
            logger.info('resolved %s to length %d', normalized.signature(),
                        -entry[0].lo)
    complex_ = entry[0]
    if complex_.lo < -length:
        complex_ = complex_.restrict(-length, 0)
    return complex_.twist(-shift)


def resolve_over_R(module, length):
    """Minimal free resolution of M over its ring, window [-length, 0]."""
    if length < 0:
        raise ValidationError('negative resolution length %d' % length,
                              field='length')
    return _resolve(module.presentation(), length)


def as_module_over_S(module):
    """M viewed over the ambient polynomial ring: add I e_i as relations."""
    module = module.presentation()
    ring = module.ring
    ambient = ring.ambient()
    cover = GradedFreeModule(ambient, module.cover.twists)
    columns = [column for column in module.relations.columns() if column]
    twists = [
        min(sum(f.LM) + cover.twists[c] for c, f in column.items())
        for column in columns]
    for index, d in enumerate(cover.twists):
        for g in ring.ideal_basis:
            columns.append({index: g})
            twists.append(d + sum(g.LM))
    return PresentedModule(GradedMap.from_columns(
        GradedFreeModule(ambient, twists), cover, columns, validate=False))


def resolve_over_S(module):
    """Finite minimal free resolution over S, window [-pd, 0]."""
    module = as_module_over_S(module)
    length = module.ring.nvars + 1
    resolved = _resolve(module, length)
    if resolved.extends_below:
        raise OrlovError('resolution over S did not terminate')
    return resolved


def _hilbert_values(betti, n, start, count):
    values = []
    for degree in range(start, start + count):
        total = 0
        for (i, j), value in betti.entries.items():
            if degree - j + n >= 0:
                total += (-1) ** i * value * comb(degree - j + n, n)
        values.append(total)
    return values


def _polynomial_degree(values):
    """Degree of the polynomial through equally spaced values, -1 if zero."""
    degree = -1
    differences = list(values)
    order = 0
    while differences:
        if any(differences):
            degree = order
        differences = [b - a for a, b in zip(differences, differences[1:])]
        order += 1
    return degree


@cached(cache=LRUCache(maxsize=32), key=lambda ring: hashkey(ring.key()))
def gorenstein_data(ring):
    """pd, codim, a and d of R from its minimal resolution over S."""
    ambient = ring.ambient()
    quotient = PresentedModule.quotient(ambient, ring.ideal_basis) \
        if ring.ideal_basis else PresentedModule.free(
            GradedFreeModule(ambient, (0,)))
    resolved = resolve_over_S(quotient)
    betti = BettiTable.from_complex(resolved, top=0)
    pd = max(betti.degrees())
    last = betti.twists(pd)
    n = ring.n
    start = max(j for _, j in betti.entries)
    values = _hilbert_values(betti, n, start, n + 3)
    for offset, value in enumerate(values):
        if value != ring.hilbert_function(start + offset):
            raise OrlovError(
                'Hilbert function mismatch in degree %d' % (start + offset))
    d = _polynomial_degree(values) + 1
    data = GorensteinData(n, betti, pd, len(last), max(last), d)
    logger.info('%r: %r', ring, data)
    return data


def is_mcm(module):
    """Whether Ext^i(M, R) vanishes for 1 <= i <= dim R."""
    ring = module.ring
    d = gorenstein_data(ring).d
    if d == 0:
        return True
    dualized = dual(resolve_over_R(module, d + 1))
    for i in range(1, d + 1):
        if not cohomology(dualized, i).is_zero():
            logger.debug('Ext^%d does not vanish', i)
            return False
    return True
