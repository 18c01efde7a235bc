"""Cochain complexes of graded modules.

Complexes are indexed cohomologically: the differential d^i goes from the
term in degree i to the term in degree i+1, and its matrix has one column
per generator of the source. C[k]^i = C^{k+i} with differential (-1)^k d,
and C(j) twists every term.

Every complex carries a computed window [lo, hi]. A complex that extends
below or above its window (a resolution over R, or its dual) raises
WindowExhausted when asked for a term it does not know.
"""

import logging

from orlov.errors import ValidationError, WindowExhausted, WindowViolation
from orlov.freemodules import (
    GradedFreeModule, GradedMap, degree_piece_map, minimal_generators)
from orlov.groebner import NO_LIFT, kernel_of_map, lift
from orlov.linalg import rank
from orlov.modules import PresentedModule, TruncatedModule, truncation

logger = logging.getLogger(__name__)


class _Complex(object):

    """Window bookkeeping shared by free and module complexes."""

    def __init__(self, ring, terms, differentials, lo, hi,
                 extends_below, extends_above):
        self.ring = ring
        if lo is None or hi is None:
            support = [i for i, term in terms.items() if self._nonzero(term)]
            if lo is None:
                lo = min(support) if support else 0
            if hi is None:
                hi = max(support) if support else lo - 1
        self.lo = lo
        self.hi = hi
        self.extends_below = extends_below
        self.extends_above = extends_above
        self._terms = dict(
            (i, term) for i, term in terms.items()
            if lo <= i <= hi and self._nonzero(term))
        self._maps = {}
        for i, f in differentials.items():
            if not (lo <= i < hi) or f.is_zero():
                continue
            if f.source != self.cover(i) or f.target != self.cover(i + 1):
                raise ValidationError(
                    'differential %d does not match the terms %d and %d' % (
                        i, i, i + 1), field='differentials[%d]' % i)
            self._maps[i] = f

    @staticmethod
    def _nonzero(term):
        raise NotImplementedError

    @property
    def window(self):
        return (self.lo, self.hi)

    def indices(self):
        return range(self.lo, self.hi + 1)

    def inside(self, i):
        """True inside the window, False where the complex is known zero."""
        if self.lo <= i <= self.hi:
            return True
        if (i < self.lo and self.extends_below) or \
                (i > self.hi and self.extends_above):
            raise WindowExhausted(i, self.window)
        return False

    def differential(self, i):
        source, target = self.cover(i), self.cover(i + 1)
        f = self._maps.get(i)
        if f is None:
            return GradedMap.zero(source, target)
        return f

    def support(self):
        return sorted(self._terms)

    def is_zero(self):
        return not self._terms and not (
            self.extends_below or self.extends_above)

    def extends(self):
        return self.extends_below or self.extends_above

    def restrict(self, lo, hi):
        """The same complex seen through a narrower window."""
        lo, hi = max(lo, self.lo), min(hi, self.hi)
        below = self.extends_below or any(i < lo for i in self._terms)
        above = self.extends_above or any(i > hi for i in self._terms)
        return self._rebuild(self._terms, self._maps, lo, hi, below, above)

    def bounded(self):
        """The brutal truncation to the window, closed at both ends."""
        return self._rebuild(self._terms, self._maps, self.lo, self.hi,
                             False, False)

    def twist(self, shift):
        return self._rebuild(
            dict((i, term.twist(shift)) for i, term in self._terms.items()),
            dict((i, f.twist(shift)) for i, f in self._maps.items()),
            self.lo, self.hi, self.extends_below, self.extends_above)

    def shift(self, k):
        sign = -1 if k % 2 else 1
        return self._rebuild(
            dict((i - k, term) for i, term in self._terms.items()),
            dict((i - k, f.scale(sign) if sign < 0 else f)
                 for i, f in self._maps.items()),
            self.lo - k, self.hi - k, self.extends_below, self.extends_above)

    def signature(self, i, symbol='R'):
        raise NotImplementedError

    def check_square_zero(self):
        for i in range(self.lo, self.hi - 1):
            composite = self.differential(i + 1).compose(self.differential(i))
            relations = self.relations(i + 2)
            for column in composite.columns():
                if not _in_image(column, relations):
                    raise ValidationError(
                        'd^%d after d^%d is not zero' % (i + 1, i),
                        field='differentials[%d]' % i)
        return True


def _in_image(column, relations):
    column = relations.target.normalize(column)
    if not column:
        return True
    if relations.source.rank == 0:
        return False
    return lift(column, relations) is not NO_LIFT


class FreeComplex(_Complex):

    """A complex of graded free modules with homogeneous differentials."""

    def __init__(self, ring, terms, differentials=None, lo=None, hi=None,
                 extends_below=False, extends_above=False):
        _Complex.__init__(self, ring, terms, differentials or {}, lo, hi,
                          extends_below, extends_above)

    @staticmethod
    def _nonzero(term):
        return term.rank > 0

    @classmethod
    def zero(cls, ring):
        return cls(ring, {})

    def _rebuild(self, terms, maps, lo, hi, below, above):
        return FreeComplex(self.ring, terms, maps, lo, hi, below, above)

    def __repr__(self):
        return '<FreeComplex [%d, %d]%s>' % (
            self.lo, self.hi, ' (extends)' if self.extends() else '')

    def term(self, i):
        if self.inside(i):
            term = self._terms.get(i)
            if term is not None:
                return term
        return GradedFreeModule(self.ring, ())

    cover = term

    def module(self, i):
        return PresentedModule.free(self.term(i))

    def relations(self, i):
        return GradedMap.zero(GradedFreeModule(self.ring, ()), self.term(i))

    def twists(self, i):
        return self.term(i).twists

    def signature(self, i, symbol='R'):
        return self.term(i).signature(symbol)

    def ranks(self):
        return dict((i, self.term(i).rank) for i in self.indices())

    def unit_entries(self):
        return [
            (i, r, c) for i in sorted(self._maps)
            for r, c in self._maps[i].unit_entries()]


class ModuleComplex(_Complex):

    """A complex of presented modules.

    The differentials are maps between the covers that carry relations to
    relations.
    """

    def __init__(self, ring, terms, differentials=None, lo=None, hi=None,
                 extends_below=False, extends_above=False):
        _Complex.__init__(self, ring, terms, differentials or {}, lo, hi,
                          extends_below, extends_above)

    @staticmethod
    def _nonzero(term):
        return term.cover.rank > 0

    @classmethod
    def from_free(cls, complex_):
        if isinstance(complex_, ModuleComplex):
            return complex_
        return cls(
            complex_.ring,
            dict((i, PresentedModule.free(term))
                 for i, term in complex_._terms.items()),
            complex_._maps, complex_.lo, complex_.hi,
            complex_.extends_below, complex_.extends_above)

    @classmethod
    def single(cls, module, degree=0):
        return cls(module.ring, {degree: module}, {}, degree, degree)

    def _rebuild(self, terms, maps, lo, hi, below, above):
        return ModuleComplex(self.ring, terms, maps, lo, hi, below, above)

    def __repr__(self):
        return '<ModuleComplex [%d, %d]>' % (self.lo, self.hi)

    def term(self, i):
        if self.inside(i):
            term = self._terms.get(i)
            if term is not None:
                return term
        return PresentedModule.zero(self.ring)

    module = term

    def cover(self, i):
        return self.term(i).cover

    def relations(self, i):
        return self.term(i).relations

    def is_free(self):
        return all(term.is_free() for term in self._terms.values())

    def signature(self, i, symbol='R'):
        return self.term(i).signature(symbol)

    def validate(self):
        """Check that the differentials respect relations and square to 0."""
        for i in self.indices():
            if i + 1 > self.hi:
                break
            f = self.differential(i)
            target = self.relations(i + 1)
            for column in f.compose(self.relations(i)).columns():
                if not _in_image(column, target):
                    raise ValidationError(
                        'differential %d does not preserve relations' % i,
                        field='differentials[%d]' % i)
        return self.check_square_zero()


def as_module_complex(complex_):
    return ModuleComplex.from_free(complex_)


def shift(complex_, k):
    return complex_.shift(k)


def twist(complex_, j):
    return complex_.twist(j)


def _unit_complex(ring):
    return FreeComplex(ring, {0: GradedFreeModule(ring, (0,))})


def hom_complex(source, target=None):
    """Hom(source, target) with the sign rule d(a) = d_T a - (-1)^n a d_S.

    source is a free complex; target a bounded complex (the ring itself when
    omitted). Term n has one block per generator k of source^i and generator
    l of target^{i+n}, in the order (i, k, l).
    """
    ring = source.ring
    if target is None:
        target = _unit_complex(ring)
    if target.extends():
        raise ValidationError('the target of Hom must be bounded')
    if source.extends_above:
        raise ValidationError('the source of Hom must be bounded above')
    if source.lo > source.hi or target.lo > target.hi:
        return FreeComplex.zero(ring)
    lo = target.lo - source.hi
    if source.extends_below:
        hi = target.lo - source.lo
    else:
        hi = target.hi - source.lo
    modules = target if isinstance(target, ModuleComplex) else None

    def blocks(n):
        result = []
        for i in range(source.lo, source.hi + 1):
            if not target.lo <= i + n <= target.hi:
                continue
            for k, a in enumerate(source.twists(i)):
                result.append((i, k, a))
        return result

    layouts = {}
    terms = {}
    for n in range(lo, hi + 1):
        layout = []
        twists = []
        relations = []
        for i, k, a in blocks(n):
            cover = target.cover(i + n)
            layout.append((i, k, len(twists)))
            twists.extend(b - a for b in cover.twists)
            if modules is not None:
                relations.append(target.relations(i + n).twist(a))
        layouts[n] = layout
        free = GradedFreeModule(ring, twists)
        if modules is None:
            terms[n] = free
        else:
            terms[n] = PresentedModule(_block_diagonal(relations, free))
    maps = {}
    for n in range(lo, hi):
        sign = -1 if n % 2 == 0 else 1
        source_module = _cover_of(terms[n])
        target_module = _cover_of(terms[n + 1])
        matrix = [[ring.zero] * source_module.rank
                  for _ in range(target_module.rank)]
        offsets = dict(((i, k), start) for i, k, start in layouts[n + 1])
        for i, k, start in layouts[n]:
            d_target = target.differential(i + n)
            if (i, k) in offsets:
                base = offsets[(i, k)]
                for l in range(d_target.source.rank):
                    for l2 in range(d_target.target.rank):
                        entry = d_target.matrix[l2][l]
                        if entry:
                            matrix[base + l2][start + l] += entry
            if i - 1 < source.lo and source.extends_below:
                continue
            d_source = source.differential(i - 1)
            for k2 in range(d_source.source.rank):
                entry = d_source.matrix[k][k2]
                if not entry or (i - 1, k2) not in offsets:
                    continue
                base = offsets[(i - 1, k2)]
                for l in range(target.cover(i + n).rank):
                    matrix[base + l][start + l] += entry * sign
        maps[n] = GradedMap(source_module, target_module, matrix,
                            validate=False)
    below = False
    above = source.extends_below
    if modules is None:
        return FreeComplex(ring, terms, maps, lo, hi, below, above)
    return ModuleComplex(ring, terms, maps, lo, hi, below, above)


def _cover_of(term):
    return term if isinstance(term, GradedFreeModule) else term.cover


def _block_diagonal(relations, cover):
    ring = cover.ring
    twists = []
    columns = []
    row = 0
    for block in relations:
        for column in block.columns():
            columns.append(dict((row + r, f) for r, f in column.items()))
        twists.extend(block.source.twists)
        row += block.target.rank
    return GradedMap.from_columns(
        GradedFreeModule(ring, twists), cover, columns, validate=False)


def dual(complex_):
    """Hom(C, R): term n is the dual of C^{-n}."""
    return hom_complex(complex_)


def _summand_complex(complex_, keep):
    terms = {}
    maps = {}
    chosen = {}
    for i in complex_.indices():
        twists = complex_.twists(i)
        chosen[i] = [k for k, d in enumerate(twists) if keep(d)]
        terms[i] = complex_.term(i).restrict(chosen[i])
    for i in complex_.indices():
        if i + 1 > complex_.hi:
            break
        maps[i] = complex_.differential(i).submatrix(
            rows=chosen[i + 1], cols=chosen[i])
    return FreeComplex(
        complex_.ring, terms, maps, complex_.lo, complex_.hi,
        complex_.extends_below, complex_.extends_above)


def brutal_truncate_above(complex_, j):
    """The quotient complex of summands generated in degrees >= j."""
    return _summand_complex(complex_, lambda d: d >= j)


def brutal_truncate_below(complex_, j):
    """The subcomplex of summands generated in degrees < j."""
    return _summand_complex(complex_, lambda d: d < j)


def _project(columns, start, stop):
    result = []
    for column in columns:
        projected = dict(
            (c - start, f) for c, f in column.items() if start <= c < stop)
        result.append(projected)
    return result


def _generated(columns, module):
    degrees = []
    kept = []
    for column in columns:
        if not column:
            continue
        kept.append(column)
        degrees.append(min(
            sum(f.LM) + module.twists[c] for c, f in column.items()))
    return GradedFreeModule(module.ring, degrees), kept


def _cycles(complex_, i):
    """Generators of the cycles of C^i inside its cover, as an inclusion."""
    cover = complex_.cover(i)
    outgoing = complex_.differential(i)
    relations = complex_.relations(i + 1)
    if outgoing.is_zero():
        return GradedMap.identity(cover)
    kernel = kernel_of_map(outgoing.hstack(relations))
    columns = [
        column for column in _project(kernel.columns(), 0, cover.rank)
        if column]
    chosen = minimal_generators(columns, cover)
    free, columns = _generated([columns[c] for c in chosen], cover)
    return GradedMap.from_columns(free, cover, columns, validate=False)


def _presentation_over(inclusion, other):
    """Relations among the generators of inclusion modulo the image of other.
    """
    ring = inclusion.ring
    rank_ = inclusion.source.rank
    if other.source.rank == 0:
        combined = inclusion
    else:
        combined = inclusion.hstack(other)
    if combined.is_zero():
        return GradedMap.identity(inclusion.source)
    kernel = kernel_of_map(combined)
    free, columns = _generated(
        _project(kernel.columns(), 0, rank_), inclusion.source)
    return GradedMap.from_columns(free, inclusion.source, columns,
                                  validate=False)


def cohomology(complex_, i):
    """H^i as a minimal PresentedModule."""
    inclusion = _cycles(complex_, i)
    boundaries = complex_.differential(i - 1).hstack(complex_.relations(i))
    relations = _presentation_over(inclusion, boundaries)
    module = PresentedModule(relations).minimal_presentation()
    logger.debug('H^%d = %s', i, module.signature())
    return module


def cohomology_dimension(complex_, i, degree):
    """dim_k of the degree piece of H^i, by ranks of degree pieces."""
    threshold = complex_.ring.configuration.dense_threshold

    def piece_rank(f):
        if f.source.rank == 0 or f.target.rank == 0:
            return 0
        return rank(degree_piece_map(f, degree), threshold)

    cover = complex_.cover(i)
    dimension = cover.dimension(degree)
    if not dimension:
        return 0
    own = piece_rank(complex_.relations(i))
    following = complex_.relations(i + 1)
    outgoing = piece_rank(complex_.differential(i).hstack(following)) - \
        piece_rank(following)
    incoming = piece_rank(
        complex_.differential(i - 1).hstack(complex_.relations(i))) - own
    return dimension - own - outgoing - incoming


def smart_truncate(complex_, k, verify=False):
    """Keep degrees below k, replace degree k by the cycles, drop the rest."""
    ring = complex_.ring
    if verify:
        top = complex_.hi - 1 if complex_.extends_above else complex_.hi
        for i in range(k + 1, top + 1):
            if not cohomology(complex_, i).is_zero():
                raise WindowViolation('smart truncation', i, (complex_.lo, k))
    modules = as_module_complex(complex_)
    if k >= modules.hi and not modules.extends_above:
        return modules
    if k < modules.lo:
        modules.inside(k)
        return ModuleComplex(ring, {}, {}, k, k)
    terms = dict((i, modules.term(i)) for i in range(modules.lo, k))
    maps = dict(
        (i, modules.differential(i)) for i in range(modules.lo, k - 1))
    inclusion = _cycles(modules, k)
    own = modules.relations(k)
    terms[k] = PresentedModule(_presentation_over(inclusion, own))
    combined = inclusion.hstack(own) if own.source.rank else inclusion
    if k - 1 >= modules.lo:
        incoming = modules.differential(k - 1)
        columns = []
        for column in incoming.columns():
            lifted = lift(column, combined) if column else {}
            if lifted is NO_LIFT:
                raise WindowViolation('smart truncation', k, (modules.lo, k))
            columns.append(dict(
                (c, f) for c, f in lifted.items()
                if c < inclusion.source.rank))
        maps[k - 1] = GradedMap.from_columns(
            incoming.source, inclusion.source, columns, validate=False)
    return ModuleComplex(ring, terms, maps, modules.lo, k,
                         modules.extends_below, False)


def minimize(complex_):
    """Cancel unit entries by Gaussian elimination, lowest degree first."""
    ring = complex_.ring
    lo, hi = complex_.lo, complex_.hi
    twists = dict((i, list(complex_.twists(i))) for i in complex_.indices())
    matrices = {}
    for i in range(lo, hi):
        matrices[i] = [list(row) for row in complex_.differential(i).matrix]
    cancelled = 0
    while True:
        unit = _first_unit(matrices, twists)
        if unit is None:
            break
        i, r, c = unit
        cancelled += 1
        matrix = matrices[i]
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
        matrices[i] = updated
        if i - 1 in matrices:
            del matrices[i - 1][c]
        if i + 1 in matrices:
            matrices[i + 1] = [row[:r] + row[r + 1:]
                               for row in matrices[i + 1]]
        del twists[i][c]
        del twists[i + 1][r]
    terms = dict(
        (i, GradedFreeModule(ring, twists[i])) for i in complex_.indices())
    maps = dict(
        (i, GradedMap(terms[i], terms[i + 1], matrices[i], validate=False))
        for i in matrices)
    if cancelled:
        logger.debug('minimize cancelled %d unit pairs', cancelled)
    return FreeComplex(ring, terms, maps, lo, hi,
                       complex_.extends_below, complex_.extends_above)


def _first_unit(matrices, twists):
    for i in sorted(matrices):
        matrix = matrices[i]
        for c in range(len(twists[i])):
            for r in range(len(twists[i + 1])):
                entry = matrix[r][c]
                if entry and sum(entry.LM) == 0:
                    return i, r, c
    return None


def resolve_complex(complex_, length=None, lo=None):
    """Minimal free resolution of a bounded complex of modules.

    Terms are built from the top down so that the cone of the comparison map
    G -> C is exact; one step more than requested is computed, the result is
    minimized and the extra step dropped. The window is [top - length, top],
    or [lo, top]; a resolution that reaches zero is returned closed.
    """
    ring = complex_.ring
    modules = as_module_complex(complex_)
    if modules.extends():
        raise ValidationError('only bounded complexes can be resolved')
    support = [i for i in modules.indices() if not modules.term(i).is_zero()]
    if not support:
        return FreeComplex.zero(ring)
    top = max(support)
    if lo is None:
        if length is None:
            length = top - min(support) + ring.n + 2
        lo = top - length
    if lo > top:
        raise ValidationError(
            'resolution window [%d, %d] is empty' % (lo, top), field='length')
    if len(support) == 1:
        from orlov.resolution import resolve_over_R
        return resolve_over_R(modules.term(top), top - lo).shift(-top)
    zero = GradedFreeModule(ring, ())
    upper = zero
    upper_d = GradedMap.zero(zero, zero)
    upper_phi = GradedMap.zero(zero, modules.cover(top + 1))
    terms = {}
    maps = {}
    finished = False
    i = top
    while i >= lo - 1:
        cover = modules.cover(i)
        next_relations = modules.relations(i + 1)
        middle = upper.direct_sum(cover)
        block = _block_map(
            [[upper_d, GradedMap.zero(cover, upper_d.target),
              GradedMap.zero(next_relations.source, upper_d.target)],
             [upper_phi, modules.differential(i), -next_relations]],
            [upper, cover, next_relations.source],
            [upper_d.target, modules.cover(i + 1)])
        if block.is_zero():
            cycles = [middle.generator(c) for c in range(middle.rank)]
        else:
            cycles = [
                column for column in _project(
                    kernel_of_map(block).columns(), 0, middle.rank)
                if column]
        modulo = [
            dict((upper.rank + r, f) for r, f in column.items())
            for column in (modules.differential(i - 1).columns() +
                           modules.relations(i).columns())
            if column]
        chosen = minimal_generators(cycles, middle, modulo)
        generators, columns = _generated([cycles[c] for c in chosen], middle)
        terms[i] = generators
        maps[i] = GradedMap.from_columns(
            generators, upper,
            [dict((c, -f) for c, f in column.items() if c < upper.rank)
             for column in columns], validate=False)
        logger.debug('resolution step %d: %s', i, generators.signature())
        if generators.rank == 0 and i <= modules.lo:
            finished = True
            break
        upper_phi = GradedMap.from_columns(
            generators, cover, _project(columns, upper.rank, middle.rank),
            validate=False)
        upper, upper_d = generators, maps[i]
        i -= 1
    if finished:
        resolved = minimize(FreeComplex(ring, terms, maps, i, top))
        return FreeComplex(ring, resolved._terms, resolved._maps)
    resolved = minimize(FreeComplex(
        ring, terms, maps, lo - 1, top, extends_below=True))
    return resolved.restrict(lo, top)


def _block_map(blocks, sources, targets):
    ring = sources[0].ring
    source = GradedFreeModule(ring, ())
    for module in sources:
        source = source.direct_sum(module)
    target = GradedFreeModule(ring, ())
    for module in targets:
        target = target.direct_sum(module)
    matrix = []
    for row_blocks in blocks:
        for r in range(row_blocks[0].target.rank):
            row = []
            for block in row_blocks:
                row.extend(block.matrix[r])
            matrix.append(row)
    return GradedMap(source, target, matrix, validate=False)


class TruncatedComplex(object):

    """C_{>=s} termwise, smart-truncated above cohomological degree k.

    Terms are the truncated twists of the terms of a module complex; the
    degree pieces agree with those of C from internal degree s on.
    """

    def __init__(self, base, s, k=None):
        self.base = as_module_complex(base)
        self.ring = base.ring
        self.s = s
        self.k = base.hi if k is None else min(k, base.hi)
        self._complex = None

    @property
    def lo(self):
        return self.base.lo

    @property
    def hi(self):
        return self.k

    @property
    def window(self):
        return (self.lo, self.hi)

    extends_below = False
    extends_above = False

    def indices(self):
        return range(self.lo, self.hi + 1)

    def term(self, i):
        return TruncatedModule(self.base.term(i), 0, self.s)

    def signature(self, i, symbol='R'):
        if i == self.k and self.k < self.base.hi and \
                not self.base.differential(i).is_zero():
            return 'ker(%s)' % self.term(i).signature(symbol)
        return self.term(i).signature(symbol)

    def cohomology_dimension(self, i, degree):
        if degree < self.s or i > self.k:
            return 0
        return cohomology_dimension(self.base, i, degree)

    def module_complex(self):
        """Presentations of the truncated terms and induced differentials."""
        if self._complex is not None:
            return self._complex
        base = self.base.restrict(self.lo, self.k + 1)
        data = dict(
            (i, truncation(base.term(i), self.s)) for i in base.indices())
        terms = dict((i, module) for i, (module, _) in data.items())
        maps = {}
        for i in base.indices():
            if i + 1 > base.hi:
                break
            module, inclusion = data[i]
            next_module, next_inclusion = data[i + 1]
            combined = next_inclusion
            if base.relations(i + 1).source.rank:
                combined = next_inclusion.hstack(base.relations(i + 1))
            images = base.differential(i).compose(inclusion)
            columns = []
            for column in images.columns():
                lifted = lift(column, combined) if column else {}
                if lifted is NO_LIFT:
                    raise WindowViolation('truncated differential', i,
                                          self.window)
                columns.append(dict(
                    (c, f) for c, f in lifted.items()
                    if c < next_inclusion.source.rank))
            maps[i] = GradedMap.from_columns(
                module.cover, next_module.cover, columns, validate=False)
        complex_ = ModuleComplex(self.ring, terms, maps, base.lo, base.hi)
        self._complex = smart_truncate(complex_, self.k)
        return self._complex


def format_complex(complex_, sheaf=False, arrow='-->'):
    """Two lines: the terms joined by arrows, then their degrees."""
    symbol = 'O' if sheaf else 'R'
    indices = list(complex_.indices())
    if arrow == '<--':
        indices.reverse()
        leading, trailing = complex_.extends_above, complex_.extends_below
    else:
        leading, trailing = complex_.extends_below, complex_.extends_above
    joiner = ' %s ' % arrow
    line = ''
    positions = []
    if leading:
        line = '...' + joiner
    for position, i in enumerate(indices):
        if position:
            line += joiner
        positions.append((len(line), i))
        line += complex_.signature(i, symbol)
    if trailing:
        line += joiner + '...'
    if not indices:
        line = '0'
    degrees = ''
    for column, i in positions:
        degrees = degrees.ljust(column) + str(i)
        degrees += ' '
    return line + '\n' + degrees.rstrip()
