"""The functors Phi_t and Psi_t between graded singularity data and sheaves.

Phi_t turns a bounded complex of graded R-modules into a complex of sums of
line bundles O(j) on X = Proj R:

1. replace C by Q[-s], Q the cokernel of the last differential into degree s
   of a free resolution of C, s the lowest nonzero cohomology;
2. resolve Q, cut the resolution to the summands generated in degrees >= t,
   dualize and smart-truncate at d - c;
3. resolve that complex, dualize again and keep the summands generated in
   degrees < t.

Psi_t computes RHom(R_{>=r}, C)_{>=t-a}, whose degree j pieces are the
sheaf cohomology groups of C(j) for j >= t - a.
"""

import logging

from orlov.complexes import (
    FreeComplex, ModuleComplex, TruncatedComplex, as_module_complex,
    brutal_truncate_above, brutal_truncate_below, cohomology,
    cohomology_dimension, dual, hom_complex, resolve_complex, smart_truncate)
from orlov.errors import (
    NotGorenstein, ValidationError, WindowExhausted, WindowViolation)
from orlov.freemodules import GradedFreeModule
from orlov.modules import PresentedModule, truncate_module
from orlov.resolution import (
    BettiTable, gorenstein_data, resolve_over_R, resolve_over_S)

logger = logging.getLogger(__name__)

STRATEGIES = ('zero', 'collapsed', 'closed-form', 'resolution')


def as_complex(value):
    """Accept a module, a free or module complex, or a Phi output.

    A SheafObject contributes the terms of its computed window.
    """
    if isinstance(value, PresentedModule):
        return ModuleComplex.single(value, 0)
    if isinstance(value, SheafObject):
        return as_module_complex(value.complex.bounded())
    complex_ = as_module_complex(value)
    if complex_.extends():
        raise ValidationError('the input complex must be bounded')
    return complex_


def _gorenstein(ring):
    data = gorenstein_data(ring)
    if not data.is_gorenstein:
        raise NotGorenstein(data)
    return data


def _nonzero_cohomology(complex_, lo, hi):
    found = {}
    for i in range(lo, hi + 1):
        module = cohomology(complex_, i)
        if not module.is_zero():
            found[i] = module
    return found


class PhiWindow(object):

    """The integers bounding every step of the Phi_t computation."""

    FIELDS = ('t', 'd', 's', 'u', 'm', 'c', 'top', 's_prime', 'u_prime',
              'm_prime', 'b', 'f', 'ell')

    def __init__(self, **values):
        for name in self.FIELDS:
            setattr(self, name, values.get(name))

    @property
    def is_empty(self):
        return self.s is None

    def __repr__(self):
        if self.is_empty:
            return '<PhiWindow empty>'
        return '<PhiWindow s=%d u=%d m=%d c=%d top=%d b=%s f=%s>' % (
            self.s, self.u, self.m, self.c, self.top, self.b, self.f)

    def as_dict(self):
        return dict((name, getattr(self, name)) for name in self.FIELDS)


class SheafObject(object):

    """A complex of sums of O(j) on X, with the model its cohomology uses."""

    def __init__(self, ring, complex_, window=None, full_model=None,
                 provenance=None):
        self.ring = ring
        self.complex = complex_
        self.window = window or PhiWindow()
        self.full_model = full_model
        self.provenance = provenance or {}

    @classmethod
    def zero(cls, ring, window=None, provenance=None):
        return cls(ring, FreeComplex.zero(ring), window, None, provenance)

    def __repr__(self):
        return '<SheafObject %s>' % ', '.join(
            '%d: %s' % (i, self.complex.signature(i, 'O'))
            for i in self.complex.support()) if self.complex.support() \
            else '<SheafObject 0>'

    def is_zero(self):
        return not self.complex.support()

    def twist(self, shift):
        full = self.full_model.twist(shift) if self.full_model else None
        return SheafObject(self.ring, self.complex.twist(shift), self.window,
                           full, self.provenance)

    def terms(self):
        return [
            (i, list(self.complex.twists(i))) for i in self.complex.indices()]

    def cohomology_range(self):
        if self.full_model is None:
            return range(0)
        return range(self.window.f, self.full_model.hi + 1)

    def cohomology(self, i):
        if self.full_model is None or not (
                self.full_model.lo <= i <= self.full_model.hi):
            return PresentedModule.zero(self.ring)
        return cohomology(self.full_model, i)

    def is_finite_length(self, i):
        module = self.cohomology(i)
        top = module.top_degree()
        if top is None:
            return True
        slack = self.ring.configuration.reg_slack
        return any(
            module.hilbert_function(degree) == 0
            for degree in range(top, top + slack + 1))

    def non_finite_length_indices(self):
        return [
            i for i in self.cohomology_range()
            if not self.is_finite_length(i)]

    def as_dict(self):
        return {
            'terms': dict((str(i), twists) for i, twists in self.terms()),
            'window': self.window.as_dict(),
            'provenance': self.provenance,
        }


class PhiComputation(object):

    """One run of the Phi_t pipeline, keeping every intermediate object."""

    def __init__(self, complex_, t, ell=None, slack=None):
        self.input = as_complex(complex_)
        self.ring = self.input.ring
        configuration = self.ring.configuration
        self.t = t
        self.ell = ell
        self.slack = configuration.resolution_slack if slack is None \
            else slack
        self.check_windows = configuration.check_windows
        self.data = _gorenstein(self.ring)
        self._sheaf = None
        self._prepare()

    def _prepare(self):
        t, d = self.t, self.data.d
        complex_ = self.input
        found = _nonzero_cohomology(complex_, complex_.lo, complex_.hi)
        if not found:
            logger.info('Phi_%d of an exact complex is zero', t)
            self.window = PhiWindow(t=t, d=d, ell=self.ell)
            return
        s, u = min(found), max(found)
        if len(complex_.support()) == 1:
            self.quotient = complex_.term(s).minimal_presentation()
        else:
            resolved = resolve_complex(complex_, lo=s - 1)
            self.quotient = PresentedModule(
                resolved.differential(s - 1)).minimal_presentation()
        m = self.quotient.initial_degree()
        c = min(s + m - t, s)
        top = d - c
        length = s - c + d + 1 + self.slack
        self.resolution = resolve_over_R(self.quotient, length).shift(-s)
        self.truncated = brutal_truncate_above(self.resolution, t)
        self.dual = dual(self.truncated)
        self.smart = smart_truncate(self.dual, top)
        self.window = PhiWindow(t=t, d=d, s=s, u=u, m=m, c=c, top=top,
                                ell=self.ell)
        logger.info('Phi_%d window: %r', t, self.window)
        if self.check_windows:
            self._check_first_windows()
        found = _nonzero_cohomology(self.smart, self.smart.lo, top)
        if not found:
            return
        s_prime, u_prime = min(found), max(found)
        m_prime = found[s_prime].initial_degree()
        self.window.s_prime = s_prime
        self.window.u_prime = u_prime
        self.window.m_prime = m_prime
        self.window.b = min(s_prime + m_prime + t - 1, s_prime)
        self.window.f = -u_prime

    def _check_first_windows(self):
        window = self.window
        truncated = self.truncated
        for j in range(truncated.lo + 1, window.c):
            if not cohomology(truncated, j).is_zero():
                raise WindowViolation('F_{>=%d}' % self.t, j,
                                      (window.c, window.u))
        hi = self.dual.hi - 1 if self.dual.extends_above else self.dual.hi
        for j in range(window.top + 1, hi + 1):
            if not cohomology(self.dual, j).is_zero():
                raise WindowViolation('Hom(F_{>=%d}, R)' % self.t, j,
                                      (-window.u, window.top))

    def sheaf(self):
        if self._sheaf is None:
            self._sheaf = self._build()
        return self._sheaf

    def _build(self):
        window = self.window
        if window.f is None:
            return SheafObject.zero(self.ring, window)
        d, b, f = window.d, window.b, window.f
        if self.ell is None:
            window.ell = max(0, d - b + 1 - f)
        reach = f + max(window.ell, d - b + 1 - f)
        self.resolved = resolve_complex(self.smart, lo=-reach)
        self.output = brutal_truncate_below(dual(self.resolved), self.t)
        if self.check_windows:
            for j in range(d - b + 1, min(reach, self.output.hi)):
                if not cohomology(self.output, j).is_zero():
                    raise WindowViolation('E', j, (window.c - d, d - b))
        full = smart_truncate(self.output, d - b)
        provenance = {
            'F': _twist_data(self.resolution),
            'G': _twist_data(self.resolved),
        }
        complex_ = self.output.restrict(f, f + window.ell)
        logger.info('Phi_%d: %d output terms from %d', self.t,
                    len(complex_.support()), f)
        return SheafObject(self.ring, complex_, window, full, provenance)


def _twist_data(complex_):
    return dict(
        (str(i), list(complex_.twists(i))) for i in complex_.indices())


def phi_window(complex_, t):
    return PhiComputation(complex_, t).window


def phi(complex_, t=0, ell=None):
    """Phi_t(C), retried once with doubled slack if a window runs out."""
    complex_ = as_complex(complex_)
    configuration = complex_.ring.configuration
    try:
        return PhiComputation(complex_, t, ell).sheaf()
    except WindowExhausted as error:
        if not configuration.retry_on_exhaustion:
            raise
        slack = 2 * max(configuration.resolution_slack, 1)
        logger.warning('%s; retrying with slack %d', error, slack)
        return PhiComputation(complex_, t, ell, slack).sheaf()


def r_bound(complex_):
    """max over the terms of the top S-resolution twist, minus n."""
    complex_ = as_complex(complex_)
    ring = complex_.ring
    best = None
    for i in complex_.support():
        resolved = resolve_over_S(complex_.term(i))
        betti = BettiTable.from_complex(resolved, top=0)
        if betti.entries:
            top = max(j for _, j in betti.entries)
            best = top if best is None else max(best, top)
    if best is None:
        return -ring.n
    return best - ring.n


class PsiResult(object):

    """Psi_t(C) and the degree pieces of its cohomology."""

    def __init__(self, complex_, t, r, data, strategy):
        self.input = complex_
        self.ring = complex_.ring
        self.t = t
        self.r = r
        self.a = data.a
        self.d = data.d
        self.strategy = strategy
        self.low = t - data.a
        self._complex = None
        self._hom = None
        if strategy == 'zero':
            self.window = (0, -1)
        elif strategy == 'collapsed':
            self.window = complex_.window
        elif strategy == 'closed-form':
            q = complex_.support()[0]
            self.window = (q, q + max(self.d - 1, 0))
        else:
            self.window = (complex_.lo, complex_.hi + self.d - 1)

    def __repr__(self):
        return '<PsiResult %s r=%d t=%d window=%r>' % (
            self.strategy, self.r, self.t, self.window)

    def _hom_complex(self):
        if self._hom is None:
            complex_ = self.input
            length = complex_.hi - complex_.lo + self.d + 1
            ring = self.ring
            unit = PresentedModule.free(GradedFreeModule(ring, (0,)))
            resolved = resolve_over_R(truncate_module(unit, self.r), length)
            full = hom_complex(resolved, complex_)
            if ring.configuration.check_windows:
                self._check_window(full)
            self._hom = smart_truncate(full, self.window[1])
        return self._hom

    def _check_window(self, full):
        """Degree >= t - a pieces of the Hom model vanish above the window."""
        slack = self.ring.configuration.reg_slack
        top = full.hi - 1 if full.extends_above else full.hi
        for i in range(self.window[1] + 1, top + 1):
            for degree in range(self.low, self.low + slack + 1):
                if cohomology_dimension(full, i, degree):
                    raise WindowViolation(
                        'RHom(R_{>=%d}, C)' % self.r, i, self.window)

    @property
    def complex(self):
        """The complex of truncated modules representing Psi_t(C)."""
        if self._complex is None:
            if self.strategy == 'zero':
                self._complex = ModuleComplex(self.ring, {})
            elif self.strategy == 'collapsed':
                self._complex = TruncatedComplex(self.input, self.low)
            else:
                self._complex = TruncatedComplex(
                    self._hom_complex(), self.low)
        return self._complex

    def terms(self):
        complex_ = self.complex
        return [(i, complex_.signature(i)) for i in complex_.indices()]

    def cohomology_dimension(self, i, degree):
        if self.strategy == 'zero' or degree < self.low:
            return 0
        if not self.window[0] <= i <= self.window[1]:
            return 0
        if self.strategy == 'collapsed':
            return cohomology_dimension(self.input, i, degree)
        if self.strategy == 'closed-form':
            return self._closed_form(i, degree)
        return cohomology_dimension(self._hom_complex(), i, degree)

    def _closed_form(self, i, degree):
        q = self.window[0]
        ring = self.ring
        shifts = [-twist for twist in self.input.cover(q).twists]
        total = 0
        if i == q:
            total += sum(ring.hilbert_function(b + degree) for b in shifts)
        if i == q + self.d - 1:
            for b in shifts:
                e = -self.a - b - degree
                if 0 <= e < self.r:
                    total += ring.hilbert_function(e)
        return total

    def table(self, lo, hi):
        return dict(
            (i, dict((degree, self.cohomology_dimension(i, degree))
                     for degree in range(lo, hi + 1)))
            for i in range(self.window[0], self.window[1] + 1))

    def as_dict(self, lo=None, hi=None):
        if lo is None:
            lo = self.low
        if hi is None:
            hi = lo + self.ring.configuration.reg_slack
        return {
            'r': self.r, 't': self.t, 'a': self.a, 'strategy': self.strategy,
            'window': list(self.window),
            'cohomology': dict(
                (str(i), dict((str(k), v) for k, v in row.items()))
                for i, row in self.table(lo, hi).items()),
        }


def _choose_strategy(complex_, t, d):
    if not complex_.support() or d == 0:
        return 'zero'
    if complex_.is_free():
        twists = [
            twist for i in complex_.support()
            for twist in complex_.cover(i).twists]
        if all(twist < t for twist in twists):
            return 'collapsed'
        if len(complex_.support()) == 1:
            return 'closed-form'
    return 'resolution'


def psi(complex_, t=0, r=None, strategy=None):
    """Psi_t(C) = RHom(R_{>=r}, C)_{>=t-a}, by the cheapest exact model."""
    complex_ = as_complex(complex_)
    data = _gorenstein(complex_.ring)
    if r is None:
        r = r_bound(complex_) + max(0, data.a - t)
    if strategy is None:
        strategy = _choose_strategy(complex_, t, data.d)
    elif strategy not in STRATEGIES:
        raise ValidationError('unknown strategy %r' % (strategy,),
                              field='strategy')
    elif strategy != 'resolution' and \
            strategy != _choose_strategy(complex_, t, data.d) and \
            not (strategy == 'closed-form' and complex_.is_free() and
                 len(complex_.support()) == 1):
        raise ValidationError(
            'strategy %r does not apply to this complex' % strategy,
            field='strategy')
    logger.info('Psi_%d with r=%d by %s', t, r, strategy)
    result = PsiResult(complex_, t, r, data, strategy)
    if strategy == 'resolution':
        result._hom_complex()
    return result


def hypercohomology(complex_, i, j):
    """dim H^i(X, C(j)) for j >= 0."""
    if j < 0:
        raise ValidationError('twist %d must be nonnegative' % j, field='j')
    complex_ = as_complex(complex_)
    data = _gorenstein(complex_.ring)
    return psi(complex_, t=data.a).cohomology_dimension(i, j)


class TwistReport(object):

    """Both sides of Phi_t(C(j)) = Phi_{t+j}(C)(j) and its Psi analogue."""

    def __init__(self, t, j):
        self.t = t
        self.j = j
        self.phi_equal = None
        self.psi_equal = None
        self.mismatches = []

    @property
    def ok(self):
        return self.phi_equal is not False and self.psi_equal is not False

    def as_dict(self):
        return {
            't': self.t, 'j': self.j, 'ok': self.ok,
            'phi_equal': self.phi_equal, 'psi_equal': self.psi_equal,
            'mismatches': self.mismatches,
        }


def twist_compat_check(complex_, t, j, ell=4, phi_side=True, psi_side=True):
    complex_ = as_complex(complex_)
    report = TwistReport(t, j)
    if phi_side:
        left = phi(complex_.twist(j), t, ell)
        right = phi(complex_, t + j, ell).twist(j)
        report.phi_equal = True
        for i in sorted(set(left.complex.indices()) |
                        set(right.complex.indices())):
            mine = _twists_at(left.complex, i)
            theirs = _twists_at(right.complex, i)
            if mine != theirs:
                report.phi_equal = False
                report.mismatches.append(
                    {'functor': 'phi', 'index': i, 'left': mine,
                     'right': theirs})
    if psi_side:
        left = psi(complex_.twist(j), t)
        right = psi(complex_, t + j)
        slack = complex_.ring.configuration.reg_slack
        lo = left.low
        report.psi_equal = True
        indices = range(min(left.window[0], right.window[0]),
                        max(left.window[1], right.window[1]) + 1)
        for i in indices:
            for degree in range(lo, lo + slack + 1):
                mine = left.cohomology_dimension(i, degree)
                theirs = right.cohomology_dimension(i, degree + j)
                if mine != theirs:
                    report.psi_equal = False
                    report.mismatches.append(
                        {'functor': 'psi', 'index': i, 'degree': degree,
                         'left': mine, 'right': theirs})
    logger.info('twist check t=%d j=%d: %s', t, j,
                'ok' if report.ok else 'mismatch')
    return report


def _twists_at(complex_, i):
    try:
        return sorted(complex_.twists(i))
    except WindowExhausted:
        return None


class ExceptionalReport(object):

    """Sheaf cohomology of O(-e), 0 <= e < a, on X."""

    def __init__(self, t, a, dimensions):
        self.t = t
        self.a = a
        self.dimensions = dimensions

    @property
    def sequence(self):
        return [-self.t - self.a + 1 + k for k in range(max(self.a, 0))]

    @property
    def is_exceptional(self):
        for e, row in self.dimensions.items():
            expected = [1 if (e == 0 and i == 0) else 0
                        for i in range(len(row))]
            if row != expected:
                return False
        return True

    def as_dict(self):
        return {
            'a': self.a, 't': self.t,
            'sequence': ['O(%d)' % k for k in self.sequence],
            'dimensions': dict(
                (str(e), row) for e, row in self.dimensions.items()),
            'is_exceptional': self.is_exceptional,
        }


def exceptional_check(ring, t=0):
    """Check that O(-t-a+1), ..., O(-t) is an exceptional sequence on X."""
    data = _gorenstein(ring)
    if data.a <= 0:
        return ExceptionalReport(t, data.a, {})
    unit = ModuleComplex.single(
        PresentedModule.free(GradedFreeModule(ring, (0,))), 0)
    result = psi(unit, t=1, strategy='closed-form')
    dimensions = {}
    for e in range(data.a):
        dimensions[e] = [
            result.cohomology_dimension(i, -e) for i in range(data.d)]
    report = ExceptionalReport(t, data.a, dimensions)
    logger.info('exceptional check a=%d: %s', data.a, report.is_exceptional)
    return report
