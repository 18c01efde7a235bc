"""Command line front end: ``orlov <command> [options] FILE``.

Every command reads one problem file, prints a self-describing text report
on standard output and, with ``--json PATH``, writes the structured export.
Logging goes to standard error.
"""

import argparse
import logging
import sys

from orlov import Configuration, __version__
from orlov.complexes import (
    ModuleComplex, format_complex, resolve_complex)
from orlov.errors import (
    NotGorenstein, OrlovError, ValidationError, WindowExhausted,
    WindowViolation)
from orlov.functors import (
    STRATEGIES, PhiComputation, as_complex, hypercohomology, phi, psi,
    twist_compat_check)
from orlov.modules import PresentedModule
from orlov.problem import PARAMETERS, ProblemSpec
from orlov.resolution import (
    BettiTable, gorenstein_data, resolve_over_R, resolve_over_S)

logger = logging.getLogger(__name__)

LOG_FORMAT = '%(name)s:%(levelname)s:%(message)s'

EXIT_OK = 0
EXIT_INVALID = 1
EXIT_NOT_GORENSTEIN = 2
EXIT_EXHAUSTED = 3
EXIT_CHECK_FAILED = 4


def _header(command, values):
    return '# orlov %s: %s' % (command, ' '.join(
        '%s=%s' % (name, value) for name, value in values))


def _module(obj, command):
    if not isinstance(obj, PresentedModule):
        raise ValidationError('%s takes a module' % command, field='complex')
    return obj


def _format_table(table, lo, hi):
    degrees = list(range(lo, hi + 1))
    rows = [['i\\j'] + [str(j) for j in degrees]]
    for i in sorted(table):
        rows.append(['%d:' % i] + [str(table[i][j]) for j in degrees])
    widths = [max(len(row[c]) for row in rows) for c in range(len(rows[0]))]
    return [
        ' '.join(cell.rjust(width) for cell, width in zip(row, widths))
        for row in rows]


def run_resolve(spec, ring, obj, options):
    length = options.length
    if length is None:
        spread = 0 if isinstance(obj, PresentedModule) else obj.hi - obj.lo
        length = spread + gorenstein_data(ring).d + 2
    if isinstance(obj, PresentedModule):
        resolved = resolve_over_R(obj, length)
    else:
        resolved = resolve_complex(obj, length=length)
    betti = BettiTable.from_complex(resolved, top=resolved.hi)
    lines = [_header('resolve', [('p', ring.p), ('length', length)])]
    lines.extend(format_complex(resolved, arrow='<--').split('\n'))
    lines.append('')
    lines.extend(betti.format().split('\n'))
    return lines, {
        'betti': betti.to_json(), 'extends': resolved.extends_below,
        'length': length, 'window': list(resolved.window)}


def run_betti(spec, ring, obj, options):
    module = _module(obj, 'betti')
    betti = BettiTable.from_complex(resolve_over_S(module), top=0)
    lines = [_header('betti', [('p', ring.p), ('over', 'S')])]
    lines.extend(betti.format().split('\n'))
    return lines, {'betti': betti.to_json()}


def run_gorenstein(spec, ring, obj, options):
    data = gorenstein_data(ring)
    lines = [
        _header('gorenstein', [('p', ring.p)]),
        'a = %d' % data.a,
        'd = %d' % data.d,
        'codim = %d' % data.codim,
        'projective dimension = %d' % data.projective_dimension,
        'gorenstein: %s' % ('true' if data.is_gorenstein else 'false'),
        '',
    ]
    lines.extend(data.betti.format().split('\n'))
    result = data.as_dict()
    result['betti'] = data.betti.to_json()
    return lines, result


def run_phi(spec, ring, obj, options):
    sheaf = phi(obj, options.t, options.ell)
    window = sheaf.window
    lines = [_header('phi', [
        ('p', ring.p), ('t', options.t), ('ell', window.ell),
        ('f', window.f), ('b', window.b)])]
    lines.extend(format_complex(sheaf.complex, sheaf=True).split('\n'))
    indices = sheaf.non_finite_length_indices()
    lines.append('non-finite-length cohomology: %s' % (
        ', '.join(str(i) for i in indices) or 'none'))
    result = sheaf.as_dict()
    result['non_finite_length'] = indices
    return lines, result


def run_psi(spec, ring, obj, options):
    result = psi(obj, options.t, options.r, options.strategy)
    lo = result.low if options.lo is None else options.lo
    hi = lo + ring.configuration.reg_slack if options.hi is None \
        else options.hi
    if lo > hi:
        raise ValidationError('empty degree window [%d, %d]' % (lo, hi),
                              field='lo')
    lines = [_header('psi', [
        ('p', ring.p), ('t', options.t), ('r', result.r),
        ('strategy', result.strategy), ('lo', lo), ('hi', hi)])]
    for i, signature in result.terms():
        lines.append('%d: %s' % (i, signature))
    lines.append('')
    lines.extend(_format_table(result.table(lo, hi), lo, hi))
    return lines, result.as_dict(lo, hi)


def run_hypercoh(spec, ring, obj, options):
    data = gorenstein_data(ring)
    j = options.j if options.j is not None else 0
    if options.i is not None:
        degrees = [options.i]
    else:
        degrees = list(range(obj.lo, obj.hi + max(data.d - 1, 0) + 1))
    lines = [_header('hypercoh', [('p', ring.p), ('j', j)])]
    dimensions = {}
    for i in degrees:
        dimensions[str(i)] = hypercohomology(obj, i, j)
        lines.append('H^%d(X, C(%d)) = %d' % (i, j, dimensions[str(i)]))
    return lines, {'j': j, 'dimensions': dimensions}


def run_check_twist(spec, ring, obj, options):
    j = options.j if options.j is not None else 1
    ell = options.ell if options.ell is not None else 4
    report = twist_compat_check(obj, options.t, j, ell)
    lines = [_header('check-twist', [
        ('p', ring.p), ('t', options.t), ('j', j), ('ell', ell)])]
    lines.append('phi: %s' % ('ok' if report.phi_equal else 'mismatch'))
    lines.append('psi: %s' % ('ok' if report.psi_equal else 'mismatch'))
    for mismatch in report.mismatches:
        lines.append('  %s at %d: %s != %s' % (
            mismatch['functor'], mismatch['index'], mismatch['left'],
            mismatch['right']))
    return lines, report.as_dict()


def run_check_window(spec, ring, obj, options):
    computation = PhiComputation(obj, options.t, options.ell)
    computation.sheaf()
    window = computation.window
    lines = [_header('check-window', [('p', ring.p), ('t', options.t)])]
    for name in window.FIELDS:
        lines.append('%s = %s' % (name, getattr(window, name)))
    lines.append('windows: ok')
    return lines, {'window': window.as_dict(), 'ok': True}


COMMANDS = {
    'resolve': run_resolve,
    'betti': run_betti,
    'gorenstein': run_gorenstein,
    'phi': run_phi,
    'psi': run_psi,
    'hypercoh': run_hypercoh,
    'check-twist': run_check_twist,
    'check-window': run_check_window,
}

NEEDS_COMPLEX = ('phi', 'psi', 'hypercoh', 'check-twist', 'check-window')


def build_parser():
    parser = argparse.ArgumentParser(
        prog='orlov',
        description='Resolutions and the functors Phi_t and Psi_t.')
    parser.add_argument('command', choices=sorted(COMMANDS))
    parser.add_argument('problem', metavar='FILE', help='problem file (JSON)')
    parser.add_argument('--t', type=int, help='the functor index t')
    parser.add_argument('--ell', type=int,
                        help='number of phi output terms past the first')
    parser.add_argument('--length', type=int, help='resolution length')
    parser.add_argument('--p', type=int, help='override the prime')
    parser.add_argument('--json', metavar='PATH',
                        help='write the structured export to PATH')
    parser.add_argument('--j', type=int, help='twist for hypercoh and '
                        'check-twist')
    parser.add_argument('--i', type=int, help='cohomological degree')
    parser.add_argument('--lo', type=int, help='lowest internal degree')
    parser.add_argument('--hi', type=int, help='highest internal degree')
    parser.add_argument('--r', type=int, help='override the psi bound r')
    parser.add_argument('--strategy', choices=STRATEGIES,
                        help='force a psi strategy')
    parser.add_argument('-v', '--verbose', action='count', default=0,
                        help='more logging (repeatable)')
    parser.add_argument('--version', action='version',
                        version='%(prog)s ' + __version__)
    return parser


def _merge(options, spec):
    """Command line flags win over the problem file's parameters.

    Returns the problem as it is run: the effective prime and the
    merged parameters.
    """
    for name in PARAMETERS:
        if getattr(options, name) is None:
            setattr(options, name, spec.parameter(name))
    if options.t is None:
        options.t = 0
    parameters = dict(
        (name, getattr(options, name)) for name in PARAMETERS
        if getattr(options, name) is not None)
    return spec.updated(options.p or spec.characteristic, parameters)


def run(command, spec, options):
    """Execute one command; returns (exit code, text lines, result)."""
    configuration = Configuration(characteristic=spec.characteristic)
    ring = spec.ring(configuration)
    obj = spec.build(ring)
    if command in NEEDS_COMPLEX:
        obj = as_complex(obj)
    elif command == 'resolve' and isinstance(obj, ModuleComplex) and \
            len(obj.support()) == 1:
        obj = obj.term(obj.support()[0])
    lines, result = COMMANDS[command](spec, ring, obj, options)
    code = EXIT_OK
    if command == 'check-twist' and not result['ok']:
        code = EXIT_CHECK_FAILED
    return code, lines, result


def main(argv=None):
    options = build_parser().parse_args(argv)
    level = logging.WARNING
    if options.verbose == 1:
        level = logging.INFO
    elif options.verbose > 1:
        level = logging.DEBUG
    logging.basicConfig(level=level, format=LOG_FORMAT, stream=sys.stderr)
    try:
        spec = _merge(options, ProblemSpec.load(options.problem))
        code, lines, result = run(options.command, spec, options)
    except ValidationError as error:
        print('orlov: invalid input: %s' % error, file=sys.stderr)
        return EXIT_INVALID
    except NotGorenstein as error:
        print('orlov: %s' % error, file=sys.stderr)
        return EXIT_NOT_GORENSTEIN
    except WindowExhausted as error:
        print('orlov: %s' % error, file=sys.stderr)
        return EXIT_EXHAUSTED
    except WindowViolation as error:
        print('orlov: window check failed: %s' % error, file=sys.stderr)
        return EXIT_CHECK_FAILED
    except (OrlovError, OSError) as error:
        print('orlov: %s' % error, file=sys.stderr)
        return EXIT_INVALID
    sys.stdout.write('\n'.join(lines) + '\n')
    if options.json:
        with open(options.json, 'w', encoding='utf-8') as export:
            export.write(spec.export(options.command, result))
        logger.info('wrote %s', options.json)
    return code


if __name__ == '__main__':
    sys.exit(main())
