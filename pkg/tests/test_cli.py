"""The orlov command line."""

import json

import pytest

from orlov import __version__
from orlov.cli import (
    EXIT_INVALID, EXIT_NOT_GORENSTEIN, EXIT_OK, build_parser, main)
from orlov.problem import ProblemSpec

from tests.conftest import problem_path

CI_PROBLEM = problem_path('complete_intersection.json')

FAT_POINT = {
    'schema': 1, 'vars': ['x', 'y', 'z'], 'ideal': ['x^2', 'x*y', 'y^2'],
    'module': {'target': [0], 'source': [], 'matrix': [[]]},
}


def write_problem(tmp_path, data, name='problem.json'):
    path = tmp_path / name
    path.write_text(data if isinstance(data, str) else json.dumps(data))
    return str(path)


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out.splitlines(), err


def test_version(capsys):
    with pytest.raises(SystemExit) as info:
        build_parser().parse_args(['--version'])
    assert info.value.code == 0
    assert __version__ in capsys.readouterr().out


def test_unknown_command(capsys):
    with pytest.raises(SystemExit):
        main(['frobnicate', problem_path('conic.json')])


def test_gorenstein(capsys):
    code, lines, _ = run(capsys, 'gorenstein', CI_PROBLEM)
    assert code == EXIT_OK
    assert lines[0] == '# orlov gorenstein: p=32003'
    assert lines[1:6] == [
        'a = 0', 'd = 3', 'codim = 2', 'projective dimension = 2',
        'gorenstein: true']


def test_gorenstein_reports_failure_without_erroring(capsys, tmp_path):
    path = write_problem(tmp_path, FAT_POINT)
    code, lines, _ = run(capsys, 'gorenstein', path)
    assert code == EXIT_OK
    assert 'gorenstein: false' in lines


def test_not_gorenstein_exit_code(capsys, tmp_path):
    path = write_problem(tmp_path, FAT_POINT)
    code, lines, err = run(capsys, 'phi', path)
    assert code == EXIT_NOT_GORENSTEIN
    assert lines == []
    assert 'not Gorenstein' in err


def test_invalid_json(capsys, tmp_path):
    path = write_problem(tmp_path, '{\n  "schema": 1,\n}')
    code, lines, err = run(capsys, 'gorenstein', path)
    assert code == EXIT_INVALID
    assert lines == []
    assert err.startswith('orlov: invalid input: line 3, json: ')


def test_missing_file(capsys, tmp_path):
    code, _, err = run(capsys, 'gorenstein', str(tmp_path / 'absent.json'))
    assert code == EXIT_INVALID
    assert err.startswith('orlov: ')


def test_prime_override_is_validated(capsys):
    code, _, err = run(capsys, 'gorenstein', CI_PROBLEM, '--p', '4')
    assert code == EXIT_INVALID
    assert 'char' in err


def test_betti_needs_a_module(capsys):
    code, _, err = run(capsys, 'betti', problem_path('conic.json'))
    assert code == EXIT_INVALID
    assert 'takes a module' in err


def test_betti_over_the_polynomial_ring(capsys, tmp_path):
    export = tmp_path / 'betti.json'
    code, lines, _ = run(
        capsys, 'betti', problem_path('xy_hypersurface.json'),
        '--json', str(export))
    assert code == EXIT_OK
    assert lines[0] == '# orlov betti: p=32003 over=S'
    result = json.loads(export.read_text())['result']
    assert result['betti'] == {'0': [0], '1': [1]}


def test_resolve_a_periodic_module(capsys):
    code, lines, _ = run(
        capsys, 'resolve', problem_path('xy_hypersurface.json'))
    assert code == EXIT_OK
    assert lines[0] == '# orlov resolve: p=32003 length=3'
    assert lines[1] == 'R <-- R(-1) <-- R(-2) <-- R(-3) <-- ...'
    assert lines[-3:] == [
        '       0 1 2 3', 'total: 1 1 1 1', '    0: 1 1 1 1']


def test_resolve_length_defaults_to_spread_plus_dimension(capsys, tmp_path):
    export = tmp_path / 'resolve.json'
    code, lines, _ = run(
        capsys, 'resolve', problem_path('conic.json'), '--json', str(export))
    assert code == EXIT_OK
    assert lines[0] == '# orlov resolve: p=32003 length=5'
    document = json.loads(export.read_text())
    assert document['result']['length'] == 5
    assert document['problem']['parameters']['t'] == 0
    assert 'length' not in document['problem']['parameters']


@pytest.mark.slow
def test_resolve_a_complete_intersection_quotient(capsys):
    code, lines, _ = run(capsys, 'resolve', CI_PROBLEM)
    assert code == EXIT_OK
    assert lines[1] == (
        'R <-- R(-1)^2 <-- R(-2)^2 ++ R(-3) <-- R(-3)^2 ++ R(-4)^2 <-- '
        'R(-4)^2 ++ R(-5)^2 ++ R(-6) <-- ...')


def test_phi_of_an_mcm_module(capsys):
    code, lines, _ = run(capsys, 'phi', problem_path('xy_hypersurface.json'))
    assert code == EXIT_OK
    assert lines[0] == '# orlov phi: p=32003 t=0 ell=2 f=0 b=0'
    assert lines[-1] == 'non-finite-length cohomology: 0'


def test_check_window(capsys):
    code, lines, _ = run(
        capsys, 'check-window', problem_path('xy_hypersurface.json'))
    assert code == EXIT_OK
    assert 'b = 0' in lines
    assert 'f = 0' in lines
    assert lines[-1] == 'windows: ok'


def test_hypercohomology_of_the_projective_plane(capsys):
    code, lines, _ = run(
        capsys, 'hypercoh', problem_path('projective_plane.json'))
    assert code == EXIT_OK
    assert lines[0] == '# orlov hypercoh: p=32003 j=0'
    assert lines[1:] == [
        'H^0(X, C(0)) = 1', 'H^1(X, C(0)) = 0', 'H^2(X, C(0)) = 0']


def test_hypercohomology_flags_override_the_file(capsys):
    code, lines, _ = run(
        capsys, 'hypercoh', problem_path('projective_plane.json'),
        '--j', '1', '--i', '0')
    assert code == EXIT_OK
    assert lines[1:] == ['H^0(X, C(1)) = 3']


def test_psi_export(capsys, tmp_path):
    export = tmp_path / 'psi.json'
    code, lines, _ = run(
        capsys, 'psi', problem_path('projective_plane.json'),
        '--json', str(export))
    assert code == EXIT_OK
    assert lines[0] == (
        '# orlov psi: p=32003 t=0 r=1 strategy=closed-form lo=-3 hi=3')
    document = json.loads(export.read_text())
    assert document['command'] == 'psi'
    cohomology = document['result']['cohomology']
    assert cohomology['0']['2'] == 6
    assert cohomology['2']['-3'] == 1
    assert cohomology['2']['-2'] == 0


def test_export_is_deterministic(capsys, tmp_path):
    first, second = tmp_path / 'first.json', tmp_path / 'second.json'
    for export in (first, second):
        assert main(['gorenstein', problem_path('conic.json'),
                     '--json', str(export)]) == EXIT_OK
    capsys.readouterr()
    assert first.read_text() == second.read_text()
    document = json.loads(first.read_text())
    assert document['result']['a'] == 1
    assert document['problem']['parameters'] == {'t': 0, 'j': 0}


def test_export_records_the_effective_problem(capsys, tmp_path):
    export = tmp_path / 'effective.json'
    code, lines, _ = run(
        capsys, 'gorenstein', problem_path('conic.json'), '--p', '7',
        '--json', str(export))
    assert code == EXIT_OK
    assert lines[0] == '# orlov gorenstein: p=7'
    problem = json.loads(export.read_text())['problem']
    assert problem['char'] == 7
    assert ProblemSpec.from_dict(problem).characteristic == 7


def test_export_records_merged_parameters(capsys, tmp_path):
    export = tmp_path / 'merged.json'
    code, _, _ = run(
        capsys, 'resolve', problem_path('xy_hypersurface.json'),
        '--length', '2', '--json', str(export))
    assert code == EXIT_OK
    document = json.loads(export.read_text())
    assert document['problem']['parameters'] == {'t': 0, 'length': 2}
    assert document['result']['length'] == 2
