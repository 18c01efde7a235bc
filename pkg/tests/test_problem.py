"""Loading and validating problem files."""

import copy
import json

import pytest

from orlov.complexes import ModuleComplex
from orlov.errors import ValidationError
from orlov.modules import PresentedModule
from orlov.problem import ProblemSpec

from tests.conftest import problem_path

NODE = {
    'schema': 1, 'char': 32003, 'vars': ['x', 'y'], 'ideal': ['x*y'],
    'module': {'target': [0], 'source': [1], 'matrix': [['x']]},
    'parameters': {'t': 0},
}


def invalid(**changes):
    data = copy.deepcopy(NODE)
    for name, value in changes.items():
        if value is None:
            del data[name]
        else:
            data[name] = value
    with pytest.raises(ValidationError) as info:
        ProblemSpec.from_dict(data)
    return info.value


def test_load_a_module_problem():
    spec = ProblemSpec.load(problem_path('complete_intersection.json'))
    assert spec.parameter('t') == 3
    assert spec.parameter('ell') == 5
    assert spec.parameter('j') is None
    module = spec.build(spec.ring())
    assert isinstance(module, PresentedModule)
    assert module.signature() == 'coker(R(-1)^2 -> R)'


def test_load_a_complex_problem():
    spec = ProblemSpec.load(problem_path('conic.json'))
    complex_ = spec.build(spec.ring())
    assert isinstance(complex_, ModuleComplex)
    assert complex_.window == (-1, 0)
    assert complex_.cover(-1).twists == (1,)


def test_free_module_problem():
    spec = ProblemSpec.load(problem_path('projective_plane.json'))
    module = spec.build(spec.ring())
    assert module.is_free()
    assert spec.ring().is_polynomial_ring()


def test_defaults():
    data = copy.deepcopy(NODE)
    del data['char']
    del data['parameters']
    spec = ProblemSpec.from_dict(data)
    assert spec.characteristic == 32003
    assert spec.parameters == {}


def test_round_trip():
    spec = ProblemSpec.from_dict(NODE)
    assert ProblemSpec.from_dict(spec.as_dict()).as_dict() == spec.as_dict()


def test_export_is_canonical():
    spec = ProblemSpec.from_dict(NODE)
    text = spec.export('phi', {'b': 0, 'a': [1, 2]})
    assert text.endswith('\n')
    assert text == spec.export('phi', {'a': [1, 2], 'b': 0})
    document = json.loads(text)
    assert document['command'] == 'phi'
    assert document['problem'] == spec.as_dict()
    assert list(document) == sorted(document)


def test_updated_merges_parameters_and_prime():
    spec = ProblemSpec.from_dict(NODE)
    effective = spec.updated(7, {'ell': 3})
    assert effective.characteristic == 7
    assert effective.parameters == {'t': 0, 'ell': 3}
    assert effective.module == spec.module
    assert spec.characteristic == 32003
    assert spec.parameters == {'t': 0}
    assert spec.updated().as_dict() == spec.as_dict()


def test_json_syntax_errors_carry_the_line():
    with pytest.raises(ValidationError) as info:
        ProblemSpec.from_text('{\n  "schema": 1,\n}')
    assert info.value.field == 'json'
    assert info.value.line == 3
    assert str(info.value).startswith('line 3, json: ')


def test_top_level_must_be_an_object():
    with pytest.raises(ValidationError):
        ProblemSpec.from_text('[1, 2]')


def test_missing_variables():
    error = invalid(vars=None)
    assert error.field == 'vars'
    assert error.message == 'missing field'


def test_unsupported_schema():
    assert invalid(schema=2).field == 'schema'


def test_characteristic_must_be_prime():
    assert invalid(char=15).field == 'char'
    assert invalid(char='7').field == 'char'


def test_non_homogeneous_ideal():
    assert invalid(ideal=['x*y', 'x + y^2']).field == 'ideal[1]'


def test_exactly_one_object():
    assert invalid(module=None).field == 'module'
    data = copy.deepcopy(NODE)
    data['complex'] = {'terms': []}
    with pytest.raises(ValidationError) as info:
        ProblemSpec.from_dict(data)
    assert info.value.field == 'module'


def test_unknown_parameter():
    assert invalid(parameters={'q': 1}).field == 'parameters.q'
    assert invalid(parameters={'t': 'zero'}).field == 'parameters.t'


@pytest.mark.parametrize('module, field', [
    ({'target': [0], 'source': [1], 'matrix': [[1.5]]},
     'module.matrix[0][0]'),
    ({'target': [0], 'source': [1], 'matrix': [['w']]},
     'module.matrix[0][0]'),
    ({'target': [0], 'source': [2], 'matrix': [['x']]},
     'module.matrix[0][0]'),
    ({'target': [0], 'source': [1, 1], 'matrix': [['x']]},
     'module.matrix[0]'),
    ({'target': [0, 'a'], 'source': []}, 'module.target[1]'),
    ({'source': [1], 'matrix': [['x']]}, 'module.target'),
])
def test_module_errors_point_at_the_field(module, field):
    assert invalid(module=module).field == field


def test_complex_errors_point_at_the_field():
    data = copy.deepcopy(NODE)
    del data['module']
    data['complex'] = {
        'terms': [
            {'degree': -1, 'module': {'target': [1], 'source': []}},
            {'degree': 0, 'module': {'target': [0], 'source': []}},
        ],
        'differentials': [{'degree': -1, 'matrix': [['x^2']]}],
    }
    with pytest.raises(ValidationError) as info:
        ProblemSpec.from_dict(data)
    assert info.value.field == 'complex.differentials[0].matrix[0][0]'

    data['complex']['differentials'] = [{'degree': 3, 'matrix': [['x']]}]
    with pytest.raises(ValidationError) as info:
        ProblemSpec.from_dict(data)
    assert info.value.field == 'complex.differentials[0].degree'


def test_repeated_term_degree():
    data = copy.deepcopy(NODE)
    del data['module']
    term = {'degree': 0, 'module': {'target': [0], 'source': []}}
    data['complex'] = {'terms': [term, term]}
    with pytest.raises(ValidationError) as info:
        ProblemSpec.from_dict(data)
    assert info.value.field == 'complex.terms[1].degree'


def test_complex_must_square_to_zero():
    data = copy.deepcopy(NODE)
    del data['module']
    data['ideal'] = []
    data['complex'] = {
        'terms': [
            {'degree': -2, 'module': {'target': [2], 'source': []}},
            {'degree': -1, 'module': {'target': [1], 'source': []}},
            {'degree': 0, 'module': {'target': [0], 'source': []}},
        ],
        'differentials': [
            {'degree': -2, 'matrix': [['x']]},
            {'degree': -1, 'matrix': [['x']]},
        ],
    }
    with pytest.raises(ValidationError) as info:
        ProblemSpec.from_dict(data)
    assert info.value.field == 'complex.differentials[-2]'
