"""QuotientRing: parsing, normal forms and Hilbert functions."""

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from orlov import Configuration
from orlov.errors import ExponentOverflow, ValidationError
from orlov.polynomials import (
    MAX_EXPONENT, QuotientRing, degree, is_homogeneous)


def test_hilbert_function_of_complete_intersection(ci_ring):
    assert [ci_ring.hilbert_function(d) for d in range(4)] == [1, 5, 14, 29]
    assert ci_ring.hilbert_function(-1) == 0


def test_generators_reduce_to_zero(ci_ring):
    assert not ci_ring.reduce('x0*x1')
    assert not ci_ring.reduce('x2*x3*x4*x0')
    assert ci_ring.reduce('x0*x2') == ci_ring.parse('x0*x2')


def test_monomial_ideal_is_its_own_basis(ci_ring):
    assert sorted(ci_ring.format(g) for g in ci_ring.ideal_basis) == \
        ['x0*x1', 'x2*x3*x4']


def test_linear_basis_in_grevlex_order(ci_ring):
    assert ci_ring.standard_monomials(1) == [
        (1, 0, 0, 0, 0), (0, 1, 0, 0, 0), (0, 0, 1, 0, 0),
        (0, 0, 0, 1, 0), (0, 0, 0, 0, 1)]
    assert (1, 1, 0, 0, 0) not in ci_ring.standard_monomials(2)


def test_caret_syntax_and_formatting(plane):
    f = plane.parse('x^2*y - 3*z')
    assert plane.format(f) == 'x^2*y - 3*z'
    assert plane.format(plane.zero) == '0'
    assert degree(f) == 3
    assert degree(plane.zero) is None
    assert not is_homogeneous(f)


def test_unknown_variable(plane):
    with pytest.raises(ValidationError) as info:
        plane.parse('x*w', field='ideal[0]')
    assert info.value.field == 'ideal[0]'
    assert 'w' in str(info.value)


def test_exponent_overflow(plane):
    with pytest.raises(ExponentOverflow):
        plane.parse('x^%d' % (MAX_EXPONENT + 1))


def test_garbage_does_not_parse(plane):
    with pytest.raises(ValidationError):
        plane.parse('(x + y')
    with pytest.raises(ValidationError):
        plane.polynomial(1.5)


def test_non_homogeneous_ideal_is_rejected():
    with pytest.raises(ValidationError) as info:
        QuotientRing(['x', 'y'], ['x*y', 'x + y^2'])
    assert info.value.field == 'ideal[1]'


def test_unit_ideal_is_rejected():
    with pytest.raises(ValidationError):
        QuotientRing(['x', 'y'], ['1'])


@pytest.mark.parametrize('names', [[], ['x', 'x'], ['lambda'], ['2x']])
def test_bad_variable_names(names):
    with pytest.raises(ValidationError) as info:
        QuotientRing(names)
    assert info.value.field == 'vars'


def test_characteristic_comes_from_configuration():
    ring = QuotientRing(['x'], configuration=Configuration(characteristic=7))
    assert ring.p == 7
    assert ring.reduce('8*x') == ring.parse('x')


def test_ambient_ring_shares_variables(ci_ring):
    ambient = ci_ring.ambient()
    assert ambient.is_polynomial_ring()
    assert ambient.names == ci_ring.names
    assert ambient.hilbert_function(2) == 15
    assert ambient != ci_ring


def test_ring_identity_is_by_value():
    first = QuotientRing(['x', 'y'], ['x*y'])
    second = QuotientRing(['x', 'y'], ['y*x'])
    assert first == second
    assert hash(first) == hash(second)


def test_coordinates_round_trip(ci_ring):
    f = ci_ring.parse('x0^2 + 2*x3*x4')
    assert ci_ring.from_coordinates(ci_ring.coordinates(f)) == f


MONOMIALS = [
    'x0', 'x1', 'x2', 'x3', 'x4', 'x0*x1', 'x0*x2', 'x2*x3', 'x3*x4',
    'x1^2', 'x2*x3*x4', 'x0*x1*x3', 'x4^3']


def polynomials():
    return st.lists(
        st.tuples(st.integers(-5, 5), st.sampled_from(MONOMIALS)),
        max_size=5).map(
            lambda terms: ' + '.join(
                '(%d)*%s' % term for term in terms) or '0')


@settings(max_examples=50, deadline=None)
@given(polynomials(), polynomials())
def test_normal_form_is_a_ring_map(ci_ring, first, second):
    f, g = ci_ring.parse(first), ci_ring.parse(second)
    nf = ci_ring.normal_form
    assert nf(nf(f)) == nf(f)
    assert nf(f + g) == nf(f) + nf(g)
    assert nf(f * g) == nf(nf(f) * nf(g))


@settings(max_examples=50, deadline=None)
@given(polynomials(), polynomials(),
       st.lists(st.integers(0, 32002), min_size=5, max_size=5))
def test_evaluation_is_a_homomorphism(ci_ring, first, second, point):
    ambient = ci_ring.ambient()
    f, g = ambient.parse(first), ambient.parse(second)
    at = list(zip(ambient.variables, point))

    def value(h):
        return h.evaluate(at) if h else 0

    assert value(f * g) == value(f) * value(g)
    assert value(f + g) == value(f) + value(g)
    assert value((f * g) * f) == value(f * (g * f))
