"""Phi_t, Psi_t, hypercohomology and the consistency checks."""

import copy

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from orlov.complexes import FreeComplex, ModuleComplex
from orlov.errors import NotGorenstein, ValidationError, WindowViolation
from orlov.freemodules import GradedFreeModule, GradedMap
from orlov.functors import (
    PhiComputation, as_complex, exceptional_check, hypercohomology, phi, psi,
    r_bound, twist_compat_check)
from orlov.modules import PresentedModule
from orlov.resolution import gorenstein_data, resolve_over_R

from tests.conftest import koszul_complex, random_form, residue_field, unit


def ci_hilbert(degree):
    """1, 5, 14, 29, ...: 3k^2 + 2 from degree 1 on."""
    if degree < 0:
        return 0
    return 1 if degree == 0 else 3 * degree ** 2 + 2


@pytest.fixture(scope="module")
def phi_three(ci_module):
    computation = PhiComputation(ci_module, 3, ell=5)
    computation.sheaf()
    return computation


def test_as_complex_wraps_modules(ci_module):
    complex_ = as_complex(ci_module)
    assert isinstance(complex_, ModuleComplex)
    assert complex_.window == (0, 0)


def test_as_complex_rejects_unbounded(koszul):
    with pytest.raises(ValidationError):
        as_complex(koszul.restrict(-1, 0))


def test_not_gorenstein(fat_point):
    with pytest.raises(NotGorenstein) as info:
        psi(unit(fat_point))
    assert info.value.data.last_rank == 2
    with pytest.raises(NotGorenstein):
        phi(unit(fat_point))


def test_r_bound(ci_ring, plane):
    assert r_bound(unit(ci_ring)) == 1
    assert r_bound(unit(plane)) == -2
    assert r_bound(FreeComplex.zero(plane)) == -2


@pytest.mark.parametrize('t', [0, 1, 2])
def test_phi_kills_perfect_complexes(node, t):
    sheaf = phi(unit(node), t)
    assert sheaf.is_zero()
    assert sheaf.non_finite_length_indices() == []


def test_phi_of_an_exact_complex(plane):
    terms = {-1: GradedFreeModule(plane, (0,)),
             0: GradedFreeModule(plane, (0,))}
    exact = FreeComplex(plane, terms, {
        -1: GradedMap(terms[-1], terms[0], [['1']])})
    computation = PhiComputation(exact, 0)
    assert computation.window.is_empty
    assert computation.sheaf().is_zero()


def test_phi_of_an_mcm_module_is_its_sheaf(node):
    module = PresentedModule.quotient(node, ['x'])
    sheaf = phi(module, 0)
    window = sheaf.window
    assert (window.s, window.u, window.m, window.c) == (0, 0, 0, 0)
    assert window.b == 0
    assert window.f == 0
    assert sheaf.non_finite_length_indices() == [0]
    for degree in range(2, 11):
        assert sheaf.cohomology(0).hilbert_function(degree) == \
            module.hilbert_function(degree)


@pytest.mark.slow
def test_phi_of_the_residue_field_on_a_cubic(cubic):
    sheaf = phi(residue_field(cubic), 0)
    assert sheaf.window.f == -2
    assert sheaf.window.b == 1
    assert sheaf.non_finite_length_indices() == [-1]
    for degree in range(1, 11):
        assert sheaf.cohomology(-1).hilbert_function(degree) == \
            cubic.hilbert_function(degree)


@pytest.mark.slow
@settings(max_examples=20, deadline=None)
@given(st.data())
def test_phi_of_koszul_complexes_has_finite_length_cohomology(
        node, conic, data):
    ring = data.draw(st.sampled_from([node, conic]))
    degrees = data.draw(st.lists(st.integers(1, 2), min_size=1, max_size=3)
                        .filter(lambda chosen: sum(chosen) <= 4))
    forms = []
    for degree in degrees:
        lead = data.draw(st.integers(1, 50))
        rest = data.draw(st.lists(st.integers(0, 50), min_size=5, max_size=5))
        forms.append((degree, random_form(ring, degree, [lead] + rest)))
    shift = data.draw(st.integers(-4, 4 - sum(degrees)))
    t = data.draw(st.integers(-1, 2))
    complex_ = koszul_complex(ring, forms, shift)
    assert complex_.check_square_zero()
    assert not complex_.unit_entries()
    assert phi(complex_, t).non_finite_length_indices() == []


@pytest.mark.parametrize('t', [0, 1, 2])
def test_phi_window_is_stable_in_ell(node, t):
    for module in (PresentedModule.quotient(node, ['x']),
                   residue_field(node)):
        short = phi(module, t, ell=1)
        long_ = phi(module, t, ell=3)
        assert short.window.f == long_.window.f
        for i in short.complex.indices():
            assert sorted(short.complex.twists(i)) == \
                sorted(long_.complex.twists(i))


@pytest.mark.slow
def test_resolution_of_a_complete_intersection_quotient(ci_module):
    resolved = resolve_over_R(ci_module, 4)
    assert [sorted(resolved.twists(-k)) for k in range(5)] == [
        [0], [1, 1], [2, 2, 3], [3, 3, 4, 4], [4, 4, 5, 5, 6]]


@pytest.mark.slow
def test_phi_three_on_a_complete_intersection(phi_three):
    sheaf = phi_three.sheaf()
    window = phi_three.window
    assert (window.c, window.top, window.f) == (-3, 6, -3)
    terms = dict((i, sorted(twists)) for i, twists in sheaf.terms())
    assert terms == {
        -3: [2, 2], -2: [1, 1], -1: [0], 0: [-3], 1: [-4, -4],
        2: [-6, -5, -5]}
    assert sheaf.as_dict()['terms']['-1'] == [0]


@pytest.mark.slow
def test_phi_three_intermediate_complexes(phi_three):
    hom = phi_three.dual
    assert hom.twists(2) == (-3,)
    assert sorted(hom.twists(3)) == [-4, -4, -3, -3]
    assert sorted(hom.twists(4)) == [-6, -5, -5, -4, -4]
    resolved = phi_three.resolved
    assert dict((i, sorted(resolved.twists(i))) for i in range(-2, 5)) == {
        -2: [5, 5, 6], -1: [4, 4], 0: [3], 1: [0], 2: [-1, -1],
        3: [-2, -2], 4: []}


@pytest.mark.slow
def test_psi_of_phi_three(phi_three):
    result = psi(phi_three.sheaf(), 3)
    assert result.strategy == 'collapsed'
    assert result.window == (-3, 2)
    assert result.terms() == [
        (-3, 'R(-2)^2_{>=3}'), (-2, 'R(-1)^2_{>=3}'), (-1, 'R_{>=3}'),
        (0, 'R(3)_{>=3}'), (1, 'R(4)^2_{>=3}'), (2, 'R(5)^2 ++ R(6)_{>=3}')]
    sheaf = phi_three.sheaf()
    for i in range(-3, 3):
        twists = sheaf.complex.twists(i)
        for degree in range(3, 11):
            assert result.complex.term(i).hilbert_function(degree) == sum(
                ci_hilbert(degree - twist) for twist in twists)


def test_psi_of_a_zero_sheaf(node):
    result = psi(phi(unit(node), 0), 0)
    assert result.strategy == 'zero'
    assert result.table(0, 2) == {}


def test_psi_strategy_selection(plane, cubic):
    assert psi(unit(plane), t=3).strategy == 'collapsed'
    assert psi(unit(cubic), t=0).strategy == 'closed-form'
    zero = psi(FreeComplex.zero(plane))
    assert zero.strategy == 'zero'
    assert zero.table(0, 2) == {}


def test_psi_rejects_unknown_strategies(plane, cubic):
    with pytest.raises(ValidationError) as info:
        psi(unit(plane), strategy='spectral')
    assert info.value.field == 'strategy'
    with pytest.raises(ValidationError):
        psi(unit(cubic), t=0, strategy='collapsed')


def test_closed_form_on_an_elliptic_curve(cubic):
    result = psi(unit(cubic), t=0)
    assert result.r == 1
    assert result.window == (0, 1)
    assert result.table(0, 2) == {0: {0: 1, 1: 3, 2: 6},
                                  1: {0: 1, 1: 0, 2: 0}}
    assert result.cohomology_dimension(1, -1) == 0


@pytest.mark.slow
@pytest.mark.parametrize('r', [1, 2])
def test_resolution_strategy_matches_closed_form(cubic, r):
    closed = psi(unit(cubic), t=0)
    resolved = psi(unit(cubic), t=0, r=r, strategy='resolution')
    assert resolved.window == closed.window
    assert resolved.table(0, 2) == closed.table(0, 2)


@pytest.mark.slow
def test_psi_does_not_depend_on_r(ci_ring):
    tables = [psi(unit(ci_ring), 0, r, 'resolution').table(0, 8)
              for r in (1, 2)]
    assert tables[0] == tables[1]
    assert tables[0][0][2] == 14
    assert tables[0][2][0] == 1


def test_resolution_strategy_on_the_plane(plane):
    result = psi(unit(plane), 0, strategy='resolution')
    assert result.window == (0, 2)
    assert result.cohomology_dimension(2, -3) == 1
    assert result.cohomology_dimension(0, 1) == 3


def test_psi_checks_the_vanishing_window(plane, monkeypatch):
    real = gorenstein_data(plane)
    short = copy.copy(real)
    short.d = 2

    def fake(ring):
        return short if ring is plane else gorenstein_data(ring)

    monkeypatch.setattr('orlov.functors.gorenstein_data', fake)
    with pytest.raises(WindowViolation) as info:
        psi(unit(plane), 0, strategy='resolution')
    assert info.value.index == 2
    assert info.value.window == (0, 1)


def test_hypercohomology_of_the_projective_plane(plane):
    assert [hypercohomology(unit(plane), i, 0) for i in range(3)] == \
        [1, 0, 0]
    assert hypercohomology(unit(plane), 0, 2) == 6


def test_hypercohomology_of_an_elliptic_curve(cubic):
    assert hypercohomology(unit(cubic), 0, 0) == 1
    assert hypercohomology(unit(cubic), 1, 0) == 1
    assert hypercohomology(unit(cubic), 1, 1) == 0


@pytest.mark.parametrize('j', [0, 1, 2])
def test_hypercohomology_of_two_points(node, j):
    assert hypercohomology(unit(node), 0, j) == 2


def test_hypercohomology_of_a_calabi_yau_threefold(ci_ring):
    assert hypercohomology(unit(ci_ring), 0, 0) == 1
    assert hypercohomology(unit(ci_ring), 1, 0) == 0
    assert hypercohomology(unit(ci_ring), 2, 0) == 1


def test_hypercohomology_needs_nonnegative_twist(plane):
    with pytest.raises(ValidationError) as info:
        hypercohomology(unit(plane), 0, -1)
    assert info.value.field == 'j'


def test_exceptional_sequence_on_the_plane(plane):
    report = exceptional_check(plane)
    assert report.a == 3
    assert report.sequence == [-2, -1, 0]
    assert report.dimensions == {0: [1, 0, 0], 1: [0, 0, 0], 2: [0, 0, 0]}
    assert report.is_exceptional
    assert report.as_dict()['sequence'] == ['O(-2)', 'O(-1)', 'O(0)']


def test_exceptional_sequence_is_empty_for_calabi_yau(cubic):
    report = exceptional_check(cubic)
    assert report.sequence == []
    assert report.is_exceptional


@pytest.mark.slow
def test_twist_compatibility_on_two_points(node):
    module = PresentedModule.quotient(node, ['x'])
    report = twist_compat_check(module, 0, 1)
    assert report.ok
    assert report.phi_equal and report.psi_equal
    assert report.mismatches == []


@pytest.mark.slow
@settings(max_examples=10, deadline=None)
@given(st.integers(-3, 3), st.integers(-3, 3))
def test_phi_twist_compatibility_on_a_complete_intersection(
        ci_module, t, j):
    report = twist_compat_check(ci_module, t, j, ell=4, psi_side=False)
    assert report.phi_equal, report.mismatches


@pytest.mark.slow
@settings(max_examples=5, deadline=None)
@given(st.integers(-3, 3), st.integers(-3, 3))
def test_psi_twist_compatibility_on_a_complete_intersection(
        ci_module, t, j):
    report = twist_compat_check(ci_module, t, j, phi_side=False)
    assert report.psi_equal, report.mismatches


@settings(max_examples=10, deadline=None)
@given(st.lists(st.integers(0, 2), min_size=1, max_size=2),
       st.integers(0, 2), st.integers(-1, 2))
def test_phi_kills_split_complexes(node, free, cancelled, t):
    terms = {-1: GradedFreeModule(node, (cancelled,)),
             0: GradedFreeModule(node, [cancelled] + free)}
    split = FreeComplex(node, terms, {
        -1: GradedMap(terms[-1], terms[0],
                      [['1']] + [['0'] for _ in free])})
    assert phi(split, t).is_zero()
