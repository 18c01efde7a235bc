"""Rings and modules shared by the test suite."""

import os
from itertools import combinations

import pytest

from orlov.complexes import FreeComplex
from orlov.freemodules import GradedFreeModule, GradedMap
from orlov.modules import PresentedModule
from orlov.polynomials import QuotientRing

PROBLEMS = os.path.join(os.path.dirname(__file__), os.pardir, 'problems')


def problem_path(name):
    return os.path.join(PROBLEMS, name)


def unit(ring):
    return PresentedModule.free(GradedFreeModule(ring, (0,)))


def residue_field(ring):
    """k = R/(all variables)."""
    return PresentedModule.quotient(ring, list(ring.names))


def random_form(ring, degree, coefficients):
    """A combination of the standard monomials of one degree.

    Nonzero in R as soon as the first coefficient is a unit.
    """
    form = ring.zero
    for monom, coefficient in zip(ring.standard_monomials(degree),
                                  coefficients):
        form += ring.monomial(monom, coefficient)
    return form


def koszul_complex(ring, forms, shift=0):
    """The Koszul complex on (degree, form) pairs, R(-shift) in degree 0."""
    degrees = [degree for degree, _ in forms]
    subsets = [list(combinations(range(len(forms)), p))
               for p in range(len(forms) + 1)]
    terms = dict(
        (-p, GradedFreeModule(ring, [
            shift + sum(degrees[s] for s in subset) for subset in chosen]))
        for p, chosen in enumerate(subsets))
    maps = {}
    for p in range(1, len(forms) + 1):
        rows = dict((subset, r) for r, subset in enumerate(subsets[p - 1]))
        matrix = [[0] * len(subsets[p]) for _ in rows]
        for c, subset in enumerate(subsets[p]):
            for position, s in enumerate(subset):
                rest = subset[:position] + subset[position + 1:]
                form = forms[s][1]
                matrix[rows[rest]][c] = form if position % 2 == 0 else -form
        maps[-p] = GradedMap(terms[-p], terms[1 - p], matrix)
    return FreeComplex(ring, terms, maps)


@pytest.fixture(scope="session")
def ci_ring():
    """The (2,3) complete intersection in P^4."""
    return QuotientRing(
        ['x0', 'x1', 'x2', 'x3', 'x4'], ['x0*x1', 'x2*x3*x4'])


@pytest.fixture(scope="session")
def ci_module(ci_ring):
    return PresentedModule.from_matrix(ci_ring, [0], [1, 1], [['x0', 'x2']])


@pytest.fixture(scope="session")
def plane():
    return QuotientRing(['x', 'y', 'z'])


@pytest.fixture(scope="session")
def affine_plane():
    return QuotientRing(['x', 'y'])


@pytest.fixture(scope="session")
def node():
    return QuotientRing(['x', 'y'], ['x*y'])


@pytest.fixture(scope="session")
def cubic():
    return QuotientRing(['x', 'y', 'z'], ['x^3 + y^3 + z^3'])


@pytest.fixture(scope="session")
def conic():
    return QuotientRing(['x', 'y', 'z'], ['x^2 + y^2 + z^2'])


@pytest.fixture(scope="session")
def fat_point():
    """S/(x, y)^2 in P^2: codimension 2 with two last syzygies."""
    return QuotientRing(['x', 'y', 'z'], ['x^2', 'x*y', 'y^2'])


@pytest.fixture(scope="session")
def koszul(affine_plane):
    """0 -> S(-2) -> S(-1)^2 -> S -> 0 in degrees -2, -1, 0."""
    ring = affine_plane
    terms = {
        -2: GradedFreeModule(ring, (2,)),
        -1: GradedFreeModule(ring, (1, 1)),
        0: GradedFreeModule(ring, (0,)),
    }
    maps = {
        -2: GradedMap(terms[-2], terms[-1], [['y'], ['-x']]),
        -1: GradedMap(terms[-1], terms[0], [['x', 'y']]),
    }
    return FreeComplex(ring, terms, maps)
