import logging

import numpy as np
import pytest

from src.services.algebra import (FiniteLocalAlgebra, PresentedRing, annihilator, compile_ring, default_names,
                                  field_algebra, hilbert, ideal_generated, is_compressed, is_exact_zero_divisor,
                                  is_gorenstein, is_ideal, mu, mu_lower_bound_compressed, mu_presentation,
                                  minimal_generators, presentation_of, quotient_power, ring_type, socle,
                                  truncated_polynomial_ring, valuation)
from src.services.constructions import builtin
from src.services.linalg import Subspace
from src.services.scalars import PrimeField
from src.utils.errors import (InputError, NotAnIdealError, OperandMismatchError, PresentationError,
                              UnknownVariableError)

EXA_43_BASIS = {'1', 'x', 'y', 'z', 'y^2', 'y*z', 'z^2', 'z^3'}
EXA_54_BASIS = {'1', 'w', 'x', 'y', 'z', 'w*y', 'x^2', 'x*y', 'x*z', 'x^2*z'}


@pytest.mark.parametrize('p', [101, 2])
def test_exa_43_basis_and_invariants(compiled, p):
    algebra = compiled('exa-4.3', p)

    assert set(algebra.labels) == EXA_43_BASIS
    assert algebra.labels[0] == '1'
    assert hilbert(algebra) == [1, 3, 3, 1]
    assert algebra.socle_degree == 3
    assert algebra.embedding_dimension == 3
    assert ring_type(algebra) == 1
    assert is_gorenstein(algebra)
    assert is_compressed(algebra)


def test_exa_54_basis_and_invariants(compiled):
    algebra = compiled('exa-5.4')

    assert set(algebra.labels) == EXA_54_BASIS
    assert hilbert(algebra) == [1, 4, 4, 1]
    assert is_gorenstein(algebra)
    assert mu_presentation(algebra) == 7


@pytest.mark.parametrize('name, expected', [
    ('ci-e2', [1, 2, 1]),
    ('ci-e3', [1, 3, 3, 1]),
    ('ci-e4', [1, 4, 6, 4, 1]),
    ('socle2-e3', [1, 3, 2]),
    ('square-max-e3', [1, 3]),
])
def test_hilbert_functions(compiled, name, expected):
    algebra = compiled(name)

    assert hilbert(algebra) == expected
    assert algebra.dim == sum(expected)
    assert algebra.check_axioms()


def test_level_ring_is_not_gorenstein(compiled, caplog):
    algebra = compiled('socle2-e3')

    assert ring_type(algebra) == 2
    assert socle(algebra).dim == 2
    assert not is_gorenstein(algebra)
    caplog.set_level(logging.WARNING, logger='src')
    logging.getLogger('src').addHandler(caplog.handler)
    try:
        assert not is_compressed(algebra)
    finally:
        logging.getLogger('src').removeHandler(caplog.handler)
    assert 'compressedness' in caplog.text


def test_mu_presentation(compiled):
    assert mu_presentation(compiled('exa-4.3')) == 5
    assert mu_presentation(compiled('ci-e3')) == 3


def test_valuation(compiled):
    algebra = compiled('exa-4.3')

    assert valuation(algebra, '1') == 0
    assert valuation(algebra, 'x') == 1
    assert valuation(algebra, 'y*z') == 2
    assert valuation(algebra, 'z^3') == 3
    assert valuation(algebra, algebra.zero()) == 4
    assert valuation(algebra, algebra.square_of_max) == 2


def test_relations_hold_in_the_algebra(compiled):
    algebra = compiled('exa-4.3')

    for relation in algebra.origin.ideal:
        assert not np.any(algebra.element(relation))
    assert np.array_equal(algebra.element('x^2'), algebra.element('y*z'))


def test_element_rejects_unknown_variable(compiled):
    with pytest.raises(UnknownVariableError):
        compiled('exa-4.3').element('w')


def test_mu_of_ideals(compiled):
    algebra = compiled('exa-4.3')

    assert mu(algebra, algebra.mmax) == 3
    assert mu(algebra, algebra.square_of_max) == 3
    not_ideal = Subspace(algebra.p, algebra.dim, [algebra.element('x')])
    assert not is_ideal(algebra, not_ideal)
    with pytest.raises(NotAnIdealError):
        mu(algebra, not_ideal)
    with pytest.raises(OperandMismatchError):
        mu(algebra, Subspace(algebra.p, 3))


def test_ideal_generated_and_minimal_generators(compiled):
    algebra = compiled('ci-e3')
    ideal = ideal_generated(algebra, ['x', 'y'])

    assert is_ideal(algebra, ideal)
    assert mu(algebra, ideal) == 2
    assert minimal_generators(algebra, ideal).shape[0] == 2


def test_exact_zero_divisors(compiled):
    ci = compiled('ci-e3')

    assert annihilator(ci, 'x') == ideal_generated(ci, ['x'])
    assert annihilator(ci, 'x').dim == 4
    assert is_exact_zero_divisor(ci, 'x')
    assert not is_exact_zero_divisor(ci, '1')
    assert not is_exact_zero_divisor(ci, ci.zero())


def test_quotient_power(compiled):
    algebra = compiled('exa-4.3')

    assert hilbert(quotient_power(algebra, 3)) == [1, 3, 3]
    assert hilbert(quotient_power(algebra, 2)) == [1, 3]
    assert quotient_power(algebra, 1).dim == 1
    assert quotient_power(algebra, 4) is algebra
    with pytest.raises(InputError):
        quotient_power(algebra, 0)


def test_quotient_power_extends_the_presentation(compiled):
    algebra = compiled('ci-e3')
    quotient = quotient_power(algebra, 2)

    assert quotient.origin.ideal[:3] == algebra.origin.ideal
    assert set(quotient.origin.ideal[3:]) == {'x^2', 'x*y', 'x*z', 'y^2', 'y*z', 'z^2'}
    assert quotient.origin.cap == 2
    assert quotient.origin.label == 'ci-e3/m^2'
    assert hilbert(quotient) == [1, 3]


def test_quotient_power_without_presentation(compiled):
    presented = compiled('exa-4.3')
    bare = FiniteLocalAlgebra(presented.field, presented.labels, presented.mult)

    quotient = quotient_power(bare, 3)

    assert hilbert(quotient) == [1, 3, 3]
    assert quotient.check_axioms()
    assert quotient.labels[0] == '1'


def test_presentation_round_trip(compiled):
    for name in ('exa-4.3', 'ci-e3'):
        algebra = compiled(name)
        presented = presentation_of(algebra, names=list(algebra.origin.names))

        assert presented.same_ideal(algebra.origin)
        assert hilbert(compile_ring(presented)) == hilbert(algebra)


def test_truncated_polynomial_ring():
    ring = truncated_polynomial_ring(PrimeField(5), ['x', 'y'], 3)
    algebra = compile_ring(ring)

    assert hilbert(algebra) == [1, 2, 3]
    with pytest.raises(InputError):
        truncated_polynomial_ring(PrimeField(5), ['x', 'y'], 1)


def test_field_algebra():
    k = field_algebra(PrimeField(3))

    assert k.dim == 1
    assert k.embedding_dimension == 0
    assert k.socle_degree == 0
    assert hilbert(k) == [1]


def test_presentation_errors():
    with pytest.raises(PresentationError):
        compile_ring(PresentedRing.from_strings(101, ['x', 'y'], ['x + y^2', 'y^3']))
    with pytest.raises(PresentationError):
        compile_ring(PresentedRing.from_strings(101, ['x', 'y'], ['x^2']))
    with pytest.raises(PresentationError):
        compile_ring(PresentedRing.from_strings(101, ['x', 'y', 'z'], ['x^2', 'y^2', 'z^2'], cap=3))


def test_cap_search_matches_explicit_cap():
    searched = compile_ring(PresentedRing.from_strings(101, ['x', 'y', 'z'], ['x^2', 'y^2', 'z^2']))

    assert hilbert(searched) == [1, 3, 3, 1]


def test_same_ideal_needs_matching_rings():
    a = builtin('ci-e3', 101)
    b = builtin('ci-e3', 5)

    with pytest.raises(OperandMismatchError):
        a.same_ideal(b)


def test_mu_lower_bound_compressed(compiled):
    assert mu_lower_bound_compressed(3, 3) <= mu_presentation(compiled('exa-4.3'))
    assert mu_lower_bound_compressed(4, 3) <= mu_presentation(compiled('exa-5.4'))
    with pytest.raises(InputError):
        mu_lower_bound_compressed(1, 3)


def test_default_names():
    assert default_names(2) == ['x', 'y']
    assert default_names(5) == ['x1', 'x2', 'x3', 'x4', 'x5']
