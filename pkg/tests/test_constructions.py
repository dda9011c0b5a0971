import numpy as np
import pytest
import sympy

from src.services.algebra import compile_ring, hilbert, is_compressed, is_gorenstein
from src.services.constructions import (SkewMatrix, builtin, builtin_names, builtin_skew_matrix, example_family_e2,
                                        ezd_search, pfaffian, pfaffian_ideal, pfaffian_presentation,
                                        trivial_extension)
from src.services.koszul import is_complete_intersection
from src.services.scalars import Monomial, PrimeField
from src.utils.errors import InputError


def _random_skew(rng, size, p):
    values = [[0] * size for _ in range(size)]
    for i in range(size):
        for j in range(i + 1, size):
            value = int(rng.integers(0, p))
            values[i][j] = value
            values[j][i] = -value
    return values


@pytest.mark.parametrize('size', [2, 4, 6, 8])
def test_pfaffian_squares_to_determinant(rng, size):
    p = 101
    for _ in range(25):
        values = _random_skew(rng, size, p)
        pf = pfaffian(SkewMatrix.from_scalars(PrimeField(p), values)).coefficient(Monomial(()))

        assert pf * pf % p == int(sympy.Matrix(values).det()) % p


def test_pfaffian_of_standard_form():
    field = PrimeField(7)
    values = [[0, 1, 0, 0], [-1, 0, 0, 0], [0, 0, 0, 3], [0, 0, -3, 0]]

    assert pfaffian(SkewMatrix.from_scalars(field, values)).coefficient(Monomial(())) == 3


def test_pfaffian_rejects_bad_sizes():
    field = PrimeField(7)
    odd = SkewMatrix.from_scalars(field, [[0, 1, 2], [-1, 0, 3], [-2, -3, 0]])

    with pytest.raises(InputError):
        pfaffian(odd)
    with pytest.raises(InputError):
        pfaffian_ideal(SkewMatrix.from_scalars(field, [[0, 1], [-1, 0]]))


def test_skew_matrix_validation():
    field = PrimeField(7)

    with pytest.raises(InputError):
        SkewMatrix.from_scalars(field, [[0, 1], [1, 0]])
    with pytest.raises(InputError):
        SkewMatrix.from_scalars(field, [[1, 0], [0, 0]])
    with pytest.raises(InputError):
        SkewMatrix.from_scalars(field, [[0, 1], [-1]])


def test_pfaffians_recover_the_gorenstein_ideal():
    matrix = builtin_skew_matrix('exa-4.3')
    generators = pfaffian_ideal(matrix)

    assert len(generators) == 5
    presented = pfaffian_presentation(matrix)
    assert presented.same_ideal(builtin('exa-4.3'))
    assert hilbert(compile_ring(presented)) == [1, 3, 3, 1]


def test_trivial_extension_of_level_ring(compiled):
    extension = trivial_extension(compiled('socle2-e3'))

    assert extension.dim == 12
    assert extension.check_axioms()
    assert hilbert(extension) == [1, 5, 5, 1]
    assert is_gorenstein(extension)
    assert is_compressed(extension)
    assert not is_complete_intersection(extension)


def test_ezd_found_in_complete_intersection():
    algebra = compile_ring(builtin('ci-e3', 5))

    report = ezd_search(algebra, mode='linear')

    assert report.found
    assert report.witness_text == 'x'
    assert report.consumed == 1
    assert report.complementary
    assert report.to_dict()['generator'] == 'x'


def test_ezd_absent_from_compressed_gorenstein_ring():
    algebra = compile_ring(builtin('exa-4.3', 2))

    report = ezd_search(algebra, mode='full')

    assert report.status == 'none_exhaustive'
    assert report.consumed == 2 ** 7 - 1
    assert not report.found


def test_ezd_absent_from_gorenstein_ring_in_four_variables():
    algebra = compile_ring(builtin('exa-5.4', 2))

    report = ezd_search(algebra, mode='full')

    assert hilbert(algebra) == [1, 4, 4, 1]
    assert report.status == 'none_exhaustive'
    assert report.consumed == 2 ** 9 - 1


def test_ezd_budget(compiled):
    report = ezd_search(compiled('exa-4.3'), mode='random', budget=20, seed=3)

    assert report.status == 'budget_exceeded'
    assert report.consumed == 20


def test_ezd_rejects_bad_arguments(compiled):
    with pytest.raises(InputError):
        ezd_search(compiled('ci-e3'), mode='everything')
    with pytest.raises(InputError):
        ezd_search(compiled('ci-e3'), budget=0)


def test_example_family():
    ring = example_family_e2(101, 4)

    assert ring.label == 'exa-2.4-i4'
    assert hilbert(compile_ring(ring)) == [1, 3, 4, 4]
    with pytest.raises(InputError):
        example_family_e2(101, 2)
    with pytest.raises(InputError):
        builtin('exa-2.4-i2')


def test_builtin_lookup():
    assert 'exa-4.3' in builtin_names()
    assert builtin('ci-e2', 5).field.p == 5
    with pytest.raises(InputError):
        builtin('nope')
    with pytest.raises(InputError):
        builtin_skew_matrix('nope')


def test_random_skew_is_skew(rng):
    values = np.array(_random_skew(rng, 4, 11))

    assert np.array_equal(values, -values.T)
