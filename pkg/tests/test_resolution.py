import numpy as np
import pytest

from src.services import linalg
from src.services.algebra import compile_ring, field_algebra, quotient_power
from src.services.constructions import builtin
from src.services.resolution import (ModulePresentation, betti_of_residue_field, check_depth, poincare_truncation,
                                     residue_field_presentation, syzygy, verify_exactness)
from src.services.scalars import PrimeField
from src.services.series import codepth3_gorenstein_series, koszul_numerical_test, la_quotient_series
from src.utils.config import MAX_DEPTH
from src.utils.errors import InputError, OperandMismatchError, ResourceGuardError


@pytest.mark.parametrize('name, depth, expected', [
    ('ci-e2', 4, [1, 2, 3, 4, 5]),
    ('ci-e3', 4, [1, 3, 6, 10, 15]),
    ('square-max-e3', 4, [1, 3, 9, 27, 81]),
])
def test_betti_numbers(compiled, name, depth, expected):
    table = betti_of_residue_field(compiled(name), depth)

    assert table.values == expected
    assert table.depth == depth
    assert verify_exactness(table)


def test_gorenstein_betti_numbers(compiled):
    table = betti_of_residue_field(compiled('exa-4.3'), 6)

    assert table.values == [1, 3, 8, 21, 55, 144, 377]
    assert table.values == codepth3_gorenstein_series(5, 6).coefficients
    assert all(m.is_minimal() for m in table.maps)


def test_cached_table_is_truncated(compiled):
    algebra = compiled('exa-4.3')
    betti_of_residue_field(algebra, 6)

    shorter = betti_of_residue_field(algebra, 3)

    assert shorter.values == [1, 3, 8, 21]
    assert len(shorter.maps) == 3


def test_field_has_no_positive_betti_numbers():
    table = betti_of_residue_field(field_algebra(PrimeField(5)), 2)

    assert table.values == [1, 0, 0]


def test_poincare_truncation(compiled):
    series = poincare_truncation(compiled('ci-e2'), 3)

    assert series.coefficients == [1, 2, 3, 4]
    assert koszul_numerical_test(series, [1, 2, 1])


def test_residue_field_presentation(compiled):
    presentation = residue_field_presentation(compiled('ci-e3'))

    assert (presentation.rows, presentation.cols) == (1, 3)
    assert presentation.is_minimal()


def test_syzygy_of_single_element(compiled):
    algebra = compiled('ci-e3')
    presentation = ModulePresentation.from_elements(algebra, [['x']])

    kernel = syzygy(algebra, presentation)

    assert kernel.cols == 1
    assert np.array_equal(kernel.entries[0, 0], algebra.element('x'))


def test_module_presentation_rejects_bad_shapes(compiled):
    algebra = compiled('ci-e3')

    with pytest.raises(OperandMismatchError):
        ModulePresentation(algebra, np.zeros((1, 1, 3), dtype=np.int64))
    with pytest.raises(InputError):
        ModulePresentation.from_elements(algebra, [['x', 'y'], ['z']])


def test_check_depth():
    assert check_depth(MAX_DEPTH) == MAX_DEPTH
    assert check_depth(MAX_DEPTH + 1, allow_deep=True) == MAX_DEPTH + 1
    with pytest.raises(ResourceGuardError):
        check_depth(MAX_DEPTH + 1)
    with pytest.raises(InputError):
        check_depth(-1)
    with pytest.raises(InputError):
        check_depth(2.5)


def test_oversized_elimination_is_refused(monkeypatch):
    algebra = compile_ring(builtin('ci-e3', 7))
    monkeypatch.setattr(linalg, 'MATRIX_ENTRY_LIMIT', 500)

    with pytest.raises(ResourceGuardError):
        betti_of_residue_field(algebra, 4)


@pytest.mark.slow
@pytest.mark.parametrize('name', ['ci-e2', 'ci-e3', 'exa-4.3', 'exa-5.4'])
def test_gorenstein_quotient_matches_quotient_formula(compiled, name):
    algebra = compiled(name)
    P = poincare_truncation(algebra, 5)
    quotient = quotient_power(algebra, algebra.socle_degree)

    assert poincare_truncation(quotient, 5) == la_quotient_series(P, 5)


@pytest.mark.slow
def test_ci_quotient_betti_numbers(compiled):
    quotient = quotient_power(compiled('ci-e3'), 3)

    assert betti_of_residue_field(quotient, 6).values == [1, 3, 7, 16, 37, 86, 200]
