import numpy as np
import pytest

from src.services.algebra import compile_ring, quotient_power, truncated_polynomial_ring
from src.services.constructions import builtin
from src.services.koszul import (classify, class_T_witness, golod_verdict, homology, homology_product,
                                 is_complete_intersection, koszul_complex, predicted_quotient_dims,
                                 products_trivial, quotient_homology_dims_check, tor_over_presentation,
                                 wedge_sign)
from src.services.resolution import betti_of_residue_field
from src.services.scalars import PrimeField
from src.services.series import golod_series, poly_coefficients
from src.utils.errors import InputError


def test_wedge_sign():
    assert wedge_sign((0,), (1,)) == 1
    assert wedge_sign((1,), (0,)) == -1
    assert wedge_sign((0, 2), (1,)) == -1
    assert wedge_sign((1, 2), (0,)) == 1


@pytest.mark.parametrize('name, dims', [
    ('exa-4.3', [1, 5, 5, 1]),
    ('ci-e3', [1, 3, 3, 1]),
    ('ci-e2', [1, 2, 1]),
    ('socle2-e3', [1, 4, 5, 2]),
])
def test_homology_dimensions(compiled, name, dims):
    complex_ = koszul_complex(compiled(name))
    H = homology(complex_)

    assert complex_.check_differentials()
    assert H.dims == dims
    assert H.euler_characteristic() == 0


def test_gorenstein_duality(compiled):
    for name in ('exa-4.3', 'exa-5.4', 'ci-e4'):
        dims = homology(koszul_complex(compiled(name))).dims
        assert dims == dims[::-1]


def test_tor_over_presentation(compiled):
    assert poly_coefficients(tor_over_presentation(compiled('exa-4.3'))) == [1, 5, 5, 1]


def test_complete_intersection(compiled):
    assert is_complete_intersection(compiled('ci-e3'))
    assert is_complete_intersection(compiled('ci-e4'))
    assert not is_complete_intersection(compiled('exa-4.3'))
    assert not is_complete_intersection(compiled('exa-5.4'))


def test_cycles_and_wedge(compiled):
    algebra = compiled('ci-e3')
    complex_ = koszul_complex(algebra)
    cycle = complex_.vector(1, {(0,): 'x'})

    assert complex_.is_cycle(1, cycle)
    assert not complex_.is_cycle(1, complex_.vector(1, {(0,): 'y'}))
    square = complex_.wedge(1, cycle, 1, cycle)
    assert not np.any(square)
    assert '^' not in complex_.format_vector(1, cycle)
    assert 'e_x' in complex_.format_vector(1, cycle)


def test_products_survive_perturbed_representatives(compiled):
    H = homology(koszul_complex(compiled('exa-4.3')))
    shifted = H.perturbed(7)

    for i, j in ((1, 1), (1, 2)):
        assert np.array_equal(shifted.product_table(i, j), H.product_table(i, j))


def test_gorenstein_pairing_is_nonzero(compiled):
    H = homology(koszul_complex(compiled('exa-4.3')))

    assert not products_trivial(H)
    assert np.any(homology_product(H, 1, 2))
    assert class_T_witness(H) is None


def test_classify_rings(compiled):
    assert classify(compiled('ci-e3')).kind == 'CompleteIntersection'
    assert classify(compiled('square-max-e3')).kind == 'GolodCertified'
    other = classify(compiled('exa-4.3'))
    assert other.kind == 'Other'
    assert other.witness is not None


def test_ci_quotient_is_class_t(compiled):
    quotient = quotient_power(compiled('ci-e3'), 3)
    verdict = classify(quotient)

    assert verdict.kind == 'ClassT'
    assert verdict.qualifier == 'codepth-3 signature'
    assert verdict.witness.degrees == (1, 1)
    assert golod_verdict(quotient, 6).kind == 'NotGolod'


def test_gorenstein_quotient_is_golod(compiled):
    quotient = quotient_power(compiled('exa-4.3'), 3)

    assert classify(quotient).kind == 'GolodCertified'
    verdict = golod_verdict(quotient, 6)
    assert verdict.kind == 'GolodCertified'
    assert 'codepth <= 3' in verdict.describe()


@pytest.mark.slow
def test_second_gorenstein_example_quotient_is_not_golod(compiled):
    verdict = golod_verdict(quotient_power(compiled('exa-5.4'), 3), 5)

    assert verdict.kind == 'NotGolod'
    assert verdict.certificate in ('product', 'betti')


def test_example_family_product_witness(compiled):
    algebra = compiled('exa-2.4-i3')
    verdict = golod_verdict(algebra, 6)

    assert verdict.kind == 'NotGolod'
    assert verdict.certificate == 'product'
    assert verdict.witness.degrees == (1, 1)


def test_golod_ring_in_four_variables():
    algebra = compile_ring(truncated_polynomial_ring(PrimeField(7), ['w', 'x', 'y', 'z'], 2))
    verdict = golod_verdict(algebra, 4)

    assert classify(algebra).kind == 'Other'
    assert verdict.kind == 'ConsistentWithGolodUpTo'
    assert verdict.betti == [1, 4, 16, 64, 256]
    assert verdict.betti == verdict.golod


def test_quotient_homology_prediction(compiled):
    check = quotient_homology_dims_check(compiled('ci-e4'))

    assert check.dims == [1, 4, 6, 4, 1]
    assert check.computed == [1, 5, 10, 10, 4]
    assert check.agree

    assert quotient_homology_dims_check(compiled('exa-4.3')).agree


def test_quotient_homology_prediction_needs_gorenstein(compiled):
    with pytest.raises(InputError):
        quotient_homology_dims_check(compiled('socle2-e3'))


def test_predicted_quotient_dims():
    assert predicted_quotient_dims([1, 5, 5, 1]) == [1, 6, 8, 3]
    assert predicted_quotient_dims([1, 4, 6, 4, 1]) == [1, 5, 10, 10, 4]


@pytest.mark.slow
def test_example_family_betti_below_golod_bound():
    algebra = compile_ring(builtin("exa-2.4-i4", 101))
    H = homology(koszul_complex(algebra))
    betti = betti_of_residue_field(algebra, 6).values
    bound = golod_series(3, 0, H.dims[1:], 6).coefficients

    assert all(b <= g for b, g in zip(betti, bound))
    assert any(b < g for b, g in zip(betti, bound))
