import pytest
from hypothesis import HealthCheck, given, settings
from hypothesis import strategies as st

from src.services.algebra import (PresentedRing, compile_ring, hilbert, ideal_generated, is_gorenstein, mu,
                                  quotient_power, truncated_polynomial_ring)
from src.services.koszul import (classify, golod_verdict, homology, is_complete_intersection, koszul_complex,
                                 quotient_homology_dims_check)
from src.services.resolution import betti_of_residue_field
from src.services.scalars import PrimeField, monomials_of_degree
from src.services.series import golod_series

NAMES = ['x', 'y']
QUADRICS = ['x^2', 'x*y', 'y^2']
CUBICS = ['x^3', 'x^2*y', 'x*y^2', 'y^3']

slow_settings = settings(max_examples=12, deadline=None, suppress_health_check=[HealthCheck.too_slow])


def _expression(coefficients, monomials):
    return ' + '.join(f"{c}*{m}" for c, m in zip(coefficients, monomials))


def _ring(quadric, cubic, i):
    f = _expression(quadric, QUADRICS)
    if i > 3:
        f = f"{f} + {_expression(cubic, CUBICS)}"
    power = [m.to_string(NAMES) for m in monomials_of_degree(2, i)]
    return PresentedRing.from_strings(5, NAMES, [f] + power, cap=i, label=f'f+n^{i}')


quadrics = st.tuples(st.integers(1, 4), st.integers(0, 4), st.integers(0, 4))
cubics = st.tuples(*[st.integers(0, 4)] * 4)


@slow_settings
@given(quadrics, cubics, st.integers(3, 5))
def test_hypersurface_plus_power_of_maximal_ideal(quadric, cubic, i):
    algebra = compile_ring(_ring(quadric, cubic, i))
    dims = homology(koszul_complex(algebra)).dims

    assert hilbert(algebra) == [1] + [2] * (i - 1)
    assert dims[1] > 2
    assert dims[2] == dims[1] - 1
    assert not is_complete_intersection(algebra)
    assert classify(algebra).kind == 'GolodCertified'


@slow_settings
@given(quadrics, cubics, st.integers(3, 4))
def test_codepth_two_rings_attain_the_golod_bound(quadric, cubic, i):
    algebra = compile_ring(_ring(quadric, cubic, i))
    dims = homology(koszul_complex(algebra)).dims

    assert betti_of_residue_field(algebra, 4).values == golod_series(2, 0, dims[1:], 4).coefficients


@slow_settings
@given(st.integers(2, 4), st.integers(2, 4))
def test_gorenstein_quotients_in_two_variables(a, b):
    algebra = compile_ring(PresentedRing.from_strings(5, NAMES, [f'x^{a}', f'y^{b}'], cap=a + b))
    s = algebra.socle_degree

    assert s == a + b - 2
    assert is_gorenstein(algebra)
    quotient = quotient_power(algebra, s)
    assert classify(quotient).kind == 'GolodCertified'
    check = quotient_homology_dims_check(algebra)
    assert check.computed == [1, 3, 2]
    assert check.agree


def _random_form(rng, low, high):
    """A random element of n^low with terms of degree at most high, never zero."""
    monomials = [m.to_string(NAMES) for d in range(low, high + 1) for m in monomials_of_degree(2, d)]
    coefficients = [int(c) for c in rng.integers(0, 5, size=len(monomials))]
    if not any(coefficients):
        coefficients[-1] = 1
    return _expression(coefficients, monomials)


@pytest.mark.slow
def test_principal_ideal_plus_power_needs_three_generators(rng):
    field = PrimeField(5)
    truncations = {i: compile_ring(truncated_polynomial_ring(field, NAMES, i + 1)) for i in (2, 3, 4)}

    for _ in range(100):
        i = int(rng.integers(2, 5))
        T = truncations[i]
        f = _random_form(rng, 2, i)
        power = [m.to_string(NAMES) for m in monomials_of_degree(2, i)]

        assert not ideal_generated(T, [f]).contains_subspace(T.filtration[i])
        assert mu(T, ideal_generated(T, [f] + power)) > 2


@pytest.mark.slow
def test_quotients_of_random_codepth_two_rings_are_golod(rng):
    checked = 0
    for k in range(25):
        cap = int(rng.integers(3, 7))
        count = int(rng.integers(1, 3))
        generators = [_random_form(rng, int(rng.integers(2, cap)), cap - 1) for _ in range(count)]
        power = [m.to_string(NAMES) for m in monomials_of_degree(2, cap)]
        algebra = compile_ring(PresentedRing.from_strings(5, NAMES, generators + power, cap=cap,
                                                          label=f'random-{k}'))

        assert algebra.embedding_dimension == 2
        for i in range(3, algebra.socle_degree + 1):
            assert golod_verdict(quotient_power(algebra, i), 4).kind == 'GolodCertified'
            checked += 1

    assert checked > 0
