import pytest

from src.services.parser import GRAMMAR, parse_poly, tokenize
from src.services.scalars import Monomial, Poly
from src.utils.errors import InputError, ParseError, UnknownVariableError

NAMES = ['x', 'y', 'z']


def test_parse_reduces_coefficients(gf101):
    poly = parse_poly('x^2 - y*z + 103', NAMES, gf101, 4)

    assert poly.coefficient(Monomial((2, 0, 0))) == 1
    assert poly.coefficient(Monomial((0, 1, 1))) == 100
    assert poly.coefficient(Monomial((0, 0, 0))) == 2


def test_parentheses_and_leading_minus(gf101):
    left = parse_poly('-(x + y)*(x - y)', NAMES, gf101, 4)
    right = parse_poly('y^2 - x^2', NAMES, gf101, 4)

    assert left == right


def test_zero_exponent_is_one(gf101):
    assert parse_poly('x^0', NAMES, gf101, 3) == Poly.constant(gf101, 3, 3, 1)


@pytest.mark.parametrize('text, position', [
    ('2x', 1),
    ('x y', 2),
    ('x $ y', 2),
    ('(x + y', 6),
    ('x^', 2),
    ('--x', 1),
    ('(x+y)^2', 5),
    ('', 0),
])
def test_syntax_errors_report_position(gf101, text, position):
    with pytest.raises(ParseError) as info:
        parse_poly(text, NAMES, gf101, 4)

    assert info.value.position == position


def test_unknown_variable(gf101):
    with pytest.raises(UnknownVariableError) as info:
        parse_poly('x + w', NAMES, gf101, 4)

    assert info.value.position == 4
    assert isinstance(info.value, ParseError)
    assert isinstance(info.value, InputError)


def test_excerpt_points_at_error(gf101):
    with pytest.raises(ParseError) as info:
        parse_poly('x $ y', NAMES, gf101, 4)

    assert info.value.excerpt() == 'x $ y\n  ^'


def test_bad_cap(gf101):
    with pytest.raises(InputError):
        parse_poly('x', NAMES, gf101, 0)


def test_tokenize_ends_with_end_token():
    tokens = tokenize('x^2 + 3')

    assert [t.kind for t in tokens] == ['VAR', 'OP', 'INT', 'OP', 'INT', 'END']
    assert tokens[-1].position == 7


def test_grammar_mentions_every_rule():
    for rule in ('expr', 'term', 'factor'):
        assert rule in GRAMMAR
