"""
Recursive descent parser for polynomial expressions.

Grammar (whitespace insignificant)::

    expr   := ['-'] term (('+' | '-') term)*
    term   := factor ('*' factor)*
    factor := INT | VAR | VAR '^' INT | '(' expr ')'

INT is a non-negative decimal reduced mod p. There is no implicit
multiplication: ``2x`` and ``x y`` are syntax errors.
"""
import re
from collections import namedtuple

from src.services.scalars import Poly, Monomial
from src.utils.errors import InputError, ParseError, UnknownVariableError
from src.utils.validators import validate_cap

GRAMMAR = (
    "expr   := ['-'] term (('+' | '-') term)*\n"
    "term   := factor ('*' factor)*\n"
    "factor := INT | VAR | VAR '^' INT | '(' expr ')'"
)

Token = namedtuple('Token', 'kind text position')

_TOKEN_SPEC = [
    ('INT', r'\d+'),
    ('VAR', r'[A-Za-z_][A-Za-z0-9_]*'),
    ('OP', r'[-+*^()]'),
    ('SKIP', r'\s+'),
    ('BAD', r'.'),
]
_TOKEN_RE = re.compile('|'.join(f'(?P<{name}>{pattern})' for name, pattern in _TOKEN_SPEC))


def tokenize(text):
    """
    Split an expression into tokens, ending with an END token.

    :raises ParseError: On a character outside the grammar
    """
    tokens = []
    for match in _TOKEN_RE.finditer(text):
        kind = match.lastgroup
        if kind == 'SKIP':
            continue
        if kind == 'BAD':
            raise ParseError(f"unexpected character {match.group()!r}", text, match.start())
        tokens.append(Token(kind, match.group(), match.start()))
    tokens.append(Token('END', '', len(text)))
    return tokens


class _Parser:

    def __init__(self, text, names, field, cap):
        self.text = text
        self.names = list(names)
        self.index = {name: i for i, name in enumerate(self.names)}
        self.field = field
        self.cap = cap
        self.tokens = tokenize(text)
        self.pos = 0

    @property
    def current(self):
        return self.tokens[self.pos]

    def advance(self):
        token = self.tokens[self.pos]
        self.pos += 1
        return token

    def expect(self, text):
        token = self.current
        if token.text != text:
            found = token.text or 'end of input'
            raise ParseError(f"expected {text!r}, found {found!r}", self.text, token.position)
        return self.advance()

    def parse(self):
        result = self.expr()
        if self.current.kind != 'END':
            raise ParseError(f"unexpected {self.current.text!r}", self.text, self.current.position)
        return result

    def expr(self):
        negate = False
        if self.current.text == '-':
            self.advance()
            negate = True
        result = self.term()
        if negate:
            result = -result
        while self.current.text in ('+', '-'):
            op = self.advance().text
            right = self.term()
            result = result + right if op == '+' else result - right
        return result

    def term(self):
        result = self.factor()
        while self.current.text == '*':
            self.advance()
            result = result * self.factor()
        return result

    def factor(self):
        token = self.current
        nvars = len(self.names)
        if token.kind == 'INT':
            self.advance()
            return Poly.constant(self.field, nvars, self.cap, int(token.text))
        if token.kind == 'VAR':
            self.advance()
            if token.text not in self.index:
                raise UnknownVariableError(f"unknown variable {token.text!r}", self.text, token.position)
            exponent = 1
            if self.current.text == '^':
                self.advance()
                exp_token = self.current
                if exp_token.kind != 'INT':
                    raise ParseError("exponent must be a non-negative integer", self.text, exp_token.position)
                self.advance()
                exponent = int(exp_token.text)
            exps = [0] * nvars
            exps[self.index[token.text]] = exponent
            return Poly(self.field, nvars, self.cap, {Monomial(tuple(exps)): 1})
        if token.text == '(':
            self.advance()
            inner = self.expr()
            self.expect(')')
            return inner
        found = token.text or 'end of input'
        raise ParseError(f"expected a number, variable or '(', found {found!r}", self.text, token.position)


def parse_poly(text, names, field, cap):
    """
    Parse a polynomial expression into a truncated polynomial.

    :param text: Expression in the grammar of this module
    :type text: str
    :param names: Ordered variable names
    :type names: list[str]
    :param field: Coefficient field
    :type field: PrimeField
    :param cap: Degree cap, terms of degree >= cap are dropped
    :type cap: int
    :return: Canonical truncated polynomial
    :rtype: Poly
    :raises ParseError: On a syntax error, with the 0-based position
    :raises UnknownVariableError: If the text uses a name outside ``names``
    :raises InputError: If cap <= 0
    """
    if not validate_cap(cap):
        raise InputError(f"degree cap must be a positive integer, got {cap!r}")
    return _Parser(text, names, field, cap).parse()
