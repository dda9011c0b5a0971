"""
Exact scalars and truncated polynomials.

Monomials are ordered by degree first, then lexicographically on the reversed
exponent vector: within a degree this is graded reverse lexicographic order,
largest monomial first (x^2, xy, y^2, xz, yz, z^2 in three variables). Every
row reduction in the package pivots in this order.
"""
from dataclasses import dataclass
from functools import total_ordering
from itertools import combinations_with_replacement

from src.utils.errors import InputError, OperandMismatchError
from src.utils.validators import validate_prime, validate_cap


class PrimeField:
    """
    The prime field F_p; elements are plain ints in [0, p).

    :param p: Prime modulus, 2 <= p < 2**31
    :type p: int
    :raises InputError: If p is not an admissible prime
    """
    __slots__ = ('p',)

    def __init__(self, p):
        if not validate_prime(p):
            raise InputError(f"characteristic must be a prime below 2^31, got {p!r}")
        self.p = p

    def __call__(self, value):
        return int(value) % self.p

    def __eq__(self, other):
        return isinstance(other, PrimeField) and other.p == self.p

    def __hash__(self):
        return hash(('GF', self.p))

    def __repr__(self):
        return f"GF({self.p})"

    def add(self, a, b):
        return (a + b) % self.p

    def sub(self, a, b):
        return (a - b) % self.p

    def mul(self, a, b):
        return (a * b) % self.p

    def inv(self, a):
        a %= self.p
        if a == 0:
            raise ZeroDivisionError("zero has no inverse")
        return pow(a, self.p - 2, self.p)

    def div(self, a, b):
        return self.mul(a, self.inv(b))

    def elements(self):
        return range(self.p)


@total_ordering
@dataclass(frozen=True)
class Monomial:
    exponents: tuple

    @property
    def degree(self):
        return sum(self.exponents)

    @property
    def nvars(self):
        return len(self.exponents)

    def sort_key(self):
        return self.degree, tuple(reversed(self.exponents))

    def __lt__(self, other):
        return self.sort_key() < other.sort_key()

    def __mul__(self, other):
        if self.nvars != other.nvars:
            raise OperandMismatchError("monomials in different numbers of variables")
        return Monomial(tuple(a + b for a, b in zip(self.exponents, other.exponents)))

    @classmethod
    def one(cls, nvars):
        return cls((0,) * nvars)

    @classmethod
    def variable(cls, index, nvars):
        exps = [0] * nvars
        exps[index] = 1
        return cls(tuple(exps))

    def to_string(self, names):
        factors = []
        for name, exp in zip(names, self.exponents):
            if exp == 1:
                factors.append(name)
            elif exp > 1:
                factors.append(f"{name}^{exp}")
        return '*'.join(factors) if factors else '1'


def monomials_of_degree(nvars, degree):
    """
    List all monomials of the given degree in the fixed order.

    :param nvars: Number of variables, at least 1
    :type nvars: int
    :param degree: Total degree, at least 0
    :type degree: int
    :return: C(nvars - 1 + degree, nvars - 1) monomials
    :rtype: list[Monomial]
    """
    result = []
    for combo in combinations_with_replacement(range(nvars), degree):
        exps = [0] * nvars
        for index in combo:
            exps[index] += 1
        result.append(Monomial(tuple(exps)))
    result.sort()
    return result


def monomials_below(nvars, cap):
    """All monomials of degree < cap, in the fixed order."""
    result = []
    for degree in range(cap):
        result.extend(monomials_of_degree(nvars, degree))
    return result


class Poly:
    """
    Immutable polynomial over a prime field, truncated below a degree cap.

    Terms of degree >= cap are dropped on construction, so every product
    re-truncates silently.

    :param field: Coefficient field
    :type field: PrimeField
    :param nvars: Number of variables
    :type nvars: int
    :param cap: Degree cap N; all stored terms have degree < N
    :type cap: int
    :param terms: Mapping monomial -> coefficient (any ints)
    :type terms: dict
    """
    __slots__ = ('field', 'nvars', 'cap', '_terms')

    def __init__(self, field, nvars, cap, terms=None):
        if not validate_cap(cap):
            raise InputError(f"degree cap must be a positive integer, got {cap!r}")
        self.field = field
        self.nvars = nvars
        self.cap = cap
        clean = {}
        for mono, coeff in (terms or {}).items():
            if mono.nvars != nvars:
                raise OperandMismatchError("monomial has the wrong number of variables")
            if mono.degree >= cap:
                continue
            value = field(coeff)
            if value:
                clean[mono] = value
        self._terms = clean

    @classmethod
    def zero(cls, field, nvars, cap):
        return cls(field, nvars, cap)

    @classmethod
    def constant(cls, field, nvars, cap, value):
        return cls(field, nvars, cap, {Monomial.one(nvars): value})

    @classmethod
    def variable(cls, field, nvars, cap, index):
        return cls(field, nvars, cap, {Monomial.variable(index, nvars): 1})

    @property
    def terms(self):
        return dict(self._terms)

    def items(self):
        """Terms sorted from the largest monomial down."""
        return sorted(self._terms.items(), key=lambda item: item[0], reverse=True)

    def coefficient(self, mono):
        return self._terms.get(mono, 0)

    def is_zero(self):
        return not self._terms

    def degree(self):
        return max((m.degree for m in self._terms), default=-1)

    def valuation(self):
        """Lowest degree of a term; the cap for the zero polynomial."""
        return min((m.degree for m in self._terms), default=self.cap)

    def _check(self, other):
        if not isinstance(other, Poly):
            raise OperandMismatchError(f"cannot combine a polynomial with {type(other).__name__}")
        if other.field != self.field or other.nvars != self.nvars or other.cap != self.cap:
            raise OperandMismatchError(
                f"mismatched operands: {self.field}/{self.nvars} vars/cap {self.cap} "
                f"vs {other.field}/{other.nvars} vars/cap {other.cap}"
            )

    def _new(self, terms):
        return Poly(self.field, self.nvars, self.cap, terms)

    def __add__(self, other):
        self._check(other)
        terms = dict(self._terms)
        for mono, coeff in other._terms.items():
            terms[mono] = terms.get(mono, 0) + coeff
        return self._new(terms)

    def __neg__(self):
        return self._new({m: -c for m, c in self._terms.items()})

    def __sub__(self, other):
        return self + (-other)

    def __mul__(self, other):
        if isinstance(other, int):
            return self._new({m: c * other for m, c in self._terms.items()})
        self._check(other)
        terms = {}
        for m1, c1 in self._terms.items():
            for m2, c2 in other._terms.items():
                if m1.degree + m2.degree >= self.cap:
                    continue
                mono = m1 * m2
                terms[mono] = terms.get(mono, 0) + c1 * c2
        return self._new(terms)

    __rmul__ = __mul__

    def __pow__(self, exponent):
        result = Poly.constant(self.field, self.nvars, self.cap, 1)
        for _ in range(exponent):
            result = result * self
        return result

    def __eq__(self, other):
        return (isinstance(other, Poly) and self.field == other.field and self.nvars == other.nvars
                and self.cap == other.cap and self._terms == other._terms)

    def __hash__(self):
        return hash((self.field, self.nvars, self.cap, frozenset(self._terms.items())))

    def __repr__(self):
        names = [f"x{i}" for i in range(self.nvars)]
        return f"Poly({self.to_string(names)!r}, {self.field}, cap={self.cap})"

    def to_string(self, names):
        """
        Render in the input grammar, so that parsing the output gives back the polynomial.

        :param names: Variable names, one per variable
        :type names: list[str]
        :return: Expression such as ``x^2 + 100*y*z``
        :rtype: str
        """
        if not self._terms:
            return '0'
        parts = []
        for mono, coeff in self.items():
            if mono.degree == 0:
                parts.append(str(coeff))
            elif coeff == 1:
                parts.append(mono.to_string(names))
            else:
                parts.append(f"{coeff}*{mono.to_string(names)}")
        return ' + '.join(parts)


def poly_mul(a, b):
    """
    Multiply two polynomials, truncating below the shared cap.

    :raises OperandMismatchError: If field, variable count or cap differ
    """
    return a * b
