"""
Truncated integer power series and integer rational functions in z.

Coefficients are Python ints, so nothing overflows. Rational functions keep
numerator and denominator exactly as built; common factors are only cancelled
by an explicit ``normalized()`` call, since denominator degrees carry meaning.
"""
from dataclasses import dataclass

import sympy
from sympy import Poly, Symbol

from src.utils.errors import InputError

Z = Symbol('z')


def int_poly(coefficients):
    """Integer polynomial in z from ascending coefficients."""
    coefficients = [int(c) for c in coefficients]
    if not any(coefficients):
        return Poly(0, Z, domain='ZZ')
    return Poly(list(reversed(coefficients)), Z, domain='ZZ')


def poly_coefficients(poly):
    """Ascending integer coefficients of a polynomial in z."""
    if poly.is_zero:
        return [0]
    return [int(c) for c in reversed(poly.all_coeffs())]


ONE_PLUS_Z = int_poly([1, 1])
ONE_MINUS_Z = int_poly([1, -1])


def format_terms(coefficients, keep_zero=False):
    """Render ascending coefficients as ``1 - 3*z + 2*z^2``."""
    parts = []
    for power, coeff in enumerate(coefficients):
        if coeff == 0 and not keep_zero:
            continue
        magnitude = abs(coeff)
        if power == 0:
            body = str(magnitude)
        elif power == 1:
            body = 'z' if magnitude == 1 else f"{magnitude}*z"
        else:
            body = f"z^{power}" if magnitude == 1 else f"{magnitude}*z^{power}"
        if not parts:
            parts.append(f"-{body}" if coeff < 0 else body)
        else:
            parts.append(f"- {body}" if coeff < 0 else f"+ {body}")
    return ' '.join(parts) if parts else '0'


class IntSeries:
    """
    A power series known up to z^depth.

    :param coefficients: c_0..c_D
    :type coefficients: list[int]
    """
    __slots__ = ('coefficients',)

    def __init__(self, coefficients):
        coefficients = [int(c) for c in coefficients]
        if not coefficients:
            raise InputError("a truncated series needs at least the constant coefficient")
        self.coefficients = coefficients

    @classmethod
    def from_poly(cls, poly, depth):
        coefficients = poly_coefficients(poly) if isinstance(poly, Poly) else [int(c) for c in poly]
        coefficients = (coefficients + [0] * (depth + 1))[:depth + 1]
        return cls(coefficients)

    @classmethod
    def one(cls, depth):
        return cls.from_poly([1], depth)

    @property
    def depth(self):
        return len(self.coefficients) - 1

    def __len__(self):
        return len(self.coefficients)

    def __getitem__(self, index):
        return self.coefficients[index]

    def __iter__(self):
        return iter(self.coefficients)

    def truncate(self, depth):
        if depth > self.depth:
            raise InputError(f"series known to z^{self.depth} cannot be read to z^{depth}")
        return IntSeries(self.coefficients[:depth + 1])

    def _pair(self, other):
        if isinstance(other, int):
            other = IntSeries.from_poly([other], self.depth)
        if isinstance(other, Poly):
            other = IntSeries.from_poly(other, self.depth)
        depth = min(self.depth, other.depth)
        return self.coefficients[:depth + 1], other.coefficients[:depth + 1], depth

    def __add__(self, other):
        a, b, _ = self._pair(other)
        return IntSeries([x + y for x, y in zip(a, b)])

    __radd__ = __add__

    def __neg__(self):
        return IntSeries([-c for c in self.coefficients])

    def __sub__(self, other):
        a, b, _ = self._pair(other)
        return IntSeries([x - y for x, y in zip(a, b)])

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        a, b, depth = self._pair(other)
        product = [0] * (depth + 1)
        for i, x in enumerate(a):
            if x:
                for j in range(depth + 1 - i):
                    product[i + j] += x * b[j]
        return IntSeries(product)

    __rmul__ = __mul__

    def shift(self, power):
        """Multiply by z^power, keeping the depth."""
        return IntSeries(([0] * power + self.coefficients)[:self.depth + 1])

    def reciprocal(self):
        """
        1/S for a constant term of +-1.

        :raises InputError: If c_0 is not a unit of the integers
        """
        c0 = self.coefficients[0]
        if c0 not in (1, -1):
            raise InputError(f"series with constant term {c0} has no integer reciprocal")
        inverse = [c0]
        for n in range(1, self.depth + 1):
            total = sum(self.coefficients[k] * inverse[n - k] for k in range(1, n + 1))
            inverse.append(-c0 * total)
        return IntSeries(inverse)

    def evaluate_negated(self):
        """S(-z)."""
        return IntSeries([c if k % 2 == 0 else -c for k, c in enumerate(self.coefficients)])

    def __eq__(self, other):
        return isinstance(other, IntSeries) and self.coefficients == other.coefficients

    def __hash__(self):
        return hash(tuple(self.coefficients))

    def __repr__(self):
        return f"IntSeries({self.coefficients})"

    def __str__(self):
        return f"{format_terms(self.coefficients, keep_zero=True)} + O(z^{self.depth + 1})"


class RationalFn:
    """
    numerator / denominator with integer polynomials and denominator(0) = +-1.

    :param numerator: Integer polynomial in z
    :type numerator: sympy.Poly
    :param denominator: Integer polynomial in z with constant term +-1
    :type denominator: sympy.Poly
    :param display: Optional factored rendering
    :type display: str or None
    """

    def __init__(self, numerator, denominator, display=None):
        numerator = numerator if isinstance(numerator, Poly) else int_poly(numerator)
        denominator = denominator if isinstance(denominator, Poly) else int_poly(denominator)
        if poly_coefficients(denominator)[0] not in (1, -1):
            raise InputError("denominator must have constant term +-1")
        self.numerator = numerator
        self.denominator = denominator
        self.display = display

    @property
    def denominator_degree(self):
        return self.denominator.degree()

    def expand(self, depth):
        return expand_rational(self.numerator, self.denominator, depth)

    def normalized(self):
        """Cancel the common factor of numerator and denominator."""
        common = self.numerator.gcd(self.denominator)
        numerator = self.numerator.exquo(common)
        denominator = self.denominator.exquo(common)
        if poly_coefficients(denominator)[0] < 0:
            numerator, denominator = -numerator, -denominator
        return RationalFn(numerator, denominator)

    def __eq__(self, other):
        if not isinstance(other, RationalFn):
            return NotImplemented
        return self.numerator * other.denominator == other.numerator * self.denominator

    def __hash__(self):
        reduced = self.normalized()
        return hash((tuple(poly_coefficients(reduced.numerator)), tuple(poly_coefficients(reduced.denominator))))

    def __repr__(self):
        return f"RationalFn({self})"

    def __str__(self):
        if self.display:
            return self.display
        numerator = format_terms(poly_coefficients(self.numerator))
        denominator = format_terms(poly_coefficients(self.denominator))
        return f"({numerator}) / ({denominator})"


def expand_rational(numerator, denominator, depth):
    """
    Power series expansion of numerator/denominator to z^depth.

    :raises InputError: If the denominator has no unit constant term
    """
    num = IntSeries.from_poly(numerator, depth)
    den = IntSeries.from_poly(denominator, depth)
    return num * den.reciprocal()


def _check_depth(depth):
    if isinstance(depth, bool) or not isinstance(depth, int) or depth < 0:
        raise InputError(f"series depth must be a non-negative integer, got {depth!r}")


def golod_rational(e, d, h):
    """
    (1+z)^e / (1 - sum_j h_j z^(j+1)) with h = (h_1, ..., h_(e-d)).

    :raises InputError: On a negative h_j or more than e - d of them
    """
    h = [int(x) for x in h]
    if any(x < 0 for x in h):
        raise InputError(f"Koszul homology dimensions must be non-negative, got {h}")
    if len(h) > e - d:
        raise InputError(f"expected at most {e - d} homology dimensions, got {len(h)}")
    denominator = int_poly([1, 0] + [-x for x in h])
    return RationalFn(ONE_PLUS_Z ** e, denominator)


def golod_series(e, d, h, depth):
    """
    Serre's upper bound for the Poincare series, attained exactly by Golod rings.

    :param e: Embedding dimension
    :param d: Depth of the ring (0 for artinian rings)
    :param h: Koszul homology dimensions h_1..h_(e-d)
    :param depth: Cutoff D
    :rtype: IntSeries
    """
    _check_depth(depth)
    return golod_rational(e, d, h).expand(depth)


def la_quotient_series(P, depth):
    """
    P / (1 - z^2 P): the Poincare series of R/m^s from that of a Gorenstein R.

    :raises InputError: If P(0) != 1 or P is known to fewer than depth terms
    """
    _check_depth(depth)
    if P[0] != 1:
        raise InputError("Poincare series must start with 1")
    P = P.truncate(depth)
    return P * (IntSeries.one(depth) - P.shift(2)).reciprocal()


def gulliksen_ci_rational(e):
    return RationalFn(int_poly([1]), ONE_MINUS_Z ** e - int_poly([0, 0, 1]))


def gulliksen_ci_series(e, depth):
    """1/((1-z)^e - z^2), the Poincare series of a complete intersection modulo m^s."""
    _check_depth(depth)
    return gulliksen_ci_rational(e).expand(depth)


def gulliksen_trivext_series(P_R, P_E, depth):
    """P^T = P_R / (1 - z P_E) for a trivial extension by the canonical module."""
    _check_depth(depth)
    P_R = P_R.truncate(depth)
    P_E = P_E.truncate(depth)
    return P_R * (IntSeries.one(depth) - P_E.shift(1)).reciprocal()


def trivext_closed_forms(e):
    """
    Closed forms (P_R, P_E, P_T) for the trivial extension of a compressed level ring of socle degree 2.

    The denominator of P_T is displayed with the factor (1+z)^(2e-1) so that it
    has degree 2e + 2.
    """
    if e < 2:
        raise InputError(f"embedding dimension must be at least 2, got {e}")
    top = int_poly([1, -(e - 1)])
    P_R = RationalFn(int_poly([1]), ONE_MINUS_Z * top)
    P_E = RationalFn(int_poly([e - 1, -1]), top)
    quadratic = int_poly([1, -2 * (e - 1), 1])
    twist = ONE_PLUS_Z ** (2 * e - 1)
    display = (f"(1 + z)^{2 * e - 1} / ((1 - z)*({format_terms(poly_coefficients(quadratic))})"
               f"*(1 + z)^{2 * e - 1})")
    P_T = RationalFn(twist, ONE_MINUS_Z * quadratic * twist, display=display)
    return P_R, P_E, P_T


def ci_quotient_rational(e):
    """(1+z)^e / ((1-z^2)^e - z^2 (1+z)^e): the complete intersection quotient over the Golod numerator."""
    numerator = ONE_PLUS_Z ** e
    denominator = int_poly([1, 0, -1]) ** e - int_poly([0, 0, 1]) * numerator
    return RationalFn(numerator, denominator)


def _codepth3_guard(mu, e):
    if e != 3:
        raise InputError(f"the codepth-3 Gorenstein formula needs embedding dimension 3, got {e}")
    if mu < 4:
        raise InputError(f"the codepth-3 Gorenstein formula needs mu(I) >= 4, got {mu}")


def codepth3_gorenstein_rational(mu, e=3):
    """(1+z)^2 / (1 - z - (mu-1) z^2 - z^3 + z^4)."""
    _codepth3_guard(mu, e)
    return RationalFn(ONE_PLUS_Z ** 2, int_poly([1, -1, -(mu - 1), -1, 1]))


def codepth3_gorenstein_series(mu, depth, e=3):
    """
    Poincare series of a non-CI Gorenstein ring of embedding dimension 3.

    :raises InputError: Unless e = 3 and mu >= 4
    """
    _check_depth(depth)
    return codepth3_gorenstein_rational(mu, e).expand(depth)


def codepth3_gorenstein_quotient_rational(mu, e=3):
    """(1+z)^2 / (1 - z - mu z^2 - 3 z^3), the image of the above under P/(1 - z^2 P)."""
    _codepth3_guard(mu, e)
    return RationalFn(ONE_PLUS_Z ** 2, int_poly([1, -1, -mu, -3]))


def codepth3_gorenstein_quotient_series(mu, depth, e=3):
    _check_depth(depth)
    return codepth3_gorenstein_quotient_rational(mu, e).expand(depth)


def ci_codepth3_quotient_display():
    """(1+z)^2 / (1 - z - 3z^2 - z^5), the codepth-3 complete intersection modulo m^3."""
    return RationalFn(ONE_PLUS_Z ** 2, int_poly([1, -1, -3, 0, 0, -1]))


def ezd_rational(e):
    return RationalFn(int_poly([1]), int_poly([1, -e, e, -1]))


def ezd_series(e, depth):
    """1/(1 - e z + e z^2 - z^3): Poincare series of R/m^3 when R has an exact zero divisor."""
    _check_depth(depth)
    return ezd_rational(e).expand(depth)


def gh_display(e=4):
    """
    The factored form (1+z)^e / ((1+z)^(e-2) (1+z)^2 (1 - e z + e z^2 - z^3)).

    At e = 4 this is (1+z)^4 / ((1+z)^2 (1 - 2z - 3z^2 + 3z^3 + 2z^4 - z^5)).
    """
    if e < 2:
        raise InputError(f"embedding dimension must be at least 2, got {e}")
    inner = ONE_PLUS_Z ** 2 * int_poly([1, -e, e, -1])
    display = f"(1 + z)^{e} / ((1 + z)^{e - 2}*({format_terms(poly_coefficients(inner))}))"
    return RationalFn(ONE_PLUS_Z ** e, ONE_PLUS_Z ** (e - 2) * inner, display=display)


def rossi_sega_rational(e, PQR):
    """
    (1+z)^e / (1 - z (P^Q_R - 1) + z^(e+1) (z + 1)).

    :param PQR: P^Q_R as a polynomial or ascending coefficients, constant term 1
    """
    PQR = PQR if isinstance(PQR, Poly) else int_poly(PQR)
    if poly_coefficients(PQR)[0] != 1:
        raise InputError("P^Q_R must have constant term 1")
    z = int_poly([0, 1])
    denominator = int_poly([1]) - z * (PQR - int_poly([1])) + z ** (e + 1) * ONE_PLUS_Z
    return RationalFn(ONE_PLUS_Z ** e, denominator)


def rossi_sega_criterion_series(e, PQR, depth):
    """The Poincare series a Gorenstein R of socle degree 3 has exactly when R/m^3 is Golod."""
    _check_depth(depth)
    return rossi_sega_rational(e, PQR).expand(depth)


def ggo_denominator(h):
    """
    1 - (h+1) z^2 - 2(h+1) z^3 - (h+6) z^4 - 4 z^5.

    A polynomial, so there is no cutoff; ggo_series expands the full form to depth D.
    """
    return int_poly([1, 0, -(h + 1), -2 * (h + 1), -(h + 6), -4])


def ggo_denominator_factored(h):
    """(1+z)^2 (1 - 2z - (h-2) z^2 - 4 z^3), expanded."""
    return ONE_PLUS_Z ** 2 * int_poly([1, -2, -(h - 2), -4])


def ggo_rational(h):
    """(1+z)^4 / ggo_denominator(h)."""
    return RationalFn(ONE_PLUS_Z ** 4, ggo_denominator(h))


def ggo_series(h, depth):
    _check_depth(depth)
    return ggo_rational(h).expand(depth)


def koszul_numerical_test(P, H, depth=None):
    """
    Check P(z) H(-z) = 1 up to z^depth.

    :param P: Truncated Poincare series
    :type P: IntSeries
    :param H: Hilbert series as ascending coefficients or a polynomial
    :return: True when the product is 1 to the compared depth
    :rtype: bool
    """
    depth = P.depth if depth is None else min(depth, P.depth)
    hilbert_series = IntSeries.from_poly(H if isinstance(H, Poly) else list(H), depth)
    product = P.truncate(depth) * hilbert_series.evaluate_negated()
    return product == IntSeries.one(depth)


@dataclass
class SeriesComparison:
    """Two coefficient lists and the longest prefix on which they agree."""
    name: str
    expected: list
    computed: list

    @property
    def agree_up_to(self):
        """Largest k with equal coefficients 0..k; -1 if they differ at once."""
        k = -1
        for a, b in zip(self.expected, self.computed):
            if a != b:
                break
            k += 1
        return k

    @property
    def agree(self):
        return self.expected == self.computed

    def to_dict(self):
        return {
            'name': self.name,
            'expected': list(self.expected),
            'computed': list(self.computed),
            'agree_up_to': self.agree_up_to,
        }


def compare(name, expected, computed):
    depth = min(len(expected), len(computed))
    return SeriesComparison(name, list(expected)[:depth], list(computed)[:depth])


def polynomial_equal(a, b):
    return sympy.expand(a.as_expr() - b.as_expr()) == 0
