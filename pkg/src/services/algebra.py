"""
Finite local algebras over F_p.

A presented ring Q/I (Q a polynomial ring, I m-primary and inside n^2) is
compiled by linear algebra in the truncation T_N = Q/n^N: the image of I is the
span of all monomial multiples of the generators, the standard monomials (the
non-pivot columns) form a basis and products are reduced into that basis.

Algebra elements are row vectors of coordinates in the algebra basis;
``basis[0]`` is always 1 and ``basis[1:]`` spans the maximal ideal.
"""
from dataclasses import dataclass, field as dataclass_field
from functools import cached_property
from math import comb

import numpy as np

from src.services.linalg import (Subspace, guard_size, left_nullspace, matmul_mod, rref,
                                 span_of_blocks)
from src.services.parser import parse_poly
from src.services.scalars import Monomial, Poly, PrimeField, monomials_below, monomials_of_degree
from src.utils.config import CAP_SEARCH_START, CAP_SEARCH_STOP
from src.utils.errors import (InputError, InternalConsistencyError, NotAnIdealError,
                              OperandMismatchError, PresentationError)
from src.utils.logger import get_logger
from src.utils.validators import validate_cap, validate_variable_names

logger = get_logger(__name__)

_ASSOCIATIVITY_FULL_LIMIT = 20
_ASSOCIATIVITY_SAMPLES = 2000


def default_names(nvars):
    """Variable names used when an algebra has no presentation of its own."""
    if nvars <= 3:
        return ['x', 'y', 'z'][:nvars]
    return [f"x{i + 1}" for i in range(nvars)]


@dataclass(frozen=True)
class PresentedRing:
    """
    The quotient Q/I of a polynomial ring over F_p by an ideal given by generators.

    Generators are kept as expression strings so they can be re-read at any
    degree cap.

    :param field: Coefficient field
    :param names: Ordered variable names
    :param ideal: Generator expressions
    :param cap: Degree cap N with n^N inside I, or None to search for one
    :param label: Free-form name used in reports
    """
    field: PrimeField
    names: tuple
    ideal: tuple
    cap: int = None
    label: str = ''
    _cache: dict = dataclass_field(default_factory=dict, compare=False, hash=False, repr=False)

    def __post_init__(self):
        object.__setattr__(self, 'names', tuple(self.names))
        object.__setattr__(self, 'ideal', tuple(self.ideal))
        if not validate_variable_names(list(self.names)):
            raise InputError(f"variable names must be distinct identifiers, got {list(self.names)}")
        if self.cap is not None and not validate_cap(self.cap):
            raise InputError(f"degree cap must be a positive integer, got {self.cap!r}")

    @classmethod
    def from_strings(cls, p, names, ideal, cap=None, label=''):
        """
        Build a presented ring from plain values, validating the prime.

        :raises InputError: On a bad prime, bad names or bad cap
        """
        return cls(PrimeField(p), tuple(names), tuple(ideal), cap, label)

    @property
    def nvars(self):
        return len(self.names)

    def generators(self, cap):
        """Generators parsed at the given degree cap."""
        key = ('gens', cap)
        if key not in self._cache:
            self._cache[key] = [parse_poly(text, list(self.names), self.field, cap) for text in self.ideal]
        return self._cache[key]

    def with_extra_generators(self, extra, cap=None, label=None):
        return PresentedRing(self.field, self.names, self.ideal + tuple(extra),
                             cap if cap is not None else self.cap,
                             label if label is not None else self.label)

    def ideal_subspace(self, cap):
        """
        The image of I in T_cap as a subspace of the monomial coordinates.

        :return: Subspace of F_p^{monomials of degree < cap} and the monomial list
        :rtype: tuple[Subspace, list[Monomial]]
        """
        monomials = monomials_below(self.nvars, cap)
        index = {m: i for i, m in enumerate(monomials)}
        rows = _ideal_rows(self.generators(cap), monomials, index, self.field.p)
        return Subspace(self.field.p, len(monomials), rows), monomials

    def same_ideal(self, other):
        """
        Decide whether two presentations define the same ideal.

        Both ideals contain n^N for N the larger compiled cap, so comparing their
        images in T_N decides equality.
        """
        if self.field != other.field or self.names != other.names:
            raise OperandMismatchError("presentations over different fields or variables")
        cap = max(compile_ring(self).reduction.cap, compile_ring(other).reduction.cap)
        return self.ideal_subspace(cap)[0] == other.ideal_subspace(cap)[0]

    def describe(self):
        gens = ', '.join(self.ideal)
        return f"{self.field} [{', '.join(self.names)}] / ({gens})"


def _poly_vector(poly, index, size):
    vector = np.zeros(size, dtype=np.int64)
    for mono, coeff in poly.terms.items():
        vector[index[mono]] = coeff
    return vector


def _ideal_rows(generators, monomials, index, p):
    size = len(monomials)
    rows = []
    for gen in generators:
        if gen.is_zero():
            continue
        low = gen.valuation()
        for mono in monomials:
            if mono.degree + low >= gen.cap:
                break
            shifted = Poly(gen.field, gen.nvars, gen.cap, {mono: 1}) * gen
            if not shifted.is_zero():
                rows.append(_poly_vector(shifted, index, size))
    if not rows:
        return np.zeros((0, size), dtype=np.int64)
    return np.stack(rows) % p


@dataclass
class Reduction:
    """
    Normal-form data of a compiled presentation.

    ``rows``/``pivots`` are the RREF of the ideal image in T_cap; ``standard``
    lists the monomial columns that make up the algebra basis.
    """
    names: tuple
    cap: int
    monomials: list
    index: dict
    rows: np.ndarray
    pivots: list
    standard: list

    def normal_form(self, poly, p):
        """Coordinates of a truncated polynomial in the standard-monomial basis."""
        vector = _poly_vector(poly, self.index, len(self.monomials))
        if self.pivots:
            vector = (vector - matmul_mod(vector[self.pivots][None, :], self.rows, p)[0]) % p
        return vector[self.standard]


def _reduce_at(pr, cap):
    monomials = monomials_below(pr.nvars, cap)
    index = {m: i for i, m in enumerate(monomials)}
    p = pr.field.p
    generators = pr.generators(cap)
    for text, gen in zip(pr.ideal, generators):
        if not gen.is_zero() and gen.valuation() < 2:
            raise PresentationError(f"non-minimal presentation: generator {text!r} has a term of degree < 2")
    rows = _ideal_rows(generators, monomials, index, p)
    guard_size(rows.shape[0], len(monomials), 'ideal image')
    if rows.shape[0]:
        reduced, pivots = rref(rows, p)
    else:
        reduced, pivots = rows, []
    pivot_set = set(pivots)
    standard = [i for i in range(len(monomials)) if i not in pivot_set]
    return Reduction(pr.names, cap, monomials, index, reduced, list(pivots), standard)


def _stable_reduction(pr):
    caps = [pr.cap] if pr.cap is not None else range(CAP_SEARCH_START, CAP_SEARCH_STOP + 1)
    for cap in caps:
        reduction = _reduce_at(pr, cap)
        if len(reduction.standard) == len(_reduce_at(pr, cap + 1).standard):
            return reduction
        logger.info("cap %d does not stabilize for %s", cap, pr.label or pr.describe())
    raise PresentationError("cap too small or ideal not m-primary")


def compile_ring(pr):
    """
    Compile a presented ring into a finite local algebra.

    :param pr: The presented ring
    :type pr: PresentedRing
    :return: Algebra on the standard monomials, memoised on the presentation
    :rtype: FiniteLocalAlgebra
    :raises PresentationError: On a generator of valuation < 2, or when n^cap is not inside I
    """
    if 'algebra' in pr._cache:
        return pr._cache['algebra']
    p = pr.field.p
    reduction = _stable_reduction(pr)
    standard = [reduction.monomials[i] for i in reduction.standard]
    n = len(standard)
    size = len(reduction.monomials)
    products = np.zeros((n * n, size), dtype=np.int64)
    for i, a in enumerate(standard):
        for j, b in enumerate(standard):
            product = a * b
            if product.degree < reduction.cap:
                products[i * n + j, reduction.index[product]] = 1
    if reduction.pivots:
        products = (products - matmul_mod(products[:, reduction.pivots], reduction.rows, p)) % p
    mult = products[:, reduction.standard].reshape(n, n, n)
    labels = [mono.to_string(list(pr.names)) for mono in standard]
    algebra = FiniteLocalAlgebra(pr.field, labels, mult, origin=pr, reduction=reduction,
                                 label=pr.label)
    logger.info("compiled %s: dim %d at cap %d", pr.label or pr.describe(), n, reduction.cap)
    pr._cache['algebra'] = algebra
    return algebra


class FiniteLocalAlgebra:
    """
    A commutative local algebra given by structure constants.

    ``mult[i, j]`` is the coordinate vector of basis[i] * basis[j].

    :param field: Coefficient field
    :type field: PrimeField
    :param labels: Basis labels, ``labels[0]`` is the unit
    :type labels: list[str]
    :param mult: Structure constants of shape (n, n, n)
    :type mult: numpy.ndarray
    :param origin: Presentation this algebra was compiled from, if any
    :type origin: PresentedRing or None
    :param reduction: Normal-form data of that presentation
    :type reduction: Reduction or None
    """

    def __init__(self, field, labels, mult, origin=None, reduction=None, label=''):
        self.field = field
        self.labels = tuple(labels)
        self.mult = np.asarray(mult, dtype=np.int64) % field.p
        self.origin = origin
        self.reduction = reduction
        self.label = label
        n = len(self.labels)
        if self.mult.shape != (n, n, n):
            raise InputError(f"structure constants of shape {self.mult.shape} for {n} basis elements")

    @property
    def p(self):
        return self.field.p

    @property
    def dim(self):
        return len(self.labels)

    def __repr__(self):
        return f"FiniteLocalAlgebra({self.label or 'anonymous'}, dim={self.dim}, {self.field})"

    # elements

    def zero(self):
        return np.zeros(self.dim, dtype=np.int64)

    def unit(self, k=0):
        vector = self.zero()
        vector[k] = 1
        return vector

    def one(self):
        return self.unit(0)

    @property
    def names(self):
        if self.origin is not None:
            return list(self.origin.names)
        return default_names(self.embedding_dimension)

    def element(self, value):
        """
        Coordinates of an element given as a vector, a Poly or an expression string.

        Polynomials and strings need a presentation.
        """
        if isinstance(value, np.ndarray) or isinstance(value, (list, tuple)):
            vector = np.asarray(value, dtype=np.int64) % self.p
            if vector.shape != (self.dim,):
                raise OperandMismatchError(f"element of length {vector.shape} in an algebra of dim {self.dim}")
            return vector
        if self.reduction is None:
            raise InputError("this algebra has no presentation to read polynomials in")
        if isinstance(value, str):
            value = parse_poly(value, list(self.reduction.names), self.field, self.reduction.cap)
        if isinstance(value, Poly):
            if value.field != self.field or value.nvars != len(self.reduction.names):
                raise OperandMismatchError("polynomial over a different field or variable set")
            if value.cap != self.reduction.cap:
                value = Poly(self.field, value.nvars, self.reduction.cap, value.terms)
            return self.reduction.normal_form(value, self.p)
        raise OperandMismatchError(f"cannot read {type(value).__name__} as an algebra element")

    def format_element(self, vector):
        parts = []
        for label, coeff in zip(self.labels, np.asarray(vector) % self.p):
            coeff = int(coeff)
            if not coeff:
                continue
            if label == '1':
                parts.append(str(coeff))
            elif coeff == 1:
                parts.append(label)
            else:
                parts.append(f"{coeff}*{label}")
        return ' + '.join(parts) if parts else '0'

    def left_matrix(self, a):
        """Matrix L with v @ L = a * v."""
        a = np.asarray(a, dtype=np.int64) % self.p
        n = self.dim
        return matmul_mod(a[None, :], self.mult.reshape(n, n * n), self.p).reshape(n, n)

    def multiply(self, a, b):
        return matmul_mod(np.asarray(b)[None, :], self.left_matrix(a), self.p)[0]

    def power(self, a, exponent):
        result = self.one()
        for _ in range(exponent):
            result = self.multiply(result, a)
        return result

    def random_element(self, rng, in_max=False):
        vector = rng.integers(0, self.p, size=self.dim).astype(np.int64)
        if in_max:
            vector[0] = 0
        return vector

    # structure

    @cached_property
    def mmax(self):
        n = self.dim
        return Subspace(self.p, n, np.eye(n, dtype=np.int64)[1:])

    @cached_property
    def square_of_max(self):
        n = self.dim
        if n == 1:
            return Subspace.zero(self.p, n)
        return Subspace(self.p, n, self.mult[1:, 1:, :].reshape(-1, n))

    @cached_property
    def generators(self):
        """Basis elements lifting a basis of m/m^2, as unit vectors."""
        n = self.dim
        _, indices = self.square_of_max.complement_from(np.eye(n, dtype=np.int64)[1:])
        return [self.unit(1 + i) for i in indices]

    @property
    def embedding_dimension(self):
        return len(self.generators)

    @cached_property
    def generator_matrices(self):
        return [self.left_matrix(g) for g in self.generators]

    def times_max(self, space):
        """The subspace m * V for a subspace V."""
        if space.dim == 0 or not self.generators:
            return Subspace.zero(self.p, self.dim)
        blocks = [matmul_mod(space.rows, L, self.p) for L in self.generator_matrices]
        return span_of_blocks(self.p, self.dim, blocks)

    @cached_property
    def filtration(self):
        """[m^0, m^1, ..., m^s, m^(s+1) = 0]."""
        levels = [Subspace.full(self.p, self.dim), self.mmax]
        while levels[-1].dim:
            if len(levels) > self.dim + 1:
                raise InternalConsistencyError("maximal ideal is not nilpotent")
            following = self.times_max(levels[-1])
            if following.dim >= levels[-1].dim:
                raise InternalConsistencyError("maximal ideal is not nilpotent")
            levels.append(following)
        return levels

    @property
    def socle_degree(self):
        return len(self.filtration) - 2

    def check_axioms(self, rng=None):
        """
        Verify commutativity, associativity, the unit and locality.

        Associativity is checked on all triples up to dimension 20 and on sampled
        triples above.

        :raises InternalConsistencyError: On the first failed axiom
        """
        n, p, mult = self.dim, self.p, self.mult
        if not np.array_equal(mult, mult.transpose(1, 0, 2)):
            raise InternalConsistencyError("multiplication is not commutative")
        if not np.array_equal(mult[0], np.eye(n, dtype=np.int64)):
            raise InternalConsistencyError("basis[0] is not the unit")
        if n <= _ASSOCIATIVITY_FULL_LIMIT:
            left = matmul_mod(mult.reshape(n * n, n), mult.reshape(n, n * n), p).reshape(n, n, n, n)
            for i in range(n):
                right = matmul_mod(mult.reshape(n * n, n), mult[i], p).reshape(n, n, n)
                if not np.array_equal(left[i], right):
                    raise InternalConsistencyError("multiplication is not associative")
        else:
            rng = rng if rng is not None else np.random.default_rng(0)
            for i, j, k in rng.integers(0, n, size=(_ASSOCIATIVITY_SAMPLES, 3)):
                left = self.multiply(mult[i, j], self.unit(k))
                right = self.multiply(self.unit(i), mult[j, k])
                if not np.array_equal(left, right):
                    raise InternalConsistencyError("multiplication is not associative")
        if np.any(mult[1:, 1:, 0]):
            raise InternalConsistencyError("basis[1:] does not span an ideal")
        self.filtration
        return True


def field_algebra(field):
    """The residue field k as an algebra of dimension 1 with m = 0."""
    return FiniteLocalAlgebra(field, ['1'], np.ones((1, 1, 1), dtype=np.int64), label='k')


def truncated_polynomial_ring(field, names, cap, label=''):
    """
    Q/n^cap as a presented ring.

    :raises InputError: If cap < 2
    """
    if not validate_cap(cap) or cap < 2:
        raise InputError(f"truncation cap must be at least 2, got {cap!r}")
    names = list(names)
    ideal = [mono.to_string(names) for mono in monomials_of_degree(len(names), cap)]
    return PresentedRing(field, tuple(names), tuple(ideal), cap, label or f"Q/n^{cap}")


def hilbert(algebra):
    """
    Hilbert function of the associated graded ring.

    :return: (h(0), ..., h(s))
    :rtype: list[int]
    """
    levels = algebra.filtration
    return [levels[i].dim - levels[i + 1].dim for i in range(len(levels) - 1)]


def socle(algebra):
    """The socle (0 : m) as a subspace."""
    if not algebra.generators:
        return Subspace.full(algebra.p, algebra.dim)
    stacked = np.concatenate(algebra.generator_matrices, axis=1)
    return Subspace(algebra.p, algebra.dim, left_nullspace(stacked, algebra.p))


def ring_type(algebra):
    return socle(algebra).dim


def is_gorenstein(algebra):
    return ring_type(algebra) == 1


def _hilbert_of_regular(e, i):
    if e == 0:
        return 1 if i == 0 else 0
    return comb(e - 1 + i, e - 1)


def is_compressed(algebra):
    """
    Compare h(i) with min{h_Q(i), h_Q(s - i)} for every 0 <= i <= s.

    The comparison is meaningful for Gorenstein rings; on other input it is still
    computed and a warning is logged.
    """
    if not is_gorenstein(algebra):
        logger.warning("compressedness asked of a ring of type %d; returning the numerical comparison",
                       ring_type(algebra))
    h = hilbert(algebra)
    e = algebra.embedding_dimension
    s = algebra.socle_degree
    return all(h[i] == min(_hilbert_of_regular(e, i), _hilbert_of_regular(e, s - i)) for i in range(s + 1))


def valuation(algebra, value):
    """
    Largest i with the element or ideal inside m^i; s + 1 for zero.

    :param value: Element vector or Subspace
    """
    space = value if isinstance(value, Subspace) else Subspace(algebra.p, algebra.dim, [algebra.element(value)])
    levels = algebra.filtration
    result = 0
    for i, level in enumerate(levels):
        if level.contains_subspace(space):
            result = i
        else:
            break
    return result


def ideal_generated(algebra, elements):
    """The ideal R * elements as a subspace."""
    blocks = [algebra.left_matrix(algebra.element(a)) for a in elements]
    return span_of_blocks(algebra.p, algebra.dim, blocks)


def is_ideal(algebra, space):
    if space.dim == 0:
        return True
    for L in algebra.generator_matrices:
        if np.any(space.reduce(matmul_mod(space.rows, L, algebra.p))):
            return False
    return True


def mu(algebra, space):
    """
    Minimal number of generators dim J/mJ of an ideal J.

    :raises NotAnIdealError: If the subspace is not closed under multiplication
    """
    if space.ambient != algebra.dim:
        raise OperandMismatchError("subspace lives in a different algebra")
    if not is_ideal(algebra, space):
        raise NotAnIdealError("subspace is not closed under multiplication by the ring")
    return space.dim - algebra.times_max(space).dim


def minimal_generators(algebra, space):
    """Vectors of J that lift a basis of J/mJ."""
    chosen, _ = algebra.times_max(space).complement_from(space.rows)
    return chosen


def mu_presentation(algebra):
    """mu(I) for a minimal presentation, read off as dim H_1 of the Koszul complex."""
    from src.services.koszul import homology, koszul_complex
    dims = homology(koszul_complex(algebra)).dims
    return dims[1] if len(dims) > 1 else 0


def _reversed_pivots(space):
    order = list(range(space.ambient - 1, -1, -1))
    return rref(space.rows, space.p, column_order=order)


def quotient_power(algebra, i):
    """
    The quotient A/m^i.

    Presented algebras are re-presented with n^i added to the ideal; other
    algebras are cut down along a complement of m^i.

    :raises InputError: If i < 1
    """
    if isinstance(i, bool) or not isinstance(i, int) or i < 1:
        raise InputError(f"quotient exponent must be a positive integer, got {i!r}")
    if i == 1:
        return field_algebra(algebra.field)
    if i > algebra.socle_degree:
        return algebra
    label = f"{algebra.label or 'A'}/m^{i}"
    if algebra.origin is not None:
        names = list(algebra.origin.names)
        extra = [mono.to_string(names) for mono in monomials_of_degree(len(names), i)]
        return compile_ring(algebra.origin.with_extra_generators(extra, cap=i, label=label))
    level = algebra.filtration[i]
    rows, pivots = _reversed_pivots(level)
    pivot_set = set(pivots)
    keep = [k for k in range(algebra.dim) if k not in pivot_set]
    n = algebra.dim
    products = algebra.mult[np.ix_(keep, keep)].reshape(-1, n)
    if pivots:
        products = (products - matmul_mod(products[:, pivots], rows, algebra.p)) % algebra.p
    mult = products[:, keep].reshape(len(keep), len(keep), len(keep))
    return FiniteLocalAlgebra(algebra.field, [algebra.labels[k] for k in keep], mult, label=label)


def annihilator(algebra, a):
    """(0 : a) as a subspace."""
    return Subspace(algebra.p, algebra.dim, left_nullspace(algebra.left_matrix(algebra.element(a)), algebra.p))


def is_exact_zero_divisor(algebra, a):
    """a != 0 and (0 : a) is a nonzero principal ideal."""
    a = algebra.element(a)
    if not np.any(a):
        return False
    ann = annihilator(algebra, a)
    return ann.dim > 0 and mu(algebra, ann) == 1


def mu_lower_bound_compressed(e, s):
    """
    Lower bound for mu(I) of a compressed Gorenstein ring of embedding dimension e and socle degree s.

    :raises InputError: If e < 2 or s < 2
    """
    if e < 2 or s < 2:
        raise InputError(f"bound needs e >= 2 and s >= 2, got e={e}, s={s}")
    t = (s + 2) // 2
    bound = comb(e - 2 + t, e - 2)
    if s % 2 == 0:
        bound += comb(e - 3 + t, e - 2)
    return bound


def presentation_of(algebra, names=None, label=None):
    """
    Re-present an algebra as Q/I with I inside n^2.

    Monomials of degree <= s + 1 are evaluated in the chosen generators; their
    kernel is the ideal in T_(s+2), and a complement of n * kernel gives minimal
    generators.
    """
    e = algebra.embedding_dimension
    names = list(names) if names is not None else default_names(e)
    if len(names) != e:
        raise InputError(f"need {e} variable names, got {len(names)}")
    p = algebra.p
    cap = algebra.socle_degree + 2
    monomials = monomials_below(e, cap)
    index = {m: k for k, m in enumerate(monomials)}
    values = np.zeros((len(monomials), algebra.dim), dtype=np.int64)
    for k, mono in enumerate(monomials):
        if mono.degree == 0:
            values[k] = algebra.one()
            continue
        last = max(j for j, exp in enumerate(mono.exponents) if exp)
        exps = list(mono.exponents)
        exps[last] -= 1
        previous = values[index[Monomial(tuple(exps))]]
        values[k] = algebra.multiply(previous, algebra.generators[last])
    kernel = Subspace(p, len(monomials), left_nullspace(values, p))
    shifts = []
    for j in range(e):
        target = np.zeros((len(monomials), len(monomials)), dtype=np.int64)
        for k, mono in enumerate(monomials):
            shifted = mono * Monomial.variable(j, e)
            if shifted.degree < cap:
                target[k, index[shifted]] = 1
        shifts.append(matmul_mod(kernel.rows, target, p) if kernel.dim else kernel.rows)
    n_kernel = span_of_blocks(p, len(monomials), shifts)
    chosen, _ = n_kernel.complement_from(kernel.rows)
    ideal = []
    for row in chosen:
        poly = Poly(algebra.field, e, cap, {monomials[k]: int(c) for k, c in enumerate(row) if c})
        ideal.append(poly.to_string(names))
    return PresentedRing(algebra.field, tuple(names), tuple(ideal), cap,
                         label if label is not None else algebra.label)
