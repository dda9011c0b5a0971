"""
Ring constructions: Pfaffian ideals, trivial extensions, exact zero divisor
searches and the built-in example rings.
"""
import re
from dataclasses import dataclass, field as dataclass_field
from itertools import product

import numpy as np

from src.services.algebra import (FiniteLocalAlgebra, PresentedRing, annihilator, ideal_generated,
                                  is_exact_zero_divisor, minimal_generators)
from src.services.parser import parse_poly
from src.services.scalars import Poly, PrimeField
from src.utils.config import (DEFAULT_CHARACTERISTIC, DEFAULT_SEED, EZD_DEFAULT_BUDGET, EZD_FULL_AUTO_LIMIT,
                              EZD_MODES)
from src.utils.errors import InputError, OperandMismatchError
from src.utils.logger import get_logger

logger = get_logger(__name__)

PFAFFIAN_CAP = 12


class SkewMatrix:
    """
    A skew-symmetric matrix of truncated polynomials.

    :param entries: Square nested list of Poly sharing field, variables and cap
    :type entries: list[list[Poly]]
    :raises InputError: If the matrix is not square or not skew-symmetric
    """

    def __init__(self, entries, names=None):
        self.entries = [list(row) for row in entries]
        self.size = len(self.entries)
        if any(len(row) != self.size for row in self.entries):
            raise InputError("skew matrix must be square")
        if self.size:
            first = self.entries[0][0]
            for row in self.entries:
                for value in row:
                    if (value.field, value.nvars, value.cap) != (first.field, first.nvars, first.cap):
                        raise OperandMismatchError("skew matrix entries over different rings")
        for i in range(self.size):
            if not self.entries[i][i].is_zero():
                raise InputError(f"diagonal entry ({i}, {i}) of a skew matrix must be zero")
            for j in range(i + 1, self.size):
                if self.entries[i][j] != -self.entries[j][i]:
                    raise InputError(f"entries ({i}, {j}) and ({j}, {i}) are not negatives of each other")
        self.names = list(names) if names is not None else None

    @classmethod
    def from_strings(cls, field, names, rows, cap=PFAFFIAN_CAP):
        entries = [[parse_poly(text, names, field, cap) for text in row] for row in rows]
        return cls(entries, names)

    @classmethod
    def from_scalars(cls, field, values):
        """A matrix of constants, as polynomials in no variables."""
        entries = [[Poly.constant(field, 0, 1, v) for v in row] for row in values]
        return cls(entries, [])

    def one(self):
        sample = self.entries[0][0]
        return Poly.constant(sample.field, sample.nvars, sample.cap, 1)


def _pfaffian(matrix, indices, memo):
    if not indices:
        return matrix.one()
    key = tuple(indices)
    if key in memo:
        return memo[key]
    first, rest = indices[0], indices[1:]
    total = None
    for position, j in enumerate(rest):
        entry = matrix.entries[first][j]
        if entry.is_zero():
            continue
        remaining = rest[:position] + rest[position + 1:]
        term = entry * _pfaffian(matrix, remaining, memo)
        if position % 2:
            term = -term
        total = term if total is None else total + term
    if total is None:
        total = matrix.one() * 0
    memo[key] = total
    return total


def pfaffian(matrix):
    """
    Pfaffian by expansion along the first row.

    :raises InputError: On an odd size
    """
    if matrix.size % 2:
        raise InputError(f"Pfaffian needs an even size, got {matrix.size}")
    if matrix.size == 0:
        raise InputError("Pfaffian of an empty matrix needs a coefficient ring")
    return _pfaffian(matrix, list(range(matrix.size)), {})


def pfaffian_ideal(matrix):
    """
    Signed sub-maximal Pfaffians of an odd skew matrix.

    Entry i (0-based) is (-1)^i times the Pfaffian with row and column i deleted.

    :raises InputError: On an even size or a size below 3
    """
    n = matrix.size
    if n % 2 == 0 or n < 3:
        raise InputError(f"sub-maximal Pfaffians need an odd size >= 3, got {n}")
    memo = {}
    generators = []
    for i in range(n):
        value = _pfaffian(matrix, [k for k in range(n) if k != i], memo)
        generators.append(-value if i % 2 else value)
    return generators


def pfaffian_presentation(matrix, label='pfaffian'):
    """The Pfaffian ideal as a presented ring in the matrix variables."""
    if matrix.names is None:
        raise InputError("skew matrix has no variable names")
    gens = [g.to_string(matrix.names) for g in pfaffian_ideal(matrix) if not g.is_zero()]
    field = matrix.entries[0][0].field
    return PresentedRing(field, tuple(matrix.names), tuple(gens), None, label)


def trivial_extension(algebra):
    """
    The trivial extension R x| Hom_k(R, k) by the dual module.

    The dual basis element of basis[k] is labelled ``D(label)``;
    (e_i * f_k)(e_j) = f_k(e_i e_j).

    :rtype: FiniteLocalAlgebra
    """
    n = algebra.dim
    mult = np.zeros((2 * n, 2 * n, 2 * n), dtype=np.int64)
    mult[:n, :n, :n] = algebra.mult
    # e_i * f_k = sum_j mult[i, j, k] f_j
    action = algebra.mult.transpose(0, 2, 1)
    mult[:n, n:, n:] = action
    mult[n:, :n, n:] = action.transpose(1, 0, 2)
    labels = list(algebra.labels) + [f"D({label})" for label in algebra.labels]
    result = FiniteLocalAlgebra(algebra.field, labels, mult, label=f"trivext({algebra.label or 'A'})")
    logger.info("trivial extension of %s: dim %d", algebra.label or 'algebra', result.dim)
    return result


@dataclass
class EzdReport:
    """
    Outcome of an exact zero divisor search.

    ``status`` is ``found``, ``none_exhaustive`` (every candidate of the scope was
    tried) or ``budget_exceeded``.
    """
    mode: str
    scope: str
    budget: int
    consumed: int
    status: str
    witness: list = None
    witness_text: str = ''
    generator: list = None
    generator_text: str = ''
    complementary: bool = None
    notes: list = dataclass_field(default_factory=list)

    @property
    def found(self):
        return self.status == 'found'

    def to_dict(self):
        return {
            'found': self.found,
            'status': self.status,
            'mode': self.mode,
            'scope': self.scope,
            'budget': self.budget,
            'consumed': self.consumed,
            'witness': self.witness_text or None,
            'generator': self.generator_text or None,
            'complementary': self.complementary,
        }


def _projective_points(dim, p):
    """One representative per line of F_p^dim: leading nonzero coordinate 1."""
    for lead in range(dim):
        for tail in product(range(p), repeat=dim - lead - 1):
            point = [0] * lead + [1] + list(tail)
            yield point


def _linear_candidates(algebra):
    generators = np.array(algebra.generators, dtype=np.int64).reshape(-1, algebra.dim)
    for point in _projective_points(len(generators), algebra.p):
        yield (np.asarray(point, dtype=np.int64) @ generators) % algebra.p


def _full_candidates(algebra):
    for point in _projective_points(algebra.dim - 1, algebra.p):
        yield np.asarray([0] + point, dtype=np.int64)


def _random_candidates(algebra, seed):
    rng = np.random.default_rng(seed)
    while True:
        vector = algebra.random_element(rng, in_max=True)
        if np.any(vector):
            yield vector


def _projective_count(dim, p):
    return (p ** dim - 1) // (p - 1) if dim else 0


def _run(algebra, candidates, budget):
    consumed = 0
    for candidate in candidates:
        if consumed >= budget:
            return None, consumed, False
        consumed += 1
        if is_exact_zero_divisor(algebra, candidate):
            return candidate, consumed, False
    return None, consumed, True


def ezd_search(algebra, mode=None, budget=EZD_DEFAULT_BUDGET, seed=DEFAULT_SEED):
    """
    Search the maximal ideal for an exact zero divisor.

    Modes: ``linear`` tries one lift per line of m/m^2, ``full`` one element per
    line of m, ``random`` samples m \\ 0 with the given seed, ``auto`` runs
    ``full`` when |m| <= 2^14 and otherwise ``linear`` followed by ``random``.
    Exhaustive modes return the first witness in enumeration order.

    :param algebra: The ring R
    :type algebra: FiniteLocalAlgebra
    :param mode: One of linear, full, random, auto
    :type mode: str
    :param budget: Maximum number of candidates tested
    :type budget: int
    :param seed: Seed of the random mode
    :type seed: int
    :return: The search report; a witness comes with the generator b of (0 : a)
    :rtype: EzdReport
    :raises InputError: On an unknown mode or a non-positive budget
    """
    mode = mode or 'linear'
    if mode not in EZD_MODES:
        raise InputError(f"unknown search mode {mode!r}; expected one of {', '.join(EZD_MODES)}")
    if isinstance(budget, bool) or not isinstance(budget, int) or budget < 1:
        raise InputError(f"search budget must be a positive integer, got {budget!r}")
    p, dim_m = algebra.p, algebra.dim - 1
    if mode == 'auto':
        mode = 'full' if p ** dim_m <= EZD_FULL_AUTO_LIMIT else 'linear+random'
    logger.info("EZD search on %s: mode %s, budget %d", algebra.label or 'algebra', mode, budget)

    if mode == 'linear':
        witness, consumed, exhausted = _run(algebra, _linear_candidates(algebra), budget)
        scope = 'linear'
    elif mode == 'full':
        witness, consumed, exhausted = _run(algebra, _full_candidates(algebra), budget)
        scope = 'full'
    elif mode == 'random':
        witness, consumed, exhausted = _run(algebra, _random_candidates(algebra, seed), budget)
        scope = 'random'
    else:
        witness, consumed, exhausted = _run(algebra, _linear_candidates(algebra), budget)
        scope = 'linear'
        if witness is None and consumed < budget:
            witness, extra, _ = _run(algebra, _random_candidates(algebra, seed), budget - consumed)
            consumed += extra
            scope = 'linear+random'

    if witness is None:
        status = 'none_exhaustive' if exhausted and scope in ('linear', 'full') else 'budget_exceeded'
        if scope == 'full' and not exhausted:
            logger.warning("full search needs %d candidates, budget is %d",
                           _projective_count(dim_m, p), budget)
        return EzdReport(mode, scope, budget, consumed, status)

    ann = annihilator(algebra, witness)
    generator = minimal_generators(algebra, ann)[0]
    complementary = annihilator(algebra, generator) == ideal_generated(algebra, [witness])
    return EzdReport(mode, scope, budget, consumed, 'found',
                     witness=[int(c) for c in witness], witness_text=algebra.format_element(witness),
                     generator=[int(c) for c in generator], generator_text=algebra.format_element(generator),
                     complementary=bool(complementary))


def example_family_e2(p, i):
    """
    R/m^i for R = k[[x,y,z]]/(x^2, y^2): (x^2, y^2, z^i, x z^(i-1), y z^(i-1), x y z^(i-2)).

    :raises InputError: If i < 3
    """
    if isinstance(i, bool) or not isinstance(i, int) or i < 3:
        raise InputError(f"the family starts at i = 3, got {i!r}")
    ideal = ('x^2', 'y^2', f'z^{i}', f'x*z^{i - 1}', f'y*z^{i - 1}', f'x*y*z^{i - 2}')
    return PresentedRing(PrimeField(p), ('x', 'y', 'z'), ideal, i + 2, f'exa-2.4-i{i}')


BUILTIN_RINGS = {
    'exa-4.3': (('x', 'y', 'z'),
                ('x*z + y*z', 'x*y + y*z', 'x^2 - y*z', 'y*z^2 + z^3', 'y^3 - z^3'), 5),
    'exa-5.4': (('w', 'x', 'y', 'z'),
                ('w^2 + x*y', 'w*x + x*z', 'w*z', 'y^2 + x*z', 'y*z', 'z^2', 'x^3 + x^2*z'), 5),
    'ci-e2': (('x', 'y'), ('x^2', 'y^2'), 4),
    'ci-e3': (('x', 'y', 'z'), ('x^2', 'y^2', 'z^2'), 5),
    'ci-e4': (('w', 'x', 'y', 'z'), ('w^2', 'x^2', 'y^2', 'z^2'), 6),
    'socle2-e3': (('x', 'y', 'z'), ('x^2', 'y^2', 'z^2', 'x*y'), 4),
    'square-max-e3': (('x', 'y', 'z'), ('x^2', 'x*y', 'y^2', 'x*z', 'y*z', 'z^2'), 3),
}

BUILTIN_SKEW_MATRICES = {
    'exa-4.3': (('x', 'y', 'z'), (
        ('0', 'x + y', '0', '0', 'y'),
        ('-x - y', '0', '0', 'y^2 + z^2', 'y*z'),
        ('0', '0', '0', 'x + z', 'z'),
        ('0', '-y^2 - z^2', '-x - z', '0', 'x'),
        ('-y', '-y*z', '-z', '-x', '0'),
    )),
}

_FAMILY_NAME = re.compile(r'^exa-2\.4-i(\d+)$')


def builtin_names():
    return sorted(BUILTIN_RINGS) + ['exa-2.4-i<N>']


def builtin(name, p=DEFAULT_CHARACTERISTIC):
    """
    A built-in example ring.

    :param name: One of the keys of BUILTIN_RINGS, or exa-2.4-i<N> for N >= 3
    :type name: str
    :param p: Characteristic
    :type p: int
    :rtype: PresentedRing
    :raises InputError: On an unknown name
    """
    match = _FAMILY_NAME.match(name)
    if match:
        return example_family_e2(p, int(match.group(1)))
    if name not in BUILTIN_RINGS:
        raise InputError(f"unknown builtin {name!r}; known: {', '.join(builtin_names())}")
    names, ideal, cap = BUILTIN_RINGS[name]
    return PresentedRing(PrimeField(p), names, ideal, cap, name)


def builtin_skew_matrix(name, p=DEFAULT_CHARACTERISTIC):
    """
    :raises InputError: On an unknown name
    """
    if name not in BUILTIN_SKEW_MATRICES:
        raise InputError(f"unknown builtin matrix {name!r}; known: {', '.join(sorted(BUILTIN_SKEW_MATRICES))}")
    names, rows = BUILTIN_SKEW_MATRICES[name]
    return SkewMatrix.from_strings(PrimeField(p), list(names), rows)
