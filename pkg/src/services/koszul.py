"""
Koszul complex of a finite local algebra and the algebra structure on its homology.

K_j = R (x) Lambda^j k^e has the basis (S, b) for S a j-subset of the generators
(in ``itertools.combinations`` order) and b an algebra basis index; the
coordinate of (S, b) is ``subset_index * dim R + b``.
"""
from dataclasses import dataclass, field as dataclass_field
from itertools import combinations
from math import comb

import numpy as np

from src.services.algebra import hilbert, is_gorenstein, quotient_power
from src.services.linalg import Subspace, matmul_mod, nullspace, rank, solve_rows
from src.utils.errors import InputError, InternalConsistencyError
from src.utils.logger import get_logger

logger = get_logger(__name__)

CI_CROSS_CHECK_EMBEDDING = 3


def wedge_sign(first, second):
    """Sign of e_S ^ e_T = +-e_(S u T): (-1) to the number of pairs s in S, t in T with s > t."""
    inversions = sum(1 for s in first for t in second if s > t)
    return -1 if inversions % 2 else 1


class KoszulComplex:
    """
    The Koszul complex on the lifted generators of m.

    ``differentials[j]`` has shape (rank K_j, rank K_(j-1)) and maps row vectors.

    :param algebra: The ring R
    :type algebra: FiniteLocalAlgebra
    """

    def __init__(self, algebra):
        self.algebra = algebra
        self.e = algebra.embedding_dimension
        self.subsets = [list(combinations(range(self.e), j)) for j in range(self.e + 1)]
        self.positions = [{subset: k for k, subset in enumerate(level)} for level in self.subsets]
        self.differentials = {j: self._differential(j) for j in range(1, self.e + 1)}

    @property
    def p(self):
        return self.algebra.p

    def rank(self, j):
        if j < 0 or j > self.e:
            return 0
        return self.algebra.dim * len(self.subsets[j])

    def _differential(self, j):
        n = self.algebra.dim
        source, target = self.subsets[j], self.positions[j - 1]
        matrix = np.zeros((n * len(source), n * len(target)), dtype=np.int64)
        for row, subset in enumerate(source):
            for t, generator in enumerate(subset):
                column = target[subset[:t] + subset[t + 1:]]
                block = self.algebra.generator_matrices[generator]
                sign = -1 if t % 2 else 1
                matrix[row * n:(row + 1) * n, column * n:(column + 1) * n] += sign * block
        return matrix % self.p

    def check_differentials(self):
        """
        Exact check that consecutive differentials compose to zero.

        :raises InternalConsistencyError: If some composite is nonzero
        """
        for j in range(2, self.e + 1):
            if np.any(matmul_mod(self.differentials[j], self.differentials[j - 1], self.p)):
                raise InternalConsistencyError(f"Koszul differentials do not compose to zero at degree {j}")
        return True

    def vector(self, j, terms):
        """
        Build an element of K_j from a mapping subset -> algebra element.

        :param terms: Keys are increasing tuples of generator indices
        :type terms: dict
        """
        n = self.algebra.dim
        result = np.zeros(self.rank(j), dtype=np.int64)
        for subset, value in terms.items():
            k = self.positions[j][tuple(subset)]
            result[k * n:(k + 1) * n] = (result[k * n:(k + 1) * n] + self.algebra.element(value)) % self.p
        return result

    def blocks(self, j, vector):
        """Nonzero components of an element of K_j as {subset: algebra vector}."""
        n = self.algebra.dim
        parts = {}
        for k, subset in enumerate(self.subsets[j]):
            part = np.asarray(vector[k * n:(k + 1) * n]) % self.p
            if np.any(part):
                parts[subset] = part
        return parts

    def boundary(self, j, vector):
        if j == 0:
            return np.zeros(0, dtype=np.int64)
        return matmul_mod(np.asarray(vector)[None, :], self.differentials[j], self.p)[0]

    def is_cycle(self, j, vector):
        return j == 0 or not np.any(self.boundary(j, vector))

    def wedge(self, i, u, j, v):
        """Product of u in K_i and v in K_j inside K_(i+j)."""
        result = np.zeros(self.rank(i + j), dtype=np.int64)
        if i + j > self.e:
            return result
        n = self.algebra.dim
        right = self.blocks(j, v)
        for first, a in self.blocks(i, u).items():
            for second, b in right.items():
                if set(first) & set(second):
                    continue
                union = tuple(sorted(first + second))
                k = self.positions[i + j][union]
                product = self.algebra.multiply(a, b)
                result[k * n:(k + 1) * n] += wedge_sign(first, second) * product
        return result % self.p

    def format_vector(self, j, vector):
        names = self.algebra.names
        parts = []
        for subset, value in self.blocks(j, vector).items():
            basis = '^'.join(f"e_{names[g]}" for g in subset) or '1'
            parts.append(f"({self.algebra.format_element(value)})*{basis}")
        return ' + '.join(parts) if parts else '0'


def koszul_complex(algebra):
    """
    Koszul complex of an algebra on the lifts of a basis of m/m^2.

    :param algebra: The ring R
    :type algebra: FiniteLocalAlgebra
    :return: The complex, memoised on the algebra
    :rtype: KoszulComplex
    """
    complex_ = algebra.__dict__.get('_koszul')
    if complex_ is None:
        complex_ = KoszulComplex(algebra)
        algebra.__dict__['_koszul'] = complex_
        logger.info("Koszul complex of %s: ranks %s", algebra.label or 'algebra',
                    [complex_.rank(j) for j in range(complex_.e + 1)])
    return complex_


@dataclass
class ProductWitness:
    """A pair of homology classes with nonzero product."""
    degrees: tuple
    classes: tuple
    product: list
    representatives: tuple = ()

    def to_dict(self):
        return {
            'degrees': list(self.degrees),
            'classes': list(self.classes),
            'product': [int(c) for c in self.product],
            'representatives': list(self.representatives),
        }


class KoszulHomology:
    """
    Homology H(K) with chosen cycle representatives and product tables.

    Representatives in degree j complement the boundaries B_j inside the cycles
    Z_j, chosen greedily from the reduced echelon basis of Z_j.
    """

    def __init__(self, complex_, representatives=None):
        self.complex = complex_
        p = complex_.p
        e = complex_.e
        self.cycles = []
        self.boundaries = []
        for j in range(e + 1):
            ambient = complex_.rank(j)
            if j == 0:
                cycles = Subspace.full(p, ambient)
            else:
                cycles = Subspace(p, ambient, nullspace(complex_.differentials[j].T, p))
            if j < e:
                bounds = Subspace(p, ambient, complex_.differentials[j + 1])
            else:
                bounds = Subspace.zero(p, ambient)
            if not cycles.contains_subspace(bounds):
                raise InternalConsistencyError(f"boundaries are not cycles in degree {j}")
            self.cycles.append(cycles)
            self.boundaries.append(bounds)
        if representatives is None:
            representatives = [self.boundaries[j].complement_from(self.cycles[j].rows)[0] for j in range(e + 1)]
        self.representatives = representatives
        self._normal = [self.boundaries[j].reduce(reps) if reps.shape[0] else reps
                        for j, reps in enumerate(representatives)]
        self.dims = [int(reps.shape[0]) for reps in representatives]
        for j in range(e + 1):
            if self.dims[j] != self.cycles[j].dim - self.boundaries[j].dim:
                raise InternalConsistencyError(f"homology dimension mismatch in degree {j}")
        self._products = {}

    @property
    def e(self):
        return self.complex.e

    def euler_characteristic(self):
        return sum((-1) ** j * h for j, h in enumerate(self.dims))

    def class_of(self, j, vectors):
        """
        Coordinates of cycles in the chosen basis of H_j.

        :param vectors: One cycle or a matrix of cycles (rows)
        :return: Coordinate rows of length h_j
        :raises InternalConsistencyError: If a vector is not a cycle
        """
        vectors = np.asarray(vectors, dtype=np.int64).reshape(-1, self.complex.rank(j)) % self.complex.p
        if j > 0 and np.any(matmul_mod(vectors, self.complex.differentials[j], self.complex.p)):
            raise InternalConsistencyError(f"class requested of a non-cycle in degree {j}")
        reduced = self.boundaries[j].reduce(vectors)
        if self.dims[j] == 0:
            if np.any(reduced):
                raise InternalConsistencyError(f"cycle outside the boundaries in a zero homology degree {j}")
            return np.zeros((vectors.shape[0], 0), dtype=np.int64)
        try:
            return solve_rows(self._normal[j], reduced, self.complex.p)
        except ValueError as exc:
            raise InternalConsistencyError(f"cycle not expressible in the homology basis: {exc}") from exc

    def product_table(self, i, j):
        """
        Structure constants of H_i x H_j -> H_(i+j), shape (h_i, h_j, h_(i+j)).
        """
        key = (i, j)
        if key not in self._products:
            target = i + j
            hi, hj = self.dims[i], self.dims[j]
            ht = self.dims[target] if target <= self.e else 0
            table = np.zeros((hi, hj, ht), dtype=np.int64)
            if ht and hi and hj:
                products = [self.complex.wedge(i, a, j, b)
                            for a in self.representatives[i] for b in self.representatives[j]]
                table = self.class_of(target, np.stack(products)).reshape(hi, hj, ht)
            self._products[key] = table
        return self._products[key]

    def perturbed(self, seed):
        """
        The same homology with every representative shifted by a random boundary.
        """
        rng = np.random.default_rng(seed)
        p = self.complex.p
        shifted = []
        for j, reps in enumerate(self.representatives):
            bounds = self.boundaries[j]
            if reps.shape[0] and bounds.dim:
                coefficients = rng.integers(0, p, size=(reps.shape[0], bounds.dim))
                reps = (reps + matmul_mod(coefficients, bounds.rows, p)) % p
            shifted.append(reps)
        return KoszulHomology(self.complex, shifted)

    def witness(self, i, j, a, b):
        table = self.product_table(i, j)
        return ProductWitness(
            degrees=(i, j),
            classes=(a, b),
            product=[int(c) for c in table[a, b]],
            representatives=(self.complex.format_vector(i, self.representatives[i][a]),
                             self.complex.format_vector(j, self.representatives[j][b])),
        )

    def first_nonzero_product(self):
        for i in range(1, self.e + 1):
            for j in range(i, self.e + 1 - i):
                table = self.product_table(i, j)
                nonzero = np.argwhere(np.any(table, axis=2))
                if nonzero.size:
                    a, b = (int(x) for x in nonzero[0])
                    return self.witness(i, j, a, b)
        return None


def homology(complex_):
    """
    Homology of a Koszul complex, memoised on the complex.

    :rtype: KoszulHomology
    """
    result = complex_.__dict__.get('_homology')
    if result is None:
        result = KoszulHomology(complex_)
        complex_.__dict__['_homology'] = result
        logger.info("Koszul homology of %s: %s", complex_.algebra.label or 'algebra', result.dims)
    return result


def homology_product(H, i, j):
    return H.product_table(i, j)


def products_trivial(H):
    """True iff every product of positive-degree classes vanishes."""
    return H.first_nonzero_product() is None


def class_T_witness(H):
    """
    A pair of H_1 classes with nonzero product when A_1 A_1 != 0 = A_1 A_2.

    :return: The witness, or None when the signature does not hold
    :rtype: ProductWitness or None
    """
    if H.e < 2:
        return None
    squares = H.product_table(1, 1)
    if not np.any(squares):
        return None
    if H.e >= 3 and np.any(H.product_table(1, 2)):
        return None
    a, b = (int(x) for x in np.argwhere(np.any(squares, axis=2))[0])
    return H.witness(1, 1, a, b)


def _exterior_test(H):
    h1 = H.dims[1]
    for k in (2, 3):
        if k > H.e:
            break
        if H.dims[k] != comb(h1, k):
            return False
        classes = []
        for subset in combinations(range(h1), k):
            vector = H.representatives[1][subset[0]]
            degree = 1
            for index in subset[1:]:
                vector = H.complex.wedge(degree, vector, 1, H.representatives[1][index])
                degree += 1
            classes.append(vector)
        if classes and rank(H.class_of(k, np.stack(classes)), H.complex.p) != H.dims[k]:
            return False
    return True


def is_complete_intersection(algebra):
    """
    mu(I) = h_1 equals the embedding dimension.

    At embedding dimension 3 the answer is cross-checked against the exterior
    algebra structure of the homology.

    :raises InternalConsistencyError: If the two tests disagree
    """
    H = homology(koszul_complex(algebra))
    e = H.e
    by_mu = (H.dims[1] if e >= 1 else 0) == e
    if e == CI_CROSS_CHECK_EMBEDDING:
        by_products = _exterior_test(H)
        if by_products != by_mu:
            raise InternalConsistencyError(
                f"complete intersection tests disagree: mu test {by_mu}, exterior algebra test {by_products}"
            )
    return by_mu


@dataclass
class ClassVerdict:
    """
    Classification of the Koszul homology algebra.

    ``kind`` is one of CompleteIntersection, GolodCertified, ClassT, Other.
    """
    kind: str
    dims: list
    witness: ProductWitness = None
    qualifier: str = ''
    notes: list = dataclass_field(default_factory=list)

    def describe(self):
        text = {
            'CompleteIntersection': 'complete intersection',
            'GolodCertified': 'GolodCertified (codepth <= 3 product criterion)',
            'ClassT': 'class T',
            'Other': 'other',
        }[self.kind]
        return f"{text} ({self.qualifier})" if self.qualifier else text

    def to_dict(self):
        return {
            'kind': self.kind,
            'dims': list(self.dims),
            'witness': self.witness.to_dict() if self.witness else None,
            'qualifier': self.qualifier,
            'notes': list(self.notes),
        }


def classify(algebra):
    """
    Place R in {CompleteIntersection, GolodCertified, ClassT, Other}.

    Golod certification by trivial products is only issued up to codepth 3.
    """
    H = homology(koszul_complex(algebra))
    e = H.e
    if is_complete_intersection(algebra):
        return ClassVerdict('CompleteIntersection', H.dims)
    witness = H.first_nonzero_product()
    if witness is None:
        if e <= CI_CROSS_CHECK_EMBEDDING:
            return ClassVerdict('GolodCertified', H.dims)
        return ClassVerdict('Other', H.dims, notes=['products trivial; Golod not certified beyond codepth 3'])
    t_witness = class_T_witness(H)
    if t_witness is not None and e == CI_CROSS_CHECK_EMBEDDING:
        return ClassVerdict('ClassT', H.dims, witness=t_witness, qualifier='codepth-3 signature')
    return ClassVerdict('Other', H.dims, witness=witness)


@dataclass
class GolodVerdict:
    """
    ``kind`` is NotGolod, GolodCertified or ConsistentWithGolodUpTo.

    A NotGolod verdict carries either a product witness or the index of the
    first Betti number below the Golod bound.
    """
    kind: str
    depth: int = None
    certificate: str = ''
    witness: ProductWitness = None
    index: int = None
    betti: list = None
    golod: list = None

    def describe(self):
        if self.kind == 'NotGolod':
            if self.certificate == 'product':
                return 'NotGolod (nonzero Koszul homology product)'
            return f'NotGolod (Betti number {self.index} below the Golod bound)'
        if self.kind == 'GolodCertified':
            return 'GolodCertified (codepth <= 3 product criterion)'
        return f'ConsistentWithGolodUpTo({self.depth})'

    def to_dict(self):
        return {
            'kind': self.kind,
            'depth': self.depth,
            'certificate': self.certificate,
            'witness': self.witness.to_dict() if self.witness else None,
            'index': self.index,
            'betti': self.betti,
            'golod': self.golod,
        }


def golod_verdict(algebra, depth, allow_deep=False):
    """
    Decide or bound Golodness.

    :param algebra: Artinian ring
    :param depth: Series cutoff D used when a Betti comparison is needed
    :return: The verdict with its certificate
    :rtype: GolodVerdict
    :raises InternalConsistencyError: If some Betti number exceeds the Golod bound
    """
    from src.services.resolution import betti_of_residue_field
    from src.services.series import golod_series

    H = homology(koszul_complex(algebra))
    witness = H.first_nonzero_product()
    if witness is not None:
        return GolodVerdict('NotGolod', depth=depth, certificate='product', witness=witness)
    if H.e <= CI_CROSS_CHECK_EMBEDDING:
        return GolodVerdict('GolodCertified', depth=depth, certificate='product')
    betti = betti_of_residue_field(algebra, depth, allow_deep=allow_deep).values
    bound = golod_series(H.e, 0, H.dims[1:], depth).coefficients
    for i, (b, g) in enumerate(zip(betti, bound)):
        if b > g:
            raise InternalConsistencyError(f"Betti number {i} = {b} exceeds the Golod bound {g}")
    for i, (b, g) in enumerate(zip(betti, bound)):
        if b < g:
            return GolodVerdict('NotGolod', depth=depth, certificate='betti', index=i,
                                betti=list(betti), golod=list(bound))
    return GolodVerdict('ConsistentWithGolodUpTo', depth=depth, certificate='betti',
                        betti=list(betti), golod=list(bound))


def tor_over_presentation(algebra):
    """
    P^Q_R(z) = sum h_j z^j as an integer polynomial.

    :rtype: sympy.Poly
    """
    from src.services.series import int_poly
    return int_poly(homology(koszul_complex(algebra)).dims)


@dataclass
class QuotientHomologyCheck:
    socle_degree: int
    dims: list
    computed: list
    predicted: list

    @property
    def agree(self):
        return self.computed == self.predicted

    def to_dict(self):
        return {
            'socle_degree': self.socle_degree,
            'dims': list(self.dims),
            'computed': list(self.computed),
            'predicted': list(self.predicted),
            'agree': self.agree,
        }


def predicted_quotient_dims(dims):
    """(1, h_1 + C(e,0), ..., h_(e-1) + C(e,e-2), e) for the homology dims of R."""
    e = len(dims) - 1
    return [1] + [dims[j] + comb(e, j - 1) for j in range(1, e)] + [e]


def quotient_homology_dims_check(algebra, s=None):
    """
    Compare the Koszul homology of R/m^s with the prediction from R.

    :raises InputError: If R is not Gorenstein, or e < 2, or s < 2
    """
    if not is_gorenstein(algebra):
        raise InputError("quotient homology prediction needs a Gorenstein ring")
    e = algebra.embedding_dimension
    s = algebra.socle_degree if s is None else s
    if e < 2 or s < 2:
        raise InputError(f"quotient homology prediction needs e >= 2 and s >= 2, got e={e}, s={s}")
    dims = homology(koszul_complex(algebra)).dims
    quotient = quotient_power(algebra, s)
    computed = homology(koszul_complex(quotient)).dims
    logger.info("quotient R/m^%d: hilbert %s, Koszul dims %s", s, hilbert(quotient), computed)
    return QuotientHomologyCheck(s, dims, computed, predicted_quotient_dims(dims))
