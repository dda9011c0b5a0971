"""
Dense linear algebra over F_p on numpy int64 arrays.

Vectors are rows. A linear map is stored so that ``v @ M`` is the image of the
row vector ``v``. Reduced row echelon forms pivot on the leftmost column, so
the column order is the pivot priority.
"""
import numpy as np

from src.utils.config import MATRIX_ENTRY_LIMIT
from src.utils.errors import ResourceGuardError
from src.utils.logger import get_logger

logger = get_logger(__name__)

_FLOAT_EXACT = 2 ** 53
_INT64_SAFE = 2 ** 63


def guard_size(rows, cols, what='matrix'):
    """
    Refuse eliminations larger than the configured entry limit.

    :raises ResourceGuardError: If rows * cols exceeds MATRIX_ENTRY_LIMIT
    """
    if rows * cols > MATRIX_ENTRY_LIMIT:
        raise ResourceGuardError(
            f"{what} of shape {rows}x{cols} exceeds the limit of {MATRIX_ENTRY_LIMIT} entries; "
            f"lower the depth or raise ARTIN_MATRIX_LIMIT"
        )


def as_matrix(rows, ncols, p):
    """Stack row vectors into an int64 matrix reduced mod p; empty input gives shape (0, ncols)."""
    if isinstance(rows, np.ndarray):
        matrix = rows.reshape(-1, ncols) if rows.size else np.zeros((0, ncols), dtype=np.int64)
        return np.asarray(matrix, dtype=np.int64) % p
    rows = list(rows)
    if not rows:
        return np.zeros((0, ncols), dtype=np.int64)
    return np.asarray(np.stack([np.asarray(r, dtype=np.int64) for r in rows]), dtype=np.int64) % p


def matmul_mod(a, b, p):
    """
    Exact product of two matrices mod p.

    Uses float64 BLAS when every partial sum stays below 2**53, int64 when it
    stays below 2**63, and Python integers otherwise.
    """
    a = np.asarray(a, dtype=np.int64)
    b = np.asarray(b, dtype=np.int64)
    inner = a.shape[-1] if a.ndim else 1
    bound = max(inner, 1) * (p - 1) ** 2
    if bound < _FLOAT_EXACT:
        product = np.rint(a.astype(np.float64) @ b.astype(np.float64)).astype(np.int64)
        return product % p
    if bound < _INT64_SAFE:
        return (a @ b) % p
    product = a.astype(object) @ b.astype(object)
    return np.asarray(product % p, dtype=np.int64)


def rref(matrix, p, column_order=None):
    """
    Reduced row echelon form over F_p.

    :param matrix: Any 2-d integer array
    :type matrix: numpy.ndarray
    :param p: Prime modulus
    :type p: int
    :param column_order: Optional pivot priority, a permutation of the column indices
    :type column_order: list[int] or None
    :return: Nonzero rows of the RREF and their pivot columns (original indices)
    :rtype: tuple[numpy.ndarray, list[int]]
    """
    a = np.array(matrix, dtype=np.int64) % p
    if a.ndim != 2:
        raise ValueError("rref expects a 2-d array")
    if column_order is not None:
        order = np.asarray(column_order)
        reduced, pivots = rref(a[:, order], p)
        restored = np.zeros_like(reduced)
        restored[:, order] = reduced
        return restored, [int(order[c]) for c in pivots]

    nrows, ncols = a.shape
    pivots = []
    r = 0
    for c in range(ncols):
        if r == nrows:
            break
        nonzero = np.flatnonzero(a[r:, c])
        if nonzero.size == 0:
            continue
        k = r + int(nonzero[0])
        if k != r:
            a[[r, k]] = a[[k, r]]
        inv = pow(int(a[r, c]), p - 2, p)
        a[r, c:] = (a[r, c:] * inv) % p
        column = a[:, c].copy()
        column[r] = 0
        others = np.flatnonzero(column)
        if others.size:
            a[others, c:] = (a[others, c:] - np.outer(column[others], a[r, c:])) % p
        pivots.append(c)
        r += 1
    return a[:r], pivots


def rank(matrix, p):
    return len(rref(matrix, p)[1])


def nullspace(matrix, p):
    """
    Basis of the right null space {x : matrix @ x = 0}, one vector per row.

    :return: Array of shape (n - rank, n)
    :rtype: numpy.ndarray
    """
    matrix = np.asarray(matrix, dtype=np.int64)
    ncols = matrix.shape[1]
    reduced, pivots = rref(matrix, p)
    pivot_set = set(pivots)
    free = [j for j in range(ncols) if j not in pivot_set]
    basis = np.zeros((len(free), ncols), dtype=np.int64)
    if not free:
        return basis
    basis[np.arange(len(free)), free] = 1
    if pivots:
        basis[:, pivots] = (-reduced[:, free].T) % p
    return basis


def left_nullspace(matrix, p):
    """Basis of {v : v @ matrix = 0}, one vector per row."""
    return nullspace(np.asarray(matrix, dtype=np.int64).T, p)


def solve_rows(rows, vectors, p):
    """
    Coefficients C with C @ rows = vectors for linearly independent rows.

    :raises ValueError: If some vector is outside the row span
    """
    rows = np.asarray(rows, dtype=np.int64)
    vectors = np.asarray(vectors, dtype=np.int64).reshape(-1, rows.shape[1])
    nbasis = rows.shape[0]
    if vectors.shape[0] == 0:
        return np.zeros((0, nbasis), dtype=np.int64)
    if nbasis == 0:
        if np.any(vectors % p):
            raise ValueError("vector outside the span")
        return np.zeros((vectors.shape[0], 0), dtype=np.int64)
    augmented = np.concatenate([rows.T, vectors.T], axis=1)
    reduced, pivots = rref(augmented, p, column_order=None)
    if any(c >= nbasis for c in pivots):
        raise ValueError("vector outside the span")
    if len(pivots) != nbasis:
        raise ValueError("rows are linearly dependent")
    return reduced[:, nbasis:].T % p


class Subspace:
    """
    A subspace of F_p^n held in reduced row echelon form.

    Two subspaces are equal iff their canonical matrices are equal.

    :param p: Prime modulus
    :type p: int
    :param ambient: Ambient dimension n
    :type ambient: int
    :param vectors: Spanning vectors (any number, any redundancy)
    :type vectors: numpy.ndarray or list or None
    """
    __slots__ = ('p', 'ambient', 'rows', 'pivots')

    def __init__(self, p, ambient, vectors=None):
        self.p = p
        self.ambient = ambient
        matrix = as_matrix(vectors if vectors is not None else [], ambient, p)
        if matrix.shape[0]:
            guard_size(matrix.shape[0], ambient, 'subspace basis')
            rows, pivots = rref(matrix, p)
        else:
            rows, pivots = matrix, []
        self.rows = rows
        self.pivots = list(pivots)

    @classmethod
    def _from_echelon(cls, p, ambient, rows, pivots):
        space = cls.__new__(cls)
        order = np.argsort(pivots) if len(pivots) else np.zeros(0, dtype=np.int64)
        space.p = p
        space.ambient = ambient
        space.rows = np.asarray(rows, dtype=np.int64).reshape(-1, ambient)[order] % p
        space.pivots = [int(pivots[i]) for i in order]
        return space

    @classmethod
    def zero(cls, p, ambient):
        return cls(p, ambient)

    @classmethod
    def full(cls, p, ambient):
        return cls._from_echelon(p, ambient, np.eye(ambient, dtype=np.int64), list(range(ambient)))

    @property
    def dim(self):
        return len(self.pivots)

    def __len__(self):
        return self.dim

    def is_zero(self):
        return self.dim == 0

    def __eq__(self, other):
        return (isinstance(other, Subspace) and self.p == other.p and self.ambient == other.ambient
                and self.pivots == other.pivots and np.array_equal(self.rows, other.rows))

    def __hash__(self):
        return hash((self.p, self.ambient, tuple(self.pivots), self.rows.tobytes()))

    def __repr__(self):
        return f"Subspace(dim={self.dim}, ambient={self.ambient}, p={self.p})"

    def basis(self):
        return self.rows.copy()

    def reduce(self, vectors):
        """
        Normal form modulo the subspace: zero in every pivot column.

        Accepts one vector or a matrix of row vectors.
        """
        vectors = np.asarray(vectors, dtype=np.int64) % self.p
        if not self.pivots:
            return vectors
        single = vectors.ndim == 1
        block = vectors.reshape(-1, self.ambient)
        reduced = (block - matmul_mod(block[:, self.pivots], self.rows, self.p)) % self.p
        return reduced[0] if single else reduced

    def contains(self, vector):
        return not np.any(self.reduce(vector))

    def contains_subspace(self, other):
        return other.dim == 0 or not np.any(self.reduce(other.rows))

    def __add__(self, other):
        return self.extended(other.rows)

    def extended(self, vectors):
        """
        The span of this subspace and further vectors.

        Only the part of ``vectors`` outside the subspace is eliminated, which keeps
        repeated enlargements cheap.
        """
        block = as_matrix(vectors, self.ambient, self.p)
        if block.shape[0] == 0:
            return self
        guard_size(block.shape[0], self.ambient, 'subspace extension')
        residual = self.reduce(block)
        new_rows, new_pivots = rref(residual, self.p)
        if not new_pivots:
            return self
        old_rows = self.rows
        if self.pivots:
            old_rows = (old_rows - matmul_mod(old_rows[:, new_pivots], new_rows, self.p)) % self.p
        rows = np.concatenate([old_rows, new_rows], axis=0)
        return Subspace._from_echelon(self.p, self.ambient, rows, self.pivots + list(new_pivots))

    def coordinates(self, vectors):
        """Coefficients of vectors in the canonical basis; vectors must lie in the subspace."""
        vectors = np.asarray(vectors, dtype=np.int64).reshape(-1, self.ambient) % self.p
        if self.contains_subspace(Subspace(self.p, self.ambient, vectors)):
            return vectors[:, self.pivots]
        raise ValueError("vector outside the subspace")

    def complement_from(self, candidates):
        """
        Greedy complement: reduced candidates that extend this subspace, in candidate order.

        :param candidates: Row vectors scanned in order
        :type candidates: numpy.ndarray
        :return: Chosen vectors (normal forms modulo this subspace) and their candidate indices
        :rtype: tuple[numpy.ndarray, list[int]]
        """
        block = as_matrix(candidates, self.ambient, self.p)
        residual = self.reduce(block) if block.shape[0] else block
        chosen, indices = [], []
        echelon = Subspace.zero(self.p, self.ambient)
        for index, vector in enumerate(residual):
            if not np.any(vector) or echelon.contains(vector):
                continue
            chosen.append(vector)
            indices.append(index)
            echelon = echelon.extended([vector])
        return as_matrix(chosen, self.ambient, self.p), indices


def span_of_blocks(p, ambient, blocks):
    """
    Span of several blocks of row vectors, eliminated block by block.

    :return: Subspace spanned by all rows of all blocks
    :rtype: Subspace
    """
    space = Subspace.zero(p, ambient)
    for block in blocks:
        space = space.extended(block)
    return space
