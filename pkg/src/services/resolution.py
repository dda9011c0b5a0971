"""
Minimal free resolutions over a finite local algebra.

A map R^b -> R^a is a matrix of algebra elements; over F_p it becomes the
(b*n) x (a*n) scalar matrix whose block (c, r) is multiplication by entry (r, c).
"""
from dataclasses import dataclass, field as dataclass_field

import numpy as np

from src.services.linalg import Subspace, guard_size, matmul_mod, nullspace, rref, span_of_blocks
from src.utils.config import MAX_DEPTH
from src.utils.errors import InputError, InternalConsistencyError, OperandMismatchError, ResourceGuardError
from src.utils.logger import get_logger
from src.utils.validators import validate_depth

logger = get_logger(__name__)


class ModulePresentation:
    """
    A matrix of algebra elements, read as a map R^cols -> R^rows.

    :param algebra: The ring R
    :type algebra: FiniteLocalAlgebra
    :param entries: Array of shape (rows, cols, dim R)
    :type entries: numpy.ndarray
    """

    def __init__(self, algebra, entries):
        self.algebra = algebra
        entries = np.asarray(entries, dtype=np.int64) % algebra.p
        if entries.ndim != 3 or entries.shape[2] != algebra.dim:
            raise OperandMismatchError(f"entries of shape {entries.shape} over an algebra of dim {algebra.dim}")
        self.entries = entries

    @classmethod
    def from_elements(cls, algebra, rows):
        """Build from a nested list of elements (vectors, polynomials or strings)."""
        values = [[algebra.element(value) for value in row] for row in rows]
        nrows = len(values)
        ncols = len(values[0]) if values else 0
        entries = np.zeros((nrows, ncols, algebra.dim), dtype=np.int64)
        for r, row in enumerate(values):
            if len(row) != ncols:
                raise InputError("ragged matrix of algebra elements")
            for c, value in enumerate(row):
                entries[r, c] = value
        return cls(algebra, entries)

    @property
    def rows(self):
        return self.entries.shape[0]

    @property
    def cols(self):
        return self.entries.shape[1]

    def is_minimal(self):
        """Every entry lies in the maximal ideal."""
        return not np.any(self.entries[:, :, 0])

    def scalar_matrix(self):
        n, a, b = self.algebra.dim, self.rows, self.cols
        guard_size(b * n, a * n, 'presentation matrix')
        if a == 0 or b == 0:
            return np.zeros((b * n, a * n), dtype=np.int64)
        blocks = matmul_mod(self.entries.reshape(a * b, n), self.algebra.mult.reshape(n, n * n), self.algebra.p)
        return blocks.reshape(a, b, n, n).transpose(1, 2, 0, 3).reshape(b * n, a * n)


def syzygy(algebra, presentation):
    """
    First syzygy of the cokernel: minimal generators of the kernel.

    :param algebra: The ring R
    :type algebra: FiniteLocalAlgebra
    :param presentation: Map R^b -> R^a with entries in m
    :type presentation: ModulePresentation
    :return: Map R^mu -> R^b whose columns minimally generate the kernel
    :rtype: ModulePresentation
    :raises InternalConsistencyError: If a produced entry lies outside m
    """
    n, p = algebra.dim, algebra.p
    b = presentation.cols
    scalar = presentation.scalar_matrix()
    logger.info("syzygy step: scalar matrix %s", scalar.shape)
    ambient = b * n
    kernel = Subspace(p, ambient, nullspace(scalar.T, p)) if ambient else Subspace.zero(p, 0)
    if kernel.dim == 0:
        return ModulePresentation(algebra, np.zeros((b, 0, n), dtype=np.int64))
    blocks = [matmul_mod(kernel.rows.reshape(-1, n), L, p).reshape(-1, ambient)
              for L in algebra.generator_matrices]
    max_kernel = span_of_blocks(p, ambient, blocks)
    residual = max_kernel.reduce(kernel.rows)
    generators, _ = rref(residual, p)
    entries = generators.reshape(-1, b, n).transpose(1, 0, 2)
    result = ModulePresentation(algebra, entries)
    if not result.is_minimal():
        raise InternalConsistencyError("syzygy produced an entry outside the maximal ideal")
    logger.info("syzygy step: kernel dim %d, m*kernel dim %d, %d generators",
                kernel.dim, max_kernel.dim, result.cols)
    return result


def residue_field_presentation(algebra):
    """The row [x_1 ... x_e], presenting m as the kernel of R -> k."""
    e = algebra.embedding_dimension
    entries = np.zeros((1, e, algebra.dim), dtype=np.int64)
    for c, generator in enumerate(algebra.generators):
        entries[0, c] = generator
    return ModulePresentation(algebra, entries)


@dataclass
class BettiTable:
    """Betti numbers b_0..b_D of a module; ``maps[i]`` is the differential F_(i+1) -> F_i."""
    module: str
    depth: int
    values: list
    maps: list = dataclass_field(default_factory=list, repr=False)

    def to_dict(self):
        return {'module': self.module, 'depth': self.depth, 'values': list(self.values)}


def check_depth(depth, allow_deep=False):
    """
    :raises InputError: For a negative or non-integer depth
    :raises ResourceGuardError: For a depth beyond MAX_DEPTH without override
    """
    if validate_depth(depth, allow_deep):
        return depth
    if validate_depth(depth, True):
        raise ResourceGuardError(f"depth {depth} exceeds {MAX_DEPTH}; pass the deep override to proceed")
    raise InputError(f"depth must be a non-negative integer, got {depth!r}")


def betti_of_residue_field(algebra, depth, allow_deep=False):
    """
    Betti numbers of k over R up to the given depth.

    :param algebra: The ring R
    :type algebra: FiniteLocalAlgebra
    :param depth: Cutoff D
    :type depth: int
    :param allow_deep: Permit D > MAX_DEPTH
    :type allow_deep: bool
    :return: Table with b_0 = 1, b_1 = e and the resolution maps
    :rtype: BettiTable
    :raises ResourceGuardError: On a deep request without override or an oversized elimination
    """
    check_depth(depth, allow_deep)
    cache = algebra.__dict__.setdefault('_betti', {})
    cached = cache.get('k')
    if cached is not None and cached.depth >= depth:
        return BettiTable('k', depth, cached.values[:depth + 1], cached.maps[:depth])
    values = [1]
    maps = []
    if depth >= 1:
        current = residue_field_presentation(algebra)
        values.append(current.cols)
        maps.append(current)
        for i in range(2, depth + 1):
            if current.cols == 0:
                values.append(0)
                continue
            current = syzygy(algebra, current)
            values.append(current.cols)
            maps.append(current)
            logger.info("betti %s: b_%d = %d", algebra.label or 'algebra', i, current.cols)
    table = BettiTable('k', depth, values, maps)
    cache['k'] = table
    return table


def poincare_truncation(algebra, depth, allow_deep=False):
    """
    P^R_k(z) truncated at z^depth.

    :rtype: IntSeries
    """
    from src.services.series import IntSeries
    return IntSeries(betti_of_residue_field(algebra, depth, allow_deep).values)


def verify_exactness(table):
    """
    Check that consecutive maps of a resolution compose to zero.

    :raises InternalConsistencyError: On a nonzero composite
    """
    for i in range(1, len(table.maps)):
        outer, inner = table.maps[i - 1], table.maps[i]
        if inner.cols == 0 or outer.cols == 0:
            continue
        p = outer.algebra.p
        if np.any(matmul_mod(inner.scalar_matrix(), outer.scalar_matrix(), p)):
            raise InternalConsistencyError(f"resolution maps {i} and {i + 1} do not compose to zero")
    return True
