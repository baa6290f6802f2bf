"""
Triplet accumulation and CSR compilation.
"""
import numpy as np
from scipy import sparse

from ..errors import ConfigError


class TripletBuilder:
    """Collects (row, col, value) contributions; duplicates are summed on compile."""

    def __init__(self, dimension):
        self.dimension = int(dimension)
        self._rows = []
        self._cols = []
        self._vals = []

    def __len__(self):
        return sum(len(r) for r in self._rows)

    def add(self, row, col, value):
        self._rows.append(np.array([row], dtype=np.int64))
        self._cols.append(np.array([col], dtype=np.int64))
        self._vals.append(np.array([value], dtype=float))

    def add_triplets(self, rows, cols, values):
        rows = np.asarray(rows, dtype=np.int64).ravel()
        cols = np.asarray(cols, dtype=np.int64).ravel()
        values = np.asarray(values, dtype=float).ravel()
        if not (rows.size == cols.size == values.size):
            raise ConfigError("rows, cols and values must have equal length")
        self._rows.append(rows)
        self._cols.append(cols)
        self._vals.append(values)

    def add_block(self, rows, cols, block, scale=1.0):
        """
        Add scale * block at the index sets rows x cols.

        Args:
            rows, cols: global indices for the block rows and columns
            block: dense array or scipy sparse matrix of shape (len(rows), len(cols))
        """
        rows = np.asarray(rows, dtype=np.int64)
        cols = np.asarray(cols, dtype=np.int64)
        if sparse.issparse(block):
            coo = block.tocoo()
            if coo.shape != (rows.size, cols.size):
                raise ConfigError(f"block shape {coo.shape} does not match {(rows.size, cols.size)}")
            self.add_triplets(rows[coo.row], cols[coo.col], scale * coo.data)
            return
        block = np.atleast_2d(np.asarray(block, dtype=float))
        if block.shape != (rows.size, cols.size):
            raise ConfigError(f"block shape {block.shape} does not match {(rows.size, cols.size)}")
        r, c = np.nonzero(block)
        self.add_triplets(rows[r], cols[c], scale * block[r, c])

    def extend(self, other):
        """Append the contributions of another builder, keeping their order."""
        if other.dimension != self.dimension:
            raise ConfigError(f"cannot merge dimension {other.dimension} into {self.dimension}")
        self._rows.extend(other._rows)
        self._cols.extend(other._cols)
        self._vals.extend(other._vals)

    def triplets(self):
        if not self._rows:
            empty = np.empty(0, dtype=np.int64)
            return empty, empty, np.empty(0)
        return np.concatenate(self._rows), np.concatenate(self._cols), np.concatenate(self._vals)

    def compile(self):
        return compile_triplets(self)


def compile_triplets(builder):
    """
    CSR matrix with duplicates summed, sorted column indices and exact zeros dropped.

    Raises:
        ConfigError: an index lies outside the dimension
    """
    n = builder.dimension
    rows, cols, vals = builder.triplets()
    bad = (rows < 0) | (rows >= n) | (cols < 0) | (cols >= n)
    if np.any(bad):
        k = int(np.flatnonzero(bad)[0])
        raise ConfigError(f"triplet ({rows[k]}, {cols[k]}) outside dimension {n}", key="index")
    matrix = sparse.coo_matrix((vals, (rows, cols)), shape=(n, n)).tocsr()
    matrix.sum_duplicates()
    matrix.sort_indices()
    matrix.eliminate_zeros()
    return matrix


def matvec(A, x):
    x = np.asarray(x)
    if A.shape[1] != x.shape[0]:
        raise ConfigError(f"dimension mismatch: matrix {A.shape} times vector {x.shape}",
                          key="dimension")
    return A @ x
