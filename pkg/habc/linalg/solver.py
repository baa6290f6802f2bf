"""
Sparse factorizations for the fixed Newmark effective matrix.

The direct path wraps SuperLU; the Krylov path (GMRES with an incomplete LU
preconditioner) is for runs where the full factors do not fit in memory.
"""
import logging
import time

import numpy as np
from scipy.sparse import linalg as spla

from ..errors import ConfigError, NumericalError, SingularMatrixError

logger = logging.getLogger(__name__)

DIRECT = 'direct'
KRYLOV = 'krylov'


def _empty_line(matrix):
    """Index of the first structurally empty row, or None."""
    csr = matrix.tocsr()
    counts = np.diff(csr.indptr)
    empty = np.flatnonzero(counts == 0)
    if empty.size:
        return int(empty[0])
    csc = matrix.tocsc()
    empty = np.flatnonzero(np.diff(csc.indptr) == 0)
    if empty.size:
        return int(empty[0])
    return None


class Factorization:
    """
    Factor once, solve many times.

    Args:
        matrix: square scipy sparse matrix
        method: 'direct' (SuperLU) or 'krylov' (ILU-preconditioned GMRES)
        ordering: column ordering for SuperLU
        rtol: relative residual for the Krylov path
    """

    def __init__(self, matrix, method=DIRECT, ordering='COLAMD', rtol=1e-12):
        if matrix.shape[0] != matrix.shape[1]:
            raise ConfigError(f"matrix must be square, got {matrix.shape}", key="dimension")
        self.shape = matrix.shape
        self.method = method
        self.rtol = rtol
        self._matrix = matrix.tocsc()
        self._matrix.sort_indices()

        row = _empty_line(self._matrix)
        if row is not None:
            raise SingularMatrixError(f"matrix is structurally singular at row {row}", row=row)

        start = time.perf_counter()
        try:
            if method == DIRECT:
                self._lu = spla.splu(self._matrix, permc_spec=ordering)
            elif method == KRYLOV:
                self._lu = spla.spilu(self._matrix, drop_tol=1e-6, fill_factor=20)
            else:
                raise ConfigError(f"unknown solver method '{method}'", key="solver")
        except RuntimeError as exc:
            raise SingularMatrixError(f"factorization failed: {exc}") from exc
        logger.info(f"Factorized {self.shape[0]} unknowns ({method}) in {time.perf_counter() - start:.2f}s")

        if method == DIRECT:
            diag = np.abs(self._lu.U.diagonal())
            if np.any(diag == 0.0) or not np.all(np.isfinite(diag)):
                pivot = int(np.flatnonzero((diag == 0.0) | ~np.isfinite(diag))[0])
                raise SingularMatrixError(f"zero pivot in column {pivot} of the factor",
                                          row=int(self._lu.perm_r.argsort()[pivot]))

    @property
    def matrix(self):
        return self._matrix

    def solve(self, b):
        b = np.asarray(b, dtype=float)
        if b.shape[0] != self.shape[0]:
            raise ConfigError(f"right-hand side of length {b.shape[0]} for dimension {self.shape[0]}",
                              key="dimension")
        if self.method == DIRECT:
            x = self._lu.solve(b)
        else:
            preconditioner = spla.LinearOperator(self.shape, self._lu.solve)
            x, info = spla.gmres(self._matrix, b, M=preconditioner, rtol=self.rtol, atol=0.0,
                                 restart=50, maxiter=200)
            if info != 0:
                raise NumericalError(f"GMRES did not converge (info={info})")
        if not np.all(np.isfinite(x)):
            raise NumericalError("solution contains non-finite values")
        return x

    def residual_bound(self, x, b):
        """Right side of ||Ax - b|| <= 1e-10 (||A||_F ||x|| + ||b||)."""
        return 1e-10 * (spla.norm(self._matrix) * np.linalg.norm(x) + np.linalg.norm(b))


def factorize(matrix, method=DIRECT, ordering='COLAMD', rtol=1e-12):
    return Factorization(matrix, method=method, ordering=ordering, rtol=rtol)


def solve(factorization, b):
    return factorization.solve(b)
