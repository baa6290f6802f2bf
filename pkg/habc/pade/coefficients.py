"""
Padé coefficients of the square-root Dirichlet-to-Neumann approximation.

The (2N+1)th-order approximant of sqrt(1 + X) is written as
    f(X) = 1 + (2/M) * sum_n c_n * (1 - (1 + c_n) / (1 + c_n + X)),
with M = 2N + 1 and c_n = tan^2(n * pi / M).
"""
import math
from dataclasses import dataclass, field
from typing import Iterable, Sequence, Tuple

import numpy as np

from ..errors import ConfigError

MAX_ORDER = 10 ** 6

# Number of X values evaluated per vectorized block
_BLOCK = 256


def _check_order(N):
    if isinstance(N, bool) or not isinstance(N, (int, np.integer)):
        raise ConfigError(f"Padé order must be an integer, got {N!r}", key="order")
    if N < 1:
        raise ConfigError(f"Padé order must be >= 1, got {N}", key="order")
    if N > MAX_ORDER:
        raise ConfigError(f"Padé order {N} exceeds the supported maximum {MAX_ORDER}", key="order")
    return int(N)


def pade_coefficients(N):
    """
    Coefficients c_n = tan^2(n pi / (2N+1)) for n = 1..N.

    Args:
        N: Padé order (>= 1)

    Returns:
        numpy array of N strictly increasing positive reals
    """
    N = _check_order(N)
    n = np.arange(1, N + 1, dtype=float)
    coeffs = np.tan(n * np.pi / (2 * N + 1)) ** 2
    coeffs.setflags(write=False)
    return coeffs


@dataclass(frozen=True)
class PadeSet:
    """Padé order, its coefficients and the indices kept after reduction."""
    order: int
    coeffs: np.ndarray = field(repr=False)
    active: Tuple[int, ...]

    def __post_init__(self):
        if len(self.coeffs) != self.order:
            raise ConfigError(f"expected {self.order} coefficients, got {len(self.coeffs)}")
        if not self.active:
            raise ConfigError("active index set must not be empty", key="keep_fraction")
        if list(self.active) != sorted(set(self.active)):
            raise ConfigError("active indices must be sorted and unique")
        if self.active[0] < 1 or self.active[-1] > self.order:
            raise ConfigError(f"active indices must lie in 1..{self.order}")

    @property
    def M(self):
        return 2 * self.order + 1

    @property
    def prefactor(self):
        """2/M, kept at the full order even when terms are dropped."""
        return 2.0 / self.M

    @property
    def active_coeffs(self):
        return self.coeffs[np.asarray(self.active) - 1]

    @property
    def is_reduced(self):
        return len(self.active) < self.order

    def __len__(self):
        return len(self.active)

    def coefficient(self, n):
        return float(self.coeffs[n - 1])


def build_pade_set(N, keep_fraction=1.0):
    """Coefficients of order N with the reduction suffix for keep_fraction."""
    coeffs = pade_coefficients(N)
    return PadeSet(order=int(N), coeffs=coeffs, active=reduction_active_set(N, keep_fraction))


def reduction_active_set(N, keep_fraction):
    """
    Indices of the K largest coefficients, K = max(1, round(keep_fraction * N)).

    Rounding is half-up. keep_fraction = 1 keeps every index.

    Returns:
        tuple of indices {N-K+1, ..., N}
    """
    N = _check_order(N)
    if not (0.0 < keep_fraction <= 1.0):
        raise ConfigError(
            f"keep_fraction must lie in (0, 1], got {keep_fraction}", key="keep_fraction"
        )
    if keep_fraction == 1.0:
        return tuple(range(1, N + 1))
    kept = max(1, int(math.floor(keep_fraction * N + 0.5)))
    kept = min(kept, N)
    return tuple(range(N - kept + 1, N + 1))


def pade_sqrt(pade, X):
    """
    Evaluate the (possibly reduced) Padé approximant of sqrt(1 + X).

    Inactive indices contribute nothing; the prefactor keeps M = 2N + 1.

    Args:
        pade: PadeSet
        X: real scalar or array

    Returns:
        float for scalar input, numpy array otherwise
    """
    scalar = np.isscalar(X)
    x = np.atleast_1d(np.asarray(X, dtype=float))
    c = pade.active_coeffs
    # c is increasing, so X > -(1 + c_min) keeps every denominator positive
    if np.any(x <= -(1.0 + c[0])):
        raise ConfigError(
            f"X hits or passes a pole of the Padé approximant (X must exceed {-(1.0 + c[0])!r})",
            key="X",
        )
    out = np.empty_like(x)
    for start in range(0, x.size, _BLOCK):
        block = x[start:start + _BLOCK]
        # c (1 - (1+c)/(1+c+X)) rewritten as c X / (1+c+X); exact zero at X = 0
        terms = c[:, None] * block[None, :] / (1.0 + c[:, None] + block[None, :])
        out[start:start + _BLOCK] = 1.0 + pade.prefactor * terms.sum(axis=0)
    if scalar:
        return float(out[0])
    return out


def pade_error_table(orders: Sequence[int], X_grid: Iterable[float]):
    """
    Absolute errors |f_N(X) - sqrt(1 + X)|, one row per order.

    Returns:
        numpy array of shape (len(orders), len(X_grid))
    """
    orders = list(orders)
    x = np.asarray(list(X_grid), dtype=float)
    if not orders:
        raise ConfigError("orders must not be empty", key="orders")
    if x.size == 0:
        raise ConfigError("X grid must not be empty", key="xmax")
    if np.any(x < 0.0):
        raise ConfigError("X grid values must be >= 0", key="xmax")
    exact = np.sqrt(1.0 + x)
    table = np.empty((len(orders), x.size))
    for row, N in enumerate(orders):
        table[row] = np.abs(pade_sqrt(build_pade_set(N), x) - exact)
    return table


def threshold_counts(N, thresholds):
    """Number of coefficients strictly above each threshold."""
    coeffs = pade_coefficients(N)
    return [int(np.count_nonzero(coeffs > tau)) for tau in thresholds]
