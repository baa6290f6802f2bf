"""
Lagrange bases and Gauss quadrature on the reference interval [0, 1].

Tensor-product elements in 2D are built from these 1D tables.
"""
from dataclasses import dataclass, field
from enum import Enum
from functools import lru_cache

import numpy as np
from numpy.polynomial import legendre

from ..errors import ConfigError

MAX_ORDER = 4


class NodeFamily(str, Enum):
    """Placement of the Lagrange nodes inside an element"""
    GLL = 'gll'
    EQUISPACED = 'equispaced'


def _check_p(p):
    if not 1 <= int(p) <= MAX_ORDER:
        raise ConfigError(f"element order must lie in 1..{MAX_ORDER}, got {p}", key="p")
    return int(p)


def reference_nodes(p, family=NodeFamily.GLL):
    """
    Nodes of the order-p Lagrange basis on [0, 1], sorted.

    GLL nodes are the interval ends plus the roots of P_p'.
    """
    p = _check_p(p)
    family = NodeFamily(family)
    if p == 1 or family is NodeFamily.EQUISPACED:
        return np.linspace(0.0, 1.0, p + 1)
    interior = np.sort(legendre.Legendre.basis(p).deriv().roots().real)
    xi = np.concatenate(([-1.0], interior, [1.0]))
    nodes = 0.5 * (xi + 1.0)
    nodes[0], nodes[-1] = 0.0, 1.0
    return nodes


@dataclass(frozen=True)
class QuadratureRule:
    """Gauss-Legendre points and weights on [0, 1]."""
    points: np.ndarray = field(repr=False)
    weights: np.ndarray = field(repr=False)

    @property
    def degree(self):
        """Highest polynomial degree integrated exactly."""
        return 2 * len(self.points) - 1

    def integrate(self, f):
        return float(np.dot(self.weights, f(self.points)))


def gauss_legendre(n_points):
    xi, w = legendre.leggauss(n_points)
    return QuadratureRule(points=0.5 * (xi + 1.0), weights=0.5 * w)


def quadrature_for(p):
    """Rule exact for degree 2p: ceil((2p+1)/2) = p+1 points."""
    return gauss_legendre(_check_p(p) + 1)


class LagrangeBasis:
    """Nodal Lagrange functions on [0, 1] for one element order."""

    def __init__(self, p, family=NodeFamily.GLL):
        self.p = _check_p(p)
        self.family = NodeFamily(family)
        self.nodes = reference_nodes(self.p, self.family)
        diff = self.nodes[:, None] - self.nodes[None, :]
        np.fill_diagonal(diff, 1.0)
        self._denominators = diff.prod(axis=1)

    def __len__(self):
        return self.p + 1

    def values(self, x):
        """Array of shape (len(x), p+1)."""
        x = np.atleast_1d(np.asarray(x, dtype=float))
        factors = x[:, None] - self.nodes[None, :]
        out = np.empty((x.size, self.p + 1))
        for j in range(self.p + 1):
            others = np.delete(factors, j, axis=1)
            out[:, j] = others.prod(axis=1) / self._denominators[j]
        return out

    def derivatives(self, x):
        """First derivatives, shape (len(x), p+1)."""
        x = np.atleast_1d(np.asarray(x, dtype=float))
        factors = x[:, None] - self.nodes[None, :]
        out = np.zeros((x.size, self.p + 1))
        for j in range(self.p + 1):
            for m in range(self.p + 1):
                if m == j:
                    continue
                keep = [k for k in range(self.p + 1) if k not in (j, m)]
                out[:, j] += factors[:, keep].prod(axis=1)
            out[:, j] /= self._denominators[j]
        return out


def reference_basis(p, family=NodeFamily.GLL):
    return LagrangeBasis(p, family)


@dataclass(frozen=True)
class ReferenceMatrices:
    """1D mass and stiffness of the unit element."""
    mass: np.ndarray
    stiffness: np.ndarray


@lru_cache(maxsize=None)
def reference_matrices(p, family=NodeFamily.GLL):
    basis = reference_basis(p, family)
    rule = quadrature_for(p)
    phi = basis.values(rule.points)
    dphi = basis.derivatives(rule.points)
    mass = (phi * rule.weights[:, None]).T @ phi
    stiffness = (dphi * rule.weights[:, None]).T @ dphi
    mass.setflags(write=False)
    stiffness.setflags(write=False)
    return ReferenceMatrices(mass=mass, stiffness=stiffness)
