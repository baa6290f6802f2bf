"""
Mass and stiffness assembly on structured grids.

All elements of a grid share one element matrix, so assembly scatters a
single dense block through the connectivity into a COO matrix.
"""
import numpy as np
from scipy.sparse import coo_matrix

from .basis import reference_matrices


def _scatter(element_dofs, element_matrix, n):
    n_loc = element_dofs.shape[1]
    rows = np.repeat(element_dofs, n_loc, axis=1).ravel()
    cols = np.tile(element_dofs, (1, n_loc)).ravel()
    data = np.tile(element_matrix.ravel(), element_dofs.shape[0])
    # COO -> CSR sums duplicates in input order, which is fixed by the traversal
    return coo_matrix((data, (rows, cols)), shape=(n, n)).tocsr()


def element_mass_2d(grid, coefficient=1.0):
    ref = reference_matrices(grid.p, grid.family)
    return coefficient * np.kron(grid.hy * ref.mass, grid.hx * ref.mass)


def element_stiffness_2d(grid, coefficient=1.0):
    ref = reference_matrices(grid.p, grid.family)
    return coefficient * (np.kron(grid.hy * ref.mass, ref.stiffness / grid.hx)
                          + np.kron(ref.stiffness / grid.hy, grid.hx * ref.mass))


def assemble_mass_2d(grid, coefficient=1.0):
    """coefficient * integral of phi_i phi_j over the active elements."""
    return _scatter(grid.elements, element_mass_2d(grid, coefficient), grid.n_dofs)


def assemble_stiffness_2d(grid, coefficient=1.0):
    """coefficient * integral of grad phi_i . grad phi_j over the active elements."""
    return _scatter(grid.elements, element_stiffness_2d(grid, coefficient), grid.n_dofs)


def assemble_line_mass(line, coefficient=1.0):
    ref = reference_matrices(line.p, line.family)
    return _scatter(line.element_nodes(), coefficient * line.h * ref.mass, line.n_nodes)


def assemble_line_stiffness(line, coefficient=1.0):
    ref = reference_matrices(line.p, line.family)
    return _scatter(line.element_nodes(), coefficient * ref.stiffness / line.h, line.n_nodes)
