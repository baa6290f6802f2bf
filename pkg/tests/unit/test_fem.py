"""Bases, quadrature, grids and assembly"""
import numpy as np
import pytest

from habc.errors import ConfigError
from habc.fem import (
    EllipseMask,
    LagrangeBasis,
    NodeFamily,
    assemble_line_mass,
    assemble_line_stiffness,
    assemble_mass_2d,
    assemble_stiffness_2d,
    boundary_trace_map,
    build_grid_2d,
    build_line,
    gauss_legendre,
    point_functional,
    quadrature_for,
    reference_matrices,
    reference_nodes,
)
from habc.models import BoundaryTag

ORDERS = [1, 2, 3, 4]


@pytest.mark.parametrize("p", ORDERS)
@pytest.mark.parametrize("family", list(NodeFamily))
def test_partition_of_unity(p, family):
    basis = LagrangeBasis(p, family)
    x = np.linspace(0.0, 1.0, 37)
    assert np.max(np.abs(basis.values(x).sum(axis=1) - 1.0)) < 1e-13
    assert np.max(np.abs(basis.derivatives(x).sum(axis=1))) < 1e-11


@pytest.mark.parametrize("p", ORDERS)
def test_nodal_interpolation(p):
    basis = LagrangeBasis(p)
    assert np.allclose(basis.values(basis.nodes), np.eye(p + 1), atol=1e-14)


def test_gll_nodes():
    assert reference_nodes(2) == pytest.approx([0.0, 0.5, 1.0], abs=1e-15)
    nodes = reference_nodes(4)
    assert nodes[0] == 0.0 and nodes[-1] == 1.0
    assert nodes[1] == pytest.approx(0.5 * (1.0 - np.sqrt(3.0 / 7.0)), rel=1e-13)


def test_order_out_of_range():
    with pytest.raises(ConfigError):
        LagrangeBasis(5)
    with pytest.raises(ConfigError):
        reference_nodes(0)


@pytest.mark.parametrize("p", ORDERS)
def test_quadrature_exact_to_degree_2p(p):
    rule = quadrature_for(p)
    assert rule.degree >= 2 * p
    for k in range(2 * p + 1):
        assert rule.integrate(lambda x: x ** k) == pytest.approx(1.0 / (k + 1), rel=1e-14)


def test_quadrature_weights_sum_to_length():
    assert gauss_legendre(5).weights.sum() == pytest.approx(1.0, rel=1e-15)


@pytest.mark.parametrize("p", ORDERS)
def test_reference_matrices(p):
    ref = reference_matrices(p)
    assert ref.mass.sum() == pytest.approx(1.0, rel=1e-14)
    assert np.max(np.abs(ref.stiffness @ np.ones(p + 1))) < 1e-12
    assert np.allclose(ref.mass, ref.mass.T)
    with pytest.raises(ValueError):
        ref.mass[0, 0] = 2.0


@pytest.mark.parametrize("p", ORDERS)
def test_grid_assembly_kernel_and_area(p):
    grid = build_grid_2d(((-0.1, 0.1), (-0.05, 0.0)), 0.025, p)
    M = assemble_mass_2d(grid)
    K = assemble_stiffness_2d(grid)
    ones = np.ones(grid.n_dofs)
    assert ones @ (M @ ones) == pytest.approx(0.2 * 0.05, rel=1e-12)
    assert np.max(np.abs(K @ ones)) < 1e-11
    assert abs(K - K.T).max() < 1e-12


@pytest.mark.parametrize("p", ORDERS)
def test_patch_test_affine_fields(p):
    """Affine fields have exact energy: integral of |grad u|^2 = |a|^2 area."""
    grid = build_grid_2d(((0.0, 0.3), (0.0, 0.2)), 0.1, p)
    K = assemble_stiffness_2d(grid)
    u = 2.0 * grid.coords[:, 0] - 3.0 * grid.coords[:, 1] + 1.0
    assert u @ (K @ u) == pytest.approx(13.0 * 0.06, rel=1e-12)
    # Rows away from the boundary see a harmonic field
    interior = (np.abs(grid.coords[:, 0] - 0.15) < 0.1) & (np.abs(grid.coords[:, 1] - 0.1) < 0.05)
    assert np.max(np.abs((K @ u)[interior])) < 1e-11


def test_grid_counts(small_grid):
    assert (small_grid.nx, small_grid.ny) == (4, 2)
    assert small_grid.n_nodes_x == 9 and small_grid.n_nodes_y == 5
    assert small_grid.n_dofs == 45
    assert small_grid.elements.shape == (8, 9)


def test_grid_rejects_non_divisible_size():
    with pytest.raises(ConfigError) as exc:
        build_grid_2d(((-0.1, 0.1), (-0.025, 0.0)), 0.01, 2)
    assert exc.value.key == "h"


def test_boundary_traces(small_grid):
    surface = boundary_trace_map(small_grid, BoundaryTag.SURFACE)
    assert np.allclose(small_grid.coords[surface.nodes, 1], 0.0)
    assert np.allclose(small_grid.coords[surface.nodes, 0], surface.line.coords)
    inflow = boundary_trace_map(small_grid, BoundaryTag.INFLOW)
    assert np.allclose(small_grid.coords[inflow.nodes, 0], -0.1)
    assert np.allclose(small_grid.coords[inflow.nodes, 1], inflow.line.coords)
    assert point_functional(inflow.line, 'P') == inflow.line.n_nodes - 1
    assert point_functional(surface.line, 'P_in') == 0
    with pytest.raises(ConfigError):
        point_functional(inflow.line, 'P_out')
    with pytest.raises(ConfigError):
        boundary_trace_map(small_grid, BoundaryTag.OBSTACLE)


def test_line_assembly():
    line = build_line(0.0, 0.3, 3, 3)
    M = assemble_line_mass(line)
    K = assemble_line_stiffness(line, 2.0)
    ones = np.ones(line.n_nodes)
    assert ones @ (M @ ones) == pytest.approx(0.3, rel=1e-13)
    assert np.max(np.abs(K @ ones)) < 1e-11
    x = line.coords
    assert x @ (K @ x) == pytest.approx(2.0 * 0.3, rel=1e-12)


def test_obstacle_mask_removes_elements():
    mask = EllipseMask.from_lengths((0.0, -0.05), (0.02, 0.015))
    grid = build_grid_2d(((-0.1, 0.1), (-0.1, 0.0)), 0.01, 1, mask=mask)
    assert grid.n_active_elements < 200
    assert grid.active_area == pytest.approx(grid.n_active_elements * 1e-4)
    assert len(grid.obstacle_nodes()) > 0
    ring = grid.coords[grid.obstacle_nodes()]
    assert np.all(np.abs(ring[:, 0]) <= 0.02 + 0.01)
    assert np.all(np.abs(ring[:, 1] + 0.05) <= 0.015 + 0.01)


def test_obstacle_interpretations():
    semi = EllipseMask.from_lengths((0.0, 0.0), (0.01, 0.005), 'semi')
    full = EllipseMask.from_lengths((0.0, 0.0), (0.01, 0.005), 'full')
    assert full.semi_axes == (0.005, 0.0025)
    assert semi.semi_axes == (0.01, 0.005)
    with pytest.raises(ConfigError):
        EllipseMask.from_lengths((0.0, 0.0), (0.01, 0.005), 'radius')


def test_obstacle_touching_boundary_rejected():
    mask = EllipseMask((0.0, -0.005), (0.02, 0.01))
    with pytest.raises(ConfigError) as exc:
        build_grid_2d(((-0.1, 0.1), (-0.1, 0.0)), 0.01, 1, mask=mask)
    assert exc.value.key == "obstacle"
