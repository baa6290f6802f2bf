"""
Basin and surface equations of the coupled model.

Basin rows are scaled by rho / c_f^2, which makes the basin/surface coupling
blocks of C skew: C(phi, eta) = -C(eta, phi)^T.
"""
import numpy as np

from ..fem.assembly import (
    assemble_line_mass,
    assemble_line_stiffness,
    assemble_mass_2d,
    assemble_stiffness_2d,
)
from ..fem.grid import boundary_trace_map
from ..models.enums import BoundaryTag
from .contribution import Contribution


def assemble_interior(grid, params, layout):
    """
    Basin wave operator and the phi-side coupling to the surface.

    M += (rho/c_f^2) mass, K += rho stiffness, C(phi_surface, eta) += -rho M_surface.
    """
    part = Contribution(layout.dimension, "interior")
    phi = layout.phi.indices
    rho, c_f = params.rho, params.c_f
    part.M.add_block(phi, phi, assemble_mass_2d(grid, rho / c_f ** 2))
    part.K.add_block(phi, phi, assemble_stiffness_2d(grid, rho))
    if layout.eta is not None:
        trace = boundary_trace_map(grid, BoundaryTag.SURFACE)
        surface_mass = assemble_line_mass(trace.line)
        part.C.add_block(layout.phi.dof(trace.nodes), layout.eta.indices, surface_mass, scale=-rho)
    return part


def assemble_surface(grid, params, layout):
    """
    Surface equation eps rho eta'' - sigma eta_xx + rho g eta + rho phi' = f_s.

    Endpoints are left natural here; the lateral conditions add their terms.
    """
    part = Contribution(layout.dimension, "surface")
    if layout.eta is None:
        return part
    trace = boundary_trace_map(grid, BoundaryTag.SURFACE)
    eta = layout.eta.indices
    mass = assemble_line_mass(trace.line)
    rho = params.rho
    if params.epsilon > 0.0:
        part.M.add_block(eta, eta, mass, scale=params.epsilon * rho)
    if params.sigma > 0.0:
        part.K.add_block(eta, eta, assemble_line_stiffness(trace.line, params.sigma))
    part.K.add_block(eta, eta, mass, scale=rho * params.g)
    part.C.add_block(eta, layout.phi.dof(trace.nodes), mass.T, scale=rho)
    return part


class SurfaceLoad:
    """
    Right-hand side t -> F(t): surface-mass weighted nodal forcing on the eta rows.
    """

    def __init__(self, dimension, eta_rows, surface_mass, x, forcing):
        self.dimension = dimension
        self.eta_rows = eta_rows
        self.surface_mass = surface_mass
        self.x = x
        self.forcing = forcing

    def __call__(self, t):
        out = np.zeros(self.dimension)
        if self.forcing is None or self.eta_rows is None:
            return out
        out[self.eta_rows] = self.surface_mass @ self.forcing(self.x, t)
        return out
