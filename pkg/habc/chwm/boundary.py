"""
Absorbing conditions on the artificial boundaries.

Every flux uses the outward normal, so the inflow and outflow sides (and the
two bottom corners) share one code path.

Lateral side, per active index n with kappa = 2/M:
    rho c_f^2 d_nu phi  ->  -rho c_f a_f [phi' + kappa sum c_n (phi' - phi_n')]
    a_f^2 (1+c_n) (phi_n - phi)'' + (1 - a_f^2) phi_n'' - c_f^2 d_yy phi_n = 0
closed at the surface end P by c_f^2 d_nu phi_n = c_f^2 eta_n' and at the
bottom end Q by the corner ODE or a Neumann condition.
"""
import numpy as np

from ..errors import ConfigError
from ..fem.assembly import assemble_line_mass, assemble_line_stiffness
from ..fem.grid import boundary_trace_map, point_functional
from ..models.enums import SIDE_TAGS, BoundaryTag, CornerMode, Side
from .contribution import Contribution
from .layout import ETA_AUX, PHI_AUX, PHI_BOTTOM

_SURFACE_END = {Side.IN: 'P_in', Side.OUT: 'P_out'}
_BOTTOM_END = {Side.IN: 'Q_in', Side.OUT: 'Q_out'}


def _has_side_lines(layout):
    return any(layout.has(PHI_AUX, side, n) for side in Side for n in layout.active)


def _has_bottom_lines(layout):
    return any(layout.has(PHI_BOTTOM, None, m) for m in layout.active)


def corner_coupling(c_own, c_other):
    """(1 + c_own) / (1 + c_own + c_other), weight of the other family at a corner."""
    return (1.0 + c_own) / (1.0 + c_own + c_other)


def _surface_endpoint(grid, layout, side):
    trace = boundary_trace_map(grid, BoundaryTag.SURFACE)
    return layout.eta.dof(point_functional(trace.line, _SURFACE_END[side]))


def _eta_aux_rows(part, params, c_n, eta_n, eta_end, phi_top):
    """Scalar equation of eta_n at the top of the phi_n line."""
    rho, eps = params.rho, params.epsilon
    if params.ste_enabled:
        a_s = params.a_s
        inertia = a_s ** 2 * eps * rho * (1.0 + c_n)
        part.M.add(eta_n, eta_n, inertia + (1.0 - a_s ** 2) * eps * rho)
        part.M.add(eta_n, eta_end, -inertia)
    else:
        part.M.add(eta_n, eta_n, eps * rho)
    part.K.add(eta_n, eta_n, rho * params.g)
    part.C.add(eta_n, phi_top, rho)


def assemble_habc_side(grid, params, pade, layout, side, corner=CornerMode.ODE):
    """
    Padé-type condition on one vertical side, its auxiliary lines and scalars.

    Args:
        grid: StructuredGrid2D
        params: PhysicalParams
        pade: PadeSet whose active indices match the layout
        layout: FieldLayout carrying the phi_aux blocks of this side
        side: Side.IN or Side.OUT
        corner: closure of the auxiliary lines at the bottom end

    Returns:
        Contribution
    """
    side = Side(side)
    if params.ste_enabled and params.a_s * params.a_f == 0.0:
        raise ConfigError("surface absorbing condition needs a_s * a_f != 0", key="a_s")
    part = Contribution(layout.dimension, f"habc-{side.value}")
    trace = boundary_trace_map(grid, SIDE_TAGS[side])
    line_mass = assemble_line_mass(trace.line)
    line_stiffness = assemble_line_stiffness(trace.line)
    rows = layout.phi.dof(trace.nodes)
    top = point_functional(trace.line, 'P')
    bottom = point_functional(trace.line, 'Q')

    rho, c_f, a_f = params.rho, params.c_f, params.a_f
    kappa = pade.prefactor
    coeffs = {n: pade.coefficient(n) for n in pade.active}
    total = sum(coeffs.values())
    flux = rho * a_f / c_f

    part.C.add_block(rows, rows, line_mass, scale=flux * (1.0 + kappa * total))
    eta_end = _surface_endpoint(grid, layout, side) if layout.eta is not None else None

    for n, c_n in coeffs.items():
        aux = layout.phi_aux(side, n)
        cols = aux.indices
        part.C.add_block(rows, cols, line_mass, scale=-flux * kappa * c_n)

        inertia = a_f ** 2 * (1.0 + c_n)
        part.M.add_block(cols, cols, line_mass, scale=inertia + 1.0 - a_f ** 2)
        part.M.add_block(cols, rows, line_mass, scale=-inertia)
        part.K.add_block(cols, cols, line_stiffness, scale=c_f ** 2)

        phi_top = aux.dof(top)
        if layout.has(ETA_AUX, side, n):
            eta_n = layout.eta_aux(side, n).offset
            part.C.add(phi_top, eta_n, -c_f ** 2)
            _eta_aux_rows(part, params, c_n, eta_n, eta_end, phi_top)
        elif layout.eta is not None:
            # rho g eta_n + rho phi_n' = 0 eliminated: eta_n' = -phi_n'' / g
            part.M.add(phi_top, phi_top, c_f ** 2 / params.g)

    if params.ste_enabled and eta_end is not None:
        scale = params.epsilon * rho * params.c_s * params.a_s
        part.C.add(eta_end, eta_end, scale * (1.0 + kappa * total))
        for n, c_n in coeffs.items():
            part.C.add(eta_end, layout.eta_aux(side, n).offset, -scale * kappa * c_n)

    if CornerMode(corner) is CornerMode.ODE and _has_bottom_lines(layout):
        bottom_trace = boundary_trace_map(grid, BoundaryTag.BOTTOM)
        corner_node = point_functional(bottom_trace.line, _BOTTOM_END[side])
        own = np.array([layout.phi_aux(side, n).dof(bottom) for n in coeffs])
        other = np.array([layout.phi_bottom(m).dof(corner_node) for m in coeffs])
        _corner_rows(part, own, other, np.fromiter(coeffs.values(), float), kappa, c_f)
    return part


def _corner_rows(part, own, other, c, kappa, c_f):
    """
    Corner ODE of one line family closed against the other family.

    c_f d_nu phi_n = -phi_n' + kappa sum_m c_m ((1+c_n) phi_m' - c_n phi_n') / (1+c_n+c_m)
    """
    denominators = 1.0 + c[:, None] + c[None, :]
    diag = 1.0 + kappa * (c[:, None] * c[None, :] / denominators).sum(axis=1)
    part.C.add_triplets(own, own, c_f * diag)
    coupling = -c_f * kappa * c[None, :] * corner_coupling(c[:, None], c[None, :])
    part.C.add_block(own, other, coupling)


def assemble_habc_bottom(grid, params, pade, layout, corner=CornerMode.ODE):
    """
    Padé-type condition on the bottom with a = 1 and its horizontal auxiliary lines.

    Raises:
        ConfigError: corner ODEs requested without lateral auxiliary lines
    """
    corner = CornerMode(corner)
    if corner is CornerMode.ODE and not _has_side_lines(layout):
        raise ConfigError("corner ODEs need the lateral auxiliary lines; "
                          "enable the lateral condition or use corner=neumann", key="habc_bottom")
    part = Contribution(layout.dimension, "habc-bottom")
    trace = boundary_trace_map(grid, BoundaryTag.BOTTOM)
    line_mass = assemble_line_mass(trace.line)
    line_stiffness = assemble_line_stiffness(trace.line)
    rows = layout.phi.dof(trace.nodes)

    rho, c_f = params.rho, params.c_f
    kappa = pade.prefactor
    coeffs = {m: pade.coefficient(m) for m in pade.active}
    total = sum(coeffs.values())

    part.C.add_block(rows, rows, line_mass, scale=rho / c_f * (1.0 + kappa * total))
    for m, c_m in coeffs.items():
        cols = layout.phi_bottom(m).indices
        part.C.add_block(rows, cols, line_mass, scale=-rho / c_f * kappa * c_m)
        part.M.add_block(cols, cols, line_mass, scale=1.0 + c_m)
        part.M.add_block(cols, rows, line_mass, scale=-(1.0 + c_m))
        part.K.add_block(cols, cols, line_stiffness, scale=c_f ** 2)

    if corner is CornerMode.ODE:
        for side in (Side.IN, Side.OUT):
            corner_node = point_functional(trace.line, _BOTTOM_END[side])
            side_line = boundary_trace_map(grid, SIDE_TAGS[side]).line
            side_bottom = point_functional(side_line, 'Q')
            own = np.array([layout.phi_bottom(m).dof(corner_node) for m in coeffs])
            other = np.array([layout.phi_aux(side, n).dof(side_bottom) for n in coeffs])
            _corner_rows(part, own, other, np.fromiter(coeffs.values(), float), kappa, c_f)
    return part


def assemble_first_order_side(grid, params, layout, side):
    """(a_f phi' + c_f d_nu phi) = 0 on one side; surface end gets eps rho c_s a_s eta'."""
    side = Side(side)
    part = Contribution(layout.dimension, f"abc-{side.value}")
    trace = boundary_trace_map(grid, SIDE_TAGS[side])
    rows = layout.phi.dof(trace.nodes)
    part.C.add_block(rows, rows, assemble_line_mass(trace.line),
                     scale=params.rho * params.a_f / params.c_f)
    if params.ste_enabled and layout.eta is not None:
        eta_end = _surface_endpoint(grid, layout, side)
        part.C.add(eta_end, eta_end, params.epsilon * params.rho * params.c_s * params.a_s)
    return part


def assemble_first_order_bottom(grid, params, layout):
    part = Contribution(layout.dimension, "abc-bottom")
    trace = boundary_trace_map(grid, BoundaryTag.BOTTOM)
    rows = layout.phi.dof(trace.nodes)
    part.C.add_block(rows, rows, assemble_line_mass(trace.line), scale=params.rho / params.c_f)
    return part
