"""
Monolithic system M a'' + C a' + K a = F(t) for one case.
"""
import logging
import os
import time
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from typing import Optional

import numpy as np
from scipy import io as sio

from ..fem.assembly import (
    assemble_line_mass,
    assemble_line_stiffness,
    assemble_mass_2d,
    assemble_stiffness_2d,
)
from ..fem.grid import boundary_trace_map, build_grid_2d
from ..models.enums import AbcKind, BoundaryTag, CornerMode, Side
from ..pade.coefficients import build_pade_set
from .boundary import (
    assemble_first_order_bottom,
    assemble_first_order_side,
    assemble_habc_bottom,
    assemble_habc_side,
)
from .contribution import Contribution
from .interior import SurfaceLoad, assemble_interior, assemble_surface
from .layout import LayoutOptions, build_field_layout

logger = logging.getLogger(__name__)


@dataclass
class SystemMatrices:
    """
    Compiled matrices, the load and the quadratic forms of the physical energy.

    phi_mass/phi_stiffness act on the phi block, eta_mass/eta_stiffness on the eta block.
    """
    layout: object
    grid: object
    M: object
    C: object
    K: object
    load: SurfaceLoad
    phi_mass: object = field(repr=False)
    phi_stiffness: object = field(repr=False)
    eta_mass: Optional[object] = field(default=None, repr=False)
    eta_stiffness: Optional[object] = field(default=None, repr=False)
    eta_x: Optional[np.ndarray] = field(default=None, repr=False)

    @property
    def dimension(self):
        return self.layout.dimension

    @property
    def phi_xy(self):
        return self.grid.coords

    def phi_part(self, vector):
        return vector[self.layout.phi.slice]

    def eta_part(self, vector):
        if self.layout.eta is None:
            return None
        return vector[self.layout.eta.slice]

    def energies(self, u, v, x_interval=None):
        """
        Surface and basin energies of a state.

        E_surface = 1/2 v_eta' (eps rho M) v_eta + 1/2 u_eta' (sigma K + rho g M) u_eta
        E_basin = 1/2 v_phi' (rho/c_f^2 M) v_phi + 1/2 u_phi' (rho K) u_phi
        With x_interval, nodal values outside [x0, x1] are zeroed first.
        """
        phi_u, phi_v = self.phi_part(u), self.phi_part(v)
        if x_interval is not None:
            keep = _inside(self.grid.coords[:, 0], x_interval)
            phi_u, phi_v = phi_u * keep, phi_v * keep
        E_basin = 0.5 * phi_v @ (self.phi_mass @ phi_v) + 0.5 * phi_u @ (self.phi_stiffness @ phi_u)
        if self.layout.eta is None:
            return 0.0, float(E_basin)
        eta_u, eta_v = self.eta_part(u), self.eta_part(v)
        if x_interval is not None:
            keep = _inside(self.eta_x, x_interval)
            eta_u, eta_v = eta_u * keep, eta_v * keep
        E_surface = 0.5 * eta_v @ (self.eta_mass @ eta_v) + 0.5 * eta_u @ (self.eta_stiffness @ eta_u)
        return float(E_surface), float(E_basin)


def _inside(x, interval, tol=1e-12):
    lo, hi = interval
    return ((x >= lo - tol) & (x <= hi + tol)).astype(float)


def resolve_threads(threads=None):
    if threads is None:
        threads = int(os.environ.get("HABC_THREADS", 1))
    return max(1, int(threads))


def _tasks(grid, params, pade, layout, options, corner):
    tasks = [
        ("interior", lambda: assemble_interior(grid, params, layout)),
        ("surface", lambda: assemble_surface(grid, params, layout)),
    ]
    if options.habc_sides:
        for side in (Side.IN, Side.OUT):
            if options.abc_kind is AbcKind.PADE:
                tasks.append((f"habc-{side.value}",
                              lambda s=side: assemble_habc_side(grid, params, pade, layout, s, corner)))
            else:
                tasks.append((f"abc-{side.value}",
                              lambda s=side: assemble_first_order_side(grid, params, layout, s)))
    if options.habc_bottom:
        if options.abc_kind is AbcKind.PADE:
            tasks.append(("habc-bottom",
                          lambda: assemble_habc_bottom(grid, params, pade, layout, corner)))
        else:
            tasks.append(("abc-bottom", lambda: assemble_first_order_bottom(grid, params, layout)))
    return tasks


def assemble_system(case, surface=True, forcing=None, threads=None, corner=None):
    """
    Build the layout and the compiled system for a case.

    Args:
        case: CaseSpec
        surface: couple the free-surface equation; False gives the pure wave problem
            with a Neumann top
        forcing: callable (x, t) -> surface forcing; defaults to the case excitation
        threads: worker count for the assembly parts, defaults to $HABC_THREADS
        corner: overrides case.corner

    Returns:
        (FieldLayout, SystemMatrices)
    """
    start = time.perf_counter()
    params = case.params
    corner = CornerMode(corner or case.corner)
    grid = build_grid_2d(((-case.l, case.l), (-case.depth, 0.0)), case.h, case.p, mask=case.obstacle)
    pade = build_pade_set(case.pade_order, case.keep_fraction)
    options = LayoutOptions.from_case(case, surface=surface)
    layout = build_field_layout(grid, pade, options)

    tasks = _tasks(grid, params, pade, layout, options, corner)
    workers = resolve_threads(threads)
    if workers > 1:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            futures = [pool.submit(fn) for _, fn in tasks]
            parts = [f.result() for f in futures]
    else:
        parts = [fn() for _, fn in tasks]

    # Merge in task order so the compiled matrices do not depend on scheduling
    total = Contribution(layout.dimension, "system")
    for part in parts:
        part.merge_into(total)
    M, C, K = total.M.compile(), total.C.compile(), total.K.compile()

    eta_mass = eta_stiffness = eta_x = None
    eta_rows = None
    surface_mass = None
    if layout.eta is not None:
        trace = boundary_trace_map(grid, BoundaryTag.SURFACE)
        surface_mass = assemble_line_mass(trace.line)
        eta_x = trace.line.coords
        eta_rows = layout.eta.indices
        eta_mass = surface_mass * (params.epsilon * params.rho)
        eta_stiffness = (assemble_line_stiffness(trace.line, params.sigma)
                         + surface_mass * (params.rho * params.g))
        if forcing is None:
            from ..harness.excitation import surface_forcing
            forcing = surface_forcing(case)

    load = SurfaceLoad(layout.dimension, eta_rows, surface_mass, eta_x, forcing)
    system = SystemMatrices(
        layout=layout,
        grid=grid,
        M=M,
        C=C,
        K=K,
        load=load,
        phi_mass=assemble_mass_2d(grid, params.rho / params.c_f ** 2),
        phi_stiffness=assemble_stiffness_2d(grid, params.rho),
        eta_mass=eta_mass,
        eta_stiffness=eta_stiffness,
        eta_x=eta_x,
    )
    logger.info(f"Assembled case {case.id}: dimension {layout.dimension}, "
                f"nnz M={M.nnz} C={C.nnz} K={K.nnz} in {time.perf_counter() - start:.2f}s")
    return layout, system


def dump_system(system, directory):
    """Write M, C and K in Matrix Market format."""
    os.makedirs(directory, exist_ok=True)
    paths = []
    for name in ('M', 'C', 'K'):
        path = os.path.join(directory, f"{name}.mtx")
        sio.mmwrite(path, getattr(system, name), precision=17)
        paths.append(path)
    logger.info(f"Wrote system matrices to {directory}")
    return paths
