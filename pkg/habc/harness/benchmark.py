"""
Wave-equation benchmark of the absorbing machinery without surface coupling,
and the closed-basin setup used to check energy conservation.

A Gaussian pulse of phi starts inside a box with a Neumann top and absorbing
lateral and bottom sides; the enlarged, closed reference box is large enough
that nothing reflected from it re-enters the box before T.
"""
import logging
from dataclasses import dataclass
from typing import Tuple

import numpy as np

from .. import create_config
from ..models.case import CaseSpec
from ..models.enums import AbcKind, CornerMode
from ..models.params import PhysicalParams
from ..newmark.integrator import State
from .metrics import attach_errors
from .runner import simulate

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class BenchmarkConfig:
    orders: Tuple[int, ...] = (2, 8, 32)
    half_width: float = 0.5
    depth: float = 0.5
    reference_half_width: float = 1.0
    reference_depth: float = 1.0
    h: float = 0.05
    p: int = 4
    dt: float = 0.01
    T: float = 1.0
    c_f: float = 1.0
    pulse_center: Tuple[float, float] = (0.0, -0.25)
    pulse_width: float = 0.06
    corner: CornerMode = CornerMode.ODE
    stride: int = 1


def gaussian_pulse(xy, center, width):
    r2 = (xy[:, 0] - center[0]) ** 2 + (xy[:, 1] - center[1]) ** 2
    return np.exp(-r2 / width ** 2)


def pulse_state(config):
    """Initial state factory: phi = Gaussian pulse, every other unknown zero."""

    def build(system):
        u = np.zeros(system.dimension)
        u[system.layout.phi.slice] = gaussian_pulse(system.phi_xy, config.pulse_center,
                                                   config.pulse_width)
        return State(u=u, v=np.zeros(system.dimension), a=np.zeros(system.dimension))

    return build


def surface_bump_state(amplitude=1e-3, width=0.02, center=0.0):
    """Initial state factory: eta = Gaussian bump, every other unknown zero."""

    def build(system):
        u = np.zeros(system.dimension)
        u[system.layout.eta.slice] = amplitude * np.exp(-((system.eta_x - center) / width) ** 2)
        return State(u=u, v=np.zeros(system.dimension), a=np.zeros(system.dimension))

    return build


def closed_basin_case(case, T=None):
    """The case with every absorbing condition off and no forcing."""
    T = case.T if T is None else T
    return case.with_overrides(id=f"{case.id}-closed", T=T, T_excit=min(case.T_excit, T), A=0.0,
                               habc_sides=False, habc_bottom=False, corner=CornerMode.NEUMANN,
                               l_ref=None)


def box_case(config, order=1, abc_kind=AbcKind.PADE, reference=False):
    half_width = config.reference_half_width if reference else config.half_width
    depth = config.reference_depth if reference else config.depth
    absorbing = not reference
    return CaseSpec(
        id=f"wave-{'ref' if reference else abc_kind.value}-{order}",
        params=PhysicalParams(rho=1.0, g=9.81, c_f=config.c_f),
        T=config.T,
        l=half_width,
        depth=depth,
        T_excit=config.T,
        A=0.0,
        h=config.h,
        dt=config.dt,
        p=config.p,
        pade_order=order,
        habc_sides=absorbing,
        habc_bottom=absorbing,
        abc_kind=abc_kind,
        corner=config.corner if absorbing else CornerMode.NEUMANN,
    )


def _run_box(case, config, app_config):
    return simulate(case, app_config, surface=False, window=(-config.half_width, config.half_width),
                    stride=config.stride, initial=pulse_state(config))


def _restrict_to_box(record, config):
    """Keep only reference nodes inside the truncated box."""
    keep = record.phi_xy[:, 1] >= -config.depth - 1e-12
    record.phi = record.phi[:, keep]
    record.phi_xy = record.phi_xy[keep]
    return record


def wave_benchmark(config=None, app_config=None):
    """
    Box runs for every order plus the first-order baseline, each with errors
    against the closed reference.

    Returns:
        dict with 'reference', 'first_order' and one RunRecord per order
    """
    config = config or BenchmarkConfig()
    app_config = app_config or create_config()
    reference = _restrict_to_box(_run_box(box_case(config, reference=True), config, app_config), config)
    results = {'reference': reference}

    baseline = _run_box(box_case(config, abc_kind=AbcKind.FIRST_ORDER), config, app_config)
    attach_errors(baseline, reference)
    results['first_order'] = baseline

    for order in config.orders:
        record = _run_box(box_case(config, order=order), config, app_config)
        attach_errors(record, reference)
        record.metadata['order'] = order
        logger.info(f"Wave benchmark order {order}: E_phi={record.metadata['E_phi']:.3e}")
        results[order] = record
    return results


def benchmark_table(results):
    """Rows (order, E_phi, final energy / initial energy) of a benchmark."""
    rows = []
    for key, record in results.items():
        if key == 'reference':
            continue
        initial = record.E_basin[0] if record.E_basin.size else 0.0
        rows.append({
            'order': 0 if key == 'first_order' else key,
            'E_phi': record.metadata.get('E_phi'),
            'residual_energy': float(record.E_basin[-1] / initial) if initial > 0.0 else float('nan'),
        })
    return rows
