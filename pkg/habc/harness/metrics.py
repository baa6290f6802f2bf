"""
Reference-relative errors and energies of recorded runs.
"""
import logging
from dataclasses import dataclass
from typing import Optional

import numpy as np

from ..errors import ConfigError

logger = logging.getLogger(__name__)

# Decimals used to match nodes of two grids sharing the same lattice
COORD_DECIMALS = 9


@dataclass(frozen=True)
class ErrorSummary:
    """
    e_eta(t), e_phi(t) and their time integrals E = sqrt(dt_sample * sum e^2).
    """
    times: np.ndarray
    e_eta: Optional[np.ndarray]
    e_phi: Optional[np.ndarray]
    E_eta: Optional[float]
    E_phi: Optional[float]


def _keys(coords):
    coords = np.round(np.asarray(coords, dtype=float), COORD_DECIMALS) + 0.0  # folds -0.0 into 0.0
    if coords.ndim == 1:
        coords = coords[:, None]
    return [tuple(row) for row in coords]


def align_nodes(coords, ref_coords):
    """Indices into ref_coords of every node of coords; nodes must be shared."""
    lookup = {key: i for i, key in enumerate(_keys(ref_coords))}
    try:
        return np.array([lookup[key] for key in _keys(coords)], dtype=np.int64)
    except KeyError as exc:
        raise ConfigError(f"node {exc.args[0]} has no counterpart in the reference grid",
                          key="reference")


def relative_error_series(values, ref_values):
    """max over nodes of |v - v_ref| per sample, over the space-time max of |v_ref|."""
    scale = float(np.max(np.abs(ref_values))) if ref_values.size else 0.0
    if scale == 0.0:
        scale = 1.0
    return np.max(np.abs(values - ref_values), axis=1) / scale


def time_integral(series, dt_sample):
    """Left-endpoint rule: sqrt(dt * sum e_k^2)."""
    return float(np.sqrt(dt_sample * np.sum(series ** 2)))


def compute_errors(run, ref):
    """
    Errors of a run against a reference recorded on a larger, node-sharing grid.

    Raises:
        ConfigError: sampling times differ or a node has no reference counterpart
    """
    if len(run.times) != len(ref.times) or not np.allclose(run.times, ref.times, rtol=0.0, atol=1e-12):
        raise ConfigError(f"mismatched sampling: {len(run.times)} samples vs {len(ref.times)} in the reference",
                          key="stride")
    dt_sample = run.sample_step
    e_eta = E_eta = e_phi = E_phi = None
    if run.eta is not None and ref.eta is not None:
        idx = align_nodes(run.eta_x, ref.eta_x)
        e_eta = relative_error_series(run.eta, ref.eta[:, idx])
        E_eta = time_integral(e_eta, dt_sample)
    if run.phi is not None and ref.phi is not None:
        idx = align_nodes(run.phi_xy, ref.phi_xy)
        e_phi = relative_error_series(run.phi, ref.phi[:, idx])
        E_phi = time_integral(e_phi, dt_sample)
    return ErrorSummary(times=run.times, e_eta=e_eta, e_phi=e_phi, E_eta=E_eta, E_phi=E_phi)


def attach_errors(run, ref):
    summary = compute_errors(run, ref)
    run.e_eta, run.e_phi = summary.e_eta, summary.e_phi
    run.metadata['E_eta'] = summary.E_eta
    run.metadata['E_phi'] = summary.E_phi
    return summary


def compute_energies(system, states, x_interval=None):
    """
    Surface and basin energies of a sequence of states.

    Returns:
        (E_surface, E_basin) arrays, one value per state
    """
    pairs = [system.energies(s.u, s.v, x_interval) for s in states]
    if not pairs:
        return np.empty(0), np.empty(0)
    E_surface, E_basin = zip(*pairs)
    return np.asarray(E_surface), np.asarray(E_basin)


def energy_ratios(record, t_ref):
    """E(T) / E(t_ref) for the surface and the basin; nan when E(t_ref) is zero."""
    out = {}
    for name in ('E_surface', 'E_basin'):
        series = getattr(record, name)
        if series.size == 0:
            out[name] = float('nan')
            continue
        base = record.value_at(name, t_ref)
        out[name] = float(series[-1] / base) if base > 0.0 else float('nan')
    return out


def energy_grows(record, t_ref, factor=10.0):
    """True when E_basin exceeds factor times its value at t_ref after t_ref."""
    if record.E_basin.size == 0:
        return False
    base = record.value_at('E_basin', t_ref)
    after = record.E_basin[record.times > t_ref]
    return bool(after.size and base > 0.0 and after.max() > factor * base)


def energy_drift(record):
    """max_t |E(t) - E(0)| / E(0) of the total energy E = E_surface + E_basin."""
    total = record.E_surface + record.E_basin
    if total.size == 0 or total[0] == 0.0:
        return float('nan')
    return float(np.max(np.abs(total - total[0])) / total[0])
