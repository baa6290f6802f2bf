"""
Recorders observing a run without touching its state.
"""
import logging
import os

import numpy as np

from ..fem.snapshot import write_snapshot

logger = logging.getLogger(__name__)


class Recorder:
    """Base recorder: start once, observe every step, sample at the run stride, finish once."""

    def start(self, system):
        pass

    def observe(self, step, state, system):
        pass

    def sample(self, state, system):
        pass

    def finish(self, record):
        pass


class EnergyRecorder(Recorder):
    """
    Surface and basin energies per sample.

    With x_interval the sub-domain energies go to record.series under
    'E_surface_<label>' and 'E_basin_<label>'.
    """

    def __init__(self, x_interval=None, label="sub"):
        self.x_interval = x_interval
        self.label = label
        self._surface = []
        self._basin = []

    def start(self, system):
        self._surface, self._basin = [], []

    def sample(self, state, system):
        E_surface, E_basin = system.energies(state.u, state.v, self.x_interval)
        self._surface.append(E_surface)
        self._basin.append(E_basin)

    def finish(self, record):
        surface, basin = np.asarray(self._surface), np.asarray(self._basin)
        if self.x_interval is None:
            record.E_surface, record.E_basin = surface, basin
        else:
            record.series[f"E_surface_{self.label}"] = surface
            record.series[f"E_basin_{self.label}"] = basin


class FieldRecorder(Recorder):
    """Nodal eta and phi at every sample, restricted to nodes with x in window."""

    def __init__(self, window=None, phi=True):
        self.window = window
        self.record_phi = phi
        self._eta, self._phi = [], []
        self._eta_nodes = self._phi_nodes = None

    def _select(self, x):
        if self.window is None:
            return np.arange(len(x))
        lo, hi = self.window
        return np.flatnonzero((x >= lo - 1e-12) & (x <= hi + 1e-12))

    def start(self, system):
        self._eta, self._phi = [], []
        self._system = system
        if system.eta_x is not None:
            self._eta_nodes = self._select(system.eta_x)
        self._phi_nodes = self._select(system.phi_xy[:, 0])

    def sample(self, state, system):
        eta = system.eta_part(state.u)
        if eta is not None:
            self._eta.append(eta[self._eta_nodes].copy())
        if self.record_phi:
            self._phi.append(system.phi_part(state.u)[self._phi_nodes].copy())

    def finish(self, record):
        system = self._system
        if self._eta_nodes is not None:
            record.eta = np.asarray(self._eta)
            record.eta_x = system.eta_x[self._eta_nodes]
        if self.record_phi:
            record.phi = np.asarray(self._phi)
            record.phi_xy = system.phi_xy[self._phi_nodes]


class SnapshotRecorder(Recorder):
    """Writes x,y,value CSVs of the requested fields at the requested times."""

    def __init__(self, times, directory, dt, fields=('eta',), digits=17):
        self.times = sorted(times)
        self.directory = directory
        self.dt = dt
        self.fields = tuple(fields)
        self.digits = digits
        self.paths = {}

    def observe(self, step, state, system):
        for target in self.times:
            if target in self.paths or abs(state.t - target) > 0.5 * self.dt:
                continue
            written = []
            for name in self.fields:
                if name == 'eta':
                    values = system.eta_part(state.u)
                    if values is None:
                        continue
                    coords = system.eta_x
                else:
                    values, coords = system.phi_part(state.u), system.phi_xy
                path = os.path.join(self.directory, f"snapshot_{name}_{target:.6f}.csv")
                written.append(write_snapshot(path, coords, values, self.digits))
            self.paths[target] = written[0] if len(written) == 1 else ";".join(written)
            logger.debug(f"Snapshot at t={state.t:.6f}: {written}")

    def finish(self, record):
        record.snapshots.update(self.paths)
