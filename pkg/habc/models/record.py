"""
Recorded output of one simulation run
"""
from dataclasses import dataclass, field
from typing import Dict, Optional

import numpy as np


@dataclass
class RunRecord:
    """
    Time samples of energies and, when recorded, nodal fields.

    eta has shape (n_samples, n_surface_nodes) with coordinates eta_x;
    phi has shape (n_samples, n_window_nodes) with coordinates phi_xy.
    series holds further per-sample values such as sub-domain energies.
    """
    case_id: str
    times: np.ndarray = field(default_factory=lambda: np.empty(0))
    E_surface: np.ndarray = field(default_factory=lambda: np.empty(0))
    E_basin: np.ndarray = field(default_factory=lambda: np.empty(0))
    eta: Optional[np.ndarray] = None
    eta_x: Optional[np.ndarray] = None
    phi: Optional[np.ndarray] = None
    phi_xy: Optional[np.ndarray] = None
    e_eta: Optional[np.ndarray] = None
    e_phi: Optional[np.ndarray] = None
    series: Dict[str, np.ndarray] = field(default_factory=dict)
    snapshots: Dict[float, str] = field(default_factory=dict)
    metadata: dict = field(default_factory=dict)

    def __len__(self):
        return len(self.times)

    @property
    def is_empty(self):
        return len(self.times) == 0

    @property
    def has_errors(self):
        return self.e_eta is not None

    @property
    def sample_step(self):
        """Spacing of the time samples, 0 for fewer than two samples."""
        if len(self.times) < 2:
            return 0.0
        return float(self.times[1] - self.times[0])

    def check(self):
        """Time samples strictly increasing, energies nonnegative up to round-off."""
        if np.any(np.diff(self.times) <= 0.0):
            raise ValueError("record times must be strictly increasing")
        for name in ('E_surface', 'E_basin'):
            values = getattr(self, name)
            if values.size and values.min() < -1e-12 * max(1.0, float(np.abs(values).max())):
                raise ValueError(f"{name} has negative samples")
        return self

    def value_at(self, name, t):
        """Sample of a recorded series closest to time t."""
        series = self.series[name] if name in self.series else getattr(self, name)
        return float(series[int(np.argmin(np.abs(self.times - t)))])
