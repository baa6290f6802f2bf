"""
Case specification: geometry, excitation, discretization and boundary options
"""
from __future__ import annotations

import hashlib
import json
from dataclasses import asdict, dataclass, field, replace
from typing import TYPE_CHECKING, Optional

from ..errors import ConfigError
from .enums import AbcKind, CornerMode
from .params import PhysicalParams

if TYPE_CHECKING:
    from ..fem.grid import EllipseMask


@dataclass(frozen=True)
class CaseSpec:
    """
    One computational case.

    The truncated domain is [-l, l] x [-depth, 0]; the reference domain, when
    requested, is [-l_ref, l_ref] x [-depth, 0].
    """
    id: str
    params: PhysicalParams
    T: float
    l: float = 0.1
    l_ref: Optional[float] = None
    depth: Optional[float] = None

    # Excitation
    T_e: float = 0.1
    T_excit: float = 0.1
    A: float = 1000.0
    n_f: int = 20
    x0: float = 0.0

    # Discretization
    h: float = 0.0025
    dt: float = 0.002
    p: int = 4

    # Absorbing boundaries
    pade_order: int = 32
    keep_fraction: float = 1.0
    habc_sides: bool = True
    habc_bottom: bool = True
    abc_kind: AbcKind = AbcKind.PADE
    corner: CornerMode = CornerMode.ODE

    obstacle: Optional["EllipseMask"] = None
    description: str = field(default="", compare=False)

    def __post_init__(self):
        object.__setattr__(self, 'abc_kind', AbcKind(self.abc_kind))
        object.__setattr__(self, 'corner', CornerMode(self.corner))
        if self.depth is None:
            object.__setattr__(self, 'depth', self.l)
        self.validate()

    def validate(self):
        positive = {'T': self.T, 'l': self.l, 'depth': self.depth, 'T_e': self.T_e,
                    'T_excit': self.T_excit, 'h': self.h, 'dt': self.dt}
        for key, value in positive.items():
            if not value > 0.0:
                raise ConfigError(f"{key} must be > 0, got {value}", key=key)
        if self.T_excit > self.T:
            raise ConfigError(f"T_excit ({self.T_excit}) must not exceed T ({self.T})", key="T_excit")
        if self.l_ref is not None and self.l_ref < self.l:
            raise ConfigError(f"l_ref ({self.l_ref}) must be >= l ({self.l})", key="l_ref")
        if not 1 <= self.p <= 4:
            raise ConfigError(f"p must lie in 1..4, got {self.p}", key="p")
        if self.pade_order < 1:
            raise ConfigError(f"order must be >= 1, got {self.pade_order}", key="order")
        if not 0.0 < self.keep_fraction <= 1.0:
            raise ConfigError(f"keep_fraction must lie in (0, 1], got {self.keep_fraction}",
                              key="keep_fraction")
        if self.n_f < 1:
            raise ConfigError(f"n_f must be >= 1, got {self.n_f}", key="n_f")
        if (self.habc_bottom and not self.habc_sides and self.corner is CornerMode.ODE
                and self.abc_kind is AbcKind.PADE):
            raise ConfigError("bottom absorbing condition with corner ODEs needs the lateral one",
                              key="habc_bottom")

    @property
    def n_steps(self):
        return int(round(self.T / self.dt))

    @property
    def has_reference(self):
        return self.l_ref is not None

    def with_overrides(self, **changes):
        """Copy with changes; physical keys are routed to params."""
        physical = {k: changes.pop(k) for k in list(changes) if k in _PHYSICAL_KEYS}
        params = self.params
        if physical:
            params = params.with_values(**physical)
        return replace(self, params=params, **changes)

    def to_dict(self):
        data = asdict(self)
        data['params'] = self.params.to_dict()
        data['abc_kind'] = self.abc_kind.value
        data['corner'] = self.corner.value
        if self.obstacle is not None:
            data['obstacle'] = {'center': list(self.obstacle.center),
                                'semi_axes': list(self.obstacle.semi_axes)}
        data.pop('description', None)
        return data

    def config_hash(self):
        """Short content hash of the case, stored in run metadata."""
        payload = json.dumps(self.to_dict(), sort_keys=True, default=str)
        return hashlib.sha256(payload.encode('utf-8')).hexdigest()[:12]


_PHYSICAL_KEYS = {'rho', 'g', 'sigma', 'epsilon', 'c_f', 'a_s', 'a_f', 'compat_mode',
                  'allow_incompatible'}
