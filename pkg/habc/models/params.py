"""
Physical parameters of the coupled surface/basin model
"""
import math
from dataclasses import dataclass, replace
from typing import Optional

from ..errors import ConfigError
from .enums import CompatMode

# Relative tolerance on c_s * a_f == c_f * a_s
COMPAT_RTOL = 1e-12


@dataclass(frozen=True)
class PhysicalParams:
    """
    Material data and compatibility coefficients.

    a_s and a_f are filled from compat_mode when left as None and sigma > 0;
    without surface tension both default to one.
    """
    rho: float = 1000.0
    g: float = 9.81
    sigma: float = 0.0
    epsilon: float = 0.0
    c_f: float = 1.0
    a_s: Optional[float] = None
    a_f: Optional[float] = None
    compat_mode: CompatMode = CompatMode.A
    allow_incompatible: bool = False

    def __post_init__(self):
        object.__setattr__(self, 'compat_mode', CompatMode(self.compat_mode))
        self._validate_ranges()
        if self.a_s is None or self.a_f is None:
            if self.ste_enabled:
                from ..pade.compatibility import compatibility_coefficients
                a_s, a_f = compatibility_coefficients(self, self.compat_mode)
            else:
                a_s, a_f = 1.0, 1.0
            object.__setattr__(self, 'a_s', a_s if self.a_s is None else self.a_s)
            object.__setattr__(self, 'a_f', a_f if self.a_f is None else self.a_f)
        self._validate_compatibility()

    def _validate_ranges(self):
        for key in ('rho', 'g', 'c_f'):
            value = getattr(self, key)
            if not (value > 0.0 and math.isfinite(value)):
                raise ConfigError(f"{key} must be > 0, got {value}", key=key)
        for key in ('sigma', 'epsilon'):
            value = getattr(self, key)
            if not (value >= 0.0 and math.isfinite(value)):
                raise ConfigError(f"{key} must be >= 0, got {value}", key=key)
        if self.sigma > 0.0 and self.epsilon == 0.0:
            raise ConfigError(
                "sigma > 0 requires epsilon > 0 (surface celerity sqrt(sigma/(epsilon rho)) is undefined)",
                key="epsilon",
            )

    def _validate_compatibility(self):
        if not self.ste_enabled:
            return
        if self.a_s * self.a_f == 0.0:
            raise ConfigError("surface absorbing condition needs a_s * a_f != 0", key="a_s")
        lhs = self.c_s * self.a_f
        rhs = self.c_f * self.a_s
        if abs(lhs - rhs) > COMPAT_RTOL * max(abs(lhs), abs(rhs)) and not self.allow_incompatible:
            raise ConfigError(
                f"compatibility constraint c_s/a_s = c_f/a_f violated "
                f"(c_s*a_f={lhs:.6g}, c_f*a_s={rhs:.6g}); pass --allow-incompatible to force it",
                key="a_s",
            )

    @property
    def ste_enabled(self):
        """Surface tension makes the surface operator nonlocal."""
        return self.sigma > 0.0

    @property
    def c_s(self):
        if not self.ste_enabled:
            return None
        return math.sqrt(self.sigma / (self.epsilon * self.rho))

    @property
    def is_compatible(self):
        if not self.ste_enabled:
            return True
        lhs = self.c_s * self.a_f
        rhs = self.c_f * self.a_s
        return abs(lhs - rhs) <= COMPAT_RTOL * max(abs(lhs), abs(rhs))

    def incompatible_variant(self):
        """Same material with a_s = a_f = 1, used by the instability experiment."""
        return replace(self, a_s=1.0, a_f=1.0, allow_incompatible=True)

    def with_values(self, **changes):
        """Copy with changes; coefficients are recomputed unless given."""
        changes.setdefault('a_s', None)
        changes.setdefault('a_f', None)
        return replace(self, **changes)

    def to_dict(self):
        return {
            'rho': self.rho,
            'g': self.g,
            'sigma': self.sigma,
            'epsilon': self.epsilon,
            'c_f': self.c_f,
            'a_s': self.a_s,
            'a_f': self.a_f,
            'compat_mode': self.compat_mode.value,
        }


def phase_speed(k, params):
    """
    Deep-water phase speed of surface waves with tension and added mass.

    C_p(k) = sqrt((g/k + sigma k / rho) / (1 + epsilon k))
    """
    if k <= 0.0:
        raise ConfigError(f"wavenumber must be > 0, got {k}", key="k")
    return math.sqrt((params.g / k + params.sigma * k / params.rho) / (1.0 + params.epsilon * k))
