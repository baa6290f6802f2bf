"""
Compatibility coefficients joining the surface and basin absorbing conditions.

Both conditions must share one speed ratio: c_s / a_s = c_f / a_f.
"""
import math

from ..errors import ConfigError
from ..models.enums import CompatMode


def surface_celerity(sigma, epsilon, rho):
    """c_s = sqrt(sigma / (epsilon rho)); requires sigma > 0 and epsilon > 0."""
    if sigma <= 0.0 or epsilon <= 0.0:
        raise ConfigError(
            f"surface celerity needs sigma > 0 and epsilon > 0 (sigma={sigma}, epsilon={epsilon})",
            key="sigma",
        )
    return math.sqrt(sigma / (epsilon * rho))


def compatibility_coefficients(params, mode=CompatMode.A):
    """
    Pick (a_s, a_f) satisfying c_s / a_s = c_f / a_f.

    Args:
        params: object with rho, sigma, epsilon and c_f
        mode: 'a' (a_f = 1) or 'b' (a_s = 1)

    Returns:
        tuple (a_s, a_f)
    """
    mode = CompatMode(mode)
    if params.sigma <= 0.0:
        raise ConfigError(
            "compatibility coefficients are undefined without surface tension; "
            "disable the surface absorbing condition instead",
            key="sigma",
        )
    if params.c_f <= 0.0:
        raise ConfigError(f"c_f must be > 0, got {params.c_f}", key="c_f")
    c_s = surface_celerity(params.sigma, params.epsilon, params.rho)
    if mode is CompatMode.A:
        return c_s / params.c_f, 1.0
    return 1.0, params.c_f / c_s
