import math

from ..errors import ConfigError

# Relative tolerance used to decide that a length is a multiple of a step
MULTIPLE_RTOL = 1e-12


def require_positive(value, key):
    if not (value > 0.0 and math.isfinite(value)):
        raise ConfigError(f"{key} must be > 0, got {value}", key=key)
    return value


def divides(length, step, rtol=MULTIPLE_RTOL):
    """Number of steps in length, or None when length is not a multiple of step."""
    ratio = length / step
    count = round(ratio)
    if count < 1 or abs(ratio - count) > rtol * max(1.0, ratio):
        return None
    return int(count)


def element_count(length, step, key="h"):
    count = divides(length, step)
    if count is None:
        raise ConfigError(
            f"length {length!r} is not an integer multiple of the element size {step!r}", key=key
        )
    return count
