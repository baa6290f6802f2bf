"""
Coupled surface/basin wave simulator with Padé-type absorbing boundaries.
"""
import logging
import os

from .config import config_by_name

__version__ = "0.1.0"

LOG_FORMAT = "%(asctime)s %(levelname)s %(name)s: %(message)s"


def create_config(config_name=None):
    """
    Resolve the active profile configuration.

    Args:
        config_name: 'desk', 'paper' or 'testing'; defaults to $HABC_PROFILE

    Returns:
        The configuration class for the profile
    """
    config_name = config_name or os.environ.get("HABC_PROFILE", "desk")
    try:
        return config_by_name[config_name]
    except KeyError:
        from .errors import ConfigError
        raise ConfigError(
            f"unknown profile '{config_name}' (expected one of {sorted(config_by_name)})",
            key="profile",
        )


def configure_logging(config):
    """Install one stream handler on the package logger."""
    logger = logging.getLogger("habc")
    level = getattr(logging, str(config.LOG_LEVEL).upper(), logging.INFO)
    logger.setLevel(level)
    if not any(getattr(h, "_habc", False) for h in logger.handlers):
        handler = logging.StreamHandler()
        handler.setFormatter(logging.Formatter(LOG_FORMAT))
        handler._habc = True
        logger.addHandler(handler)
    return logger
