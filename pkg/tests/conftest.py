"""Make the unit fixtures visible to the integration tests too."""
from .unit.conftest import *  # noqa: F401,F403
