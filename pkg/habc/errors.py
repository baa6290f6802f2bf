"""
Exception hierarchy shared by every module.
The command line maps ConfigError to exit code 2 and NumericalError to 3.
"""


class HabcError(Exception):
    """Base class for simulator errors"""


class ConfigError(HabcError, ValueError):
    """Invalid input: names the offending key and the violated constraint"""

    def __init__(self, message, key=None):
        super().__init__(message)
        self.key = key


class NumericalError(HabcError, RuntimeError):
    """Solver or time-integration failure"""


class SingularMatrixError(NumericalError):
    """Factorization hit a structurally or numerically singular matrix"""

    def __init__(self, message, row=None):
        super().__init__(message)
        self.row = row
