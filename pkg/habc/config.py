import os


class BaseConfig:
    LOG_LEVEL = os.environ.get("HABC_LOG_LEVEL", "INFO")
    OUTPUT_DIR = os.environ.get("HABC_OUTPUT_DIR", "out")
    THREADS = int(os.environ.get("HABC_THREADS", 1))
    CSV_DIGITS = 17

    # Newmark defaults (average acceleration)
    NEWMARK_GAMMA = 0.5
    NEWMARK_BETA = 0.25

    # Element size override; None keeps the case value
    ELEMENT_SIZE = None
    # Candidate sizes tried in order when ELEMENT_SIZE does not divide the geometry
    ELEMENT_SIZE_FALLBACKS = ()
    PADE_ORDER_CAP = None

    # Maximum order used by references that carry an absorbing boundary
    REFERENCE_ORDER = 1024

    # "direct" (SuperLU) or "krylov" (ILU-preconditioned GMRES)
    SOLVER_METHOD = os.environ.get("HABC_SOLVER", "direct")
    SOLVER_ORDERING = "COLAMD"
    KRYLOV_RTOL = 1e-12


class DeskConfig(BaseConfig):
    """Laptop-sized runs: coarser mesh, capped Padé order."""
    NAME = "desk"
    ELEMENT_SIZE = 0.01
    ELEMENT_SIZE_FALLBACKS = (0.005, 0.0025)
    PADE_ORDER_CAP = 1024


class PaperConfig(BaseConfig):
    NAME = "paper"
    REFERENCE_ORDER = 1024


class TestingConfig(DeskConfig):
    NAME = "testing"
    TESTING = True
    LOG_LEVEL = "WARNING"
    THREADS = 1


config_by_name = {
    "desk": DeskConfig,
    "paper": PaperConfig,
    "testing": TestingConfig,
}
