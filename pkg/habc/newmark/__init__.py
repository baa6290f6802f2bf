from .integrator import (
    NewmarkParams,
    State,
    effective_matrix,
    initial_acceleration,
    newmark_step,
    run,
)
from .recorders import EnergyRecorder, FieldRecorder, Recorder, SnapshotRecorder
