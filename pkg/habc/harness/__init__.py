from .excitation import excitation_value, mode_weights, surface_forcing
from .catalog import (
    PARAMETER_PRESETS,
    SPECIAL_VARIANTS,
    apply_profile,
    case_catalog,
    get_case,
    parameter_preset,
    special_case,
)
from .metrics import (
    ErrorSummary,
    attach_errors,
    compute_energies,
    compute_errors,
    energy_drift,
    energy_grows,
    energy_ratios,
)
from .runner import (
    incompatibility_experiment,
    reference_case,
    reference_is_closed,
    run_case,
    run_reference,
    run_with_reference,
    simulate,
)
from .benchmark import (
    BenchmarkConfig,
    benchmark_table,
    closed_basin_case,
    pulse_state,
    surface_bump_state,
    wave_benchmark,
)
from .studies import convergence_study, reduction_study, small_time_step_study
