"""
Command implementations behind the click front end.

Each command takes the effective RunConfig plus its own options and writes
its outputs under config.out. dispatch() maps failures onto exit codes.
"""
import logging
import os
from dataclasses import replace

import numpy as np

from ..errors import ConfigError, NumericalError
from ..harness.benchmark import BenchmarkConfig, benchmark_table, wave_benchmark
from ..harness.runner import incompatibility_experiment, run_case, run_reference, run_with_reference
from ..harness.studies import (
    REDUCTION_COLUMNS,
    STUDY_COLUMNS,
    TIME_STEP_COLUMNS,
    convergence_study,
    mesh_sequence,
    reduction_study,
    small_time_step_study,
)
from ..models.enums import CornerMode
from ..pade.coefficients import pade_error_table, threshold_counts
from .config_loader import DEFAULT as DEFAULT_SOURCE
from .config_loader import to_toml
from .output import write_energies, write_errors, write_summary, write_table
from .plots import emit_line_plot

logger = logging.getLogger(__name__)

EXIT_OK = 0
EXIT_CONFIG = 2
EXIT_NUMERICAL = 3

DEFAULT_TABLE_ORDERS = (4, 8, 16, 32, 64, 128, 256, 512, 1024)
DEFAULT_THRESHOLDS = (1.0, 10.0, 100.0)
DEFAULT_ERROR_ORDERS = (4, 8, 16, 32, 64, 128, 256, 512, 1024)
DEFAULT_XMAX = 100.0
DEFAULT_POINTS = 201

BENCH_COLUMNS = ('order', 'E_phi', 'residual_energy')
STUDY_KINDS = ('convergence', 'reduction', 'time-step')
# Case keys bench-wave maps onto BenchmarkConfig
BENCH_KEYS = ('order', 'h', 'dt', 'T', 'p', 'c_f', 'corner')


def _path(config, name):
    return os.path.join(config.out, name)


def _write_config(config):
    path = _path(config, 'run.toml')
    os.makedirs(config.out, exist_ok=True)
    with open(path, 'w') as handle:
        handle.write(to_toml(config))
    return path


def _run_options(config):
    options = {'stride': config.stride}
    if config.dump_system:
        options['dump_dir'] = config.dump_system
    if config.snapshot_times:
        options['snapshot_times'] = config.snapshot_times
        options['snapshot_dir'] = _path(config, 'snapshots')
    return options


def run_command(config, no_reference=False):
    """Case run; with a reference domain also its errors."""
    case = config.build_case()
    app_config = config.app_config
    digits = app_config.CSV_DIGITS
    options = _run_options(config)
    _write_config(config)
    if no_reference or case.l_ref is None:
        record = run_case(case, app_config, **options)
    else:
        record, _ = run_with_reference(case, app_config, **options)
    outputs = [write_energies(_path(config, 'energies.csv'), record, digits)]
    if record.has_errors:
        outputs.append(write_errors(_path(config, 'errors.csv'), record, digits))
    outputs.append(write_summary(_path(config, 'summary.csv'), [record], digits))
    return outputs


def reference_command(config):
    case = config.build_case()
    app_config = config.app_config
    _write_config(config)
    record = run_reference(case, app_config, **_run_options(config))
    return [write_energies(_path(config, 'energies_reference.csv'), record, app_config.CSV_DIGITS)]


def compare_command(config, factor=10.0):
    """Compatible coefficients against a_s = a_f = 1 on the same case."""
    case = config.build_case()
    app_config = config.app_config
    digits = app_config.CSV_DIGITS
    _write_config(config)
    options = _run_options(config)
    options.pop('dump_dir', None)
    compatible, incompatible = incompatibility_experiment(case, app_config, factor=factor, **options)
    return [
        write_energies(_path(config, 'energies_compatible.csv'), compatible, digits),
        write_energies(_path(config, 'energies_incompatible.csv'), incompatible, digits),
        write_summary(_path(config, 'summary.csv'), [compatible, incompatible], digits),
    ]


def study_command(config, kind='convergence', orders=None, keep_fractions=None, meshes=None,
                  levels=3, variants=None):
    if kind not in STUDY_KINDS:
        raise ConfigError(f"study kind must be one of {STUDY_KINDS}, got '{kind}'", key="kind")
    app_config = config.app_config
    digits = app_config.CSV_DIGITS
    _write_config(config)
    if kind == 'time-step':
        if config.source('case') != DEFAULT_SOURCE:
            raise ConfigError("the time-step study runs the obstacle variants; pick them with --variants",
                              key="case")
        rows, records = small_time_step_study(app_config, variants=variants, stride=config.stride,
                                              interpretation=config.obstacle_axes,
                                              build=config.build_variant)
        outputs = [write_table(_path(config, 'time_step.csv'), TIME_STEP_COLUMNS, rows, digits)]
        for variant, record in records.items():
            outputs.append(write_energies(_path(config, f"energies_special-{variant}.csv"), record, digits))
        return outputs

    case = config.build_case()
    if kind == 'convergence':
        orders = tuple(orders or (2, 4, 8, 16, 32))
        meshes = meshes or mesh_sequence(case.h, levels)
        rows = convergence_study(case, meshes, orders, app_config, stride=config.stride)
        return [write_table(_path(config, 'study.csv'), STUDY_COLUMNS, rows, digits)]

    orders = tuple(orders or (case.pade_order,))
    keep_fractions = tuple(keep_fractions or (1.0, case.keep_fraction))
    rows = reduction_study(case, orders, keep_fractions, app_config, stride=config.stride)
    return [write_table(_path(config, 'reduction.csv'), REDUCTION_COLUMNS, rows, digits)]


def bench_config(config, orders=None):
    """BenchmarkConfig from the case overrides; --orders wins over a single --order."""
    if config.source('case') != DEFAULT_SOURCE:
        raise ConfigError("bench-wave runs its own box problem and takes no --case", key="case")
    changes = {'stride': config.stride}
    for key, value in config.overrides.items():
        if key not in BENCH_KEYS:
            raise ConfigError(f"bench-wave does not use '{key}' (accepted: {', '.join(BENCH_KEYS)})",
                              key=key)
        if key == 'order':
            changes['orders'] = (value,)
        elif key == 'corner':
            changes['corner'] = CornerMode(value)
        else:
            changes[key] = value
    if orders:
        changes['orders'] = tuple(orders)
    return replace(BenchmarkConfig(), **changes)


def bench_wave_command(config, orders=None):
    app_config = config.app_config
    results = wave_benchmark(bench_config(config, orders), app_config)
    rows = benchmark_table(results)
    return [write_table(_path(config, 'bench_wave.csv'), BENCH_COLUMNS, rows, app_config.CSV_DIGITS)]


def pade_table_command(config, orders=None, thresholds=None):
    orders = tuple(orders or DEFAULT_TABLE_ORDERS)
    thresholds = tuple(thresholds or DEFAULT_THRESHOLDS)
    columns = ('N',) + tuple(f"count_gt_{tau:g}" for tau in thresholds)
    rows = []
    for N in orders:
        row = {'N': N}
        row.update(zip(columns[1:], threshold_counts(N, thresholds)))
        rows.append(row)
    return [write_table(_path(config, 'pade_table.csv'), columns, rows, config.app_config.CSV_DIGITS)]


def pade_error_command(config, orders=None, xmax=DEFAULT_XMAX, points=DEFAULT_POINTS):
    if points < 2:
        raise ConfigError(f"points must be >= 2, got {points}", key="points")
    orders = tuple(orders or DEFAULT_ERROR_ORDERS)
    x_grid = np.linspace(0.0, xmax, points)
    table = pade_error_table(orders, x_grid)
    columns = ('X',) + tuple(f"N{N}" for N in orders)
    rows = []
    for j, x in enumerate(x_grid):
        row = {'X': float(x)}
        row.update({column: float(table[i, j]) for i, column in enumerate(columns[1:])})
        rows.append(row)
    return [write_table(_path(config, 'pade_error.csv'), columns, rows, config.app_config.CSV_DIGITS)]


def plot_command(config, csv_path=None, columns=None, x=None, log=False, title=None, output=None):
    if not csv_path:
        raise ConfigError("plot needs a CSV file", key="csv")
    return [emit_line_plot(csv_path, columns=columns, x=x, log=log, title=title, output=output)]


COMMANDS = {
    'run': run_command,
    'reference': reference_command,
    'compare': compare_command,
    'study': study_command,
    'bench-wave': bench_wave_command,
    'pade-table': pade_table_command,
    'pade-error': pade_error_command,
    'plot': plot_command,
}


def dispatch(command, config, **options):
    """
    Run one command.

    Returns:
        exit status: 0 on success, 2 on a configuration error, 3 on a numerical failure
    """
    handler = COMMANDS.get(command)
    if handler is None:
        logger.error(f"Unknown command '{command}' (expected one of {sorted(COMMANDS)})")
        return EXIT_CONFIG
    try:
        outputs = handler(config, **options)
    except ConfigError as e:
        logger.error(f"Invalid configuration ({e.key}): {str(e)}")
        return EXIT_CONFIG
    except NumericalError as e:
        logger.error(f"Numerical failure in '{command}': {str(e)}")
        return EXIT_NUMERICAL
    logger.info(f"{command}: wrote {len(outputs)} file(s) to {config.out}")
    return EXIT_OK
