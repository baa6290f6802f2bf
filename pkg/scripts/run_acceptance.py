"""
Desk-scale acceptance runs (minutes each, not part of the unit suite).

Usage:
    python scripts/run_acceptance.py                 # every check
    python scripts/run_acceptance.py pade closed     # selected checks
"""
import sys
import os
import filecmp
import tempfile
import time

# Add parent directory to path
sys.path.insert(0, os.path.dirname(os.path.dirname(os.path.abspath(__file__))))

import numpy as np

from habc import configure_logging, create_config
from habc.cli.output import write_energies
from habc.harness import (
    BenchmarkConfig,
    attach_errors,
    closed_basin_case,
    energy_drift,
    get_case,
    apply_profile,
    run_case,
    run_reference,
    simulate,
    surface_bump_state,
    wave_benchmark,
)
from habc.harness.metrics import align_nodes
from habc.pade import build_pade_set, pade_sqrt, threshold_counts

ORDERS = (2, 4, 8, 16, 32)


def _non_increasing(values, rtol=1e-6, atol=1e-12):
    return all(b <= a * (1.0 + rtol) + atol for a, b in zip(values, values[1:]))


def check_pade():
    """Threshold table rows and convergence of the square-root approximant at X = 100"""
    table_ok = (threshold_counts(1024, (1, 10, 100)) == [512, 200, 65]
                and threshold_counts(8, (1, 10, 100)) == [4, 2, 1])
    err8 = abs(pade_sqrt(build_pade_set(8), 100.0) - np.sqrt(101.0))
    err128 = abs(pade_sqrt(build_pade_set(128), 100.0) - np.sqrt(101.0))
    exact_at_zero = all(pade_sqrt(build_pade_set(2 ** k), 0.0) == 1.0 for k in range(11))
    return table_ok and err128 < err8 and exact_at_zero, f"error(8)={err8:.3e} error(128)={err128:.3e}"


def _closed_basin(config):
    case = apply_profile(get_case('11'), config)
    case = closed_basin_case(case, T=1000 * case.dt)
    return simulate(case, config, record_fields=False, initial=surface_bump_state())


def check_closed(config):
    """Energy drift of the closed basin over 1000 steps"""
    drift = energy_drift(_closed_basin(config))
    return drift < 1e-8, f"relative drift {drift:.3e}"


def check_wave(config):
    """Wave benchmark errors decrease with the order"""
    results = wave_benchmark(BenchmarkConfig(), config)
    errors = [results[order].metadata['E_phi'] for order in BenchmarkConfig().orders]
    baseline = results['first_order'].metadata['E_phi']
    ok = all(b < a for a, b in zip(errors, errors[1:]))
    return ok, f"E_phi by order {errors}, first-order {baseline:.3e}"


def _order_sweep(case_id, config, orders=ORDERS):
    case = apply_profile(get_case(case_id), config)
    reference = run_reference(case, config, order=max(orders))
    records = {}
    for order in orders:
        record = run_case(case.with_overrides(pade_order=order), config)
        attach_errors(record, reference)
        records[order] = record
    return records


def _mirror_error(record):
    mirror = align_nodes(-record.eta_x, record.eta_x)
    scale = np.max(np.abs(record.eta))
    return float(np.max(np.abs(record.eta - record.eta[:, mirror])) / scale) if scale > 0 else 0.0


def check_case1(config):
    """E_eta non-increasing in the order, small at order 32, mirror-symmetric surface"""
    records = _order_sweep('1', config)
    errors = [records[order].metadata['E_eta'] for order in ORDERS]
    mirror = _mirror_error(records[ORDERS[-1]])
    ok = _non_increasing(errors) and errors[-1] <= 1e-3 and mirror < 1e-10
    return ok, f"E_eta {errors}, mirror {mirror:.2e}"


def check_tension(config):
    """Cases 11 and 12 converge in the order; eps 1e-9 and 1e-6 energies merge"""
    details, ok = [], True
    for case_id in ('11', '12'):
        errors = [r.metadata['E_eta'] for r in _order_sweep(case_id, config).values()]
        ok = ok and _non_increasing(errors)
        details.append(f"{case_id}: {errors}")
    case = apply_profile(get_case('12'), config)
    small = run_case(case, config, record_fields=False)
    larger = run_case(case.with_overrides(id='12-eps1e-6', epsilon=1e-6), config, record_fields=False)
    gap = float(np.max(np.abs(small.E_surface - larger.E_surface)) / np.max(np.abs(small.E_surface)))
    details.append(f"eps merge {gap:.2e}")
    return ok and gap < 1e-6, "; ".join(details)


def check_reduction(config):
    """Case 211 with 6 % of the terms: decaying energies, errors close to the full set"""
    case = apply_profile(get_case('211'), config)
    reference = run_reference(case, config)
    reduced = run_case(case, config)
    full = run_case(case.with_overrides(keep_fraction=1.0), config)
    attach_errors(reduced, reference)
    attach_errors(full, reference)
    after = reduced.times > case.T_excit
    surface = reduced.E_surface[after]
    basin = reduced.E_basin[after]
    decays = all(np.all(np.diff(s) <= 1e-10 * s[:-1]) for s in (surface, basin))
    ratio = reduced.E_surface[-1] / reduced.E_surface.max()
    factor = reduced.metadata['E_eta'] / full.metadata['E_eta']
    ok = decays and ratio < 1e-3 and 0.5 <= factor <= 2.0
    return ok, f"final/max surface energy {ratio:.2e}, E_eta ratio reduced/full {factor:.3f}"


def check_determinism(config):
    """Two identical runs write byte-identical CSVs"""
    with tempfile.TemporaryDirectory() as tmp:
        paths = []
        for k in range(2):
            path = os.path.join(tmp, f"energies_{k}.csv")
            write_energies(path, _closed_basin(config), config.CSV_DIGITS)
            paths.append(path)
        same = filecmp.cmp(paths[0], paths[1], shallow=False)
    return same, "identical" if same else "outputs differ"


CHECKS = {
    'pade': lambda config: check_pade(),
    'closed': check_closed,
    'wave': check_wave,
    'case1': check_case1,
    'tension': check_tension,
    'reduction': check_reduction,
    'determinism': check_determinism,
}


def main(names=None):
    """Run the named checks; return the number of failures"""
    config = create_config()
    configure_logging(config)
    failures = 0
    for name in names or CHECKS:
        if name not in CHECKS:
            print(f"✗ Unknown check '{name}' (expected one of {', '.join(CHECKS)})")
            failures += 1
            continue
        start = time.perf_counter()
        ok, detail = CHECKS[name](config)
        mark = "✓" if ok else "✗"
        print(f"{mark} {name}: {detail} ({time.perf_counter() - start:.1f}s)")
        failures += 0 if ok else 1
    return failures


if __name__ == "__main__":
    sys.exit(1 if main(sys.argv[1:]) else 0)
