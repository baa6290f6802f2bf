"""Runs of small cases end to end: assembly, integration and metrics"""
import numpy as np
import pytest

from habc.errors import ConfigError
from habc.harness import (
    BenchmarkConfig,
    closed_basin_case,
    energy_drift,
    run_case,
    simulate,
    surface_bump_state,
    wave_benchmark,
)
from habc.harness.metrics import align_nodes
from habc.harness.runner import incompatibility_experiment, reference_case, run_with_reference
from habc.harness.studies import convergence_study, reduction_study


def test_closed_basin_conserves_energy(make_case, water_ste, testing_config):
    case = closed_basin_case(make_case(params=water_ste), T=1000 * 0.002)
    record = simulate(case, testing_config, record_fields=False, initial=surface_bump_state())
    assert len(record) == 1001
    assert record.E_surface[0] > 0.0
    assert record.E_basin.max() > 0.0
    assert energy_drift(record) < 1e-8


def test_forced_surface_is_mirror_symmetric(make_case, testing_config):
    record = run_case(make_case(T=0.01, T_excit=0.01), testing_config)
    mirror = align_nodes(-record.eta_x, record.eta_x)
    scale = np.abs(record.eta).max()
    assert scale > 0.0
    assert np.abs(record.eta - record.eta[:, mirror]).max() <= 1e-10 * scale


def test_energies_stay_nonnegative(make_case, water_ste, testing_config):
    record = run_case(make_case(params=water_ste, T=0.02), testing_config, stride=2)
    assert len(record) == 6
    assert record.metadata['active_terms'] == 2
    assert record.metadata['dimension'] > 45 + 9
    assert record.E_surface.min() >= 0.0 and record.E_basin.min() >= 0.0


def test_run_with_closed_reference(make_case, testing_config):
    case = make_case(l_ref=0.2, T=0.01, T_excit=0.01)
    assert not reference_case(case, testing_config).habc_sides
    record, reference = run_with_reference(case, testing_config)
    assert reference.case_id == "small-ref"
    assert record.has_errors
    assert len(record.e_eta) == len(record.times)
    assert 0.0 <= record.metadata['E_eta'] < 1.0
    assert np.isfinite(record.metadata['E_phi'])


def test_open_reference_uses_pade_sides(make_case, testing_config):
    case = make_case(l_ref=0.15, T=1.0, T_excit=0.02)
    ref = reference_case(case, testing_config)
    assert ref.habc_sides
    assert ref.pade_order == testing_config.PADE_ORDER_CAP
    assert ref.keep_fraction == 1.0
    assert ref.l == 0.15 and ref.l_ref is None


def test_incompatibility_needs_tension(make_case, testing_config):
    with pytest.raises(ConfigError) as exc:
        incompatibility_experiment(make_case(), testing_config)
    assert exc.value.key == "sigma"


def test_incompatibility_experiment_flags(make_case, water_ste, testing_config):
    compatible, incompatible = incompatibility_experiment(make_case(params=water_ste), testing_config)
    assert incompatible.case_id == "small-incompatible"
    assert 'unstable' in compatible.metadata and 'unstable' in incompatible.metadata
    assert compatible.eta is None


def test_wave_benchmark_error_falls_with_order(testing_config):
    results = wave_benchmark(app_config=testing_config)
    orders = BenchmarkConfig().orders
    assert set(results) == {'reference', 'first_order', *orders}
    errors = [results[order].metadata['E_phi'] for order in orders]
    assert all(np.isfinite(errors))
    assert all(later < earlier for earlier, later in zip(errors, errors[1:]))
    assert errors[0] < results['first_order'].metadata['E_phi']


@pytest.mark.slow
def test_convergence_study_rows(make_case, testing_config):
    case = make_case(l_ref=0.2, T=0.01, T_excit=0.01)
    rows = convergence_study(case, meshes=(0.05,), orders=(1, 2), config=testing_config)
    assert [(row['mesh'], row['order']) for row in rows] == [(0.05, 1), (0.05, 2)]
    assert all(row['E_eta'] >= 0.0 and np.isfinite(row['E_phi']) for row in rows)


def test_reduction_study_without_reference(make_case, testing_config):
    rows = reduction_study(make_case(T=0.01), orders=(8,), keep_fractions=(1.0, 0.25),
                           config=testing_config)
    assert [row['active_terms'] for row in rows] == [8, 2]
    assert all(row['E_eta'] is None for row in rows)
    assert all(row['E_surface_final'] >= 0.0 for row in rows)
