"""Linearity, stability, reduction accuracy and reproducibility of small runs"""
import filecmp

import numpy as np
import pytest

from habc.cli.output import write_energies, write_errors, write_summary
from habc.harness import apply_profile, get_case, run_case, run_reference
from habc.harness.runner import run_with_reference


def test_fields_are_linear_in_amplitude(make_case, water_ste, testing_config):
    case = make_case(params=water_ste, T=0.02)
    single = run_case(case, testing_config)
    double = run_case(case.with_overrides(A=2.0 * case.A), testing_config)
    assert np.abs(single.eta).max() > 0.0
    assert np.abs(double.eta - 2.0 * single.eta).max() <= 1e-10 * np.abs(double.eta).max()
    assert np.abs(double.phi - 2.0 * single.phi).max() <= 1e-10 * np.abs(double.phi).max()
    assert double.E_surface == pytest.approx(4.0 * single.E_surface, rel=1e-9, abs=1e-300)


@pytest.mark.parametrize("tension", [False, True])
@pytest.mark.parametrize("dt", [0.002, 0.008])
def test_energy_stays_bounded_and_decays(make_case, water_ste, testing_config, dt, tension):
    params = water_ste if tension else None
    case = make_case(params=params, pade_order=8, dt=dt, T=1.0, T_excit=0.02)
    record = run_case(case, testing_config, record_fields=False)
    total = record.E_surface + record.E_basin
    assert np.all(np.isfinite(total))
    forced = record.times <= case.T_excit + dt
    peak = total[forced].max()
    assert peak > 0.0
    assert total[~forced].max() <= 10.0 * peak
    assert total[-1] < total[~forced][0]


@pytest.mark.slow
def test_reduced_case_decays_and_matches_full_set(testing_config):
    """Case 211 at desk scale; takes minutes."""
    case = apply_profile(get_case('211'), testing_config)
    reference = run_reference(case, testing_config)
    reduced, _ = run_with_reference(case, testing_config, reference=reference)
    full, _ = run_with_reference(case.with_overrides(keep_fraction=1.0), testing_config,
                                 reference=reference)
    assert reduced.metadata['active_terms'] == 61

    after = reduced.times > case.T_excit
    for series in (reduced.E_surface[after], reduced.E_basin[after]):
        assert np.all(np.diff(series) <= 1e-10 * series[:-1])
    assert reduced.E_surface[-1] < 1e-3 * reduced.E_surface.max()
    assert 0.5 <= reduced.metadata['E_eta'] / full.metadata['E_eta'] <= 2.0


def test_tables_are_byte_identical(make_case, water_ste, testing_config, tmp_path):
    case = make_case(params=water_ste, l_ref=0.2, T=0.01, T_excit=0.01)
    for name in ('first', 'second'):
        record, _ = run_with_reference(case, testing_config)
        write_energies(str(tmp_path / name / "energies.csv"), record)
        write_errors(str(tmp_path / name / "errors.csv"), record)
        write_summary(str(tmp_path / name / "summary.csv"), [record])
    for table in ("energies.csv", "errors.csv", "summary.csv"):
        assert filecmp.cmp(tmp_path / "first" / table, tmp_path / "second" / table, shallow=False)
