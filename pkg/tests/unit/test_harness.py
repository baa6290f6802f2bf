"""Catalog, excitation and the error/energy metrics"""
import numpy as np
import pytest

from habc import create_config
from habc.errors import ConfigError
from habc.harness import apply_profile, get_case
from habc.harness.catalog import case_catalog, parameter_preset, pick_element_size, special_case
from habc.harness.excitation import mode_weights, surface_forcing
from habc.harness.metrics import (
    align_nodes,
    attach_errors,
    compute_errors,
    energy_drift,
    energy_grows,
    energy_ratios,
    relative_error_series,
    time_integral,
)
from habc.models import RunRecord


def test_table_cases():
    case = get_case('1')
    assert case.params.c_f == 1.0 and case.params.sigma == 0.0
    assert (case.T, case.l_ref, case.pade_order) == (1.5, 1.0, 32)
    assert case.depth == 0.1 and case.p == 4
    tension = get_case('12')
    assert tension.params.epsilon == 1e-9 and tension.params.is_compatible
    reduced = get_case('211')
    assert (reduced.params.c_f, reduced.pade_order, reduced.keep_fraction) == (100.0, 1024, 0.06)
    assert get_case(311).l_ref is None


def test_special_variants():
    b = get_case('special-b')
    assert b.dt == pytest.approx(0.001)
    assert b.keep_fraction == 0.001
    assert b.depth == pytest.approx(0.025)
    assert b.obstacle.semi_axes == (0.01, 0.005)
    assert b.x0 == pytest.approx(-0.05)
    assert case_catalog()['special'] == get_case('special-a')
    assert special_case('d', 'full').obstacle.semi_axes == (0.005, 0.0025)
    with pytest.raises(ConfigError):
        special_case('e')


def test_unknown_case_and_preset():
    with pytest.raises(ConfigError) as exc:
        get_case('7')
    assert exc.value.key == "case"
    with pytest.raises(ConfigError) as exc:
        parameter_preset('mercury')
    assert exc.value.key == "preset"
    assert parameter_preset('helium-2').c_f == 20.0


def test_desk_profile_keeps_divisible_size():
    case = apply_profile(get_case('1'), create_config('desk'))
    assert case.h == 0.01
    assert case.pade_order == 32


def test_desk_profile_falls_back_and_caps():
    case = apply_profile(get_case('special-a'), create_config('desk'))
    assert case.h == 0.005
    assert case.pade_order == 1024


def test_paper_profile_is_identity():
    case = get_case('211')
    assert apply_profile(case, create_config('paper')) is case


def test_no_dividing_size(make_case):
    with pytest.raises(ConfigError) as exc:
        pick_element_size(make_case(l=0.1, depth=0.03), (0.02, 0.04))
    assert exc.value.key == "h"


def test_mode_weights():
    weights = mode_weights(20)
    assert weights[0] == 1.0
    assert np.all(np.diff(weights) < 0.0)
    assert weights[-1] == pytest.approx(np.exp(-10.0 * (19 / 20) ** 2))


def test_forcing_window_and_envelope(make_case):
    case = make_case(T_excit=0.01, T=0.02, x0=0.02)
    forcing = surface_forcing(case)
    x = np.linspace(-0.1, 0.1, 41)
    assert not forcing(x, 0.0).any()
    active = forcing(x, 0.004)
    assert np.abs(active).argmax() == np.argmin(np.abs(x - 0.02))
    assert not forcing(x, 0.0101).any()
    assert isinstance(forcing(0.02, 0.004), float)


def test_forcing_envelope_length_is_kept(make_case):
    case = make_case()
    narrow, wide = surface_forcing(case), surface_forcing(case, length=0.5)
    assert abs(narrow(0.05, 0.005)) < abs(wide(0.05, 0.005))


def test_align_nodes_folds_signed_zero():
    coords = np.array([[-0.0, 0.0], [0.1, -0.05]])
    ref = np.array([[0.1, -0.05], [0.2, 0.0], [0.0, 0.0]])
    assert align_nodes(coords, ref).tolist() == [2, 0]
    with pytest.raises(ConfigError) as exc:
        align_nodes(np.array([[0.3, 0.0]]), ref)
    assert exc.value.key == "reference"


def test_relative_error_and_integral():
    ref = np.array([[0.0, 2.0], [1.0, -4.0]])
    values = ref + np.array([[0.4, 0.0], [0.0, 0.8]])
    assert relative_error_series(values, ref).tolist() == pytest.approx([0.1, 0.2])
    assert relative_error_series(np.ones((1, 2)), np.zeros((1, 2))).tolist() == [1.0]
    assert time_integral(np.array([3.0, 4.0]), 0.25) == pytest.approx(2.5)


def _record(times, eta, eta_x):
    return RunRecord(case_id="r", times=np.asarray(times), eta=np.asarray(eta), eta_x=np.asarray(eta_x))


def test_compute_errors_on_shared_nodes():
    ref = _record([0.0, 0.1], [[0.0, 1.0, 2.0], [0.0, 2.0, 4.0]], [-0.1, 0.0, 0.1])
    run = _record([0.0, 0.1], [[1.0, 2.0], [2.0, 3.0]], [0.0, 0.1])
    summary = attach_errors(run, ref)
    assert summary.e_eta.tolist() == pytest.approx([0.0, 0.25])
    assert run.metadata['E_eta'] == pytest.approx(np.sqrt(0.1 * 0.0625))
    assert run.e_phi is None and run.metadata['E_phi'] is None
    assert run.has_errors


def test_compute_errors_needs_matching_samples():
    ref = _record([0.0, 0.1, 0.2], np.zeros((3, 2)), [0.0, 0.1])
    run = _record([0.0, 0.1], np.zeros((2, 2)), [0.0, 0.1])
    with pytest.raises(ConfigError) as exc:
        compute_errors(run, ref)
    assert exc.value.key == "stride"


def _energies(E_surface, E_basin):
    n = len(E_basin)
    return RunRecord(case_id="e", times=np.arange(n) * 0.1, E_surface=np.asarray(E_surface, float),
                     E_basin=np.asarray(E_basin, float))


def test_energy_growth_and_ratios():
    record = _energies([0.0, 2.0, 1.0, 0.5], [0.0, 1.0, 5.0, 20.0])
    assert energy_grows(record, 0.1, factor=10.0)
    assert not energy_grows(record, 0.1, factor=25.0)
    ratios = energy_ratios(record, 0.1)
    assert ratios == pytest.approx({'E_surface': 0.25, 'E_basin': 20.0})
    assert np.isnan(energy_ratios(record, 0.0)['E_basin'])
    assert not energy_grows(_energies([], []), 0.1)


def test_energy_drift():
    assert energy_drift(_energies([1.0, 1.5, 0.9], [1.0, 0.5, 1.0])) == pytest.approx(0.05)
    assert np.isnan(energy_drift(_energies([0.0], [0.0])))
    assert np.isnan(energy_drift(_energies([], [])))
