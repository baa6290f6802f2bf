import numpy as np
import pytest
from scipy import sparse

from habc.errors import ConfigError, NumericalError
from habc.newmark import NewmarkParams, Recorder, State, effective_matrix, newmark_step, run


class Oscillator:
    """m u'' + c u' + k u = f(t) as a one-unknown system."""

    def __init__(self, m=1.0, c=0.0, k=1.0, force=None):
        self.M = sparse.csr_matrix([[m]])
        self.C = sparse.csr_matrix([[c]])
        self.K = sparse.csr_matrix([[k]])
        self.force = force or (lambda t: 0.0)
        self.dimension = 1

    def load(self, t):
        return np.array([self.force(t)])


class Trajectory(Recorder):
    def start(self, system):
        self.u = []

    def sample(self, state, system):
        self.u.append(state.u[0])


def test_params_validation():
    with pytest.raises(ConfigError):
        NewmarkParams(dt=0.0, n_steps=1)
    with pytest.raises(ConfigError):
        NewmarkParams(dt=0.1, n_steps=-1)
    with pytest.raises(ConfigError) as exc:
        NewmarkParams(dt=0.1, n_steps=1, gamma=0.5, beta=0.2)
    assert exc.value.key == "gamma"


def test_trapezoidal_rule_conserves_energy():
    omega = 2.0 * np.pi
    system = Oscillator(k=omega ** 2)
    params = NewmarkParams(dt=1e-3, n_steps=2000)
    factorization = effective_matrix(system, params)
    state = State(np.array([1.0]), np.array([0.0]), np.array([-omega ** 2]))
    energy0 = 0.5 * omega ** 2
    for _ in range(params.n_steps):
        state = newmark_step(system, params, state, factorization)
    energy = 0.5 * state.v[0] ** 2 + 0.5 * omega ** 2 * state.u[0] ** 2
    assert energy == pytest.approx(energy0, rel=1e-12)
    assert state.t == pytest.approx(2.0)
    # Second-order phase error
    assert state.u[0] == pytest.approx(np.cos(omega * state.t), abs=1e-3)


def test_damped_oscillator_decays():
    omega, zeta = 2.0 * np.pi, 0.1
    system = Oscillator(c=2.0 * zeta * omega, k=omega ** 2)
    params = NewmarkParams(dt=1e-3, n_steps=1000)
    recorder = Trajectory()
    initial = State(np.array([1.0]), np.array([0.0]), np.array([0.0]))
    record = run(system, params, recorders=[recorder], initial=initial)
    t = record.times
    omega_d = omega * np.sqrt(1.0 - zeta ** 2)
    exact = np.exp(-zeta * omega * t) * (np.cos(omega_d * t) + zeta / np.sqrt(1.0 - zeta ** 2)
                                         * np.sin(omega_d * t))
    assert np.max(np.abs(np.asarray(recorder.u) - exact)) < 1e-3
    assert abs(recorder.u[-1]) < np.exp(-zeta * omega * t[-1]) * 1.01


def test_stride_and_sample_times():
    system = Oscillator(force=lambda t: np.sin(t))
    record = run(system, NewmarkParams(dt=0.1, n_steps=10), recorders=[Trajectory()], stride=3)
    assert record.times == pytest.approx([0.0, 0.3, 0.6, 0.9])


def test_zero_steps_give_an_empty_record():
    record = run(Oscillator(), NewmarkParams(dt=0.1, n_steps=0), case_id="empty")
    assert record.is_empty
    assert record.case_id == "empty"


def test_inconsistent_initial_load():
    system = Oscillator(force=lambda t: 1.0)
    with pytest.raises(NumericalError):
        run(system, NewmarkParams(dt=0.1, n_steps=2))


def test_bad_stride_and_state_length():
    system = Oscillator()
    with pytest.raises(ConfigError):
        run(system, NewmarkParams(dt=0.1, n_steps=2), stride=0)
    with pytest.raises(ConfigError):
        run(system, NewmarkParams(dt=0.1, n_steps=2), initial=State.zeros(2))


def test_forced_response_starts_at_rest():
    """u'' + u = t from rest: u = t - sin t."""
    system = Oscillator(force=lambda t: t)
    recorder = Trajectory()
    record = run(system, NewmarkParams(dt=1e-3, n_steps=1000), recorders=[recorder])
    exact = record.times - np.sin(record.times)
    assert np.max(np.abs(np.asarray(recorder.u) - exact)) < 1e-6
