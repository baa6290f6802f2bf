"""
Implicit Newmark integration of M a'' + C a' + K a = F(t).

The effective matrix M + gamma dt C + beta dt^2 K is factored once per run.
"""
import logging
from dataclasses import dataclass

import numpy as np

from ..errors import ConfigError, NumericalError, SingularMatrixError
from ..linalg.solver import DIRECT, factorize
from ..models.record import RunRecord

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class NewmarkParams:
    dt: float
    n_steps: int
    gamma: float = 0.5
    beta: float = 0.25

    def __post_init__(self):
        if not self.dt > 0.0:
            raise ConfigError(f"dt must be > 0, got {self.dt}", key="dt")
        if self.n_steps < 0:
            raise ConfigError(f"n_steps must be >= 0, got {self.n_steps}", key="n_steps")
        if not (2.0 * self.beta >= self.gamma >= 0.5):
            raise ConfigError(
                f"Newmark parameters need 2 beta >= gamma >= 1/2 (gamma={self.gamma}, beta={self.beta})",
                key="gamma",
            )


@dataclass
class State:
    u: np.ndarray
    v: np.ndarray
    a: np.ndarray
    t: float = 0.0

    @classmethod
    def zeros(cls, dimension, t=0.0):
        return cls(np.zeros(dimension), np.zeros(dimension), np.zeros(dimension), t)

    def __post_init__(self):
        if not (len(self.u) == len(self.v) == len(self.a)):
            raise ConfigError("u, v and a must have the same length", key="state")

    @property
    def is_zero(self):
        return not (np.any(self.u) or np.any(self.v) or np.any(self.a))


def effective_matrix(system, params, method=DIRECT, ordering='COLAMD', rtol=1e-12):
    """Factorization of M + gamma dt C + beta dt^2 K."""
    dt = params.dt
    A = (system.M + (params.gamma * dt) * system.C + (params.beta * dt ** 2) * system.K).tocsc()
    return factorize(A, method=method, ordering=ordering, rtol=rtol)


def newmark_step(system, params, state, factorization=None, t=None):
    """Advance one step to t (default state.t + dt); factorization is computed when not given."""
    if factorization is None:
        factorization = effective_matrix(system, params)
    dt, gamma, beta = params.dt, params.gamma, params.beta
    u_pred = state.u + dt * state.v + (0.5 - beta) * dt ** 2 * state.a
    v_pred = state.v + (1.0 - gamma) * dt * state.a
    t = state.t + dt if t is None else t
    rhs = system.load(t) - system.C @ v_pred - system.K @ u_pred
    a = factorization.solve(rhs)
    return State(u=u_pred + beta * dt ** 2 * a, v=v_pred + gamma * dt * a, a=a, t=t)


def initial_acceleration(system, state):
    """
    Acceleration consistent with the initial data.

    Homogeneous data need F(0) = 0 and give a(0) = 0. Otherwise M a0 = F(0) - C v0 - K u0
    is solved; a singular M keeps a0 = 0.
    """
    F0 = system.load(state.t)
    if state.is_zero:
        if np.any(F0):
            raise NumericalError(f"homogeneous initial data need F(0) = 0, got |F(0)| = {np.linalg.norm(F0):.3e}")
        return np.zeros_like(state.u)
    rhs = F0 - system.C @ state.v - system.K @ state.u
    if not np.any(rhs):
        return np.zeros_like(state.u)
    try:
        return factorize(system.M).solve(rhs)
    except SingularMatrixError as exc:
        logger.warning(f"Mass matrix is singular ({exc}); starting from a(0) = 0")
        return np.zeros_like(state.u)


def run(system, params, recorders=(), stride=1, initial=None, case_id="", factorization=None):
    """
    Integrate n_steps and feed the recorders.

    Recorders sample at step 0 and every `stride` steps; n_steps = 0 returns an empty record.

    Returns:
        RunRecord
    """
    if stride < 1:
        raise ConfigError(f"recorder stride must be >= 1, got {stride}", key="stride")
    record = RunRecord(case_id=case_id)
    if params.n_steps == 0:
        return record

    state = initial if initial is not None else State.zeros(system.dimension)
    if len(state.u) != system.dimension:
        raise ConfigError(f"initial state has length {len(state.u)}, system {system.dimension}",
                          key="state")
    state = State(state.u.copy(), state.v.copy(), initial_acceleration(system, state), state.t)
    if factorization is None:
        factorization = effective_matrix(system, params)

    for recorder in recorders:
        recorder.start(system)
    t0 = state.t
    times = []
    report_every = max(1, params.n_steps // 10)
    for step in range(params.n_steps + 1):
        if step > 0:
            state = newmark_step(system, params, state, factorization, t=t0 + step * params.dt)
            if not np.all(np.isfinite(state.u)):
                raise NumericalError(f"non-finite state at step {step} (t={state.t:.6g})")
            if step % report_every == 0:
                logger.info(f"{case_id}: step {step}/{params.n_steps} t={state.t:.4f}")
        for recorder in recorders:
            recorder.observe(step, state, system)
        if step % stride == 0:
            times.append(state.t)
            for recorder in recorders:
                recorder.sample(state, system)

    record.times = np.asarray(times)
    for recorder in recorders:
        recorder.finish(record)
    return record
