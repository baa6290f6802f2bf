"""
Surface forcing: a sum of n_f sines under a Gaussian envelope in x.

f_s(x, t) = sum_n A exp(-10 ((n-1)/n_f)^2) sin(2 n pi t / T_e) exp(-100 ((x - x0)/l)^2)
for t <= T_excit, and 0 afterwards.
"""
import numpy as np


def mode_weights(n_f):
    n = np.arange(1, n_f + 1)
    return np.exp(-10.0 * ((n - 1) / n_f) ** 2)


def excitation_value(x, t, case):
    return surface_forcing(case)(x, t)


def surface_forcing(case, length=None):
    """
    Forcing closure for a case.

    Args:
        case: CaseSpec providing A, n_f, T_e, T_excit and x0
        length: envelope length, defaults to case.l (kept when the domain is enlarged)
    """
    length = case.l if length is None else length
    weights = case.A * mode_weights(case.n_f)
    omegas = 2.0 * np.pi * np.arange(1, case.n_f + 1) / case.T_e
    x0, T_excit = case.x0, case.T_excit

    def forcing(x, t):
        scalar = np.isscalar(x)
        x = np.asarray(x, dtype=float)
        if t > T_excit:
            value = np.zeros_like(x)
        else:
            envelope = np.exp(-100.0 * ((x - x0) / length) ** 2)
            value = float(np.dot(weights, np.sin(omegas * t))) * envelope
        return float(value) if scalar else value

    return forcing
