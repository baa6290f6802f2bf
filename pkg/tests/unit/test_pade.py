"""Padé coefficients, approximant, reduction and threshold counts"""
import math

import numpy as np
import pytest

from habc.errors import ConfigError
from habc.pade import (
    build_pade_set,
    pade_coefficients,
    pade_error_table,
    pade_sqrt,
    reduction_active_set,
    threshold_counts,
)


def test_first_orders_coefficients():
    assert pade_coefficients(1)[0] == pytest.approx(3.0, rel=1e-15)
    c = pade_coefficients(2)
    assert c[0] == pytest.approx(0.5278640450004206, rel=1e-12)
    assert c[1] == pytest.approx(9.472135954999580, rel=1e-12)


@pytest.mark.parametrize("N", [1, 7, 64, 1024])
def test_coefficients_positive_increasing_and_exact(N):
    c = pade_coefficients(N)
    assert len(c) == N
    assert np.all(c > 0.0) and np.all(np.isfinite(c))
    assert np.all(np.diff(c) > 0.0)
    n = np.arange(1, N + 1)
    expected = np.array([math.tan(k * math.pi / (2 * N + 1)) ** 2 for k in n])
    assert np.allclose(c, expected, rtol=1e-14, atol=0.0)


@pytest.mark.parametrize("N", [0, -3, 10 ** 6 + 1])
def test_order_out_of_range_rejected(N):
    with pytest.raises(ConfigError) as exc:
        pade_coefficients(N)
    assert exc.value.key == "order"


def test_pade_set_prefactor_and_active_suffix():
    pade = build_pade_set(10, keep_fraction=0.3)
    assert pade.M == 21
    assert pade.prefactor == pytest.approx(2.0 / 21.0)
    assert pade.active == (8, 9, 10)
    assert pade.is_reduced and len(pade) == 3


@pytest.mark.parametrize("N", [2 ** k for k in range(11)])
def test_approximant_exact_at_zero(N):
    assert pade_sqrt(build_pade_set(N), 0.0) == 1.0
    assert pade_sqrt(build_pade_set(N, keep_fraction=0.1), 0.0) == 1.0


def test_approximant_order_one_by_hand():
    assert pade_sqrt(build_pade_set(1), 3.0) == pytest.approx(13.0 / 7.0, rel=1e-15)


def test_approximant_order_128_close_to_sqrt():
    assert abs(pade_sqrt(build_pade_set(128), 100.0) - math.sqrt(101.0)) < 1e-3


def test_approximant_vectorized_matches_scalar():
    pade = build_pade_set(16)
    x = np.linspace(0.0, 50.0, 600)
    values = pade_sqrt(pade, x)
    assert values.shape == x.shape
    assert values[123] == pytest.approx(pade_sqrt(pade, float(x[123])), rel=1e-15)


def test_approximant_pole_rejected():
    pade = build_pade_set(1)
    with pytest.raises(ConfigError):
        pade_sqrt(pade, -4.0)


def test_error_table_shapes_and_convergence():
    assert pade_error_table([1], [0.0]).tolist() == [[0.0]]
    table = pade_error_table([8, 128], [100.0])
    assert table.shape == (2, 1)
    assert table[1, 0] < table[0, 0]


def test_error_table_shrinks_with_order():
    table = pade_error_table([4, 64], np.linspace(0.0, 400.0, 9))
    assert table[0, 0] == table[1, 0] == 0.0
    assert table[0, -1] > table[0, 1]
    assert np.all(table[1] <= table[0])


@pytest.mark.parametrize("orders, grid", [([], [1.0]), ([4], []), ([4], [-1.0])])
def test_error_table_rejects_bad_input(orders, grid):
    with pytest.raises(ConfigError):
        pade_error_table(orders, grid)


def test_reduction_keeps_largest_coefficients():
    kept = reduction_active_set(16384, 0.0005)
    assert kept == tuple(range(16377, 16385))
    assert reduction_active_set(10, 1.0) == tuple(range(1, 11))
    assert len(reduction_active_set(1024, 0.06)) == 61


@pytest.mark.parametrize("N, fraction", [(1, 0.01), (5, 0.001), (33, 0.5), (100, 0.999)])
def test_reduction_is_nonempty_suffix(N, fraction):
    kept = reduction_active_set(N, fraction)
    assert kept
    assert kept[-1] == N
    assert list(kept) == list(range(kept[0], N + 1))


@pytest.mark.parametrize("fraction", [0.0, -0.1, 1.5])
def test_reduction_fraction_out_of_range(fraction):
    with pytest.raises(ConfigError) as exc:
        reduction_active_set(10, fraction)
    assert exc.value.key == "keep_fraction"


@pytest.mark.parametrize("N, expected", [
    (4, [2, 1, 0]),
    (8, [4, 2, 1]),
    (1024, [512, 200, 65]),
])
def test_threshold_counts(N, expected):
    assert threshold_counts(N, [1, 10, 100]) == expected
