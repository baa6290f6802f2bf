import os

import pytest

from habc import create_config
from habc.fem.grid import build_grid_2d
from habc.models import CaseSpec, PhysicalParams


@pytest.fixture(scope="session")
def testing_config():
    os.environ["HABC_PROFILE"] = "testing"
    return create_config("testing")


@pytest.fixture()
def water():
    """No surface tension, unit celerity."""
    return PhysicalParams(rho=1000.0, g=9.81, c_f=1.0)


@pytest.fixture()
def water_ste():
    """Surface tension with added mass, unit celerity."""
    return PhysicalParams(rho=1000.0, g=9.81, sigma=0.075, epsilon=1e-3, c_f=1.0)


@pytest.fixture()
def make_case(water):
    """Factory of small cases: 4 x 2 elements of order 2 unless overridden."""

    def build(params=None, **changes):
        values = dict(
            id="small",
            params=params or water,
            T=0.02,
            l=0.1,
            depth=0.1,
            T_e=0.1,
            T_excit=0.02,
            A=1000.0,
            n_f=4,
            h=0.05,
            dt=0.002,
            p=2,
            pade_order=2,
        )
        values.update(changes)
        return CaseSpec(**values)

    return build


@pytest.fixture()
def small_grid():
    return build_grid_2d(((-0.1, 0.1), (-0.1, 0.0)), 0.05, 2)
