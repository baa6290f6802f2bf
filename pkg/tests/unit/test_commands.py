import numpy as np
import pytest

from habc.cli.commands import bench_config, study_command
from habc.cli.config_loader import parse_config
from habc.errors import ConfigError
from habc.harness import studies
from habc.harness.benchmark import BenchmarkConfig
from habc.models.enums import CornerMode
from habc.models.record import RunRecord


@pytest.fixture(autouse=True)
def desk_profile(monkeypatch):
    monkeypatch.setenv("HABC_PROFILE", "desk")


def test_bench_config_defaults():
    assert bench_config(parse_config()) == BenchmarkConfig()


def test_bench_config_takes_case_options():
    config = parse_config(overrides=['h=0.1', 'dt=0.02', 'T=0.6', 'order=8', 'p=2', 'corner=neumann',
                                     'stride=2'])
    bench = bench_config(config)
    assert (bench.h, bench.dt, bench.T, bench.p) == (0.1, 0.02, 0.6, 2)
    assert bench.orders == (8,)
    assert bench.corner == CornerMode.NEUMANN
    assert bench.stride == 2
    assert bench_config(config, orders=(2, 4)).orders == (2, 4)


def test_bench_config_rejects_unused_options():
    with pytest.raises(ConfigError) as exc:
        bench_config(parse_config(overrides=['keep_fraction=0.5']))
    assert exc.value.key == "keep_fraction"
    with pytest.raises(ConfigError) as exc:
        bench_config(parse_config(overrides=['case=11']))
    assert exc.value.key == "case"


def test_build_variant_applies_overrides():
    config = parse_config(overrides=['keep_fraction=0.01', 'obstacle_axes=full'])
    case = config.build_variant('b')
    assert case.id == "special-b"
    assert case.keep_fraction == 0.01
    assert case.pade_order == 1024
    assert case.dt == 0.001
    semi = parse_config().build_variant('b')
    assert case.obstacle.semi_axes == tuple(0.5 * a for a in semi.obstacle.semi_axes)
    with pytest.raises(ConfigError) as exc:
        config.build_variant('e')
    assert exc.value.key == "case"


def test_time_step_study_uses_overrides(monkeypatch, tmp_path):
    seen = []

    def fake_run_case(case, config, **options):
        seen.append(case)
        samples = np.array([0.0, 1.0])
        return RunRecord(case_id=case.id, times=np.array([0.0, case.dt]), E_surface=samples,
                         E_basin=samples, series={'E_surface_sub': samples, 'E_basin_sub': samples},
                         metadata={'active_terms': 3})

    monkeypatch.setattr(studies, "run_case", fake_run_case)
    config = parse_config(overrides=['keep_fraction=0.01', 'dt=0.0005', f'out={tmp_path}'])
    study_command(config, kind='time-step', variants=('a', 'c'))
    assert [case.id for case in seen] == ["special-a", "special-c"]
    assert all(case.keep_fraction == 0.01 and case.dt == 0.0005 for case in seen)
    row = (tmp_path / "time_step.csv").read_text().splitlines()[1]
    variant, dt, keep_fraction, active_terms, *_ = row.split(',')
    assert (variant, float(dt), float(keep_fraction), active_terms) == ('a', 0.0005, 0.01, '3')


def test_time_step_study_rejects_case(tmp_path):
    with pytest.raises(ConfigError) as exc:
        study_command(parse_config(overrides=['case=11', f'out={tmp_path}']), kind='time-step')
    assert exc.value.key == "case"
