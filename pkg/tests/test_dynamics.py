import json

import numpy as np
import pytest

from buzz.dynamics import (
    FamilySpec,
    IntegrationError,
    SelkovParams,
    TimeSeries,
    make_buzz_family,
    rk4,
    selkov_trajectory,
    sine_series,
    write_family,
)
from buzz.experiments import SELKOV_B


def test_sine_exact_samples():
    ts = sine_series(1.0, n=5, dt=np.pi / 2, noise_amp=0.0)
    assert np.max(np.abs(ts.values - [0, 1, 0, -1, 0])) < 1e-12
    assert ts.label == 1.0


def test_sine_noise_bounds_and_determinism():
    ts = sine_series(0.0, n=500, noise_amp=0.1, rng_seed=3)
    assert np.max(np.abs(ts.values)) <= 0.1
    assert np.array_equal(ts.values, sine_series(0.0, n=500, noise_amp=0.1, rng_seed=3).values)
    assert not np.array_equal(ts.values, sine_series(0.0, n=500, noise_amp=0.1, rng_seed=4).values)


@pytest.mark.parametrize("kw", [{"n": 0}, {"dt": 0.0}, {"noise_amp": -1.0}])
def test_sine_rejects_bad_parameters(kw):
    with pytest.raises(ValueError):
        sine_series(1.0, **kw)


def test_rk4_is_fourth_order():
    f = lambda y: -y  # noqa: E731
    err = [abs(rk4(f, [1.0], 1.0 / k, k)[-1, 0] - np.exp(-1)) for k in (10, 20)]
    assert 12 <= err[0] / err[1] <= 20


def test_rk4_blowup_names_step():
    with pytest.raises(IntegrationError, match="step"):
        rk4(lambda y: y * y, [1.0], 0.5, 100)


def test_selkov_equilibrium_is_stationary():
    a, b = 0.1, 0.6
    p = SelkovParams(b=b, a=a, x0=b, y0=b / (a + b * b), burn_in=0)
    x, y = selkov_trajectory(p)
    assert np.max(np.abs(x.values - p.x0)) < 1e-6
    assert np.max(np.abs(y.values - p.y0)) < 1e-6


def late_range(b):
    x, _ = selkov_trajectory(SelkovParams(b=b))
    tail = x.values[-len(x) // 4:]
    return tail.max() - tail.min()


def test_selkov_limit_cycle_and_focus():
    assert late_range(0.6) > 0.25
    assert late_range(0.2) < 0.05


def test_selkov_sampling():
    x, y = selkov_trajectory(SelkovParams(b=0.5))
    assert len(x) == len(y) == 450
    assert x.dt == pytest.approx(500 / 499)
    assert x.times[0] == pytest.approx(50 * 500 / 499)
    assert x.label == 0.5


def test_selkov_step_halving():
    for b in SELKOV_B:
        coarse, _ = selkov_trajectory(SelkovParams(b=b, burn_in=0))
        fine, _ = selkov_trajectory(SelkovParams(b=b, burn_in=0, substeps=32))
        assert np.max(np.abs(coarse.values - fine.values)) < 1e-4, b


def test_selkov_burn_in_suffix():
    full, _ = selkov_trajectory(SelkovParams(b=0.45, burn_in=0))
    cut, _ = selkov_trajectory(SelkovParams(b=0.45, burn_in=50))
    assert np.array_equal(full.values[50:], cut.values)


def test_selkov_param_validation():
    with pytest.raises(ValueError):
        SelkovParams(b=0.5, n_samples=10, burn_in=10)
    with pytest.raises(ValueError):
        SelkovParams(b=0.5, t_max=0)


def test_families():
    fam = make_buzz_family("sine", [0.5, 1.0, 1.5, 2.0], {"noise_amp": 0.0})
    assert [ts.label for ts in fam] == [0.5, 1.0, 1.5, 2.0]
    assert len(make_buzz_family("sine", [1.0])) == 1
    sel = make_buzz_family("selkov", SELKOV_B, {"a": 0.1})
    assert len(sel) == 10 and [ts.label for ts in sel] == SELKOV_B
    with pytest.raises(ValueError):
        make_buzz_family("lorenz", [1.0])
    with pytest.raises(ValueError):
        make_buzz_family("sine", [])


def test_family_series_get_distinct_noise():
    a, b = make_buzz_family("sine", [1.0, 1.0], {"seed": 5})
    assert not np.array_equal(a.values, b.values)
    again = make_buzz_family("sine", [1.0, 1.0], {"seed": 5})
    assert np.array_equal(a.values, again[0].values)


def test_write_family(tmp_path):
    fam = make_buzz_family("sine", [0.5, 1.0], {"seed": 1})
    path = write_family(fam, tmp_path, FamilySpec("sine", [0.5, 1.0], {"seed": 1}))
    man = json.loads(path.read_text())
    assert man["labels"] == [0.5, 1.0] and man["files"] == ["series_000.csv", "series_001.csv"]
    assert (tmp_path / "series_001.csv").exists()


def test_time_series_validation():
    with pytest.raises(ValueError):
        TimeSeries([], 1.0)
    with pytest.raises(ValueError):
        TimeSeries([1.0], 0.0)
