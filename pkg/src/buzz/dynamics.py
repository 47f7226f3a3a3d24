"""Input generators: noisy sine families and Sel'kov trajectories."""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from pathlib import Path
from typing import Callable, Sequence

import numpy as np


class IntegrationError(RuntimeError):
    pass


@dataclass(frozen=True)
class TimeSeries:
    values: np.ndarray
    dt: float
    t0: float = 0.0
    label: float = 0.0

    def __post_init__(self):
        v = np.array(self.values, dtype=float).reshape(-1)
        if v.size < 1:
            raise ValueError("a time series needs at least one value")
        if not self.dt > 0:
            raise ValueError(f"dt must be positive, got {self.dt}")
        v.setflags(write=False)
        object.__setattr__(self, "values", v)

    def __len__(self):
        return self.values.shape[0]

    @property
    def times(self) -> np.ndarray:
        return self.t0 + self.dt * np.arange(len(self))


@dataclass(frozen=True)
class SelkovParams:
    b: float
    a: float = 0.1
    x0: float = 0.0
    y0: float = 0.0
    t_max: float = 500.0
    n_samples: int = 500
    burn_in: int = 50
    substeps: int = 16  # RK4 steps per output sample

    def __post_init__(self):
        if not self.n_samples > self.burn_in >= 0:
            raise ValueError(f"need n_samples > burn_in >= 0, got {self.n_samples}, {self.burn_in}")
        if not self.t_max > 0:
            raise ValueError("t_max must be positive")
        if self.n_samples < 2 or self.substeps < 1:
            raise ValueError("need n_samples >= 2 and substeps >= 1")


def sine_series(amplitude: float, n: int = 100, dt: float = 2 * np.pi / 16, noise_amp: float = 0.1,
                rng_seed: int = 0) -> TimeSeries:
    """``amplitude * sin(i dt)`` plus i.i.d. uniform noise on ``[-noise_amp, noise_amp]``."""
    if n < 1 or not dt > 0 or noise_amp < 0:
        raise ValueError(f"invalid sine parameters n={n}, dt={dt}, noise_amp={noise_amp}")
    rng = np.random.default_rng(rng_seed)
    noise = rng.uniform(-noise_amp, noise_amp, size=n) if noise_amp > 0 else np.zeros(n)
    values = amplitude * np.sin(dt * np.arange(n)) + noise
    return TimeSeries(values, dt, 0.0, float(amplitude))


def rk4(f: Callable, y0, h: float, n_steps: int, record_every: int = 1) -> np.ndarray:
    """Classical fixed-step RK4; returns the state every ``record_every`` steps (row 0 = y0)."""
    y = np.array(y0, dtype=float)
    out = [y.copy()]
    with np.errstate(over="ignore", invalid="ignore"):  # blow-ups are caught below
        for step in range(1, n_steps + 1):
            k1 = f(y)
            k2 = f(y + 0.5 * h * k1)
            k3 = f(y + 0.5 * h * k2)
            k4 = f(y + h * k3)
            y = y + (h / 6.0) * (k1 + 2 * k2 + 2 * k3 + k4)
            if not np.all(np.isfinite(y)):
                raise IntegrationError(f"non-finite state at step {step} (t = {step * h:g})")
            if step % record_every == 0:
                out.append(y.copy())
    return np.array(out)


def selkov_rhs(a: float, b: float) -> Callable:
    def f(s):
        x, y = s
        x2y = x * x * y
        return np.array([-x + a * y + x2y, b - a * y - x2y])
    return f


def selkov_trajectory(params: SelkovParams) -> tuple[TimeSeries, TimeSeries]:
    """Integrate the Sel'kov system; returns the (x, y) series after burn-in."""
    p = params
    dt = p.t_max / (p.n_samples - 1)
    traj = rk4(selkov_rhs(p.a, p.b), [p.x0, p.y0], dt / p.substeps, (p.n_samples - 1) * p.substeps, p.substeps)
    traj = traj[p.burn_in:]
    t0 = p.burn_in * dt
    return TimeSeries(traj[:, 0], dt, t0, p.b), TimeSeries(traj[:, 1], dt, t0, p.b)


@dataclass
class FamilySpec:
    """What ``make_buzz_family`` needs; serialized into family manifests."""

    kind: str  # "sine" | "selkov"
    grid: list
    settings: dict = field(default_factory=dict)


def make_buzz_family(kind: str, grid: Sequence[float], settings: dict | None = None) -> list[TimeSeries]:
    """One series per grid value, in grid order.

    ``settings`` for ``sine``: n, dt, noise_amp, seed (series ``i`` uses the
    generator seeded with ``[seed, i]``). For ``selkov``: any SelkovParams
    field except ``b`` plus ``component`` ("x" or "y").
    """
    settings = dict(settings or {})
    grid = [float(g) for g in grid]
    if not grid:
        raise ValueError("empty parameter grid")
    out = []
    if kind == "sine":
        seed = int(settings.pop("seed", 0))
        for i, amp in enumerate(grid):
            out.append(sine_series(amp, rng_seed=[seed, i], **settings))
    elif kind == "selkov":
        component = settings.pop("component", "x")
        for b in grid:
            xs, ys = selkov_trajectory(SelkovParams(b=b, **settings))
            out.append(xs if component == "x" else ys)
    else:
        raise ValueError(f"unknown family kind {kind!r}")
    return out


def write_family(series: Sequence[TimeSeries], out_dir, spec: FamilySpec) -> Path:
    """Write ``series_XXX.csv`` files plus ``manifest.json``; returns the manifest path."""
    from .geometry import write_time_series_csv

    out = Path(out_dir)
    out.mkdir(parents=True, exist_ok=True)
    files = []
    for i, ts in enumerate(series):
        name = f"series_{i:03d}.csv"
        write_time_series_csv(ts.values, out / name)
        files.append(name)
    manifest = {
        "kind": spec.kind,
        "labels": [ts.label for ts in series],
        "files": files,
        "dt": [ts.dt for ts in series],
        "settings": spec.settings,
    }
    path = out / "manifest.json"
    path.write_text(json.dumps(manifest, indent=1, sort_keys=True))
    return path
