"""Ready-made configs for the three reference experiments."""

from __future__ import annotations

from .pipeline import PipelineConfig

SINE_AMPLITUDES = [0.05, 0.5, 1.0, 1.5, 2.0, 1.5, 1.0, 0.5, 0.05]
SELKOV_B = [round(0.35 + 0.05 * i, 2) for i in range(10)]  # 0.35 .. 0.80
CIRCLE_RADII = [0.2, 0.6, 1.0, 0.6, 0.2]


def circles_config(out_dir=None) -> PipelineConfig:
    """Five concentric 20-point circles with per-snapshot Rips radii."""
    return PipelineConfig(
        input={"kind": "generator", "family": "circles", "grid": CIRCLE_RADII, "settings": {"n_points": 20}},
        radius=[0.5, 0.6, 0.8, 0.6, 0.5],
        parameter_labels=list(range(len(CIRCLE_RADII))),
        output={"dir": out_dir} if out_dir else {},
    )


def sine_config(seed: int = 0, out_dir=None) -> PipelineConfig:
    return PipelineConfig(
        input={"kind": "generator", "family": "sine", "grid": SINE_AMPLITUDES,
               "settings": {"n": 100, "noise_amp": 0.1}},
        embedding={"dimension": 2, "delay": 4},
        radius=0.72,
        seed=seed,
        output={"dir": out_dir} if out_dir else {},
    )


def selkov_config(out_dir=None) -> PipelineConfig:
    return PipelineConfig(
        input={"kind": "generator", "family": "selkov", "grid": SELKOV_B,
               "settings": {"a": 0.1, "component": "x"}},
        embedding={"dimension": 2, "delay": 3},
        subsample={"k": 20, "seed_index": 0},
        radius=0.25,
        output={"dir": out_dir} if out_dir else {},
    )


EXPERIMENTS = {"circles": circles_config, "sine": sine_config, "selkov": selkov_config}
