"""Config-driven BuZZ runs: load or generate, embed, subsample, build, compute, report."""

from __future__ import annotations

import json
import time
from dataclasses import dataclass, field
from pathlib import Path
from typing import Sequence

from .dynamics import make_buzz_family
from .geometry import (
    circle_cloud,
    delay_embed,
    globalize,
    greedy_permutation,
    read_point_cloud_csv,
    read_time_series_csv,
)
from .zigzag_builder import ZigzagSchedule, build_schedule_fixed, build_schedule_variable
from .zigzag_engine import PersistencePoint, ZigzagDiagram, compute_zigzag

INPUT_KINDS = ("generator", "time_series", "point_clouds")
GENERATORS = ("sine", "selkov", "circles")


class PipelineError(RuntimeError):
    """A failure tagged with the stage that raised it."""

    def __init__(self, stage: str, message: str):
        super().__init__(f"[{stage}] {message}")
        self.stage = stage


@dataclass
class PipelineConfig:
    """One run. ``input`` is one of

    - ``{"kind": "generator", "family": "sine" | "selkov", "grid": [...], "settings": {...}}``
    - ``{"kind": "generator", "family": "circles", "grid": [radius, ...], "settings": {"n_points": 20}}``
    - ``{"kind": "time_series", "paths": [...]}``
    - ``{"kind": "point_clouds", "paths": [...]}``

    Circles and point-cloud CSVs skip the delay embedding.
    """

    input: dict
    embedding: dict | None = None  # {"dimension": d, "delay": tau}
    subsample: dict | None = None  # {"k": k, "seed_index": 0}
    radius: float | list = 1.0
    max_hom_dim: int = 1
    parameter_labels: list | None = None
    seed: int = 0
    output: dict = field(default_factory=dict)  # {"dir": ..., "svg": true}

    def __post_init__(self):
        kind = self.input.get("kind")
        if kind not in INPUT_KINDS:
            raise PipelineError("config", f"input kind must be one of {INPUT_KINDS}, got {kind!r}")
        if kind == "generator" and self.input.get("family") not in GENERATORS:
            raise PipelineError("config", f"generator family must be one of {GENERATORS}")
        if self.needs_embedding:
            emb = self.embedding or {}
            d, tau = emb.get("dimension"), emb.get("delay")
            if not (isinstance(d, int) and isinstance(tau, int) and d >= 1 and tau >= 1):
                raise PipelineError("config", f"embedding needs integer dimension >= 1 and delay >= 1, got {emb}")
        if self.subsample is not None and int(self.subsample.get("k", 0)) < 1:
            raise PipelineError("config", "subsample k must be >= 1")
        if isinstance(self.radius, (list, tuple)):
            if any(r < 0 for r in self.radius):
                raise PipelineError("config", "radii must be non-negative")
        elif self.radius < 0:
            raise PipelineError("config", "radius must be non-negative")
        if self.max_hom_dim < 0:
            raise PipelineError("config", "max_hom_dim must be >= 0")
        labels = self.parameter_labels
        if labels is not None and len(labels) > 1:
            up = all(a < b for a, b in zip(labels, labels[1:]))
            down = all(a > b for a, b in zip(labels, labels[1:]))
            if not (up or down):
                raise PipelineError("config", "parameter_labels must be strictly ordered")

    @property
    def needs_embedding(self) -> bool:
        if self.input["kind"] == "point_clouds":
            return False
        return not (self.input["kind"] == "generator" and self.input.get("family") == "circles")

    @classmethod
    def from_dict(cls, obj: dict) -> "PipelineConfig":
        known = {"input", "embedding", "subsample", "radius", "max_hom_dim", "parameter_labels", "seed", "output"}
        extra = set(obj) - known
        if extra:
            raise PipelineError("config", f"unknown config keys {sorted(extra)}")
        if "input" not in obj:
            raise PipelineError("config", "missing 'input'")
        return cls(**obj)

    @classmethod
    def load(cls, path) -> "PipelineConfig":
        try:
            obj = json.loads(Path(path).read_text())
        except (OSError, json.JSONDecodeError) as exc:
            raise PipelineError("config", f"cannot read {path}: {exc}") from None
        return cls.from_dict(obj)

    def to_dict(self) -> dict:
        return {
            "input": self.input,
            "embedding": self.embedding,
            "subsample": self.subsample,
            "radius": self.radius,
            "max_hom_dim": self.max_hom_dim,
            "parameter_labels": self.parameter_labels,
            "seed": self.seed,
            "output": self.output,
        }


@dataclass
class PipelineResult:
    diagram: ZigzagDiagram
    dominant: dict  # dim -> PersistencePoint | None
    parameter_range: tuple | None
    diagnostics: dict
    schedule: ZigzagSchedule | None = field(default=None, repr=False)

    def summary(self) -> dict:
        dom = {str(p): None if q is None else [q.birth, q.death] for p, q in self.dominant.items()}
        return {
            "dominant": dom,
            "parameter_range": None if self.parameter_range is None else list(self.parameter_range),
            "diagnostics": self.diagnostics,
        }


def map_index_to_parameter(t: float, labels: Sequence[float], role: str, n_snapshots: int | None = None) -> float:
    """Parameter value for grid time ``t``.

    Half-integer deaths take the later snapshot's label, half-integer births
    the earlier one; ``t = n + 1`` maps to the last label.
    """
    if role not in ("birth", "death"):
        raise ValueError(f"role must be 'birth' or 'death', got {role!r}")
    if n_snapshots is not None and len(labels) != n_snapshots:
        raise ValueError(f"{len(labels)} labels for {n_snapshots} snapshots")
    n = len(labels) - 1
    h = 2 * t
    if n < 0 or h != int(h) or not (0 <= h <= 2 * n or h == 2 * n + 2):
        raise ValueError(f"t = {t} is not on the grid 0, 0.5, ..., {n}, {n + 1}")
    h = int(h)
    if h == 2 * n + 2:
        return labels[n]
    if h % 2 == 0:
        return labels[h // 2]
    i = h // 2
    return labels[i + 1] if role == "death" else labels[i]


def dominant_interval(diagram: ZigzagDiagram, p: int) -> PersistencePoint | None:
    """Longest point in dimension ``p``; ties go to the earliest birth, then the lowest death."""
    pts = diagram.in_dim(p)
    if not pts:
        return None
    return min(pts, key=lambda q: (-(q.death - q.birth), q.birth, q.death))


def _load_inputs(cfg: PipelineConfig):
    """Returns (series or clouds, labels from the source or None)."""
    src = cfg.input
    if src["kind"] == "generator":
        fam, grid = src["family"], src.get("grid") or []
        if not grid:
            raise ValueError("generator needs a non-empty grid")
        settings = dict(src.get("settings") or {})
        if fam == "circles":
            n_points = int(settings.get("n_points", 20))
            return [circle_cloud(r, n_points) for r in grid], list(grid)
        if fam == "sine":
            settings.setdefault("seed", cfg.seed)
        series = make_buzz_family(fam, grid, settings)
        return [ts.values for ts in series], [ts.label for ts in series]
    paths = src.get("paths") or []
    if not paths:
        raise ValueError("no input paths given")
    if src["kind"] == "time_series":
        return [read_time_series_csv(p) for p in paths], None
    return [read_point_cloud_csv(p, snapshot=i) for i, p in enumerate(paths)], None


def run_pipeline(cfg: PipelineConfig) -> PipelineResult:
    timings: dict[str, float] = {}
    stage = "load"
    clock = time.perf_counter()

    def lap(name):
        nonlocal clock
        now = time.perf_counter()
        timings[name] = round(now - clock, 4)
        clock = now

    try:
        data, source_labels = _load_inputs(cfg)
        lap("load")

        stage = "embed"
        if cfg.needs_embedding:
            d, tau = cfg.embedding["dimension"], cfg.embedding["delay"]
            clouds = [delay_embed(x, d, tau, snapshot=i) for i, x in enumerate(data)]
        else:
            clouds = list(data)
            dims = {c.ambient_dim for c in clouds}
            if len(dims) > 1:
                raise ValueError(f"point clouds live in different dimensions {sorted(dims)}")
        lap("embed")

        stage = "subsample"
        if cfg.subsample is not None:
            k, s0 = int(cfg.subsample["k"]), int(cfg.subsample.get("seed_index", 0))
            clouds = [greedy_permutation(c, min(k, len(c)), s0) for c in clouds]
        clouds = globalize(clouds)
        lap("subsample")

        stage = "labels"
        labels = cfg.parameter_labels if cfg.parameter_labels is not None else source_labels
        if labels is not None and len(labels) != len(clouds):
            raise ValueError(f"{len(labels)} parameter labels for {len(clouds)} snapshots")

        stage = "build"
        max_dim = cfg.max_hom_dim + 1
        if isinstance(cfg.radius, (list, tuple)):
            schedule = build_schedule_variable(clouds, list(cfg.radius), max_dim)
        else:
            schedule = build_schedule_fixed(clouds, float(cfg.radius), max_dim)
        lap("build")

        stage = "compute"
        diagram = compute_zigzag(schedule, cfg.max_hom_dim)
        lap("compute")

        stage = "report"
        dominant = {p: dominant_interval(diagram, p) for p in range(cfg.max_hom_dim + 1)}
        prange = None
        top = dominant.get(1)
        if labels is not None and top is not None:
            prange = (map_index_to_parameter(top.birth, labels, "birth"),
                      map_index_to_parameter(top.death, labels, "death"))
        diagnostics = {
            "n_snapshots": len(clouds),
            "points_per_snapshot": [len(c) for c in clouds],
            "n_simplices": len(schedule.simplices),
            "counts": diagram.metadata.get("counts"),
            "seeds": {"noise": cfg.seed, "subsample_seed_index": (cfg.subsample or {}).get("seed_index")},
            "timings": timings,
        }
        result = PipelineResult(diagram, dominant, prange, diagnostics, schedule)

        stage = "write"
        out = cfg.output.get("dir")
        if out:
            write_outputs(result, out, svg=cfg.output.get("svg", True))
        lap("write")
    except PipelineError:
        raise
    except (ValueError, OSError, KeyError, TypeError) as exc:
        raise PipelineError(stage, str(exc)) from exc
    return result


def write_outputs(result: PipelineResult, out_dir, svg: bool = True) -> Path:
    from .plotting import render_diagram

    out = Path(out_dir)
    out.mkdir(parents=True, exist_ok=True)
    result.diagram.save(out / "diagram.json")
    result.diagram.save_csv(out / "diagram.csv")
    (out / "summary.json").write_text(json.dumps(result.summary(), indent=1, sort_keys=True))
    if svg:
        render_diagram(result.diagram, out / "diagram.svg")
    return out
