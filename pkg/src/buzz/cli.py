"""``buzz`` command line: gen, embed, build, compute, run, plot."""

from __future__ import annotations

import json
import sys
from pathlib import Path

import click

from . import __version__
from .dynamics import FamilySpec, make_buzz_family, write_family
from .experiments import EXPERIMENTS
from .geometry import (
    delay_embed,
    globalize,
    greedy_permutation,
    read_point_cloud_csv,
    read_time_series_csv,
    write_point_cloud_csv,
)
from .pipeline import PipelineConfig, PipelineError, run_pipeline
from .plotting import render_diagram
from .zigzag_builder import ZigzagSchedule, build_schedule_fixed, build_schedule_variable
from .zigzag_engine import ZigzagDiagram, compute_zigzag


def _fail(stage: str, exc: Exception):
    click.echo(f"error: [{stage}] {exc}", err=True)
    sys.exit(1)


def _floats(text: str) -> list[float]:
    try:
        return [float(v) for v in text.split(",") if v.strip()]
    except ValueError:
        raise click.BadParameter(f"expected comma-separated numbers, got {text!r}") from None


def _radius_arg(radius, radii):
    if (radius is None) == (radii is None):
        raise click.UsageError("give exactly one of --radius or --radii")
    return radius if radius is not None else _floats(radii)


@click.group()
@click.version_option(version=__version__)
def main():
    """Zigzag persistence of delay-embedded time series (BuZZ)."""


@main.command()
@click.argument("kind", type=click.Choice(["sine", "selkov"]))
@click.option("--grid", required=True, help="Comma-separated amplitudes (sine) or b values (selkov).")
@click.option("--seed", type=int, default=0, show_default=True, help="Noise seed (sine).")
@click.option("--noise", type=float, default=0.1, show_default=True, help="Noise amplitude (sine).")
@click.option("--out", type=click.Path(file_okay=False), required=True)
def gen(kind, grid, seed, noise, out):
    """Write a generated family of time series plus manifest.json."""
    settings = {"seed": seed, "noise_amp": noise} if kind == "sine" else {}
    try:
        series = make_buzz_family(kind, _floats(grid), dict(settings))
        path = write_family(series, out, FamilySpec(kind, _floats(grid), settings))
    except (ValueError, OSError) as exc:
        _fail("gen", exc)
    click.echo(f"wrote {len(series)} series, manifest {path}")


@main.command()
@click.argument("series", nargs=-1, required=True, type=click.Path(exists=True, dir_okay=False))
@click.option("--dim", "d", type=int, required=True, help="Embedding dimension.")
@click.option("--tau", type=int, required=True, help="Delay in samples.")
@click.option("--subsample", type=int, default=None, help="Greedy-subsample each cloud to k points.")
@click.option("--seed", type=int, default=0, show_default=True, help="Greedy seed index.")
@click.option("--out", type=click.Path(file_okay=False), required=True)
def embed(series, d, tau, subsample, seed, out):
    """Delay-embed time-series CSVs into point-cloud CSVs (cloud_XXX.csv)."""
    out = Path(out)
    try:
        out.mkdir(parents=True, exist_ok=True)
        for i, p in enumerate(series):
            cloud = delay_embed(read_time_series_csv(p), d, tau, snapshot=i)
            if subsample:
                cloud = greedy_permutation(cloud, min(subsample, len(cloud)), seed)
            write_point_cloud_csv(cloud, out / f"cloud_{i:03d}.csv")
    except (ValueError, OSError) as exc:
        _fail("embed", exc)
    click.echo(f"wrote {len(series)} point clouds to {out}")


@main.command()
@click.argument("clouds", nargs=-1, required=True, type=click.Path(exists=True, dir_okay=False))
@click.option("--radius", type=float, default=None, help="Fixed Rips radius.")
@click.option("--radii", default=None, help="Per-snapshot radii r0,r1,...")
@click.option("--max-hom-dim", type=int, default=1, show_default=True)
@click.option("--out", type=click.Path(dir_okay=False), required=True, help="Schedule JSON path.")
def build(clouds, radius, radii, max_hom_dim, out):
    """Point-cloud CSVs (in snapshot order) -> zigzag schedule JSON."""
    r = _radius_arg(radius, radii)
    try:
        cl = globalize([read_point_cloud_csv(p, snapshot=i) for i, p in enumerate(clouds)])
    except (ValueError, OSError) as exc:
        _fail("load", exc)
    try:
        if isinstance(r, list):
            schedule = build_schedule_variable(cl, r, max_hom_dim + 1)
        else:
            schedule = build_schedule_fixed(cl, r, max_hom_dim + 1)
        schedule.save(out)
    except (ValueError, OSError) as exc:
        _fail("build", exc)
    click.echo(f"wrote schedule with {len(schedule.simplices)} simplices to {out}")


@main.command()
@click.argument("schedule", type=click.Path(exists=True, dir_okay=False))
@click.option("--max-hom-dim", type=int, default=1, show_default=True)
@click.option("--out", type=click.Path(file_okay=False), required=True)
def compute(schedule, max_hom_dim, out):
    """Schedule JSON -> diagram.json and diagram.csv."""
    try:
        sc = ZigzagSchedule.load(schedule)
    except (ValueError, OSError, KeyError) as exc:
        _fail("load", exc)
    try:
        diagram = compute_zigzag(sc, max_hom_dim)
    except ValueError as exc:
        _fail("compute", exc)
    out = Path(out)
    out.mkdir(parents=True, exist_ok=True)
    diagram.save(out / "diagram.json")
    diagram.save_csv(out / "diagram.csv")
    click.echo(f"{len(diagram.points)} points -> {out / 'diagram.json'}")


@main.command()
@click.option("--config", "config_path", type=click.Path(exists=True, dir_okay=False), default=None)
@click.option("--experiment", type=click.Choice(sorted(EXPERIMENTS)), default=None,
              help="Use a built-in experiment config instead of --config.")
@click.option("--radius", type=float, default=None, help="Override the fixed radius.")
@click.option("--radii", default=None, help="Override with per-snapshot radii.")
@click.option("--dim", "d", type=int, default=None, help="Override the embedding dimension.")
@click.option("--tau", type=int, default=None, help="Override the delay.")
@click.option("--subsample", type=int, default=None, help="Override the subsample size.")
@click.option("--seed", type=int, default=None, help="Override the noise seed.")
@click.option("--max-hom-dim", type=int, default=None)
@click.option("--out", type=click.Path(file_okay=False), default=None)
def run(config_path, experiment, radius, radii, d, tau, subsample, seed, max_hom_dim, out):
    """Full pipeline from a JSON config (or a built-in experiment)."""
    if (config_path is None) == (experiment is None):
        raise click.UsageError("give exactly one of --config or --experiment")
    try:
        cfg = PipelineConfig.load(config_path) if config_path else EXPERIMENTS[experiment]()
        obj = cfg.to_dict()
        if radius is not None or radii is not None:
            obj["radius"] = _radius_arg(radius, radii)
        if d is not None or tau is not None:
            emb = dict(obj["embedding"] or {})
            emb.update({k: v for k, v in (("dimension", d), ("delay", tau)) if v is not None})
            obj["embedding"] = emb
        if subsample is not None:
            obj["subsample"] = {**(obj["subsample"] or {}), "k": subsample}
        if seed is not None:
            obj["seed"] = seed
        if max_hom_dim is not None:
            obj["max_hom_dim"] = max_hom_dim
        if out is not None:
            obj["output"] = {**obj["output"], "dir": out}
        cfg = PipelineConfig.from_dict(obj)
        result = run_pipeline(cfg)
    except PipelineError as exc:
        click.echo(f"error: {exc}", err=True)
        sys.exit(1)
    click.echo(json.dumps(result.summary()["dominant"]))
    if result.parameter_range is not None:
        lo, hi = result.parameter_range
        click.echo(f"parameter range: {lo} .. {hi}")
    if cfg.output.get("dir"):
        click.echo(f"outputs in {cfg.output['dir']}")


@main.command()
@click.argument("diagram", type=click.Path(exists=True, dir_okay=False))
@click.option("--out", type=click.Path(dir_okay=False), required=True, help="SVG path.")
def plot(diagram, out):
    """Diagram JSON -> SVG."""
    try:
        render_diagram(ZigzagDiagram.load(diagram), out)
    except (ValueError, OSError, KeyError) as exc:
        _fail("plot", exc)
    click.echo(f"wrote {out}")


if __name__ == "__main__":
    main()
