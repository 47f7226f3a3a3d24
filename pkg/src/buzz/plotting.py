"""Persistence diagrams as plain SVG (no plotting library, byte-stable output)."""

from __future__ import annotations

from pathlib import Path

from .zigzag_engine import ZigzagDiagram

SIZE = 400
MARGIN = 50
# (fill, shape) per homology dimension; cycles if there are more dimensions
STYLES = [("#1f77b4", "circle"), ("#d62728", "triangle"), ("#2ca02c", "square")]


def _fmt(x: float) -> str:
    return f"{x:.2f}".rstrip("0").rstrip(".")


def _marker(kind: str, x: float, y: float, color: str) -> str:
    if kind == "circle":
        return f'<circle cx="{_fmt(x)}" cy="{_fmt(y)}" r="5" fill="{color}"/>'
    if kind == "triangle":
        pts = f"{_fmt(x)},{_fmt(y - 6)} {_fmt(x - 5.5)},{_fmt(y + 4)} {_fmt(x + 5.5)},{_fmt(y + 4)}"
        return f'<polygon points="{pts}" fill="{color}"/>'
    return f'<rect x="{_fmt(x - 4.5)}" y="{_fmt(y - 4.5)}" width="9" height="9" fill="{color}"/>'


def render_diagram(diagram: ZigzagDiagram, path, title: str = "") -> Path:
    """Birth on x, death on y, the diagonal, ticks every half step.

    Axis range runs from 0 to one past the last snapshot, so every zigzag
    point fits. Points with the same coordinates are drawn once per copy.
    """
    hi = float(max(diagram.n_snapshots, 1))
    hi = max([hi] + [q.death for q in diagram.points])
    span = SIZE - 2 * MARGIN

    def sx(v):
        return MARGIN + span * v / hi

    def sy(v):
        return SIZE - MARGIN - span * v / hi

    out = [
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{SIZE}" height="{SIZE}" viewBox="0 0 {SIZE} {SIZE}">',
        f'<rect width="{SIZE}" height="{SIZE}" fill="white"/>',
        f'<line x1="{sx(0)}" y1="{sy(0)}" x2="{sx(hi)}" y2="{sy(0)}" stroke="black"/>',
        f'<line x1="{sx(0)}" y1="{sy(0)}" x2="{sx(0)}" y2="{sy(hi)}" stroke="black"/>',
        f'<line x1="{sx(0)}" y1="{sy(0)}" x2="{sx(hi)}" y2="{sy(hi)}" stroke="gray" stroke-dasharray="4 3"/>',
    ]
    for k in range(int(2 * hi) + 1):
        v = k / 2
        major = k % 2 == 0
        ln = 6 if major else 3
        out.append(f'<line x1="{_fmt(sx(v))}" y1="{sy(0)}" x2="{_fmt(sx(v))}" y2="{sy(0) + ln}" stroke="black"/>')
        out.append(f'<line x1="{sx(0) - ln}" y1="{_fmt(sy(v))}" x2="{sx(0)}" y2="{_fmt(sy(v))}" stroke="black"/>')
        if major:
            out.append(f'<text x="{_fmt(sx(v))}" y="{sy(0) + 20}" font-size="11" text-anchor="middle">{_fmt(v)}</text>')
            out.append(f'<text x="{sx(0) - 10}" y="{_fmt(sy(v) + 4)}" font-size="11" text-anchor="end">{_fmt(v)}</text>')
    out.append(f'<text x="{SIZE / 2}" y="{SIZE - 8}" font-size="12" text-anchor="middle">birth</text>')
    out.append(f'<text x="14" y="{SIZE / 2}" font-size="12" text-anchor="middle" '
               f'transform="rotate(-90 14 {SIZE / 2})">death</text>')
    if title:
        out.append(f'<text x="{SIZE / 2}" y="24" font-size="13" text-anchor="middle">{title}</text>')
    dims = sorted({q.dim for q in diagram.points})
    for q in diagram.points:
        color, shape = STYLES[q.dim % len(STYLES)]
        out.append(_marker(shape, sx(q.birth), sy(q.death), color))
    for j, p in enumerate(dims):
        color, shape = STYLES[p % len(STYLES)]
        y = MARGIN + 16 * j
        out.append(_marker(shape, SIZE - MARGIN - 30, y, color))
        out.append(f'<text x="{SIZE - MARGIN - 20}" y="{y + 4}" font-size="11">H{p}</text>')
    out.append("</svg>")
    path = Path(path)
    path.write_text("\n".join(out) + "\n")
    return path
