"""Deterministic output writers: CSV (12 significant digits), JSON, SVG.

All file writes are atomic (temp file + rename) so partial results never land
on disk.
"""
from __future__ import annotations

import json
import os
import tempfile
from fractions import Fraction

from .exactnum import rat_str


def fmt_value(v) -> str:
    """Stable cell formatting: 12 significant digits for floats, exact
    num/den for rationals, plain repr for ints/strings."""
    if isinstance(v, Fraction):
        return rat_str(v)
    if isinstance(v, bool):
        return "1" if v else "0"
    if isinstance(v, int):
        return str(v)
    if isinstance(v, complex):
        return f"{v.real:.12g}{v.imag:+.12g}i"
    if isinstance(v, float):
        return f"{v:.12g}"
    return str(v)


def csv_text(header: list[str], rows: list[tuple]) -> str:
    lines = [",".join(header)]
    for row in rows:
        lines.append(",".join(fmt_value(v) for v in row))
    return "\n".join(lines) + "\n"


def json_text(obj) -> str:
    return json.dumps(obj, indent=2, sort_keys=True) + "\n"


def write_atomic(path: str, text: str) -> None:
    d = os.path.dirname(os.path.abspath(path))
    fd, tmp = tempfile.mkstemp(dir=d, prefix=".denomlab-", suffix=".tmp")
    try:
        with os.fdopen(fd, "w") as fh:
            fh.write(text)
        os.replace(tmp, path)
    except BaseException:
        if os.path.exists(tmp):
            os.unlink(tmp)
        raise


def emit(text: str, path: str | None) -> None:
    """Write to the path atomically, or to stdout when path is None."""
    if path is None:
        print(text, end="")
    else:
        write_atomic(path, text)


def svg_histogram(bin_lo, bin_hi, density, model=None, title="",
                  width=640, height=420) -> str:
    """Self-contained SVG bar chart with an optional overlaid model curve.

    `model` is a list of (x, y) pairs drawn as a polyline over the bars.
    """
    ml, mr, mt, mb = 50, 15, 30, 35
    pw, ph = width - ml - mr, height - mt - mb
    x0, x1 = float(bin_lo[0]), float(bin_hi[-1])
    ys = [float(d) for d in density]
    if model:
        ys += [float(y) for _, y in model]
    y1 = max(ys) * 1.08 or 1.0

    def sx(x):
        return ml + (float(x) - x0) / (x1 - x0) * pw

    def sy(y):
        return mt + ph - float(y) / y1 * ph

    parts = [
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{width}" height="{height}" '
        f'viewBox="0 0 {width} {height}">',
        f'<rect width="{width}" height="{height}" fill="white"/>',
        f'<text x="{width/2:.1f}" y="18" text-anchor="middle" '
        f'font-family="sans-serif" font-size="13">{title}</text>',
    ]
    for lo, hi, d in zip(bin_lo, bin_hi, density):
        x = sx(lo)
        w = max(sx(hi) - x, 0.5)
        y = sy(d)
        parts.append(
            f'<rect x="{x:.2f}" y="{y:.2f}" width="{w:.2f}" '
            f'height="{mt + ph - y:.2f}" fill="#7aa6d6" stroke="#3a6ea5" stroke-width="0.5"/>'
        )
    if model:
        pts = " ".join(f"{sx(x):.2f},{sy(y):.2f}" for x, y in model)
        parts.append(f'<polyline points="{pts}" fill="none" stroke="#c0392b" stroke-width="1.5"/>')
    # axes
    parts.append(f'<line x1="{ml}" y1="{mt+ph}" x2="{ml+pw}" y2="{mt+ph}" stroke="black"/>')
    parts.append(f'<line x1="{ml}" y1="{mt}" x2="{ml}" y2="{mt+ph}" stroke="black"/>')
    for frac in (0.0, 0.25, 0.5, 0.75, 1.0):
        xv = x0 + frac * (x1 - x0)
        yv = frac * y1
        parts.append(
            f'<text x="{sx(xv):.1f}" y="{mt+ph+16}" text-anchor="middle" '
            f'font-family="sans-serif" font-size="10">{xv:.3g}</text>'
        )
        parts.append(
            f'<text x="{ml-6}" y="{sy(yv)+3:.1f}" text-anchor="end" '
            f'font-family="sans-serif" font-size="10">{yv:.3g}</text>'
        )
    parts.append("</svg>")
    return "\n".join(parts) + "\n"
