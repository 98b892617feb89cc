"""File formats: grid CSV and GGR1 binary dumps, orbit CSV, and a dependency-free SVG writer."""
from __future__ import annotations

import csv
import struct

import numpy as np

from .grid import GridFunction, TorusGrid

MAGIC = b"GGR1"


def write_grid_csv(f: GridFunction, path) -> None:
    """Rows (a, b, re, im) with a, b in 1..Ñ."""
    nt = f.grid.n_tilde
    with open(path, "w", newline="") as fh:
        w = csv.writer(fh)
        w.writerow(["a", "b", "re", "im"])
        for a in range(1, nt + 1):
            for b in range(1, nt + 1):
                v = f.values[a % nt, b % nt]
                w.writerow([a, b, repr(float(v.real)), repr(float(v.imag))])


def read_grid_csv(path, grid: TorusGrid | None = None) -> GridFunction:
    rows = []
    with open(path, newline="") as fh:
        for r in csv.DictReader(fh):
            rows.append((int(r["a"]), int(r["b"]), float(r["re"]), float(r["im"])))
    if not rows:
        raise ValueError(f"{path}: empty grid file")
    nt = max(max(a, b) for a, b, _, _ in rows)
    if grid is None:
        grid = TorusGrid(1, nt, nt, True)
    elif grid.n_tilde != nt:
        raise ValueError(f"{path}: grid size {nt} does not match Ñ={grid.n_tilde}")
    vals = np.zeros(grid.shape, dtype=complex)
    for a, b, re, im in rows:
        vals[a % nt, b % nt] = complex(re, im)
    return GridFunction(grid, vals)


def write_grid_binary(f: GridFunction, path) -> None:
    """Magic 'GGR1', little-endian u32 Ñ, then Ñ^2 complex64 values row-major over (a, b) = 1..Ñ."""
    nt = f.grid.n_tilde
    order = np.roll(np.arange(nt), -1)  # labels 1..Ñ -> storage indices 1..Ñ-1, 0
    data = f.values[np.ix_(order, order)].astype("<c8")
    with open(path, "wb") as fh:
        fh.write(MAGIC)
        fh.write(struct.pack("<I", nt))
        fh.write(data.tobytes())


def read_grid_binary(path, grid: TorusGrid | None = None) -> GridFunction:
    with open(path, "rb") as fh:
        if fh.read(4) != MAGIC:
            raise ValueError(f"{path}: not a GGR1 file")
        (nt,) = struct.unpack("<I", fh.read(4))
        data = np.frombuffer(fh.read(), dtype="<c8")
    if data.size != nt * nt:
        raise ValueError(f"{path}: expected {nt * nt} values, found {data.size}")
    if grid is None:
        grid = TorusGrid(1, nt, nt, True)
    vals = np.empty((nt, nt), dtype=complex)
    order = np.roll(np.arange(nt), -1)
    vals[np.ix_(order, order)] = data.reshape(nt, nt)
    return GridFunction(grid, vals)


def read_grid(path, grid: TorusGrid | None = None) -> GridFunction:
    with open(path, "rb") as fh:
        head = fh.read(4)
    return read_grid_binary(path, grid) if head == MAGIC else read_grid_csv(path, grid)


def write_orbit_csv(points: np.ndarray, path) -> None:
    """Rows (m, n, x1..xs, y) for (m, n) in [N]^2."""
    n1, n2, k = points.shape
    with open(path, "w", newline="") as fh:
        w = csv.writer(fh)
        w.writerow(["m", "n"] + [f"x{i + 1}" for i in range(k - 1)] + ["y"])
        for m in range(n1):
            for n in range(n2):
                w.writerow([m + 1, n + 1] + [repr(float(v)) for v in points[m, n]])


def _colour(t: float) -> str:
    # linear ramp dark blue -> yellow
    t = min(max(t, 0.0), 1.0)
    r, g, b = int(30 + 225 * t), int(30 + 200 * t), int(120 - 90 * t)
    return f"#{r:02x}{g:02x}{b:02x}"


def svg_heatmap(values: np.ndarray, path, cell: int = 4, title: str = "") -> None:
    """Heatmap of a real 2-D array, written as plain SVG rects."""
    v = np.asarray(values, float)
    lo, hi = float(v.min()), float(v.max())
    span = hi - lo or 1.0
    h, w = v.shape
    out = [f'<svg xmlns="http://www.w3.org/2000/svg" width="{w * cell}" height="{h * cell + 16}">']
    if title:
        out.append(f'<text x="2" y="12" font-size="12">{title}</text>')
    for i in range(h):
        for j in range(w):
            out.append(f'<rect x="{j * cell}" y="{16 + i * cell}" width="{cell}" height="{cell}" '
                       f'fill="{_colour((v[i, j] - lo) / span)}"/>')
    out.append("</svg>")
    with open(path, "w") as fh:
        fh.write("\n".join(out))


def svg_lines(xs, series: dict, path, width: int = 480, height: int = 320, title: str = "") -> None:
    """Line chart of one or more series over shared x values."""
    xs = np.asarray(xs, float)
    ys = np.concatenate([np.asarray(s, float) for s in series.values()])
    x0, x1 = float(xs.min()), float(xs.max())
    y0, y1 = float(ys.min()), float(ys.max())
    sx = (width - 40) / ((x1 - x0) or 1.0)
    sy = (height - 40) / ((y1 - y0) or 1.0)
    palette = ["#1f77b4", "#d62728", "#2ca02c", "#9467bd", "#ff7f0e"]
    out = [f'<svg xmlns="http://www.w3.org/2000/svg" width="{width}" height="{height}">']
    if title:
        out.append(f'<text x="20" y="14" font-size="12">{title}</text>')
    for k, (name, s) in enumerate(series.items()):
        pts = " ".join(f"{20 + (x - x0) * sx:.2f},{height - 20 - (y - y0) * sy:.2f}"
                       for x, y in zip(xs, np.asarray(s, float)))
        colour = palette[k % len(palette)]
        out.append(f'<polyline fill="none" stroke="{colour}" points="{pts}"/>')
        out.append(f'<text x="{width - 120}" y="{20 + 14 * k}" font-size="11" fill="{colour}">{name}</text>')
    out.append("</svg>")
    with open(path, "w") as fh:
        fh.write("\n".join(out))
