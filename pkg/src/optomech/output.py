"""CSV and SVG serialization of sweep results."""

import csv
import io
import os
import tempfile
from xml.sax.saxutils import escape

import numpy as np

__all__ = ["CSV_COLUMNS", "format_number", "sweep_to_csv", "write_csv", "read_csv", "parse_csv",
           "sweep_to_svg", "write_svg", "UNSTABLE_COLOR"]

CSV_COLUMNS = ("axis1", "axis2", "stable", "margin", "eta_minus", "e_n", "a_s_abs")

UNSTABLE_COLOR = "#2b4c9b"
ERROR_COLOR = "#9a9a9a"
_RAMP = ((255, 247, 236), (253, 187, 132), (239, 101, 72), (179, 0, 0), (90, 0, 0))


def format_number(x) -> str:
    """Shortest representation that round-trips; empty string for ``None``."""
    if x is None:
        return ""
    return repr(float(x))


def _columns(n_axes):
    return CSV_COLUMNS if n_axes == 2 else tuple(c for c in CSV_COLUMNS if c != "axis2")


def sweep_to_csv(result) -> str:
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(_columns(len(result.axes)))
    for coords, rec in result.rows():
        writer.writerow([format_number(c) for c in coords] + [
            "true" if rec.stable else "false",
            format_number(rec.margin),
            format_number(rec.eta_minus),
            format_number(rec.e_n),
            format_number(rec.a_s_abs),
        ])
    return buf.getvalue()


def _atomic_write(path, text):
    directory = os.path.dirname(os.path.abspath(path))
    fd, tmp = tempfile.mkstemp(dir=directory, prefix=".partial-")
    try:
        os.chmod(tmp, 0o644)
        with os.fdopen(fd, "w", newline="") as fh:
            fh.write(text)
        os.replace(tmp, path)
    except BaseException:
        if os.path.exists(tmp):
            os.remove(tmp)
        raise


def write_csv(result, path):
    _atomic_write(path, sweep_to_csv(result))


def parse_csv(text):
    """Parse emitted CSV text back into a list of dicts with typed values."""
    rows = []
    for row in csv.DictReader(io.StringIO(text)):
        out = {}
        for key, value in row.items():
            if key == "stable":
                out[key] = value == "true"
            else:
                out[key] = float(value) if value != "" else None
        rows.append(out)
    return rows


def read_csv(path):
    with open(path, newline="") as fh:
        return parse_csv(fh.read())


def _color(t):
    """Linear interpolation along the ramp for t in [0, 1]."""
    t = min(max(t, 0.0), 1.0) * (len(_RAMP) - 1)
    i = min(int(t), len(_RAMP) - 2)
    f = t - i
    c = [round(a + f * (b - a)) for a, b in zip(_RAMP[i], _RAMP[i + 1])]
    return "#%02x%02x%02x" % tuple(c)


def sweep_to_svg(result, cell=6, title=None) -> str:
    """Self-contained SVG heatmap of E_N; unstable cells use ``UNSTABLE_COLOR``.

    The first axis runs vertically (increasing upwards), the second horizontally.
    A 1-D sweep is drawn as a single horizontal strip.
    """
    e_n = result.field("e_n")
    if e_n.ndim == 1:
        grid = e_n[None, :]
        x_axis, y_axis = result.axes[0], None
    else:
        grid = e_n
        x_axis, y_axis = result.axes[1], result.axes[0]
    ny, nx = grid.shape
    cell_h = cell if y_axis is not None else 4 * cell
    finite = grid[np.isfinite(grid)]
    lo, hi = (float(finite.min()), float(finite.max())) if finite.size else (0.0, 0.0)
    span = hi - lo if hi > lo else 1.0

    left, top, bar = 70, 30 if title else 10, 16
    bar_h = max(ny * cell_h, 100)
    width = left + nx * cell + 40 + bar + 80
    height = top + bar_h + 50
    parts = [
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{width}" height="{height}" '
        f'font-family="sans-serif" font-size="11">',
        f'<rect width="{width}" height="{height}" fill="white"/>',
    ]
    if title:
        parts.append(f'<text x="{left}" y="18" font-size="13">{escape(title)}</text>')
    flat = result.cells.reshape(ny, nx) if result.cells.ndim == 2 else result.cells[None, :]
    for j in range(ny):
        y = top + (ny - 1 - j) * cell_h
        for i in range(nx):
            rec = flat[j, i]
            if rec.error is not None:
                color = ERROR_COLOR
            elif not rec.stable:
                color = UNSTABLE_COLOR
            else:
                color = _color((grid[j, i] - lo) / span)
            parts.append(f'<rect x="{left + i * cell}" y="{y}" width="{cell}" '
                         f'height="{cell_h}" fill="{color}"/>')

    base_y = top + ny * cell_h
    parts.append(f'<text x="{left}" y="{base_y + 15}">{x_axis.start:g}</text>')
    parts.append(f'<text x="{left + nx * cell}" y="{base_y + 15}" text-anchor="end">'
                 f'{x_axis.stop:g}</text>')
    parts.append(f'<text x="{left + nx * cell / 2}" y="{base_y + 32}" text-anchor="middle">'
                 f'{escape(x_axis.param_name)}</text>')
    if y_axis is not None:
        parts.append(f'<text x="{left - 5}" y="{base_y}" text-anchor="end">{y_axis.start:g}</text>')
        parts.append(f'<text x="{left - 5}" y="{top + 10}" text-anchor="end">{y_axis.stop:g}</text>')
        parts.append(f'<text x="{left - 5}" y="{top + ny * cell_h / 2}" text-anchor="end">'
                     f'{escape(y_axis.param_name)}</text>')

    # color bar
    bx = left + nx * cell + 40
    steps = 50
    for k in range(steps):
        yk = top + bar_h - (k + 1) * bar_h / steps
        parts.append(f'<rect x="{bx}" y="{yk:.2f}" width="{bar}" height="{bar_h / steps + 0.5:.2f}" '
                     f'fill="{_color(k / (steps - 1))}"/>')
    parts.append(f'<text x="{bx + bar + 4}" y="{top + 10}">max {hi:.4g}</text>')
    parts.append(f'<text x="{bx + bar + 4}" y="{top + bar_h}">min {lo:.4g}</text>')
    parts.append(f'<rect x="{bx}" y="{top + bar_h + 10}" width="{bar}" height="{bar}" '
                 f'fill="{UNSTABLE_COLOR}"/>')
    parts.append(f'<text x="{bx + bar + 4}" y="{top + bar_h + 22}">unstable</text>')
    parts.append("</svg>")
    return "\n".join(parts) + "\n"


def write_svg(result, path, **kwargs):
    _atomic_write(path, sweep_to_svg(result, **kwargs))
