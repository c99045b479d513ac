"""Serialization of reports and point clouds: CSV, JSON, and a small SVG
scatter renderer.

Rational values are written as exact "num/den" strings and floats with 17
significant digits, so every emitted number round-trips. Row iterators are
consumed lazily; nothing here buffers a whole trajectory unless the output
format (SVG) inherently needs the extent of the data first.
"""

import json

from .reference import PERIOD_CLASS_COLORS

SWEEP_HEADER = "d,d_mod_6,c,count,longest_cycle,n_cycles,elapsed_ms"
TRAJECTORY_HEADER = "base_x,base_y,period_class,step,x,y"
ORBIT_HEADER = "step,x,y"


def float_str(x: float) -> str:
    return format(x, ".17g")


def sweep_csv_lines(rows):
    """The sweep table as CSV lines (no newlines), header first."""
    yield SWEEP_HEADER
    for r in rows:
        yield (f"{r.d},{r.d_mod_6},{r.c},{r.count},{r.longest_cycle},"
               f"{r.n_cycles},{r.elapsed_ms}")


def periodic_csv_lines(report):
    """A single enumeration summary in the same shape as a sweep row."""
    yield SWEEP_HEADER
    yield (f"{report.d},{report.d % 6},{report.c},{report.count},"
           f"{report.longest_cycle},{report.n_cycles},{report.elapsed_ms}")


def trajectory_csv_lines(rows):
    """Atlas point-cloud rows as CSV lines, header first."""
    yield TRAJECTORY_HEADER
    for bx, by, cls, step, x, y in rows:
        yield f"{bx},{by},{cls},{step},{float_str(x)},{float_str(y)}"


def orbit_csv_lines(trajectory):
    """A single float orbit as CSV lines, header first."""
    yield ORBIT_HEADER
    for step, (x, y) in enumerate(trajectory):
        yield f"{step},{float_str(x)},{float_str(y)}"


def write_lines(lines, fp) -> int:
    """Stream lines to a text file object, one per line; returns the count."""
    n = 0
    for line in lines:
        fp.write(line)
        fp.write("\n")
        n += 1
    return n


def cycles_json(report) -> str:
    """Cycle records of one enumeration as a JSON document."""
    doc = {"d": report.d, "c": report.c, "orientation": report.orientation,
           "count": report.count, "full_count": report.full_count,
           "longest_cycle": report.longest_cycle,
           "cycles": [r.to_record() for r in report.cycles]}
    return json.dumps(doc, indent=2)


def svg_scatter(rows, width: int = 800, height: int = 800,
                subsample: int = 1, radius: float = 1.2) -> str:
    """Minimal SVG scatter of atlas rows, one circle per sampled point,
    colored by period class.

    subsample keeps every n-th row to bound file size; the viewport is
    fitted to the sampled points with a small margin.
    """
    if subsample < 1:
        raise ValueError(f"subsample must be >= 1, got {subsample}")
    pts = []
    for i, (_, _, cls, _, x, y) in enumerate(rows):
        if i % subsample == 0:
            pts.append((x, y, cls))
    if not pts:
        raise ValueError("no points to render")
    xs = [p[0] for p in pts]
    ys = [p[1] for p in pts]
    lo_x, hi_x, lo_y, hi_y = min(xs), max(xs), min(ys), max(ys)
    span = max(hi_x - lo_x, hi_y - lo_y, 1e-9)
    margin = 0.03 * span
    lo_x -= margin
    lo_y -= margin
    span += 2 * margin
    scale = min(width, height) / span

    def sx(x):
        return (x - lo_x) * scale

    def sy(y):
        # flip so larger y is higher on the canvas
        return height - (y - lo_y) * scale

    parts = [
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{width}" '
        f'height="{height}" viewBox="0 0 {width} {height}">',
        f'<rect width="{width}" height="{height}" fill="white"/>',
    ]
    for cls, color in PERIOD_CLASS_COLORS.items():
        cluster = [p for p in pts if p[2] == cls]
        if not cluster:
            continue
        parts.append(f'<g fill="{color}" fill-opacity="0.6">')
        for x, y, _ in cluster:
            parts.append(f'<circle cx="{sx(x):.2f}" cy="{sy(y):.2f}" '
                         f'r="{radius}"/>')
        parts.append("</g>")
    parts.append("</svg>")
    return "\n".join(parts)
