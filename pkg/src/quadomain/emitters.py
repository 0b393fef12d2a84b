"""Deterministic CSV, JSON and SVG writers.

Floats are written with 17 significant digits so that every double
round-trips; nothing depends on time, locale or hash order.
"""
import json
import math
from xml.sax.saxutils import escape

import numpy as np

SVG_MARGIN = 0.05
SVG_SIZE = 480


def fmt_float(x):
    x = float(x)
    if math.isnan(x):
        return "NaN"
    if math.isinf(x):
        return "Infinity" if x > 0 else "-Infinity"
    return format(x, ".17g")


def _json(obj, indent, level):
    pad = " " * (indent * (level + 1))
    end = " " * (indent * level)
    if obj is None:
        return "null"
    if isinstance(obj, (bool, np.bool_)):
        return "true" if obj else "false"
    if isinstance(obj, (int, np.integer)):
        return str(int(obj))
    if isinstance(obj, (float, np.floating)):
        return fmt_float(obj)
    if isinstance(obj, (complex, np.complexfloating)):
        return _json({"re": obj.real, "im": obj.imag}, indent, level)
    if isinstance(obj, str):
        return json.dumps(obj)
    if isinstance(obj, np.ndarray):
        obj = obj.tolist()
    if isinstance(obj, dict):
        if not obj:
            return "{}"
        items = [f'{pad}{_json(str(k), indent, level + 1)}: {_json(v, indent, level + 1)}'
                 for k, v in obj.items()]
        return "{\n" + ",\n".join(items) + "\n" + end + "}"
    if isinstance(obj, (list, tuple)):
        if not obj:
            return "[]"
        if all(isinstance(v, (int, float, np.integer, np.floating)) and not isinstance(v, bool)
               for v in obj):
            return "[" + ", ".join(_json(v, indent, level + 1) for v in obj) + "]"
        items = [pad + _json(v, indent, level + 1) for v in obj]
        return "[\n" + ",\n".join(items) + "\n" + end + "]"
    raise TypeError(f"cannot serialize {type(obj).__name__}")


def to_json(obj, indent=2):
    return _json(obj, indent, 0) + "\n"


def to_csv(header, rows):
    lines = [",".join(header)]
    for row in rows:
        cells = []
        for v in row:
            if isinstance(v, (bool, np.bool_)):
                cells.append(str(int(v)))
            elif isinstance(v, (int, np.integer)):
                cells.append(str(int(v)))
            elif isinstance(v, (float, np.floating)):
                cells.append(fmt_float(v))
            else:
                cells.append(str(v))
        lines.append(",".join(cells))
    return "\n".join(lines) + "\n"


def to_svg(curves, labels=None, title=None):
    """One closed path per curve; y is flipped so that the picture has the usual orientation."""
    pts = np.concatenate([np.asarray(c, dtype=complex) for c in curves])
    xmin, xmax = pts.real.min(), pts.real.max()
    ymin, ymax = -pts.imag.max(), -pts.imag.min()
    w, h = max(xmax - xmin, 1e-12), max(ymax - ymin, 1e-12)
    mx, my = SVG_MARGIN * w, SVG_MARGIN * h
    vb = (xmin - mx, ymin - my, w + 2 * mx, h + 2 * my)
    stroke = fmt_float(0.004 * max(vb[2], vb[3]))
    out = ['<?xml version="1.0" encoding="UTF-8"?>',
           f'<svg xmlns="http://www.w3.org/2000/svg" width="{SVG_SIZE}" '
           f'height="{int(round(SVG_SIZE * vb[3] / vb[2]))}" '
           f'viewBox="{" ".join(fmt_float(v) for v in vb)}">']
    if title:
        out.append(f"<title>{escape(title)}</title>")
    for i, c in enumerate(curves):
        c = np.asarray(c, dtype=complex)
        d = "M " + " L ".join(f"{fmt_float(z.real)} {fmt_float(-z.imag)}" for z in c) + " Z"
        label = f' data-label="{escape(str(labels[i]))}"' if labels else ""
        out.append(f'<path{label} d="{d}" fill="none" stroke="black" stroke-width="{stroke}"/>')
    out.append("</svg>")
    return "\n".join(out) + "\n"
