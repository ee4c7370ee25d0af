"""Serialization and figure-data emission: exact JSON, point-stream CSV,
and static SVG scatters.

Exact objects serialize as decimal strings of rationals, never floats, and
re-parse bit-identically.  Floats appear only in CSV point streams, with
the working precision recorded in every row; point order is deterministic
(sorted by modulus, then phase), so regenerated files diff cleanly.
"""

from __future__ import annotations

import json

import mpmath

from .gaussian import GaussianRational
from .rootfinder import PoleZeroMap
from .ratfunc import RationalFunction
from .umemura import UmemuraTable

__all__ = [
    "CSV_HEADER",
    "u_to_dict",
    "u_from_dict",
    "table_to_json",
    "table_from_json",
    "format_mpf",
    "map_csv_lines",
    "map_svg",
    "probe_csv_lines",
    "write_text",
]

CSV_HEADER = "plane,re,im,class,factor,n,m,prec"


def u_to_dict(u: RationalFunction, n: int, m: GaussianRational) -> dict:
    return {"m": str(m), "n": n, "num": u.num.to_lists(), "den": u.den.to_lists()}


def u_from_dict(d: dict):
    u = RationalFunction.from_dict(d)
    return u, d["n"], GaussianRational.parse(d["m"])


def table_to_json(t: UmemuraTable) -> str:
    return json.dumps(t.to_dict())


def table_from_json(text: str) -> UmemuraTable:
    return UmemuraTable.from_dict(json.loads(text))


def format_mpf(v, precision_bits: int) -> str:
    """Deterministic decimal rendering carrying the full working precision."""
    dps = max(4, int(precision_bits * 0.30103) + 2)
    return mpmath.nstr(v, dps, strip_zeros=True)


def map_csv_lines(pm: PoleZeroMap):
    """CSV rows for a pole/zero map (header first)."""
    lines = [CSV_HEADER]
    prec = pm.precision_bits
    for point, cls, _filled, factor in pm.points:
        lines.append(
            f"{pm.plane},{format_mpf(point.real, prec)},{format_mpf(point.imag, prec)},"
            f"{cls},{factor},{pm.n},{pm.m},{prec}"
        )
    return lines


def probe_csv_lines(m, y, rows, precision_bits: int):
    lines = [f"n,err,m,y,prec"]
    for n, err in rows:
        lines.append(f"{n},{format_mpf(err, precision_bits)},{m},{y},{precision_bits}")
    return lines


def _svg_color(cls: str) -> str:
    return "#cc0000" if cls == "pole" else "#0033cc"


def map_svg(pm: PoleZeroMap, size: int = 640, margin: float = 0.08) -> str:
    """Static scatter: poles red, zeros blue; filled markers for the index-n
    factors, open markers for the index-(n-1) factors."""
    pts = [(float(p.real), float(p.imag), cls, filled)
           for p, cls, filled, _f in pm.points]
    if pts:
        xs = [p[0] for p in pts]
        ys = [p[1] for p in pts]
        lo = min(min(xs), min(ys))
        hi = max(max(xs), max(ys))
    else:
        lo, hi = -1.0, 1.0
    span = (hi - lo) or 1.0
    lo -= margin * span
    hi += margin * span
    span = hi - lo

    def sx(v):
        return (v - lo) / span * size

    def sy(v):
        return size - (v - lo) / span * size

    r = max(2.0, size / 320)
    out = [
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{size}" height="{size}" '
        f'viewBox="0 0 {size} {size}">',
        f'<rect width="{size}" height="{size}" fill="white"/>',
        f"<!-- plane={pm.plane} n={pm.n} m={pm.m} prec={pm.precision_bits} -->",
    ]
    for x, y, cls, filled in pts:
        color = _svg_color(cls)
        if filled:
            out.append(f'<circle cx="{sx(x):.2f}" cy="{sy(y):.2f}" r="{r}" fill="{color}"/>')
        else:
            out.append(
                f'<circle cx="{sx(x):.2f}" cy="{sy(y):.2f}" r="{r}" fill="none" '
                f'stroke="{color}" stroke-width="1"/>'
            )
    out.append("</svg>")
    return "\n".join(out)


def write_text(path, lines_or_text):
    text = lines_or_text if isinstance(lines_or_text, str) else "\n".join(lines_or_text) + "\n"
    with open(path, "w") as f:
        f.write(text)
