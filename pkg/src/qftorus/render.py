"""Deterministic emitters: CSV, JSON, SVG pictures, limit-set points.

Identical inputs produce byte-identical files: floats are written with
round-trip precision, element order is fixed, and writes are atomic
(temp file + rename).
"""

from __future__ import annotations

import json
import math
import os
import tempfile
from dataclasses import dataclass

import numpy as np

from .errors import SchemaMismatch
from .farey import Slope
from .fngroup import MarkedGroup
from .sl2 import commutator, fixed_points, is_infinity

SCHEMA_VERSION = 1

RAY_SCHEMA = ["re_tau", "im_tau", "nu_trace", "nu_length", "bending_angle"]
CRITLINE_SCHEMA = ["c", "t_star", "f", "trace_mu", "trace_nu"]
CUSP_SCHEMA = ["nu", "tau_re", "tau_im", "trace_sign"]
LIMITSET_SCHEMA = ["re", "im"]


def _atomic_write_text(path, text):
    directory = os.path.dirname(os.path.abspath(path)) or "."
    fd, tmp = tempfile.mkstemp(dir=directory, suffix=".tmp")
    try:
        with os.fdopen(fd, "w", encoding="utf-8", newline="\n") as fh:
            fh.write(text)
        os.replace(tmp, path)
    except BaseException:
        if os.path.exists(tmp):
            os.unlink(tmp)
        raise


def _fmt(value) -> str:
    if isinstance(value, str):
        return value
    if isinstance(value, bool):
        return "1" if value else "0"
    if isinstance(value, int):
        return str(value)
    return repr(float(value))


def emit_csv(rows, schema, path) -> None:
    """Header plus rows, round-trip float precision, LF endings."""
    lines = [",".join(schema)]
    width = len(schema)
    for i, row in enumerate(rows):
        row = list(row)
        if len(row) != width:
            raise SchemaMismatch(f"row {i} has {len(row)} fields, expected {width}")
        lines.append(",".join(_fmt(v) for v in row))
    _atomic_write_text(path, "\n".join(lines) + "\n")


def emit_json(obj, path) -> None:
    _atomic_write_text(path, json.dumps(obj, indent=2, sort_keys=True) + "\n")


def ray_rows(ray):
    return [
        (s.tau.real, s.tau.imag, s.nu_trace, s.nu_length, s.bending_angle)
        for s in ray.samples
    ]


def critline_rows(points):
    return [
        (cp.c, cp.t_star, cp.f_value, cp.mu_trace, cp.nu_trace) for cp in points
    ]


def cusp_to_json(cusp, mu: Slope, c: float) -> dict:
    return {
        "mu": str(mu),
        "nu": str(cusp.nu),
        "c": c,
        "tau_re": cusp.tau.real,
        "tau_im": cusp.tau.imag,
        "trace_sign": cusp.trace_sign,
    }


def ray_to_json(ray) -> dict:
    return {
        "schema_version": SCHEMA_VERSION,
        "kind": "ray",
        "mu": str(ray.mu),
        "nu": str(ray.nu),
        "c": ray.c,
        "t_star": ray.t_star,
        "f": ray.f_value,
        "samples": [list(r) for r in ray_rows(ray)],
        "cusp": cusp_to_json(ray.cusp, ray.mu, ray.c),
    }


def dataset_to_json(ds) -> dict:
    return {
        "schema_version": SCHEMA_VERSION,
        "kind": "bm_slice",
        "mu": str(ds.mu),
        "c": ds.c,
        "depth": ds.depth,
        "entries": [
            {
                "nu": str(e.nu),
                "jmap_bound": e.jmap_bound,
                "ray": ray_to_json(e.ray),
            }
            for e in ds.entries
        ],
        "diagnostics": [[str(nu), msg] for nu, msg in ds.diagnostics],
    }


def catalog_to_json(catalog) -> dict:
    return {
        "schema_version": SCHEMA_VERSION,
        "kind": "boundary_catalog",
        "mu": str(catalog.mu),
        "c": catalog.c,
        "depth": catalog.depth,
        "cusps": [cusp_to_json(cp, catalog.mu, catalog.c) for cp in catalog.cusps],
        "diagnostics": [[str(nu), msg] for nu, msg in catalog.diagnostics],
    }


def plane_to_json(ppi) -> dict:
    return {
        "schema_version": SCHEMA_VERSION,
        "kind": "pleating_plane",
        "mu": str(ppi.mu),
        "nu": str(ppi.nu),
        "graph": [[c, f] for c, f in ppi.graph],
        "located": [
            {
                "c": lp.c,
                "d": lp.d,
                "in_region": lp.in_region,
                "tau_re": None if lp.tau is None else lp.tau.real,
                "tau_im": None if lp.tau is None else lp.tau.imag,
            }
            for lp in ppi.located
        ],
    }


def marked_group_to_json(group: MarkedGroup) -> dict:
    def mat(m):
        return [
            m.a.real, m.a.imag, m.b.real, m.b.imag,
            m.c.real, m.c.imag, m.d.real, m.d.imag,
        ]

    prov = {}
    if group.provenance.fn is not None:
        fn = group.provenance.fn
        prov["fn"] = {
            "lambda_v_re": complex(fn.lambda_v).real,
            "lambda_v_im": complex(fn.lambda_v).imag,
            "tau_re": complex(fn.tau).real,
            "tau_im": complex(fn.tau).imag,
        }
    if group.provenance.marking is not None:
        prov["marking"] = [str(s) for s in group.provenance.marking]
    if group.provenance.pleating is not None:
        mu, nu, c, d = group.provenance.pleating
        prov["pleating"] = {"mu": str(mu), "nu": str(nu), "c": c, "d": d}
    return {
        "schema_version": SCHEMA_VERSION,
        "kind": "marked_group",
        "gen_a": mat(group.gen_a),
        "gen_b": mat(group.gen_b),
        "triple": [
            group.triple.x.real, group.triple.x.imag,
            group.triple.y.real, group.triple.y.imag,
            group.triple.z.real, group.triple.z.imag,
        ],
        "elliptic": group.elliptic,
        "provenance": prov,
    }


@dataclass(frozen=True)
class Viewport:
    """Pixel viewport over a rectangle of the tau-plane, aspect preserved."""

    x_min: float
    x_max: float
    y_min: float
    y_max: float
    width_px: int = 800
    height_px: int = 600

    def __post_init__(self):
        if not (self.x_max > self.x_min and self.y_max > self.y_min):
            raise ValueError("degenerate viewport extent")
        if self.width_px <= 0 or self.height_px <= 0:
            raise ValueError("pixel dimensions must be positive")

    def mapper(self):
        sx = self.width_px / (self.x_max - self.x_min)
        sy = self.height_px / (self.y_max - self.y_min)
        s = min(sx, sy)
        ox = 0.5 * (self.width_px - s * (self.x_max - self.x_min))
        oy = 0.5 * (self.height_px - s * (self.y_max - self.y_min))

        def to_px(x, y):
            px = ox + s * (x - self.x_min)
            py = self.height_px - (oy + s * (y - self.y_min))
            return px, py

        return to_px

    @classmethod
    def fit(cls, points, width_px=800, height_px=600, margin=0.08):
        xs = [p[0] for p in points] or [0.0, 1.0]
        ys = [p[1] for p in points] or [0.0, 1.0]
        dx = max(xs) - min(xs) or 1.0
        dy = max(ys) - min(ys) or 1.0
        return cls(
            min(xs) - margin * dx,
            max(xs) + margin * dx,
            min(ys) - margin * dy,
            max(ys) + margin * dy,
            width_px,
            height_px,
        )


def _px(v: float) -> str:
    return f"{v:.3f}"


def emit_svg_slice(ds, vp: Viewport, path) -> None:
    """SVG picture of a BM-slice: rays as polylines, cusps as dots.

    Byte-identical across runs for identical input: fixed precision,
    entries drawn in slope order.
    """
    to_px = vp.mapper()
    parts = [
        f'<svg xmlns="http://www.w3.org/2000/svg" version="1.1" '
        f'width="{vp.width_px}" height="{vp.height_px}" '
        f'viewBox="0 0 {vp.width_px} {vp.height_px}">',
        f'<rect width="{vp.width_px}" height="{vp.height_px}" fill="white"/>',
    ]
    # Fuchsian axis Im tau = 0 (the earthquake path of the slice)
    x0, y0 = to_px(vp.x_min, 0.0)
    x1, y1 = to_px(vp.x_max, 0.0)
    parts.append(
        f'<line x1="{_px(x0)}" y1="{_px(y0)}" x2="{_px(x1)}" y2="{_px(y1)}" '
        f'stroke="#888888" stroke-width="1"/>'
    )
    for entry in ds.entries:
        pts = " ".join(
            f"{_px(px)},{_px(py)}"
            for px, py in (to_px(s.tau.real, s.tau.imag) for s in entry.ray.samples)
        )
        parts.append(
            f'<polyline points="{pts}" fill="none" stroke="#1f77b4" '
            f'stroke-width="1.2"><title>{entry.nu}</title></polyline>'
        )
    for entry in ds.entries:
        cx, cy = to_px(entry.ray.cusp.tau.real, entry.ray.cusp.tau.imag)
        parts.append(
            f'<circle cx="{_px(cx)}" cy="{_px(cy)}" r="2.5" fill="#d62728">'
            f"<title>{entry.nu} cusp</title></circle>"
        )
    parts.append(
        f'<text x="8" y="16" font-family="monospace" font-size="12">'
        f"BM slice mu={ds.mu} c={repr(ds.c)} depth={ds.depth}</text>"
    )
    parts.append("</svg>")
    _atomic_write_text(path, "\n".join(parts) + "\n")


def limit_set_points(group: MarkedGroup, max_word_len: int) -> list[complex]:
    """Orbit of the commutator fixed point under short reduced words.

    Reduced means no letter is followed by its inverse; points are
    deduplicated on a 1e-6 grid and returned in deterministic order.
    """
    seed = fixed_points(commutator(group.gen_a, group.gen_b)).attracting
    gens = [
        group.gen_a,
        group.gen_a.inverse(),
        group.gen_b,
        group.gen_b.inverse(),
    ]
    inverse_of = {0: 1, 1: 0, 2: 3, 3: 2}
    points = {}

    def record(z):
        if is_infinity(z):
            return
        key = (round(z.real * 1e6), round(z.imag * 1e6))
        points.setdefault(key, z)

    record(seed)
    if max_word_len <= 0:
        return [seed]
    frontier = [(g, i) for i, g in enumerate(gens)]
    for g, _ in frontier:
        record(g.apply(seed))
    for _ in range(max_word_len - 1):
        nxt = []
        for mat, last in frontier:
            for i, g in enumerate(gens):
                if i == inverse_of[last]:
                    continue
                prod = mat @ g
                record(prod.apply(seed))
                nxt.append((prod, i))
        frontier = nxt
    return [points[k] for k in sorted(points)]


def limitset_rows(points):
    return [(z.real, z.imag) for z in points]


def fit_circle(points):
    """Least-squares circle through a point cloud.

    Returns (center, radius, residual) with the residual measured as the
    maximum relative deviation of |z - center| from the radius.
    """
    zs = np.asarray(points, dtype=complex)
    x, y = zs.real, zs.imag
    a = np.column_stack([2.0 * x, 2.0 * y, np.ones_like(x)])
    b = x * x + y * y
    (cx, cy, t), *_ = np.linalg.lstsq(a, b, rcond=None)
    radius = math.sqrt(max(t + cx * cx + cy * cy, 0.0))
    center = complex(cx, cy)
    if radius == 0:
        return center, 0.0, math.inf
    dev = np.abs(np.abs(zs - center) - radius)
    return center, radius, float(dev.max() / radius)
