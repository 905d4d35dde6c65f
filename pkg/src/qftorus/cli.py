"""Command-line front end.

Every pipeline is a subcommand with reproducible flags: identical
invocations write byte-identical CSV/JSON/SVG artifacts.  Exit codes:
0 success, 1 precondition violation (bad flags, out-of-region inputs),
2 numeric failure (stalled continuation) with partial output written.

The values of --c and --d accept plain decimals or the exact tokens
``ln3`` and ``2asinh1`` so scripted oracle runs avoid decimal
truncation.  A plain ``key = value`` config file supplies defaults;
explicit flags always win.
"""

from __future__ import annotations

import argparse
import math
import os
import sys

from . import figures, render, slices
from .errors import ConfigError, QFToolError, StalledContinuation
from .farey import Slope
from .fuchsian import critical_line
from .rays import locate_group, trace_ray
from .verify import run_suite

_REAL_TOKENS = {
    "ln3": math.log(3.0),
    "2asinh1": 2.0 * math.asinh(1.0),
}

_COMMANDS = ("ray", "cusp", "locate", "critline", "plane", "slice",
             "boundary", "limitset", "verify")

_DEFAULT_FORMAT = {
    "ray": "csv",
    "cusp": "json",
    "locate": "json",
    "critline": "csv",
    "plane": "json",
    "slice": "json",
    "boundary": "json",
    "limitset": "csv",
}


def parse_real(token: str) -> float:
    token = token.strip()
    if token in _REAL_TOKENS:
        return _REAL_TOKENS[token]
    return float(token)


def parse_config(path: str) -> dict:
    """Plain ``key = value`` file; malformed lines are reported by number."""
    values = {}
    with open(path, encoding="utf-8") as fh:
        for num, raw in enumerate(fh, start=1):
            line = raw.strip()
            if not line or line.startswith("#"):
                continue
            if "=" not in line:
                raise ConfigError(f"{path}:{num}: expected 'key = value', got {line!r}")
            key, _, value = line.partition("=")
            key, value = key.strip(), value.strip()
            if not key or not value:
                raise ConfigError(f"{path}:{num}: empty key or value")
            values[key.replace("-", "_")] = value
    return values


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="qftorus",
        description="Quasifuchsian punctured-torus groups from bending data.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--config", help="key = value file with default flags")
    common.add_argument("--out", help="output path (default <command>.<format>)")
    common.add_argument("--format", choices=["csv", "json", "svg"],
                        help="artifact format")
    common.add_argument("--fig", help="also render a matplotlib figure to this path")
    common.add_argument("--tol", help="numeric tolerance for continuation")
    common.add_argument("--workers",
                        help="worker processes for sweeps (env QFTORUS_WORKERS)")

    curve = argparse.ArgumentParser(add_help=False)
    curve.add_argument("--mu", help="twist-curve slope p/q")
    curve.add_argument("--nu", help="second slope p/q")
    curve.add_argument("--c", help="mu-length (decimal, ln3, or 2asinh1)")

    p = sub.add_parser("ray", parents=[common, curve],
                       help="trace a pleating ray down to its cusp")
    p.add_argument("--samples", help="number of samples along the ray")
    p.add_argument("--branch", help="+1 or -1: which side of Fuchsian space")

    sub.add_parser("cusp", parents=[common, curve],
                   help="boundary cusp of a pleating ray")

    p = sub.add_parser("locate", parents=[common, curve],
                       help="group with prescribed pleating lengths (c, d)")
    p.add_argument("--d", help="nu-length target (decimal, ln3, or 2asinh1)")

    p = sub.add_parser("critline", parents=[common, curve],
                       help="critical line samples over a c-grid")
    p.add_argument("--cmin", help="grid start (default 0.2)")
    p.add_argument("--cmax", help="grid end (default 3.0)")
    p.add_argument("--steps", help="grid size (default 20)")

    p = sub.add_parser("plane", parents=[common, curve],
                       help="pleating-plane image: f-graph plus located points")
    p.add_argument("--cmin", help="grid start (default 0.2)")
    p.add_argument("--cmax", help="grid end (default 3.0)")
    p.add_argument("--steps", help="grid size (default 20)")
    p.add_argument("--locate", help="semicolon list of c:d pairs to locate")

    p = sub.add_parser("slice", parents=[common, curve],
                       help="BM-slice sweep over slopes up to a Farey depth")
    p.add_argument("--depth", help="Stern-Brocot depth (default 2)")
    p.add_argument("--samples", help="samples per ray")

    p = sub.add_parser("boundary", parents=[common, curve],
                       help="catalog of boundary cusps up to a Farey depth")
    p.add_argument("--depth", help="Stern-Brocot depth (default 2)")

    p = sub.add_parser("limitset", parents=[common, curve],
                       help="limit-set point cloud of a located group")
    p.add_argument("--d", help="nu-length target")
    p.add_argument("--maxlen", help="maximum word length (default 6)")

    p = sub.add_parser("verify", parents=[common],
                       help="run the built-in invariant battery")
    p.add_argument("--suite", default="invariants",
                   help="invariants (default) or all")
    return parser


def _merge_config(args) -> None:
    if not getattr(args, "config", None):
        return
    for key, value in parse_config(args.config).items():
        if getattr(args, key, None) is None and hasattr(args, key):
            setattr(args, key, value)


def _require(args, *names):
    missing = [n for n in names if getattr(args, n, None) is None]
    if missing:
        raise QFToolError(
            f"{args.command}: missing required flag(s): "
            + ", ".join("--" + n for n in missing)
        )


def _workers(args) -> int:
    raw = getattr(args, "workers", None)
    if raw is None:
        raw = os.environ.get("QFTORUS_WORKERS", "1")
    return max(1, int(raw))


def _out_path(args, fmt) -> str:
    return args.out if args.out else f"{args.command}.{fmt}"


def _format(args) -> str:
    if getattr(args, "format", None):
        return args.format
    if args.out:
        ext = os.path.splitext(args.out)[1].lstrip(".").lower()
        if ext in ("csv", "json", "svg"):
            return ext
    return _DEFAULT_FORMAT[args.command]


def _note(path):
    print(f"wrote: {path}", file=sys.stderr)


def _grid(args):
    cmin = parse_real(args.cmin) if args.cmin else 0.2
    cmax = parse_real(args.cmax) if args.cmax else 3.0
    steps = int(args.steps) if args.steps else 20
    if steps < 1 or cmax <= cmin:
        raise QFToolError("bad c-grid specification")
    if steps == 1:
        return [cmin]
    h = (cmax - cmin) / (steps - 1)
    return [cmin + k * h for k in range(steps)]


def _cmd_ray(args) -> int:
    _require(args, "mu", "nu", "c")
    mu, nu = Slope.parse(args.mu), Slope.parse(args.nu)
    c = parse_real(args.c)
    tol = parse_real(args.tol) if args.tol else 1e-10
    samples = int(args.samples) if args.samples else 48
    branch = int(args.branch) if getattr(args, "branch", None) else +1
    fmt = _format(args)
    out = _out_path(args, fmt)
    try:
        ray = trace_ray(mu, nu, c, target_samples=samples, tol=tol, branch=branch)
    except StalledContinuation as exc:
        rows = [(s.tau.real, s.tau.imag, s.nu_trace, s.nu_length, s.bending_angle)
                for s in exc.partial]
        render.emit_csv(rows, render.RAY_SCHEMA, out)
        print(f"stalled: {exc}", file=sys.stderr)
        _note(out)
        return 2
    if fmt == "csv":
        render.emit_csv(render.ray_rows(ray), render.RAY_SCHEMA, out)
    elif fmt == "json":
        render.emit_json(render.ray_to_json(ray), out)
    else:
        raise QFToolError("ray: svg output is only available for 'slice'")
    if args.fig:
        figures.figure_ray(ray, args.fig)
        _note(args.fig)
    _note(out)
    return 0


def _cmd_cusp(args) -> int:
    _require(args, "mu", "nu", "c")
    mu, nu = Slope.parse(args.mu), Slope.parse(args.nu)
    c = parse_real(args.c)
    tol = parse_real(args.tol) if args.tol else 1e-12
    from .rays import cusp_point

    cp = cusp_point(mu, nu, c, tol=tol)
    fmt = _format(args)
    out = _out_path(args, fmt)
    if fmt == "json":
        render.emit_json(render.cusp_to_json(cp, mu, c), out)
    elif fmt == "csv":
        render.emit_csv(
            [(str(cp.nu), cp.tau.real, cp.tau.imag, cp.trace_sign)],
            render.CUSP_SCHEMA, out)
    else:
        raise QFToolError("cusp: svg output is only available for 'slice'")
    _note(out)
    return 0


def _cmd_locate(args) -> int:
    _require(args, "mu", "nu", "c", "d")
    mu, nu = Slope.parse(args.mu), Slope.parse(args.nu)
    c, d = parse_real(args.c), parse_real(args.d)
    qp, group = locate_group(mu, nu, c, d)
    fmt = _format(args)
    if fmt != "json":
        raise QFToolError("locate: only json output is supported")
    out = _out_path(args, fmt)
    payload = render.marked_group_to_json(group)
    payload["tau_re"], payload["tau_im"] = qp.tau.real, qp.tau.imag
    render.emit_json(payload, out)
    _note(out)
    return 0


def _cmd_critline(args) -> int:
    _require(args, "mu", "nu")
    mu, nu = Slope.parse(args.mu), Slope.parse(args.nu)
    points = critical_line(mu, nu, _grid(args))
    fmt = _format(args)
    out = _out_path(args, fmt)
    if fmt == "csv":
        render.emit_csv(render.critline_rows(points), render.CRITLINE_SCHEMA, out)
    elif fmt == "json":
        render.emit_json(
            {
                "schema_version": render.SCHEMA_VERSION,
                "kind": "critical_line",
                "mu": str(mu),
                "nu": str(nu),
                "points": [list(r) for r in render.critline_rows(points)],
            },
            out,
        )
    else:
        raise QFToolError("critline: svg output is only available for 'slice'")
    if args.fig:
        figures.figure_critline(points, args.fig)
        _note(args.fig)
    _note(out)
    return 0


def _cmd_plane(args) -> int:
    _require(args, "mu", "nu")
    mu, nu = Slope.parse(args.mu), Slope.parse(args.nu)
    locate_grid = []
    if args.locate:
        for pair in args.locate.split(";"):
            cs, _, ds = pair.partition(":")
            locate_grid.append((parse_real(cs), parse_real(ds)))
    ppi = slices.pleating_plane(mu, nu, _grid(args), locate_grid)
    fmt = _format(args)
    out = _out_path(args, fmt)
    if fmt == "json":
        render.emit_json(render.plane_to_json(ppi), out)
    elif fmt == "csv":
        render.emit_csv(list(ppi.graph), ["c", "f"], out)
    else:
        raise QFToolError("plane: svg output is only available for 'slice'")
    if args.fig:
        figures.figure_plane(ppi, args.fig)
        _note(args.fig)
    _note(out)
    return 0


def _cmd_slice(args) -> int:
    _require(args, "mu", "c")
    mu = Slope.parse(args.mu)
    c = parse_real(args.c)
    depth = int(args.depth) if args.depth else 2
    tol = parse_real(args.tol) if args.tol else 1e-10
    samples = int(args.samples) if args.samples else 48
    ds = slices.bm_slice(mu, c, depth, tol=tol, samples=samples,
                         workers=_workers(args))
    fmt = _format(args)
    out = _out_path(args, fmt)
    if fmt == "json":
        render.emit_json(render.dataset_to_json(ds), out)
    elif fmt == "csv":
        rows = []
        for entry in ds.entries:
            for r in render.ray_rows(entry.ray):
                rows.append((str(entry.nu),) + tuple(r))
        render.emit_csv(rows, ["nu"] + render.RAY_SCHEMA, out)
    else:
        pts = [(s.tau.real, s.tau.imag)
               for e in ds.entries for s in e.ray.samples]
        render.emit_svg_slice(ds, render.Viewport.fit(pts or [(0, 0), (1, 1)]), out)
    if ds.diagnostics:
        for nu, msg in ds.diagnostics:
            print(f"diagnostic: {nu}: {msg}", file=sys.stderr)
    if args.fig:
        figures.figure_slice(ds, args.fig)
        _note(args.fig)
    _note(out)
    return 2 if ds.diagnostics else 0


def _cmd_boundary(args) -> int:
    _require(args, "mu", "c")
    mu = Slope.parse(args.mu)
    c = parse_real(args.c)
    depth = int(args.depth) if args.depth else 2
    tol = parse_real(args.tol) if args.tol else 1e-12
    catalog = slices.qf_boundary_catalog(mu, c, depth, tol=tol,
                                         workers=_workers(args))
    fmt = _format(args)
    out = _out_path(args, fmt)
    if fmt == "json":
        render.emit_json(render.catalog_to_json(catalog), out)
    elif fmt == "csv":
        rows = [(str(cp.nu), cp.tau.real, cp.tau.imag, cp.trace_sign)
                for cp in catalog.cusps]
        render.emit_csv(rows, render.CUSP_SCHEMA, out)
    else:
        raise QFToolError("boundary: svg output is only available for 'slice'")
    if catalog.diagnostics:
        for nu, msg in catalog.diagnostics:
            print(f"diagnostic: {nu}: {msg}", file=sys.stderr)
    if args.fig:
        figures.figure_boundary(catalog, args.fig)
        _note(args.fig)
    _note(out)
    return 2 if catalog.diagnostics else 0


def _cmd_limitset(args) -> int:
    _require(args, "mu", "nu", "c", "d")
    mu, nu = Slope.parse(args.mu), Slope.parse(args.nu)
    c, d = parse_real(args.c), parse_real(args.d)
    maxlen = int(args.maxlen) if args.maxlen else 6
    _, group = locate_group(mu, nu, c, d)
    points = render.limit_set_points(group, maxlen)
    fmt = _format(args)
    out = _out_path(args, fmt)
    if fmt == "csv":
        render.emit_csv(render.limitset_rows(points), render.LIMITSET_SCHEMA, out)
    elif fmt == "json":
        render.emit_json(
            {
                "schema_version": render.SCHEMA_VERSION,
                "kind": "limit_set",
                "mu": str(mu), "nu": str(nu), "c": c, "d": d,
                "points": [[z.real, z.imag] for z in points],
            },
            out,
        )
    else:
        raise QFToolError("limitset: svg output is only available for 'slice'")
    if args.fig:
        figures.figure_limitset(
            points, args.fig, title=f"limit set mu={mu} nu={nu} c={c:.4g} d={d:.4g}"
        )
        _note(args.fig)
    _note(out)
    return 0


def _cmd_verify(args) -> int:
    results = run_suite(args.suite)
    failed = 0
    for res in results:
        tag = "PASS" if res.passed else "FAIL"
        print(f"{tag}  {res.name}: {res.detail}")
        failed += 0 if res.passed else 1
    return 0 if failed == 0 else 1


_HANDLERS = {
    "ray": _cmd_ray,
    "cusp": _cmd_cusp,
    "locate": _cmd_locate,
    "critline": _cmd_critline,
    "plane": _cmd_plane,
    "slice": _cmd_slice,
    "boundary": _cmd_boundary,
    "limitset": _cmd_limitset,
    "verify": _cmd_verify,
}


_VALUE_FLAGS = {"--mu", "--nu", "--c", "--d", "--cmin", "--cmax", "--branch"}


def _merge_value_flags(argv):
    """Join flag/value pairs so negative slopes like -1/1 parse cleanly."""
    merged, i = [], 0
    while i < len(argv):
        tok = argv[i]
        if tok in _VALUE_FLAGS and i + 1 < len(argv):
            merged.append(f"{tok}={argv[i + 1]}")
            i += 2
        else:
            merged.append(tok)
            i += 1
    return merged


def dispatch(argv) -> int:
    parser = _build_parser()
    try:
        args = parser.parse_args(_merge_value_flags(list(argv)))
    except SystemExit as exc:
        return 0 if exc.code in (0, None) else 1
    try:
        _merge_config(args)
        return _HANDLERS[args.command](args)
    except StalledContinuation as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except QFToolError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


def main() -> None:
    sys.exit(dispatch(sys.argv[1:]))
