"""Assembly layer: BM-slices, pleating-plane images, boundary catalogs.

A BM-slice fixes the bending data of one side (the lamination mu and its
length c) and sweeps the rational rays of every other slope up to a
Stern-Brocot depth; the cusp endpoints approximate the quasifuchsian
boundary, refinable by depth since rational rays are dense in the slice.
Failed rays never abort a sweep - they are reported as diagnostics so the
picture degrades gracefully.
"""

from __future__ import annotations

import math
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass

from .errors import NoIntersection, OutOfRegion, QFToolError
from .farey import Slope, intersection_number, stern_brocot_enumerate
from .fuchsian import critical_point
from .rays import CuspPoint, RayTrace, cusp_point, locate_tau, trace_ray

__all__ = [
    "BMSliceEntry",
    "BMSliceDataset",
    "PleatingPlaneImage",
    "BoundaryCatalog",
    "bm_slice",
    "jmap",
    "pleating_plane",
    "qf_boundary_catalog",
]


@dataclass(frozen=True)
class BMSliceEntry:
    nu: Slope
    ray: RayTrace
    jmap_bound: float  # f_{mu,nu}(c) / i(mu, nu)


@dataclass(frozen=True)
class BMSliceDataset:
    mu: Slope
    c: float
    depth: int
    entries: tuple
    diagnostics: tuple


@dataclass(frozen=True)
class LocatedPoint:
    c: float
    d: float
    tau: complex | None
    in_region: bool


@dataclass(frozen=True)
class PleatingPlaneImage:
    mu: Slope
    nu: Slope
    graph: tuple  # (c, f(c)) pairs, strictly decreasing in f
    located: tuple


@dataclass(frozen=True)
class BoundaryCatalog:
    mu: Slope
    c: float
    depth: int
    cusps: tuple
    diagnostics: tuple


def _slice_entry(args):
    mu, c, nu, samples, tol = args
    try:
        ray = trace_ray(mu, nu, c, target_samples=samples, tol=tol)
        bound = ray.f_value / intersection_number(mu, nu)
        return ("ok", BMSliceEntry(nu, ray, bound))
    except QFToolError as exc:
        return ("err", (nu, f"{type(exc).__name__}: {exc}"))


def _sweep(worklist, workers):
    if workers and workers > 1:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            return list(pool.map(_slice_entry, worklist))
    return [_slice_entry(item) for item in worklist]


def _sweep_slopes(mu, depth, sector):
    return [nu for nu in stern_brocot_enumerate(depth, sector) if nu != mu]


def bm_slice(
    mu: Slope,
    c: float,
    depth: int,
    tol: float = 1e-10,
    samples: int = 48,
    workers: int = 1,
    sector=None,
) -> BMSliceDataset:
    """Rays and cusps for every slope of Stern-Brocot depth <= depth.

    The result is deterministic for fixed inputs regardless of the worker
    count: entries are merged in slope order.
    """
    worklist = [(mu, c, nu, samples, tol) for nu in _sweep_slopes(mu, depth, sector)]
    entries, diagnostics = [], []
    for status, payload in _sweep(worklist, workers):
        if status == "ok":
            entries.append(payload)
        else:
            diagnostics.append(payload)
    entries.sort(key=lambda e: e.nu.sort_key())
    diagnostics.sort(key=lambda d: d[0].sort_key())
    return BMSliceDataset(mu, c, depth, tuple(entries), tuple(diagnostics))


def jmap(nu: Slope, nu_length: float, mu: Slope):
    """Slice coordinates ([nu], l_nu / i(mu, nu)).

    The first coordinate is the slope as a real number (math.inf for
    1/0); the second stays below f_{mu,nu}(c)/i(mu,nu) on the slice.
    """
    i = intersection_number(mu, nu)
    if i == 0:
        raise NoIntersection(f"i({mu}, {nu}) = 0")
    return (nu.value, nu_length / i)


def pleating_plane(mu: Slope, nu: Slope, c_grid, locate_grid=None) -> PleatingPlaneImage:
    """Graph of f over the grid plus optionally located in-region points.

    ``locate_grid`` is an iterable of (c, d) pairs; pairs with d >= f(c)
    are flagged out-of-region instead of raising.
    """
    graph = tuple((c, critical_point(mu, nu, c).f_value) for c in c_grid)
    located = []
    for c, d in locate_grid or ():
        try:
            tau = locate_tau(mu, nu, c, d)
            located.append(LocatedPoint(c, d, tau, True))
        except OutOfRegion:
            located.append(LocatedPoint(c, d, None, False))
    return PleatingPlaneImage(mu, nu, graph, tuple(located))


def _catalog_entry(args):
    mu, c, nu, tol = args
    try:
        return ("ok", cusp_point(mu, nu, c, tol=tol))
    except QFToolError as exc:
        return ("err", (nu, f"{type(exc).__name__}: {exc}"))


def qf_boundary_catalog(
    mu: Slope,
    c: float,
    depth: int,
    tol: float = 1e-12,
    workers: int = 1,
) -> BoundaryCatalog:
    """Boundary cusps for all slopes of depth <= depth, sorted by slope.

    Successive Farey-neighbor cusps bracket the boundary arc between
    them; raising the depth refines the picture without moving cusps
    already found.
    """
    worklist = [(mu, c, nu, tol) for nu in _sweep_slopes(mu, depth, None)]
    if workers and workers > 1:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            results = list(pool.map(_catalog_entry, worklist))
    else:
        results = [_catalog_entry(item) for item in worklist]
    cusps, diagnostics = [], []
    for status, payload in results:
        if status == "ok":
            cusps.append(payload)
        else:
            diagnostics.append(payload)
    cusps.sort(key=lambda cp: cp.nu.sort_key())
    diagnostics.sort(key=lambda d: d[0].sort_key())
    return BoundaryCatalog(mu, c, depth, tuple(cusps), tuple(diagnostics))
