"""Pleating-ray continuation in quakebend planes.

A rational pleating ray is the branch of the real-trace locus of nu in
the quakebend plane along mu that leaves Fuchsian space at the critical
point of the nu-trace.  Along it the nu-trace decreases monotonically
from its Fuchsian minimum to the parabolic value at the boundary cusp,
so the target trace serves as a global continuation parameter: each
sample solves g(tau) = r by complex Newton iteration with the exact
holomorphic derivative, and the cusp is the final solve at trace +-2.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from .errors import NoIntersection, OutOfRegion, StalledContinuation
from .farey import Slope, intersection_number, marking_basis
from .fngroup import FNParams, MarkedGroup, Provenance, matrices_from_triple, triple_from_fn
from .fuchsian import critical_point
from .traces import trace_and_derivative

__all__ = [
    "QuakebendPoint",
    "RaySample",
    "RayTrace",
    "CuspPoint",
    "trace_ray",
    "cusp_point",
    "locate_group",
    "locate_tau",
    "bending_angle",
    "group_at",
]

CUSP_TOL = 1e-12


@dataclass(frozen=True)
class QuakebendPoint:
    """A point of the quakebend plane along mu with l_mu = c."""

    mu: Slope
    c: float
    tau: complex


@dataclass(frozen=True)
class RaySample:
    tau: complex
    nu_trace: float
    nu_length: float
    bending_angle: float


@dataclass(frozen=True)
class CuspPoint:
    """Boundary group where the nu-curve element becomes parabolic."""

    nu: Slope
    tau: complex
    trace_sign: int


@dataclass(frozen=True)
class RayTrace:
    mu: Slope
    nu: Slope
    c: float
    samples: tuple
    cusp: CuspPoint
    t_star: float
    f_value: float

    @property
    def trace_max(self) -> float:
        return 2.0 * math.cosh(0.5 * self.f_value)


class _RayContext:
    """Shared state for one (mu, nu, c) continuation run."""

    def __init__(self, mu: Slope, nu: Slope, c: float):
        if intersection_number(mu, nu) == 0:
            raise NoIntersection(f"i({mu}, {nu}) = 0")
        cp = critical_point(mu, nu, c)
        self.mu, self.nu, self.c = mu, nu, c
        self.t_star = cp.t_star
        self.f_value = cp.f_value
        self.r_max = 2.0 * math.cosh(0.5 * cp.f_value)

    def g(self, tau: complex):
        return trace_and_derivative(self.mu, self.c, tau, self.nu)


def _newton(ctx: _RayContext, target: float, tau0: complex, branch: int):
    """Newton solve of g(tau) = target on the chosen branch.

    Iterates until the residual reaches its double-precision floor
    (relative to the trace size); near the Fuchsian critical point the
    locus is quadratically flat, so a step-size criterion alone would
    reject solves whose trace residual is already at machine level.
    """
    floor = 2e-13 * max(1.0, abs(target))
    tau = tau0
    best_tau, best_res = None, math.inf
    for _ in range(60):
        if branch * tau.imag <= 0:
            break  # wandered off the chosen branch
        val, der = ctx.g(tau)
        res = abs(val - target)
        if res < best_res:
            best_tau, best_res = tau, res
        if res <= floor:
            return tau
        if der == 0:
            break
        step = (val - target) / der
        new_tau = tau - step
        while branch * new_tau.imag <= 0 and abs(step) > 1e-18:
            step *= 0.5
            new_tau = tau - step
        if abs(step) < 1e-16 * (1.0 + abs(tau)):
            break
        tau = new_tau
    if best_res <= 10.0 * floor:
        return best_tau
    return None


def _march(ctx: _RayContext, targets, tau_start: complex, branch: int):
    """Continue through the target traces, halving steps on failure."""
    results = []
    tau = tau_start
    r_cur, der = ctx.g(tau)
    r_cur = r_cur.real

    def advance(r_from, r_to, tau_from, depth):
        _, der_here = ctx.g(tau_from)
        pred = tau_from
        if der_here != 0:
            pred = tau_from + (r_to - r_from) / der_here
        if branch * pred.imag <= 0:
            pred = tau_from
        got = _newton(ctx, r_to, pred, branch)
        if got is None:
            got = _newton(ctx, r_to, tau_from, branch)
        if got is not None:
            return got
        if depth >= 40:
            raise StalledContinuation(
                f"continuation stalled near trace {r_to:.6g} on ray "
                f"({ctx.mu}, {ctx.nu}, c={ctx.c:.6g})",
                partial=results,
                last_tau=tau_from,
            )
        r_mid = 0.5 * (r_from + r_to)
        tau_mid = advance(r_from, r_mid, tau_from, depth + 1)
        return advance(r_mid, r_to, tau_mid, depth + 1)

    for r in targets:
        tau = advance(r_cur, r, tau, 0)
        r_cur = r
        results.append((r, tau))
    return results


def _schedule(r_max: float, tol: float, n: int):
    """Trace targets from just below the Fuchsian maximum down to 2 + tol/2.

    Geometric in (r_max - r) through the quadratic turning region at the
    critical point, then geometric in (r - 2) into the cusp, so both ends
    are approached within tol/2 and samples crowd where the ray bends.
    """
    span = r_max - 2.0
    gap = 0.5 * tol * min(1.0, span)
    v_min = gap / span
    n_a = max(6, n // 3)
    n_b = max(6, n - n_a)
    targets = []
    ratio_a = (0.25 / v_min) ** (1.0 / (n_a - 1))
    v = v_min
    for _ in range(n_a):
        targets.append(r_max - v * span)
        v *= ratio_a
    ratio_b = (v_min / 0.70) ** (1.0 / (n_b - 1))
    w = 0.70
    for _ in range(n_b):
        targets.append(2.0 + w * span)
        w *= ratio_b
    # keep the list strictly decreasing across the phase seam
    out = [targets[0]]
    for r in targets[1:]:
        if r < out[-1]:
            out.append(r)
    return out


def _start_tau(ctx: _RayContext, branch: int) -> complex:
    eps = 1e-4 * (1.0 + abs(ctx.t_star))
    return complex(ctx.t_star, branch * eps)


def trace_ray(
    mu: Slope,
    nu: Slope,
    c: float,
    target_samples: int = 48,
    tol: float = 1e-10,
    branch: int = +1,
) -> RayTrace:
    """Trace the pleating ray for (mu, nu) at l_mu = c up to its cusp.

    ``branch`` +1 follows the ray into Im tau > 0; -1 produces the mirror
    ray (the same pair with the roles of the two sides swapped).
    """
    if target_samples < 4:
        raise ValueError("need at least 4 samples")
    ctx = _RayContext(mu, nu, c)
    targets = _schedule(ctx.r_max, tol, target_samples)
    marched = _march(ctx, targets, _start_tau(ctx, branch), branch)
    samples = []
    for _, tau in marched:
        val, _ = ctx.g(tau)
        r = val.real
        samples.append(
            RaySample(tau, r, 2.0 * math.acosh(r / 2.0), abs(tau.imag))
        )
    last_tau = marched[-1][1]
    cusp_tau = _newton(ctx, 2.0, last_tau, branch)
    if cusp_tau is None:
        raise StalledContinuation(
            f"cusp polish failed on ray ({mu}, {nu}, c={c:.6g})",
            partial=samples,
            last_tau=last_tau,
        )
    cusp = CuspPoint(nu, cusp_tau, +2)
    return RayTrace(mu, nu, c, tuple(samples), cusp, ctx.t_star, ctx.f_value)


def cusp_point(mu: Slope, nu: Slope, c: float, tol: float = CUSP_TOL, branch: int = +1) -> CuspPoint:
    """Boundary cusp of the ray only, polished to |g - 2| below tol."""
    ctx = _RayContext(mu, nu, c)
    targets = _schedule(ctx.r_max, 1e-6, 16)
    marched = _march(ctx, targets, _start_tau(ctx, branch), branch)
    tau = _newton(ctx, 2.0, marched[-1][1], branch)
    if tau is None:
        raise StalledContinuation(
            f"cusp polish failed on ray ({mu}, {nu}, c={c:.6g})",
            partial=[RaySample(t, r, 2.0 * math.acosh(r / 2.0), abs(t.imag)) for r, t in marched],
            last_tau=marched[-1][1],
        )
    val, _ = ctx.g(tau)
    if abs(val - 2.0) > tol:
        raise StalledContinuation(
            f"cusp residual {abs(val - 2.0):.3g} above {tol:.3g}", last_tau=tau
        )
    return CuspPoint(nu, tau, +2)


def locate_tau(mu: Slope, nu: Slope, c: float, d: float, branch: int = +1) -> complex:
    """The unique tau on the ray where the nu-length equals d."""
    ctx = _RayContext(mu, nu, c)
    if not 0.0 < d < ctx.f_value:
        raise OutOfRegion(
            f"d = {d:.6g} is not inside (0, f) = (0, {ctx.f_value:.6g})"
        )
    r_d = 2.0 * math.cosh(0.5 * d)
    targets = [r for r in _schedule(ctx.r_max, 1e-6, 16) if r > r_d]
    targets.append(r_d)
    marched = _march(ctx, targets, _start_tau(ctx, branch), branch)
    return marched[-1][1]


def locate_group(mu: Slope, nu: Slope, c: float, d: float, branch: int = +1):
    """Group with pleating data (mu, c) and (nu, d), explicit matrices.

    Returns (QuakebendPoint, MarkedGroup); the group is marked by
    (mu, sigma) for the canonical partner sigma of mu, and remeasuring
    the two lamination lengths from its matrices reproduces (c, d).
    """
    tau = locate_tau(mu, nu, c, d, branch)
    group = group_at(mu, c, tau, pleating=(mu, nu, c, d))
    return QuakebendPoint(mu, c, tau), group


def group_at(mu: Slope, c: float, tau: complex, pleating=None) -> MarkedGroup:
    """Marked group at a point of the quakebend plane along mu."""
    sigma, _ = marking_basis(mu)
    params = FNParams(complex(c), complex(tau))
    triple = triple_from_fn(params)
    return matrices_from_triple(
        triple, Provenance(fn=params, marking=(mu, sigma), pleating=pleating)
    )


def bending_angle(sample: QuakebendPoint) -> float:
    """Bending per unit intersection with mu; zero on the Fuchsian locus."""
    return abs(sample.tau.imag)
