"""Fuchsian-space layer: earthquake paths, critical points, and f_{mu,nu}.

Restricting the quakebend plane along mu to real twist parameters gives
the earthquake path E_{mu,c} inside Fuchsian space.  For any nu crossing
mu, the nu-length is strictly convex along the path with a unique
minimum; the minimal length as a function of c is the decreasing
function f whose graph bounds the pleating-plane image.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from scipy.optimize import brentq

from .errors import NoIntersection, SameSlope
from .farey import Slope, convergents, intersection_number
from .traces import trace_and_derivative

__all__ = [
    "EarthquakeSample",
    "CriticalPoint",
    "earthquake_trace",
    "critical_point",
    "f_value",
    "f_value_irrational",
    "critical_line",
]


@dataclass(frozen=True)
class EarthquakeSample:
    """One Fuchsian point of an earthquake path with its nu-data."""

    mu: Slope
    c: float
    t: float
    nu_trace: float
    nu_length: float


@dataclass(frozen=True)
class CriticalPoint:
    """Minimum of the nu-length along the earthquake path E_{mu,c}."""

    mu: Slope
    nu: Slope
    c: float
    t_star: float
    f_value: float

    @property
    def nu_trace(self) -> float:
        return 2.0 * math.cosh(0.5 * self.f_value)

    @property
    def mu_trace(self) -> float:
        return 2.0 * math.cosh(0.5 * self.c)


def earthquake_trace(mu: Slope, c: float, t: float, nu: Slope) -> float:
    """Trace of nu at the Fuchsian point with l_mu = c and twist t."""
    if nu == mu:
        raise SameSlope("nu must differ from mu")
    g, _ = trace_and_derivative(mu, c, complex(t), nu)
    return g.real


def earthquake_samples(mu, c, ts, nu):
    out = []
    for t in ts:
        tr = earthquake_trace(mu, c, t, nu)
        out.append(EarthquakeSample(mu, c, t, tr, 2.0 * math.acosh(tr / 2.0)))
    return out


def _trace_fns(mu, c, nu):
    def g(t: float) -> float:
        return trace_and_derivative(mu, c, complex(t), nu)[0].real

    def dg(t: float) -> float:
        return trace_and_derivative(mu, c, complex(t), nu)[1].real

    return g, dg


def _bracket_root(dg, c):
    """Finite sign-change bracket for the increasing derivative.

    The derivative of a convex function diverges toward both infinities,
    so a probe that overflows double range is simply beyond the finite
    window on that side and carries the sign of its side; the bracket is
    then bisected back until both endpoint values are finite.
    """
    d0 = dg(0.0)
    if not math.isfinite(d0):
        raise RuntimeError("trace overflow at twist 0; inputs out of range")
    if d0 == 0.0:
        return None
    step = 1.0 + abs(c)
    if d0 > 0:
        lo, hi, vhi = -step, 0.0, d0
        while True:
            vlo = dg(lo)
            if not math.isfinite(vlo) or vlo < 0:
                break
            hi, vhi = lo, vlo
            lo *= 2.0
            if lo < -1e8:
                raise RuntimeError("failed to bracket the minimum")
        while not math.isfinite(vlo):
            if hi - lo < 1e-12 * (1.0 + abs(hi)):
                raise RuntimeError("minimum lies outside the representable range")
            mid = 0.5 * (lo + hi)
            vmid = dg(mid)
            if not math.isfinite(vmid) or vmid < 0:
                lo, vlo = mid, vmid
            else:
                hi, vhi = mid, vmid
    else:
        lo, hi, vlo = 0.0, step, d0
        while True:
            vhi = dg(hi)
            if not math.isfinite(vhi) or vhi > 0:
                break
            lo, vlo = hi, vhi
            hi *= 2.0
            if hi > 1e8:
                raise RuntimeError("failed to bracket the minimum")
        while not math.isfinite(vhi):
            if hi - lo < 1e-12 * (1.0 + abs(hi)):
                raise RuntimeError("minimum lies outside the representable range")
            mid = 0.5 * (lo + hi)
            vmid = dg(mid)
            if not math.isfinite(vmid) or vmid > 0:
                hi, vhi = mid, vmid
            else:
                lo, vlo = mid, vmid
    return lo, hi


def critical_point(mu: Slope, nu: Slope, c: float, grad_tol: float = 1e-12) -> CriticalPoint:
    """Locate the unique minimum of the nu-trace along E_{mu,c}.

    Convexity of the length (hence the trace) along earthquake paths
    makes bracketing from t = 0 plus root-finding on the derivative
    globally convergent; a Newton polish on the exact derivative then
    drives the gradient to the requested tolerance.
    """
    if intersection_number(mu, nu) == 0:
        raise NoIntersection(f"i({mu}, {nu}) = 0")
    if c <= 0:
        raise ValueError("c must be positive")
    g, dg = _trace_fns(mu, c, nu)

    bracket = _bracket_root(dg, c)
    if bracket is None:
        t_star = 0.0
    else:
        t_star = brentq(dg, *bracket, xtol=1e-13, maxiter=200)

    h = 1e-6 * (1.0 + abs(t_star))
    for _ in range(3):
        grad = dg(t_star)
        if abs(grad) <= grad_tol:
            break
        curv = (dg(t_star + h) - dg(t_star - h)) / (2.0 * h)
        if curv <= 0:
            break
        t_star -= grad / curv
    trace_min = g(t_star)
    if not (math.isfinite(trace_min) and trace_min > 2.0):
        # simple-curve traces exceed 2 on every Fuchsian point; anything
        # else means double precision was exhausted by the recursion
        raise RuntimeError(
            f"trace minimum {trace_min!r} out of range; precision exhausted"
        )
    return CriticalPoint(mu, nu, c, t_star, 2.0 * math.acosh(trace_min / 2.0))


def f_value(mu: Slope, nu: Slope, c: float) -> float:
    """Minimal nu-length over the earthquake path with l_mu = c."""
    return critical_point(mu, nu, c).f_value


def f_value_irrational(mu: Slope, nu_value: float, c: float, tol: float = 1e-6) -> float:
    """f for an irrational lamination via continued-fraction convergents.

    The lamination of slope x is approached by its convergents p_k/q_k
    carrying weight 1/q_k, normalizing the transverse measure of the dual
    generator to one.  Raw weighted values converge roughly geometrically,
    so an Aitken acceleration step supplies the limit estimate; iteration
    stops once the accelerated value settles to ``tol`` or the convergent
    traces outgrow double precision.
    """
    raw: list[float] = []
    accel: list[float] = []
    for s in convergents(nu_value, 24):
        if intersection_number(mu, s) == 0:
            continue
        try:
            raw.append(f_value(mu, s, c) / max(s.q, 1))
        except RuntimeError:
            break
        if len(raw) >= 3:
            d1 = raw[-2] - raw[-3]
            d2 = raw[-1] - raw[-2]
            if d1 != d2:
                accel.append(raw[-1] + d2 * d2 / (d1 - d2))
            else:
                accel.append(raw[-1])
            if abs(d2) < tol or (
                len(accel) >= 2 and abs(accel[-1] - accel[-2]) < tol
            ):
                return accel[-1]
    if accel:
        return accel[-1]
    if raw:
        return raw[-1]
    return math.nan


def critical_line(mu: Slope, nu: Slope, c_grid) -> list[CriticalPoint]:
    """Critical points over a grid of mu-lengths: the mu,nu-critical line."""
    return [critical_point(mu, nu, c) for c in c_grid]
