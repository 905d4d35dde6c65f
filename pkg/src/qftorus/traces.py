"""Trace engine for punctured-torus groups.

The conjugacy class of a marked group is the triple
(tr V, tr W, tr VW) subject to the Markov identity

    x^2 + y^2 + z^2 = x y z,

equivalent to the commutator of the generators being parabolic.  Traces
of all other simple closed curves follow from the triple through the
Farey recursion tr(mediant) = tr(left) tr(right) - tr(difference), which
this module evaluates iteratively along the Stern-Brocot path of the
requested slope.

Derivatives with respect to the quakebend parameter tau are exact: every
trace is a polynomial in cosh(tau/2) and sinh(tau/2), so lifting tau to a
first-order dual number threads a holomorphic derivative through the
whole recursion.
"""

from __future__ import annotations

import cmath
from dataclasses import dataclass

from .errors import DegenerateLength, SameSlope
from .farey import Slope, change_basis, marking_basis

__all__ = [
    "TraceTriple",
    "DualComplex",
    "markov_residual",
    "markov_complete",
    "trace_of_slope",
    "trace_and_derivative",
    "quakebend_trace",
]


@dataclass(frozen=True)
class TraceTriple:
    """(tr V, tr W, tr VW) of a marked generator pair."""

    x: complex
    y: complex
    z: complex

    def residual(self) -> float:
        return markov_residual(self)

    def as_tuple(self):
        return (self.x, self.y, self.z)


def markov_residual(t: TraceTriple) -> float:
    """|x^2 + y^2 + z^2 - x y z|."""
    x, y, z = t.x, t.y, t.z
    return abs(x * x + y * y + z * z - x * y * z)


def markov_complete(x: complex, y: complex, branch: int = +1) -> complex:
    """Root of z^2 - x y z + x^2 + y^2 = 0 selected by the branch sign.

    The two roots are tr VW and tr VW^-1; their product is x^2 + y^2.
    """
    disc = x * x * y * y - 4.0 * (x * x + y * y)
    root = cmath.sqrt(disc)
    return (x * y + branch * root) / 2.0


@dataclass(frozen=True)
class DualComplex:
    """First-order dual number over the complex field."""

    value: complex
    deriv: complex = 0.0

    def __add__(self, other):
        other = _lift(other)
        return DualComplex(self.value + other.value, self.deriv + other.deriv)

    __radd__ = __add__

    def __neg__(self):
        return DualComplex(-self.value, -self.deriv)

    def __sub__(self, other):
        other = _lift(other)
        return DualComplex(self.value - other.value, self.deriv - other.deriv)

    def __rsub__(self, other):
        return _lift(other) - self

    def __mul__(self, other):
        other = _lift(other)
        return DualComplex(
            self.value * other.value,
            self.value * other.deriv + self.deriv * other.value,
        )

    __rmul__ = __mul__

    def __truediv__(self, other):
        other = _lift(other)
        v = self.value / other.value
        return DualComplex(v, (self.deriv - v * other.deriv) / other.value)

    def __rtruediv__(self, other):
        return _lift(other) / self


def _lift(u) -> DualComplex:
    if isinstance(u, DualComplex):
        return u
    return DualComplex(complex(u), 0.0)


def dual_cosh(u: DualComplex) -> DualComplex:
    return DualComplex(cmath.cosh(u.value), u.deriv * cmath.sinh(u.value))


def dual_sinh(u: DualComplex) -> DualComplex:
    return DualComplex(cmath.sinh(u.value), u.deriv * cmath.cosh(u.value))


# Stern-Brocot descent state per sector: bounding raw vectors (u, v) and
# which of the base traces plays tr(u - v).  Scalars only need * and -,
# so the same walk serves complex and dual evaluation.
def _sector_state(s: Slope, x, y, z, zbar):
    p, q = s.p, s.q
    if p < -q:
        return (-1, 0), (-1, 1), y, zbar, x
    if p < 0:
        return (-1, 1), (0, 1), zbar, x, y
    if p < q:
        return (0, 1), (1, 1), x, z, y
    return (1, 1), (1, 0), z, y, x


def _slope_trace(s: Slope, x, y, z):
    zbar = x * y - z  # tr VW^-1, the -1/1 base
    base = {(0, 1): x, (1, 0): y, (1, 1): z, (-1, 1): zbar}
    raw = (s.p, s.q)
    if raw in base:
        return base[raw]
    u, v, tu, tv, tdiff = _sector_state(s, x, y, z, zbar)
    orient = u[0] * v[1] - u[1] * v[0]
    while True:
        m = (u[0] + v[0], u[1] + v[1])
        tm = tu * tv - tdiff
        if m == raw:
            return tm
        if (raw[0] * m[1] - raw[1] * m[0]) * orient > 0:
            v, tdiff, tv = m, tv, tm
        else:
            u, tdiff, tu = m, tu, tm


def trace_of_slope(base: TraceTriple, s: Slope) -> complex:
    """Trace of the curve of slope s in any group with this triple.

    Equals the matrix trace of the corresponding primitive word; verified
    against brute-force word products in the test suite.
    """
    return _slope_trace(s, base.x, base.y, base.z)


def _fn_triple_dual(c: float, tau: DualComplex):
    """Trace triple of the marking (V, W) at twist-bend tau with l_V = c.

    x = 2 cosh(c/2) stays constant on the plane; y and z follow the
    twist-trace identities y = 2 cosh(tau/2)/tanh(c/2) and
    z = 2 cosh((tau + c)/2)/tanh(c/2) (positive branch).
    """
    th = cmath.tanh(0.5 * c)
    if abs(th) < 1e-14:
        raise DegenerateLength("tanh(c/2) vanishes")
    x = _lift(2.0 * cmath.cosh(0.5 * c))
    y = 2.0 * dual_cosh(tau * 0.5) / th
    z = 2.0 * dual_cosh((tau + c) * 0.5) / th
    return x, y, z


def trace_and_derivative(mu: Slope, c: float, tau: complex, nu: Slope):
    """(g, dg/dtau) for g = trace of nu on the quakebend plane along mu.

    The marking is re-based so that mu becomes the twist curve; nu is
    carried along by the same unimodular change of basis.  The derivative
    is exact (dual-number lift), not a finite difference.
    """
    if nu == mu:
        raise SameSlope("nu must differ from the plane's twist curve")
    if c <= 0:
        raise ValueError("the twist-curve length c must be positive")
    _, basis = marking_basis(mu)
    nu_local = change_basis(nu, basis)
    tau_d = DualComplex(complex(tau), 1.0)
    x, y, z = _fn_triple_dual(c, tau_d)
    g = _slope_trace(nu_local, x, y, z)
    return g.value, g.deriv


def quakebend_trace(mu: Slope, c: float, tau: complex, nu: Slope) -> complex:
    """Trace of nu at the point tau of the quakebend plane along mu."""
    return trace_and_derivative(mu, c, tau, nu)[0]
