"""Complex Fenchel-Nielsen layer: parameters -> trace triple -> matrices.

Given the complex length lambda_V of the twist curve and the twist-bend
tau, the trace triple of the marking follows in closed form, and explicit
matrix generators with parabolic commutator are produced by the classical
trace-triple recipe.  Every downstream quantity depends only on the
conjugacy class, so the normalization is free; the one used here fixes
the unit circle as the invariant circle of every real (Fuchsian) triple,
which makes limit-set sanity checks straightforward.
"""

from __future__ import annotations

import cmath
from dataclasses import dataclass, field

from .errors import DegenerateLength, DegenerateMatrix, InvalidTriple
from .farey import Slope, marking_basis, mediant_slope
from .sl2 import Mat2, commutator
from .traces import TraceTriple, markov_residual, trace_of_slope

__all__ = [
    "FNParams",
    "Provenance",
    "MarkedGroup",
    "triple_from_fn",
    "matrices_from_triple",
    "group_from_fn",
    "remark",
]

RESIDUAL_TOL = 1e-9


@dataclass(frozen=True)
class FNParams:
    """Twist-curve complex length (Re > 0) and twist-bend parameter."""

    lambda_v: complex
    tau: complex

    def __post_init__(self):
        if complex(self.lambda_v).real <= 0:
            raise ValueError("Re(lambda_v) must be positive")


@dataclass(frozen=True)
class Provenance:
    """How a group was built: its parameters and marking slopes."""

    fn: FNParams | None = None
    marking: tuple[Slope, Slope] | None = None
    pleating: tuple | None = None  # (mu, nu, c, d) when located on a ray


@dataclass(frozen=True)
class MarkedGroup:
    """Explicit marked generators with parabolic commutator."""

    gen_a: Mat2
    gen_b: Mat2
    triple: TraceTriple
    provenance: Provenance = field(default_factory=Provenance)
    elliptic: bool = False

    def commutator_trace(self) -> complex:
        return commutator(self.gen_a, self.gen_b).tr

    def measured_triple(self) -> TraceTriple:
        return TraceTriple(
            self.gen_a.tr, self.gen_b.tr, (self.gen_a @ self.gen_b).tr
        )


def triple_from_fn(params: FNParams) -> TraceTriple:
    """Trace triple of the marking (V, W) from (lambda_V, tau).

    x = 2 cosh(lambda_V/2),
    y = 2 cosh(tau/2) / tanh(lambda_V/2),
    z = 2 cosh((tau + lambda_V)/2) / tanh(lambda_V/2);
    the Markov identity then holds automatically.
    """
    lam, tau = complex(params.lambda_v), complex(params.tau)
    th = cmath.tanh(0.5 * lam)
    if abs(th) < 1e-14:
        raise DegenerateLength("tanh(lambda_V/2) vanishes")
    x = 2.0 * cmath.cosh(0.5 * lam)
    y = 2.0 * cmath.cosh(0.5 * tau) / th
    z = 2.0 * cmath.cosh(0.5 * (tau + lam)) / th
    return TraceTriple(x, y, z)


def _looks_elliptic(t: complex) -> bool:
    return abs(t.imag) < 1e-12 and abs(t.real) < 2.0 - 1e-12


def matrices_from_triple(
    triple: TraceTriple,
    provenance: Provenance | None = None,
    residual_tol: float = RESIDUAL_TOL,
) -> MarkedGroup:
    """Explicit generators with the prescribed traces and tr[A,B] = -2.

    Deterministic normalization; real triples produce groups whose limit
    set is the unit circle.  Triples with tr VW = +-2 have no loxodromic
    normalization of this form and are rejected.  A real trace of modulus
    below 2 flags an elliptic generator (the point lies outside the
    quasifuchsian region) without failing.
    """
    res = markov_residual(triple)
    if res > residual_tol:
        raise InvalidTriple(f"Markov residual {res:.3g} exceeds {residual_tol:.3g}")
    x, y, z = triple.x, triple.y, triple.z
    if abs(z - 2.0) < 1e-12 or abs(z + 2.0) < 1e-12:
        raise DegenerateMatrix("tr VW = +-2: cusp triple has no such normalization")
    den0 = y * z - 2.0 * x + 2.0j * z
    if abs(den0) < 1e-14 or abs(y) < 1e-14:
        raise DegenerateMatrix("triple too degenerate for this normalization")
    z0 = (z - 2.0) * y / den0
    gen_a = Mat2(
        0.5 * x,
        (x * z - 2.0 * y + 4.0j) / ((2.0 * z + 4.0) * z0),
        (x * z - 2.0 * y - 4.0j) * z0 / (2.0 * z - 4.0),
        0.5 * x,
    ).normalized()
    gen_b = Mat2(0.5 * (y - 2.0j), 0.5 * y, 0.5 * y, 0.5 * (y + 2.0j)).normalized()
    elliptic = any(_looks_elliptic(t) for t in (x, y, z))
    return MarkedGroup(
        gen_a,
        gen_b,
        triple,
        provenance if provenance is not None else Provenance(),
        elliptic,
    )


def group_from_fn(params: FNParams, marking=None) -> MarkedGroup:
    """Build the marked group directly from twist-length parameters."""
    if marking is None:
        marking = (Slope(0, 1), Slope(1, 0))
    triple = triple_from_fn(params)
    return matrices_from_triple(triple, Provenance(fn=params, marking=marking))


def remark(base: TraceTriple, mu: Slope):
    """Re-mark the group so that mu becomes the first generator.

    Returns the triple (tr W_mu, tr W_sigma, tr W_{mu+sigma}) for the
    canonical partner sigma with i(mu, sigma) = 1, together with the
    unimodular basis matrix recording the slope change (columns are the
    raw vectors of mu and sigma).
    """
    sigma, basis = marking_basis(mu)
    med = mediant_slope(mu, sigma)
    new = TraceTriple(
        trace_of_slope(base, mu),
        trace_of_slope(base, sigma),
        trace_of_slope(base, med),
    )
    return new, basis
