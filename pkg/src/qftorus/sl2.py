"""2x2 complex matrices, complex translation length, fixed points.

Determinant-1 representatives of hyperbolic isometries in plain double
precision.  Complex length follows the convention +-tr M = 2 cosh(l/2)
with Re l >= 0; branch bookkeeping along paths happens by continuation
from the previous value.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass

from .errors import BranchJump, CuspTrace, DegenerateMatrix

_TWO_PI = 2.0 * math.pi


@dataclass(frozen=True)
class Mat2:
    """Determinant-1 representative of an element of PSL(2, C)."""

    a: complex
    b: complex
    c: complex
    d: complex

    def det(self) -> complex:
        return self.a * self.d - self.b * self.c

    @property
    def tr(self) -> complex:
        return self.a + self.d

    def normalized(self) -> "Mat2":
        """Rescale to determinant one (principal square root)."""
        s = cmath.sqrt(self.det())
        if s == 0:
            raise DegenerateMatrix("singular matrix cannot be normalized")
        return Mat2(self.a / s, self.b / s, self.c / s, self.d / s)

    def __matmul__(self, other: "Mat2") -> "Mat2":
        return Mat2(
            self.a * other.a + self.b * other.c,
            self.a * other.b + self.b * other.d,
            self.c * other.a + self.d * other.c,
            self.c * other.b + self.d * other.d,
        )

    def inverse(self) -> "Mat2":
        return Mat2(self.d, -self.b, -self.c, self.a)

    def apply(self, z: complex) -> complex:
        """Moebius action; the point at infinity is any non-finite input."""
        if not (math.isfinite(z.real) and math.isfinite(z.imag)):
            if self.c == 0:
                return INFINITY
            return self.a / self.c
        den = self.c * z + self.d
        if den == 0:
            return INFINITY
        return (self.a * z + self.b) / den

    @classmethod
    def identity(cls) -> "Mat2":
        return cls(1.0, 0.0, 0.0, 1.0)


INFINITY = complex(math.inf, math.inf)


def is_infinity(z: complex) -> bool:
    return not (math.isfinite(z.real) and math.isfinite(z.imag))


def compose(m1: Mat2, m2: Mat2) -> Mat2:
    """Matrix product renormalized to determinant one."""
    return (m1 @ m2).normalized()


def commutator(m1: Mat2, m2: Mat2) -> Mat2:
    """m1 m2 m1^-1 m2^-1, renormalized."""
    return (m1 @ m2 @ m1.inverse() @ m2.inverse()).normalized()


def evaluate_word(word: str, gen_a: Mat2, gen_b: Mat2) -> Mat2:
    """Left-to-right product of the word over {A, a, B, b}.

    The raw product is returned: factors of determinant one multiply to
    determinant one, whereas recomputing det from large entries would
    cancel catastrophically and poison a final rescale.
    """
    table = {
        "A": gen_a,
        "a": gen_a.inverse(),
        "B": gen_b,
        "b": gen_b.inverse(),
    }
    out = Mat2.identity()
    for letter in word:
        out = out @ table[letter]
    return out


def jorgensen_value(m1: Mat2, m2: Mat2) -> float:
    """|tr^2 m1 - 4| + |tr [m1, m2] - 2|.

    Jorgensen's inequality makes >= 1 necessary for a discrete
    non-elementary group; used as a cheap sanity gate.
    """
    t1 = m1.tr
    tc = commutator(m1, m2).tr
    return abs(t1 * t1 - 4.0) + abs(tc - 2.0)


@dataclass(frozen=True)
class ComplexLength:
    """Complex translation length with its continuation branch index."""

    value: complex
    branch_offset: int = 0

    @property
    def real_length(self) -> float:
        return self.value.real

    @property
    def rotation(self) -> float:
        return self.value.imag


def _principal_length(t: complex) -> complex:
    """The length with Re >= 0 and Im in (-pi, pi]."""
    lam = 2.0 * cmath.acosh(t / 2.0)
    if lam.real < 0:
        lam = -lam
    k = round(lam.imag / _TWO_PI)
    lam -= complex(0.0, _TWO_PI * k)
    if lam.imag <= -math.pi:
        lam += complex(0.0, _TWO_PI)
    return lam


def complex_length_from_trace(
    t: complex,
    previous: ComplexLength | None = None,
    *,
    require_loxodromic: bool = False,
    cusp_tol: float = 1e-9,
    max_jump: float | None = None,
) -> ComplexLength:
    """Invert +-tr = 2 cosh(l/2) with Re l >= 0.

    Without ``previous`` the branch with Im in (-pi, pi] is returned; with
    it, the 2 pi i translate (and the sign mirror when Re l = 0) closest
    to the previous value is chosen, which realises continuation along a
    path of traces.  ``max_jump`` optionally rejects continuation steps
    that would still move the length by more than that amount.
    """
    t = complex(t)
    if require_loxodromic and (abs(t - 2.0) < cusp_tol or abs(t + 2.0) < cusp_tol):
        raise CuspTrace(f"trace {t} is parabolic within {cusp_tol}")
    lam0 = _principal_length(t)
    if previous is None:
        return ComplexLength(lam0, 0)

    prev = previous.value
    candidates = []
    base_values = [lam0]
    if abs(lam0.real) < 1e-12:
        base_values.append(-lam0)  # purely rotational: both signs admissible
    for base in base_values:
        k = round((prev.imag - base.imag) / _TWO_PI)
        for kk in (k - 1, k, k + 1):
            candidates.append((base + complex(0.0, _TWO_PI * kk), kk))
    value, offset = min(candidates, key=lambda ck: abs(ck[0] - prev))
    if max_jump is not None and abs(value - prev) > max_jump:
        raise BranchJump(
            f"length moved by {abs(value - prev):.3g} > {max_jump:.3g} in one step"
        )
    return ComplexLength(value, previous.branch_offset + offset)


def length_from_real_trace(t: float) -> float:
    """Real hyperbolic length 2 acosh(|t|/2) of a purely hyperbolic trace."""
    return 2.0 * math.acosh(abs(t) / 2.0)


@dataclass(frozen=True)
class FixedPoints:
    """Fixed points on the sphere with their dynamical tags."""

    kind: str  # "loxodromic" | "parabolic" | "elliptic"
    attracting: complex
    repelling: complex


def fixed_points(m: Mat2, tol: float = 1e-12) -> FixedPoints:
    """Solve the fixed-point quadratic and tag the roots.

    Loxodromic roots are ordered (attracting, repelling) by the modulus of
    the derivative; a parabolic has a single doubled fixed point; elliptic
    roots keep a deterministic but meaningless order.
    """
    if abs(m.b) < tol and abs(m.c) < tol and abs(m.a - m.d) < tol:
        raise DegenerateMatrix("identity has no isolated fixed points")
    t = m.tr
    disc = t * t - 4.0
    parabolic = abs(disc) < tol
    elliptic = (not parabolic) and abs(t.imag) < tol and t.real * t.real < 4.0

    if abs(m.c) < tol:
        z_inf = INFINITY
        if parabolic:
            return FixedPoints("parabolic", z_inf, z_inf)
        z_fin = m.b / (m.d - m.a)
        # multiplier at infinity in the chart w = 1/z
        attracting_at_inf = abs(m.d / m.a) < 1.0
        if elliptic:
            return FixedPoints("elliptic", z_fin, z_inf)
        if attracting_at_inf:
            return FixedPoints("loxodromic", z_inf, z_fin)
        return FixedPoints("loxodromic", z_fin, z_inf)

    if parabolic:
        z = (m.a - m.d) / (2.0 * m.c)
        return FixedPoints("parabolic", z, z)
    root = cmath.sqrt(disc)
    z1 = (m.a - m.d + root) / (2.0 * m.c)
    z2 = (m.a - m.d - root) / (2.0 * m.c)
    if elliptic:
        return FixedPoints("elliptic", z1, z2)
    k1 = abs(1.0 / (m.c * z1 + m.d) ** 2)
    if k1 < 1.0:
        return FixedPoints("loxodromic", z1, z2)
    return FixedPoints("loxodromic", z2, z1)
