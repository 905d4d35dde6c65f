"""Slope arithmetic for simple closed curves on the once-punctured torus.

A reduced rational p/q (together with 1/0 for the dual generator) labels
the free-homotopy class of a simple closed curve; the circle of slopes is
the full projective lamination space.  Everything downstream - the trace
recursion, rays, slices - navigates this circle through the Farey /
Stern-Brocot structure implemented here.

Conventions.  A slope p/q corresponds to the curve whose word in the
marking generators has exponent sums (q, p): slope 0/1 is the first
generator A, slope 1/0 the second generator B, slope 1/1 the product AB,
and the negative sector is entered through slope -1/1 <-> A B^-1.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

from .errors import BaseSlope, ZeroSlopePair

__all__ = [
    "Slope",
    "reduce_slope",
    "intersection_number",
    "farey_parents",
    "stern_brocot_enumerate",
    "curve_word",
    "word_exponents",
    "convergents",
    "marking_basis",
    "change_basis",
]


@dataclass(frozen=True, order=False)
class Slope:
    """Reduced rational p/q in Q u {oo}; q >= 0 and q = 0 forces p = 1."""

    p: int
    q: int

    def __post_init__(self):
        p, q = self.p, self.q
        if p == 0 and q == 0:
            raise ZeroSlopePair("slope (0, 0) is not defined")
        g = math.gcd(abs(p), abs(q))
        p, q = p // g, q // g
        if q < 0 or (q == 0 and p < 0):
            p, q = -p, -q
        object.__setattr__(self, "p", p)
        object.__setattr__(self, "q", q)

    @property
    def is_infinity(self) -> bool:
        return self.q == 0

    @property
    def value(self) -> float:
        return math.inf if self.q == 0 else self.p / self.q

    def sort_key(self):
        # infinity sorts after every finite slope
        return (1, Fraction(0)) if self.q == 0 else (0, Fraction(self.p, self.q))

    @classmethod
    def parse(cls, text: str) -> "Slope":
        text = text.strip()
        if text in ("inf", "oo", "infinity"):
            return cls(1, 0)
        if "/" in text:
            ps, qs = text.split("/", 1)
            return cls(int(ps), int(qs))
        return cls(int(text), 1)

    def __str__(self) -> str:
        return f"{self.p}/{self.q}"


def reduce_slope(p: int, q: int) -> Slope:
    """Sign-normalized coprime slope from an arbitrary integer pair."""
    return Slope(p, q)


def _cross(u, v):
    return u[0] * v[1] - u[1] * v[0]


def _raw(s: Slope):
    return (s.p, s.q)


def intersection_number(s1: Slope, s2: Slope) -> int:
    """Geometric intersection number |p1 q2 - q1 p2| on the torus."""
    return abs(_cross(_raw(s1), _raw(s2)))


# The circle of slopes splits into four Farey sectors between base slopes.
# Each sector is stored as (low bound, high bound) raw vectors whose signs
# make mediants land inside the sector; the slope oo needs the (-1, 0)
# representative when it bounds the negative sector.
_BASE_RAWS = ((0, 1), (1, 0), (1, 1), (-1, 1))
_SECTORS = (
    ((-1, 0), (-1, 1)),  # (-oo, -1)
    ((-1, 1), (0, 1)),   # (-1, 0)
    ((0, 1), (1, 1)),    # (0, 1)
    ((1, 1), (1, 0)),    # (1, oo)
)


def _is_base(s: Slope) -> bool:
    return _raw(s) in _BASE_RAWS


def _sector_bounds(s: Slope):
    p, q = s.p, s.q
    if q == 0 or p == 0 or abs(p) == q:
        raise BaseSlope(f"slope {s} is a base slope of the Farey tree")
    if p < -q:
        return _SECTORS[0]
    if p < 0:
        return _SECTORS[1]
    if p < q:
        return _SECTORS[2]
    return _SECTORS[3]


def _parents_raw(s: Slope):
    """Raw bounding pair (L, R) with L + R = s and |cross(L, R)| = 1.

    Walks the Stern-Brocot tree of the sector containing s, jumping over
    runs of same-side steps (one jump per continued-fraction term).
    """
    lo, hi = _sector_bounds(s)
    target = _raw(s)
    d = _cross(lo, hi)  # +-1, stays fixed along the descent
    # coordinates of the target in the (lo, hi) basis; both are >= 1
    alpha = _cross(target, hi) // d
    beta = _cross(lo, target) // d
    left, right = lo, hi
    while not (alpha == 1 and beta == 1):
        if alpha > beta:
            t = (alpha - 1) // beta
            right = (left[0] * t + right[0], left[1] * t + right[1])
            alpha -= t * beta
        else:
            t = (beta - 1) // alpha
            left = (left[0] + right[0] * t, left[1] + right[1] * t)
            beta -= t * alpha
    return left, right


def farey_parents(s: Slope):
    """Farey parents (left, right) of s plus the third neighbor.

    left + right = s as mediants, |p_L q_R - q_L p_R| = 1, and the returned
    ``difference`` is the reduced slope of right - left.  Raises BaseSlope
    for the four roots 0/1, 1/0, 1/1, -1/1.
    """
    left, right = _parents_raw(s)
    diff = Slope(right[0] - left[0], right[1] - left[1])
    return Slope(*left), Slope(*right), diff


def stern_brocot_enumerate(depth: int, sector=None) -> list[Slope]:
    """All slopes of Stern-Brocot depth <= depth, sorted by value.

    Depth 0 is the base set {0/1, 1/0, 1/1, -1/1}; each further level
    inserts the mediant between every adjacent pair on the circle.  An
    optional ``sector`` = (lo, hi) pair of slopes clips the output to
    lo <= value <= hi.
    """
    if depth < 0:
        raise ValueError("depth must be >= 0")
    chain = [(-1, 0), (-1, 1), (0, 1), (1, 1), (1, 0)]
    seen = {Slope(*v) for v in chain}
    for _ in range(depth):
        refined = [chain[0]]
        for a, b in zip(chain, chain[1:]):
            m = (a[0] + b[0], a[1] + b[1])
            refined.append(m)
            refined.append(b)
            seen.add(Slope(*m))
        chain = refined
    out = sorted(seen, key=Slope.sort_key)
    if sector is not None:
        lo, hi = sector
        keys = (lo.sort_key(), hi.sort_key())
        lo_k, hi_k = min(keys), max(keys)
        out = [s for s in out if lo_k <= s.sort_key() <= hi_k]
    return out


# Base words; the (-1, 0) representative of oo carries the inverse letter.
_BASE_WORDS = {
    (0, 1): "A",
    (1, 0): "B",
    (1, 1): "AB",
    (-1, 1): "Ab",
    (-1, 0): "b",
}


def curve_word(s: Slope) -> str:
    """Primitive cyclically reduced word for the curve of slope s.

    Letters A/B are the marking generators, lowercase their inverses.
    Built by concatenating along the Farey tree: the word of a mediant is
    word(left) + word(right) in circle order.
    """
    raw = _raw(s)
    if raw in _BASE_WORDS:
        return _BASE_WORDS[raw]
    lo, hi = _sector_bounds(s)
    u, v = lo, hi
    wu, wv = _BASE_WORDS[u], _BASE_WORDS[v]
    orient = _cross(u, v)
    while True:
        m = (u[0] + v[0], u[1] + v[1])
        wm = wu + wv
        if m == raw:
            return wm
        if _cross(raw, m) * orient > 0:
            v, wv = m, wm
        else:
            u, wu = m, wm


def word_exponents(word: str):
    """Exponent sums (number of A's, number of B's) of a word."""
    na = word.count("A") - word.count("a")
    nb = word.count("B") - word.count("b")
    return na, nb


def convergents(x: float, max_terms: int = 32) -> list[Slope]:
    """Continued-fraction convergents p_k/q_k of a real number.

    Every convergent satisfies |x - p/q| < 1/q^2; consecutive convergents
    are Farey neighbors.  Terms stop at max_terms or once the remainder is
    resolved to float precision.
    """
    if not math.isfinite(x):
        raise ValueError("convergents need a finite input")
    out: list[Slope] = []
    h_prev, k_prev = 1, 0
    h, k = math.floor(x), 1
    out.append(Slope(h, k))
    rem = x - math.floor(x)
    for _ in range(max_terms - 1):
        if rem < 1e-12 or k > 1e15:
            break
        y = 1.0 / rem
        a = math.floor(y)
        rem = y - a
        h, h_prev = a * h + h_prev, h
        k, k_prev = a * k + k_prev, k
        out.append(Slope(h, k))
    return out


# Canonical second marking curve for the quakebend plane along mu: the
# Farey parent with smaller denominator (ties toward smaller |p|); the
# four base slopes are paired explicitly.
_BASE_SIGMA = {
    (0, 1): Slope(1, 0),
    (1, 0): Slope(0, 1),
    (1, 1): Slope(1, 0),
    (-1, 1): Slope(1, 0),
}


def marking_basis(mu: Slope):
    """Second curve sigma with i(mu, sigma) = 1 and the basis matrix.

    Returns (sigma, basis) where basis columns are the raw vectors of mu
    and sigma; it is unimodular, and ``change_basis`` expresses any slope
    in the (mu, sigma) marking.
    """
    raw = _raw(mu)
    if raw in _BASE_SIGMA:
        sigma = _BASE_SIGMA[raw]
    else:
        left, right, _ = farey_parents(mu)
        sigma = min((left, right), key=lambda s: (s.q, abs(s.p)))
    basis = ((mu.p, sigma.p), (mu.q, sigma.q))
    return sigma, basis


def change_basis(nu: Slope, basis) -> Slope:
    """Slope of nu in the marking recorded by ``basis``."""
    (p_mu, p_sg), (q_mu, q_sg) = basis
    det = p_mu * q_sg - q_mu * p_sg
    if abs(det) != 1:
        raise ValueError("marking basis must be unimodular")
    q_new = (nu.p * q_sg - nu.q * p_sg) // det
    p_new = (p_mu * nu.q - q_mu * nu.p) // det
    return Slope(p_new, q_new)


def mediant_slope(s1: Slope, s2: Slope) -> Slope:
    """Slope of the sum of the canonical representatives."""
    return Slope(s1.p + s2.p, s1.q + s2.q)
