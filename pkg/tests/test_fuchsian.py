import math

import pytest

from conftest import LN3, TWO_ASINH1

from qftorus.errors import NoIntersection, SameSlope
from qftorus.farey import Slope, intersection_number, stern_brocot_enumerate
from qftorus.fuchsian import (
    critical_line,
    critical_point,
    earthquake_trace,
    f_value,
    f_value_irrational,
)
from qftorus.traces import trace_and_derivative

MU = Slope(0, 1)
NU = Slope(1, 0)


def test_earthquake_trace_closed_form():
    # dual generator trace along the path: 2 cosh(t/2)/tanh(c/2)
    for c in (0.5, LN3, 2.0):
        for t in (-1.5, 0.0, 0.8):
            expected = 2.0 * math.cosh(t / 2) / math.tanh(c / 2)
            assert abs(earthquake_trace(MU, c, t, NU) - expected) < 1e-12


def test_earthquake_trace_diverges():
    v0 = earthquake_trace(MU, LN3, 0.0, NU)
    assert earthquake_trace(MU, LN3, 30.0, NU) > 1e5 * v0
    assert earthquake_trace(MU, LN3, -30.0, NU) > 1e5 * v0


def test_earthquake_integral_translate():
    # the product curve at twist -c matches the dual generator at 0
    for c in (0.7, LN3):
        lhs = earthquake_trace(MU, c, -c, Slope(1, 1))
        rhs = earthquake_trace(MU, c, 0.0, NU)
        assert abs(lhs - rhs) < 1e-12


def test_earthquake_same_slope():
    with pytest.raises(SameSlope):
        earthquake_trace(MU, 1.0, 0.0, MU)


def test_critical_point_generator_pair():
    for c in (0.5, LN3, 2.5):
        cp = critical_point(MU, NU, c)
        assert abs(cp.t_star) < 1e-9
        assert abs(math.sinh(c / 2) * math.sinh(cp.f_value / 2) - 1.0) < 1e-10


def test_critical_point_integral_twists():
    c = LN3
    for m in range(-2, 3):
        nu = Slope(1, -m) if m != 0 else NU
        cp = critical_point(MU, nu, c)
        assert abs(cp.t_star - m * c) < 1e-8
        assert abs(math.sinh(c / 2) * math.sinh(cp.f_value / 2) - 1.0) < 1e-10


def test_critical_point_value_ln3():
    cp = critical_point(MU, NU, LN3)
    assert abs(cp.f_value - 2.0 * math.acosh(2.0)) < 1e-10


def test_critical_point_no_intersection():
    with pytest.raises(NoIntersection):
        critical_point(MU, MU, 1.0)


def test_f_self_symmetric():
    assert abs(f_value(MU, NU, TWO_ASINH1) - TWO_ASINH1) < 1e-10


def test_f_inverse_relation(rng):
    # both legs must stay at moderate lengths: traces grow like e^(l/2),
    # so double precision supports the 1e-8 round trip only for f <= ~6
    slopes = stern_brocot_enumerate(3)
    done = 0
    while done < 25:
        mu, nu = rng.choice(slopes), rng.choice(slopes)
        if intersection_number(mu, nu) == 0:
            continue
        c = rng.uniform(0.8, 2.5)
        d = f_value(mu, nu, c)
        if d > 6.0:
            continue
        back = f_value(nu, mu, d)
        assert abs(back - c) < 1e-8
        done += 1


def test_f_monotone_decreasing():
    cs = [0.05 * (10.0 / 0.05) ** (k / 11.0) for k in range(12)]
    for pair in ((MU, NU), (MU, Slope(1, 2)), (Slope(1, 1), Slope(-1, 1))):
        vals = [f_value(pair[0], pair[1], c) for c in cs]
        assert all(a > b for a, b in zip(vals, vals[1:]))
        assert vals[0] > 5.0  # f -> infinity as c -> 0
        assert vals[-1] < 1.0  # f -> 0 as c -> infinity


def test_critical_line_generator_identity():
    pts = critical_line(MU, NU, [0.3, 0.7, 1.2, 2.0, 3.1])
    for cp in pts:
        assert abs(math.sinh(cp.c / 2) * math.sinh(cp.f_value / 2) - 1.0) < 1e-10
    # lengths move in opposite directions along the line
    fs = [cp.f_value for cp in pts]
    assert all(a > b for a, b in zip(fs, fs[1:]))


def test_critical_line_hyperbola_identity():
    # product and quotient curves of a marking: the critical line lies on
    # (z - 2)(z' - 2) = 4 in the two traces
    for cp in critical_line(Slope(1, 1), Slope(-1, 1), [0.4, 0.9, 1.5, 2.4]):
        z = 2.0 * math.cosh(cp.c / 2.0)
        zp = 2.0 * math.cosh(cp.f_value / 2.0)
        assert abs((z - 2.0) * (zp - 2.0) - 4.0) < 1e-9


def test_critical_line_empty_grid():
    assert critical_line(MU, NU, []) == []


def test_convexity_random(rng):
    slopes = stern_brocot_enumerate(3)
    done = 0
    while done < 30:
        mu, nu = rng.choice(slopes), rng.choice(slopes)
        if intersection_number(mu, nu) == 0:
            continue
        c = rng.uniform(0.3, 2.0)
        cp = critical_point(mu, nu, c)

        def dg(t):
            return trace_and_derivative(mu, c, complex(t), nu)[1].real

        # derivative changes sign exactly once over a wide window
        ts = [cp.t_star + s for s in (-8.0, -2.0, -0.5, 0.5, 2.0, 8.0)]
        signs = [dg(t) < 0 for t in ts]
        assert signs == sorted(signs, reverse=True)
        h = 1e-5 * (1 + abs(cp.t_star))
        curv = (dg(cp.t_star + h) - dg(cp.t_star - h)) / (2 * h)
        assert curv > 0
        done += 1


def test_f_irrational_convergence():
    golden = (1 + math.sqrt(5)) / 2
    val = f_value_irrational(MU, golden, 1.0)
    assert math.isfinite(val) and val > 0
    # a rational input reduces to the weighted rational value
    half = f_value_irrational(MU, 0.5, 1.2)
    assert abs(half - f_value(MU, Slope(1, 2), 1.2) / 2.0) < 1e-9
