import math

import pytest

from conftest import LN3, TWO_ASINH1

from qftorus.errors import NoIntersection, OutOfRegion
from qftorus.farey import Slope, change_basis, curve_word, marking_basis
from qftorus.rays import (
    QuakebendPoint,
    bending_angle,
    cusp_point,
    group_at,
    locate_group,
    locate_tau,
    trace_ray,
)
from qftorus.sl2 import evaluate_word, jorgensen_value

MU = Slope(0, 1)
NU = Slope(1, 0)


def test_integral_ray_vertical_segment():
    ray = trace_ray(MU, NU, LN3, target_samples=40)
    assert all(abs(s.tau.real) < 1e-8 for s in ray.samples)
    assert all(0.0 < s.tau.imag < 2.0 * math.pi / 3.0 for s in ray.samples)
    assert abs(ray.cusp.tau - 2j * math.pi / 3.0) < 1e-8
    assert ray.cusp.trace_sign == 2


def test_ray_sample_at_known_height():
    # nu-trace 2 sqrt 2 on the integral ray sits at tau = i pi/2
    tau = locate_tau(MU, NU, LN3, 2.0 * math.acosh(math.sqrt(2.0)))
    assert abs(tau - 0.5j * math.pi) < 1e-9


def test_ray_monotone_and_real():
    ray = trace_ray(MU, Slope(3, 5), LN3, target_samples=48, tol=1e-10)
    traces = [s.nu_trace for s in ray.samples]
    assert all(a > b for a, b in zip(traces, traces[1:]))
    lengths = [s.nu_length for s in ray.samples]
    assert all(a > b for a, b in zip(lengths, lengths[1:]))
    assert traces[0] > ray.trace_max - 1e-10
    assert traces[-1] < 2.0 + 1e-10
    for s in ray.samples:
        assert 0.0 < s.bending_angle < math.pi


def test_ray_endpoint_gaps_respect_tol():
    tol = 1e-10
    ray = trace_ray(MU, Slope(1, 2), 0.8, target_samples=40, tol=tol)
    assert ray.trace_max - ray.samples[0].nu_trace < tol
    assert ray.samples[-1].nu_trace - 2.0 < tol


def test_cusp_point_examples():
    cp = cusp_point(MU, NU, LN3)
    assert abs(cp.tau - 2j * math.pi / 3.0) < 1e-9
    cp2 = cusp_point(MU, NU, TWO_ASINH1)
    assert abs(cp2.tau - 0.5j * math.pi) < 1e-9


def test_cusp_imag_limits():
    # |Im tau| at the cusp is 2 arccos tanh(c/2): toward pi as c -> 0,
    # toward 0 as c -> infinity
    small = cusp_point(MU, NU, 0.05)
    assert math.pi - 0.3 < small.tau.imag < math.pi
    big = cusp_point(MU, NU, 8.0)
    assert 0.0 < big.tau.imag < 0.1
    for c in (0.5, LN3, TWO_ASINH1, 3.0):
        cp = cusp_point(MU, NU, c)
        assert abs(cp.tau.imag - 2.0 * math.acos(math.tanh(c / 2.0))) < 1e-8


def test_integral_rays_all_twists():
    c = 0.9
    for m in range(-2, 3):
        nu = Slope(1, -m) if m != 0 else NU
        ray = trace_ray(MU, nu, c, target_samples=24)
        assert all(abs(s.tau.real - m * c) < 1e-8 for s in ray.samples)
        assert abs(abs(ray.cusp.tau.imag) - 2.0 * math.acos(math.tanh(c / 2.0))) < 1e-8


def test_mirror_branch_is_conjugate():
    up = trace_ray(MU, Slope(2, 3), LN3, target_samples=24)
    down = trace_ray(MU, Slope(2, 3), LN3, target_samples=24, branch=-1)
    assert abs(down.cusp.tau - up.cusp.tau.conjugate()) < 1e-9
    for a, b in zip(up.samples, down.samples):
        assert abs(b.tau - a.tau.conjugate()) < 1e-8


def test_no_intersection_raises():
    with pytest.raises(NoIntersection):
        trace_ray(MU, MU, 1.0)


def test_locate_group_round_trip():
    d = 2.0 * math.acosh(math.sqrt(2.0))
    qp, group = locate_group(MU, NU, LN3, d)
    assert abs(qp.tau - 0.5j * math.pi) < 1e-9
    # remeasure both pleating lengths from the matrices
    assert abs(group.gen_a.tr - 2.0 * math.cosh(LN3 / 2.0)) < 1e-9
    _, basis = marking_basis(MU)
    word = curve_word(change_basis(NU, basis))
    t = evaluate_word(word, group.gen_a, group.gen_b).tr
    assert abs(t.imag) < 1e-9
    assert abs(2.0 * math.acosh(t.real / 2.0) - d) < 1e-8


def test_locate_group_out_of_region():
    with pytest.raises(OutOfRegion):
        locate_group(MU, NU, LN3, 99.0)
    with pytest.raises(OutOfRegion):
        locate_group(MU, NU, LN3, 2.0 * math.acosh(2.0) + 1e-9)


def test_locate_near_fuchsian_limit():
    # d close to f lands near the critical point on the real axis
    f = 2.0 * math.acosh(2.0)
    qp, _ = locate_group(MU, NU, LN3, f * (1.0 - 1e-7))
    assert abs(qp.tau.real) < 1e-6
    assert 0.0 < qp.tau.imag < 2e-3


def test_bending_angle():
    assert bending_angle(QuakebendPoint(MU, LN3, complex(0.3, 0.0))) == 0.0
    assert abs(bending_angle(QuakebendPoint(MU, LN3, 0.5j * math.pi)) - math.pi / 2) < 1e-15
    cp = cusp_point(MU, NU, LN3)
    assert abs(bending_angle(QuakebendPoint(MU, LN3, cp.tau)) - 2 * math.pi / 3) < 1e-9


def test_jorgensen_gate_along_ray():
    ray = trace_ray(MU, Slope(1, 2), 1.2, target_samples=24)
    for s in ray.samples:
        g = group_at(MU, 1.2, s.tau)
        assert jorgensen_value(g.gen_a, g.gen_b) >= 1.0 - 1e-9


def test_rays_in_same_plane_disjoint():
    c = LN3
    rays = [trace_ray(MU, nu, c, target_samples=24)
            for nu in (NU, Slope(1, 1), Slope(-1, 1), Slope(1, 2))]
    for i in range(len(rays)):
        for j in range(i + 1, len(rays)):
            for a in rays[i].samples:
                for b in rays[j].samples:
                    assert abs(a.tau - b.tau) > 1e-9
