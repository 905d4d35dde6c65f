import math

import pytest

from conftest import LN3, TWO_ASINH1, random_fn_params

from qftorus.errors import DegenerateLength, InvalidTriple
from qftorus.farey import Slope, intersection_number
from qftorus.fngroup import (
    FNParams,
    matrices_from_triple,
    remark,
    triple_from_fn,
)
from qftorus.sl2 import jorgensen_value
from qftorus.traces import TraceTriple, markov_complete, markov_residual, trace_of_slope


def test_triple_from_fn_rectangular():
    tri = triple_from_fn(FNParams(LN3, 0.0))
    assert abs(tri.x - 4 / math.sqrt(3)) < 1e-12
    assert abs(tri.y - 4.0) < 1e-12
    assert abs(tri.z - 8 / math.sqrt(3)) < 1e-12
    assert markov_residual(tri) < 1e-12


def test_triple_from_fn_self_symmetric():
    # sinh(lambda/2) = 1 forces the two generator lengths equal
    tri = triple_from_fn(FNParams(TWO_ASINH1, 0.0))
    assert abs(tri.x - tri.y) < 1e-12


def test_triple_from_fn_pure_bend():
    tri = triple_from_fn(FNParams(LN3, 0.5j * math.pi))
    assert abs(tri.y - 2.0 * math.sqrt(2.0)) < 1e-12
    assert abs(tri.x - 4 / math.sqrt(3)) < 1e-12


def test_triple_from_fn_degenerate_length():
    with pytest.raises(DegenerateLength):
        triple_from_fn(FNParams(1e-15, 0.0))


def test_fn_params_validation():
    with pytest.raises(ValueError):
        FNParams(-1.0, 0.0)


def test_matrices_hexagonal():
    g = matrices_from_triple(TraceTriple(3.0, 3.0, 3.0))
    m = g.measured_triple()
    assert abs(m.x - 3) < 1e-12 and abs(m.y - 3) < 1e-12 and abs(m.z - 3) < 1e-12
    assert abs(g.commutator_trace() + 2.0) < 1e-9
    assert jorgensen_value(g.gen_a, g.gen_b) >= 1.0
    assert not g.elliptic


def test_matrices_rejects_bad_triple():
    with pytest.raises(InvalidTriple):
        matrices_from_triple(TraceTriple(3.0, 3.0, 4.0))


def test_matrices_elliptic_flag():
    x, y = 1.0, 2.5
    z = markov_complete(x, y, +1)
    tri = TraceTriple(x, y, z)
    assert markov_residual(tri) < 1e-9
    g = matrices_from_triple(tri)
    assert g.elliptic


def test_round_trip_random_fn(rng):
    for _ in range(200):
        params = random_fn_params(rng)
        tri = triple_from_fn(params)
        assert markov_residual(tri) < 1e-12 * max(
            1.0, max(abs(t) ** 3 for t in tri.as_tuple())
        )
        try:
            g = matrices_from_triple(tri)
        except Exception:
            continue  # cusp-degenerate draws are legitimately rejected
        m = g.measured_triple()
        scale = max(1.0, max(abs(t) for t in tri.as_tuple()))
        assert abs(m.x - tri.x) < 1e-9 * scale
        assert abs(m.y - tri.y) < 1e-9 * scale
        assert abs(m.z - tri.z) < 1e-9 * scale
        assert abs(g.commutator_trace() + 2.0) < 1e-9


def test_real_params_fuchsian(rng):
    for _ in range(50):
        lam = rng.uniform(0.2, 4.0)
        t = rng.uniform(-3.0, 3.0)
        tri = triple_from_fn(FNParams(lam, t))
        for v in tri.as_tuple():
            assert abs(v.imag) < 1e-12 * max(1.0, abs(v))
        g = matrices_from_triple(tri)
        assert jorgensen_value(g.gen_a, g.gen_b) >= 1.0


def test_remark_identity():
    base = TraceTriple(3.0, 3.0, 3.0)
    new, basis = remark(base, Slope(0, 1))
    assert new.as_tuple() == base.as_tuple()
    assert basis == ((0, 1), (1, 0))


def test_remark_half_slope():
    base = TraceTriple(3.0, 3.0, 3.0)
    new, basis = remark(base, Slope(1, 2))
    assert new.as_tuple() == (6, 3, 15)
    assert markov_residual(new) < 1e-9


def test_remark_swap():
    base = triple_from_fn(FNParams(0.9, 0.3 + 0.4j))
    new, _ = remark(base, Slope(1, 0))
    assert abs(new.x - base.y) < 1e-12
    assert abs(new.y - base.x) < 1e-12
    # third entry is one of the two roots completing the Markov triple
    roots = [markov_complete(new.x, new.y, s) for s in (+1, -1)]
    assert min(abs(new.z - r) for r in roots) < 1e-9


def test_remark_preserves_structure(rng):
    base = triple_from_fn(FNParams(1.1, 0.2 + 0.6j))
    for mu in [Slope(1, 2), Slope(2, 3), Slope(-1, 2), Slope(5, 2), Slope(1, 1)]:
        new, basis = remark(base, mu)
        scale = max(1.0, max(abs(t) for t in new.as_tuple()))
        assert markov_residual(new) < 1e-9 * scale
        det = basis[0][0] * basis[1][1] - basis[1][0] * basis[0][1]
        assert abs(det) == 1
        mu_col = Slope(basis[0][0], basis[1][0])
        sg_col = Slope(basis[0][1], basis[1][1])
        assert intersection_number(mu_col, sg_col) == 1
        assert abs(new.x - trace_of_slope(base, mu)) < 1e-12 * scale
