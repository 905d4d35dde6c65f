import cmath
import math
import random

import pytest

from qftorus.errors import CuspTrace, DegenerateMatrix
from qftorus.fngroup import matrices_from_triple
from qftorus.sl2 import (
    ComplexLength,
    Mat2,
    commutator,
    complex_length_from_trace,
    compose,
    evaluate_word,
    fixed_points,
    is_infinity,
    jorgensen_value,
)
from qftorus.traces import TraceTriple


HEX = matrices_from_triple(TraceTriple(3.0, 3.0, 3.0))
RECT = matrices_from_triple(
    TraceTriple(4.0 / math.sqrt(3.0), 4.0, 8.0 / math.sqrt(3.0))
)


def test_compose_identity_and_inverse():
    m = HEX.gen_a
    ident = Mat2.identity()
    out = compose(ident, m)
    assert abs(out.a - m.a) + abs(out.b - m.b) + abs(out.c - m.c) + abs(out.d - m.d) < 1e-12
    back = compose(m, m.inverse())
    assert abs(back.a - 1) < 1e-12 and abs(back.d - 1) < 1e-12
    assert abs(back.b) < 1e-12 and abs(back.c) < 1e-12


def test_compose_hexagonal_product_trace():
    assert abs(compose(HEX.gen_a, HEX.gen_b).tr - 3.0) < 1e-9


def test_compose_determinant_random():
    rng = random.Random(7)
    for _ in range(200):
        m1 = Mat2(*(complex(rng.uniform(-2, 2), rng.uniform(-2, 2)) for _ in range(4)))
        m2 = Mat2(*(complex(rng.uniform(-2, 2), rng.uniform(-2, 2)) for _ in range(4)))
        if abs(m1.det()) < 1e-3 or abs(m2.det()) < 1e-3:
            continue
        assert abs(compose(m1.normalized(), m2.normalized()).det() - 1.0) < 1e-12


def test_commutator_examples():
    diag = Mat2(2.0, 0.0, 0.0, 0.5)
    diag2 = Mat2(3.0, 0.0, 0.0, 1.0 / 3.0)
    k = commutator(diag, diag2)
    assert abs(k.a - 1) + abs(k.b) + abs(k.c) + abs(k.d - 1) < 1e-12
    assert abs(commutator(HEX.gen_a, HEX.gen_b).tr + 2.0) < 1e-9
    assert abs(commutator(RECT.gen_a, RECT.gen_b).tr + 2.0) < 1e-9


def test_complex_length_examples():
    lam = complex_length_from_trace(4.0)
    assert abs(lam.value - 2.0 * math.acosh(2.0)) < 1e-12
    assert abs(lam.value - 2.633915793849633) < 1e-6
    assert abs(complex_length_from_trace(2.0).value) < 1e-9
    lam2 = complex_length_from_trace(2.0 * math.sqrt(2.0))
    assert abs(lam2.value - 1.762747174039086) < 1e-6


def test_complex_length_round_trip_random():
    rng = random.Random(11)
    for _ in range(10_000):
        t = complex(rng.uniform(-100, 100), rng.uniform(-100, 100))
        if abs(t) > 100:
            continue
        lam = complex_length_from_trace(t).value
        assert lam.real >= -1e-15
        assert -math.pi - 1e-12 < lam.imag <= math.pi + 1e-12
        back = 2.0 * cmath.cosh(lam / 2.0)
        assert min(abs(back - t), abs(back + t)) < 1e-12 * max(1.0, abs(t))


def test_complex_length_negative_real_trace_is_real():
    lam = complex_length_from_trace(-4.0)
    assert abs(lam.value.imag) < 1e-12
    assert abs(lam.value.real - 2.0 * math.acosh(2.0)) < 1e-12


def test_branch_continuity_along_path():
    # traces winding once around the origin at radius 4: far from +-2,
    # so the recovered length must move continuously with no branch snap
    n = 400
    prev = None
    values = []
    for k in range(n + 1):
        t = 4.0 * cmath.exp(2j * math.pi * k / n)
        prev = complex_length_from_trace(t, prev)
        values.append(prev.value)
    for a, b in zip(values, values[1:]):
        assert abs(b - a) < 0.5
    back = 2.0 * cmath.cosh(values[-1] / 2.0)
    assert min(abs(back - 4.0), abs(back + 4.0)) < 1e-9


def test_cusp_trace_error():
    with pytest.raises(CuspTrace):
        complex_length_from_trace(2.0 + 1e-12, require_loxodromic=True)
    complex_length_from_trace(2.5, require_loxodromic=True)  # fine


def test_fixed_points_diagonal():
    m = Mat2(2.0, 0.0, 0.0, 0.5)  # z -> 4z
    fp = fixed_points(m)
    assert fp.kind == "loxodromic"
    assert is_infinity(fp.attracting)
    assert abs(fp.repelling) < 1e-12


def test_fixed_points_parabolic_translation():
    fp = fixed_points(Mat2(1.0, 1.0, 0.0, 1.0))
    assert fp.kind == "parabolic"
    assert is_infinity(fp.attracting)


def test_fixed_points_hexagonal_commutator_parabolic():
    fp = fixed_points(commutator(HEX.gen_a, HEX.gen_b))
    assert fp.kind == "parabolic"
    assert abs(fp.attracting - fp.repelling) < 1e-9


def test_fixed_points_identity_raises():
    with pytest.raises(DegenerateMatrix):
        fixed_points(Mat2.identity())


def test_jorgensen_examples():
    assert jorgensen_value(HEX.gen_a, HEX.gen_b) >= 1.0
    ident = Mat2.identity()
    assert jorgensen_value(ident, ident) < 1e-12


def test_evaluate_word_matches_direct_product():
    m = evaluate_word("AB", HEX.gen_a, HEX.gen_b)
    d = HEX.gen_a @ HEX.gen_b
    assert abs(m.a - d.a) + abs(m.b - d.b) + abs(m.c - d.c) + abs(m.d - d.d) < 1e-12
    assert abs(m.det() - 1.0) < 1e-12
