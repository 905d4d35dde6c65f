"""Built-in invariant batteries behind the ``verify`` CLI subcommand.

Each check recomputes a cross-module identity from scratch and returns a
pass/fail record; the CLI exits nonzero if anything fails.  The full
pytest suite is stricter - these are the fast smoke versions.
"""

from __future__ import annotations

import math
import os
import random
import tempfile
from dataclasses import dataclass

from .farey import Slope, curve_word, farey_parents, intersection_number, stern_brocot_enumerate
from .fngroup import FNParams, matrices_from_triple, triple_from_fn
from .fuchsian import critical_point, f_value
from .rays import trace_ray
from .render import RAY_SCHEMA, emit_csv, ray_rows
from .sl2 import evaluate_word
from .traces import markov_residual, trace_and_derivative, trace_of_slope


@dataclass(frozen=True)
class CheckResult:
    name: str
    passed: bool
    detail: str = ""


def _check(name, passed, detail=""):
    return CheckResult(name, bool(passed), detail)


def check_markov_closure(n=50, seed=1):
    rng = random.Random(seed)
    worst_res, worst_comm = 0.0, 0.0
    for _ in range(n):
        lam = complex(rng.uniform(0.1, 5.0), rng.uniform(-1.0, 1.0))
        tau = complex(rng.uniform(-2.0, 2.0), rng.uniform(-2.9, 2.9))
        triple = triple_from_fn(FNParams(lam, tau))
        worst_res = max(worst_res, markov_residual(triple))
        g = matrices_from_triple(triple)
        worst_comm = max(worst_comm, abs(g.commutator_trace() + 2.0))
    ok = worst_res < 1e-12 and worst_comm < 1e-9
    return _check(
        "markov-closure",
        ok,
        f"max residual {worst_res:.2e}, max |tr[A,B]+2| {worst_comm:.2e}",
    )


def check_farey_structure(depth=8):
    bad = 0
    for s in stern_brocot_enumerate(depth):
        try:
            left, right, _ = farey_parents(s)
        except Exception:
            continue  # base slopes
        if intersection_number(left, right) != 1:
            bad += 1
        # mediant with sector-correct signs: oo enters negative-sector
        # mediants through its (-1, 0) representative
        med = set()
        for sl in ((left.p, left.q), (-left.p, -left.q)):
            for sr in ((right.p, right.q), (-right.p, -right.q)):
                if sl[0] + sr[0] or sl[1] + sr[1]:
                    med.add(Slope(sl[0] + sr[0], sl[1] + sr[1]))
        if s not in med:
            bad += 1
    return _check("farey-structure", bad == 0, f"{bad} violations to depth {depth}")


def check_trace_oracle(seed=2):
    rng = random.Random(seed)
    worst = 0.0
    for _ in range(3):
        lam = rng.uniform(0.5, 2.5)
        tau = complex(rng.uniform(-1.0, 1.0), rng.uniform(-1.5, 1.5))
        triple = triple_from_fn(FNParams(lam, tau))
        g = matrices_from_triple(triple)
        for s in stern_brocot_enumerate(4):
            word = curve_word(s)
            if len(word) > 10:
                continue
            brute = evaluate_word(word, g.gen_a, g.gen_b).tr
            rec = trace_of_slope(triple, s)
            worst = max(worst, abs(brute - rec) / max(1.0, abs(rec)))
    return _check("trace-oracle", worst < 1e-8, f"max relative error {worst:.2e}")


def check_derivative(n=50, seed=3):
    rng = random.Random(seed)
    mu, step = Slope(0, 1), 1e-5
    worst = 0.0
    for _ in range(n):
        c = rng.uniform(0.3, 3.0)
        tau = complex(rng.uniform(-2.0, 2.0), rng.uniform(0.05, 2.5))
        nu = rng.choice([Slope(1, 0), Slope(1, 1), Slope(1, 2), Slope(-1, 1)])
        _, exact = trace_and_derivative(mu, c, tau, nu)
        hi, _ = trace_and_derivative(mu, c, tau + step, nu)
        lo, _ = trace_and_derivative(mu, c, tau - step, nu)
        fd = (hi - lo) / (2.0 * step)
        worst = max(worst, abs(exact - fd) / max(1.0, abs(fd)))
    return _check("dual-derivative", worst < 1e-6, f"max relative error {worst:.2e}")


def check_integral_ray():
    c = math.log(3.0)
    ray = trace_ray(Slope(0, 1), Slope(1, 0), c, target_samples=24)
    re_dev = max(abs(s.tau.real) for s in ray.samples)
    cusp_err = abs(ray.cusp.tau - complex(0.0, 2.0 * math.pi / 3.0))
    ok = re_dev < 1e-8 and cusp_err < 1e-8
    return _check(
        "integral-ray", ok, f"|Re tau| <= {re_dev:.2e}, cusp error {cusp_err:.2e}"
    )


def check_f_inverse():
    c = 0.9
    forward = f_value(Slope(0, 1), Slope(1, 2), c)
    back = f_value(Slope(1, 2), Slope(0, 1), forward)
    return _check("f-inverse", abs(back - c) < 1e-8, f"|f(f(c)) - c| = {abs(back - c):.2e}")


def check_determinism():
    ray = trace_ray(Slope(0, 1), Slope(1, 0), 1.0, target_samples=16)
    rows = ray_rows(ray)
    with tempfile.TemporaryDirectory() as tmp:
        p1, p2 = os.path.join(tmp, "a.csv"), os.path.join(tmp, "b.csv")
        emit_csv(rows, RAY_SCHEMA, p1)
        emit_csv(rows, RAY_SCHEMA, p2)
        with open(p1, "rb") as f1, open(p2, "rb") as f2:
            same = f1.read() == f2.read()
    return _check("determinism", same, "csv bytes identical" if same else "csv differs")


def check_example_identities():
    worst1 = 0.0
    for c in (0.5, math.log(3.0), 2.0 * math.asinh(1.0), 3.0):
        cp = critical_point(Slope(0, 1), Slope(1, 0), c)
        worst1 = max(worst1, abs(math.sinh(0.5 * c) * math.sinh(0.5 * cp.f_value) - 1.0))
    worst2 = 0.0
    for c in (0.8, 1.4, 2.2):
        cp = critical_point(Slope(1, 1), Slope(-1, 1), c)
        z = 2.0 * math.cosh(0.5 * c)
        zp = 2.0 * math.cosh(0.5 * cp.f_value)
        worst2 = max(worst2, abs((z - 2.0) * (zp - 2.0) - 4.0))
    ok = worst1 < 1e-10 and worst2 < 1e-9
    return _check(
        "critical-line-identities", ok, f"generator {worst1:.2e}, hyperbola {worst2:.2e}"
    )


SUITES = {
    "invariants": (
        check_markov_closure,
        check_farey_structure,
        check_trace_oracle,
        check_derivative,
        check_integral_ray,
        check_f_inverse,
        check_example_identities,
        check_determinism,
    ),
}
SUITES["all"] = SUITES["invariants"]


def run_suite(name: str) -> list[CheckResult]:
    if name not in SUITES:
        raise ValueError(f"unknown suite {name!r}; choose from {sorted(SUITES)}")
    return [fn() for fn in SUITES[name]]
