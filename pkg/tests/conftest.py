import math
import random

import pytest

from qftorus.farey import Slope
from qftorus.fngroup import FNParams, triple_from_fn

LN3 = math.log(3.0)
TWO_ASINH1 = 2.0 * math.asinh(1.0)


def random_fn_params(rng, re_range=(0.1, 5.0), im_tau=3.0):
    lam = complex(rng.uniform(*re_range), rng.uniform(-1.0, 1.0))
    tau = complex(rng.uniform(-2.5, 2.5), rng.uniform(-im_tau, im_tau))
    return FNParams(lam, tau)


def random_markov_triple(rng, tame=True):
    """Random triple satisfying the Markov identity.

    ``tame`` rejection-samples away from tr VW = +-2 (where the matrix
    normalization degenerates) and from very large traces, keeping the
    brute-force word-product oracle well conditioned.
    """
    while True:
        lam = rng.uniform(0.4, 1.6)
        tau = complex(rng.uniform(-1.0, 1.0), rng.uniform(-1.2, 1.2))
        triple = triple_from_fn(FNParams(lam, tau))
        if not tame:
            return triple
        traces = triple.as_tuple()
        if min(abs(t - 2.0) for t in traces) < 0.3:
            continue
        if min(abs(t + 2.0) for t in traces) < 0.3:
            continue
        if max(abs(t) for t in traces) > 12.0:
            continue
        return triple


def slopes_up_to(total: int):
    """All slopes with |p| + q <= total (including 1/0)."""
    out = [Slope(1, 0)]
    for q in range(1, total + 1):
        for p in range(-(total - q), total - q + 1):
            if math.gcd(abs(p), q) == 1:
                out.append(Slope(p, q))
    return out


@pytest.fixture(scope="session")
def rng():
    return random.Random(20260809)
