"""Brute-force reference computations used by the tests.

These walk the outcome space one outcome at a time and never use the
closed forms the package implements.
"""

from __future__ import annotations

import math

import numpy as np
from mpmath import mp, mpf

from scorex.core import Pmv
from scorex.scoring import total_log_score


def brute_score(w, outcome: int) -> float:
    """Total log score straight from the event-indicator definition."""
    s = 0.0
    for i, x in enumerate(w, start=1):
        s += math.log(x) if i == outcome else math.log(1.0 - x)
    return s


def expect(assessor: Pmv, values) -> float:
    """sum_i a_i * values(i) over outcomes i = 1..N."""
    return math.fsum(a * values(i) for i, a in enumerate(assessor.weights, start=1))


def variance(assessor: Pmv, values) -> float:
    m = expect(assessor, values)
    return expect(assessor, lambda i: (values(i) - m) ** 2)


def prevision_of_score(assessor: Pmv, scored: Pmv) -> float:
    return expect(assessor, lambda i: total_log_score(scored, i).total)


def mp_score(w, outcome: int, dps: int = 50):
    with mp.workdps(dps):
        return sum(
            (mp.log(mpf(x)) if i == outcome else mp.log(1 - mpf(x)))
            for i, x in enumerate(w, start=1)
        )


def random_pairs(n_pairs: int, n: int, seed: int):
    """Pairs of flat-Dirichlet pmvs, kept away from the simplex boundary."""
    rng = np.random.default_rng(seed)
    out = []
    while len(out) < n_pairs:
        a, b = rng.dirichlet(np.ones(n), size=2)
        if min(a.min(), b.min()) < 1e-9:
            continue
        out.append((Pmv.of(a), Pmv.of(b)))
    return out
