"""Total logarithmic score and its two component scores.

All logarithms are natural, so scores are in nats. The total score of a pmv
``p`` at observed outcome ``o`` is

    log p[o] + sum_{i != o} log(1 - p[i])

Both summands are proper scores on their own, so they are always reported
separately alongside the total.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Literal

import numpy as np

from .core import Pmv, check_outcome

Component = Literal["total", "log", "complementary"]
COMPONENTS: tuple[Component, ...] = ("total", "log", "complementary")


@dataclass(frozen=True)
class ScoreBreakdown:
    log_component: float
    complementary_component: float
    total: float

    def component(self, which: Component) -> float:
        if which == "total":
            return self.total
        if which == "log":
            return self.log_component
        if which == "complementary":
            return self.complementary_component
        raise ValueError(f"unknown score component {which!r}")


def log_score(p: Pmv, outcome: int) -> float:
    """``log p[outcome]``."""
    return math.log(p[outcome])


def comp_log_score(p: Pmv, outcome: int) -> float:
    """Sum of ``log(1 - p[i])`` over the outcomes that did not occur."""
    o = check_outcome(outcome, p.realm) - 1
    w = p.weights
    return float(np.sum(np.log1p(-np.delete(w, o))))


def total_log_score(p: Pmv, outcome: int) -> ScoreBreakdown:
    lc = log_score(p, outcome)
    cc = comp_log_score(p, outcome)
    return ScoreBreakdown(lc, cc, lc + cc)


def total_log_score_logit_form(p: Pmv, outcome: int) -> float:
    """The same total written as ``logit(p[o]) + sum_i log(1 - p[i])``.

    Only the logit term depends on the outcome, which is what makes score
    variances depend on the logits alone.
    """
    po = p[outcome]
    return math.log(po / (1.0 - po)) + float(np.sum(np.log1p(-p.weights)))


def outcome_term(p: Pmv, component: Component = "total") -> np.ndarray:
    """Outcome-dependent part of the score, per outcome.

    The score at outcome ``i`` is this term plus a constant that does not
    depend on ``i``: the logit for the total score, ``log p_i`` for the log
    component and ``-log(1 - p_i)`` for the complementary one. Differences
    of previsions and all variances depend on this term only.
    """
    w = p.weights
    if component == "total":
        return np.log(w) - np.log1p(-w)
    if component == "log":
        return np.log(w)
    if component == "complementary":
        return -np.log1p(-w)
    raise ValueError(f"unknown score component {component!r}")


def outcome_scores(p: Pmv, component: Component = "total") -> np.ndarray:
    """Vector of the score of ``p`` at every outcome, 1..N in order."""
    w = p.weights
    log_part = np.log(w)
    comp_part = np.sum(np.log1p(-w)) - np.log1p(-w)
    if component == "total":
        return log_part + comp_part
    if component == "log":
        return log_part
    if component == "complementary":
        return comp_part
    raise ValueError(f"unknown score component {component!r}")
