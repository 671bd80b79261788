"""Net gains and comparative gains of two forecasters, realized and expected.

A forecaster's net gain is the realized score minus their own prevision for
it, so each forecaster expects a net gain of zero for themselves but not for
the other. The comparative gain of p over q is the plain score difference.
Every function takes a ``component`` so the log and complementary parts can
be tracked on their own.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .core import Pmv, same_realm
from .errors import ScorexError
from .information import four_fundamental_previsions, symmetric_divergences
from .scoring import Component, outcome_term, total_log_score


class InvariantViolation(ScorexError, ArithmeticError):
    pass


def _own_prevision(p: Pmv, component: Component) -> float:
    return four_fundamental_previsions(p, p, component).p_own


def net_gain(p: Pmv, outcome: int, component: Component = "total") -> float:
    """NG(x, p): realized score of ``p`` minus ``p``'s prevision for it."""
    return total_log_score(p, outcome).component(component) - _own_prevision(p, component)


def comparative_gain(p: Pmv, q: Pmv, outcome: int, component: Component = "total") -> float:
    """CG(x, p, q) = S(x, p) - S(x, q); antisymmetric in p and q."""
    same_realm(p, q)
    return (
        total_log_score(p, outcome).component(component)
        - total_log_score(q, outcome).component(component)
    )


def expected_net_gain_cross(assessor: Pmv, owner: Pmv, component: Component = "total") -> float:
    """The assessor's prevision for the owner's net gain.

    For the total score this is ``sum (a - w) log(w / (1 - w))``; it can take
    either sign.
    """
    same_realm(assessor, owner)
    diff = assessor.weights - owner.weights
    return float(np.sum(diff * outcome_term(owner, component)))


def expected_comparative_gain(assessor_own: Pmv, other: Pmv, component: Component = "total") -> float:
    """The assessor's prevision for their own comparative gain over ``other``.

    Equals D(a||other) + Dc(a||other) for the total score, so it is positive
    whenever the two pmvs differ.
    """
    fp = four_fundamental_previsions(assessor_own, other, component)
    return fp.p_own - fp.p_other


@dataclass(frozen=True)
class GainSummary:
    ng_p: float
    ng_q: float
    cg_pq: float
    exp_ng_p_by_q: float
    exp_ng_q_by_p: float
    exp_cg_p: float
    exp_cg_q: float


def _tol(*values: float) -> float:
    return 1e-12 * max(1.0, *(abs(v) for v in values))


def gain_summary(p: Pmv, q: Pmv, outcome: int, component: Component = "total") -> GainSummary:
    """All realized and expected gains for one observation.

    Checks that the expected comparative gains are non-negative and that
    the two pairs of expected gains are opposite numbers, equal to plus and
    minus the total symmetric divergence for the total score.
    """
    same_realm(p, q)
    s = GainSummary(
        ng_p=net_gain(p, outcome, component),
        ng_q=net_gain(q, outcome, component),
        cg_pq=comparative_gain(p, q, outcome, component),
        exp_ng_p_by_q=expected_net_gain_cross(q, p, component),
        exp_ng_q_by_p=expected_net_gain_cross(p, q, component),
        exp_cg_p=expected_comparative_gain(p, q, component),
        exp_cg_q=expected_comparative_gain(q, p, component),
    )

    cg_sum = s.exp_cg_p + s.exp_cg_q
    ng_sum = s.exp_ng_p_by_q + s.exp_ng_q_by_p
    if s.exp_cg_p < -_tol(s.exp_cg_p) or s.exp_cg_q < -_tol(s.exp_cg_q):
        raise InvariantViolation(f"negative expected comparative gain: {s}")
    if abs(ng_sum + cg_sum) > _tol(ng_sum, cg_sum):
        raise InvariantViolation(
            f"expected net gains sum to {ng_sum}, comparative gains to {cg_sum}"
        )
    if component == "total":
        d_t = symmetric_divergences(p, q)[2]
        if abs(cg_sum - d_t) > _tol(cg_sum, d_t) or abs(ng_sum + d_t) > _tol(ng_sum, d_t):
            raise InvariantViolation(f"expected gains do not match total divergence {d_t}")
    return s
