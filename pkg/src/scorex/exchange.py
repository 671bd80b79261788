"""Pareto-optimal exchange of net gains, scaled by assessed standard deviations.

Each forecaster values their own net gain at zero but the other's net gain
at a non-zero prevision. So each forecaster gives away their own net gain
in return for the other's, taken with whichever sign they expect to profit
from. Both sides of each trade are divided by the standard deviation the
trading party assesses for it. The resulting award is

    award_to_q = NG*(x, p) * (1 / SD_p[NG(X,p)] + 1 / SD_q[NG(X,p)])
    award_to_p = NG*(x, q) * (1 / SD_p[NG(X,q)] + 1 / SD_q[NG(X,q)])

where NG*(x, p) is NG(x, p) signed by q's prevision for it and vice versa.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .core import Pmv, same_realm
from .gains import expected_net_gain_cross, net_gain
from .scoring import Component, outcome_term

SD_FLOOR = 1e-12


@dataclass(frozen=True)
class VarianceTable:
    """``v_ab`` is the variance assessor ``a`` gives to the score of ``b``."""

    v_pp: float
    v_pq: float
    v_qq: float
    v_qp: float

    @property
    def sd_pp(self) -> float:
        return math.sqrt(self.v_pp)

    @property
    def sd_pq(self) -> float:
        return math.sqrt(self.v_pq)

    @property
    def sd_qq(self) -> float:
        return math.sqrt(self.v_qq)

    @property
    def sd_qp(self) -> float:
        return math.sqrt(self.v_qp)

    def as_dict(self) -> dict[str, float]:
        return {
            "v_pp": self.v_pp, "v_pq": self.v_pq, "v_qq": self.v_qq, "v_qp": self.v_qp,
            "sd_pp": self.sd_pp, "sd_pq": self.sd_pq, "sd_qq": self.sd_qq, "sd_qp": self.sd_qp,
        }


@dataclass(frozen=True)
class ExchangeAward:
    award_to_p: float
    award_to_q: float
    sign_for_p: int
    sign_for_q: int
    degenerate_p: bool
    degenerate_q: bool


def score_variance_under(assessor: Pmv, scored: Pmv, component: Component = "total") -> float:
    """V_a[S(X, b)]: assessor's variance for the score of ``scored``.

    Only the outcome-dependent part of the score (the logit, for the total
    score) carries variance. Evaluated in centred form, which equals
    ``sum a f^2 - (sum a f)^2`` but cannot go negative; a constant ``f``
    gives exactly zero.
    """
    same_realm(assessor, scored)
    a = assessor.weights
    f = outcome_term(scored, component)
    if np.all(f == f[0]):
        return 0.0
    mean = float(np.sum(a * f))
    return float(np.sum(a * (f - mean) ** 2))


def variance_table(p: Pmv, q: Pmv, component: Component = "total") -> VarianceTable:
    return VarianceTable(
        v_pp=score_variance_under(p, p, component),
        v_pq=score_variance_under(p, q, component),
        v_qq=score_variance_under(q, q, component),
        v_qp=score_variance_under(q, p, component),
    )


def _sign(prevision: float) -> int:
    return 1 if prevision >= 0.0 else -1


def exchange_signs(p: Pmv, q: Pmv, component: Component = "total") -> tuple[int, int]:
    """``(sign_for_p, sign_for_q)``.

    p takes q's net gain with the sign of P_p[NG(X,q)], q takes p's with the
    sign of P_q[NG(X,p)]. A prevision of exactly zero maps to +1.
    """
    return (
        _sign(expected_net_gain_cross(p, q, component)),
        _sign(expected_net_gain_cross(q, p, component)),
    )


def _precision_sum(*sds: float) -> tuple[float, bool]:
    total, degenerate = 0.0, False
    for sd in sds:
        if sd < SD_FLOOR:
            degenerate = True
        else:
            total += 1.0 / sd
    return total, degenerate


def pareto_awards(
    p: Pmv,
    q: Pmv,
    outcome: int,
    component: Component = "total",
    table: VarianceTable | None = None,
) -> ExchangeAward:
    """Awards to p and q after observing ``outcome``.

    A standard deviation below ``SD_FLOOR`` means the net gain it scales is
    identically zero, so that term contributes 0 and the matching
    ``degenerate_*`` flag is set instead of dividing by zero.
    """
    same_realm(p, q)
    if table is None:
        table = variance_table(p, q, component)
    sign_p, sign_q = exchange_signs(p, q, component)

    scale_q, degen_q = _precision_sum(table.sd_pp, table.sd_qp)
    scale_p, degen_p = _precision_sum(table.sd_pq, table.sd_qq)
    award_q = sign_q * net_gain(p, outcome, component) * scale_q
    award_p = sign_p * net_gain(q, outcome, component) * scale_p
    return ExchangeAward(
        award_to_p=award_p,
        award_to_q=award_q,
        sign_for_p=sign_p,
        sign_for_q=sign_q,
        degenerate_p=degen_p,
        degenerate_q=degen_q,
    )
