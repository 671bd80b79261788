import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from conftest import pmv_pairs
from oracles import brute_score, expect, variance
from scorex.core import Pmv, uniform
from scorex.exchange import (
    exchange_signs,
    pareto_awards,
    score_variance_under,
    variance_table,
)
from scorex.gains import expected_net_gain_cross, net_gain
from scorex.scoring import COMPONENTS, total_log_score

P = Pmv.of([0.8, 0.2])
Q = Pmv.of([0.6, 0.4])


def test_variance_of_uniform_score_is_zero():
    for n in (2, 3, 7):
        assert score_variance_under(P if n == 2 else uniform(n), uniform(n)) == 0.0


def test_variance_values():
    assert score_variance_under(P, P) == pytest.approx(1.2299597156305956, abs=1e-12)
    assert score_variance_under(Q, P) == pytest.approx(1.8449395734458935, abs=1e-12)


@given(pmv_pairs(), st.sampled_from(COMPONENTS))
def test_variance_matches_brute_force(pair, comp):
    a, b = pair
    ref = variance(a, lambda i: total_log_score(b, i).component(comp))
    assert abs(score_variance_under(a, b, comp) - ref) < 1e-12


@given(pmv_pairs())
def test_variance_moment_formula(pair):
    a, b = pair
    logit = np.log(b.weights / (1 - b.weights))
    moment = np.sum(a.weights * logit**2) - np.sum(a.weights * logit) ** 2
    assert score_variance_under(a, b) == pytest.approx(moment, abs=1e-10)


def test_variance_table():
    t = variance_table(P, Q)
    assert t.sd_pp == pytest.approx(1.1090354888959125, abs=1e-12)
    assert t.sd_qp == pytest.approx(1.3582855272165324, abs=1e-12)
    same = variance_table(P, P)
    assert same.v_pp == same.v_pq == same.v_qq == same.v_qp
    flat = variance_table(uniform(3), Pmv.of([0.5, 0.25, 0.25]))
    assert flat.v_pp == 0.0 and flat.v_qp == 0.0


def test_signs():
    assert exchange_signs(P, Q) == (1, -1)
    assert exchange_signs(Q, P) == (-1, 1)
    assert exchange_signs(P, P) == (1, 1)


@given(pmv_pairs())
def test_signs_swap_with_arguments(pair):
    p, q = pair
    sp, sq = exchange_signs(p, q)
    assert exchange_signs(q, p) == (sq, sp)


def test_worked_award():
    a = pareto_awards(P, Q, 1)
    assert a.sign_for_q == -1
    assert a.award_to_q == pytest.approx(-0.90824829046386302, abs=1e-12)
    assert not (a.degenerate_p or a.degenerate_q)


def test_uniform_forecaster_is_degenerate():
    h = Pmv.of([0.5, 0.25, 0.25])
    for o in (1, 2, 3):
        a = pareto_awards(uniform(3), h, o)
        assert a.award_to_q == 0.0
        assert a.degenerate_q and not a.degenerate_p
        b = pareto_awards(h, uniform(3), o)
        assert b.award_to_p == 0.0 and b.degenerate_p
    both = pareto_awards(uniform(4), uniform(4), 2)
    assert both.award_to_p == both.award_to_q == 0.0
    assert both.degenerate_p and both.degenerate_q


def test_award_to_q_has_zero_prevision_under_p():
    assert abs(expect(P, lambda i: pareto_awards(P, Q, i).award_to_q)) < 1e-12


@given(pmv_pairs())
def test_pareto_property(pair):
    p, q = pair
    to_p = expect(p, lambda i: pareto_awards(p, q, i).award_to_p)
    to_q = expect(q, lambda i: pareto_awards(p, q, i).award_to_q)
    assert to_p >= -1e-12 and to_q >= -1e-12
    t = variance_table(p, q)
    if abs(expected_net_gain_cross(p, q)) > 1e-9 and min(t.sd_pq, t.sd_qq) > 1e-6:
        assert to_p > 0


@given(pmv_pairs())
def test_scaled_summand_has_unit_variance(pair):
    p, q = pair
    t = variance_table(p, q)
    sp, sq = exchange_signs(p, q)
    # q's side of p's trade, scaled by p's own SD, and the reverse
    if t.sd_qq > 1e-6:
        assert variance(q, lambda i: sp * net_gain(q, i) / t.sd_qq) == pytest.approx(1.0, abs=1e-9)
    if t.sd_pq > 1e-6:
        assert variance(p, lambda i: sp * net_gain(q, i) / t.sd_pq) == pytest.approx(1.0, abs=1e-9)


@given(pmv_pairs(min_n=3), st.data())
def test_relabeling_invariance(pair, data):
    p, q = pair
    perm = np.array(data.draw(st.permutations(range(p.n))))
    o = data.draw(st.integers(1, p.n))
    a = pareto_awards(p, q, o)
    pp, qq = Pmv.of(p.weights[perm]), Pmv.of(q.weights[perm])
    o2 = int(np.where(perm == o - 1)[0][0]) + 1
    b = pareto_awards(pp, qq, o2)
    assert b.award_to_p == pytest.approx(a.award_to_p, rel=1e-9, abs=1e-12)
    assert b.award_to_q == pytest.approx(a.award_to_q, rel=1e-9, abs=1e-12)


def test_awards_are_not_zero_sum():
    sums = [pareto_awards(P, Q, o).award_to_p + pareto_awards(P, Q, o).award_to_q for o in (1, 2)]
    assert any(abs(s) > 1e-3 for s in sums)


def test_component_awards_available():
    for comp in ("log", "complementary"):
        a = pareto_awards(P, Q, 2, comp)
        assert np.isfinite(a.award_to_p) and np.isfinite(a.award_to_q)
