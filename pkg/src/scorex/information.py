"""Entropy-type measures of two pmvs and the Kullback complex.

The four fundamental previsions are each forecaster's expected total log
score, for their own pmv and for the other's. The Kullback complex is the
4-vector

    [D_T, D(p||q) + Dc(p||q), Delta(p||q) + Deltac(p||q), C_H + C_J]

and it is an invertible integer-linear image of those previsions. Each of the
three directed generators (D, Delta, CH) rebuilds the same symmetric
divergence once self-divergence is subtracted; only D is a Bregman
divergence, which :func:`bregman_limit_gap` exhibits numerically.
"""

from __future__ import annotations

import enum
import math
from dataclasses import astuple, dataclass
from fractions import Fraction
from typing import Sequence

import numpy as np

from .core import Pmv, same_realm
from .errors import DomainViolation
from .scoring import Component


class DivergenceGenerator(enum.Enum):
    KL_D = "KL_D"
    DELTA = "DELTA"
    CROSS_H = "CROSS_H"


class Verdict(enum.Enum):
    BREGMAN_CONSISTENT = "BregmanConsistent"
    CONSTANT_GAP = "ConstantGap"
    DIVERGENT_GAP = "DivergentGap"


# ---------------------------------------------------------------------------
# single- and two-pmv measures


def _xlogy(x: np.ndarray, y: np.ndarray) -> float:
    return float(np.sum(x * np.log(y)))


def entropy(p: Pmv) -> float:
    """H(p) = -sum p log p."""
    return -_xlogy(p.weights, p.weights)


def extropy(p: Pmv) -> float:
    """J(p) = -sum (1-p) log(1-p)."""
    c = 1.0 - p.weights
    return -_xlogy(c, c)


def cross_entropy(p: Pmv, q: Pmv) -> float:
    """CH(p, q) = -sum p log q. Not symmetric in its arguments."""
    same_realm(p, q)
    return -_xlogy(p.weights, q.weights)


def cross_extropy(p: Pmv, q: Pmv) -> float:
    """CJ(p, q) = -sum (1-p) log(1-q)."""
    same_realm(p, q)
    return -_xlogy(1.0 - p.weights, 1.0 - q.weights)


def kl_directed(p: Pmv, q: Pmv) -> float:
    """Relative entropy D(p||q) = sum p log(p/q)."""
    same_realm(p, q)
    return _xlogy(p.weights, p.weights / q.weights)


def kl_directed_complement(p: Pmv, q: Pmv) -> float:
    """Relative extropy Dc(p||q) = sum (1-p) log((1-p)/(1-q))."""
    same_realm(p, q)
    cp, cq = 1.0 - p.weights, 1.0 - q.weights
    return _xlogy(cp, cp / cq)


def delta_directed(p: Pmv, q: Pmv) -> float:
    """Delta(p||q) = sum (p - q) log p, equal to CH(q, p) - H(p)."""
    same_realm(p, q)
    return _xlogy(p.weights - q.weights, p.weights)


def delta_directed_complement(p: Pmv, q: Pmv) -> float:
    """Deltac(p||q) = sum (q - p) log(1 - p)."""
    same_realm(p, q)
    return _xlogy(q.weights - p.weights, 1.0 - p.weights)


def symmetric_divergences(p: Pmv, q: Pmv) -> tuple[float, float, float]:
    """Return ``(D, Dc, D_T)``: Kullback's symmetric divergence, its
    complementary dual, and their sum."""
    d = kl_directed(p, q) + kl_directed(q, p)
    dc = kl_directed_complement(p, q) + kl_directed_complement(q, p)
    return d, dc, d + dc


_GENERATORS = {
    (DivergenceGenerator.KL_D, False): kl_directed,
    (DivergenceGenerator.KL_D, True): kl_directed_complement,
    (DivergenceGenerator.DELTA, False): delta_directed,
    (DivergenceGenerator.DELTA, True): delta_directed_complement,
    (DivergenceGenerator.CROSS_H, False): cross_entropy,
    (DivergenceGenerator.CROSS_H, True): cross_extropy,
}


def generalized_symmetric(
    generator: DivergenceGenerator | str,
    p: Pmv,
    q: Pmv,
    complementary: bool = False,
) -> float:
    """G(p||q) + G(q||p) - G(p||p) - G(q||q) for the chosen generator.

    Every generator gives the symmetric divergence D(p, q) (or Dc(p, q) with
    ``complementary``); the self terms only matter for CROSS_H, where they
    are the entropies (extropies) of p and q.
    """
    g = _GENERATORS[DivergenceGenerator(generator), bool(complementary)]
    same_realm(p, q)
    return g(p, q) + g(q, p) - g(p, p) - g(q, q)


# ---------------------------------------------------------------------------
# previsions and the complex


@dataclass(frozen=True)
class FourPrevisions:
    """Each forecaster's prevision for each forecaster's score.

    ``p_own`` is P_p[S(X,p)], ``p_other`` is P_p[S(X,q)], ``q_own`` is
    P_q[S(X,q)] and ``q_other`` is P_q[S(X,p)].
    """

    p_own: float
    p_other: float
    q_own: float
    q_other: float

    def as_array(self) -> np.ndarray:
        return np.array(astuple(self))


@dataclass(frozen=True)
class KullbackComplex:
    total_symmetric: float
    d_generator: float
    delta_generator: float
    cross_generator: float

    def as_array(self) -> np.ndarray:
        return np.array(astuple(self))

    def __add__(self, other: "KullbackComplex") -> "KullbackComplex":
        return KullbackComplex(*(self.as_array() + other.as_array()))


def _component_terms(p: Pmv, q: Pmv, component: Component):
    """(own(p), cross(p, q)) pair of callables for a score component."""
    if component == "log":
        return entropy, cross_entropy
    if component == "complementary":
        return extropy, cross_extropy
    if component == "total":
        return (
            lambda a: entropy(a) + extropy(a),
            lambda a, b: cross_entropy(a, b) + cross_extropy(a, b),
        )
    raise ValueError(f"unknown score component {component!r}")


def four_fundamental_previsions(p: Pmv, q: Pmv, component: Component = "total") -> FourPrevisions:
    """Previsions of the total (or one component) log score.

    P_p[S(X,p)] = -[H(p) + J(p)] and P_p[S(X,q)] = -[CH(p,q) + CJ(p,q)],
    likewise with p and q exchanged. For ``component="log"`` only the
    entropy terms are kept, for ``"complementary"`` only the extropy terms.
    """
    same_realm(p, q)
    own, cross = _component_terms(p, q, component)
    return FourPrevisions(
        p_own=-own(p),
        p_other=-cross(p, q),
        q_own=-own(q),
        q_other=-cross(q, p),
    )


_F = Fraction
PREVISIONS_TO_COMPLEX = (
    (_F(1), _F(-1), _F(1), _F(-1)),
    (_F(1), _F(-1), _F(0), _F(0)),
    (_F(1), _F(0), _F(0), _F(-1)),
    (_F(0), _F(-1), _F(0), _F(-1)),
)
_H = Fraction(1, 2)
COMPLEX_TO_PREVISIONS = (
    (_F(0), _H, _H, -_H),
    (_F(0), -_H, _H, -_H),
    (_F(1), -_H, -_H, -_H),
    (_F(0), _H, -_H, -_H),
)
_M8 = np.array(PREVISIONS_TO_COMPLEX, dtype=np.float64)
_M9 = np.array(COMPLEX_TO_PREVISIONS, dtype=np.float64)


def complex_from_previsions(fp: FourPrevisions) -> KullbackComplex:
    return KullbackComplex(*(_M8 @ fp.as_array()).tolist())


def previsions_from_complex(kc: KullbackComplex) -> FourPrevisions:
    return FourPrevisions(*(_M9 @ kc.as_array()).tolist())


def kullback_complex(p: Pmv, q: Pmv, per_component: bool = False):
    """Kullback complex of ``(p, q)``.

    With ``per_component`` returns ``(log_part, complementary_part)``, one
    complex per score component; the two add up to the total complex.
    """
    if per_component:
        return (
            complex_from_previsions(four_fundamental_previsions(p, q, "log")),
            complex_from_previsions(four_fundamental_previsions(p, q, "complementary")),
        )
    return complex_from_previsions(four_fundamental_previsions(p, q))


# ---------------------------------------------------------------------------
# Bregman diagnostics


def _phi(t):
    return t * np.log(t)


def _dphi(t):
    return np.log(t) + 1.0


def bregman_residual_kl(p: Pmv, q: Pmv) -> float:
    """Bregman divergence of sum t log t at (p, q), minus D(p||q).

    Zero up to rounding for every valid pair.
    """
    same_realm(p, q)
    a, b = p.weights, q.weights
    bregman = float(np.sum(_phi(a) - _phi(b) - (a - b) * _dphi(b)))
    return bregman - kl_directed(p, q)


@dataclass(frozen=True)
class BregmanDiagnostic:
    candidate: DivergenceGenerator
    q_scalar: float
    deltas: np.ndarray
    gaps: np.ndarray
    verdict: Verdict


def _per_component_generator(candidate: DivergenceGenerator, a, b):
    # one summand of the candidate divergence, with the (a - b) term that
    # vanishes on summation restored for KL so the comparison is per-component
    if candidate is DivergenceGenerator.KL_D:
        return a * np.log(a / b) - (a - b)
    if candidate is DivergenceGenerator.DELTA:
        return (a - b) * np.log(a)
    return -a * np.log(b)


def bregman_limit_gap(
    candidate: DivergenceGenerator | str,
    q_scalar: float,
    deltas: Sequence[float],
) -> BregmanDiagnostic:
    """Residual of the Bregman condition as the two arguments merge.

    For each step ``d`` with ``p = q + d`` computes

        R(d) = phi'(q) - [phi(p) - phi(q)] / d + g(p, q) / d

    where ``phi(t) = t log t`` is the trial Bregman function and ``g`` the
    per-component summand of the candidate. R vanishes identically for KL_D,
    tends to ``log q`` for DELTA and blows up like ``1/d`` for CROSS_H.
    A single trial function cannot prove non-existence; the verdict only
    reports which limiting behaviour the residuals show.
    """
    candidate = DivergenceGenerator(candidate)
    q = float(q_scalar)
    d = np.asarray(deltas, dtype=np.float64)
    if not 0.0 < q < 1.0:
        raise DomainViolation(f"q_scalar must lie in (0, 1), got {q}")
    if d.ndim != 1 or d.size == 0:
        raise DomainViolation("deltas must be a non-empty 1-D sequence")
    if np.any(~np.isfinite(d)) or np.any(d <= 0.0):
        raise DomainViolation("deltas must be positive")
    if np.any(np.diff(d) >= 0.0):
        raise DomainViolation("deltas must be strictly decreasing")
    if q + d[0] >= 1.0:
        raise DomainViolation(f"q_scalar + max(delta) = {q + d[0]} must stay below 1")

    p = q + d
    gaps = _dphi(q) - (_phi(p) - _phi(q)) / d + _per_component_generator(candidate, p, q) / d
    return BregmanDiagnostic(candidate, q, d, gaps, _classify(d, gaps))


_ZERO_GAP = 1e-6
_GROWTH_EXPONENT = 0.5


def _classify(deltas: np.ndarray, gaps: np.ndarray) -> Verdict:
    # rounding noise in the difference quotient also scales like 1/d, so a
    # vanishing gap must be recognised before the growth test
    last = abs(gaps[-1])
    if last < _ZERO_GAP:
        return Verdict.BREGMAN_CONSISTENT
    if deltas.size >= 2 and gaps[-2] != 0.0:
        exponent = math.log(last / abs(gaps[-2])) / math.log(deltas[-2] / deltas[-1])
        if exponent > _GROWTH_EXPONENT:
            return Verdict.DIVERGENT_GAP
    return Verdict.CONSTANT_GAP
