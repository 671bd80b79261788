"""Comparative evaluation of two probability forecasters.

Total log scores, net and comparative gains, the variance-scaled Pareto
exchange of net gains, and the Kullback complex of information measures.
"""

from .core import Pmv, Realm, sample_simplex_uniform, uniform, validate_pmv
from .errors import (
    DomainViolation,
    LengthMismatch,
    NonMonotoneStep,
    NotStrictlyInterior,
    ParseError,
    PmvError,
    RealmMismatch,
    ScorexError,
    SumNotOne,
    ValidationError,
)
from .exchange import ExchangeAward, VarianceTable, pareto_awards, variance_table
from .gains import GainSummary, gain_summary
from .harness import (
    EvaluationTrace,
    ForecastRecord,
    SurveyResult,
    emit_trace_csv,
    load_forecast_series,
    run_sequential_evaluation,
    survey_cross_prevision_exceedance,
)
from .information import (
    FourPrevisions,
    KullbackComplex,
    four_fundamental_previsions,
    kullback_complex,
)
from .scoring import ScoreBreakdown, total_log_score

__version__ = "0.1.0"
