"""Forecast-series ingestion, sequential evaluation and the simplex survey.

Input series are JSONL (one ``{"t", "outcome", "p", "q"}`` object per line)
or CSV with header ``t,outcome,p_1..p_N,q_1..q_N``. Outcomes are 1-based.
The evaluation trace is written as CSV with the columns in
:data:`TRACE_COLUMNS`, floats at 17 significant digits so they round-trip.
"""

from __future__ import annotations

import csv
import io
import json
import logging
from concurrent.futures import ProcessPoolExecutor
from dataclasses import asdict, dataclass, field
from itertools import accumulate
from typing import IO, Iterable, Iterator, Literal, Sequence

import numpy as np

from .core import Pmv, Realm, check_outcome, sample_simplex_uniform, validate_pmv
from .errors import (
    NonMonotoneStep,
    OutcomeError,
    ParseError,
    PmvError,
    RealmMismatch,
    SinkError,
    ValidationError,
)
from .exchange import pareto_awards
from .gains import net_gain
from .scoring import ScoreBreakdown, total_log_score

log = logging.getLogger(__name__)

Format = Literal["jsonl", "csv"]

TRACE_COLUMNS = (
    "t", "s_p", "s_q", "ng_p", "ng_q", "award_p", "award_q", "degen_p", "degen_q",
    "cum_s_p", "cum_s_q", "cum_award_p", "cum_award_q",
)


@dataclass(frozen=True)
class ForecastRecord:
    t: int
    p: Pmv
    q: Pmv
    outcome: int


# ---------------------------------------------------------------------------
# ingestion


def _text_lines(source: IO) -> Iterator[str]:
    for raw in source:
        yield raw.decode("utf-8") if isinstance(raw, bytes) else raw


def _as_int(value, what: str, line: int) -> int:
    if isinstance(value, bool) or not isinstance(value, int):
        raise ParseError(line, f"{what} must be an integer, got {value!r}")
    return value


def _build(line: int, t: int, outcome: int, p_raw, q_raw, realm: Realm | None) -> ForecastRecord:
    if realm is None:
        realm = Realm(len(p_raw)) if len(p_raw) >= 2 else None
        if realm is None:
            raise ValidationError(line, f"realm needs at least 2 outcomes, got {len(p_raw)}")
    if len(p_raw) != realm.size or len(q_raw) != realm.size:
        raise RealmMismatch(
            f"line {line}: expected {realm.size} weights for p and q, "
            f"got {len(p_raw)} and {len(q_raw)}",
            line=line,
        )
    checked = []
    for name, raw in (("p", p_raw), ("q", q_raw)):
        try:
            checked.append(validate_pmv(raw, realm))
        except PmvError as exc:
            raise ValidationError(line, f"{name}: {exc}") from exc
    try:
        o = check_outcome(outcome, realm)
    except OutcomeError as exc:
        raise ValidationError(line, str(exc)) from exc
    return ForecastRecord(t, checked[0], checked[1], o)


def _parse_jsonl(source: IO) -> Iterator[tuple[int, int, int, list, list]]:
    for line_no, text in enumerate(_text_lines(source), start=1):
        if not text.strip():
            continue
        try:
            obj = json.loads(text)
        except json.JSONDecodeError as exc:
            raise ParseError(line_no, f"invalid JSON: {exc.msg}") from exc
        if not isinstance(obj, dict):
            raise ParseError(line_no, "expected a JSON object")
        missing = [k for k in ("t", "outcome", "p", "q") if k not in obj]
        if missing:
            raise ParseError(line_no, f"missing field(s) {', '.join(missing)}")
        p_raw, q_raw = obj["p"], obj["q"]
        for name, arr in (("p", p_raw), ("q", q_raw)):
            if not isinstance(arr, list) or not all(
                isinstance(x, (int, float)) and not isinstance(x, bool) for x in arr
            ):
                raise ParseError(line_no, f"{name} must be an array of numbers")
        yield (
            line_no,
            _as_int(obj["t"], "t", line_no),
            _as_int(obj["outcome"], "outcome", line_no),
            p_raw,
            q_raw,
        )


def _parse_csv(source: IO) -> Iterator[tuple[int, int, int, list, list]]:
    reader = csv.reader(_text_lines(source))
    header = next(reader, None)
    if header is None:
        return
    header = [h.strip() for h in header]
    n, rem = divmod(len(header) - 2, 2)
    expected = ["t", "outcome"] + [f"p_{i}" for i in range(1, n + 1)] + [f"q_{i}" for i in range(1, n + 1)]
    if rem or n < 2 or header != expected:
        raise ParseError(1, "header must be t,outcome,p_1..p_N,q_1..q_N with N >= 2")
    for row in reader:
        line_no = reader.line_num
        if not row or all(not c.strip() for c in row):
            continue
        if len(row) != len(header):
            raise RealmMismatch(
                f"line {line_no}: expected {len(header)} fields, got {len(row)}", line=line_no
            )
        try:
            t = int(row[0])
            outcome = int(row[1])
            values = [float(c) for c in row[2:]]
        except ValueError as exc:
            raise ParseError(line_no, str(exc)) from exc
        yield line_no, t, outcome, values[:n], values[n:]


def load_forecast_series(source: IO, format: Format = "jsonl") -> list[ForecastRecord]:
    """Read and validate a forecast series from a text or byte stream.

    The realm is taken from the first record and enforced on the rest, and
    ``t`` must strictly increase. Empty input gives an empty list.
    """
    if format == "jsonl":
        rows = _parse_jsonl(source)
    elif format == "csv":
        rows = _parse_csv(source)
    else:
        raise ValueError(f"unknown format {format!r}")

    records: list[ForecastRecord] = []
    realm: Realm | None = None
    for line_no, t, outcome, p_raw, q_raw in rows:
        rec = _build(line_no, t, outcome, p_raw, q_raw, realm)
        realm = rec.p.realm
        if records and rec.t <= records[-1].t:
            raise NonMonotoneStep(line_no, f"t={rec.t} does not follow t={records[-1].t}")
        records.append(rec)
    return records


# ---------------------------------------------------------------------------
# sequential evaluation


@dataclass(frozen=True)
class TraceStep:
    t: int
    score_p: ScoreBreakdown
    score_q: ScoreBreakdown
    ng_p: float
    ng_q: float
    award_p: float
    award_q: float
    degen_p: bool
    degen_q: bool


@dataclass
class EvaluationTrace:
    """Per-step scores, net gains and awards, with running totals.

    Cumulative columns are plain left-to-right prefix sums of the per-step
    totals, so they can be recomputed exactly from the CSV output.
    """

    steps: list[TraceStep] = field(default_factory=list)

    def __len__(self) -> int:
        return len(self.steps)

    def column(self, name: str) -> list:
        if name in ("s_p", "s_q"):
            attr = "score_p" if name == "s_p" else "score_q"
            return [getattr(s, attr).total for s in self.steps]
        if name.startswith("cum_"):
            return list(accumulate(self.column(name[4:])))
        return [getattr(s, name) for s in self.steps]

    @property
    def cum_s_p(self) -> list[float]:
        return self.column("cum_s_p")

    @property
    def cum_s_q(self) -> list[float]:
        return self.column("cum_s_q")

    @property
    def cum_award_p(self) -> list[float]:
        return self.column("cum_award_p")

    @property
    def cum_award_q(self) -> list[float]:
        return self.column("cum_award_q")

    def rows(self) -> Iterator[tuple]:
        cols = [self.column(name) for name in TRACE_COLUMNS]
        return zip(*cols)


def evaluate_step(rec: ForecastRecord) -> TraceStep:
    award = pareto_awards(rec.p, rec.q, rec.outcome)
    return TraceStep(
        t=rec.t,
        score_p=total_log_score(rec.p, rec.outcome),
        score_q=total_log_score(rec.q, rec.outcome),
        ng_p=net_gain(rec.p, rec.outcome),
        ng_q=net_gain(rec.q, rec.outcome),
        award_p=award.award_to_p,
        award_q=award.award_to_q,
        degen_p=award.degenerate_p,
        degen_q=award.degenerate_q,
    )


def run_sequential_evaluation(records: Iterable[ForecastRecord]) -> EvaluationTrace:
    """Score every step and accumulate direct scores and exchange awards.

    Signs and variances come from each step's own ``(p_t, q_t)``, since the
    forecasts may change from step to step.
    """
    return EvaluationTrace([evaluate_step(rec) for rec in records])


def _fmt(value) -> str:
    if isinstance(value, (bool, np.bool_)):
        return "1" if value else "0"
    if isinstance(value, (int, np.integer)):
        return str(int(value))
    return f"{float(value):.17g}"


def emit_trace_csv(trace: EvaluationTrace, destination: IO) -> None:
    """Write the trace as CSV (header plus one row per step)."""
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(TRACE_COLUMNS)
    for row in trace.rows():
        writer.writerow([_fmt(v) for v in row])
    text = buf.getvalue()
    try:
        if isinstance(destination, io.TextIOBase):
            destination.write(text)
        else:
            destination.write(text.encode("utf-8"))
    except (OSError, ValueError) as exc:
        raise SinkError(f"could not write trace: {exc}") from exc


def read_trace_csv(source: IO) -> dict[str, list]:
    """Parse a trace written by :func:`emit_trace_csv` back into columns."""
    reader = csv.DictReader(_text_lines(source))
    cols: dict[str, list] = {name: [] for name in TRACE_COLUMNS}
    for row in reader:
        for name in TRACE_COLUMNS:
            v = row[name]
            cols[name].append(int(v) if name in ("t", "degen_p", "degen_q") else float(v))
    return cols


# ---------------------------------------------------------------------------
# simplex survey


@dataclass(frozen=True)
class SurveyResult:
    trials: int
    exceed_count: int
    proportion: float
    seed: int
    n_dims: int

    def as_dict(self) -> dict:
        return asdict(self)


def _count_exceedances(n_dims: int, seed: int, start: int, stop: int) -> int:
    realm = Realm(n_dims)
    size = stop - start
    p = np.empty((size, n_dims))
    q = np.empty((size, n_dims))
    for row, k in enumerate(range(start, stop)):
        p[row] = sample_simplex_uniform(realm, seed, 2 * k).weights
        q[row] = sample_simplex_uniform(realm, seed, 2 * k + 1).weights
    # P_p[S(X,q)] and P_q[S(X,q)], each row on its own
    p_for_q = np.sum(p * np.log(q) + (1.0 - p) * np.log1p(-q), axis=1)
    q_for_q = np.sum(q * np.log(q) + (1.0 - q) * np.log1p(-q), axis=1)
    return int(np.count_nonzero(p_for_q > q_for_q))


def survey_cross_prevision_exceedance(
    n_dims: int,
    trials: int,
    seed: int,
    workers: int = 1,
    chunk: int = 10_000,
) -> SurveyResult:
    """How often p's prevision for q's score exceeds q's own prevision.

    Trial ``k`` draws p and q from substreams ``(seed, 2k)`` and
    ``(seed, 2k + 1)``, so the count does not depend on ``workers`` or
    ``chunk``.
    """
    if n_dims < 2:
        raise ValueError(f"n_dims must be at least 2, got {n_dims}")
    if trials < 1:
        raise ValueError(f"trials must be at least 1, got {trials}")
    bounds = [(s, min(s + chunk, trials)) for s in range(0, trials, chunk)]
    if workers > 1 and len(bounds) > 1:
        log.debug("survey: %d chunks on %d workers", len(bounds), workers)
        with ProcessPoolExecutor(max_workers=workers) as pool:
            futures = [pool.submit(_count_exceedances, n_dims, seed, a, b) for a, b in bounds]
            count = sum(f.result() for f in futures)
    else:
        count = sum(_count_exceedances(n_dims, seed, a, b) for a, b in bounds)
    return SurveyResult(trials, count, count / trials, seed, n_dims)


def synthetic_series(
    pmvs: Sequence[tuple[Sequence[float], Sequence[float]]],
    outcomes: Sequence[int],
) -> list[ForecastRecord]:
    """Build validated records from in-memory pairs; ``t`` runs 1, 2, ..."""
    out = []
    for t, ((p_raw, q_raw), o) in enumerate(zip(pmvs, outcomes), start=1):
        out.append(_build(t, t, o, p_raw, q_raw, None))
    return out
