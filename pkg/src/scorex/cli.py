"""Command-line front end.

Exit status is 0 on success, 1 when input fails parsing or validation and 2
on usage errors. Files are written to a temporary sibling and renamed into
place, so a failed command never leaves a partial output file.
"""

from __future__ import annotations

import argparse
import contextlib
import csv
import io
import json
import os
import sys
import tempfile
from dataclasses import asdict
from pathlib import Path
from typing import IO, Iterator, Sequence

from .core import Pmv, Realm, validate_pmv
from .errors import ScorexError
from .exchange import pareto_awards, variance_table
from .gains import gain_summary
from .harness import emit_trace_csv, load_forecast_series, run_sequential_evaluation
from .harness import survey_cross_prevision_exceedance
from .information import (
    DivergenceGenerator,
    bregman_limit_gap,
    complex_from_previsions,
    four_fundamental_previsions,
    kullback_complex,
    previsions_from_complex,
    symmetric_divergences,
)
from .scoring import COMPONENTS, total_log_score

SEED_ENV = "SCOREX_SEED"
DEFAULT_DELTAS = "1e-2,1e-3,1e-4,1e-5,1e-6"


class InputError(ScorexError, ValueError):
    pass


def _vector(text: str, name: str) -> list[float]:
    try:
        return [float(x) for x in text.split(",")]
    except ValueError:
        raise InputError(f"--{name}: expected comma-separated decimals, got {text!r}") from None


def _pmv(text: str, name: str) -> Pmv:
    raw = _vector(text, name)
    if len(raw) < 2:
        raise InputError(f"--{name}: need at least 2 weights")
    try:
        return validate_pmv(raw, Realm(len(raw)))
    except ScorexError as exc:
        raise InputError(f"--{name}: {exc}") from exc


@contextlib.contextmanager
def _reader(path: str) -> Iterator[IO]:
    if path == "-":
        yield sys.stdin.buffer
    else:
        with open(path, "rb") as fh:
            yield fh


@contextlib.contextmanager
def _writer(path: str) -> Iterator[IO[str]]:
    if path == "-":
        yield sys.stdout
        sys.stdout.flush()
        return
    target = Path(path)
    fd, tmp = tempfile.mkstemp(dir=target.parent or ".", prefix=f".{target.name}.", suffix=".tmp")
    try:
        with os.fdopen(fd, "w", encoding="utf-8", newline="") as fh:
            yield fh
        os.replace(tmp, target)
    except BaseException:
        with contextlib.suppress(FileNotFoundError):
            os.unlink(tmp)
        raise


def _write_json(obj, path: str) -> None:
    with _writer(path) as fh:
        fh.write(json.dumps(obj, indent=2) + "\n")


def _format_for(path: str, explicit: str | None) -> str:
    if explicit:
        return explicit
    return "csv" if path.lower().endswith(".csv") else "jsonl"


def _single_record(args):
    """(p, q, outcome) from --input or from --p/--q/--outcome."""
    if args.input is not None:
        with _reader(args.input) as fh:
            records = load_forecast_series(fh, _format_for(args.input, args.format))
        if len(records) != 1:
            raise InputError(f"expected exactly one record in {args.input}, got {len(records)}")
        r = records[0]
        return r.p, r.q, r.outcome
    if args.p is None:
        raise InputError("give --p (and --q) or --input")
    p = _pmv(args.p, "p")
    q = _pmv(args.q, "q") if getattr(args, "q", None) is not None else None
    return p, q, getattr(args, "outcome", None)


def _need(value, flag: str):
    if value is None:
        raise InputError(f"{flag} is required")
    return value


# ---------------------------------------------------------------------------
# commands


def cmd_score(args) -> None:
    p, q, outcome = _single_record(args)
    outcome = _need(outcome, "--outcome")
    out = {"outcome": outcome, "p": asdict(total_log_score(p, outcome))}
    if q is not None:
        out["q"] = asdict(total_log_score(q, outcome))
    _write_json(out, args.output)


def cmd_complex(args) -> None:
    p, q, _ = _single_record(args)
    q = _need(q, "--q")
    fp = four_fundamental_previsions(p, q)
    kc = complex_from_previsions(fp)
    d, dc, d_t = symmetric_divergences(p, q)
    out = {
        "previsions": asdict(fp),
        "complex": asdict(kc),
        "previsions_from_complex": asdict(previsions_from_complex(kc)),
        "symmetric_divergences": {"D": d, "Dc": dc, "D_T": d_t},
    }
    if args.per_component:
        log_part, comp_part = kullback_complex(p, q, per_component=True)
        out["per_component"] = {"log": asdict(log_part), "complementary": asdict(comp_part)}
    _write_json(out, args.output)


def cmd_gains(args) -> None:
    p, q, outcome = _single_record(args)
    q, outcome = _need(q, "--q"), _need(outcome, "--outcome")
    _write_json(asdict(gain_summary(p, q, outcome, args.component)), args.output)


def cmd_exchange(args) -> None:
    p, q, outcome = _single_record(args)
    q, outcome = _need(q, "--q"), _need(outcome, "--outcome")
    table = variance_table(p, q, args.component)
    award = pareto_awards(p, q, outcome, args.component, table=table)
    _write_json({"variances": table.as_dict(), "award": asdict(award)}, args.output)


def cmd_run(args) -> None:
    with _reader(args.input) as fh:
        records = load_forecast_series(fh, _format_for(args.input, args.format))
    trace = run_sequential_evaluation(records)
    buf = io.StringIO()
    emit_trace_csv(trace, buf)
    with _writer(args.output) as fh:
        fh.write(buf.getvalue())


def cmd_survey(args) -> None:
    result = survey_cross_prevision_exceedance(
        args.n_dims, args.trials, args.seed, workers=args.workers
    )
    _write_json(result.as_dict(), args.output)


def cmd_bregman(args) -> None:
    deltas = _vector(args.deltas, "deltas")
    diag = bregman_limit_gap(args.candidate, args.q_scalar, deltas)
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(["candidate", "q", "delta", "gap", "verdict"])
    for d, g in zip(diag.deltas, diag.gaps):
        w.writerow([diag.candidate.value, f"{diag.q_scalar:.17g}", f"{d:.17g}", f"{g:.17g}", diag.verdict.value])
    with _writer(args.output) as fh:
        fh.write(buf.getvalue())


# ---------------------------------------------------------------------------
# parser


def _env_seed() -> int | None:
    raw = os.environ.get(SEED_ENV)
    if raw is None or raw.strip() == "":
        return None
    try:
        return int(raw)
    except ValueError:
        return None


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="scorex",
        description="Compare two probability forecasters with the total log score.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def pair(name: str, help: str, outcome: bool, func, q_required: bool = True):
        sp = sub.add_parser(name, help=help)
        sp.add_argument("--p", help="pmv of forecaster p, e.g. 0.8,0.2")
        sp.add_argument("--q", help="pmv of forecaster q")
        if outcome:
            sp.add_argument("--outcome", type=int, help="observed outcome, 1-based")
        sp.add_argument("--input", help="file (or -) holding one forecast record")
        sp.add_argument("--format", choices=["jsonl", "csv"], help="format of --input")
        sp.add_argument("--output", default="-", help="output path, - for stdout")
        sp.set_defaults(func=func)
        return sp

    pair("score", "total log score breakdowns for one record", True, cmd_score)
    sp = pair("complex", "four previsions and the Kullback complex", False, cmd_complex)
    sp.add_argument("--per-component", action="store_true",
                    help="also report the log and complementary complexes")
    sp = pair("gains", "realized and expected gains", True, cmd_gains)
    sp.add_argument("--component", choices=COMPONENTS, default="total")
    sp = pair("exchange", "variance table and Pareto exchange awards", True, cmd_exchange)
    sp.add_argument("--component", choices=COMPONENTS, default="total")

    sp = sub.add_parser("run", help="evaluate a forecast series, write the trace CSV")
    sp.add_argument("--input", default="-")
    sp.add_argument("--output", default="-")
    sp.add_argument("--format", choices=["jsonl", "csv"])
    sp.set_defaults(func=cmd_run)

    sp = sub.add_parser("survey", help="simplex survey of cross-prevision exceedance")
    sp.add_argument("--n-dims", type=int, default=3)
    sp.add_argument("--trials", type=int, default=100_000)
    sp.add_argument("--seed", type=int, default=None,
                    help=f"required unless {SEED_ENV} is set")
    sp.add_argument("--workers", type=int, default=1)
    sp.add_argument("--output", default="-")
    sp.set_defaults(func=cmd_survey)

    sp = sub.add_parser("bregman-diag", help="limit residuals of the Bregman condition")
    sp.add_argument("--candidate", choices=[g.value for g in DivergenceGenerator], default="DELTA")
    sp.add_argument("--q", dest="q_scalar", type=float, default=0.5)
    sp.add_argument("--deltas", default=DEFAULT_DELTAS)
    sp.add_argument("--output", default="-")
    sp.set_defaults(func=cmd_bregman)
    return parser


def main(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)

    if args.command == "survey":
        if args.seed is None:
            args.seed = _env_seed()
        if args.seed is None:
            parser.print_usage(sys.stderr)
            print(f"scorex survey: error: --seed is required (or set {SEED_ENV})", file=sys.stderr)
            return 2
        if args.n_dims < 2 or args.trials < 1 or args.workers < 1:
            print("scorex survey: error: need --n-dims >= 2, --trials >= 1, --workers >= 1",
                  file=sys.stderr)
            return 2

    try:
        args.func(args)
    except ScorexError as exc:
        print(f"scorex {args.command}: error: {exc}", file=sys.stderr)
        return 1
    except OSError as exc:
        print(f"scorex {args.command}: error: {exc}", file=sys.stderr)
        return 1
    return 0


if __name__ == "__main__":
    sys.exit(main())
