"""Cohort discovery: event timelines in, per-subject matches out.

A subject's record becomes a finite props-mode trace (one position per
time bin, holding the codes seen in that bin) and is embedded as an
omega-word by padding with empty positions: codes are absent after the
record ends.
"""

from __future__ import annotations

import csv
import datetime as dt
import enum
import io
import json
import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from pathlib import Path
from typing import Iterable, Mapping

from . import core
from .core import Formula
from .errors import EmptyFile, MalformedRow, ModeMismatch, NonPositiveTime, OpenFormula, TelError
from .evaluator import EvalConfig, Evaluator, Truth3, _analysis
from .words import PROPS, Alphabet, FiniteTrace, from_finite

HEADER = ("subject_id", "time", "code")
BINS = ("none", "day", "week", "month")


class Positions(enum.Enum):
    ALL = "all"
    FIRST_ONLY = "first-only"


@dataclass(frozen=True)
class EventRecord:
    subject_id: str
    time: int
    code: str


# --------------------------------------------------------------------------
# ingestion
# --------------------------------------------------------------------------


def _parse_when(text: str) -> dt.date | dt.datetime:
    if "T" in text or " " in text.strip():
        return dt.datetime.fromisoformat(text.strip())
    return dt.date.fromisoformat(text.strip())


def _as_datetime(value) -> dt.datetime:
    if isinstance(value, dt.datetime):
        return value
    return dt.datetime(value.year, value.month, value.day)


def bin_index(when: dt.date | dt.datetime, origin: dt.date, unit: str) -> int:
    """1-based bin of ``when``; bins are aligned to ``origin``.

    An instant exactly on a bin boundary (other than the origin) belongs to
    the earlier bin. Plain dates never fall on a boundary instant.
    """
    origin_dt = _as_datetime(origin)
    on_instant = isinstance(when, dt.datetime)
    match unit:
        case "day" | "week":
            length = dt.timedelta(days=1 if unit == "day" else 7)
            units = (_as_datetime(when) - origin_dt) / length
            if units < 0:
                return 0
            if on_instant and units > 0 and units == int(units):
                return int(units)
            return math.floor(units) + 1
        case "month":
            months = (when.year - origin.year) * 12 + when.month - origin.month
            start = _month_start(origin, months)
            if _as_datetime(when) < start:
                months -= 1
                start = _month_start(origin, months)
            if months < 0:
                return 0
            if on_instant and months > 0 and _as_datetime(when) == start:
                return months
            return months + 1
    raise TelError(f"unknown bin unit {unit!r}")


def _month_start(origin: dt.date, months: int) -> dt.datetime:
    """Origin moved ``months`` calendar months, clamping the day of month."""
    total = origin.year * 12 + origin.month - 1 + months
    year, month = divmod(total, 12)
    month += 1
    day = min(origin.day, _days_in_month(year, month))
    return dt.datetime(year, month, day)


def _days_in_month(year: int, month: int) -> int:
    nxt = dt.date(year + month // 12, month % 12 + 1, 1)
    return (nxt - dt.timedelta(days=1)).day


def read_events(
    source: str | Path | io.TextIOBase,
    bin: str = "none",
    origin: dt.date | str | int | None = None,
) -> list[EventRecord]:
    """Parse ``subject_id,time,code`` rows, binning dates when asked."""
    if bin not in BINS:
        raise TelError(f"bin must be one of {', '.join(BINS)}")
    if isinstance(source, (str, Path)):
        with open(source, encoding="utf-8", newline="") as fh:
            rows = list(csv.reader(fh))
    else:
        rows = list(csv.reader(source))
    if not rows or all(not r for r in rows):
        raise EmptyFile("no rows in input")
    header = tuple(c.strip() for c in rows[0])
    if header != HEADER:
        raise MalformedRow(1, f"expected header {','.join(HEADER)}")
    raw = []
    for n, row in enumerate(rows[1:], start=2):
        if not row:
            continue
        if len(row) != 3:
            raise MalformedRow(n, f"expected 3 fields, got {len(row)}")
        subject, when, code = (c.strip() for c in row)
        if not subject or not code:
            raise MalformedRow(n, "empty subject or code")
        raw.append((n, subject, when, code))
    if not raw:
        raise EmptyFile("header but no events")

    if bin == "none":
        out = []
        for n, subject, when, code in raw:
            try:
                t = int(when)
            except ValueError:
                raise MalformedRow(n, f"time {when!r} is not an integer") from None
            if t < 1:
                raise NonPositiveTime(n)
            out.append(EventRecord(subject, t, code))
        return out

    parsed = []
    for n, subject, when, code in raw:
        try:
            parsed.append((n, subject, _parse_when(when), code))
        except ValueError:
            raise MalformedRow(n, f"time {when!r} is not an ISO date") from None
    if origin is None or origin == 1:
        start = min(_as_datetime(p[2]) for p in parsed).date()
    elif isinstance(origin, str):
        start = dt.date.fromisoformat(origin)
    elif isinstance(origin, dt.datetime):
        start = origin.date()
    else:
        start = origin
    out = []
    for n, subject, when, code in parsed:
        t = bin_index(when, start, bin)
        if t < 1:
            raise NonPositiveTime(n)
        out.append(EventRecord(subject, t, code))
    return out


def build_traces(events: Iterable[EventRecord]) -> dict[str, FiniteTrace]:
    """Group events per subject; every trace shares the file's code alphabet."""
    events = list(events)
    if not events:
        raise EmptyFile("no events")
    try:
        alphabet = Alphabet.props(sorted({e.code for e in events}))
    except TelError as exc:
        raise MalformedRow(0, str(exc)) from exc
    grouped: dict[str, dict[int, set]] = {}
    for e in events:
        grouped.setdefault(e.subject_id, {}).setdefault(e.time, set()).add(e.code)
    traces = {}
    for subject, by_time in grouped.items():
        n = max(by_time)
        traces[subject] = FiniteTrace(tuple(frozenset(by_time.get(i, ())) for i in range(1, n + 1)), alphabet)
    return dict(sorted(traces.items()))


def ingest_csv(path: str | Path, bin: str = "none", origin=None) -> dict[str, FiniteTrace]:
    """Map each subject to its trace (positions 1..last bin, gaps empty)."""
    return build_traces(read_events(path, bin, origin))


def trace_rows(traces: Mapping[str, FiniteTrace]) -> list[tuple[str, int, str]]:
    """Inverse of ingestion with ``bin='none'`` (empty positions emit nothing).

    A subject whose trace ends in empty positions cannot be recovered
    exactly, since the record length is taken from its last event.
    """
    return [
        (subject, i, code)
        for subject in sorted(traces)
        for i, pos in enumerate(traces[subject].positions, start=1)
        for code in sorted(pos)
    ]


def write_csv(rows: Iterable[tuple[str, int, str]], path: str | Path | None = None) -> str:
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(HEADER)
    writer.writerows(rows)
    text = buf.getvalue()
    if path is not None:
        Path(path).write_text(text, encoding="utf-8")
    return text


# --------------------------------------------------------------------------
# queries
# --------------------------------------------------------------------------


@dataclass(frozen=True)
class SubjectResult:
    id: str
    truth: Truth3
    positions: tuple[int, ...]
    first: int | None
    witness: int | None = None

    def to_json(self) -> dict:
        out = {
            "id": self.id,
            "truth": str(self.truth),
            "positions": list(self.positions),
            "first": self.first,
        }
        if self.witness is not None:
            out["witness"] = self.witness
        return out


@dataclass(frozen=True)
class QueryReport:
    subjects: tuple[SubjectResult, ...]
    bound: int | None
    assume_complete: bool
    summary: dict = field(init=False)

    def __post_init__(self):
        counts = {t: 0 for t in Truth3}
        for s in self.subjects:
            counts[s.truth] += 1
        object.__setattr__(self, "summary", {str(t): n for t, n in counts.items()})

    @property
    def any_unknown(self) -> bool:
        return self.summary["unknown"] > 0

    def matching(self) -> list[str]:
        return [s.id for s in self.subjects if s.truth is Truth3.TRUE]

    def to_json(self) -> dict:
        return {
            "subjects": [s.to_json() for s in self.subjects],
            "summary": dict(self.summary),
            "config": {"bound": self.bound, "assume_complete": self.assume_complete},
        }

    def dumps(self, fmt: str = "json") -> str:
        if fmt == "json":
            return json.dumps(self.to_json(), indent=2, sort_keys=False) + "\n"
        if fmt == "tsv":
            lines = ["id\ttruth\tfirst\twitness\tpositions"]
            for s in self.subjects:
                first = "" if s.first is None else str(s.first)
                witness = "" if s.witness is None else str(s.witness)
                lines.append(f"{s.id}\t{s.truth}\t{first}\t{witness}\t{','.join(map(str, s.positions))}")
            return "\n".join(lines) + "\n"
        raise TelError(f"unknown report format {fmt!r}")


def _evaluate_subject(subject, trace, phi, cfg, positions) -> SubjectResult:
    if trace.alphabet.mode != PROPS:
        raise ModeMismatch("cohort traces must be props-mode")
    ev = Evaluator(from_finite(trace), phi, cfg)
    truth, witness = ev.witness(1)
    hits = []
    for i in range(1, len(trace) + 1):
        r = truth if i == 1 else ev.at(i)
        if r is Truth3.TRUE:
            hits.append(i)
            if positions is Positions.FIRST_ONLY:
                break
    return SubjectResult(subject, truth, tuple(hits), hits[0] if hits else None, witness)


def run_query(
    phi: Formula,
    cohort: Mapping[str, FiniteTrace],
    cfg: EvalConfig | None = None,
    positions: Positions | str = Positions.ALL,
    workers: int = 1,
) -> QueryReport:
    """Evaluate a closed formula on every subject at positions 1..len(record)."""
    cfg = cfg or EvalConfig()
    positions = Positions(positions)
    fv = core.free_vars(phi)
    if fv:
        raise OpenFormula(fv)
    _analysis(phi)  # build the shared node table before any worker starts
    subjects = sorted(cohort)

    def job(subject):
        return _evaluate_subject(subject, cohort[subject], phi, cfg, positions)

    if workers > 1:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            results = list(pool.map(job, subjects))
    else:
        results = [job(s) for s in subjects]
    return QueryReport(tuple(results), cfg.quant_bound, cfg.assume_complete)
