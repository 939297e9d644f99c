"""Cohort discovery: which patients had a p followed by a q within three days?

A small event log is synthesised, written as CSV, ingested into daily
bins and queried. The report is the same JSON the ``tel query`` command
prints.
"""

import datetime as dt
import random
import tempfile
from pathlib import Path

from tel import parse_formula
from tel.cohort import Positions, ingest_csv, run_query

rng = random.Random(7)
start = dt.date(2024, 1, 1)
rows, truth = [], {}
for s in range(12):
    sid = f"pt{s:02d}"
    days = sorted(rng.sample(range(40), 6))
    codes = [rng.choice("rst") for _ in days]
    if s % 3 == 0:
        d = rng.randint(0, 30)
        days += [d, d + rng.randint(1, 2)]
        codes += ["p", "q"]
    truth[sid] = s % 3 == 0
    rows += [(sid, (start + dt.timedelta(days=d)).isoformat(), c) for d, c in zip(days, codes)]

path = Path(tempfile.mkdtemp()) / "events.csv"
path.write_text("subject_id,time,code\n" + "".join(f"{a},{b},{c}\n" for a, b, c in rows))

cohort = ingest_csv(path, bin="day")
print(len(cohort), "subjects, longest record", max(len(t.positions) for t in cohort.values()), "days")

# %% the query
phi = parse_formula("<> (p & (<3> q) @ 1)")
report = run_query(phi, cohort, positions=Positions.FIRST_ONLY)
print("matching:", report.matching())
print("expected:", sorted(k for k, v in truth.items() if v))
print(report.dumps("tsv"))

# %% where in the record does the pattern start?
local = parse_formula("p & (<3> q) @ 1")
for result in run_query(local, cohort).subjects:
    if result.positions:
        print(result.id, "pattern starts on day", result.positions)
