import datetime as dt
import io

import pytest
from hypothesis import given, settings, strategies as st

from tel.cohort import Positions, bin_index, build_traces, ingest_csv, read_events, run_query, trace_rows, write_csv
from tel.errors import EmptyFile, MalformedRow, ModeMismatch, NonPositiveTime, OpenFormula
from tel.evaluator import EvalConfig, Truth3
from tel.syntax import parse_formula, parse_tcl
from tel.translate import tcl_eval, tcl_to_tel
from tel.words import Alphabet, FiniteTrace, from_finite


def _csv(text):
    return io.StringIO("subject_id,time,code\n" + text)


def _traces(text, **kw):
    return build_traces(read_events(_csv(text), **kw))


def test_rows_to_traces():
    t = _traces("s1,1,p\ns1,2,q\n")
    assert t["s1"].positions == (frozenset("p"), frozenset("q"))
    t = _traces("s1,1,p\ns1,3,q\n")
    assert t["s1"].positions == (frozenset("p"), frozenset(), frozenset("q"))


@pytest.mark.parametrize(
    "text, err",
    [
        ("s1,0,p\n", NonPositiveTime),
        ("s1,-2,p\n", NonPositiveTime),
        ("s1,x,p\n", MalformedRow),
        ("s1,1\n", MalformedRow),
        ("s1,1,\n", MalformedRow),
        ("", EmptyFile),
    ],
)
def test_ingest_errors(text, err):
    with pytest.raises(err):
        _traces(text)


def test_bad_header_and_empty_file(tmp_path):
    path = tmp_path / "e.csv"
    path.write_text("")
    with pytest.raises(EmptyFile):
        ingest_csv(path)
    path.write_text("who,when,what\ns1,1,p\n")
    with pytest.raises(MalformedRow):
        ingest_csv(path)


def test_date_binning():
    origin = dt.date(2024, 1, 1)
    assert bin_index(dt.date(2024, 1, 1), origin, "day") == 1
    assert bin_index(dt.date(2024, 1, 8), origin, "week") == 2
    assert bin_index(dt.date(2024, 1, 7), origin, "week") == 1
    assert bin_index(dt.date(2024, 2, 1), origin, "month") == 2
    # an instant exactly on a boundary belongs to the earlier bin
    assert bin_index(dt.datetime(2024, 1, 2, 0, 0), origin, "day") == 1
    assert bin_index(dt.datetime(2024, 1, 2, 0, 1), origin, "day") == 2
    t = _traces("s1,2024-01-01,p\ns1,2024-01-15,q\n", bin="week")
    assert t["s1"].positions == (frozenset("p"), frozenset(), frozenset("q"))
    with pytest.raises(NonPositiveTime):
        _traces("s1,2023-12-01,p\n", bin="day", origin="2024-01-01")


def test_meets_query_matches_tcl():
    cohort = _traces("s1,1,p\ns1,2,q\n")
    phi = parse_tcl("p A q")
    report = run_query(tcl_to_tel(phi), cohort)
    res = report.subjects[0]
    assert res.truth is Truth3.TRUE and 1 in res.positions
    assert tcl_eval(from_finite(cohort["s1"]), 1, phi)


def test_exists_witness():
    props = Alphabet.props("pq")
    cohort = {"s1": FiniteTrace((frozenset(), frozenset("p")), props)}
    report = run_query(parse_formula("exists x . p @ x"), cohort, EvalConfig(quant_bound=2))
    assert report.subjects[0].truth is Truth3.TRUE and report.subjects[0].witness == 1


def test_forall_over_padding():
    props = Alphabet.props("p")
    cohort = {"s1": FiniteTrace((frozenset("p"),) * 3, props)}
    phi = parse_formula("forall x . p @ x")
    for bound in (4, 6):
        cfg = EvalConfig(quant_bound=bound, lasso_exact=False)
        assert run_query(phi, cohort, cfg).subjects[0].truth is Truth3.FALSE
    # brute force: the padding refutes p from position 4 on
    assert all(not from_finite(cohort["s1"]).holds("p", 1 + k) for k in range(3, 10))
    short = run_query(phi, cohort, EvalConfig(quant_bound=2, lasso_exact=False))
    assert short.subjects[0].truth is Truth3.UNKNOWN and short.any_unknown


def test_query_errors_and_positions():
    cohort = _traces("s1,1,p\ns1,3,p\ns2,2,q\n")
    with pytest.raises(OpenFormula):
        run_query(parse_formula("p @ x", free_vars=["x"]), cohort)
    with pytest.raises(ModeMismatch):
        run_query(parse_formula("a"), {"s": FiniteTrace(("a",), Alphabet.letters("a"))})
    full = run_query(parse_formula("p"), cohort)
    assert full.subjects[0].positions == (1, 3)
    first = run_query(parse_formula("p"), cohort, positions=Positions.FIRST_ONLY)
    assert first.subjects[0].positions == (1,) and first.subjects[0].first == 1
    assert full.summary == {"true": 1, "false": 1, "unknown": 0}
    assert full.matching() == ["s1"]
    assert full.to_json()["config"] == {"bound": None, "assume_complete": False}
    assert full.dumps("tsv").splitlines()[1].startswith("s1\ttrue\t1")


_subjects = st.dictionaries(
    st.sampled_from(["s1", "s2", "s3", "s10"]),
    st.lists(st.frozensets(st.sampled_from("pqr")), min_size=1, max_size=6).filter(lambda ps: bool(ps[-1])),
    min_size=1,
)


@settings(max_examples=80, deadline=None)
@given(_subjects)
def test_export_round_trip(data):
    alphabet = Alphabet.props(sorted({c for ps in data.values() for pos in ps for c in pos}))
    traces = {k: FiniteTrace(tuple(v), alphabet) for k, v in data.items()}
    text = write_csv(trace_rows(traces))
    assert build_traces(read_events(io.StringIO(text))) == dict(sorted(traces.items()))


@settings(max_examples=30, deadline=None)
@given(_subjects)
def test_parallel_and_deterministic(data):
    alphabet = Alphabet.props("pqr")
    traces = {k: FiniteTrace(tuple(v), alphabet) for k, v in data.items()}
    phi = parse_formula("<> (p & (<3> q) @ 1)", alphabet)
    one = run_query(phi, traces).dumps()
    assert run_query(phi, traces).dumps() == one
    assert run_query(phi, traces, workers=4).dumps() == one
