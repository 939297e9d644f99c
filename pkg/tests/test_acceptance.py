"""One test per acceptance criterion; each prints a single PASS/FAIL line."""

import itertools
import random
import time

import numpy as np

import oracle
from gen import BLOCKS, DOUBLING, SQUARES, LETTERS3, PROPS2, gen_formula, gen_lasso, gen_ltl, gen_tcl_operand
from tel import core
from tel.batch import BatchEvaluator
from tel.cohort import ingest_csv, run_query, write_csv
from tel.core import And, Box, Const, Diamond, Exists, Forall, Not, Or, Shift
from tel.encode import BuchiAutomaton, PCPInstance, encode_acceptance, encode_runs, pcp_encode, pcp_witness
from tel.encode.pcp import AGREE, pcp_alphabet
from tel.evaluator import EvalConfig, Evaluator, Truth3, eval, holds_infinitely_often, language_member
from tel.rewrite import (
    expand_constant_modalities,
    negation_free,
    normalize_shifts,
    simplify,
    unfold_exists,
    unfold_forall,
)
from tel.syntax import parse_formula
from tel.translate import ROWS, ltl_eval, ltl_to_tel, tcl_eval, tcl_to_tel
from tel.translate import ast as T
from tel.words import Alphabet, LassoWord

TRUE, FALSE, UNKNOWN = Truth3.TRUE, Truth3.FALSE, Truth3.UNKNOWN


def _word(letters: str, loop: str, alphabet=LETTERS3) -> LassoWord:
    return LassoWord(tuple(letters), tuple(loop), alphabet)


# ---------------------------------------------------------------------------


def test_blocks_language(verdict):
    phi = parse_formula(BLOCKS)
    start = time.perf_counter()
    problems = []
    for n in range(1, 6):
        good = "a" * n + "b" * n + "c" * n + "a" * n
        truth, k = Evaluator(_word(good, "a"), phi).witness(1)
        if (truth, k) != (TRUE, n):
            problems.append(f"n={n}: {truth} witness {k}")
        # first b, first c and last a each replaced by another letter
        for pos, other in ((n, "a"), (2 * n, "b"), (4 * n - 1, "c")):
            bad = good[:pos] + other + good[pos + 1 :]
            w = _word(bad, "a")
            got = language_member(w, phi)
            brute = any(oracle.truth(w, 1, phi.body, {"x": k}) for k in range(1, 4 * n + 4))
            if got is not FALSE or brute:
                problems.append(f"n={n} corrupted {bad}: {got}")
    elapsed = time.perf_counter() - start
    ok = not problems and elapsed < 1.0
    verdict("Blocks language a^n b^n c^n a^n", ok, f"{elapsed:.3f}s" + (f"; {problems}" if problems else ""))


def test_doubling_pattern(verdict):
    phi = parse_formula(DOUBLING)
    ab = Alphabet.letters("ab")
    text = "bbb" + "a" + "b" * 3 + "a" + "b" * 7 + "a" + "b" * 15 + "a" + "b" * 31
    cfg = EvalConfig(quant_bound=64, assume_complete=False)
    literal = EvalConfig(quant_bound=64, assume_complete=False, lasso_exact=False)
    w = _word(text, "b", ab)
    stated = {name: Evaluator(w, phi, c).witness(1) for name, c in (("exact", cfg), ("literal", literal))}
    flipped = text[:7] + "b" + text[8:]
    flip_truth, flip_k = Evaluator(_word(flipped, "b", ab), phi, cfg).witness(1)
    first_ok = all(t is not FALSE for t, _ in stated.values())
    second_ok = flip_truth is FALSE and flip_k is not None
    detail = (
        f"b3ab3ab7ab15ab31|b -> {', '.join(f'{n}: {t} (k={k})' for n, (t, k) in stated.items())}; "
        f"flipped -> {flip_truth} (k={flip_k})"
    )
    verdict("Doubling schedule pattern", first_ok and second_ok, detail)


def test_squares_language(verdict):
    phi = parse_formula(SQUARES)
    problems, checked = [], 0
    others = ["".join(p) for n in (1, 2, 3) for p in itertools.product("ab", repeat=n)]
    for w in ("ab", "ba", "aab"):
        got = language_member(_word(w + w + "c", "c"), phi)
        if got is not TRUE:
            problems.append(f"{w}{w}c: {got}")
        for v in others:
            s = w + v
            if v == w or (len(s) % 2 == 0 and s[: len(s) // 2] == s[len(s) // 2 :]):
                continue
            checked += 1
            got = language_member(_word(s + "c", "c"), phi)
            if got is not FALSE:
                problems.append(f"{s}c: {got}")
    verdict("Squares language ww c", not problems, f"3 squares, {checked} non-squares" + (f"; {problems}" if problems else ""))


# ---------------------------------------------------------------------------

def _quantified(phi, rng, kind):
    if isinstance(phi, kind):
        return phi
    return kind("x", phi)


REWRITES = {
    "negation_free": lambda f, rng: negation_free(f, LETTERS3),
    "normalize_shifts": lambda f, rng: normalize_shifts(f),
    "expand_constant_modalities": lambda f, rng: expand_constant_modalities(f),
    "simplify": lambda f, rng: simplify(f),
    "unfold_exists": lambda f, rng: unfold_exists(_quantified(f, rng, Exists)),
    "unfold_forall": lambda f, rng: unfold_forall(_quantified(f, rng, Forall)),
}


def test_rewrite_soundness(verdict):
    rng = random.Random(20240)
    failures = {}
    for name, op in REWRITES.items():
        bad = 0
        for _ in range(1000):
            phi = gen_formula(rng, rng.randint(1, 5), scope=("x",))
            if name.startswith("unfold"):
                phi = (Exists if name == "unfold_exists" else Forall)("x", phi)
            out = op(phi, rng)
            w = gen_lasso(rng)
            i = rng.randint(1, 8)
            env = {"x": rng.randint(1, 4)} if "x" in core.free_vars(phi) else {}
            for cfg in (EvalConfig(), EvalConfig(quant_bound=rng.randint(2, 10), lasso_exact=False)):
                before, after = eval(w, i, phi, env, cfg), eval(w, i, out, env, cfg)
                flip = before.definite and after.definite and before is not after
                regress = before.definite and not after.definite
                if flip or regress:
                    bad += 1
        if bad:
            failures[name] = bad
    verdict("Rewrite soundness (1000 trials x 6 operations)", not failures, str(failures) if failures else "0 failures")


def test_ltl_differential(verdict):
    rng = random.Random(5151)
    start = time.perf_counter()
    mismatches = checks = 0
    for _ in range(500):
        phi = gen_ltl(rng, 4)
        tel = ltl_to_tel(phi)
        for _ in range(20):
            w = gen_lasso(rng, LETTERS3, 6, 6)
            ev = Evaluator(w, tel, EvalConfig(quant_bound=w.prefix_len + 2 * w.period, assume_complete=True))
            for i in range(1, w.canonical_positions + 1):
                checks += 1
                if ev.at(i).value3 is not ltl_eval(w, i, phi):
                    mismatches += 1
    elapsed = time.perf_counter() - start
    verdict(
        "LTL differential (500 formulas x 20 lassos)",
        mismatches == 0 and elapsed < 30,
        f"{checks} checks, {mismatches} mismatches, {elapsed:.1f}s",
    )


# hand-built Allen patterns: positive word, and one corrupted copy
ALLEN_CASES = {
    "A": ("{p};{p};{q} | {}", "{p};{p};{p,q} | {}"),
    "L": ("{p};{};{};{q};{q} | {}", "{p};{};{};{q};{q} | {q}"),
    "B": ("{p,q};{p,q};{p} | {}", "{p,q};{q};{p} | {}"),
    "E": ("{p};{p,q};{p,q} | {}", "{p};{};{p,q} | {}"),
    "D": ("{p};{p,q};{p};{p} | {}", "{p};{p,q};{q};{p} | {}"),
    "O": ("{p};{p,q};{q};{q} | {}", "{p};{p,q};{q};{p} | {}"),
}


def test_allen_differential(verdict):
    from tel.words import parse_word

    rng = random.Random(606)
    problems = []
    for kind in sorted(ROWS):
        for _ in range(200):
            w = gen_lasso(rng, PROPS2, 5, 5)
            phi = T.Allen(kind, gen_tcl_operand(rng), gen_tcl_operand(rng))
            tel = tcl_to_tel(phi)
            ev = Evaluator(w, tel, EvalConfig(quant_bound=w.prefix_len + 2 * w.period, assume_complete=True))
            for s in range(1, w.canonical_positions + 1):
                if ev.at(s).value3 is not tcl_eval(w, s, phi):
                    problems.append((kind, str(w), s))
        good, bad = ALLEN_CASES[kind]
        phi = T.Allen(kind, T.TAtom("p"), T.TAtom("q"))
        tel = tcl_to_tel(phi)
        for text, want in ((good, True), (bad, False)):
            w = parse_word(text, PROPS2)
            if tcl_eval(w, 1, phi) is not want or eval(w, 1, tel).value3 is not want:
                problems.append((kind, text, "hand-built"))
    verdict("Allen/TCL differential (6 rows x 200 + hand-built)", not problems, f"{len(problems)} mismatches")


def _automata(rng):
    for nq in (1, 2):
        states = tuple(f"q{i}" for i in range(nq))
        triples = [(p, a, q) for p in states for a in "ab" for q in states]
        subsets = list(itertools.product((False, True), repeat=len(triples)))
        if len(subsets) > 50:
            subsets = rng.sample(subsets, 50)
        for mask in subsets:
            delta = tuple(t for t, keep in zip(triples, mask) if keep)
            for acc in itertools.product((False, True), repeat=nq):
                yield BuchiAutomaton(states, ("a", "b"), "q0", delta, tuple(q for q, f in zip(states, acc) if f))


def test_buchi_exhaustive(verdict):
    rng = random.Random(77)
    mismatches = words = automata = 0
    scalar_checked = 0
    for A in _automata(rng):
        automata += 1
        tiles = A.tiles()
        runs, acc = encode_runs(A), encode_acceptance(A)
        for n in range(1, 5):
            codes = oracle.all_codes(len(tiles), n)
            for ell in range(n):
                got_runs = BatchEvaluator.from_codes(codes, tiles, ell, runs).at(1)
                got_acc = BatchEvaluator.from_codes(codes, tiles, ell, acc).at(1)
                for row, r, a in zip(codes, got_runs, got_acc):
                    w = LassoWord(tuple(tiles[c] for c in row[:ell]), tuple(tiles[c] for c in row[ell:]),
                                  A.product_alphabet())
                    words += 1
                    if r != A.is_run(w) or a != holds_infinitely_often(w, A.accepting_tiles()):
                        mismatches += 1
                    if rng.random() < 0.01:
                        scalar_checked += 1
                        cfg = EvalConfig(quant_bound=w.prefix_len + 2 * w.period, assume_complete=True)
                        if language_member(w, runs, cfg).value3 is not bool(r):
                            mismatches += 1
                        if language_member(w, acc, cfg).value3 is not bool(a):
                            mismatches += 1
    verdict(
        "Buchi exhaustivity",
        mismatches == 0,
        f"{automata} automata, {words} words, {scalar_checked} scalar cross-checks, {mismatches} mismatches",
    )


def test_pcp_constructive(verdict):
    start = time.perf_counter()
    one = PCPInstance((("01", "01"),))
    phi = pcp_encode(one)
    witnesses = {tuple(idx): language_member(pcp_witness(one, idx), phi) for idx in ([1], [1, 1])}
    inst = PCPInstance((("0", "1"),))
    phi = pcp_encode(inst)
    phi1 = phi.left.left
    symbols = list(pcp_alphabet().symbols)
    code = {s: n for n, s in enumerate(symbols)}
    domino = [code[c] for c in inst.domino(0)]
    total = satisfied = layout_ok = 0
    for n in range(1, 7):
        for m in range(1, 7):
            zone2 = oracle.all_codes(len(AGREE), m)
            zone2 = np.array([code[a] for a in AGREE], dtype=np.int32)[zone2]
            head = np.array(domino * n + [code["cent"]], dtype=np.int32)
            rows = np.concatenate(
                [np.tile(head, (len(zone2), 1)), zone2, np.full((len(zone2), 2), code["hash"], dtype=np.int32)], axis=1
            )
            ell = rows.shape[1] - 1
            total += len(rows)
            satisfied += int(BatchEvaluator.from_codes(rows, symbols, ell, phi).at(1).sum())
            layout_ok += int(BatchEvaluator.from_codes(rows, symbols, ell, phi1).at(1).sum())
    elapsed = time.perf_counter() - start
    ok = all(t is TRUE for t in witnesses.values()) and satisfied == 0 and layout_ok > 0 and elapsed < 60
    verdict(
        "PCP constructive check",
        ok,
        f"witnesses {[str(t) for t in witnesses.values()]}; {total} candidates for {{(0,1)}} "
        f"({layout_ok} with the layout), {satisfied} satisfy; {elapsed:.1f}s",
    )


def _c(n):
    return Const(n)


def _identities():
    """(name, kind, builder) with kind '=' (equivalence) or '<=' (entailment)."""
    imp = core.implies
    return [
        ("[1]f = f", "=", lambda f, g, s, t: (Box(_c(1), f), f)),
        ("<1>f = f", "=", lambda f, g, s, t: (Diamond(_c(1), f), f)),
        ("<2><3>f = <4>f", "=", lambda f, g, s, t: (Diamond(_c(2), Diamond(_c(3), f)), Diamond(_c(4), f))),
        ("[2][3]f = [4]f", "=", lambda f, g, s, t: (Box(_c(2), Box(_c(3), f)), Box(_c(4), f))),
        ("!<t>f = [t]!f", "=", lambda f, g, s, t: (Not(Diamond(_c(t), f)), Box(_c(t), Not(f)))),
        ("(f@s)@t = f@(s+t)", "=", lambda f, g, s, t: (Shift(Shift(f, _c(s)), _c(t)), Shift(f, _c(s + t)))),
        ("[t]f <= <t>f", "<=", lambda f, g, s, t: (Box(_c(t), f), Diamond(_c(t), f))),
        ("[s+t]f <= [s]f", "<=", lambda f, g, s, t: (Box(_c(s + t), f), Box(_c(s), f))),
        ("<s>f <= <s+t>f", "<=", lambda f, g, s, t: (Diamond(_c(s), f), Diamond(_c(s + t), f))),
        ("<s><t>f = <t><s>f", "=", lambda f, g, s, t: (Diamond(_c(s), Diamond(_c(t), f)), Diamond(_c(t), Diamond(_c(s), f)))),
        ("[s][t]f = [t][s]f", "=", lambda f, g, s, t: (Box(_c(s), Box(_c(t), f)), Box(_c(t), Box(_c(s), f)))),
        ("<s+1><t>f = <s+t>f", "=", lambda f, g, s, t: (Diamond(_c(s + 1), Diamond(_c(t), f)), Diamond(_c(s + t), f))),
        ("[s+1][t]f = [s+t]f", "=", lambda f, g, s, t: (Box(_c(s + 1), Box(_c(t), f)), Box(_c(s + t), f))),
        ("[s](f@t) = ([s]f)@t", "=", lambda f, g, s, t: (Box(_c(s), Shift(f, _c(t))), Shift(Box(_c(s), f), _c(t)))),
        ("[t](f&g) = [t]f & [t]g", "=", lambda f, g, s, t: (Box(_c(t), And(f, g)), And(Box(_c(t), f), Box(_c(t), g)))),
        ("<s>(f@t) = (<s>f)@t", "=", lambda f, g, s, t: (Diamond(_c(s), Shift(f, _c(t))), Shift(Diamond(_c(s), f), _c(t)))),
        ("<t>(f|g) = <t>f | <t>g", "=", lambda f, g, s, t: (Diamond(_c(t), Or(f, g)), Or(Diamond(_c(t), f), Diamond(_c(t), g)))),
        ("[t](f->g) <= [t]f -> [t]g", "<=", lambda f, g, s, t: (Box(_c(t), imp(f, g)), imp(Box(_c(t), f), Box(_c(t), g)))),
        ("<t>(f->g) <= <t>f -> <t>g", "<=", lambda f, g, s, t: (Diamond(_c(t), imp(f, g)), imp(Diamond(_c(t), f), Diamond(_c(t), g)))),
        ("[t](f->f@1) = f -> [t+1]f", "=", lambda f, g, s, t: (Box(_c(t), imp(f, Shift(f, _c(1)))), imp(f, Box(_c(t + 1), f)))),
    ]


def test_modal_identities(verdict):
    rng = random.Random(31)
    failed = {}
    for name, kind, build in _identities():
        for _ in range(100):
            f, g = gen_formula(rng, 3), gen_formula(rng, 3)
            s, t = rng.randint(1, 4), rng.randint(1, 4)
            lhs, rhs = build(f, g, s, t)
            w, i = gen_lasso(rng), rng.randint(1, 8)
            a, b = eval(w, i, lhs), eval(w, i, rhs)
            ok = a is b if kind == "=" else (a is FALSE or b is TRUE)
            if not ok:
                failed[name] = failed.get(name, 0) + 1
    detail = f"{len(_identities())} identities x 100; " + (
        "violations " + ", ".join(f"[{n}] x{c}" for n, c in failed.items()) if failed else "all hold"
    )
    verdict("Modal identity suite", not failed, detail)


def _cohort_csv(path, rng, n_subjects=1000, share=0.1):
    planted = set(rng.sample(range(n_subjects), int(n_subjects * share)))
    rows = []
    for s in range(n_subjects):
        sid = f"s{s:04d}"
        length = rng.randint(10, 120)
        events = {t: set() for t in range(1, length + 1)}
        for t in events:
            for code in "pqr":
                if rng.random() < 0.08:
                    events[t].add(code)
        # clear every q within three steps after a p
        for t in range(1, length + 1):
            if "p" in events[t]:
                for d in (1, 2, 3):
                    events.get(t + d, set()).discard("q")
        if s in planted:
            t = rng.randint(1, length - 3)
            events[t].add("p")
            events[t + rng.randint(1, 3)].add("q")
        events[length].add("r")  # keep the record length fixed
        budget = 200
        for t in sorted(events):
            for code in sorted(events[t]):
                if budget:
                    rows.append((sid, t, code))
                    budget -= 1
    write_csv(rows, path)
    return {f"s{s:04d}" for s in planted}


def test_cohort_pipeline(verdict, tmp_path):
    path = tmp_path / "cohort.csv"
    planted = _cohort_csv(path, random.Random(1000))
    phi = parse_formula("<> (p & (<3> q) @ 1)")
    start = time.perf_counter()
    cohort = ingest_csv(path)
    report = run_query(phi, cohort)
    elapsed = time.perf_counter() - start
    again = run_query(phi, ingest_csv(path)).dumps()
    found = set(report.matching())
    ok = found == planted and report.dumps() == again and elapsed < 10 and not report.any_unknown
    verdict(
        "Cohort pipeline",
        ok,
        f"{len(cohort)} subjects, {len(planted)} planted, {len(found)} found, "
        f"{len(found ^ planted)} differ, {elapsed:.2f}s",
    )
