"""Command-line front end: ``tel <verb> ...``.

Exit status is 0 when every verdict is definite, 2 when any is Unknown
and 1 on errors.
"""

from __future__ import annotations

import argparse
import json
import os
import sys

from . import rewrite
from .cohort import Positions, ingest_csv, run_query
from .encode import BuchiAutomaton, PCPInstance, encode_acceptance, encode_buchi, encode_runs, pcp_encode, pcp_witness
from .errors import TelError
from .evaluator import EvalConfig, Evaluator
from .syntax import parse_formula, parse_ltl, parse_tcl, print_formula, to_json
from .translate import ltl_to_tel, tcl_to_tel
from .words import LETTERS, PROPS, Alphabet, format_word, parse_word

EXIT_OK, EXIT_ERROR, EXIT_UNKNOWN = 0, 1, 2


def _config(args) -> EvalConfig:
    return EvalConfig(
        quant_bound=args.bound,
        assume_complete=args.assume_complete,
        lasso_exact=not args.literal_bound,
    )


def _emit_formula(phi, as_json: bool):
    if as_json:
        print(json.dumps(to_json(phi)))
    else:
        print(print_formula(phi))


def cmd_check(args) -> int:
    w = parse_word(args.word, mode=args.mode)
    phi = parse_formula(args.formula)
    ev = Evaluator(w, phi, _config(args))
    truth, witness = ev.witness(args.position)
    if args.json:
        out = {"truth": str(truth), "position": args.position}
        if witness is not None:
            out["witness"] = witness
        print(json.dumps(out))
    else:
        print(truth if witness is None else f"{truth} (witness {phi.var}={witness})")
    return EXIT_OK if truth.definite else EXIT_UNKNOWN


def cmd_query(args) -> int:
    phi = parse_formula(args.formula)
    cohort = ingest_csv(args.data, bin=args.bin, origin=args.origin)
    positions = Positions.FIRST_ONLY if args.first_only else Positions.ALL
    report = run_query(phi, cohort, _config(args), positions, workers=args.workers)
    sys.stdout.write(report.dumps(args.format))
    return EXIT_UNKNOWN if report.any_unknown else EXIT_OK


def cmd_translate(args) -> int:
    if args.source == "ltl":
        phi = ltl_to_tel(parse_ltl(args.formula))
    else:
        phi = tcl_to_tel(parse_tcl(args.formula))
    _emit_formula(phi, args.json)
    return EXIT_OK


def cmd_simplify(args) -> int:
    phi = parse_formula(args.formula)
    ops = args.ops.split(",") if args.ops else ["simplify"]
    alphabet = None
    if "negation_free" in ops:
        if not args.alphabet:
            raise TelError("negation_free needs --alphabet")
        symbols = [s.strip() for s in args.alphabet.split(",") if s.strip()]
        alphabet = Alphabet(tuple(symbols), args.mode or LETTERS)
    trace = rewrite.RewriteTrace()
    for name in ops:
        if name not in rewrite.OPERATIONS:
            raise TelError(f"unknown operation {name!r}; choose from {', '.join(rewrite.OPERATIONS)}")
        if name == "negation_free":
            phi = rewrite.negation_free(phi, alphabet, trace)
        else:
            phi = rewrite.OPERATIONS[name](phi, trace=trace)
    _emit_formula(phi, args.json)
    if args.trace:
        print(json.dumps(trace.to_json(), indent=2), file=sys.stderr)
    return EXIT_OK


def cmd_encode_buchi(args) -> int:
    A = BuchiAutomaton.load(args.automaton)
    match args.part:
        case "runs":
            phi = encode_runs(A)
        case "acceptance":
            phi = encode_acceptance(A)
        case _:
            phi = encode_buchi(A)
    _emit_formula(phi, args.json)
    return EXIT_OK


def cmd_encode_pcp(args) -> int:
    inst = PCPInstance.load(args.instance)
    _emit_formula(pcp_encode(inst, budget=args.budget, printed=args.printed), args.json)
    return EXIT_OK


def cmd_pcp_witness(args) -> int:
    inst = PCPInstance.load(args.instance)
    try:
        indices = [int(s) for s in args.indices.split(",") if s.strip()]
    except ValueError:
        raise TelError(f"bad index list {args.indices!r}") from None
    w = pcp_witness(inst, indices)
    print(format_word(w))
    if not inst.solves(indices):
        print("note: the sequence does not solve the instance", file=sys.stderr)
    return EXIT_OK


def _eval_options(p: argparse.ArgumentParser):
    p.add_argument("--bound", type=int, default=None, help="quantifier bound B (default l+2p+8)")
    p.add_argument("--assume-complete", action="store_true", help="treat an exhausted bound as decisive")
    p.add_argument(
        "--literal-bound",
        action="store_true",
        help="do not use lasso periodicity; quantifiers only see k <= B",
    )


class _Parser(argparse.ArgumentParser):
    # usage errors exit 1; status 2 is reserved for Unknown verdicts
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_ERROR, f"{self.prog}: error: {message}\n")


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="tel", description="Temporal ensemble logic toolkit.")
    sub = parser.add_subparsers(dest="verb", required=True)

    p = sub.add_parser("check", help="evaluate a formula on a lasso word")
    p.add_argument("--formula", "-f", required=True)
    p.add_argument("--word", "-w", required=True, help="e.g. 'a;a;b | c' or '{p};{} | {}'")
    p.add_argument("--mode", choices=[LETTERS, PROPS], default=None)
    p.add_argument("--position", type=int, default=1)
    p.add_argument("--json", action="store_true")
    _eval_options(p)
    p.set_defaults(run=cmd_check)

    p = sub.add_parser("query", help="run a cohort query over a CSV of events")
    p.add_argument("--formula", "-f", required=True)
    p.add_argument("--data", "-d", required=True)
    p.add_argument("--bin", choices=["none", "day", "week", "month"], default="none")
    p.add_argument("--origin", default=None, help="ISO date of bin 1 (default: earliest event)")
    p.add_argument("--first-only", action="store_true")
    p.add_argument("--format", choices=["json", "tsv"], default="json")
    p.add_argument("--workers", type=int, default=1)
    _eval_options(p)
    p.set_defaults(run=cmd_query)

    p = sub.add_parser("translate", help="translate LTL or TCL into TEL")
    p.add_argument("--from", dest="source", choices=["ltl", "tcl"], required=True)
    p.add_argument("formula")
    p.add_argument("--json", action="store_true")
    p.set_defaults(run=cmd_translate)

    p = sub.add_parser("simplify", help="apply rewrite operations")
    p.add_argument("formula")
    p.add_argument("--ops", default=None, help=f"comma list from {', '.join(rewrite.OPERATIONS)}")
    p.add_argument("--alphabet", default=None, help="comma list, needed by negation_free")
    p.add_argument("--mode", choices=[LETTERS, PROPS], default=None)
    p.add_argument("--trace", action="store_true", help="print the rewrite trace on stderr")
    p.add_argument("--json", action="store_true")
    p.set_defaults(run=cmd_simplify)

    p = sub.add_parser("encode-buchi", help="formula for the runs of an automaton")
    p.add_argument("automaton")
    p.add_argument("--part", choices=["runs", "acceptance", "both"], default="both")
    p.add_argument("--json", action="store_true")
    p.set_defaults(run=cmd_encode_buchi)

    p = sub.add_parser("encode-pcp", help="formula for a binary PCP instance")
    p.add_argument("instance")
    p.add_argument("--budget", type=int, default=10**6)
    p.add_argument("--printed", action="store_true", help="bare segment recognisers")
    p.add_argument("--json", action="store_true")
    p.set_defaults(run=cmd_encode_pcp)

    p = sub.add_parser("pcp-witness", help="witness word for an index sequence")
    p.add_argument("instance")
    p.add_argument("--indices", required=True, help="1-based, e.g. 1,1")
    p.set_defaults(run=cmd_pcp_witness)
    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.run(args)
    except BrokenPipeError:
        # reader went away (e.g. `| head`); silence the flush at exit
        os.dup2(os.open(os.devnull, os.O_WRONLY), sys.stdout.fileno())
        return EXIT_OK
    except (TelError, OSError) as exc:
        print(f"tel: error: {exc}", file=sys.stderr)
        return EXIT_ERROR


if __name__ == "__main__":
    sys.exit(main())
