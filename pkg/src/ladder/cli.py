"""Command-line front end.

Exit codes: 0 success, 1 verification failure or non-convergence,
2 usage/validation error, 3 resource limit.  Data goes to stdout (or
``--output``), diagnostics to stderr.
"""

from __future__ import annotations

import argparse
import json
import sys
from fractions import Fraction

from .certify import value_approx
from .core import Params, ParamsError, phi
from .density import (
    OutOfRange,
    Target,
    TargetInF,
    approximate,
    approximate_positive,
    parse_rational,
    trace_to_csv,
    trace_to_json,
)
from .phases import TooShort, extract_sequences, phases_to_csv, segment_phases, sequences_to_csv
from .powers import ResourceLimit
from .records import (
    GapBelow,
    MaxSteps,
    MinPReached,
    equivalence_check,
    generate_pairs,
    pairs_from_json,
    pairs_to_csv,
    pairs_to_json,
    records_to_csv,
    records_to_json,
    scan_records,
    sequence_records,
)
from .verify import SUITES, run_suite

EXIT_OK = 0
EXIT_FAIL = 1
EXIT_USAGE = 2
EXIT_RESOURCE = 3


class UsageError(Exception):
    pass


def _rational(text: str) -> Fraction:
    try:
        return parse_rational(text)
    except ValueError as exc:
        raise argparse.ArgumentTypeError(str(exc)) from None


def _positive_int(text: str) -> int:
    try:
        n = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"not an integer: {text!r}") from None
    if n < 0:
        raise argparse.ArgumentTypeError(f"must be non-negative: {n}")
    return n


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--a", type=int, default=2, help="smaller base (default 2)")
    common.add_argument("--b", type=int, default=3, help="larger base (default 3)")
    common.add_argument("--format", choices=["csv", "json"], default="csv")
    common.add_argument("--output", "-o", help="write data here instead of stdout")
    common.add_argument("--digits", type=int, default=10, help="significant digits for decimals")

    parser = argparse.ArgumentParser(prog="ladder", description="Exact computations on the sets F(a, b).")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("records", parents=[common], help="min/max record holders")
    p.add_argument("--max-p", type=_positive_int, required=True)
    p.add_argument("--method", choices=["scan", "sequence", "both"], default="scan")
    p.add_argument("--parallel", type=_positive_int, default=1, metavar="N")

    p = sub.add_parser("pairs", parents=[common], help="the pair sequence")
    g = p.add_mutually_exclusive_group(required=True)
    g.add_argument("--steps", type=_positive_int)
    g.add_argument("--min-p", type=_positive_int)
    g.add_argument("--gap", type=_rational, metavar="EPS")

    p = sub.add_parser("phases", parents=[common], help="phase table and tail subsequences")
    g = p.add_mutually_exclusive_group(required=True)
    g.add_argument("--steps", type=_positive_int)
    g.add_argument("--from-file", metavar="PAIRS_JSON")

    p = sub.add_parser("approx", parents=[common], help="greedy approximation of a rational")
    p.add_argument("--target", type=_rational, required=True)
    p.add_argument("--eps", type=_rational, required=True)
    p.add_argument("--positive", action="store_true", help="accept any positive target (a^k coset)")
    p.add_argument("--max-steps", type=_positive_int, default=10_000)

    p = sub.add_parser("value", parents=[common], help="phi(p) and its certified decimal")
    p.add_argument("--p", type=_positive_int, required=True)

    p = sub.add_parser("verify", parents=[common], help="run an acceptance suite")
    p.add_argument("--suite", choices=sorted(SUITES), required=True)
    return parser


def _emit(args, text: str) -> None:
    if args.output:
        with open(args.output, "w", encoding="utf-8", newline="") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _cmd_records(args, params: Params) -> int:
    if args.max_p < 1:
        raise UsageError("--max-p must be >= 1")
    status = EXIT_OK
    if args.method == "sequence":
        rows = sequence_records(params, args.max_p)
    else:
        rows = scan_records(params, args.max_p, args.parallel)
        if args.method == "both":
            rep = equivalence_check(params, args.max_p, args.parallel)
            if not rep.matched:
                scan_row, seq_row = rep.first_divergence
                print(f"scan and sequence diverge: scan={scan_row} sequence={seq_row}", file=sys.stderr)
                status = EXIT_FAIL
            else:
                print(f"scan and sequence agree on {rep.scan_rows} rows", file=sys.stderr)
    dump = records_to_json if args.format == "json" else records_to_csv
    _emit(args, dump(rows, params, args.digits))
    return status


def _cmd_pairs(args, params: Params) -> int:
    if args.steps is not None:
        limit = MaxSteps(args.steps)
    elif args.min_p is not None:
        limit = MinPReached(args.min_p)
    else:
        if args.gap <= 0:
            raise UsageError("--gap must be positive")
        limit = GapBelow(args.gap)
    pairs = generate_pairs(params, limit)
    _emit(args, pairs_to_json(pairs, params) if args.format == "json" else pairs_to_csv(pairs))
    return EXIT_OK


def _phase_dicts(phases, pairs):
    return [
        {"eta": ph.eta, "modifies": ph.modifies, "head": ph.head, "tail": ph.tail,
         "lambda": ph.lam, "u_p": pairs[ph.head].u.p, "v_p": pairs[ph.head].v.p}
        for ph in phases
    ]


def _cmd_phases(args, params: Params) -> int:
    if args.from_file:
        with open(args.from_file, encoding="utf-8") as fh:
            file_params, pairs = pairs_from_json(fh.read())
        params = file_params
    else:
        pairs = generate_pairs(params, MaxSteps(args.steps))
    phases = segment_phases(pairs)
    try:
        seqs = extract_sequences(pairs)
    except TooShort:
        seqs = None
    if args.format == "json":
        doc = {"a": params.a, "b": params.b, "phases": _phase_dicts(phases, pairs)}
        if seqs is not None:
            doc["start_case"] = seqs.start_case
            doc["sequences"] = [
                {"i": i, "tu": u.to_json(), "tv": v.to_json(), "tw_value_approx": value_approx(w, args.digits)}
                for i, (u, v, w) in enumerate(zip(seqs.tu, seqs.tv, seqs.tw))
            ]
        text = json.dumps(doc, indent=1) + "\n"
    else:
        text = phases_to_csv(phases, pairs)
        if seqs is not None:
            text += "\n" + sequences_to_csv(seqs, args.digits)
    _emit(args, text)
    return EXIT_OK


def _cmd_approx(args, params: Params) -> int:
    if args.eps <= 0:
        raise UsageError("--eps must be positive")
    if args.target <= 0:
        raise UsageError("--target must be positive")
    target = Target.of(args.target)
    if args.positive:
        res = approximate_positive(params, target, args.eps, args.max_steps)
        trace, k, hit = res.trace, res.k, res.exact_hit
    else:
        k = None
        try:
            trace, hit = approximate(params, target, args.eps, args.max_steps), None
        except TargetInF as exc:
            trace, hit = None, phi(params, exc.p)
    if args.format == "json" or trace is None:
        text = trace_to_json(trace, k, hit, args.digits)
    else:
        text = trace_to_csv(trace, args.digits)
    _emit(args, text)
    if trace is not None and not trace.converged:
        print(f"did not converge: {trace.diagnostics}", file=sys.stderr)
        return EXIT_FAIL
    return EXIT_OK


def _cmd_value(args, params: Params) -> int:
    if args.digits < 1:
        raise UsageError("--digits must be >= 1")
    e = phi(params, args.p)
    approx = value_approx(e, args.digits)
    if args.format == "json":
        doc = {"a": params.a, "b": params.b, "p": e.p, "d": e.d, "q": e.q,
               "label": e.label(), "value_approx": approx}
        text = json.dumps(doc, indent=1) + "\n"
    else:
        text = f"{e.label()} ≈ {approx}\n"
    _emit(args, text)
    return EXIT_OK


def _cmd_verify(args, params: Params) -> int:
    checks = run_suite(args.suite)
    if args.format == "json":
        doc = [{"name": c.name, "ok": c.ok, "detail": c.detail} for c in checks]
        text = json.dumps(doc, indent=1) + "\n"
    else:
        text = "".join(c.line() + "\n" for c in checks)
    _emit(args, text)
    return EXIT_OK if all(c.ok for c in checks) else EXIT_FAIL


COMMANDS = {
    "records": _cmd_records,
    "pairs": _cmd_pairs,
    "phases": _cmd_phases,
    "approx": _cmd_approx,
    "value": _cmd_value,
    "verify": _cmd_verify,
}


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:  # argparse already printed the usage message
        return EXIT_OK if exc.code == 0 else EXIT_USAGE
    try:
        params = Params(args.a, args.b)
        return COMMANDS[args.command](args, params)
    except ParamsError as exc:
        print(f"error: {type(exc).__name__}: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except ResourceLimit as exc:
        print(f"error: resource limit: {exc}", file=sys.stderr)
        return EXIT_RESOURCE
    except (UsageError, OutOfRange, TooShort, ValueError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
