"""``arithcf`` command line.

Exit codes: 0 success, 1 a check failed (congruence violation, unverified
witness, periodic scan of a function residue sequence), 2 usage error,
3 domain error, 4 resource budget, 5 precision ceiling, 6 witness search
budget exhausted, 7 too few quotients for the requested digits.
"""

from __future__ import annotations

import argparse
import csv
import json
import logging
import sys

from . import __version__, config
from .arith import evaluate, parse_fn, sieve_range
from .cf import ThetaEnclosure, abd_quotients, alpha_decimals
from .errors import ArithCFError, UsageError
from .period import scan_period, witness_violation
from .qseries import verify_tau_congruences
from .streams import DigitStream, parse_stream, residue_sequence

SCHEMA = "arithcf/1"
log = logging.getLogger("arithcf")


def _record(command, parameters, result):
    return {
        "schema": SCHEMA,
        "command": command,
        "parameters": parameters,
        "result": result,
        "version": __version__,
        "seed": "none (every computation is deterministic)",
    }


def dump_json(obj) -> str:
    return json.dumps(obj, sort_keys=True, indent=2, ensure_ascii=False)


def _emit(args, record, text_lines):
    if args.json:
        print(dump_json(record))
    else:
        for line in text_lines:
            print(line)


# ---------------------------------------------------------------- fn

def cmd_fn(args):
    name, k = parse_fn(args.f, args.k)
    if args.n is not None:
        lo = hi = args.n
    else:
        lo, hi = args.range
    if args.m is not None:
        if args.m < 2:
            raise UsageError("--m must be >= 2")
        values = sieve_range(args.f, lo, hi, args.m, args.k)
    elif lo == hi:
        values = [evaluate(args.f, lo, args.k)]
    else:
        values = sieve_range(args.f, lo, hi, None, args.k)
    rows = list(zip(range(lo, hi + 1), values))
    params = {"f": name, "order": k, "lo": lo, "hi": hi, "m": args.m}
    if args.csv:
        writer = csv.writer(sys.stdout, lineterminator="\n")
        writer.writerow(["n", "value"])
        writer.writerows(rows)
        return 0
    width = max(len(str(n)) for n, _ in rows)
    lines = [f"{n:>{width}}  {v}" for n, v in rows]
    _emit(args, _record("fn", params, {"values": [[n, v] for n, v in rows]}), lines)
    return 0


# ---------------------------------------------------------------- scan

def _parse_seq(text):
    try:
        return [int(x) for x in text.replace(" ", "").split(",") if x]
    except ValueError:
        raise UsageError(f"--seq must be comma-separated integers, got {text!r}")


def cmd_scan(args):
    sources = [args.stream is not None, args.f is not None, args.seq is not None]
    if sum(sources) != 1:
        raise UsageError("give exactly one of --stream, --f/--m, --seq")
    claimed = True
    if args.seq is not None:
        seq = _parse_seq(args.seq)
        label = "seq"
        claimed = False
        length = len(seq)
    elif args.stream is not None:
        spec = parse_stream(args.stream)
        label = spec.text()
        length = args.len
        seq = DigitStream(spec).prefix(length)
    else:
        if args.m is None:
            raise UsageError("--f needs --m")
        name, k = parse_fn(args.f, args.k)
        label = f"{args.f}%{args.m}"
        length = args.len
        seq = residue_sequence(args.f, args.m, length, args.k)
    n_max = args.nmax if args.nmax is not None else max(1, length // 3)
    l_max = args.lmax if args.lmax is not None else max(1, length // 3)
    log.info("scanning %s: %d terms, N_max=%d, L_max=%d", label, len(seq), n_max, l_max)
    report = scan_period(seq, n_max, l_max)
    params = {"source": label, "len": len(seq), "N_max": n_max, "L_max": l_max}
    _emit(args, _record("scan", params, report.to_dict()), [f"{label}: {report}"])
    return 1 if claimed and report.is_periodic else 0


# ---------------------------------------------------------------- witness

def cmd_witness(args):
    w = witness_violation(
        args.f, args.m, args.L, args.N, args.criterion, order=args.k,
        p_budget=args.p_budget, j_budget=args.j_budget,
    )
    payload = w.to_dict()
    params = {"f": w.f, "m": args.m, "L": args.L, "N": args.N, "criterion": w.criterion}
    lines = [
        f"{w.criterion} witness for {w.f} mod {w.m}, L={w.L}, N={w.N} (K={w.K})",
        f"  p_N = {w.p_N}   j' = {w.j_prime}   q = {w.q} ({w.certification})",
        f"  n1 = {w.n1}  ->  {w.value1} (mod {w.m})",
        f"  n2 = {w.n2}  ->  {w.value2} (mod {w.m})",
        f"  verified: {payload['verified']}",
    ]
    _emit(args, _record("witness", params, payload), lines)
    return 0 if payload["verified"] else 1


# ---------------------------------------------------------------- alpha

def cmd_alpha(args):
    if args.k < 2:
        raise UsageError("--k must be >= 2")
    spec = parse_stream(args.stream)
    enc = ThetaEnclosure(spec, ceiling=args.precision_ceiling)
    log.info("computing %d quotients for %s, k=%d", args.count, spec.text(), args.k)
    cf = abd_quotients(enc, args.k, args.count, step=args.step)
    dec = alpha_decimals(cf, args.digits)
    payload = {
        "stream": spec.text(),
        "k": args.k,
        "count": args.count,
        "p_n": str(dec.p_n),
        "q_n": str(dec.q_n),
        "digits": args.digits,
        "decimal": dec.text,
        "certificate": dec.certificate(),
        "theta_digits_used": enc.D,
        "quotients_head": cf.quotients[:40],
    }
    params = {"stream": spec.text(), "k": args.k, "count": args.count, "digits": args.digits}
    lines = [
        f"alpha[{spec.text()}, k={args.k}] = {dec.text}",
        f"  certified by n={dec.n}: 1/(q_n q_(n+1)) < 10^-{dec.bound_exponent}",
        f"  first quotients: {' '.join(map(str, cf.quotients[:40]))}",
    ]
    _emit(args, _record("alpha", params, payload), lines)
    return 0


# ---------------------------------------------------------------- congruence

def cmd_congruence(args):
    log.info("checking tau congruences up to N=%d", args.N)
    report = verify_tau_congruences(args.N)
    lines = []
    for m in sorted(report.checked):
        last = report.last[m]
        tail = f"  last: n={last[0]} tau={last[1]} rhs={last[2]}" if last else ""
        lines.append(
            f"mod {m:<4} checked={report.checked[m]:<6} violations={len(report.violations[m])}{tail}"
        )
    lines.append("PASS" if report.ok else "FAIL")
    _emit(args, _record("congruence", {"N": args.N}, report.to_dict()), lines)
    return 0 if report.ok else 1


# ---------------------------------------------------------------- parser

def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--json", action="store_true", help="emit the JSON record")
    common.add_argument("-v", "--verbose", action="store_true", help="progress on stderr")

    parser = argparse.ArgumentParser(prog="arithcf", description=__doc__.splitlines()[0])
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("fn", parents=[common], help="evaluate an arithmetic function")
    p.add_argument("--f", required=True, help="function tag, e.g. tau, phi, jordan3, eis4")
    p.add_argument("--k", type=int, help="order for sigma_k/jordan, weight for eis")
    where = p.add_mutually_exclusive_group(required=True)
    where.add_argument("--n", type=int)
    where.add_argument("--range", type=int, nargs=2, metavar=("LO", "HI"))
    p.add_argument("--m", type=int, help="reduce modulo m")
    p.add_argument("--csv", action="store_true", help="CSV table on stdout")
    p.set_defaults(func=cmd_fn)

    p = sub.add_parser("scan", parents=[common], help="search for an eventual period")
    p.add_argument("--stream", help="stream spec, e.g. tau%%5 or half_phi%%7>dec")
    p.add_argument("--f", help="function tag for a raw residue sequence (with --m)")
    p.add_argument("--m", type=int)
    p.add_argument("--k", type=int)
    p.add_argument("--seq", help="literal comma-separated sequence")
    p.add_argument("--len", type=int, default=10_000)
    p.add_argument("--nmax", type=int)
    p.add_argument("--lmax", type=int)
    p.set_defaults(func=cmd_scan)

    p = sub.add_parser("witness", parents=[common], help="refute one (N, L) explicitly")
    p.add_argument("--f", required=True)
    p.add_argument("--m", type=int, required=True)
    p.add_argument("--L", type=int, required=True)
    p.add_argument("--N", type=int, default=1)
    p.add_argument("--k", type=int, help="order for jordan")
    p.add_argument("--criterion", choices=("divisibility", "multiplicative"))
    p.add_argument("--p-budget", type=int, default=config.P_BUDGET)
    p.add_argument("--j-budget", type=int, default=config.J_BUDGET)
    p.set_defaults(func=cmd_witness)

    p = sub.add_parser("alpha", parents=[common], help="certified digits of alpha_{k,m}")
    p.add_argument("--stream", required=True)
    p.add_argument("--k", type=int, required=True)
    p.add_argument("--count", type=int, default=1000)
    p.add_argument("--digits", type=int, default=50)
    p.add_argument("--step", type=int, default=4, help="enclosure refinement step")
    p.add_argument("--precision-ceiling", type=int, default=config.PRECISION_CEILING)
    p.set_defaults(func=cmd_alpha)

    p = sub.add_parser("congruence", parents=[common], help="check the tau congruences")
    p.add_argument("--N", type=int, required=True)
    p.set_defaults(func=cmd_congruence)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    logging.basicConfig(
        level=logging.INFO if args.verbose else logging.WARNING,
        format="%(name)s: %(message)s",
        stream=sys.stderr,
    )
    try:
        return args.func(args)
    except ArithCFError as exc:
        print(f"arithcf {args.command}: {type(exc).__name__}: {exc}", file=sys.stderr)
        return exc.exit_code


if __name__ == "__main__":
    sys.exit(main())
