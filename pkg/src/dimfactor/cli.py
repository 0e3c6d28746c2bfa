"""Command-line front end.

Subcommands: dim, test, bounds, factor, sweep.  Results go to stdout
(plain text or --json), diagnostics to stderr.  Exit codes: 0 for
success or a determinate verdict, 1 for operational failures, 2 for an
exception-case verdict, 64 for usage errors.
"""

from __future__ import annotations

import argparse
import json
import os
import random
import sys
from fractions import Fraction

from .arith import factor_trial
from .bounds import INTERVAL, square_divisor_bounds
from .detectors import EXCEPTION, primality_test, squarefree_test
from .dimensions import DefaultOracle, dim_A, dim_B, dim_delta, dim_G, dim_H
from .errors import DimfactorError, DomainError, FactoringFailureError, InvalidWeightError
from .reductions import factor_squarefull_two_values, full_factor_three_values
from .sweeps import primality_sweep, trichotomy_sweep

EXIT_OK = 0
EXIT_FAILURE = 1
EXIT_EXCEPTION_CASE = 2
EXIT_USAGE = 64

SEED_ENV_VAR = "DIMFACTOR_SEED"


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        print(f"error: {message}", file=sys.stderr)
        raise SystemExit(EXIT_USAGE)


class UsageError(Exception):
    pass


def _fmt_value(x) -> str:
    if isinstance(x, Fraction):
        return str(int(x)) if x.denominator == 1 else str(x)
    return str(x)


def _json_value(x):
    if isinstance(x, Fraction):
        return int(x) if x.denominator == 1 else str(x)
    return x


def _emit(args, text_lines, payload) -> None:
    if args.json:
        print(json.dumps(payload))
    else:
        for line in text_lines:
            print(line)


def _even_weight(s: str) -> int:
    k = int(s)
    if k < 2 or k % 2 != 0:
        raise argparse.ArgumentTypeError(f"weight must be a positive even integer, got {k}")
    return k


def _positive_int(s: str) -> int:
    n = int(s)
    if n < 1:
        raise argparse.ArgumentTypeError(f"expected a positive integer, got {n}")
    return n


def _parse_range(s: str) -> tuple[int, int]:
    lo, sep, hi = s.partition("..")
    if not sep:
        raise argparse.ArgumentTypeError(f"range must look like LO..HI, got {s!r}")
    lo_i, hi_i = int(lo), int(hi)
    if lo_i < 2 or hi_i < lo_i:
        raise argparse.ArgumentTypeError(f"bad range {s!r}")
    return lo_i, hi_i


def _parse_weights(s: str) -> tuple[int, ...]:
    ks = tuple(_even_weight(part) for part in s.split(","))
    if not ks:
        raise argparse.ArgumentTypeError("need at least one weight")
    return ks


def _make_rng(args) -> random.Random:
    seed = args.seed
    if seed is None:
        env = os.environ.get(SEED_ENV_VAR)
        if env is not None:
            try:
                seed = int(env)
            except ValueError:
                raise UsageError(f"{SEED_ENV_VAR} must be an integer, got {env!r}")
    return random.Random(seed)


def _check_k(args, k: int) -> None:
    if k > args.max_k:
        raise UsageError(f"weight {k} exceeds --max-k {args.max_k}")


def build_parser() -> _Parser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--json", action="store_true", help="machine-readable output")
    common.add_argument(
        "--seed", type=int, default=None,
        help=f"RNG seed for probabilistic commands (overrides ${SEED_ENV_VAR})",
    )
    common.add_argument(
        "--max-k", type=_even_weight, default=1 << 20,
        help="largest accepted weight (default 2^20)",
    )
    common.add_argument(
        "--retry-budget", type=_positive_int, default=128,
        help="rounds per probabilistic split (default 128)",
    )

    parser = _Parser(prog="dimfactor", description=__doc__)
    sub = parser.add_subparsers(dest="command", required=True)

    p_dim = sub.add_parser("dim", parents=[common], help="evaluate a dimension quantity")
    p_dim.add_argument("kind", choices=("A", "B", "G", "H", "delta"))
    p_dim.add_argument("k", type=_even_weight)
    p_dim.add_argument("N", type=_positive_int)

    p_test = sub.add_parser("test", parents=[common], help="run an oracle-value test")
    p_test.add_argument("kind", choices=("squarefree", "prime"))
    p_test.add_argument("k", type=_even_weight)
    p_test.add_argument("N", type=_positive_int)
    p_test.add_argument("value", type=int, nargs="?", default=None,
                        help="oracle value; computed by the default oracle when omitted")

    p_bounds = sub.add_parser("bounds", parents=[common],
                              help="square-divisor localization interval")
    p_bounds.add_argument("k", type=_even_weight)
    p_bounds.add_argument("N", type=_positive_int)
    p_bounds.add_argument("value", type=int, nargs="?", default=None)

    p_factor = sub.add_parser("factor", parents=[common],
                              help="factor from oracle values")
    p_factor.add_argument("mode", choices=("squarefull", "full"))
    p_factor.add_argument("N", type=_positive_int)
    p_factor.add_argument("--k1", type=_even_weight, default=2)
    p_factor.add_argument("--k2", type=_even_weight, default=4)
    p_factor.add_argument("--a1", type=int, default=None, help="A(k1, N); fetched when omitted")
    p_factor.add_argument("--a2", type=int, default=None, help="A(k2, N); fetched when omitted")
    p_factor.add_argument("--kb", type=_even_weight, default=2, help="weight for the B value (full mode)")
    p_factor.add_argument("--b", type=int, default=None, help="B(kb, N); fetched when omitted")

    p_sweep = sub.add_parser("sweep", parents=[common], help="range conformance sweep")
    p_sweep.add_argument("range", type=_parse_range, metavar="LO..HI")
    p_sweep.add_argument("--k", type=_parse_weights, default=(2, 4), metavar="K1,K2,...")
    p_sweep.add_argument("--mode", choices=("squarefree", "prime"), default="squarefree")

    return parser


def _cmd_dim(args) -> int:
    _check_k(args, args.k)
    kind, k, n = args.kind, args.k, args.N
    if kind == "G":
        value = dim_G(k, n)
    elif kind == "H":
        value = dim_H(k, n)
    else:
        f = factor_trial(n)
        if kind == "A":
            value = dim_A(k, f)
        elif kind == "B":
            value = dim_B(k, f)
        else:
            if n < 2:
                raise UsageError("delta needs N >= 2")
            value = dim_delta(k, f)
    payload = {"kind": kind, "k": k, "N": n, "value": _json_value(value)}
    _emit(args, [_fmt_value(value)], payload)
    return EXIT_OK


def _cmd_test(args) -> int:
    _check_k(args, args.k)
    k, n = args.k, args.N
    if n < 2:
        raise UsageError("tests need N >= 2")
    oracle = DefaultOracle()
    if args.kind == "squarefree":
        value = args.value if args.value is not None else oracle.query_A(k, n).value
        verdict = squarefree_test(n, k, value, max_k=args.max_k)
        lhs, rhs = dim_G(k, n), value
        compared = ("G", "A")
    else:
        value = args.value if args.value is not None else oracle.query_B(k, n).value
        verdict = primality_test(n, k, value, max_k=args.max_k)
        lhs, rhs = dim_H(k, n), value
        compared = ("H", "B")
    lines = [
        f"{verdict.conclusion} ({verdict.relation}; "
        f"{compared[0]}={_fmt_value(lhs)}, {compared[1]}={rhs})"
    ]
    if verdict.exception_tag:
        lines.append(f"exception: {verdict.exception_tag}")
    if verdict.suspicious:
        print(f"warning: {verdict.suspicious}", file=sys.stderr)
    payload = {
        "test": args.kind, "k": k, "N": n,
        "relation": verdict.relation, "conclusion": verdict.conclusion,
        "exception_tag": verdict.exception_tag, "suspicious": verdict.suspicious,
        compared[0]: _json_value(lhs), compared[1]: rhs,
    }
    _emit(args, lines, payload)
    return EXIT_EXCEPTION_CASE if verdict.conclusion == EXCEPTION else EXIT_OK


def _cmd_bounds(args) -> int:
    _check_k(args, args.k)
    k, n = args.k, args.N
    value = args.value
    if value is None:
        value = DefaultOracle().query_A(k, n).value
    rep = square_divisor_bounds(k, n, value)
    payload = {
        "k": k, "N": n,
        "T0": _json_value(rep.T0), "T": _json_value(rep.T),
        "curly_L": rep.curly_L, "certificate": rep.certificate,
        "theta": rep.theta, "x1": rep.x1, "x0": rep.x0,
    }
    if rep.certificate == INTERVAL:
        lines = [
            f"T0={_fmt_value(rep.T0)} T={_fmt_value(rep.T)} L={rep.curly_L!r} theta={rep.theta!r}",
            f"interval: {rep.x1!r} < d < {rep.x0!r}",
        ]
    else:
        lines = [
            f"T0={_fmt_value(rep.T0)} T={_fmt_value(rep.T)} L={rep.curly_L!r}",
            rep.certificate,
        ]
    _emit(args, lines, payload)
    return EXIT_OK


def _factors_json(factors) -> list[list[int]]:
    return [[p, e] for p, e in factors]


def _cmd_factor(args) -> int:
    _check_k(args, args.k1)
    _check_k(args, args.k2)
    if args.k1 == args.k2:
        raise UsageError("--k1 and --k2 must differ")
    n = args.N
    rng = _make_rng(args)
    oracle = DefaultOracle()
    a1 = args.a1 if args.a1 is not None else oracle.query_A(args.k1, n).value
    a2 = args.a2 if args.a2 is not None else oracle.query_A(args.k2, n).value
    if args.mode == "squarefull":
        split = factor_squarefull_two_values(
            n, args.k1, a1, args.k2, a2, rng, retry_budget=args.retry_budget
        )
        payload = {
            "mode": "squarefull", "N": n, "E": split.E,
            "L": _factors_json(split.L.factors),
        }
        _emit(args, [f"E={split.E} L={split.L}"], payload)
        return EXIT_OK
    _check_k(args, args.kb)
    b = args.b if args.b is not None else oracle.query_B(args.kb, n).value
    fac = full_factor_three_values(
        n, args.k1, a1, args.k2, a2, args.kb, b, rng, retry_budget=args.retry_budget
    )
    payload = {"mode": "full", "N": n, "factors": _factors_json(fac.factors)}
    _emit(args, [str(fac)], payload)
    return EXIT_OK


def _cmd_sweep(args) -> int:
    lo, hi = args.range
    for k in args.k:
        _check_k(args, k)
    sweep = trichotomy_sweep if args.mode == "squarefree" else primality_sweep
    rep = sweep(lo, hi, args.k)
    lines = [
        f"sweep {args.mode} {lo}..{hi} k={','.join(map(str, args.k))}: "
        f"checked {rep.checked} pairs, {len(rep.violations)} violations",
        "exceptions observed: "
        + (", ".join(f"(k={k},N={n})" for k, n in sorted(rep.exceptions_observed)) or "none"),
    ]
    for k, n, want, got in rep.violations[:50]:
        lines.append(f"violation at (k={k}, N={n}): expected sign {want}, got {got}")
    payload = {
        "mode": args.mode, "lo": lo, "hi": hi, "ks": list(args.k),
        "checked": rep.checked,
        "violations": [list(v) for v in rep.violations],
        "exceptions_observed": [list(e) for e in sorted(rep.exceptions_observed)],
    }
    _emit(args, lines, payload)
    return EXIT_OK if rep.ok else EXIT_FAILURE


_DISPATCH = {
    "dim": _cmd_dim,
    "test": _cmd_test,
    "bounds": _cmd_bounds,
    "factor": _cmd_factor,
    "sweep": _cmd_sweep,
}


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return exc.code if exc.code is not None else EXIT_USAGE
    try:
        return _DISPATCH[args.command](args)
    except UsageError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except InvalidWeightError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except (DomainError, FactoringFailureError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_FAILURE
    except DimfactorError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_FAILURE


if __name__ == "__main__":
    sys.exit(main())
