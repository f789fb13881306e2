"""Command-line front end.

Exit codes: 0 all checks/relations hold, 1 a violation or failed relation,
2 usage error (bad flags, unparsable input, oversized window).
"""

from __future__ import annotations

import argparse
import json
import sys

from seqeffect import algebra, expr
from seqeffect._version import __version__
from seqeffect.harness import DEFAULT_CAP, run_suite
from seqeffect.instances import MUTATIONS, instance_e0, instance_fuzzy, instance_mutant
from seqeffect.poly import AlgebraConfig, AlgebraError
from seqeffect.window import DEFAULT_SEED, SampleWindow

EXIT_OK, EXIT_FAIL, EXIT_USAGE = 0, 1, 2
DEFAULT_TRIALS = 100_000


class UsageError(Exception):
    pass


def _nonneg(text: str) -> int:
    v = int(text)
    if v < 0:
        raise argparse.ArgumentTypeError(f"must be >= 0, got {v}")
    return v


def _positive(text: str) -> int:
    v = int(text)
    if v < 1:
        raise argparse.ArgumentTypeError(f"must be >= 1, got {v}")
    return v


def _algebra_n(text: str) -> int:
    v = int(text)
    if v < 2:
        raise argparse.ArgumentTypeError(f"n must be >= 2, got {v}")
    return v


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--n", type=_algebra_n, default=2, help="truncation parameter (>= 2)")
    common.add_argument("--format", choices=("text", "structured"), default="text")
    common.add_argument("--out", metavar="PATH", help="write output here instead of stdout")

    windowed = argparse.ArgumentParser(add_help=False)
    windowed.add_argument("--W", type=_nonneg, help="max |coefficient|")
    windowed.add_argument("--M", type=_nonneg, help="max |m|")

    parser = argparse.ArgumentParser(
        prog="seqeffect", description="Exact computations in the sequential effect algebra E0."
    )
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    v = sub.add_parser(
        "verify-axioms",
        parents=[common, windowed],
        help="check EA1-EA4, SEA1-SEA5, the I0 identities and order laws on a window",
    )
    mode = v.add_mutually_exclusive_group()
    mode.add_argument("--exhaustive", action="store_true", help="visit every tuple in the window")
    mode.add_argument("--trials", type=_positive, help="sampled mode with this many trials per check")
    v.add_argument("--seed", type=int, default=DEFAULT_SEED)
    v.add_argument("--mutant", choices=MUTATIONS, help="check a deliberately broken variant of E0")
    v.add_argument("--instance", choices=("e0", "fuzzy"), default="e0")
    v.add_argument("--jobs", type=_positive, default=1, help="worker processes")
    v.add_argument("--cap", type=_positive, default=DEFAULT_CAP, help="max window cardinality")

    c = sub.add_parser(
        "certify-roots", parents=[common, windowed], help="emit the n-th root certificate"
    )
    c.add_argument("--find-all", action="store_true", help="also list every window root of c")

    e = sub.add_parser("eval", parents=[common], help="evaluate an E0 expression")
    e.add_argument("expression")
    return parser


def _emit(args, text: str) -> None:
    if args.out:
        with open(args.out, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _window_for_verify(args) -> SampleWindow:
    small = args.n == 2
    W = args.W if args.W is not None else (1 if small else 2)
    M = args.M if args.M is not None else (1 if small else 2)
    if args.exhaustive:
        exhaustive = True
    elif args.trials is not None:
        exhaustive = False
    else:
        exhaustive = small and W == 1 and M == 1
    if exhaustive:
        return SampleWindow(W, M, "exhaustive", seed=args.seed)
    return SampleWindow(W, M, "sampled", args.trials or DEFAULT_TRIALS, args.seed)


def cmd_verify_axioms(args) -> int:
    cfg = AlgebraConfig(args.n)
    if args.instance == "fuzzy":
        if args.mutant:
            raise UsageError("--mutant applies to the e0 instance only")
        inst = instance_fuzzy()
    else:
        inst = instance_e0(cfg)
        if args.mutant:
            inst = instance_mutant(inst, args.mutant)
    window = _window_for_verify(args)
    report = run_suite(inst, None, window, jobs=args.jobs, cap=args.cap)
    _emit(args, report.to_json() if args.format == "structured" else report.to_text())
    return EXIT_OK if report.passed else EXIT_FAIL


def _certificate_text(cert: algebra.RootCertificate) -> str:
    lines = [
        f"# n={cert.n}  seqeffect {cert.version}",
        f"a = {cert.a}",
        f"b = {cert.b}",
        f"c = {cert.c}",
    ]
    for r in cert.relations:
        mark = "ok  " if r.holds else "FAIL"
        lines.append(f"{mark} {r.name:<16} {r.lhs}  vs  {r.rhs}")
    if cert.roots is not None:
        lines.append(f"roots of c of order {cert.n} in window: {len(cert.roots)}")
        lines += [f"  {e}" for e in cert.roots]
    lines.append(f"verdict: {'PASS' if cert.ok else 'FAIL'}")
    return "\n".join(lines) + "\n"


def cmd_certify_roots(args) -> int:
    cfg = AlgebraConfig(args.n)
    window = None
    if args.find_all:
        window = SampleWindow(args.W if args.W is not None else 1, args.M if args.M is not None else 1)
        if algebra.count_elements(cfg, window.W, window.M, (algebra.Branch.F,)) > DEFAULT_CAP:
            raise UsageError(f"window W={window.W}, M={window.M} exceeds the enumeration cap")
    elif args.W is not None or args.M is not None:
        raise UsageError("--W/--M only apply together with --find-all")
    cert = algebra.certify(cfg, window)
    if args.format == "structured":
        text = json.dumps(cert.as_dict(), indent=2) + "\n"
    else:
        text = _certificate_text(cert)
    _emit(args, text)
    return EXIT_OK if cert.ok else EXIT_FAIL


def cmd_eval(args) -> int:
    cfg = AlgebraConfig(args.n)
    value = expr.evaluate(args.expression, cfg)
    shown = "undefined" if value is None else algebra.format_element(value)
    if args.format == "structured":
        text = json.dumps({"n": cfg.n, "expression": args.expression, "result": shown}) + "\n"
    else:
        text = shown + "\n"
    _emit(args, text)
    return EXIT_OK


COMMANDS = {
    "verify-axioms": cmd_verify_axioms,
    "certify-roots": cmd_certify_roots,
    "eval": cmd_eval,
}


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        # argparse exits 0 for --help/--version and 2 for usage errors
        return EXIT_OK if exc.code in (0, None) else EXIT_USAGE
    try:
        return COMMANDS[args.command](args)
    except (AlgebraError, UsageError, OSError) as exc:
        print(f"seqeffect {args.command}: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
