"""``trimat`` command line.

Exit codes: 0 on success, 1 when an identity (or a closed form checked
against its oracle) fails, 2 on usage, parse or input errors.
"""

from __future__ import annotations

import argparse
import json
import os
import re
import sys
import time
from fractions import Fraction
from pathlib import Path

from trimat import analytic, genfunc, identities, sums
from trimat.errors import TrimatError
from trimat.exact import (
    BuiltinSeq, SequenceSpec, eval_sequence, sequence_slice,
    tribonacci, tribonacci_iterative, tribonacci_lucas, tribonacci_matrix,
)
from trimat.matrices import Mat3, k_matrix, t_matrix

DEFAULT_BITS = 192
BENCH_SIZES = (1_000, 10_000, 100_000)
EXIT_OK, EXIT_FAIL, EXIT_USAGE = 0, 1, 2


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    """Treats -12 and -5..5 as values rather than options."""

    def __init__(self, *args, **kwargs):
        super().__init__(*args, **kwargs)
        self._negative_number_matcher = re.compile(r"^-\d+$|^-\d*\.\d+$|^-\d+\.\.-?\d+$")

    def error(self, message):
        raise UsageError(f"{self.prog}: {message}")


def parse_range(text: str) -> tuple:
    """``lo..hi`` (either end may be negative) or a single integer."""
    m = re.fullmatch(r"\s*(-?\d+)\s*(?:\.\.\s*(-?\d+)\s*)?", text)
    if not m:
        raise UsageError(f"expected an integer or a range lo..hi, got {text!r}")
    lo = int(m.group(1))
    hi = int(m.group(2)) if m.group(2) is not None else lo
    if lo > hi:
        raise UsageError(f"empty range {text!r}")
    return lo, hi


def default_bits() -> int:
    raw = os.environ.get("TRIMAT_BITS")
    if raw is None:
        return DEFAULT_BITS
    try:
        bits = int(raw)
    except ValueError:
        raise UsageError(f"TRIMAT_BITS must be an integer, got {raw!r}") from None
    if bits < analytic.MIN_BITS:
        raise UsageError(f"TRIMAT_BITS must be >= {analytic.MIN_BITS}, got {bits}")
    return bits


# -- output ------------------------------------------------------------------

def to_plain(value) -> str:
    if isinstance(value, Fraction):
        return str(value.numerator) if value.denominator == 1 else f"{value.numerator}/{value.denominator}"
    if isinstance(value, Mat3):
        return " / ".join(" ".join(to_plain(x) for x in row) for row in value.rows)
    return str(value)


def to_json(value):
    if isinstance(value, (bool, int, str)) or value is None:
        return value
    if isinstance(value, float):
        return value
    if isinstance(value, Fraction):
        return value.numerator if value.denominator == 1 else f"{value.numerator}/{value.denominator}"
    if isinstance(value, Mat3):
        return [[to_json(x) for x in row] for row in value.rows]
    if isinstance(value, (analytic.RealApprox, analytic.ComplexApprox)):
        return str(value)
    if isinstance(value, dict):
        return {k: to_json(v) for k, v in value.items()}
    if isinstance(value, (list, tuple)):
        return [to_json(v) for v in value]
    return str(value)


class Output:
    def __init__(self, mode: str, stream=None):
        self.mode = mode
        self.stream = stream or sys.stdout

    @property
    def structured(self) -> bool:
        return self.mode == "structured"

    def record(self, command: str, inputs: dict, value, plain: str | None = None):
        """One result: a JSON line in structured mode, ``plain`` (or the value) otherwise."""
        if self.structured:
            line = json.dumps({"command": command, "inputs": to_json(inputs),
                               "value": to_json(value)})
        else:
            line = plain if plain is not None else to_plain(value)
        print(line, file=self.stream)

    def note(self, text: str):
        """Plain-mode only decoration (headers, tables)."""
        if not self.structured:
            print(text, file=self.stream)


# -- commands ----------------------------------------------------------------

def _load_sequence(name: str):
    if name == "T":
        return BuiltinSeq.TRIB
    if name == "K":
        return BuiltinSeq.TRIB_LUCAS
    path = Path(name)
    if not path.is_file():
        raise UsageError(f"sequence must be T, K or a JSON spec file, got {name!r}")
    try:
        data = json.loads(path.read_text(encoding="utf-8"))
        return SequenceSpec(tuple(data["coefficients"]),
                            tuple(Fraction(str(w)) for w in data["initials"]),
                            name=data.get("name", path.stem))
    except (json.JSONDecodeError, KeyError, TypeError, ValueError) as exc:
        raise UsageError(f"bad sequence spec {name}: {exc}") from None


def _index_arg(args) -> str:
    if args.target is not None and args.n is not None:
        raise UsageError("give the index either positionally or with --n, not both")
    text = args.target if args.target is not None else args.n
    if text is None:
        raise UsageError("missing index (n or lo..hi)")
    return text


def cmd_eval(args, out: Output) -> int:
    seq = _load_sequence(args.sequence)
    lo, hi = parse_range(_index_arg(args))
    if lo == hi:
        if seq is BuiltinSeq.TRIB:
            values = [tribonacci(lo)]
        elif seq is BuiltinSeq.TRIB_LUCAS:
            values = [tribonacci_lucas(lo)]
        else:
            values = [eval_sequence(seq, lo)]
    else:
        values = sequence_slice(seq, lo, hi)
    single = lo == hi
    for n, v in zip(range(lo, hi + 1), values):
        out.record("eval", {"sequence": args.sequence, "n": n}, v,
                   to_plain(v) if single else f"{n} {to_plain(v)}")
    return EXIT_OK


def _family_matrix(family: str):
    return t_matrix if family == "T" else k_matrix


def cmd_matrix(args, out: Output) -> int:
    n = int(_index_arg(args))
    M = _family_matrix(args.family)(n)
    out.record("matrix", {"family": args.family, "n": n}, M,
               "\n".join(" ".join(to_plain(x) for x in row) for row in M.rows))
    return EXIT_OK


def cmd_roots(args, out: Output) -> int:
    bits = args.bits or default_bits()
    roots = analytic.tribonacci_roots(bits)
    for name in ("alpha", "beta", "gamma"):
        value = getattr(roots, name)
        out.record("roots", {"bits": bits, "root": name}, value, f"{name} = {value}")
    return EXIT_OK


def cmd_binet(args, out: Output) -> int:
    bits = args.bits or default_bits()
    n = int(_index_arg(args))
    if args.family == "T":
        approx, exact = analytic.binet_t(n, bits), tribonacci(n)
    else:
        approx, exact = analytic.binet_k(n, bits), tribonacci_lucas(n)
    residual = analytic.RealApprox(approx.value - exact, bits)
    value = {"approx": approx, "exact": exact, "residual": residual}
    out.record("binet", {"family": args.family, "n": n, "bits": bits}, value,
               f"{args.family}_{n} ~ {approx}\nexact {exact}\nresidual {residual}")
    return EXIT_OK


def cmd_gf(args, out: Output) -> int:
    if args.count < 1:
        raise UsageError("--count must be positive")
    try:
        kind = genfunc.GFKind(args.kind.upper())
    except ValueError:
        names = ", ".join(k.value for k in genfunc.GFKind)
        raise UsageError(f"unknown generating function {args.kind!r}; choose from {names}") from None
    gf = genfunc.builtin_gf(kind)
    if isinstance(gf, genfunc.MatrixGF):
        out.note(f"# entries over {genfunc.format_poly(gf.denominator)}")
        coeffs = genfunc.matrix_gf_coefficients(kind, args.count)
    else:
        out.note(f"# {gf}")
        coeffs = genfunc.gf_coefficients(gf, args.count)
    for i, c in enumerate(coeffs):
        out.record("gf", {"kind": kind.value, "index": i}, c, f"{i} {to_plain(c)}")
    return EXIT_OK


def cmd_sum(args, out: Output) -> int:
    try:
        q = sums.SumQuery(args.family, args.level, args.m, args.j, args.n)
    except ValueError as exc:
        raise UsageError(str(exc)) from None
    closed = sums.sum_closed(q)
    inputs = {"family": q.family, "level": q.level, "m": q.m, "j": q.j, "n": q.n}
    if not args.oracle:
        out.record("sum", inputs, closed)
        return EXIT_OK
    direct = sums.sum_direct(q)
    agree = closed == direct
    out.record("sum", inputs, {"closed": closed, "direct": direct, "agree": agree},
               f"closed {to_plain(closed)}\ndirect {to_plain(direct)}\n"
               f"{'agree' if agree else 'DISAGREE'}")
    return EXIT_OK if agree else EXIT_FAIL


def _report_row(report: identities.CheckReport) -> dict:
    first = report.first_failure
    return {
        "name": report.name,
        "verdict": report.verdict,
        "outcome": report.outcome,
        "failure_count": report.failure_count,
        "first_failure": None if first is None else
        {"n": first[0], "lhs": first[1], "rhs": first[2]},
    }


def _emit_reports(command: str, reports: list, inputs: dict, out: Output) -> int:
    width = max([len(r.name) for r in reports] + [4])
    verdicts = [r.outcome if command == "probe" else r.verdict for r in reports]
    vwidth = max(len(v) for v in verdicts + ["verdict"])
    out.note(f"{'name':<{width}}  {'verdict':<{vwidth}}  failures  first failure")
    for r, verdict in zip(reports, verdicts):
        first = r.first_failure
        where = "-" if first is None else f"n={first[0]}: {to_plain(first[1])} != {to_plain(first[2])}"
        out.record(command, dict(inputs, name=r.name), _report_row(r),
                   f"{r.name:<{width}}  {verdict:<{vwidth}}  {r.failure_count:>8}  {where}")
    return EXIT_OK if all(r.failure_count == 0 for r in reports) else EXIT_FAIL


def _load_entries(args) -> list:
    if args.expr is not None and args.file is not None:
        raise UsageError("give either a corpus file or --expr, not both")
    if args.expr is not None:
        return [("expr", args.expr)]
    if args.file is None:
        raise UsageError("need a corpus file or --expr")
    try:
        return identities.load_corpus(args.file)
    except OSError as exc:
        raise UsageError(f"cannot read {args.file}: {exc.strerror}") from None
    except ValueError as exc:
        raise UsageError(f"{args.file}: {exc}") from None


def cmd_check(args, out: Output) -> int:
    lo, hi = parse_range(args.range)
    reports = [identities.check_identity(identities.parse_identity(text), lo, hi, name=name)
               for name, text in _load_entries(args)]
    return _emit_reports("check", reports, {"lo": lo, "hi": hi}, out)


def cmd_probe(args, out: Output) -> int:
    if args.positive < 1 or args.negative < 1:
        raise UsageError("--positive and --negative must be positive")
    ast = identities.parse_identity(args.expr)
    report = identities.conjecture_probe(ast, None, args.positive, args.negative, name="expr")
    return _emit_reports("probe", [report], {"N": args.positive, "M": args.negative}, out)


def cmd_corpus(args, out: Output) -> int:
    lo, hi = parse_range(args.range)
    reports = [identities.check_identity(identities.parse_identity(text), lo, hi, name=name)
               for name, text in identities.builtin_corpus()]
    return _emit_reports("corpus", reports, {"lo": lo, "hi": hi}, out)


def _words(x: int) -> int:
    return max(1, (abs(x).bit_length() + 63) // 64)


def bench_one(n: int) -> dict:
    start = time.perf_counter()
    slow = tribonacci_iterative(n)
    iterative_s = time.perf_counter() - start
    start = time.perf_counter()
    fast = tribonacci_matrix(n)
    matrix_s = time.perf_counter() - start
    return {
        "n": n,
        "iterative_s": iterative_s,
        "matrix_s": matrix_s,
        "speedup": iterative_s / matrix_s if matrix_s > 0 else float("inf"),
        "words": _words(fast),
        "agree": slow == fast,
    }


def cmd_bench(args, out: Output) -> int:
    sizes = args.n or list(BENCH_SIZES)
    rows = []
    out.note(f"{'n':>8}  {'words':>6}  {'iterative s':>12}  {'matrix s':>10}  {'speedup':>8}  agree")
    for n in sizes:
        row = bench_one(n)
        rows.append(row)
        out.record("bench", {"n": n}, row,
                   f"{n:>8}  {row['words']:>6}  {row['iterative_s']:>12.6f}  "
                   f"{row['matrix_s']:>10.6f}  {row['speedup']:>8.1f}  {row['agree']}")
    if args.plot:
        from trimat.report import plot_bench

        path = plot_bench(rows, args.plot)
        out.note(f"# figure written to {path}")
    return EXIT_OK if all(r["agree"] for r in rows) else EXIT_FAIL


# -- parser ------------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    formats = ("plain", "structured")
    parser = _Parser(prog="trimat", description="Exact Tribonacci and Tribonacci-Lucas toolkit.")
    parser.add_argument("--format", choices=formats, default="plain",
                        help="plain text or one JSON record per line")
    common = _Parser(add_help=False)
    common.add_argument("--format", choices=formats, default=argparse.SUPPRESS)
    sub = parser.add_subparsers(dest="command", metavar="command", parser_class=_Parser)
    sub.required = True

    def add(name, func, help_text):
        p = sub.add_parser(name, help=help_text, parents=[common])
        p.set_defaults(func=func)
        return p

    p = add("eval", cmd_eval, "sequence values at an index or range")
    p.add_argument("sequence", help="T, K, or a JSON file with coefficients and initials")
    p.add_argument("target", nargs="?", help="n or lo..hi")
    p.add_argument("--n", help="index or range (use --n=-12 for negatives)")

    p = add("matrix", cmd_matrix, "print the 3x3 matrix at index n")
    p.add_argument("family", choices=("T", "K"))
    p.add_argument("target", nargs="?")
    p.add_argument("--n")

    p = add("roots", cmd_roots, "roots of x^3 - x^2 - x - 1")
    p.add_argument("--bits", type=int)

    p = add("binet", cmd_binet, "Binet value with residual against the exact value")
    p.add_argument("family", choices=("T", "K"))
    p.add_argument("target", nargs="?")
    p.add_argument("--n")
    p.add_argument("--bits", type=int)

    p = add("gf", cmd_gf, "generating function coefficients")
    p.add_argument("kind", help=", ".join(k.value for k in genfunc.GFKind))
    p.add_argument("--count", type=int, default=10)

    p = add("sum", cmd_sum, "closed-form sum of X_{-mi-j}, i = 0..n-1")
    p.add_argument("--family", choices=("T", "K"), required=True)
    p.add_argument("--level", choices=sums.LEVELS, default="scalar")
    p.add_argument("--m", type=int, required=True)
    p.add_argument("--j", type=int, default=0)
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--oracle", action="store_true", help="also add the terms directly and compare")

    p = add("check", cmd_check, "check identities over a range")
    p.add_argument("file", nargs="?", help="corpus file, lines of 'name: identity'")
    p.add_argument("--expr")
    p.add_argument("--range", default="-100..100")

    p = add("probe", cmd_probe, "check (N, N+200] and then [-M, N]")
    p.add_argument("--expr", required=True)
    p.add_argument("--positive", type=int, default=20, metavar="N")
    p.add_argument("--negative", type=int, default=200, metavar="M")

    p = add("corpus", cmd_corpus, "check the builtin identity corpus")
    p.add_argument("--range", default="-100..100")

    p = add("bench", cmd_bench, "time iterative against matrix-power evaluation")
    p.add_argument("--n", type=int, action="append", help="index to time (repeatable)")
    p.add_argument("--plot", metavar="PATH", help="write a log-log timing figure")
    return parser


def run(argv=None, stdout=None, stderr=None) -> int:
    stderr = stderr or sys.stderr
    if hasattr(sys, "set_int_max_str_digits"):
        sys.set_int_max_str_digits(0)
    try:
        args = build_parser().parse_args(argv)
        return args.func(args, Output(args.format, stdout))
    except UsageError as exc:
        print(f"error: {exc}", file=stderr)
        return EXIT_USAGE
    except (TrimatError, ValueError, ZeroDivisionError) as exc:
        print(f"error: {exc}", file=stderr)
        return EXIT_USAGE
    except SystemExit as exc:  # --help
        return exc.code if isinstance(exc.code, int) else EXIT_OK


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
