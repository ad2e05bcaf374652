"""A small language for polynomial identities in shifted sequence terms.

Grammar::

    identity := expr '=' expr
    expr     := term (('+' | '-') term)*
    term     := factor ('*' factor)*
    factor   := '-' factor | base ('^' uint)?
    base     := int | 'n' | '(-1)^n' | name '(' linexpr ')'
              | 'frac(' int ',' int ')*' base | '(' expr ')'
    linexpr  := ['-'] [uint '*'] 'n' [('+' | '-') uint] | ['-'] uint

``S(a*n+b)`` is the sequence named S at index a*n + b.  Identities are
checked by evaluating both sides exactly at every n in a range.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from fractions import Fraction
from pathlib import Path
from typing import Iterable, Union

from trimat.errors import ParseError, UnknownSequence
from trimat.exact import BuiltinSeq, SequenceSpec, eval_sequence, tribonacci, tribonacci_lucas

FAILURE_CAP = 32
PROBE_WINDOW = 200


# -- AST ---------------------------------------------------------------------

@dataclass(frozen=True)
class IntConst:
    value: int


@dataclass(frozen=True)
class IndexVar:
    pass


@dataclass(frozen=True)
class AltSign:
    """(-1)^n"""


@dataclass(frozen=True)
class SeqTerm:
    name: str
    a: int
    b: int


@dataclass(frozen=True)
class Neg:
    operand: "Expr"


@dataclass(frozen=True)
class Add:
    left: "Expr"
    right: "Expr"


@dataclass(frozen=True)
class Sub:
    left: "Expr"
    right: "Expr"


@dataclass(frozen=True)
class Mul:
    left: "Expr"
    right: "Expr"


@dataclass(frozen=True)
class Pow:
    base: "Expr"
    exponent: int

    def __post_init__(self):
        if self.exponent < 0:
            raise ValueError("exponent must be non-negative")


@dataclass(frozen=True)
class RatScale:
    factor: Fraction
    operand: "Expr"


Expr = Union[IntConst, IndexVar, AltSign, SeqTerm, Neg, Add, Sub, Mul, Pow, RatScale]


@dataclass(frozen=True)
class Identity:
    lhs: Expr
    rhs: Expr


# -- tokenizer ---------------------------------------------------------------

_TOKEN = re.compile(r"(\d+)|([A-Za-z_][A-Za-z0-9_]*)|(\S)")
RESERVED = {"n", "frac"}


def _tokenize(text: str) -> list:
    tokens = []
    pos = 0
    while True:
        while pos < len(text) and text[pos].isspace():
            pos += 1
        if pos >= len(text):
            break
        m = _TOKEN.match(text, pos)
        if m.group(1) is not None:
            tokens.append(("int", m.group(1), m.start(1)))
        elif m.group(2) is not None:
            tokens.append(("name", m.group(2), m.start(2)))
        elif m.group(3) is not None:
            ch = m.group(3)
            if ch not in "+-*^()=,":
                raise ParseError(text, m.start(3), "an operator, number or name")
            tokens.append((ch, ch, m.start(3)))
        pos = m.end()
    tokens.append(("eof", "", len(text)))
    return tokens


# -- parser ------------------------------------------------------------------

class _Parser:
    def __init__(self, text: str):
        self.text = text
        self.tokens = _tokenize(text)
        self.i = 0

    def peek(self, k: int = 0):
        return self.tokens[min(self.i + k, len(self.tokens) - 1)]

    def at(self, kind: str, value: str | None = None, k: int = 0) -> bool:
        tok = self.peek(k)
        return tok[0] == kind and (value is None or tok[1] == value)

    def fail(self, expected: str):
        raise ParseError(self.text, self.peek()[2], expected)

    def take(self, kind: str, expected: str, value: str | None = None):
        if not self.at(kind, value):
            self.fail(expected)
        tok = self.tokens[self.i]
        self.i += 1
        return tok

    def identity(self) -> Identity:
        lhs = self.expr()
        self.take("=", "'='")
        rhs = self.expr()
        self.take("eof", "end of input")
        return Identity(lhs, rhs)

    def expression_only(self) -> Expr:
        e = self.expr()
        self.take("eof", "end of input")
        return e

    def expr(self) -> Expr:
        node = self.term()
        while self.at("+") or self.at("-"):
            op = self.tokens[self.i][0]
            self.i += 1
            right = self.term()
            node = Add(node, right) if op == "+" else Sub(node, right)
        return node

    def term(self) -> Expr:
        node = self.factor()
        while self.at("*"):
            self.i += 1
            node = Mul(node, self.factor())
        return node

    def factor(self) -> Expr:
        if self.at("-"):
            self.i += 1
            return Neg(self.factor())
        node = self.base()
        if self.at("^"):
            self.i += 1
            exp = self.take("int", "a non-negative integer exponent")
            node = Pow(node, int(exp[1]))
        return node

    def _at_altsign(self) -> bool:
        return (self.at("(") and self.at("-", k=1) and self.at("int", "1", k=2)
                and self.at(")", k=3) and self.at("^", k=4) and self.at("name", "n", k=5))

    def _signed_int(self, expected: str) -> int:
        sign = 1
        if self.at("-"):
            self.i += 1
            sign = -1
        return sign * int(self.take("int", expected)[1])

    def base(self) -> Expr:
        tok = self.peek()
        kind, value = tok[0], tok[1]
        if kind == "int":
            self.i += 1
            return IntConst(int(value))
        if self._at_altsign():
            self.i += 6
            return AltSign()
        if kind == "(":
            self.i += 1
            node = self.expr()
            self.take(")", "')'")
            return node
        if kind == "name":
            if value == "n":
                self.i += 1
                return IndexVar()
            if value == "frac":
                return self.frac()
            self.i += 1
            self.take("(", "'(' after sequence name")
            a, b = self.linexpr()
            self.take(")", "')'")
            return SeqTerm(value, a, b)
        self.fail("a number, 'n', '(-1)^n', a sequence term or '('")

    def frac(self) -> Expr:
        self.i += 1
        self.take("(", "'(' after frac")
        p = self._signed_int("an integer numerator")
        self.take(",", "','")
        q_pos = self.peek()[2]
        q = self._signed_int("an integer denominator")
        if q == 0:
            raise ParseError(self.text, q_pos, "a nonzero denominator")
        self.take(")", "')'")
        self.take("*", "'*' after frac(p,q)")
        return RatScale(Fraction(p, q), self.base())

    def linexpr(self) -> tuple:
        sign = 1
        if self.at("-"):
            self.i += 1
            sign = -1
        if self.at("int"):
            value = int(self.tokens[self.i][1])
            self.i += 1
            if not self.at("*"):
                return 0, sign * value
            self.i += 1
            self.take("name", "'n' in linear index", "n")
            a = sign * value
        elif self.at("name", "n"):
            self.i += 1
            a = sign
        else:
            self.fail("a linear index like 2*n+1 or an integer")
        b = 0
        if self.at("+") or self.at("-"):
            op = self.tokens[self.i][0]
            self.i += 1
            offset = int(self.take("int", "an integer offset")[1])
            b = offset if op == "+" else -offset
        return a, b


def parse_identity(text: str) -> Identity:
    """Parse ``lhs = rhs``; raises ParseError with the failing position."""
    return _Parser(text).identity()


def parse_expr(text: str) -> Expr:
    return _Parser(text).expression_only()


# -- rendering ---------------------------------------------------------------

_SUM, _TERM, _FACTOR, _ATOM = 1, 2, 3, 4


def _render_index(a: int, b: int) -> str:
    if a == 0:
        return str(b)
    if a == 1:
        head = "n"
    elif a == -1:
        head = "-n"
    else:
        head = f"{a}*n"
    if b > 0:
        return f"{head}+{b}"
    if b < 0:
        return f"{head}-{-b}"
    return head


def _render(e: Expr) -> tuple:
    if isinstance(e, IntConst):
        return str(e.value), (_ATOM if e.value >= 0 else _FACTOR)
    if isinstance(e, IndexVar):
        return "n", _ATOM
    if isinstance(e, AltSign):
        return "(-1)^n", _ATOM
    if isinstance(e, SeqTerm):
        return f"{e.name}({_render_index(e.a, e.b)})", _ATOM
    if isinstance(e, RatScale):
        f = e.factor
        return f"frac({f.numerator},{f.denominator})*{_wrap(e.operand, _ATOM)}", _ATOM
    if isinstance(e, Neg):
        return "-" + _wrap(e.operand, _FACTOR), _FACTOR
    if isinstance(e, Pow):
        return f"{_wrap(e.base, _ATOM)}^{e.exponent}", _FACTOR
    if isinstance(e, Mul):
        return f"{_wrap(e.left, _TERM)}*{_wrap(e.right, _FACTOR)}", _TERM
    if isinstance(e, (Add, Sub)):
        op = "+" if isinstance(e, Add) else "-"
        return f"{_wrap(e.left, _SUM)} {op} {_wrap(e.right, _TERM)}", _SUM
    raise TypeError(f"not an expression node: {e!r}")


def _wrap(e: Expr, need: int) -> str:
    text, level = _render(e)
    return text if level >= need else f"({text})"


def render(node: Identity | Expr) -> str:
    """Text that parses back to the same tree."""
    if isinstance(node, Identity):
        return f"{render(node.lhs)} = {render(node.rhs)}"
    return _render(node)[0]


def sequence_names(node: Identity | Expr) -> set:
    if isinstance(node, Identity):
        return sequence_names(node.lhs) | sequence_names(node.rhs)
    if isinstance(node, SeqTerm):
        return {node.name}
    out = set()
    for attr in ("operand", "left", "right", "base"):
        child = getattr(node, attr, None)
        if child is not None:
            out |= sequence_names(child)
    return out


# -- evaluation --------------------------------------------------------------

class SeqEnv:
    """Case-sensitive map from names to sequences; T and K are bound by default.

    A binding is a BuiltinSeq, a SequenceSpec, or any callable taking an
    integer index and returning an exact value.
    """

    def __init__(self, bindings: dict | None = None, builtins: bool = True):
        self._map = {}
        if builtins:
            self._map["T"] = BuiltinSeq.TRIB
            self._map["K"] = BuiltinSeq.TRIB_LUCAS
        for name, seq in (bindings or {}).items():
            self.bind(name, seq)

    def bind(self, name: str, seq) -> None:
        if name in RESERVED or not re.fullmatch(r"[A-Za-z_][A-Za-z0-9_]*", name):
            raise ValueError(f"invalid sequence name {name!r}")
        if name in self._map:
            raise ValueError(f"sequence {name!r} is already bound")
        self._map[name] = seq

    def resolve(self, name: str) -> BuiltinSeq | SequenceSpec:
        try:
            return self._map[name]
        except KeyError:
            raise UnknownSequence(name) from None

    def __contains__(self, name):
        return name in self._map

    def names(self) -> list:
        return sorted(self._map)


def _seq_value(seq, index: int):
    if seq is BuiltinSeq.TRIB:
        return tribonacci(index)
    if seq is BuiltinSeq.TRIB_LUCAS:
        return tribonacci_lucas(index)
    if isinstance(seq, SequenceSpec):
        return eval_sequence(seq, index)
    return seq(index)


class _Evaluator:
    def __init__(self, env: SeqEnv, cache: dict | None = None):
        self.env = env
        self.cache = cache

    def term(self, name: str, index: int):
        if self.cache is None:
            return _seq_value(self.env.resolve(name), index)
        key = (name, index)
        if key not in self.cache:
            self.cache[key] = _seq_value(self.env.resolve(name), index)
        return self.cache[key]

    def __call__(self, e: Expr, n: int):
        if isinstance(e, IntConst):
            return e.value
        if isinstance(e, IndexVar):
            return n
        if isinstance(e, AltSign):
            return -1 if n % 2 else 1
        if isinstance(e, SeqTerm):
            return self.term(e.name, e.a * n + e.b)
        if isinstance(e, Neg):
            return -self(e.operand, n)
        if isinstance(e, Add):
            return self(e.left, n) + self(e.right, n)
        if isinstance(e, Sub):
            return self(e.left, n) - self(e.right, n)
        if isinstance(e, Mul):
            return self(e.left, n) * self(e.right, n)
        if isinstance(e, Pow):
            return self(e.base, n) ** e.exponent
        if isinstance(e, RatScale):
            return e.factor * self(e.operand, n)
        raise TypeError(f"not an expression node: {e!r}")


def eval_expr(e: Expr, n: int, env: SeqEnv | None = None) -> Fraction:
    """Exact value of ``e`` at index n."""
    return Fraction(_Evaluator(env if env is not None else SeqEnv())(e, n))


# -- checking ----------------------------------------------------------------

@dataclass
class CheckReport:
    name: str
    text: str
    lo: int
    hi: int
    failures: list = field(default_factory=list)
    failure_count: int = 0
    positive_threshold: int | None = None
    negative_depth: int | None = None
    outcome: str = ""

    @property
    def verdict(self) -> str:
        return "holds" if self.failure_count == 0 else "fails"

    @property
    def first_failure(self):
        return self.failures[0] if self.failures else None

    def __post_init__(self):
        if not self.outcome:
            self.outcome = self.verdict


def _as_identity(ast) -> Identity:
    if isinstance(ast, str):
        return parse_identity(ast)
    return ast


def check_identity(ast, lo: int, hi: int, env: SeqEnv | None = None,
                   name: str | None = None) -> CheckReport:
    """Evaluate lhs - rhs at each n in lo..hi and collect the failures (first 32 kept)."""
    if lo > hi:
        raise ValueError(f"empty range: lo={lo} > hi={hi}")
    ident = _as_identity(ast)
    env = env if env is not None else SeqEnv()
    for seq_name in sequence_names(ident):
        env.resolve(seq_name)
    evaluate = _Evaluator(env, cache={})
    text = render(ident)
    report = CheckReport(name=name or text, text=text, lo=lo, hi=hi)
    for n in range(lo, hi + 1):
        left = evaluate(ident.lhs, n)
        right = evaluate(ident.rhs, n)
        if left != right:
            report.failure_count += 1
            if len(report.failures) < FAILURE_CAP:
                report.failures.append((n, Fraction(left), Fraction(right)))
    report.outcome = report.verdict
    return report


def merge_reports(reports: Iterable[CheckReport]) -> CheckReport:
    """Combine reports for pieces of one range checked separately."""
    reports = list(reports)
    if not reports:
        raise ValueError("nothing to merge")
    first = reports[0]
    failures = sorted((f for r in reports for f in r.failures), key=lambda f: f[0])
    merged = CheckReport(
        name=first.name, text=first.text,
        lo=min(r.lo for r in reports), hi=max(r.hi for r in reports),
        failures=failures[:FAILURE_CAP],
        failure_count=sum(r.failure_count for r in reports),
    )
    merged.outcome = merged.verdict
    return merged


POSITIVE_FAILURE = "positive-range failure"
NEGATIVE_COUNTEREXAMPLE = "negative-range counterexample"


def conjecture_probe(ast, env: SeqEnv | None, N: int, M: int,
                     name: str | None = None) -> CheckReport:
    """Check (N, N+200] first; only if that holds, check [-M, N].

    ``outcome`` is "holds", "positive-range failure" (the identity was not
    established for large n) or "negative-range counterexample" (it holds
    for large n but breaks at or below N).
    """
    if N < 1 or M < 1:
        raise ValueError(f"N and M must be positive, got N={N}, M={M}")
    ident = _as_identity(ast)
    upper = check_identity(ident, N + 1, N + PROBE_WINDOW, env, name)
    if upper.failure_count:
        upper.positive_threshold, upper.negative_depth = N, M
        upper.outcome = POSITIVE_FAILURE
        return upper
    lower = check_identity(ident, -M, N, env, name)
    lower.hi = N + PROBE_WINDOW
    lower.positive_threshold, lower.negative_depth = N, M
    lower.outcome = NEGATIVE_COUNTEREXAMPLE if lower.failure_count else "holds"
    return lower


# -- corpus ------------------------------------------------------------------

def _tt_product(m: int) -> str:
    # T_{-m-n} = T_{-m} T_{-n+1} + T_{-n} (T_{-m-1} + T_{-m-2}) + T_{-m-1} T_{-n-1}
    return (f"T({_render_index(-1, -m)}) = T({-m})*T(-n+1) + T(-n)*(T({-m - 1}) + T({-m - 2}))"
            f" + T({-m - 1})*T(-n-1)")


def _tk_product(m: int) -> str:
    return (f"K({_render_index(-1, -m)}) = T({-m})*K(-n+1) + K(-n)*(T({-m - 1}) + T({-m - 2}))"
            f" + K(-n-1)*T({-m - 1})")


def _kk_entry(m: int) -> str:
    # (row 2, col 1) entry of K_{-m} K_{-n}
    return f"K({-m})*K(-n+1) + K(-n)*(K({-m - 1}) + K({-m - 2})) + K({-m - 1})*K(-n-1)"


def _t_shift(m: int, shift: int) -> str:
    return f"T({_render_index(-1, -m + shift)})"


def _kk_form(m: int, coeffs: dict) -> str:
    parts = []
    for shift, c in coeffs.items():
        parts.append((c, _t_shift(m, shift)))
    rhs = ""
    for k, (c, t) in enumerate(parts):
        mag = abs(c)
        body = t if mag == 1 else f"{mag}*{t}"
        if k == 0:
            rhs = ("-" if c < 0 else "") + body
        else:
            rhs += (" - " if c < 0 else " + ") + body
    return f"{_kk_entry(m)} = {rhs}"


def _mixed(m: int) -> str:
    # (row 2, col 1) entry of T_m K_{-n} = K_{m-n}
    return (f"K({_render_index(-1, m)}) = T({m})*K(-n+1) + (T({m - 1}) + T({m - 2}))*K(-n)"
            f" + T({m - 1})*K(-n-1)")


_KK_A = {2: 9, 1: -12, 0: -2, -1: 4, -2: 1}
_KK_B = {0: 1, -1: 4, -2: 10, -3: 12, -4: 9}
_KK_C = {0: 1, 1: -8, 2: 18, 3: -8, 4: 1}


def builtin_corpus() -> list:
    """Named scalar identities, each ``(name, text)``; all hold for every integer n."""
    corpus = [
        ("rec_T", "T(n) = T(n-1) + T(n-2) + T(n-3)"),
        ("rec_K", "K(n) = K(n-1) + K(n-2) + K(n-3)"),
        ("rec_T_neg", "T(-n) = -T(-n+1) - T(-n+2) + T(-n+3)"),
        ("rec_K_neg", "K(-n) = -K(-n+1) - K(-n+2) + K(-n+3)"),
        ("eq3", "K(n) = 3*T(n+1) - 2*T(n) - T(n-1)"),
        ("eq4", "K(n) = T(n) + 2*T(n-1) + 3*T(n-2)"),
        ("eq5", "K(n) = 4*T(n+1) - T(n) - T(n+2)"),
        ("rel_a_neg", "K(-n) = 3*T(-n+1) - 2*T(-n) - T(-n-1)"),
        ("rel_b_neg", "K(-n) = T(-n) + 2*T(-n-1) + 3*T(-n-2)"),
        ("rel_c_neg", "K(-n) = -T(-n+2) + 4*T(-n+1) - T(-n)"),
        ("rel_d_scaled", "T(-n) = frac(1,22)*(5*K(-n+2) - 3*K(-n+1) - 4*K(-n))"),
        ("rel_d_cleared", "22*T(-n) = 5*K(-n+2) - 3*K(-n+1) - 4*K(-n)"),
        ("k0_inv_scaled", "T(-n) = frac(1,22)*(K(-n) + 5*K(-n-1) + 2*K(-n+1))"),
        ("k0_inv_cleared", "22*T(-n) = K(-n) + 5*K(-n-1) + 2*K(-n+1)"),
    ]
    corpus += [(f"tt_product_m{m}", _tt_product(m)) for m in (0, 1, 2, 3)]
    corpus += [(f"tk_product_m{m}", _tk_product(m)) for m in (0, 1, 2, 3)]
    corpus += [(f"kk_form_a_m{m}", _kk_form(m, _KK_A)) for m in (0, 2)]
    corpus += [(f"kk_form_b_m{m}", _kk_form(m, _KK_B)) for m in (1, 3)]
    corpus += [(f"kk_form_c_m{m}", _kk_form(m, _KK_C)) for m in (0, 2)]
    corpus += [(f"tk_mixed_m{m}", _mixed(m)) for m in (1, 3)]
    corpus += [
        # first differences of the m=1, j=0 partial sums: S(n+1) - S(n) = X_{-n}
        ("sum_T_m1", "frac(-1,2)*(T(-n) + T(-n-2) + 2*T(-n-1) - 1)"
                     " - frac(-1,2)*(T(-n+1) + T(-n-1) + 2*T(-n) - 1) = T(-n)"),
        ("sum_K_m1", "frac(-1,2)*(K(-n) + K(-n-2) + 2*K(-n-1) - 6)"
                     " - frac(-1,2)*(K(-n+1) + K(-n-1) + 2*K(-n) - 6) = K(-n)"),
    ]
    return corpus


def parse_corpus(text: str) -> list:
    """``name: identity`` per line; blank lines and ``#`` comments ignored."""
    entries = []
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        name, sep, body = line.partition(":")
        if not sep or not name.strip() or not body.strip():
            raise ValueError(f"line {lineno}: expected 'name: identity', got {raw!r}")
        entries.append((name.strip(), body.strip()))
    return entries


def load_corpus(path) -> list:
    return parse_corpus(Path(path).read_text(encoding="utf-8"))


def format_corpus(entries: Iterable[tuple]) -> str:
    return "".join(f"{name}: {text}\n" for name, text in entries)
