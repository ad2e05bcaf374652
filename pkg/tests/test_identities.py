from __future__ import annotations

from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from trimat.errors import ParseError, UnknownSequence
from trimat.exact import SequenceSpec
from trimat.identities import (
    FAILURE_CAP, NEGATIVE_COUNTEREXAMPLE, POSITIVE_FAILURE, Add, AltSign, Identity, IndexVar,
    IntConst, Mul, Neg, Pow, RatScale, SeqEnv, SeqTerm, Sub, builtin_corpus, check_identity,
    conjecture_probe, eval_expr, format_corpus, merge_reports, parse_corpus, parse_expr,
    parse_identity, render,
)

EQ3 = "K(n) = 3*T(n+1) - 2*T(n) - T(n-1)"


def test_parse_eq3():
    ast = parse_identity(EQ3)
    assert ast.lhs == SeqTerm("K", 1, 0)
    assert ast.rhs == Sub(Sub(Mul(IntConst(3), SeqTerm("T", 1, 1)),
                              Mul(IntConst(2), SeqTerm("T", 1, 0))),
                          SeqTerm("T", 1, -1))


@pytest.mark.parametrize("text,node", [
    ("T(2*n+1)", SeqTerm("T", 2, 1)),
    ("T(-n-2)", SeqTerm("T", -1, -2)),
    ("T(-3*n)", SeqTerm("T", -3, 0)),
    ("K(-7)", SeqTerm("K", 0, -7)),
    ("(-1)^n", AltSign()),
    ("(-1)^2", Pow(Neg(IntConst(1)), 2)),
    ("-T(n)^2", Neg(Pow(SeqTerm("T", 1, 0), 2))),
    ("frac(1,22)*(K(n) + 1)", RatScale(Fraction(1, 22), Add(SeqTerm("K", 1, 0), IntConst(1)))),
    ("frac(-3,6)*n", RatScale(Fraction(-1, 2), IndexVar())),
    ("  n *  n ", Mul(IndexVar(), IndexVar())),
])
def test_parse_pieces(text, node):
    assert parse_expr(text) == node


@pytest.mark.parametrize("text,position", [
    ("K(n = 3", 4),
    ("T(n) = T(n)^-1", 12),
    ("T(n) = (T(n)", 12),
    ("T(n) = 2 T(n)", 9),
    ("T(n) = T(n*2)", 10),
    ("T(n) = frac(1,0)*T(n)", 14),
    ("T(n) = frac(1,2) T(n)", 17),
    ("T(n) = T(n) $", 12),
    ("T(n)", 4),
    ("n(1) = 1", 1),
])
def test_parse_errors(text, position):
    with pytest.raises(ParseError) as info:
        parse_identity(text)
    assert info.value.position == position


def test_parse_error_message_names_the_token():
    with pytest.raises(ParseError, match=r"position 4 \('='\)"):
        parse_identity("K(n = 3")


def test_eval_examples():
    assert eval_expr(SeqTerm("T", 1, 0), -12) == -20
    assert eval_expr(AltSign(), -3) == -1
    assert eval_expr(Mul(SeqTerm("K", 1, 0), IntConst(2)), 4) == 22
    assert eval_expr(parse_expr("frac(1,3)*n"), 2) == Fraction(2, 3)


def test_unknown_sequence():
    with pytest.raises(UnknownSequence):
        eval_expr(SeqTerm("F", 1, 0), 1)
    with pytest.raises(UnknownSequence):
        check_identity(parse_identity("F(n) = 0"), 0, 1)


def test_custom_sequence_env():
    env = SeqEnv({"F": SequenceSpec((1, 1), (0, 1))})
    report = check_identity(parse_identity("F(n+1)*F(n-1) - F(n)^2 = (-1)^n"), -30, 30, env)
    assert report.verdict == "holds"
    with pytest.raises(ValueError):
        env.bind("F", SequenceSpec((1,), (1,)))
    with pytest.raises(ValueError):
        env.bind("n", SequenceSpec((1,), (1,)))
    assert "f" not in env


def test_check_examples():
    assert check_identity(parse_identity(EQ3), -50, 50).verdict == "holds"
    report = check_identity(parse_identity("K(n) = 3*T(n+1) - 2*T(n)"), 0, 5)
    assert report.verdict == "fails"
    assert report.first_failure == (2, 3, 4)
    assert check_identity(parse_identity("T(n) = T(n)"), -5, 5).verdict == "holds"
    with pytest.raises(ValueError):
        check_identity(parse_identity("T(n) = T(n)"), 1, 0)


def test_failure_cap():
    report = check_identity(parse_identity("T(n) = T(n) + 1"), 0, 99)
    assert report.failure_count == 100
    assert len(report.failures) == FAILURE_CAP


def test_merge_reports():
    ident = parse_identity("T(n) = 0")
    whole = check_identity(ident, -20, 20)
    parts = [check_identity(ident, 1, 20), check_identity(ident, -20, 0)]
    merged = merge_reports(parts)
    assert (merged.lo, merged.hi) == (-20, 20)
    assert merged.failures == whole.failures
    assert merged.failure_count == whole.failure_count


def test_probe_examples():
    for text in ("K(n) = T(n) + 2*T(n-1) + 3*T(n-2)",
                 "22*T(n) = 5*K(n+2) - 3*K(n+1) - 4*K(n)"):
        assert conjecture_probe(parse_identity(text), None, 10, 100).outcome == "holds"
    parity = conjecture_probe(parse_identity("(-1)^n * T(n) = T(n)"), None, 10, 100)
    assert parity.outcome == POSITIVE_FAILURE
    assert parity.first_failure[0] == 11


def test_probe_negative_counterexample():
    # |T_n| agrees with T_n for n >= 0 only
    env = SeqEnv({"H": lambda i: abs(eval_expr(SeqTerm("T", 0, i), 0))})
    probe = conjecture_probe(parse_identity("H(n) = T(n)"), env, 5, 30)
    assert probe.outcome == NEGATIVE_COUNTEREXAMPLE
    assert probe.positive_threshold == 5 and probe.negative_depth == 30
    assert probe.first_failure[0] < 0
    assert all(n < 0 for n, _, _ in probe.failures)


def test_probe_validation():
    with pytest.raises(ValueError):
        conjecture_probe(parse_identity(EQ3), None, 0, 10)


def test_corpus_contents():
    corpus = dict(builtin_corpus())
    assert len(corpus) >= 20
    assert corpus["eq3"] == EQ3
    assert corpus["eq5"] == "K(n) = 4*T(n+1) - T(n) - T(n+2)"
    assert corpus["tt_product_m2"] == "T(-n-2) = T(-2)*T(-n+1) + T(-n)*(T(-3) + T(-4)) + T(-3)*T(-n-1)"


@pytest.mark.parametrize("name,text", builtin_corpus())
def test_corpus_entry(name, text):
    ast = parse_identity(text)
    assert parse_identity(render(ast)) == ast
    assert check_identity(ast, -100, 100).verdict == "holds"


def test_corpus_file_roundtrip(tmp_path):
    entries = builtin_corpus()
    path = tmp_path / "c.txt"
    path.write_text("# header\n\n" + format_corpus(entries), encoding="utf-8")
    assert parse_corpus(path.read_text(encoding="utf-8")) == entries
    with pytest.raises(ValueError):
        parse_corpus("no colon here")


# -- generated expressions ---------------------------------------------------

leaves = st.one_of(
    st.integers(0, 5).map(IntConst),
    st.just(IndexVar()),
    st.just(AltSign()),
    st.builds(SeqTerm, st.sampled_from(["T", "K"]), st.integers(-3, 3), st.integers(-5, 5)),
)


def _extend(children):
    return st.one_of(
        st.builds(Neg, children),
        st.builds(Add, children, children),
        st.builds(Sub, children, children),
        st.builds(Mul, children, children),
        st.builds(Pow, children, st.integers(0, 3)),
        st.builds(RatScale, st.fractions(min_value=-5, max_value=5, max_denominator=7)
                  .filter(lambda f: f != 0), children),
    )


exprs = st.recursive(leaves, _extend, max_leaves=8)


@settings(max_examples=200)
@given(exprs, exprs)
def test_render_roundtrip(lhs, rhs):
    ident = Identity(lhs, rhs)
    assert parse_identity(render(ident)) == ident


@given(exprs, exprs, st.integers(-20, 20))
def test_eval_homomorphic(x, y, n):
    ex, ey = eval_expr(x, n), eval_expr(y, n)
    assert eval_expr(Add(x, y), n) == ex + ey
    assert eval_expr(Sub(x, y), n) == ex - ey
    assert eval_expr(Mul(x, y), n) == ex * ey
    assert eval_expr(Neg(x), n) == -ex


@given(st.integers(-30, 30), st.integers(0, 30), st.integers(0, 30), st.integers(0, 30))
def test_range_monotone(lo, width, cut_lo, cut_hi):
    ident = parse_identity("T(n)^2 = T(n)*T(n) + 0*(-1)^n")
    hi = lo + width
    assert check_identity(ident, lo, hi).verdict == "holds"
    a = min(lo + cut_lo, hi)
    b = max(hi - cut_hi, a)
    assert check_identity(ident, a, b).verdict == "holds"
