import math
from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from iatm.errors import DomainError, ParseDomainError, ParseError
from iatm.expr import ZERO, evaluate, sin_pi, structurally_equal
from iatm.parser import ParseEnvironment, SourceText, parse_expression, parse_problem, parse_rational
from iatm.problems import BUILTIN_DOCUMENTS, builtin_problem, load_problem, problem_document

from .conftest import expressions


def test_initial_condition_text():
    assert structurally_equal(parse_expression("sin(pi*x)"), sin_pi(1), 0.0)
    assert parse_expression("0") == ZERO


def test_exact_solution_text_evaluates():
    e = parse_expression("t^3 * sin(pi*x)")
    assert abs(evaluate(e, 0.5, 0.09) - 0.000729) < 1e-15


def test_alpha_substitution_keeps_exponent_rational():
    e = parse_expression("t^(5/2-alpha)", ParseEnvironment(alpha=Fraction(7, 10)))
    assert e.texponents() == {Fraction(9, 5)}


def test_gamma_of_constants():
    e = parse_expression("gamma(4-alpha)*t", ParseEnvironment(alpha=Fraction(1, 2)))
    assert abs(e.terms[0].coefficient - math.gamma(3.5)) < 1e-13


def test_division_and_unary_minus():
    e = parse_expression("-(t^2)/2 + x/4")
    assert abs(evaluate(e, 1.0, 1.0) - (-0.5 + 0.25)) < 1e-15


def test_integer_power_of_polynomial():
    e = parse_expression("(1-x)^2")
    assert abs(evaluate(e, 0.3, 0) - 0.49) < 1e-15


def test_implicit_harmonic_forms():
    assert structurally_equal(parse_expression("sin(2*pi*x)"), parse_expression("sin(pi*2*x)"), 1e-15)
    assert structurally_equal(parse_expression("cos(x*pi*3)"), parse_expression("cos(3*pi*x)"), 1e-15)


@pytest.mark.parametrize(
    "text",
    ["sin(x)", "sin(0.5*pi*x)", "x/x", "t^(x)", "t^(pi)", "t^(-1)", "gamma(x)", "1/0", "(-2)^(1/2)"],
)
def test_domain_errors(text):
    with pytest.raises(ParseDomainError) as info:
        parse_expression(text)
    assert isinstance(info.value, DomainError)
    assert info.value.column >= 1


@pytest.mark.parametrize(
    "text,column",
    [("1 +", 4), ("sin(pi*x", 9), ("2 $ 3", 3), ("foo", 1), ("(", 2), ("", 1), ("x y", 3)],
)
def test_syntax_errors_carry_position(text, column):
    with pytest.raises(ParseError) as info:
        parse_expression(text)
    assert info.value.line == 1 and info.value.column == column


def test_error_position_on_later_line():
    doc = "alpha = 1\ninitial = 0\nsource = t +* 2\n"
    with pytest.raises(ParseError) as info:
        parse_problem(SourceText(doc, origin="doc"))
    assert info.value.line == 3
    assert str(info.value).startswith("doc[source]:3:")


def test_nesting_limit():
    with pytest.raises(ParseError):
        parse_expression("(" * 5000 + "x" + ")" * 5000)


@given(expressions(max_terms=5))
def test_round_trip(e):
    assert structurally_equal(parse_expression(str(e)), e, 1e-12)


@given(expressions(max_terms=5))
def test_parse_is_deterministic(e):
    text = str(e)
    assert parse_expression(text) == parse_expression(text)


_ALPHABET = st.sampled_from(list("0123456789.+-*/^() xtpiαsncogame\n\t$e"))


@settings(max_examples=300)
@given(st.one_of(st.text(max_size=200), st.lists(_ALPHABET, max_size=10_000).map("".join)))
def test_fuzz_total(text):
    try:
        parse_expression(text)
    except ParseError as exc:
        assert exc.line >= 1 and exc.column >= 1
    except DomainError:
        pytest.fail("domain errors from text must carry a position")


def test_parse_rational():
    assert parse_rational("7/10") == Fraction(7, 10)
    assert parse_rational(" 0.7 ") == Fraction(7, 10)
    with pytest.raises(ValueError):
        parse_rational("pi")


# -- problem documents ---------------------------------------------------------


def test_builtin_p1_document():
    p = builtin_problem("p1", Fraction(1, 2))
    assert p.alpha == Fraction(1, 2)
    assert structurally_equal(p.initial, sin_pi(1), 0.0)
    assert p.nonlinearity.name == "advection"


def test_builtin_p2_zero_initial():
    assert builtin_problem("p2").initial == ZERO


def test_builtin_p3_exact_value():
    p = builtin_problem("p3")
    assert f"{evaluate(p.exact, 0.2, 0.001):.9f}" == "0.025600001"


def test_builtin_exact_at_time_zero():
    p = builtin_problem("p1")
    assert abs(evaluate(p.exact, 0.2, 0.0) - math.sin(0.2 * math.pi)) < 1e-15


def test_unknown_builtin():
    with pytest.raises(KeyError):
        problem_document("p9")


def test_document_continuation_and_comments():
    doc = "# header\nalpha = 1/2   # comment\ninitial = x*\\\n  (1-x)\nsource = 0\n"
    p = parse_problem(doc)
    assert abs(evaluate(p.initial, 0.5, 0) - 0.25) < 1e-15 and p.source == ZERO and p.exact is None


@pytest.mark.parametrize(
    "doc,msg",
    [
        ("alpha = 1\ninitial = 0\n", "source"),
        ("alpha = 1\ninitial = 0\nsource = 0\nfoo = 1\n", "unknown key"),
        ("alpha = 1\nalpha = 1\ninitial = 0\nsource = 0\n", "duplicate"),
        ("alpha = 1\ninitial = t\nsource = 0\n", "depend on t"),
        ("alpha = 2\ninitial = 0\nsource = 0\n", "alpha"),
        ("alpha = 1\ninitial = 0\nsource = 0\nnonlinearity = burgers2\n", "nonlinearity"),
        ("alpha = 1\ninitial 0\nsource = 0\n", "key = value"),
    ],
)
def test_document_errors(doc, msg):
    with pytest.raises(ParseError, match=msg):
        parse_problem(doc)


def test_load_problem_from_file_with_alpha_override(tmp_path):
    path = tmp_path / "custom.txt"
    path.write_text(problem_document("p2", 1))
    p = load_problem(str(path), Fraction(4, 5))
    assert p.alpha == Fraction(4, 5)
    assert p == builtin_problem("p2", Fraction(4, 5))


@pytest.mark.parametrize("pid", sorted(BUILTIN_DOCUMENTS))
def test_builtin_documents_parse_for_several_alphas(pid):
    for a in (Fraction(1), Fraction(1, 2), Fraction(7, 10)):
        assert builtin_problem(pid, a).alpha == a


def test_source_coefficient_at_alpha_one():
    # the t^2 part of the p2 source is 6 t^2 / Gamma(3) sin(pi x)
    part = [term for term in builtin_problem("p2").source.terms if term.texponent == 2]
    assert len(part) == 1 and abs(part[0].coefficient - 3.0) < 1e-15
