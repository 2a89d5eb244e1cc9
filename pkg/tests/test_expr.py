from fractions import Fraction

import pytest

from qskein.expr import (ExprSyntaxError, UnknownSymbolError, evaluate_text, names_in, parse_expression,
                         tokenize)
from qskein.qtorus import A_Q
from qskein.scalars import QFraction, q_pow, render_fraction, t_pow
from qskein.toruscurves import curve_element, standard_assignment


def test_monomial_node():
    assert parse_expression("q^(1/2)*x1") == ("mul", ("pow", ("name", "q"), Fraction(1, 2)), ("name", "x1"))


def test_bracket_nodes():
    assert parse_expression("[Y1, Y3]_q") == ("bracket", ("name", "Y1"), ("name", "Y3"), False)
    assert parse_expression("[a, b]_q^-1") == ("bracket", ("name", "a"), ("name", "b"), True)
    assert parse_expression("[a, b]_q^1")[3] is False


def test_juxtaposition_is_a_product():
    assert parse_expression("T X T") == ("mul", ("mul", ("name", "T"), ("name", "X")), ("name", "T"))
    assert parse_expression("T*X*T") == parse_expression("T X T")
    assert parse_expression("2 x^-1") == ("mul", ("num", Fraction(2)), ("pow", ("name", "x"), Fraction(-1)))


def test_precedence():
    assert parse_expression("-a^2") == ("neg", ("pow", ("name", "a"), Fraction(2)))
    assert parse_expression("a + b c") == ("add", ("name", "a"), ("mul", ("name", "b"), ("name", "c")))
    assert parse_expression("a - b - c") == ("sub", ("sub", ("name", "a"), ("name", "b")), ("name", "c"))
    assert parse_expression("x^(-3/2)")[2] == Fraction(-3, 2)


@pytest.mark.parametrize("src,pos", [
    ("x +", 3),
    ("(x", 2),
    ("x # y", 2),
    ("[x, y]_t", 7),
    ("x^y", 2),
    (")", 0),
    ("[x y]_q", 4),
    ("x^(1/0)", 5),
    ("[a, b]_q^2", 9),
])
def test_syntax_errors_carry_positions(src, pos):
    with pytest.raises(ExprSyntaxError) as info:
        parse_expression(src)
    assert info.value.pos == pos
    assert f"position {pos}" in str(info.value)


def test_tokens():
    assert [t[:2] for t in tokenize("x1^(1/2)")] == [
        ("name", "x1"), ("op", "^"), ("op", "("), ("num", "1"), ("op", "/"), ("num", "2"), ("op", ")"), ("end", "")]


def test_names():
    assert names_in(parse_expression("q^2 x1 [Y1, t Y2]_q + 3")) == {"q", "x1", "Y1", "t", "Y2"}


def test_scalar_evaluation():
    assert evaluate_text("q^(1/2) q^(1/2)") == q_pow(1)
    assert evaluate_text("(q^2 - q^-2)/(q - q^-1)") == q_pow(1) + q_pow(-1)
    f = evaluate_text("1/(t + t^-1)")
    assert isinstance(f, QFraction) and render_fraction(f) == "(t)/(1 + t^2)"
    assert evaluate_text("6/4") == Fraction(3, 2)
    assert evaluate_text("(t + 1)^-1 (t + 1)") == 1
    assert evaluate_text("t^-2") == t_pow(-2)


def test_unknown_symbol():
    with pytest.raises(UnknownSymbolError) as info:
        evaluate_text("x + zz", {"x": A_Q.gen(1)})
    assert "zz" in str(info.value)


def test_evaluation_errors():
    X = A_Q.gen(1)
    with pytest.raises(ValueError):
        evaluate_text("X^(1/2)", {"X": X})
    with pytest.raises(TypeError):
        evaluate_text("1/X", {"X": X})
    with pytest.raises(ZeroDivisionError):
        evaluate_text("X/(q - q)", {"X": X})


def test_bracket_evaluation():
    env = standard_assignment()
    val = evaluate_text("[Y1, Y2]_q / (q^2 - q^(-2))", env)
    assert val == curve_element(1, 1)
    inv = evaluate_text("[Y1, Y2]_q^-1", env)
    assert inv == evaluate_text("q^-1 Y1 Y2 - q Y2 Y1", env)
