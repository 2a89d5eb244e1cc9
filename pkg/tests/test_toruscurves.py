from math import gcd

import pytest

from qskein.expr import evaluate_text
from qskein.qtorus import A_Q, e_basis, q_commutator, z2_flip
from qskein.scalars import QQ_DIFF
from qskein.toruscurves import (Bracket, CurveDomainError, Leaf, bracket_count, chebyshev, curve_element,
                                curve_expression, det, evaluate_curve_expression, expression_to_text,
                                farey_parents, label_of, nesting_depth, render_curve_expression,
                                standard_assignment)

N = QQ_DIFF

# The (5,3) word exactly as printed, with the closed curve Y1 in place of the innermost arc.
PRINTED_53 = ("-[[Y3, [Y1, [Y2, Y1]_q^-1]_q]_q^-1, [Y1, [Y2, Y1]_q^-1]_q]_q"
              " / (q^2 - q^(-2))^6")
# The same word with its two top-level operands exchanged.
SWAPPED_53 = ("-[[Y1, [Y2, Y1]_q^-1]_q, [Y3, [Y1, [Y2, Y1]_q^-1]_q]_q^-1]_q"
              " / (q^2 - q^(-2))^6")


def test_chebyshev():
    assert chebyshev(0) == [2]
    assert chebyshev(1) == [0, 1]
    assert chebyshev(2) == [-2, 0, 1]
    assert chebyshev(3) == [0, -3, 0, 1]


def test_curve_element_examples():
    assert curve_element(1, 1) == e_basis(1, 1) + e_basis(-1, -1)
    assert curve_element(2, 0) == e_basis(2, 0) + e_basis(-2, 0)
    assert curve_element(-1, 0) == curve_element(1, 0)
    assert curve_element(4, 6) == curve_element(-4, -6)
    with pytest.raises(CurveDomainError):
        curve_element(0, 0)


def test_curve_elements_are_flip_invariant():
    for m in range(-4, 5):
        for l in range(-4, 5):
            if (m, l) != (0, 0):
                c = curve_element(m, l)
                assert z2_flip(c) == c


def test_farey_parents_examples():
    assert farey_parents(5, 3) == ((3, 2), (2, 1))
    assert farey_parents(3, 2) == ((2, 1), (1, 1))
    assert farey_parents(2, 1) == ((1, 1), (1, 0))
    with pytest.raises(CurveDomainError):
        farey_parents(4, 2)


def test_farey_parents_properties():
    for p in range(1, 13):
        for q in range(-12, 13):
            if gcd(p, q) != 1 or q == 0 or (p, q) in {(1, 1), (1, -1)}:
                continue
            (u, v), (w, z) = farey_parents(p, q)
            assert abs(det((u, v), (w, z))) == 1
            assert (u + w, v + z) == (p, q) or (u - w, v - z) == (p, q) or (w - u, z - v) == (p, q)
            size = abs(p) + abs(q)
            assert abs(u) + abs(v) < size and abs(w) + abs(z) < size
            if p >= 3 and 0 < q < p:
                assert 0 < w < p


def test_bp_presentation_in_torus_model():
    x, y, z = curve_element(1, 0), curve_element(0, 1), curve_element(1, 1)
    assert q_commutator(x, y) == z.scale(N)
    assert q_commutator(y, z) == x.scale(N)
    assert q_commutator(z, x) == y.scale(N)


def test_small_expressions():
    assert curve_expression(1, 1) == Leaf("Y3")
    e = curve_expression(2, 1)
    assert e == Bracket(Leaf("Y1"), Leaf("Y3"))
    assert evaluate_curve_expression(e) == e_basis(2, 1) + e_basis(-2, -1)
    assert evaluate_curve_expression(Leaf("Y1")) == standard_assignment()["Y1"]


@pytest.mark.parametrize("style", ["compact", "paper"])
def test_oracle_all_small_slopes(style):
    for p in range(-8, 9):
        for q in range(-8, 9):
            if (p, q) == (0, 0) or gcd(p, q) != 1:
                continue
            e = curve_expression(p, q, style=style)
            assert evaluate_curve_expression(e) == curve_element(p, q), (p, q)
            assert label_of(e) in {(p, q), (-p, -q)}


def test_non_primitive_rejected():
    with pytest.raises(CurveDomainError):
        curve_expression(4, 6)


def test_53_rendering_frozen():
    paper = curve_expression(5, 3, style="paper")
    compact = curve_expression(5, 3)
    assert bracket_count(paper) == 6
    assert nesting_depth(paper) == 4
    assert render_curve_expression(paper) == (
        "-1/(q^2 - q^(-2))^6 [[Y1, [Y2, Y1]_q^-1]_q, [Y3, [Y1, [Y2, Y1]_q^-1]_q]_q^-1]_q")
    assert render_curve_expression(compact) == "-1/(q^2 - q^(-2))^4 [[Y1, Y3]_q, [Y3, [Y1, Y3]_q]_q^-1]_q"


def test_printed_53_word_gives_the_11_curve():
    env = standard_assignment()
    assert evaluate_text(PRINTED_53, env) == curve_element(1, 1)


def test_swapped_53_word_gives_the_53_curve():
    env = standard_assignment()
    value = evaluate_text(SWAPPED_53, env)
    assert value == curve_element(5, 3)
    assert value == e_basis(5, 3) + e_basis(-5, -3)
    assert value == evaluate_curve_expression(curve_expression(5, 3, style="paper"))


def test_expression_text_round_trips_through_parser():
    env = standard_assignment()
    for p, q in [(2, 1), (3, -2), (5, 3), (7, 4), (1, -1)]:
        for style in ("compact", "paper"):
            e = curve_expression(p, q, style=style)
            assert evaluate_text(expression_to_text(e), env) == curve_element(p, q)


def test_evaluation_with_other_assignment():
    # exact division is checked at every bracket: a wrong assignment must raise
    bad = dict(standard_assignment(), Y3=A_Q.gen(1))
    with pytest.raises(ArithmeticError):
        evaluate_curve_expression(curve_expression(5, 3), bad)
