from fractions import Fraction

import pytest

from qskein.expr import evaluate_text
from qskein.qtorus import q_commutator
from qskein.scalars import InexactDivisionError, QQ_DIFF, q_pow
from qskein.statedtorus import (CTX, Q6, STATES, boundary_arc_check, boundary_from_curves,
                                casimir_in_embedding, embedding_suite, relation_catalog, shift_orbit,
                                twist_shift_down, twist_shift_up, verify_relations)

T6 = CTX.torus6
ENV = {f"x{i}": T6.gen(i) for i in range(1, 7)}

# Printed monomials, transcribed independently of the module as parser input.
PRINTED = {
    "y1": "q^-1 x2 x3^-1 + q^-1 x2^-1 x3 + q x1^2 x3^-1 x4^-1 + q^2 x1 x2^-1 x4^-1 x5",
    "y2": "q x1 x3^-1 + q x1^-1 x3 + q^-1 x1^-1 x2 x3^-1 x4",
    "y3": "q^-1 x1 x4^-1 + q^-1 x1^-1 x4 + q^-1 x1^-1 x2^-1 x3^2 + x2^-1 x3 x4^-1 x5",
    "boundary": ("q^-2 x2^-1 x4 + q^-2 x2 x4^-1 + q x1^-1 x3 x4^-1 x5 + q x1 x3^-1 x4^-1 x5"
                 " + q^-3 x1^-1 x3^-1 x4 x5 + q^3 x1 x2^-1 x3^-1 x5 + q^-1 x1^-1 x2 x3^-1 x5"
                 " + q^-1 x1^-1 x2^-1 x3 x5 + q^2 x2^-1 x4^-1 x5^2"),
    "X1_half_pp": "q^(-1/2) x3^-1 x4 x5 + q^(11/2) x1^2 x2^-1 x3^-1 x5 + q^(1/2) x1 x2^-1 x4",
    "X1_minushalf_pp": "q^(-7/2) x1 x2 x4^-1 + q^(-1/2) x3 x4^-1 x5",
}


def printed(name):
    return evaluate_text(PRINTED[name], ENV)


def test_matrix_rows_as_printed():
    assert Q6[0] == (0, 2, 2, -2, 0, -4)
    assert Q6[3] == (2, 4, 2, 0, 0, -4)
    assert Q6[5] == (4, 4, 4, 4, 0, 0)
    for i in range(6):
        for j in range(6):
            assert Q6[i][j] == -Q6[j][i]


@pytest.mark.parametrize("name", sorted(PRINTED))
def test_constants_match_printed_lists(name):
    assert CTX.constants()[name] == printed(name)


def test_arc_normalizations():
    for i, name in enumerate(("X1_0_pp", "X2_0_pp", "X3_0_pp", "boundary_arc_pp"), start=1):
        gen = T6.gen(i if i < 4 else 5)
        assert CTX.constants()[name] == gen * q_pow(Fraction(1, 2))


def test_constants_have_no_t_and_no_denominators():
    for c in CTX.constants().values():
        for coeff in c.terms.values():
            for (a2, b), v in coeff.items():
                assert b == 0
                assert Fraction(v).denominator == 1


def test_cyclic_brackets():
    y1, y2, y3 = CTX.img_y1, CTX.img_y2, CTX.img_y3
    assert q_commutator(y1, y2) == y3 * QQ_DIFF
    assert q_commutator(y2, y3) == y1 * QQ_DIFF
    assert q_commutator(y3, y1) == y2 * QQ_DIFF


def test_boundary_formula():
    assert boundary_from_curves() == printed("boundary")
    assert len(CTX.img_boundary.terms) == 9


def test_centrality():
    cas = casimir_in_embedding()
    for y in (CTX.img_y1, CTX.img_y2, CTX.img_y3):
        assert cas * y == y * cas
        assert CTX.img_boundary * y == y * CTX.img_boundary


def test_x3_normalization_and_term_by_term():
    x1 = CTX.img_X1_0_pp
    assert q_commutator(x1, CTX.img_y2).divexact(QQ_DIFF) == CTX.img_X3_0_pp
    # only the x1^-1 x3 term of y2 survives the bracket
    dead = [evaluate_text("q x1 x3^-1", ENV), evaluate_text("q^-1 x1^-1 x2 x3^-1 x4", ENV)]
    for term in dead:
        assert q_commutator(x1, term).is_zero()
    live = evaluate_text("q x1^-1 x3", ENV)
    assert q_commutator(x1, live) == CTX.img_X3_0_pp * QQ_DIFF


def test_shift_up_of_minus_half_arc_as_stated():
    # The stated round trip: one full twist from X_{1,-1/2}(+,+) to X_{1,1/2}(+,+).
    # With the printed constants this fails (the operator moves the arc by a half step);
    # see the half-step test below.
    assert twist_shift_up(CTX.img_X1_minushalf_pp) == CTX.img_X1_half_pp


def test_shift_operators_move_by_half_steps():
    assert twist_shift_up(CTX.img_X1_minushalf_pp) == CTX.img_X1_0_pp
    assert twist_shift_up(CTX.img_X1_0_pp) == CTX.img_X1_half_pp
    assert twist_shift_down(CTX.img_X1_0_pp) == CTX.img_X1_minushalf_pp
    assert twist_shift_down(CTX.img_X1_half_pp) == CTX.img_X1_0_pp


def test_shift_round_trips_on_orbit():
    x = CTX.img_X1_0_pp
    for n in range(-2, 3):
        a = shift_orbit(x, n)
        assert twist_shift_down(twist_shift_up(a)) == a
        assert twist_shift_up(twist_shift_down(a)) == a


def test_shift_inexact_division_raises():
    with pytest.raises(InexactDivisionError):
        twist_shift_up(T6.gen(6))


def test_relation_catalog():
    cat = relation_catalog()
    assert len(cat) == 16
    first = cat[0]
    assert first.verifiable
    assert sum(r.verifiable for r in cat) == 1
    checks = verify_relations()
    assert all(c.passed for c in checks)
    assert "15 relations flagged" in checks[-1].note
    assert T6.gen(1) * T6.gen(2) == (T6.gen(2) * T6.gen(1)) * q_pow(2)
    assert len(STATES) == 4


def test_boundary_arc_exploratory():
    (c,) = boundary_arc_check()
    assert c.passed and not c.acceptance


def test_embedding_suite_outcome():
    checks = {c.id: c for c in embedding_suite()}
    failing = sorted(k for k, c in checks.items() if not c.passed)
    assert failing == ["embedding.shift_up_minus_half"]
