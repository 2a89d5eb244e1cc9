"""The rank-6 quantum torus model of the stated skein algebra of the punctured torus.

Everything here is data plus a handful of checks: the 6x6 commutation
matrix, the images of the three closed curves y1, y2, y3 and the boundary
curve, the images of a few stated arcs, the full-twist shift operators and
the catalog of sixteen X1/X2 commutation relations.
"""

from __future__ import annotations

import time
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Dict, List, Optional, Tuple

from .qtorus import QuantumTorus, TorusElement, q_commutator, render_torus_element
from .scalars import ONE, QQ_DIFF, QScalar, q_pow, InexactDivisionError

Q6 = (
    (0, 2, 2, -2, 0, -4),
    (-2, 0, -2, -4, 0, -4),
    (-2, 2, 0, -2, 0, -4),
    (2, 4, 2, 0, 0, -4),
    (0, 0, 0, 0, 0, 0),
    (4, 4, 4, 4, 0, 0),
)

T6 = QuantumTorus(Q6)


def mono(coeff_q, *exps) -> TorusElement:
    """q^coeff_q * x^exps in T^6; ``coeff_q`` may be a half integer."""
    return T6.monomial(exps, q_pow(coeff_q))


h = Fraction(1, 2)

IMG_Y1 = (mono(-1, 0, 1, -1, 0, 0, 0) + mono(-1, 0, -1, 1, 0, 0, 0)
          + mono(1, 2, 0, -1, -1, 0, 0) + mono(2, 1, -1, 0, -1, 1, 0))
IMG_Y2 = mono(1, 1, 0, -1, 0, 0, 0) + mono(1, -1, 0, 1, 0, 0, 0) + mono(-1, -1, 1, -1, 1, 0, 0)
IMG_Y3 = (mono(-1, 1, 0, 0, -1, 0, 0) + mono(-1, -1, 0, 0, 1, 0, 0)
          + mono(-1, -1, -1, 2, 0, 0, 0) + mono(0, 0, -1, 1, -1, 1, 0))
IMG_BOUNDARY = (mono(-2, 0, -1, 0, 1, 0, 0) + mono(-2, 0, 1, 0, -1, 0, 0)
                + mono(1, -1, 0, 1, -1, 1, 0) + mono(1, 1, 0, -1, -1, 1, 0)
                + mono(-3, -1, 0, -1, 1, 1, 0) + mono(3, 1, -1, -1, 0, 1, 0)
                + mono(-1, -1, 1, -1, 0, 1, 0) + mono(-1, -1, -1, 1, 0, 1, 0)
                + mono(2, 0, -1, 0, -1, 2, 0))

IMG_X1_0_PP = mono(h, 1, 0, 0, 0, 0, 0)
IMG_X2_0_PP = mono(h, 0, 1, 0, 0, 0, 0)
IMG_X3_0_PP = mono(h, 0, 0, 1, 0, 0, 0)
IMG_BOUNDARY_ARC_PP = mono(h, 0, 0, 0, 0, 1, 0)
IMG_X1_HALF_PP = (mono(-h, 0, 0, -1, 1, 1, 0) + mono(11 * h, 2, -1, -1, 0, 1, 0)
                  + mono(h, 1, -1, 0, 1, 0, 0))
IMG_X1_MINUSHALF_PP = mono(-7 * h, 1, 1, 0, -1, 0, 0) + mono(-h, 0, 0, 1, -1, 1, 0)


@dataclass(frozen=True)
class EmbeddingContext:
    torus6: QuantumTorus = T6
    img_y1: TorusElement = IMG_Y1
    img_y2: TorusElement = IMG_Y2
    img_y3: TorusElement = IMG_Y3
    img_boundary: TorusElement = IMG_BOUNDARY
    img_X1_0_pp: TorusElement = IMG_X1_0_PP
    img_X2_0_pp: TorusElement = IMG_X2_0_PP
    img_X3_0_pp: TorusElement = IMG_X3_0_PP
    img_boundary_arc_pp: TorusElement = IMG_BOUNDARY_ARC_PP
    img_X1_half_pp: TorusElement = IMG_X1_HALF_PP
    img_X1_minushalf_pp: TorusElement = IMG_X1_MINUSHALF_PP

    def constants(self) -> Dict[str, TorusElement]:
        return {
            "y1": self.img_y1, "y2": self.img_y2, "y3": self.img_y3,
            "boundary": self.img_boundary,
            "X1_0_pp": self.img_X1_0_pp, "X2_0_pp": self.img_X2_0_pp, "X3_0_pp": self.img_X3_0_pp,
            "boundary_arc_pp": self.img_boundary_arc_pp,
            "X1_half_pp": self.img_X1_half_pp, "X1_minushalf_pp": self.img_X1_minushalf_pp,
        }


CTX = EmbeddingContext()


# ---------------------------------------------------------------------------
# Report plumbing shared by every verification suite
# ---------------------------------------------------------------------------


@dataclass
class Check:
    id: str
    anchor: str
    passed: bool
    residual: Optional[str] = None
    acceptance: bool = True
    note: Optional[str] = None

    def as_dict(self):
        d = {"id": self.id, "anchor": self.anchor, "pass": self.passed, "residual": self.residual}
        if not self.acceptance:
            d["exploratory"] = True
        if self.note:
            d["note"] = self.note
        return d


def equality_check(cid: str, anchor: str, lhs, rhs, render=str, acceptance: bool = True, note=None) -> Check:
    diff = lhs - rhs
    ok = diff.is_zero()
    return Check(cid, anchor, ok, None if ok else render(diff), acceptance, note)


def _norm_bracket(a, b) -> TorusElement:
    return q_commutator(a, b).divexact(QQ_DIFF)


# ---------------------------------------------------------------------------
# Checks
# ---------------------------------------------------------------------------


def verify_bp_in_embedding(ctx: EmbeddingContext = CTX) -> List[Check]:
    ys = [ctx.img_y1, ctx.img_y2, ctx.img_y3]
    out = []
    for i in range(3):
        a, b, c = ys[i], ys[(i + 1) % 3], ys[(i + 2) % 3]
        out.append(equality_check(
            f"embedding.bracket_y{i + 1}_y{(i + 1) % 3 + 1}",
            "cyclic normalized q-commutators of the curve images y1, y2, y3",
            q_commutator(a, b), c * QQ_DIFF, render_torus_element))
    return out


def boundary_from_curves(ctx: EmbeddingContext = CTX) -> TorusElement:
    y1, y2, y3 = ctx.img_y1, ctx.img_y2, ctx.img_y3
    return (q_pow(1) * (y1 * y2 * y3) - q_pow(2) * (y1 * y1) - q_pow(-2) * (y2 * y2)
            - q_pow(2) * (y3 * y3) + (q_pow(2) + q_pow(-2)))


def verify_boundary_formula(ctx: EmbeddingContext = CTX) -> List[Check]:
    rhs = boundary_from_curves(ctx)
    out = [equality_check("embedding.boundary_cubic", "boundary curve as the cubic in y1, y2, y3",
                          ctx.img_boundary, rhs, render_torus_element)]
    n = len(ctx.img_boundary.terms)
    out.append(Check("embedding.boundary_nine_terms", "boundary curve image has nine monomials",
                     n == 9, None if n == 9 else f"{n} terms"))
    # classical shadow: set q = 1 on both sides
    a = ctx.img_boundary.map_coefficients(lambda c: c.subs(q=1))
    b = rhs.map_coefficients(lambda c: c.subs(q=1))
    out.append(equality_check("embedding.boundary_classical", "boundary formula at q = 1",
                              a, b, render_torus_element))
    return out


def twist_shift_up(a: TorusElement, ctx: EmbeddingContext = CTX) -> TorusElement:
    """[Y2, [Y1, [Y3, a]_q]_q]_q / (q^2 - q^-2)^3 (full twist of an X_1 arc)."""
    inner = q_commutator(ctx.img_y3, a)
    mid = q_commutator(ctx.img_y1, inner)
    return q_commutator(ctx.img_y2, mid).divexact(QQ_DIFF ** 3)


def twist_shift_down(a: TorusElement, ctx: EmbeddingContext = CTX) -> TorusElement:
    """[[[a, Y2]_q, Y1]_q, Y3]_q / (q^2 - q^-2)^3."""
    inner = q_commutator(a, ctx.img_y2)
    mid = q_commutator(inner, ctx.img_y1)
    return q_commutator(mid, ctx.img_y3).divexact(QQ_DIFF ** 3)


def verify_twist_shifts(ctx: EmbeddingContext = CTX) -> List[Check]:
    out = []
    up = twist_shift_up(ctx.img_X1_minushalf_pp, ctx)
    out.append(equality_check("embedding.shift_up_minus_half", "full twist takes X_{1,-1/2}(+,+) to X_{1,1/2}(+,+)",
                              up, ctx.img_X1_half_pp, render_torus_element))
    # Companion facts: one application of either operator moves the arc
    # index by one half in this model.
    out.append(equality_check("embedding.shift_up_zero", "shift up takes X_{1,0}(+,+) to X_{1,1/2}(+,+)",
                              twist_shift_up(ctx.img_X1_0_pp, ctx), ctx.img_X1_half_pp, render_torus_element,
                              acceptance=False))
    out.append(equality_check("embedding.shift_down_zero", "shift down takes X_{1,0}(+,+) to X_{1,-1/2}(+,+)",
                              twist_shift_down(ctx.img_X1_0_pp, ctx), ctx.img_X1_minushalf_pp, render_torus_element,
                              acceptance=False))
    try:
        up0 = twist_shift_up(ctx.img_X1_0_pp, ctx)
        back = twist_shift_down(up0, ctx)
        out.append(equality_check("embedding.shift_round_trip", "shift down after shift up fixes q^(1/2) x1",
                                  back, ctx.img_X1_0_pp, render_torus_element))
    except InexactDivisionError as exc:
        out.append(Check("embedding.shift_round_trip", "shift down after shift up fixes q^(1/2) x1", False, str(exc)))
    return out


def shift_orbit(a: TorusElement, n: int, ctx: EmbeddingContext = CTX) -> TorusElement:
    for _ in range(abs(n)):
        a = twist_shift_up(a, ctx) if n > 0 else twist_shift_down(a, ctx)
    return a


def x3_from_commutator(ctx: EmbeddingContext = CTX) -> List[Check]:
    lhs = _norm_bracket(ctx.img_X1_0_pp, ctx.img_y2)
    return [equality_check("embedding.x3_normalization", "X_{3,0}(+,+) as a normalized bracket of X_{1,0}(+,+) with y2",
                           lhs, ctx.img_X3_0_pp, render_torus_element)]


def boundary_arc_check(ctx: EmbeddingContext = CTX) -> List[Check]:
    """Exploratory: q Y1 Y2 X3 - q^2 X1 Y1 - q^-2 X2 Y2 - q^2 X3 Y3 against q^(1/2) x5 for the (+,+) state."""
    y1, y2, y3 = ctx.img_y1, ctx.img_y2, ctx.img_y3
    x1, x2, x3 = ctx.img_X1_0_pp, ctx.img_X2_0_pp, ctx.img_X3_0_pp
    lhs = (q_pow(1) * (y1 * y2 * x3) - q_pow(2) * (x1 * y1) - q_pow(-2) * (x2 * y2) - q_pow(2) * (x3 * y3))
    return [equality_check("embedding.boundary_arc_pp", "boundary arc formula with C_{+}^{+} = 0 against q^(1/2) x5",
                           lhs, ctx.img_boundary_arc_pp, render_torus_element, acceptance=False)]


def casimir_in_embedding(ctx: EmbeddingContext = CTX) -> TorusElement:
    a, b, c = ctx.img_y1, ctx.img_y2, ctx.img_y3
    return q_pow(2) * (a * a) + q_pow(-2) * (b * b) + q_pow(2) * (c * c) - q_pow(1) * (a * b * c)


def verify_centrality(ctx: EmbeddingContext = CTX) -> List[Check]:
    out = []
    cas = casimir_in_embedding(ctx)
    for i, y in enumerate((ctx.img_y1, ctx.img_y2, ctx.img_y3), start=1):
        out.append(equality_check(f"embedding.casimir_commutes_y{i}", "Casimir combination is central",
                                  cas * y, y * cas, render_torus_element))
        out.append(equality_check(f"embedding.boundary_commutes_y{i}", "boundary curve is central",
                                  ctx.img_boundary * y, y * ctx.img_boundary, render_torus_element))
    return out


# ---------------------------------------------------------------------------
# The sixteen X1/X2 relations
# ---------------------------------------------------------------------------

STATES = ("++", "+-", "-+", "--")


@dataclass(frozen=True)
class Sym:
    """A generator symbol: kind in X1, X2, X3, X3t, Y1, Y3t; shift is 0 or -1/2 relative to k."""
    kind: str
    state: str = ""
    shift: Fraction = Fraction(0)

    def render(self) -> str:
        sub = {"X1": "X_{1,k", "X2": "X_{2,k", "X3": "X_{3,k", "X3t": "~X_{3,k"}.get(self.kind)
        if sub is None:
            return {"Y1": "Y_1", "Y3t": "~Y_3"}[self.kind]
        sh = "" if self.shift == 0 else f"-{abs(self.shift)}"
        return f"{sub}{sh}}}({self.state[0]},{self.state[1]})"


Term = Tuple[QScalar, Tuple[Sym, ...]]


@dataclass
class RelationEntry:
    index: int
    lhs: List[Term]
    rhs: List[Term]
    verifiable: bool = False
    note: str = ""

    def symbols(self):
        return {s for side in (self.lhs, self.rhs) for _, w in side for s in w}

    def render(self) -> str:
        return f"{_render_side(self.lhs)} = {_render_side(self.rhs)}"


def _render_side(side: List[Term]) -> str:
    parts = []
    for c, w in side:
        word = " ".join(s.render() for s in w)
        parts.append(f"({c}) {word}")
    return " + ".join(parts) if parts else "0"


def _X1(s):
    return Sym("X1", s)


def _X2(s):
    return Sym("X2", s)


def _X3(s):
    return Sym("X3", s)


def _X3t(s, half=False):
    return Sym("X3t", s, Fraction(-1, 2) if half else Fraction(0))


_Y1 = Sym("Y1")
_Y3t = Sym("Y3t")


def relation_catalog() -> List[RelationEntry]:
    """All sixteen relations X_{1,k}(a) X_{2,k}(b) = ..., transcribed term by term."""
    N = QQ_DIFF
    qp = q_pow
    rhs = {
        ("++", "++"): [(qp(2), (_X2("++"), _X1("++")))],
        ("++", "+-"): [(qp(-2), (_X2("+-"), _X1("++"))), (qp(Fraction(-3, 2)) * N, (_X3("++"),))],
        ("++", "-+"): [(qp(-2), (_X2("-+"), _X1("++")))],
        ("++", "--"): [(qp(-6), (_X2("--"), _X1("++"))), (qp(Fraction(-3, 2)) * N, (_X3("-+"),))],
        ("+-", "++"): [(qp(6), (_X2("++"), _X1("+-"))),
                       (-qp(Fraction(7, 2)) * N, (_X2("++"), _Y1)),
                       (-qp(Fraction(5, 2)) * N * qp(2), (_X3t("++"),)),
                       (-qp(Fraction(5, 2)) * N * qp(-2), (_X3t("++", True),))],
        ("+-", "+-"): [(qp(2), (_X2("+-"), _X1("+-"))),
                       (N, (_Y3t,)),
                       (-qp(Fraction(-1, 2)) * N * qp(1), (_X3t("+-"),)),
                       (-qp(Fraction(-1, 2)) * N, (_X2("+-"), _Y1)),
                       (qp(Fraction(-1, 2)) * N * qp(-1), (_X3("+-"),))],
        ("+-", "-+"): [(qp(2), (_X2("-+"), _X1("+-"))), (-qp(Fraction(-1, 2)) * N, (_X3t("-+", True),))],
        ("+-", "--"): [(qp(-2), (_X2("--"), _X1("+-"))), (qp(Fraction(-3, 2)) * N, (_X3("--"),))],
        ("-+", "++"): [(qp(6), (_X2("++"), _X1("-+"))), (-qp(Fraction(5, 2)) * N, (_X3t("++", True),))],
        ("-+", "+-"): [(qp(2), (_X2("+-"), _X1("-+"))), (-qp(Fraction(1, 2)) * N, (_X3t("-+"),))],
        ("-+", "-+"): [(qp(2), (_X2("-+"), _X1("-+")))],
        ("-+", "--"): [(qp(-2), (_X2("--"), _X1("-+")))],
        ("--", "++"): [(qp(10), (_X2("++"), _X1("--"))),
                       (-qp(Fraction(13, 2)) * N * qp(4), (_X3("-+"),)),
                       (-qp(Fraction(13, 2)) * N * qp(-4), (_X3t("+-"),)),
                       (-qp(Fraction(11, 2)) * N * qp(3), (_X3t("-+", True),)),
                       (-qp(Fraction(11, 2)) * N * qp(-3), (_X3t("+-", True),)),
                       (-qp(7) * N * (qp(3) + qp(-3)), (_Y3t,))],
        ("--", "+-"): [(qp(6), (_X2("+-"), _X1("--"))),
                       (-qp(Fraction(5, 2)) * N * qp(1), (_X2("--"), _Y1)),
                       (-qp(Fraction(5, 2)) * N * (qp(2) + qp(-2)), (_X3t("--"),))],
        ("--", "-+"): [(qp(6), (_X2("-+"), _X1("--"))), (-qp(Fraction(7, 2)) * N, (_X3t("--", True),))],
        ("--", "--"): [(qp(2), (_X2("--"), _X1("--")))],
    }
    out = []
    for i, a in enumerate(STATES):
        for j, b in enumerate(STATES):
            idx = 4 * i + j + 1
            entry = RelationEntry(idx, [(ONE, (_X1(a), _X2(b)))], rhs[(a, b)])
            entry.verifiable = all(_t6_image(s) is not None for s in entry.symbols())
            if not entry.verifiable:
                entry.note = "not verifiable in this model: needs images of mixed-state or tilde generators"
            out.append(entry)
    return out


def _t6_image(s: Sym, ctx: EmbeddingContext = CTX) -> Optional[TorusElement]:
    if s.shift != 0:
        return None
    if s.kind == "Y1":
        return ctx.img_y1
    if s.state != "++":
        return None
    return {"X1": ctx.img_X1_0_pp, "X2": ctx.img_X2_0_pp, "X3": ctx.img_X3_0_pp}.get(s.kind)


def _eval_side(side: List[Term], ctx: EmbeddingContext) -> TorusElement:
    total = ctx.torus6.zero()
    for c, word in side:
        v = ctx.torus6.scalar(c)
        for s in word:
            v = v * _t6_image(s, ctx)
        total = total + v
    return total


def verify_relations(ctx: EmbeddingContext = CTX) -> List[Check]:
    out = []
    catalog = relation_catalog()
    flagged = 0
    for r in catalog:
        cid = f"embedding.relation_{r.index:02d}"
        if r.verifiable:
            out.append(equality_check(cid, "X1/X2 commutation relation at k = 0 in the rank-6 torus",
                                      _eval_side(r.lhs, ctx), _eval_side(r.rhs, ctx), render_torus_element))
        else:
            flagged += 1
    out.append(Check("embedding.relation_catalog_size", "sixteen X1/X2 commutation relations",
                     len(catalog) == 16, None if len(catalog) == 16 else str(len(catalog)),
                     note=f"{flagged} relations flagged as not verifiable in the rank-6 model"))
    return out


def embedding_suite(ctx: EmbeddingContext = CTX, include_exploratory: bool = True) -> List[Check]:
    checks = []
    checks += verify_bp_in_embedding(ctx)
    checks += verify_boundary_formula(ctx)
    checks += verify_twist_shifts(ctx)
    checks += x3_from_commutator(ctx)
    checks += verify_relations(ctx)
    checks += verify_centrality(ctx)
    if include_exploratory:
        checks += boundary_arc_check(ctx)
    return checks
