"""Closed curves on the torus in the Frohman-Gelca model.

The skein algebra of the closed torus is identified with the Z/2-invariant
part of A_q by sending the curve (m, l)_T to e_{m,l} + e_{-m,-l}.  In that
model, for primitive a, b with d = det(a, b) = +-1,

    x_a x_b = q^d x_{a+b} + q^(-d) x_{a-b},

so a normalized q-commutator of two curves meeting once is a single curve.
That is the Dehn-twist step used to build every slope from the three
curves Y1 = (1,0), Y2 = (0,1), Y3 = (1,1).
"""

from __future__ import annotations

from dataclasses import dataclass
from math import gcd
from typing import Dict, List, Mapping, Tuple, Union

from .qtorus import A_Q, TorusElement, e_basis, q_commutator
from .scalars import QQ_DIFF

Label = Tuple[int, int]

LEAF_LABELS: Dict[str, Label] = {"Y1": (1, 0), "Y2": (0, 1), "Y3": (1, 1)}
_LEAF_BY_LABEL = {v: k for k, v in LEAF_LABELS.items()}


class CurveDomainError(ValueError):
    pass


def canonical_label(m: int, l: int) -> Label:
    """Representative of (m, l) ~ (-m, -l) with m > 0, or m = 0 and l >= 0."""
    if m < 0 or (m == 0 and l < 0):
        return (-m, -l)
    return (m, l)


def det(a: Label, b: Label) -> int:
    return a[0] * b[1] - a[1] * b[0]


# ---------------------------------------------------------------------------
# Chebyshev polynomials and curve elements
# ---------------------------------------------------------------------------


def chebyshev(n: int) -> List[int]:
    """Coefficient list (index = degree) of T_n, with T_0 = 2, T_1 = x, T_{n+1} = x T_n - T_{n-1}."""
    if n < 0:
        raise CurveDomainError("chebyshev needs n >= 0")
    prev, cur = [2], [0, 1]
    if n == 0:
        return prev
    for _ in range(n - 1):
        nxt = [0] + cur
        for i, c in enumerate(prev):
            nxt[i] -= c
        prev, cur = cur, nxt
    return cur


def evaluate_polynomial(coeffs: List[int], x: TorusElement) -> TorusElement:
    acc = x.torus.zero()
    for c in reversed(coeffs):
        acc = acc * x + c
    return acc


def primitive_curve(m: int, l: int) -> TorusElement:
    return e_basis(m, l) + e_basis(-m, -l)


def curve_element(m: int, l: int) -> TorusElement:
    """Image of (m, l)_T in A_q, i.e. T_d evaluated at the primitive curve."""
    if (m, l) == (0, 0):
        raise CurveDomainError("(0, 0) is not a curve")
    d = gcd(m, l)
    return evaluate_polynomial(chebyshev(d), primitive_curve(m // d, l // d))


# ---------------------------------------------------------------------------
# Mediant decomposition
# ---------------------------------------------------------------------------

BASE_LABELS = {(1, 0), (0, 1), (1, 1), (1, -1), (2, 1)}


def _size(a: Label) -> int:
    return abs(a[0]) + abs(a[1])


def _stern_brocot_parents(p: int, q: int) -> Tuple[Label, Label]:
    """Parents of (p, q) with p, q > 0 in the Stern-Brocot tree rooted at (1,0), (0,1)."""
    left, right = (1, 0), (0, 1)
    while True:
        med = (left[0] + right[0], left[1] + right[1])
        if med == (p, q):
            return left, right
        # compare slopes q/p against med[1]/med[0]
        if q * med[0] < med[1] * p:
            right = med
        else:
            left = med


def farey_parents(p: int, q: int) -> Tuple[Label, Label]:
    """((u, v), (w, z)) with u + w = p, v + z = q, |uz - vw| = 1, larger parent first.

    Negative slopes reuse the positive-slope tree through the reflection
    (p, q) -> (p, -q).
    """
    if p <= 0:
        raise CurveDomainError("farey_parents needs p > 0")
    if gcd(p, q) != 1:
        raise CurveDomainError(f"({p}, {q}) is not primitive")
    if q == 0:
        raise CurveDomainError("(1, 0) is a base case")
    sign = 1 if q > 0 else -1
    a, b = _stern_brocot_parents(p, abs(q))
    a, b = canonical_label(a[0], sign * a[1]), canonical_label(b[0], sign * b[1])
    if _size(a) < _size(b):
        a, b = b, a
    return a, b


# ---------------------------------------------------------------------------
# Commutator expressions
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class Leaf:
    name: str


@dataclass(frozen=True)
class Bracket:
    """sign * [left, right]_{q or q^-1} / (q^2 - q^-2)."""
    left: "CommutatorExpr"
    right: "CommutatorExpr"
    inverse: bool = False
    sign: int = 1


CommutatorExpr = Union[Leaf, Bracket]


def bracket_count(e: CommutatorExpr) -> int:
    if isinstance(e, Leaf):
        return 0
    return 1 + bracket_count(e.left) + bracket_count(e.right)


def nesting_depth(e: CommutatorExpr) -> int:
    if isinstance(e, Leaf):
        return 0
    return 1 + max(nesting_depth(e.left), nesting_depth(e.right))


def total_sign(e: CommutatorExpr) -> int:
    if isinstance(e, Leaf):
        return 1
    return e.sign * total_sign(e.left) * total_sign(e.right)


def label_of(e: CommutatorExpr) -> Label:
    """Slope of the curve an expression is designed to produce (read off combinatorially)."""
    if isinstance(e, Leaf):
        return LEAF_LABELS[e.name]
    a, b = label_of(e.left), label_of(e.right)
    d = det(a, b)
    want_sum = (d == 1) != e.inverse
    c = (a[0] + b[0], a[1] + b[1]) if want_sum else (a[0] - b[0], a[1] - b[1])
    return canonical_label(*c)


def twist(curve: CommutatorExpr, arc: CommutatorExpr, target: Label) -> Bracket:
    """Normalized bracket [curve, arc]_{q^+-1} whose value is the target slope.

    With d = det(curve, arc): [c, a]_q gives c + a when d = 1 and c - a when
    d = -1, while [c, a]_{q^-1} gives minus the other one.
    """
    g, a = label_of(curve), label_of(arc)
    d = det(g, a)
    if abs(d) != 1:
        raise CurveDomainError(f"{g} and {a} do not meet exactly once")
    s = canonical_label(g[0] + a[0], g[1] + a[1])
    diff = canonical_label(g[0] - a[0], g[1] - a[1])
    target = canonical_label(*target)
    if target == s:
        want_sum = True
    elif target == diff:
        want_sum = False
    else:
        raise CurveDomainError(f"{target} is neither {g} + {a} nor {g} - {a}")
    if want_sum == (d == 1):
        return Bracket(curve, arc, inverse=False, sign=1)
    return Bracket(curve, arc, inverse=True, sign=-1)


def curve_expression(p: int, q: int, style: str = "compact") -> CommutatorExpr:
    """Nested normalized q-commutator over Y1, Y2, Y3 producing the (p, q) curve.

    The smaller mediant parent is the twisting curve and goes on the left;
    the larger parent is the arc being twisted.  ``style="paper"`` builds the
    twisted arc all the way from the (1, 0) arc, so the (1, 1) arc becomes
    -[Y2, Y1]_{q^-1}; this reproduces the nesting of the worked (5, 3)
    example.  ``style="compact"`` keeps Y3 as a leaf everywhere.
    """
    if (p, q) == (0, 0) or gcd(p, q) != 1:
        raise CurveDomainError(f"({p}, {q}) is not primitive")
    if style not in ("compact", "paper"):
        raise ValueError(f"unknown style {style!r}")
    return _build(canonical_label(p, q), style, arc_role=False)


def _build(c: Label, style: str, arc_role: bool) -> CommutatorExpr:
    if c in _LEAF_BY_LABEL:
        if style == "paper" and arc_role and c == (1, 1):
            return twist(Leaf("Y2"), Leaf("Y1"), c)
        return Leaf(_LEAF_BY_LABEL[c])
    if c == (1, -1):
        return twist(Leaf("Y2"), Leaf("Y1"), c)
    if c == (2, 1):
        return twist(Leaf("Y1"), _build((1, 1), style, arc_role=True), c)
    big, small = farey_parents(*c)
    return twist(_build(small, style, arc_role=False), _build(big, style, arc_role=True), c)


def standard_assignment() -> Dict[str, TorusElement]:
    return {name: curve_element(*lab) for name, lab in LEAF_LABELS.items()}


def evaluate_curve_expression(expr: CommutatorExpr, assignment: Mapping[str, object] | None = None):
    """Recursive evaluation with exact division by q^2 - q^-2 at every bracket."""
    if assignment is None:
        assignment = standard_assignment()
    cache: Dict[int, object] = {}

    def ev(e):
        key = id(e)
        if key in cache:
            return cache[key]
        if isinstance(e, Leaf):
            v = assignment[e.name]
        else:
            raw = q_commutator(ev(e.left), ev(e.right), inverse=e.inverse)
            v = raw.divexact(QQ_DIFF)
            if e.sign < 0:
                v = -v
        cache[key] = v
        return v

    return ev(expr)


def render_bracket_word(e: CommutatorExpr) -> str:
    """Bare bracket word without signs or normalizations."""
    if isinstance(e, Leaf):
        return e.name
    tag = "q^-1" if e.inverse else "q"
    return f"[{render_bracket_word(e.left)}, {render_bracket_word(e.right)}]_{tag}"


def render_curve_expression(e: CommutatorExpr) -> str:
    """Word with the accumulated sign and normalization, e.g. ``-1/(q^2 - q^(-2))^2 [Y3, [Y1, Y3]_q]_q^-1``."""
    k = bracket_count(e)
    word = render_bracket_word(e)
    if k == 0:
        return word
    sign = "-" if total_sign(e) < 0 else ""
    power = "" if k == 1 else f"^{k}"
    return f"{sign}1/(q^2 - q^(-2)){power} {word}"


def expression_to_text(e: CommutatorExpr) -> str:
    """Same as :func:`render_curve_expression` but in the CLI expression grammar."""
    k = bracket_count(e)
    word = render_bracket_word(e)
    if k == 0:
        return word
    sign = "-" if total_sign(e) < 0 else ""
    power = "" if k == 1 else f"^{k}"
    return f"{sign}{word}/(q^2 - q^(-2)){power}"
