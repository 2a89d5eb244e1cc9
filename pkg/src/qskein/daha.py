"""PBW normal forms in the A1 double affine Hecke algebra.

Defining relations (with q^2 in the cross relation):

    T X T = X^-1,   T Y^-1 T = Y,   X Y = q^2 Y X T^2,   (T - t)(T + t^-1) = 0.

Every element is kept as a combination of X^n T^eps Y^m (eps in {0, 1}).
Writing d = t - t^-1, the rewrite rules used below all follow from the
relations by a line or two of algebra:

    T T      = 1 + d T
    T X      = X^-1 T - d X^-1          T X^-1  = X T + d X^-1
    Y T      = T Y^-1 + d Y             Y^-1 T  = T Y - d Y
    Y X      = q^-2 X Y - q^-2 d X T Y^-1
    Y^-1 X   = q^2 X Y^-1 + q^2 d X T Y^-1
    Y^-1 X^-1 = q^-2 X^-1 Y^-1 - q^-2 d X T Y^-1
    Y X^-1   = T (Y^-1 X) T + d (Y X) T            (from X^-1 = T X T)

Powers are handled by recursion on |exponent|; every step either lowers the
Y-degree of the left factor or the X-degree of the right factor, so the
rewriting terminates.  Monomial products are memoized.
"""

from __future__ import annotations

from fractions import Fraction
from functools import lru_cache
from typing import Dict, Iterable, Tuple

from .scalars import (ONE, ZERO, QFraction, QScalar, q_pow, t_pow, render_scalar, render_fraction)

Key = Tuple[int, int, int]  # (n, eps, m) for X^n T^eps Y^m
Raw = Dict[Key, QScalar]

DELTA = t_pow(1) - t_pow(-1)


def _acc(out: Raw, k: Key, c: QScalar) -> None:
    s = out.get(k)
    s = c if s is None else s + c
    if s:
        out[k] = s
    else:
        out.pop(k, None)


def _freeze(d: Raw):
    return tuple(sorted(d.items()))


def _t_product(e1: int, e2: int):
    """T^e1 T^e2 as [(eps, coeff)]."""
    if e1 + e2 < 2:
        return ((e1 + e2, ONE),)
    return ((0, ONE), (1, DELTA))


@lru_cache(maxsize=None)
def _T_Xn(n: int):
    """T X^n in PBW form, as frozen items."""
    if n == 0:
        return (((0, 1, 0), ONE),)
    out: Raw = {}
    if n > 0:
        # T X^n = X^-1 (T X^(n-1)) - d X^(n-2)
        for (k, e, _), c in _T_Xn(n - 1):
            _acc(out, (k - 1, e, 0), c)
        _acc(out, (n - 2, 0, 0), -DELTA)
    else:
        # T X^n = X (T X^(n+1)) + d X^n
        for (k, e, _), c in _T_Xn(n + 1):
            _acc(out, (k + 1, e, 0), c)
        _acc(out, (n, 0, 0), DELTA)
    return _freeze(out)


@lru_cache(maxsize=None)
def _Ym_T(m: int):
    """Y^m T in PBW form."""
    if m == 0:
        return (((0, 1, 0), ONE),)
    out: Raw = {}
    if m > 0:
        # Y^m T = (Y^(m-1) T) Y^-1 + d Y^m
        for (_, e, k), c in _Ym_T(m - 1):
            _acc(out, (0, e, k - 1), c)
        _acc(out, (0, 0, m), DELTA)
    else:
        # Y^m T = (Y^(m+1) T) Y - d Y^(m+2)
        for (_, e, k), c in _Ym_T(m + 1):
            _acc(out, (0, e, k + 1), c)
        _acc(out, (0, 0, m + 2), -DELTA)
    return _freeze(out)


def _left_mul(a: int, e: int, items) -> Raw:
    """X^a T^e times a PBW combination."""
    out: Raw = {}
    for (n, eps, m), c in items:
        if e == 0:
            _acc(out, (a + n, eps, m), c)
            continue
        for (k, e1, _), c1 in _T_Xn(n):
            for e2, c2 in _t_product(e1, eps):
                _acc(out, (a + k, e2, m), c * c1 * c2)
    return out


def _right_mul(items, f: int, d: int) -> Raw:
    """A PBW combination times T^f Y^d."""
    out: Raw = {}
    for (n, eps, m), c in items:
        if f == 0:
            _acc(out, (n, eps, m + d), c)
            continue
        for (_, e1, k), c1 in _Ym_T(m):
            for e2, c2 in _t_product(eps, e1):
                _acc(out, (n, e2, k + d), c * c1 * c2)
    return out


def _mul_raw(a: Iterable, b: Iterable) -> Raw:
    out: Raw = {}
    b = list(b)
    for k1, c1 in a:
        for k2, c2 in b:
            c = c1 * c2
            for k, c3 in mono_mul(k1, k2):
                _acc(out, k, c * c3)
    return out


def _scaled(items, c: QScalar) -> Raw:
    if isinstance(items, dict):
        items = items.items()
    return {k: v * c for k, v in items}


def _sum(*parts: Raw) -> Raw:
    out: Raw = {}
    for p in parts:
        for k, c in p.items():
            _acc(out, k, c)
    return out


@lru_cache(maxsize=None)
def _yx(b: int, c: int):
    """Y^b X^c in PBW form."""
    if b == 0 or c == 0:
        return (((c, 0, b), ONE),)
    if b > 1:
        return _freeze(_mul_raw((((0, 0, b - 1), ONE),), _yx(1, c)))
    if b < -1:
        return _freeze(_mul_raw((((0, 0, b + 1), ONE),), _yx(-1, c)))
    qm2, qp2 = q_pow(-2), q_pow(2)
    if b == 1 and c > 0:
        rest_p, rest_m = _yx(1, c - 1), _yx(-1, c - 1)
        return _freeze(_sum(_scaled(_left_mul(1, 0, rest_p), qm2),
                            _scaled(_left_mul(1, 1, rest_m), -qm2 * DELTA)))
    if b == -1 and c > 0:
        rest = _yx(-1, c - 1)
        return _freeze(_sum(_scaled(_left_mul(1, 0, rest), qp2),
                            _scaled(_left_mul(1, 1, rest), qp2 * DELTA)))
    if b == -1 and c < 0:
        rest = _yx(-1, c + 1)
        return _freeze(_sum(_scaled(_left_mul(-1, 0, rest), qm2),
                            _scaled(_left_mul(1, 1, _yx(-1, c + 1)), -qm2 * DELTA)))
    # b == 1, c < 0: Y X^c = (Y X^-1) X^(c+1)
    head = _y_xinv()
    return _freeze(_mul_raw(head, (((c + 1, 0, 0), ONE),)))


@lru_cache(maxsize=None)
def _y_xinv():
    """Y X^-1 = T (Y^-1 X) T + d (Y X) T."""
    part1 = _left_mul(0, 1, _right_mul(_yx(-1, 1), 1, 0).items())
    part2 = _scaled(_right_mul(_yx(1, 1), 1, 0).items(), DELTA)
    return _freeze(_sum(part1, part2))


@lru_cache(maxsize=None)
def mono_mul(k1: Key, k2: Key):
    """(X^a T^e Y^b)(X^c T^f Y^d) in PBW form, as a tuple of (key, QScalar)."""
    a, e, b = k1
    c, f, d = k2
    mid = _yx(b, c)
    left = _left_mul(a, e, mid)
    return _freeze(_right_mul(left.items(), f, d))


# ---------------------------------------------------------------------------
# Elements
# ---------------------------------------------------------------------------


def _frac_acc(out: Dict[Key, QFraction], k: Key, c: QFraction) -> None:
    s = out.get(k)
    s = c if s is None else s + c
    if s:
        out[k] = s
    else:
        out.pop(k, None)


class DahaElement:
    """Sum of c * X^n T^eps Y^m with QFraction coefficients, always in PBW form."""

    __slots__ = ("terms",)

    def __init__(self, terms: Dict[Key, object] | None = None):
        clean = {}
        for k, c in (terms or {}).items():
            c = QFraction.coerce(c)
            if c:
                n, e, m = k
                if e not in (0, 1):
                    raise ValueError("T-exponent in a PBW key must be 0 or 1")
                clean[(int(n), int(e), int(m))] = c
        self.terms = clean

    @classmethod
    def _lift(cls, x):
        if isinstance(x, DahaElement):
            return x
        c = QFraction.coerce(x)
        if c is NotImplemented:
            return NotImplemented
        return cls({(0, 0, 0): c})

    def __eq__(self, other):
        other = DahaElement._lift(other)
        if other is NotImplemented:
            return NotImplemented
        return self.terms == other.terms

    def __hash__(self):
        return hash(frozenset(self.terms.items()))

    def is_zero(self) -> bool:
        return not self.terms

    def __bool__(self):
        return bool(self.terms)

    def __add__(self, other):
        other = DahaElement._lift(other)
        if other is NotImplemented:
            return NotImplemented
        out = dict(self.terms)
        for k, c in other.terms.items():
            _frac_acc(out, k, c)
        r = DahaElement()
        r.terms = out
        return r

    __radd__ = __add__

    def __neg__(self):
        r = DahaElement()
        r.terms = {k: -c for k, c in self.terms.items()}
        return r

    def __sub__(self, other):
        other = DahaElement._lift(other)
        if other is NotImplemented:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        other = DahaElement._lift(other)
        if other is NotImplemented:
            return NotImplemented
        return other + (-self)

    def scale(self, c) -> "DahaElement":
        c = QFraction.coerce(c)
        if not c:
            return DahaElement()
        r = DahaElement()
        r.terms = {k: v * c for k, v in self.terms.items()}
        return r

    def __mul__(self, other):
        if isinstance(other, DahaElement):
            return daha_mul(self, other)
        c = QFraction.coerce(other)
        if c is NotImplemented:
            return NotImplemented
        return self.scale(c)

    def __rmul__(self, other):
        c = QFraction.coerce(other)
        if c is NotImplemented:
            return NotImplemented
        return self.scale(c)

    def __pow__(self, n: int):
        if n < 0:
            return self.inverse() ** (-n)
        r = daha_one()
        for _ in range(n):
            r = r * self
        return r

    def inverse(self) -> "DahaElement":
        """Inverse of a single PBW monomial c X^n T^eps Y^m, namely c^-1 Y^-m T^-eps X^-n."""
        if len(self.terms) != 1:
            raise ValueError("only single PBW monomials are inverted")
        ((n, e, m), c), = self.terms.items()
        r = Y(-m) * (daha_inv_T() if e else daha_one()) * X(-n)
        return r.scale(c.inverse())

    def subs(self, q=None, t=None) -> "DahaElement":
        out: Dict[Key, QFraction] = {}
        for k, c in self.terms.items():
            _frac_acc(out, k, c.subs(q=q, t=t))
        r = DahaElement()
        r.terms = out
        return r

    def sorted_terms(self):
        return sorted(self.terms.items())

    def __repr__(self):
        return f"DahaElement({render_daha(self)!r})"

    def __str__(self):
        return render_daha(self)


def daha_mul(a: DahaElement, b: DahaElement) -> DahaElement:
    """Product in PBW form.

    Numerators are accumulated per (key, denominator) so each output key is
    normalized only once.
    """
    buckets: Dict[Key, Dict[QScalar, QScalar]] = {}
    for k1, c1 in a.terms.items():
        for k2, c2 in b.terms.items():
            num = c1.numerator * c2.numerator
            den = c1.denominator * c2.denominator
            for k, c3 in mono_mul(k1, k2):
                slot = buckets.setdefault(k, {})
                slot[den] = slot.get(den, ZERO) + num * c3
    out: Dict[Key, QFraction] = {}
    for k, slot in buckets.items():
        total = None
        for den, num in slot.items():
            if not num:
                continue
            f = QFraction(num, den)
            total = f if total is None else total + f
        if total is not None and total:
            out[k] = total
    r = DahaElement()
    r.terms = out
    return r


def q_commutator_daha(a: DahaElement, b: DahaElement, inverse: bool = False) -> DahaElement:
    qq, qi = (q_pow(-1), q_pow(1)) if inverse else (q_pow(1), q_pow(-1))
    return (a * b).scale(qq) - (b * a).scale(qi)


# -- generators -------------------------------------------------------------

def daha_one() -> DahaElement:
    return DahaElement({(0, 0, 0): 1})


def daha_scalar(c) -> DahaElement:
    return DahaElement({(0, 0, 0): c})


def X(n: int = 1) -> DahaElement:
    return DahaElement({(n, 0, 0): 1})


def Y(m: int = 1) -> DahaElement:
    return DahaElement({(0, 0, m): 1})


def T() -> DahaElement:
    return DahaElement({(0, 1, 0): 1})


def daha_inv_T() -> DahaElement:
    """T^-1 = T + t^-1 - t."""
    return DahaElement({(0, 1, 0): 1, (0, 0, 0): t_pow(-1) - t_pow(1)})


T_inv = daha_inv_T


def pbw_monomial(n: int, eps: int, m: int, coeff=1) -> DahaElement:
    return DahaElement({(n, eps, m): coeff})


def spherical_idempotent() -> DahaElement:
    """e = (T + t^-1) / (t + t^-1)."""
    den = t_pow(1) + t_pow(-1)
    return DahaElement({(0, 1, 0): QFraction(ONE, den), (0, 0, 0): QFraction(t_pow(-1), den)})


def defining_relations():
    """The four relations, each as (name, lhs - rhs)."""
    t = t_pow(1)
    return [
        ("TXT = X^-1", T() * X() * T() - X(-1)),
        ("TY^-1T = Y", T() * Y(-1) * T() - Y()),
        ("XY = q^2 YXT^2", X() * Y() - (Y() * X() * T() * T()).scale(q_pow(2))),
        ("(T - t)(T + t^-1) = 0", (T() - daha_scalar(t)) * (T() + daha_scalar(t_pow(-1)))),
    ]


# -- Terwilliger images -----------------------------------------------------

def terwilliger_image(gen: str) -> DahaElement:
    e = spherical_idempotent()
    if gen == "x":
        a = X(1) + X(-1)
    elif gen == "y":
        a = Y(1) + Y(-1)
    elif gen == "z":
        ti = daha_inv_T()
        a = (X() * Y() * ti * ti + X(-1) * Y(-1)).scale(q_pow(-1))
    else:
        raise ValueError(f"unknown generator {gen!r}; expected x, y or z")
    return a * e


def casimir_combination(x: DahaElement, y: DahaElement, z: DahaElement) -> DahaElement:
    """q^2 x^2 + q^-2 y^2 + q^2 z^2 - q x y z."""
    return ((x * x).scale(q_pow(2)) + (y * y).scale(q_pow(-2)) + (z * z).scale(q_pow(2))
            - (x * y * z).scale(q_pow(1)))


def casimir_value() -> QFraction:
    """(t/q - q/t)^2 + (q + 1/q)^2."""
    a = QScalar({(-2, 1): 1, (2, -1): -1})
    b = q_pow(1) + q_pow(-1)
    return QFraction(a * a + b * b)


def casimir_check() -> DahaElement:
    """Casimir combination of the three images minus its predicted value times e; zero when the identity holds."""
    x, y, z = (terwilliger_image(g) for g in "xyz")
    return casimir_combination(x, y, z) - spherical_idempotent().scale(casimir_value())


# -- rendering --------------------------------------------------------------

def render_pbw_key(k: Key) -> str:
    n, e, m = k
    parts = []
    if n:
        parts.append("X" if n == 1 else (f"X^{n}" if n > 0 else f"X^({n})"))
    if e:
        parts.append("T")
    if m:
        parts.append("Y" if m == 1 else (f"Y^{m}" if m > 0 else f"Y^({m})"))
    return "*".join(parts)


def render_daha(a: DahaElement) -> str:
    if not a.terms:
        return "0"
    out = []
    for k, c in a.sorted_terms():
        mono = render_pbw_key(k)
        cs = render_fraction(c)
        simple = c.is_polynomial() and c.numerator.is_monomial()
        if simple:
            ((a2, b), v), = c.numerator.items()
            neg = v < 0
            mag = render_scalar(QScalar({(a2, b): -v if neg else v}))
            body = mono if (mag == "1" and mono) else (f"{mag}*{mono}" if mono else mag)
        else:
            neg = False
            if not c.is_polynomial():
                body = f"{cs}*{mono}" if mono else cs
            else:
                body = f"({cs})*{mono}" if mono else f"({cs})"
        if not out:
            out.append(f"-{body}" if neg else body)
        else:
            out.append(f" - {body}" if neg else f" + {body}")
    return "".join(out)


def daha_to_json(a: DahaElement):
    return [{"n": k[0], "eps": k[1], "m": k[2], "coeff": render_fraction(c)} for k, c in a.sorted_terms()]


def cache_info():
    return {"mono_mul": mono_mul.cache_info()._asdict(), "yx": _yx.cache_info()._asdict()}
