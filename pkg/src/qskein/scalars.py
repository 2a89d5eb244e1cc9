"""Exact coefficient ring: Laurent polynomials in q^(1/2) and t over Q.

A :class:`QScalar` is stored sparsely as ``{(a2, b): c}`` meaning
``c * q^(a2/2) * t^b``.  Doubling the q-exponent keeps every key integral,
so half powers of q never need floating point.

:class:`QFraction` is the fraction field, used only where something is
divided by a non-monomial scalar.  Fractions are kept in a canonical form
so structural equality is the same as mathematical equality.
"""

from __future__ import annotations

from fractions import Fraction
from functools import reduce
from math import gcd
from typing import Dict, Iterable, Tuple, Union

Key = Tuple[int, int]
Number = Union[int, Fraction]


class InexactDivisionError(ArithmeticError):
    """Raised when an exact division leaves a remainder."""


def _norm_coeff(c: Number) -> Number:
    if isinstance(c, Fraction) and c.denominator == 1:
        return c.numerator
    return c


class QScalar:
    """Element of Q[q^(+-1/2), t^(+-1)]."""

    __slots__ = ("_terms", "_hash")

    def __init__(self, terms: Dict[Key, Number] | None = None, *, _trusted: bool = False):
        if _trusted:
            self._terms = terms
        else:
            clean = {}
            for (a2, b), c in (terms or {}).items():
                c = _norm_coeff(Fraction(c) if not isinstance(c, (int, Fraction)) else c)
                if c:
                    clean[(int(a2), int(b))] = c
            self._terms = clean
        self._hash = None

    # -- constructors -------------------------------------------------
    @classmethod
    def const(cls, c: Number) -> "QScalar":
        c = _norm_coeff(c)
        return cls({(0, 0): c}, _trusted=True) if c else cls({}, _trusted=True)

    @classmethod
    def monomial(cls, q_exp: Number = 0, t_exp: int = 0, coeff: Number = 1) -> "QScalar":
        """``coeff * q^q_exp * t^t_exp``; ``q_exp`` may be a half integer."""
        a2 = Fraction(q_exp) * 2
        if a2.denominator != 1:
            raise ValueError(f"q exponent must be a multiple of 1/2, got {q_exp}")
        return cls({(int(a2), int(t_exp)): coeff})

    @classmethod
    def coerce(cls, x) -> "QScalar":
        if isinstance(x, QScalar):
            return x
        if isinstance(x, (int, Fraction)):
            return cls.const(x)
        return NotImplemented

    # -- basic protocol -----------------------------------------------
    @property
    def terms(self) -> Dict[Key, Number]:
        return dict(self._terms)

    def items(self):
        return self._terms.items()

    def __len__(self) -> int:
        return len(self._terms)

    def __bool__(self) -> bool:
        return bool(self._terms)

    def is_zero(self) -> bool:
        return not self._terms

    def is_monomial(self) -> bool:
        return len(self._terms) == 1

    def is_constant(self) -> bool:
        return not self._terms or (len(self._terms) == 1 and (0, 0) in self._terms)

    def constant_value(self) -> Number:
        if not self.is_constant():
            raise ValueError(f"{self} is not a constant")
        return self._terms.get((0, 0), 0)

    def __eq__(self, other) -> bool:
        other = QScalar.coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return self._terms == other._terms

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash(frozenset(self._terms.items()))
        return self._hash

    # -- ring operations ----------------------------------------------
    def __add__(self, other):
        other = QScalar.coerce(other)
        if other is NotImplemented:
            return NotImplemented
        if not other._terms:
            return self
        if not self._terms:
            return other
        out = dict(self._terms)
        for k, c in other._terms.items():
            s = out.get(k, 0) + c
            if s:
                out[k] = _norm_coeff(s)
            else:
                out.pop(k, None)
        return QScalar(out, _trusted=True)

    __radd__ = __add__

    def __neg__(self) -> "QScalar":
        return QScalar({k: -c for k, c in self._terms.items()}, _trusted=True)

    def __sub__(self, other):
        other = QScalar.coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        other = QScalar.coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return other + (-self)

    def __mul__(self, other):
        other = QScalar.coerce(other)
        if other is NotImplemented:
            return NotImplemented
        a, b = self._terms, other._terms
        if not a or not b:
            return QScalar({}, _trusted=True)
        if len(a) > len(b):
            a, b = b, a
        out: Dict[Key, Number] = {}
        for (a1, b1), c1 in a.items():
            for (a2, b2), c2 in b.items():
                k = (a1 + a2, b1 + b2)
                s = out.get(k, 0) + c1 * c2
                if s:
                    out[k] = s
                else:
                    del out[k]
        return QScalar({k: _norm_coeff(c) for k, c in out.items()}, _trusted=True)

    __rmul__ = __mul__

    def __pow__(self, n: int) -> "QScalar":
        if not isinstance(n, int):
            raise TypeError("only integer powers are supported")
        if n < 0:
            return self.inverse() ** (-n)
        result = ONE
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def inverse(self) -> "QScalar":
        """Inverse of a monomial; other scalars are not units of the ring."""
        if not self.is_monomial():
            raise InexactDivisionError(f"{self} is not invertible in the Laurent ring")
        ((a2, b), c), = self._terms.items()
        return QScalar({(-a2, -b): _norm_coeff(Fraction(1) / c)}, _trusted=True)

    def __truediv__(self, other):
        other = QScalar.coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return self.divexact(other)

    # -- exact division ----------------------------------------------
    def _bounds(self):
        a = [k[0] for k in self._terms]
        b = [k[1] for k in self._terms]
        return min(a), max(a), min(b), max(b)

    def _leading(self):
        k = max(self._terms)
        return k, self._terms[k]

    def divexact(self, d: "QScalar") -> "QScalar":
        """Return ``self / d``; raise :class:`InexactDivisionError` on a remainder."""
        d = QScalar.coerce(d)
        if not d._terms:
            raise ZeroDivisionError("division by the zero scalar")
        if not self._terms:
            return self
        if d.is_monomial():
            return self * d.inverse()
        na0, na1, nb0, nb1 = self._bounds()
        da0, da1, db0, db1 = d._bounds()
        lo_a, hi_a = na0 - da0, na1 - da1
        lo_b, hi_b = nb0 - db0, nb1 - db1
        if lo_a > hi_a or lo_b > hi_b:
            raise InexactDivisionError(f"{d} does not divide {self}")
        (dka, dkb), dc = d._leading()
        rem = dict(self._terms)
        quot: Dict[Key, Number] = {}
        while rem:
            (ra, rb) = max(rem)
            rc = rem[(ra, rb)]
            ma, mb = ra - dka, rb - dkb
            if not (lo_a <= ma <= hi_a and lo_b <= mb <= hi_b):
                raise InexactDivisionError(f"{d} does not divide {self}")
            mc = Fraction(rc) / dc
            quot[(ma, mb)] = _norm_coeff(mc)
            for (ea, eb), ec in d._terms.items():
                k = (ea + ma, eb + mb)
                s = rem.get(k, 0) - ec * mc
                if s:
                    rem[k] = s
                else:
                    rem.pop(k, None)
        return QScalar(quot, _trusted=True)

    def divides(self, other: "QScalar") -> bool:
        try:
            other.divexact(self)
        except InexactDivisionError:
            return False
        return True

    # -- substitution -------------------------------------------------
    def subs(self, q: Number | None = None, t: Number | None = None) -> "QScalar":
        """Specialize t (any rational) and/or q (only +-1 allowed, since q^(1/2) must stay rational)."""
        out = QScalar()
        for (a2, b), c in self._terms.items():
            factor = Fraction(1)
            na2, nb = a2, b
            if t is not None:
                factor *= Fraction(t) ** b
                nb = 0
            if q is not None:
                if q != 1:
                    raise ValueError("only q = 1 can be substituted exactly")
                na2 = 0
            out = out + QScalar({(na2, nb): c * factor})
        return out

    def map_q_inverse(self) -> "QScalar":
        """The ring automorphism q^(1/2) -> q^(-1/2)."""
        return QScalar({(-a2, b): c for (a2, b), c in self._terms.items()}, _trusted=True)

    def has_t(self) -> bool:
        return any(b for (_, b) in self._terms)

    def has_half_powers(self) -> bool:
        return any(a2 % 2 for (a2, _) in self._terms)

    def content(self) -> Fraction:
        """Positive rational gcd of the coefficients."""
        if not self._terms:
            return Fraction(0)
        nums = [Fraction(c).numerator for c in self._terms.values()]
        dens = [Fraction(c).denominator for c in self._terms.values()]
        num = reduce(gcd, nums)
        den = reduce(lambda x, y: x * y // gcd(x, y), dens)
        return Fraction(abs(num), den)

    # -- rendering ----------------------------------------------------
    def __repr__(self) -> str:
        return f"QScalar({render_scalar(self)!r})"

    def __str__(self) -> str:
        return render_scalar(self)


ZERO = QScalar({}, _trusted=True)
ONE = QScalar({(0, 0): 1}, _trusted=True)


def q_pow(e: Number) -> QScalar:
    return QScalar.monomial(e, 0)


def t_pow(n: int) -> QScalar:
    return QScalar.monomial(0, n)


Q = q_pow(1)
T = t_pow(1)
QQ_DIFF = q_pow(2) - q_pow(-2)  # q^2 - q^(-2), the normalizer of q-commutators


def _render_power(var: str, e: Fraction) -> str:
    if e == 1:
        return var
    if e.denominator == 1:
        return f"{var}^{e.numerator}" if e > 0 else f"{var}^({e.numerator})"
    return f"{var}^({e.numerator}/{e.denominator})"


def render_monomial_factor(a2: int, b: int) -> str:
    parts = []
    if a2:
        parts.append(_render_power("q", Fraction(a2, 2)))
    if b:
        parts.append(_render_power("t", Fraction(b)))
    return "*".join(parts)


def render_scalar(s: QScalar) -> str:
    """Sorted by q-exponent then t-exponent, e.g. ``-q^(-5/2) + 2*t``."""
    if not s._terms:
        return "0"
    out = []
    for (a2, b) in sorted(s._terms):
        c = s._terms[(a2, b)]
        mono = render_monomial_factor(a2, b)
        neg = c < 0
        mag = -c if neg else c
        if mono:
            body = mono if mag == 1 else f"{mag}*{mono}"
        else:
            body = str(mag)
        if not out:
            out.append(f"-{body}" if neg else body)
        else:
            out.append(f" - {body}" if neg else f" + {body}")
    return "".join(out)


def parse_scalar(src: str) -> QScalar:
    """Parse the scalar syntax produced by :func:`render_scalar`.

    Accepts sums and products of rationals, ``q`` and ``t`` with integer or
    ``p/2`` exponents, and parentheses.  Used mostly for tests and the CLI;
    the general expression parser lives in :mod:`qskein.expr`.
    """
    from .expr import parse_expression, evaluate

    value = evaluate(parse_expression(src), {})
    if isinstance(value, QFraction):
        if not value.is_polynomial():
            raise ValueError(f"{src!r} is not a Laurent polynomial")
        return value.numerator
    return QScalar.coerce(value)


# ---------------------------------------------------------------------------
# Fractions
# ---------------------------------------------------------------------------


def _sympy_gcd(a: QScalar, b: QScalar) -> QScalar:
    """gcd of two Laurent polynomials, up to a unit."""
    import sympy

    s, t = sympy.symbols("s t")

    def to_poly(x: QScalar):
        a0, _, b0, _ = x._bounds()
        expr = sum(sympy.Rational(Fraction(c).numerator, Fraction(c).denominator)
                   * s ** (k[0] - a0) * t ** (k[1] - b0) for k, c in x._terms.items())
        return sympy.Poly(expr, s, t, domain="QQ")

    g = to_poly(a).gcd(to_poly(b))
    out: Dict[Key, Number] = {}
    for (i, j), c in g.terms():
        out[(int(i), int(j))] = Fraction(int(c.p), int(c.q))
    return QScalar(out)


def scalar_gcd(a: QScalar, b: QScalar) -> QScalar:
    if a.is_zero():
        return b
    if b.is_zero():
        return a
    if a.is_monomial() or b.is_monomial():
        return ONE
    if a.divides(b):
        return a
    if b.divides(a):
        return b
    return _sympy_gcd(a, b)


class QFraction:
    """Element of the fraction field of :class:`QScalar`, in canonical form.

    Canonical form: numerator and denominator share no non-unit factor, the
    denominator is a genuine polynomial (smallest q- and t-exponents are 0)
    and it is monic with respect to the lexicographic (q, then t) order.
    """

    __slots__ = ("numerator", "denominator", "_hash")

    def __init__(self, numerator, denominator=None, *, _canonical: bool = False):
        n = QScalar.coerce(numerator)
        d = ONE if denominator is None else QScalar.coerce(denominator)
        if n is NotImplemented or d is NotImplemented:
            raise TypeError("QFraction needs QScalar-compatible parts")
        if not _canonical:
            n, d = _canonicalize(n, d)
        self.numerator = n
        self.denominator = d
        self._hash = None

    @classmethod
    def coerce(cls, x) -> "QFraction":
        if isinstance(x, QFraction):
            return x
        if isinstance(x, QScalar):
            return cls(x, ONE, _canonical=True)
        if isinstance(x, (int, Fraction)):
            return cls(QScalar.const(x), ONE, _canonical=True)
        return NotImplemented

    def is_polynomial(self) -> bool:
        return self.denominator == ONE

    def is_zero(self) -> bool:
        return self.numerator.is_zero()

    def __bool__(self) -> bool:
        return not self.numerator.is_zero()

    def __eq__(self, other) -> bool:
        other = QFraction.coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return self.numerator == other.numerator and self.denominator == other.denominator

    def equals_by_cross_multiplication(self, other) -> bool:
        other = QFraction.coerce(other)
        return self.numerator * other.denominator == other.numerator * self.denominator

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash((self.numerator, self.denominator))
        return self._hash

    def __add__(self, other):
        other = QFraction.coerce(other)
        if other is NotImplemented:
            return NotImplemented
        if other.is_zero():
            return self
        if self.is_zero():
            return other
        if self.denominator == other.denominator:
            if self.denominator == ONE:
                return QFraction(self.numerator + other.numerator, ONE, _canonical=True)
            return QFraction(self.numerator + other.numerator, self.denominator)
        return QFraction(self.numerator * other.denominator + other.numerator * self.denominator,
                         self.denominator * other.denominator)

    __radd__ = __add__

    def __neg__(self):
        return QFraction(-self.numerator, self.denominator, _canonical=True)

    def __sub__(self, other):
        other = QFraction.coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        other = QFraction.coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return other + (-self)

    def __mul__(self, other):
        other = QFraction.coerce(other)
        if other is NotImplemented:
            return NotImplemented
        if self.denominator == ONE and other.denominator == ONE:
            return QFraction(self.numerator * other.numerator, ONE, _canonical=True)
        return QFraction(self.numerator * other.numerator, self.denominator * other.denominator)

    __rmul__ = __mul__

    def inverse(self) -> "QFraction":
        if self.is_zero():
            raise ZeroDivisionError("inverse of zero fraction")
        return QFraction(self.denominator, self.numerator)

    def __truediv__(self, other):
        other = QFraction.coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return self * other.inverse()

    def __rtruediv__(self, other):
        other = QFraction.coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return other * self.inverse()

    def __pow__(self, n: int) -> "QFraction":
        if n < 0:
            return self.inverse() ** (-n)
        return QFraction(self.numerator ** n, self.denominator ** n)

    def subs(self, q=None, t=None) -> "QFraction":
        d = self.denominator.subs(q=q, t=t)
        if d.is_zero():
            raise ZeroDivisionError("specialization makes the denominator vanish")
        return QFraction(self.numerator.subs(q=q, t=t), d)

    def __repr__(self) -> str:
        return f"QFraction({render_fraction(self)!r})"

    def __str__(self) -> str:
        return render_fraction(self)


def _canonicalize(n: QScalar, d: QScalar) -> Tuple[QScalar, QScalar]:
    if d.is_zero():
        raise ZeroDivisionError("fraction with zero denominator")
    if n.is_zero():
        return ZERO, ONE
    if d.is_monomial():
        return n * d.inverse(), ONE
    try:
        return n.divexact(d), ONE
    except InexactDivisionError:
        pass
    g = scalar_gcd(n, d)
    if not g.is_monomial():
        n = n.divexact(g)
        d = d.divexact(g)
    # strip the unit: shift d to a polynomial with zero minimal exponents, then make it monic
    a0, _, b0, _ = d._bounds()
    (_, lc) = d._leading()
    unit = QScalar({(a0, b0): lc})
    return n.divexact(unit), d.divexact(unit)


def fraction_normalize(n, d) -> QFraction:
    """Canonical reduced fraction ``n / d``."""
    return QFraction(n, d)


def render_fraction(f: QFraction) -> str:
    if f.denominator == ONE:
        return render_scalar(f.numerator)
    num = render_scalar(f.numerator)
    den = render_scalar(f.denominator)
    return f"({num})/({den})"


def scalar_add(a: QScalar, b: QScalar) -> QScalar:
    return a + b


def scalar_mul(a: QScalar, b: QScalar) -> QScalar:
    return a * b


def as_scalar(x) -> QScalar:
    """Coerce ints, Fractions and polynomial fractions to :class:`QScalar`."""
    if isinstance(x, QFraction):
        if not x.is_polynomial():
            raise InexactDivisionError(f"{x} is not a Laurent polynomial")
        return x.numerator
    s = QScalar.coerce(x)
    if s is NotImplemented:
        raise TypeError(f"cannot use {x!r} as a scalar")
    return s


def sum_scalars(items: Iterable[QScalar]) -> QScalar:
    out = ZERO
    for x in items:
        out = out + x
    return out
