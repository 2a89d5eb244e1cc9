"""Quantum tori T^n(Q): x_i x_j = q^(Q_ij) x_j x_i.

Monomials are stored in the normal order x_1^{u_1} x_2^{u_2} ... x_n^{u_n},
so an element is a dict from exponent tuples to :class:`QScalar`.  Moving
every generator of the right factor leftward past the larger-index
generators of the left factor gives the closed form

    x^u x^v = q^phi(u, v) x^(u+v),   phi(u, v) = sum_{j > i} Q[j][i] u_j v_i.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Dict, Iterable, Sequence, Tuple

from .scalars import ONE, ZERO, QScalar, q_pow, render_scalar, InexactDivisionError

Exps = Tuple[int, ...]


class ContextError(ValueError):
    """Operands live in different quantum tori (or the wrong one)."""


class QuantumTorus:
    """The context (n, Q) together with display names for the generators."""

    def __init__(self, Q: Sequence[Sequence[int]], names: Sequence[str] | None = None):
        Q = tuple(tuple(int(x) for x in row) for row in Q)
        n = len(Q)
        for i in range(n):
            if len(Q[i]) != n:
                raise ValueError("Q must be square")
            if Q[i][i] != 0:
                raise ValueError("Q must have zero diagonal")
            for j in range(n):
                if Q[i][j] != -Q[j][i]:
                    raise ValueError(f"Q is not antisymmetric at ({i}, {j})")
        self.n = n
        self.Q = Q
        self.names = tuple(names) if names else tuple(f"x{i + 1}" for i in range(n))
        if len(self.names) != n:
            raise ValueError("wrong number of generator names")
        # lower[j] = [(i, Q[j][i]) for i < j with Q[j][i] != 0]
        self._lower = [[(i, Q[j][i]) for i in range(j) if Q[j][i]] for j in range(n)]

    def __eq__(self, other) -> bool:
        return isinstance(other, QuantumTorus) and self.Q == other.Q and self.names == other.names

    def __hash__(self) -> int:
        return hash((self.Q, self.names))

    def __repr__(self) -> str:
        return f"QuantumTorus(n={self.n}, names={self.names})"

    # -- phase --------------------------------------------------------
    def phase(self, u: Exps, v: Exps) -> int:
        """phi(u, v): the power of q picked up by x^u x^v = q^phi x^(u+v)."""
        if len(u) != self.n or len(v) != self.n:
            raise ContextError("exponent vector has the wrong length")
        total = 0
        for j, row in enumerate(self._lower):
            uj = u[j]
            if uj:
                for i, qji in row:
                    if v[i]:
                        total += qji * uj * v[i]
        return total

    def pairing(self, u: Exps, v: Exps) -> int:
        """sum Q_ij u_i v_j, so that x^u x^v = q^pairing x^v x^u."""
        return sum(self.Q[i][j] * u[i] * v[j] for i in range(self.n) for j in range(self.n))

    # -- element constructors -----------------------------------------
    def zero(self) -> "TorusElement":
        return TorusElement(self, {})

    def one(self) -> "TorusElement":
        return TorusElement(self, {(0,) * self.n: ONE})

    def scalar(self, c) -> "TorusElement":
        c = QScalar.coerce(c)
        return TorusElement(self, {(0,) * self.n: c} if c else {})

    def monomial(self, exps: Iterable[int], coeff=ONE) -> "TorusElement":
        exps = tuple(int(e) for e in exps)
        if len(exps) != self.n:
            raise ContextError(f"expected {self.n} exponents, got {len(exps)}")
        coeff = QScalar.coerce(coeff)
        return TorusElement(self, {exps: coeff} if coeff else {})

    def gen(self, i: int, power: int = 1) -> "TorusElement":
        """x_i^power with 1-based index i."""
        e = [0] * self.n
        e[i - 1] = power
        return self.monomial(e)

    def gens(self):
        return [self.gen(i) for i in range(1, self.n + 1)]

    def lookup(self, name: str) -> "TorusElement":
        return self.gen(self.names.index(name) + 1)


def _add_into(out: Dict[Exps, QScalar], k: Exps, c: QScalar) -> None:
    s = out.get(k)
    s = c if s is None else s + c
    if s:
        out[k] = s
    else:
        out.pop(k, None)


class TorusElement:
    """Sparse element of a quantum torus."""

    __slots__ = ("torus", "terms")

    def __init__(self, torus: QuantumTorus, terms: Dict[Exps, QScalar]):
        self.torus = torus
        self.terms = {k: v for k, v in terms.items() if v}

    def _check(self, other: "TorusElement") -> None:
        if self.torus is not other.torus and self.torus != other.torus:
            raise ContextError("elements belong to different quantum tori")

    def _lift(self, other):
        if isinstance(other, TorusElement):
            self._check(other)
            return other
        c = QScalar.coerce(other)
        if c is NotImplemented:
            return NotImplemented
        return self.torus.scalar(c)

    def is_zero(self) -> bool:
        return not self.terms

    def __bool__(self) -> bool:
        return bool(self.terms)

    def __eq__(self, other) -> bool:
        if isinstance(other, TorusElement) and other.torus != self.torus:
            return False
        other = self._lift(other)
        if other is NotImplemented:
            return NotImplemented
        return self.terms == other.terms

    def __hash__(self):
        return hash(frozenset(self.terms.items()))

    def __add__(self, other):
        other = self._lift(other)
        if other is NotImplemented:
            return NotImplemented
        out = dict(self.terms)
        for k, c in other.terms.items():
            _add_into(out, k, c)
        return TorusElement(self.torus, out)

    __radd__ = __add__

    def __neg__(self):
        return TorusElement(self.torus, {k: -c for k, c in self.terms.items()})

    def __sub__(self, other):
        other = self._lift(other)
        if other is NotImplemented:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        other = self._lift(other)
        if other is NotImplemented:
            return NotImplemented
        return other + (-self)

    def scale(self, c) -> "TorusElement":
        c = QScalar.coerce(c)
        if not c:
            return self.torus.zero()
        return TorusElement(self.torus, {k: v * c for k, v in self.terms.items()})

    def __mul__(self, other):
        if not isinstance(other, TorusElement):
            c = QScalar.coerce(other)
            if c is NotImplemented:
                return NotImplemented
            return self.scale(c)
        return torus_mul(self, other)

    def __rmul__(self, other):
        c = QScalar.coerce(other)
        if c is NotImplemented:
            return NotImplemented
        return self.scale(c)

    def __pow__(self, n: int) -> "TorusElement":
        if n < 0:
            return self.inverse() ** (-n)
        result = self.torus.one()
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def is_monomial(self) -> bool:
        return len(self.terms) == 1 and next(iter(self.terms.values())).is_monomial()

    def inverse(self) -> "TorusElement":
        """Inverse of a single-term element c * x^u (only these are units here)."""
        if not self.is_monomial():
            raise InexactDivisionError("only monomials are invertible in this implementation")
        (u, c), = self.terms.items()
        neg = tuple(-e for e in u)
        ph = self.torus.phase(u, neg)
        return TorusElement(self.torus, {neg: c.inverse() * q_pow(-ph)})

    def divexact(self, d) -> "TorusElement":
        """Divide every coefficient exactly by the scalar d."""
        d = QScalar.coerce(d)
        return TorusElement(self.torus, {k: v.divexact(d) for k, v in self.terms.items()})

    def coefficient(self, exps: Iterable[int]) -> QScalar:
        return self.terms.get(tuple(exps), ZERO)

    def map_coefficients(self, fn) -> "TorusElement":
        return TorusElement(self.torus, {k: fn(v) for k, v in self.terms.items()})

    def sorted_terms(self):
        return sorted(self.terms.items())

    def __repr__(self) -> str:
        return f"TorusElement({render_torus_element(self)!r})"

    def __str__(self) -> str:
        return render_torus_element(self)


def torus_mul(a: TorusElement, b: TorusElement) -> TorusElement:
    a._check(b)
    t = a.torus
    if not a.terms or not b.terms:
        return t.zero()
    out: Dict[Exps, QScalar] = {}
    phase = t.phase
    for u, cu in a.terms.items():
        for v, cv in b.terms.items():
            ph = phase(u, v)
            c = cu * cv
            if ph:
                c = c * q_pow(ph)
            _add_into(out, tuple(x + y for x, y in zip(u, v)), c)
    return TorusElement(t, out)


def phase(torus: QuantumTorus, u: Exps, v: Exps) -> int:
    return torus.phase(tuple(u), tuple(v))


def q_commutator(a, b, inverse: bool = False):
    """[a, b]_q = q a b - q^(-1) b a; with ``inverse=True`` the q^(-1) version.

    Works for any operands supporting ``*`` and ``-`` with QScalar scaling.
    """
    qq = q_pow(-1) if inverse else q_pow(1)
    qi = q_pow(1) if inverse else q_pow(-1)
    return a * b * qq - b * a * qi


# ---------------------------------------------------------------------------
# The rank-2 torus A_q and its e-basis
# ---------------------------------------------------------------------------

A_Q = QuantumTorus([[0, 2], [-2, 0]], names=("X", "Y"))


def e_basis(r: int, s: int, torus: QuantumTorus = A_Q) -> TorusElement:
    """e_{r,s} = q^(-rs) X^r Y^s in a rank-2 torus with XY = q^2 YX."""
    if torus.n != 2 or torus.Q[0][1] != 2:
        raise ContextError("the e-basis lives in the rank-2 torus with Q_12 = 2")
    return torus.monomial((r, s), q_pow(-r * s))


def z2_flip(a: TorusElement) -> TorusElement:
    """The automorphism inverting every generator: x^u -> x^(-u), coefficients unchanged."""
    return TorusElement(a.torus, {tuple(-e for e in k): v for k, v in a.terms.items()})


def e_coordinates(a: TorusElement) -> Dict[Tuple[int, int], QScalar]:
    """Rewrite a rank-2 element in the e-basis: returns {(r, s): coefficient of e_{r,s}}."""
    if a.torus.n != 2:
        raise ContextError("e-coordinates need a rank-2 torus")
    return {k: v * q_pow(k[0] * k[1]) for k, v in a.terms.items()}


def render_e_basis(a: TorusElement) -> str:
    parts = []
    for (r, s), c in sorted(e_coordinates(a).items()):
        parts.append(_render_term(c, f"e_{{{r},{s}}}"))
    return _join_terms(parts)


# ---------------------------------------------------------------------------
# Rendering
# ---------------------------------------------------------------------------


def render_monomial(torus: QuantumTorus, exps: Exps) -> str:
    parts = []
    for name, e in zip(torus.names, exps):
        if e == 1:
            parts.append(name)
        elif e:
            parts.append(f"{name}^{e}" if e > 0 else f"{name}^({e})")
    return "*".join(parts)


def _render_term(c: QScalar, mono: str) -> Tuple[bool, str]:
    """Return (negative?, body) for ``c * mono``."""
    if c.is_monomial():
        ((a2, b), k), = c.items()
        neg = k < 0
        mag = QScalar({(a2, b): -k if neg else k})
        cs = render_scalar(mag)
        if not mono:
            return neg, cs
        if cs == "1":
            return neg, mono
        return neg, f"{cs}*{mono}"
    cs = render_scalar(c)
    if not mono:
        return False, f"({cs})"
    return False, f"({cs})*{mono}"


def _join_terms(parts) -> str:
    if not parts:
        return "0"
    out = []
    for neg, body in parts:
        if not out:
            out.append(f"-{body}" if neg else body)
        else:
            out.append(f" - {body}" if neg else f" + {body}")
    return "".join(out)


def render_torus_element(a: TorusElement) -> str:
    """Monomials sorted lexicographically by exponent vector."""
    return _join_terms([_render_term(c, render_monomial(a.torus, k)) for k, c in a.sorted_terms()])


def torus_to_json(a: TorusElement):
    return [{"exps": list(k), "coeff": render_scalar(c)} for k, c in a.sorted_terms()]


def random_element(torus: QuantumTorus, rng, n_terms: int = 3, max_exp: int = 2, half: bool = False) -> TorusElement:
    """Small random element, used by the property tests."""
    terms = {}
    for _ in range(n_terms):
        k = tuple(rng.randint(-max_exp, max_exp) for _ in range(torus.n))
        step = 1 if half else 2
        a2 = rng.randrange(-4, 5, step) if step == 2 else rng.randint(-4, 4)
        c = QScalar({(a2, 0): rng.choice([-2, -1, 1, 1, 3, Fraction(1, 2)])})
        terms[k] = terms.get(k, ZERO) + c
    return TorusElement(torus, terms)
