"""A small expression language shared by the CLI and the tests.

Grammar (juxtaposition is multiplication)::

    expr     := term (("+" | "-") term)*
    term     := unary (("*" | "/" | <juxtaposition>) unary)*
    unary    := "-" unary | power
    power    := atom ("^" exponent)?
    exponent := INT | "-" INT | "(" ["-"] INT ["/" INT] ")"
    atom     := NUMBER | NAME | "(" expr ")"
              | "[" expr "," expr "]" "_" "q" ("^" exponent)?

Parsing gives a tuple tree; :func:`evaluate` interprets it against an
environment mapping names to algebra elements.  ``q`` and ``t`` are always
available.  Half-integer exponents are allowed on ``q`` only.
"""

from __future__ import annotations

import re
from fractions import Fraction
from typing import Dict, List, Mapping, Set, Tuple

from .scalars import Q, T, QFraction, QScalar, InexactDivisionError, q_pow

TOKEN_RE = re.compile(r"\s*(?:(?P<num>\d+)|(?P<name>[A-Za-z][A-Za-z0-9_]*)|(?P<op>[-+*/^()\[\],_]))")


class ExprSyntaxError(ValueError):
    def __init__(self, msg: str, pos: int):
        super().__init__(f"{msg} at position {pos}")
        self.pos = pos


class UnknownSymbolError(KeyError):
    def __str__(self):
        return f"unknown symbol {self.args[0]!r}"


def tokenize(src: str) -> List[Tuple[str, str, int]]:
    out = []
    pos = 0
    src = src.rstrip()
    while pos < len(src):
        m = TOKEN_RE.match(src, pos)
        if not m or m.end() == pos:
            rest = src[pos:]
            bad = pos + len(rest) - len(rest.lstrip())
            raise ExprSyntaxError(f"unexpected character {src[bad]!r}", bad)
        kind = m.lastgroup
        out.append((kind, m.group(kind), m.start(kind)))
        pos = m.end()
    out.append(("end", "", len(src)))
    return out


class _Parser:
    def __init__(self, src: str):
        self.toks = tokenize(src)
        self.i = 0

    def peek(self):
        return self.toks[self.i]

    def take(self):
        t = self.toks[self.i]
        self.i += 1
        return t

    def expect(self, value: str):
        t = self.take()
        if t[1] != value or t[0] not in ("op", "name"):
            raise ExprSyntaxError(f"expected {value!r}, found {t[1] or 'end of input'!r}", t[2])
        return t

    def parse(self):
        node = self.expr()
        t = self.peek()
        if t[0] != "end":
            raise ExprSyntaxError(f"unexpected {t[1]!r}", t[2])
        return node

    def expr(self):
        node = self.term()
        while self.peek()[1] in ("+", "-") and self.peek()[0] == "op":
            op = self.take()[1]
            rhs = self.term()
            node = ("add" if op == "+" else "sub", node, rhs)
        return node

    def _starts_factor(self, t) -> bool:
        return t[0] in ("num", "name") or (t[0] == "op" and t[1] in ("(", "["))

    def term(self):
        node = self.unary()
        while True:
            t = self.peek()
            if t[0] == "op" and t[1] in ("*", "/"):
                self.take()
                rhs = self.unary()
                node = ("mul" if t[1] == "*" else "div", node, rhs)
            elif self._starts_factor(t):
                node = ("mul", node, self.unary())
            else:
                return node

    def unary(self):
        t = self.peek()
        if t[0] == "op" and t[1] == "-":
            self.take()
            return ("neg", self.unary())
        return self.power()

    def power(self):
        node = self.atom()
        if self.peek()[1] == "^" and self.peek()[0] == "op":
            self.take()
            node = ("pow", node, self.exponent())
        return node

    def _int(self) -> int:
        t = self.take()
        if t[0] != "num":
            raise ExprSyntaxError(f"expected an integer, found {t[1] or 'end of input'!r}", t[2])
        return int(t[1])

    def exponent(self) -> Fraction:
        t = self.peek()
        if t[1] == "-":
            self.take()
            return Fraction(-self._int())
        if t[1] == "(":
            self.take()
            sign = 1
            if self.peek()[1] == "-":
                self.take()
                sign = -1
            num = self._int()
            den = 1
            if self.peek()[1] == "/":
                self.take()
                den = self._int()
                if den == 0:
                    raise ExprSyntaxError("zero denominator in exponent", self.toks[self.i - 1][2])
            self.expect(")")
            return Fraction(sign * num, den)
        return Fraction(self._int())

    def atom(self):
        t = self.take()
        if t[0] == "num":
            return ("num", Fraction(int(t[1])))
        if t[0] == "name":
            return ("name", t[1])
        if t[1] == "(":
            node = self.expr()
            self.expect(")")
            return node
        if t[1] == "[":
            a = self.expr()
            self.expect(",")
            b = self.expr()
            self.expect("]")
            self.expect("_")
            self.expect("q")
            inverse = False
            if self.peek()[1] == "^":
                self.take()
                e = self.exponent()
                if e not in (1, -1):
                    raise ExprSyntaxError("bracket subscript must be q or q^-1", self.toks[self.i - 1][2])
                inverse = e == -1
            return ("bracket", a, b, inverse)
        raise ExprSyntaxError(f"unexpected {t[1] or 'end of input'!r}", t[2])


def parse_expression(src: str):
    """Parse text into a tuple tree; raises ExprSyntaxError with the offending position."""
    return _Parser(src).parse()


def names_in(node) -> Set[str]:
    kind = node[0]
    if kind == "name":
        return {node[1]}
    if kind == "num":
        return set()
    out = set()
    for child in node[1:]:
        if isinstance(child, tuple):
            out |= names_in(child)
    return out


# ---------------------------------------------------------------------------
# Evaluation
# ---------------------------------------------------------------------------

BASE_ENV = {"q": Q, "t": T}


def _is_scalar(x) -> bool:
    return isinstance(x, (int, Fraction, QScalar, QFraction))


def _simplify(x):
    if isinstance(x, QFraction) and x.is_polynomial():
        return x.numerator
    if isinstance(x, Fraction) and x.denominator == 1:
        return int(x)
    return x


def _divide(a, b):
    if not _is_scalar(b):
        raise TypeError("division is only defined by scalars")
    if not b:
        raise ZeroDivisionError("division by zero")
    if isinstance(b, (int, Fraction)):
        b = Fraction(b)
        if _is_scalar(a):
            return _simplify(a / b) if not isinstance(a, int) else _simplify(Fraction(a) / b)
        return a * (1 / b)
    if _is_scalar(a):
        return _simplify(QFraction.coerce(a) / QFraction.coerce(b))
    if isinstance(b, QScalar) and hasattr(a, "divexact"):
        try:
            return a.divexact(b)
        except InexactDivisionError:
            pass
    return a * QFraction.coerce(b).inverse()


def _power(base, e: Fraction, base_node):
    if e.denominator != 1:
        if base_node == ("name", "q"):
            return q_pow(e)
        raise ValueError("half-integer exponents are only allowed on q")
    n = int(e)
    if base_node == ("name", "q"):
        return q_pow(n)
    if isinstance(base, (int, Fraction)):
        return _simplify(Fraction(base) ** n)
    if n < 0 and _is_scalar(base) and not (isinstance(base, QScalar) and base.is_monomial()):
        return _simplify(QFraction.coerce(base) ** n)
    return base ** n


def evaluate(node, env: Mapping[str, object]):
    kind = node[0]
    if kind == "num":
        return _simplify(node[1])
    if kind == "name":
        name = node[1]
        if name in env:
            return env[name]
        if name in BASE_ENV:
            return BASE_ENV[name]
        raise UnknownSymbolError(name)
    if kind == "neg":
        return -evaluate(node[1], env)
    if kind == "pow":
        return _power(evaluate(node[1], env), node[2], node[1])
    if kind == "bracket":
        from .qtorus import q_commutator

        return q_commutator(evaluate(node[1], env), evaluate(node[2], env), inverse=node[3])
    a, b = evaluate(node[1], env), evaluate(node[2], env)
    if kind == "add":
        return a + b
    if kind == "sub":
        return a - b
    if kind == "mul":
        return a * b
    if kind == "div":
        return _divide(a, b)
    raise ValueError(f"bad node {kind!r}")


def evaluate_text(src: str, env: Mapping[str, object] | None = None):
    return evaluate(parse_expression(src), env or {})
