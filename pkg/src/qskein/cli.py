"""Command-line front end.

Examples::

    qskein normalize "T X T"
    qskein mul "x1" "x2" --algebra torus6
    qskein embed "[Y1, Y2]_q / (q^2 - q^(-2))"
    qskein act "x1 x6" "x y^-1"
    qskein curve 5 3 --style paper
    qskein vmul "v_mm v_pp"
    qskein verify all --json
"""

from __future__ import annotations

import argparse
import json
import sys
from typing import Dict, List, Optional, Tuple

from . import daha, laurentmod, solidtorus, statedtorus
from .expr import ExprSyntaxError, UnknownSymbolError, evaluate, names_in, parse_expression
from .qtorus import A_Q, ContextError, TorusElement, render_e_basis, render_torus_element, torus_to_json
from .report import SUITE_NAMES, format_report, run_suite
from .scalars import QFraction, QScalar, render_fraction, render_scalar
from .toruscurves import (CurveDomainError, curve_element, curve_expression, evaluate_curve_expression,
                          expression_to_text, render_curve_expression, standard_assignment)

CONTEXT_ORDER = ("daha", "curves", "torus6", "solid", "laurent")


def context_env(name: str) -> Dict[str, object]:
    if name == "daha":
        return {"X": daha.X(), "Y": daha.Y(), "T": daha.T()}
    if name == "curves":
        env: Dict[str, object] = {"X": A_Q.gen(1), "Y": A_Q.gen(2)}
        env.update(standard_assignment())
        return env
    if name == "torus6":
        ctx = statedtorus.CTX
        env = {f"x{i}": ctx.torus6.gen(i) for i in range(1, 7)}
        env.update(ctx.constants())
        env.update({"Y1": ctx.img_y1, "Y2": ctx.img_y2, "Y3": ctx.img_y3, "D": ctx.img_boundary,
                    "X1": ctx.img_X1_0_pp, "X2": ctx.img_X2_0_pp, "X3": ctx.img_X3_0_pp})
        return env
    if name == "solid":
        env = {n: solidtorus.v(s) for n, s in zip(solidtorus.GEN_NAMES, solidtorus.STATES)}
        env["dK"] = solidtorus.core_curve()
        return env
    if name == "laurent":
        return {n: laurentmod.LPoly4.var(n) for n in laurentmod.VAR_NAMES}
    raise ContextError(f"unknown algebra {name!r}")


def pick_context(names, forced: Optional[str] = None) -> Optional[str]:
    """First context (in CONTEXT_ORDER) that knows every name; None for pure scalars."""
    names = set(names) - {"q", "t"}
    if forced and forced != "auto":
        if forced == "scalar":
            if names:
                raise UnknownSymbolError(sorted(names)[0])
            return None
        missing = names - set(context_env(forced))
        if missing:
            raise UnknownSymbolError(sorted(missing)[0])
        return forced
    if not names:
        return None
    for c in CONTEXT_ORDER:
        if names <= set(context_env(c)):
            return c
    known = set().union(*(context_env(c) for c in CONTEXT_ORDER))
    unknown = sorted(names - known)
    if unknown:
        raise UnknownSymbolError(unknown[0])
    raise ContextError(f"symbols {', '.join(sorted(names))} do not belong to a single algebra")


def render_value(value) -> str:
    if isinstance(value, daha.DahaElement):
        return daha.render_daha(value)
    if isinstance(value, TorusElement):
        return render_torus_element(value)
    if isinstance(value, solidtorus.VElement):
        return solidtorus.render_velement(value)
    if isinstance(value, laurentmod.LPoly4):
        return laurentmod.render_lpoly(value)
    if isinstance(value, QFraction):
        return render_fraction(value)
    return render_scalar(QScalar.coerce(value))


def value_terms(value):
    """JSON-friendly term list, sorted by exponent vector."""
    if isinstance(value, daha.DahaElement):
        return daha.daha_to_json(value)
    if isinstance(value, TorusElement):
        return torus_to_json(value)
    if isinstance(value, (solidtorus.VElement, laurentmod.LPoly4)):
        return [{"exps": list(k), "coeff": render_scalar(c)} for k, c in value.sorted_terms()]
    if isinstance(value, QFraction):
        return [{"coeff": render_fraction(value)}]
    return [{"coeff": render_scalar(QScalar.coerce(value))}]


def evaluate_in(srcs: List[str], forced: Optional[str] = None) -> Tuple[Optional[str], list]:
    trees = [parse_expression(s) for s in srcs]
    names = set().union(*(names_in(t) for t in trees))
    ctx = pick_context(names, forced)
    env = context_env(ctx) if ctx else {}
    return ctx, [evaluate(t, env) for t in trees]


def _emit(args, payload: dict, text: str) -> None:
    if args.json:
        print(json.dumps(payload, indent=2, sort_keys=False))
    else:
        print(text)


# ---------------------------------------------------------------------------
# Subcommands
# ---------------------------------------------------------------------------


def cmd_normalize(args) -> int:
    ctx, (value,) = evaluate_in([args.expr], args.algebra)
    out = render_value(value)
    _emit(args, {"algebra": ctx or "scalar", "input": args.expr, "result": out, "terms": value_terms(value)}, out)
    return 0


def cmd_mul(args) -> int:
    ctx, (a, b) = evaluate_in([args.left, args.right], args.algebra)
    value = a * b
    out = render_value(value)
    _emit(args, {"algebra": ctx or "scalar", "result": out, "terms": value_terms(value)}, out)
    return 0


def cmd_embed(args) -> int:
    ctx, (value,) = evaluate_in([args.word], "torus6")
    out = render_value(value)
    _emit(args, {"algebra": ctx, "input": args.word, "result": out, "terms": value_terms(value)}, out)
    return 0


def cmd_act(args) -> int:
    _, (a,) = evaluate_in([args.element], "torus6")
    _, (f,) = evaluate_in([args.poly], "laurent")
    if not isinstance(a, TorusElement):
        a = statedtorus.CTX.torus6.scalar(a)
    if not isinstance(f, laurentmod.LPoly4):
        f = laurentmod.LPoly4({(0, 0, 0, 0): QScalar.coerce(f)})
    value = laurentmod.element_action(a, f)
    out = render_value(value)
    _emit(args, {"element": render_value(a), "input": render_value(f), "result": out,
                 "terms": value_terms(value)}, out)
    return 0


def cmd_curve(args) -> int:
    expr = curve_expression(args.p, args.q, style=args.style)
    value = evaluate_curve_expression(expr)
    ok = value == curve_element(args.p, args.q)
    payload = {"curve": [args.p, args.q], "style": args.style, "expression": expression_to_text(expr),
               "e_basis": render_e_basis(value), "matches_oracle": ok}
    text = "\n".join([render_curve_expression(expr), f"= {render_e_basis(value)}",
                      f"oracle: {'match' if ok else 'MISMATCH'}"])
    _emit(args, payload, text)
    return 0 if ok else 1


def cmd_vmul(args) -> int:
    tree = parse_expression(args.word)
    env = context_env("solid")
    unknown = names_in(tree) - set(env) - {"q", "t"}
    if unknown:
        raise UnknownSymbolError(sorted(unknown)[0])
    if args.rules != "literal":
        # re-evaluate with the alternative rule set by routing products through v_mul
        env = {k: _RuleView(v, args.rules) for k, v in env.items()}
    value = evaluate(tree, env)
    if isinstance(value, _RuleView):
        value = value.elem
    if not isinstance(value, solidtorus.VElement):
        value = solidtorus.v_one().scale(QScalar.coerce(value))
    out = render_value(value)
    _emit(args, {"rules": args.rules, "input": args.word, "result": out, "terms": value_terms(value)}, out)
    return 0


class _RuleView:
    """Wraps a VElement so that ``*`` uses a chosen rewrite rule set."""

    def __init__(self, elem, rules):
        self.elem, self.rules = elem, rules

    def _wrap(self, e):
        return _RuleView(e, self.rules)

    @staticmethod
    def _unwrap(x):
        return x.elem if isinstance(x, _RuleView) else x

    def __mul__(self, other):
        o = self._unwrap(other)
        if isinstance(o, solidtorus.VElement):
            return self._wrap(solidtorus.v_mul(self.elem, o, self.rules))
        return self._wrap(self.elem * o)

    def __rmul__(self, other):
        return self._wrap(other * self.elem)

    def __add__(self, other):
        return self._wrap(self.elem + self._unwrap(other))

    __radd__ = __add__

    def __sub__(self, other):
        return self._wrap(self.elem - self._unwrap(other))

    def __rsub__(self, other):
        return self._wrap(self._unwrap(other) - self.elem)

    def __neg__(self):
        return self._wrap(-self.elem)

    def __pow__(self, n):
        r = self._wrap(solidtorus.v_one())
        for _ in range(n):
            r = r * self
        return r

    def divexact(self, c):
        return self._wrap(self.elem.divexact(c))


def cmd_verify(args) -> int:
    report = run_suite(args.suite, seed=args.seed, include_exploratory=not args.no_exploratory)
    if args.json:
        print(json.dumps(report, indent=2))
    else:
        print(format_report(report))
    return 0 if report["passed"] else 1


# ---------------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="qskein", description="Exact computations in quantum tori, the A1 DAHA "
                                "and stated skein models of the torus.")
    p.add_argument("--json", action="store_true", help="machine-readable output")
    sub = p.add_subparsers(dest="command", required=True)
    algebras = ("auto", "scalar") + CONTEXT_ORDER

    def add(name, func, help_text):
        sp = sub.add_parser(name, help=help_text)
        sp.add_argument("--json", action="store_true", default=argparse.SUPPRESS, help="machine-readable output")
        sp.set_defaults(func=func)
        return sp

    sp = add("normalize", cmd_normalize, "evaluate an expression and print its normal form")
    sp.add_argument("expr")
    sp.add_argument("--algebra", choices=algebras, default="auto")

    sp = add("mul", cmd_mul, "multiply two expressions")
    sp.add_argument("left")
    sp.add_argument("right")
    sp.add_argument("--algebra", choices=algebras, default="auto")

    sp = add("embed", cmd_embed, "image in the rank-6 torus of a word in Y1, Y2, Y3, D, X1, X2, X3, x1..x6")
    sp.add_argument("word")

    sp = add("act", cmd_act, "act with a rank-6 torus element on a Laurent polynomial in x, y, z, w")
    sp.add_argument("element")
    sp.add_argument("poly")

    sp = add("curve", cmd_curve, "nested q-commutator expression for the (p, q) curve")
    sp.add_argument("p", type=int)
    sp.add_argument("q", type=int)
    sp.add_argument("--style", choices=("compact", "paper"), default="compact")

    sp = add("vmul", cmd_vmul, "normal form of a word in v_pp, v_pm, v_mp, v_mm")
    sp.add_argument("word")
    sp.add_argument("--rules", choices=tuple(solidtorus.RULESETS), default="literal")

    sp = add("verify", cmd_verify, "run a verification suite")
    sp.add_argument("suite", choices=SUITE_NAMES + ("all",))
    sp.add_argument("--seed", type=int, default=0)
    sp.add_argument("--no-exploratory", action="store_true", help="skip exploratory checks")
    return p


def main(argv: Optional[List[str]] = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except ExprSyntaxError as exc:
        print(f"syntax error: {exc}", file=sys.stderr)
    except UnknownSymbolError as exc:
        print(f"error: {exc}", file=sys.stderr)
    except (ContextError, CurveDomainError, ValueError, TypeError, ArithmeticError) as exc:
        print(f"error: {exc}", file=sys.stderr)
    return 2


if __name__ == "__main__":
    sys.exit(main())
