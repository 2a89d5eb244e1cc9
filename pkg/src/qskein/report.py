"""Verification suites and the report format used by the CLI.

A report is a plain dict::

    {"suite": name, "checks": [{"id", "anchor", "pass", "residual", ...}],
     "passed": bool, "timing": {"seconds": float}}

``passed`` only looks at acceptance checks; exploratory checks are listed
with ``"exploratory": true`` and never change the exit status.
"""

from __future__ import annotations

import random
import time
from math import gcd
from typing import Callable, Dict, List

from . import daha
from .laurentmod import laurentmod_suite
from .qtorus import A_Q, e_basis, q_commutator, render_torus_element, render_e_basis
from .scalars import QQ_DIFF, q_pow
from .solidtorus import solidtorus_suite
from .statedtorus import CTX, Check, embedding_suite, equality_check
from .toruscurves import (Bracket, curve_element, curve_expression, evaluate_curve_expression,
                          render_curve_expression, standard_assignment)

# ---------------------------------------------------------------------------
# Curves and the e-basis
# ---------------------------------------------------------------------------


def e_basis_law_failures(bound: int = 4) -> List[tuple]:
    """(r, s, u, v) with e_{r,s} e_{u,v} != q^(rv - us) e_{r+u,s+v}."""
    rng = range(-bound, bound + 1)
    basis = {(r, s): e_basis(r, s) for r in rng for s in rng}
    bad = []
    for (r, s), a in basis.items():
        for (u, v), b in basis.items():
            want = e_basis(r + u, s + v).scale(q_pow(r * v - u * s))
            if a * b != want:
                bad.append((r, s, u, v))
    return bad


def printed_53_word() -> Bracket:
    """The (5,3) word as printed, with the closed curve Y1 standing in for the innermost arc."""
    e = curve_expression(5, 3, style="paper")
    return Bracket(e.right, e.left, e.inverse, e.sign)


def curve_oracle_failures(bound: int = 8, style: str = "compact") -> List[tuple]:
    bad = []
    for p in range(-bound, bound + 1):
        for q in range(-bound, bound + 1):
            if (p, q) == (0, 0) or gcd(p, q) != 1:
                continue
            got = evaluate_curve_expression(curve_expression(p, q, style=style))
            if got != curve_element(p, q):
                bad.append((p, q))
    return bad


def curves_suite(include_exploratory: bool = True) -> List[Check]:
    out: List[Check] = []
    bad = e_basis_law_failures(4)
    out.append(Check("curves.e_basis_law", "e_{r,s} e_{u,v} = q^(rv - us) e_{r+u,s+v} for |r|,|s|,|u|,|v| <= 4",
                     not bad, None if not bad else f"{len(bad)} failures, first {bad[0]}"))
    y = standard_assignment()
    x1, x2, x3 = y["Y1"], y["Y2"], y["Y3"]
    for name, a, b, c in (("xy", x1, x2, x3), ("yz", x2, x3, x1), ("zx", x3, x1, x2)):
        out.append(equality_check(f"curves.bp_{name}", "cyclic q-commutator relation of the three torus curves",
                                  q_commutator(a, b), c.scale(QQ_DIFF), render_torus_element))
    for style in ("compact", "paper"):
        bad = curve_oracle_failures(8, style)
        out.append(Check(f"curves.oracle_{style}", "nested q-commutator equals e_{p,q} + e_{-p,-q}, coprime |p|,|q| <= 8",
                         not bad, None if not bad else f"failing slopes {bad}"))
    e53 = curve_expression(5, 3, style="paper")
    out.append(equality_check("curves.example_53", "the (5,3) word with six brackets",
                              evaluate_curve_expression(e53), curve_element(5, 3), render_e_basis,
                              note=render_curve_expression(e53)))
    if include_exploratory:
        lit = printed_53_word()
        out.append(equality_check("curves.example_53_as_printed", "the (5,3) word in its printed operand order",
                                  evaluate_curve_expression(lit), curve_element(1, 1), render_e_basis,
                                  acceptance=False, note="the printed operand order produces the (1,1) curve"))
    return out


# ---------------------------------------------------------------------------
# DAHA
# ---------------------------------------------------------------------------


def daha_associativity_failures(n: int = 200, seed: int = 0, bound: int = 3) -> List[tuple]:
    rng = random.Random(seed)
    bad = []
    for _ in range(n):
        keys = [(rng.randint(-bound, bound), rng.randint(0, 1), rng.randint(-bound, bound)) for _ in range(3)]
        a, b, c = (daha.pbw_monomial(*k) for k in keys)
        if (a * b) * c != a * (b * c):
            bad.append(tuple(keys))
    return bad


def _t1_flip_check() -> Check:
    X, Y, T = daha.X, daha.Y, daha.T
    words = {
        "XY + YX": (X() * Y() + Y() * X(), X(-1) * Y(-1) + Y(-1) * X(-1)),
        "XY^-1 + YX^-1": (X() * Y(-1) + Y() * X(-1), X(-1) * Y() + Y(-1) * X()),
    }
    bad = []
    for name, (w, flipped) in words.items():
        lhs = (T() * w * daha.T_inv()).subs(t=1)
        if lhs != flipped.subs(t=1):
            bad.append(name)
    return Check("daha.t1_conjugation", "at t = 1, conjugation by T inverts X and Y in symmetric words",
                 not bad, ", ".join(bad) or None)


def daha_suite(seed: int = 0) -> List[Check]:
    out: List[Check] = []
    for name, diff in daha.defining_relations():
        out.append(Check(f"daha.relation[{name}]", "defining relations of the double affine Hecke algebra",
                         diff.is_zero(), None if diff.is_zero() else daha.render_daha(diff)))
    e = daha.spherical_idempotent()
    out.append(equality_check("daha.idempotent", "the spherical idempotent squares to itself", e * e, e, daha.render_daha))
    bad = daha_associativity_failures(200, seed)
    out.append(Check("daha.associativity", "PBW products agree under both bracketings, 200 random monomial triples",
                     not bad, None if not bad else f"{len(bad)} failures, first {bad[0]}"))
    img = {g: daha.terwilliger_image(g) for g in "xyz"}
    for g in "xyz":
        out.append(equality_check(f"daha.spherical[{g}]", "the image commutes with e and is absorbed by it",
                                  e * img[g], img[g] * e, daha.render_daha))
    for a, b, c in (("x", "y", "z"), ("y", "z", "x"), ("z", "x", "y")):
        lhs = daha.q_commutator_daha(img[a], img[b])
        out.append(equality_check(f"daha.terwilliger_{a}{b}", "cyclic q-commutator relations on the spherical images",
                                  lhs, img[c].scale(QQ_DIFF), daha.render_daha))
    diff = daha.casimir_check()
    out.append(Check("daha.casimir", "Casimir combination of the images equals its scalar multiple of e",
                     diff.is_zero(), None if diff.is_zero() else daha.render_daha(diff)))
    cas = daha.casimir_combination(img["x"], img["y"], img["z"])
    out.append(equality_check("daha.casimir_central", "the Casimir combination commutes with the x image",
                              cas * img["x"], img["x"] * cas, daha.render_daha))
    out.append(_t1_flip_check())
    return out


# ---------------------------------------------------------------------------
# Runner
# ---------------------------------------------------------------------------

SUITE_NAMES = ("curves", "daha", "embedding", "laurentmod", "solidtorus")


def _suite_checks(name: str, seed: int, include_exploratory: bool) -> List[Check]:
    if name == "curves":
        return curves_suite(include_exploratory)
    if name == "daha":
        return daha_suite(seed)
    if name == "embedding":
        return embedding_suite(CTX, include_exploratory)
    if name == "laurentmod":
        return laurentmod_suite(seed, include_exploratory)
    if name == "solidtorus":
        return solidtorus_suite(seed, include_exploratory)
    raise ValueError(f"unknown suite {name!r}; expected one of {', '.join(SUITE_NAMES + ('all',))}")


def run_suite(name: str, seed: int = 0, include_exploratory: bool = True) -> Dict:
    names = SUITE_NAMES if name == "all" else (name,)
    start = time.perf_counter()
    checks: List[Check] = []
    per_suite = {}
    for n in names:
        t0 = time.perf_counter()
        checks += _suite_checks(n, seed, include_exploratory)
        per_suite[n] = round(time.perf_counter() - t0, 3)
    passed = all(c.passed for c in checks if c.acceptance)
    return {
        "suite": name,
        "checks": [c.as_dict() for c in checks],
        "passed": passed,
        "timing": {"seconds": round(time.perf_counter() - start, 3), "suites": per_suite},
    }


def format_report(report: Dict) -> str:
    lines = []
    for c in report["checks"]:
        status = "PASS" if c["pass"] else "FAIL"
        tag = " (exploratory)" if c.get("exploratory") else ""
        lines.append(f"{status}  {c['id']}{tag}  [{c['anchor']}]")
        if not c["pass"] and c.get("residual"):
            lines.append(f"      residual: {c['residual']}")
        if c.get("note"):
            lines.append(f"      note: {c['note']}")
    n_fail = sum(1 for c in report["checks"] if not c["pass"] and not c.get("exploratory"))
    total = sum(1 for c in report["checks"] if not c.get("exploratory"))
    lines.append(f"{report['suite']}: {total - n_fail}/{total} acceptance checks passed "
                 f"in {report['timing']['seconds']:.2f}s")
    return "\n".join(lines)
