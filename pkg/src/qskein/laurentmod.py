"""A module for the rank-6 torus on Laurent polynomials in x, y, z, w.

Each generator of T^6 acts by a *shift operator*: multiply by a monomial
after rescaling every variable by a power of q.  On a monomial y^a,

    (m, s, p) . y^a = p * q^(s . a) * y^(a + m).

Shift operators compose to shift operators, so a torus monomial
x1^u1 ... x6^u6 acts by the composite x1^u1 o x2^u2 o ... o x6^u6 and the
whole torus acts by linearity.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Dict, Iterable, List, Optional, Sequence, Tuple

from .qtorus import QuantumTorus, TorusElement
from .scalars import ONE, ZERO, QScalar, q_pow, render_scalar
from .statedtorus import CTX, T6, Check, Q6

Vec = Tuple[int, ...]
VAR_NAMES = ("x", "y", "z", "w")


class LatticePreconditionError(ValueError):
    """The input polynomial is not in the subspace the check is about."""


# ---------------------------------------------------------------------------
# Laurent polynomials
# ---------------------------------------------------------------------------


class LPoly4:
    """Sparse commutative Laurent polynomial with QScalar coefficients."""

    __slots__ = ("terms", "nvars")

    def __init__(self, terms: Dict[Vec, QScalar] | None = None, nvars: int = 4):
        self.nvars = nvars
        clean = {}
        for k, c in (terms or {}).items():
            c = QScalar.coerce(c)
            if c:
                k = tuple(int(e) for e in k)
                if len(k) != nvars:
                    raise ValueError(f"expected {nvars} exponents")
                clean[k] = c
        self.terms = clean

    @classmethod
    def monomial(cls, exps: Iterable[int], coeff=ONE) -> "LPoly4":
        exps = tuple(exps)
        return cls({exps: coeff}, nvars=len(exps))

    @classmethod
    def one(cls, nvars: int = 4) -> "LPoly4":
        return cls({(0,) * nvars: ONE}, nvars=nvars)

    @classmethod
    def var(cls, name: str) -> "LPoly4":
        e = [0, 0, 0, 0]
        e[VAR_NAMES.index(name)] = 1
        return cls.monomial(e)

    def _lift(self, other):
        if isinstance(other, LPoly4):
            return other
        c = QScalar.coerce(other)
        if c is NotImplemented:
            return NotImplemented
        return LPoly4({(0,) * self.nvars: c}, nvars=self.nvars)

    def __eq__(self, other):
        other = self._lift(other)
        if other is NotImplemented:
            return NotImplemented
        return self.terms == other.terms

    def __hash__(self):
        return hash(frozenset(self.terms.items()))

    def is_zero(self):
        return not self.terms

    def __bool__(self):
        return bool(self.terms)

    def __add__(self, other):
        other = self._lift(other)
        if other is NotImplemented:
            return NotImplemented
        out = dict(self.terms)
        for k, c in other.terms.items():
            s = out.get(k, ZERO) + c
            if s:
                out[k] = s
            else:
                out.pop(k, None)
        return LPoly4(out, self.nvars)

    __radd__ = __add__

    def __neg__(self):
        return LPoly4({k: -c for k, c in self.terms.items()}, self.nvars)

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

    def __mul__(self, other):
        other = self._lift(other)
        if other is NotImplemented:
            return NotImplemented
        out: Dict[Vec, QScalar] = {}
        for a, ca in self.terms.items():
            for b, cb in other.terms.items():
                k = tuple(x + y for x, y in zip(a, b))
                s = out.get(k, ZERO) + ca * cb
                if s:
                    out[k] = s
                else:
                    out.pop(k, None)
        return LPoly4(out, self.nvars)

    __rmul__ = __mul__

    def __pow__(self, n: int):
        if n < 0:
            if len(self.terms) != 1:
                raise ValueError("only monomials have inverses")
            (k, c), = self.terms.items()
            return LPoly4({tuple(-e for e in k): c.inverse()}, self.nvars) ** (-n)
        r = LPoly4.one(self.nvars)
        for _ in range(n):
            r = r * self
        return r

    def sorted_terms(self):
        return sorted(self.terms.items())

    def __repr__(self):
        return f"LPoly4({render_lpoly(self)!r})"

    def __str__(self):
        return render_lpoly(self)


def render_lpoly(f: LPoly4) -> str:
    names = VAR_NAMES if f.nvars == 4 else tuple(f"y{i + 1}" for i in range(f.nvars))
    if not f.terms:
        return "0"
    out = []
    for k, c in f.sorted_terms():
        parts = []
        for n, e in zip(names, k):
            if e == 1:
                parts.append(n)
            elif e:
                parts.append(f"{n}^{e}" if e > 0 else f"{n}^({e})")
        mono = "*".join(parts)
        if c.is_monomial():
            ((a2, b), v), = c.items()
            neg = v < 0
            cs = render_scalar(QScalar({(a2, b): -v if neg else v}))
            body = mono if (cs == "1" and mono) else (f"{cs}*{mono}" if mono else cs)
        else:
            neg = False
            cs = render_scalar(c)
            body = f"({cs})*{mono}" if mono else f"({cs})"
        if not out:
            out.append(f"-{body}" if neg else body)
        else:
            out.append(f" - {body}" if neg else f" + {body}")
    return "".join(out)


# ---------------------------------------------------------------------------
# Shift operators
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class ShiftOperator:
    mult: Vec
    shift: Tuple[Fraction, ...]
    prefactor: QScalar = ONE

    def __post_init__(self):
        object.__setattr__(self, "shift", tuple(Fraction(s) for s in self.shift))
        object.__setattr__(self, "mult", tuple(int(m) for m in self.mult))
        # doubled shifts, so applying the operator stays in integer arithmetic
        object.__setattr__(self, "_s2", tuple(int(2 * s) for s in self.shift))

    @classmethod
    def identity(cls, nvars: int = 4) -> "ShiftOperator":
        return cls((0,) * nvars, (0,) * nvars, ONE)

    def then(self, other: "ShiftOperator") -> "ShiftOperator":
        """self o other (apply ``other`` first)."""
        cross = sum(s * m for s, m in zip(self.shift, other.mult))
        return ShiftOperator(
            tuple(a + b for a, b in zip(self.mult, other.mult)),
            tuple(a + b for a, b in zip(self.shift, other.shift)),
            self.prefactor * other.prefactor * q_pow(cross),
        )

    __matmul__ = then

    def inverse(self) -> "ShiftOperator":
        own = sum(s * m for s, m in zip(self.shift, self.mult))
        return ShiftOperator(tuple(-m for m in self.mult), tuple(-s for s in self.shift),
                             q_pow(own) * self.prefactor.inverse())

    def power(self, n: int) -> "ShiftOperator":
        base = self if n >= 0 else self.inverse()
        r = ShiftOperator.identity(len(self.mult))
        for _ in range(abs(n)):
            r = r.then(base)
        return r

    def apply(self, f: LPoly4) -> LPoly4:
        out: Dict[Vec, QScalar] = {}
        s2, mult, pre = self._s2, self.mult, self.prefactor
        for a, c in f.terms.items():
            ph2 = sum(s * e for s, e in zip(s2, a))
            k = tuple(x + m for x, m in zip(a, mult))
            v = c * pre
            if ph2:
                v = v * QScalar({(ph2, 0): 1}, _trusted=True)
            s = out.get(k)
            s = v if s is None else s + v
            if s:
                out[k] = s
            else:
                out.pop(k, None)
        r = LPoly4(nvars=f.nvars)
        r.terms = out
        return r


def _op(mult, shift) -> ShiftOperator:
    return ShiftOperator(tuple(mult), tuple(shift), ONE)


# The six generator actions, transcribed from the displayed formulas.
GENERATOR_OPERATORS: Dict[int, ShiftOperator] = {
    1: _op((1, 0, 0, 0), (0, 1, 1, -1)),
    2: _op((0, 1, 0, 0), (-1, 0, -1, -2)),
    3: _op((0, 0, 1, 0), (-1, 1, 0, -1)),
    4: _op((0, 0, 0, 1), (1, 2, 1, 0)),
    5: _op((0, 0, 0, 0), (0, 0, 0, 0)),
    6: _op((0, 0, 0, 0), (4, 4, 4, 4)),
}


def generator_action(i: int, f: LPoly4, operators: Dict[int, ShiftOperator] = GENERATOR_OPERATORS) -> LPoly4:
    return operators[i].apply(f)


def monomial_operator(exps: Sequence[int], operators: Dict[int, ShiftOperator] = GENERATOR_OPERATORS) -> ShiftOperator:
    """x1^u1 o x2^u2 o ... o xn^un."""
    nvars = len(next(iter(operators.values())).mult)
    r = ShiftOperator.identity(nvars)
    for i, u in enumerate(exps, start=1):
        if u:
            r = r.then(operators[i].power(u))
    return r


def element_action(a: TorusElement, f: LPoly4, operators: Dict[int, ShiftOperator] = GENERATOR_OPERATORS) -> LPoly4:
    return apply_operator_list(element_operators(a, operators), f)


def apply_operator_list(ops: List[Tuple[QScalar, ShiftOperator]], f: LPoly4) -> LPoly4:
    total = LPoly4({}, f.nvars)
    for c, op in ops:
        total = total + op.apply(f) * LPoly4({(0,) * f.nvars: c}, f.nvars)
    return total


def element_operators(a: TorusElement, operators: Dict[int, ShiftOperator] = GENERATOR_OPERATORS) -> List[Tuple[QScalar, ShiftOperator]]:
    """The torus element as a list of (coefficient, shift operator)."""
    return [(c, monomial_operator(u, operators)) for u, c in sorted(a.terms.items())]


# ---------------------------------------------------------------------------
# The general construction for an arbitrary antisymmetric matrix
# ---------------------------------------------------------------------------


def general_module_operators(Q: Sequence[Sequence[int]], variable: Sequence[int], shift_gen: int,
                             central: Sequence[int]) -> Dict[int, ShiftOperator]:
    """Operators for a torus whose generators split into variable ones, one shift generator and central ones.

    Indices are 1-based.  Variable generator i acts as y_i f(q^(Q_{i,j}/2) y_j);
    the shift generator as f(q^(Q_{k,j}) y_j); central generators trivially.
    """
    n = len(Q)
    idx = list(variable) + [shift_gen] + list(central)
    if sorted(idx) != list(range(1, n + 1)):
        raise ValueError("variable, shift and central generators must partition 1..n")
    for m in central:
        if any(Q[m - 1][j] for j in range(n)):
            raise ValueError(f"generator {m} is not central")
    nv = len(variable)
    ops: Dict[int, ShiftOperator] = {}
    for pos, i in enumerate(variable):
        mult = [0] * nv
        mult[pos] = 1
        ops[i] = ShiftOperator(tuple(mult), tuple(Fraction(Q[i - 1][j - 1], 2) for j in variable))
    ops[shift_gen] = ShiftOperator((0,) * nv, tuple(Fraction(Q[shift_gen - 1][j - 1]) for j in variable))
    for m in central:
        ops[m] = ShiftOperator.identity(nv)
    return ops


INSTANCE_SPLIT = {"variable": (1, 2, 3, 4), "shift_gen": 6, "central": (5,)}


def general_instance_operators() -> Dict[int, ShiftOperator]:
    return general_module_operators(Q6, **INSTANCE_SPLIT)


# ---------------------------------------------------------------------------
# Displayed action formulas
# ---------------------------------------------------------------------------

PRINTED_ACTIONS: Dict[str, List[ShiftOperator]] = {
    "y1": [_op((0, 1, -1, 0), (0, -1, -1, -1)),
           _op((0, -1, 1, 0), (0, 1, 1, 1)),
           _op((2, 0, -1, -1), (0, -1, 1, -1)),
           _op((1, -1, 0, -1), (0, -1, 1, 1))],
    "y2": [_op((1, 0, -1, 0), (1, 0, 1, 0)),
           _op((-1, 0, 1, 0), (-1, 0, -1, 0)),
           _op((-1, 1, -1, 1), (1, 0, -1, 0))],
    "y3": [_op((1, 0, 0, -1), (-1, -1, 0, -1)),
           _op((-1, 0, 0, 1), (1, 1, 0, 1)),
           _op((-1, -1, 2, 0), (-1, 1, 0, 1)),
           _op((0, -1, 1, -1), (-1, -1, 0, 1))],
    "boundary": [_op((-1, 0, 1, -1), (-2, -2, -2, 0)),
                 _op((-1, -1, 1, 0), (0, 0, 0, 2)),
                 _op((0, -1, 0, 1), (2, 2, 2, 2)),
                 _op((-1, 0, -1, 1), (2, 0, 0, 2)),
                 _op((0, 1, 0, -1), (-2, -2, -2, -2)),
                 _op((-1, 1, -1, 0), (0, -2, -2, 0)),
                 _op((1, 0, -1, -1), (0, -2, 0, 0)),
                 _op((1, -1, -1, 0), (2, 0, 2, 2)),
                 _op((0, -1, 0, -1), (0, -2, 0, 2))],
}


def printed_action(name: str, f: LPoly4) -> LPoly4:
    total = LPoly4({}, f.nvars)
    for op in PRINTED_ACTIONS[name]:
        total = total + op.apply(f)
    return total


def embedding_images() -> Dict[str, TorusElement]:
    return {"y1": CTX.img_y1, "y2": CTX.img_y2, "y3": CTX.img_y3, "boundary": CTX.img_boundary}


def box_monomials(radius: int = 2, nvars: int = 4):
    from itertools import product
    for e in product(range(-radius, radius + 1), repeat=nvars):
        yield LPoly4.monomial(e)


def compare_printed_actions(radius: int = 2) -> Dict[str, Optional[str]]:
    """For each of y1, y2, y3, boundary: None if it matches on the box, else the first mismatch."""
    result = {}
    imgs = embedding_images()
    for name in ("y1", "y2", "y3", "boundary"):
        # compare operator lists first, then confirm on the box monomials
        mismatch = None
        ops = element_operators(imgs[name])
        for f in box_monomials(radius):
            a = apply_operator_list(ops, f)
            b = printed_action(name, f)
            if a != b:
                mismatch = f"{name} on {f}: computed {a}, printed {b}"
                break
        result[name] = mismatch
    return result


def has_monomial_eigenvector(a: TorusElement, radius: int = 2) -> Optional[LPoly4]:
    """Return a monomial f in the box with a.f a scalar multiple of f, or None."""
    ops = element_operators(a)
    for f in box_monomials(radius):
        g = apply_operator_list(ops, f)
        (k, _), = f.terms.items()
        if g.is_zero() or (len(g.terms) == 1 and k in g.terms):
            return f
    return None


# ---------------------------------------------------------------------------
# Integer lattices
# ---------------------------------------------------------------------------


def _echelon(rows: List[List[int]]):
    """Row echelon form H = U B over the integers with U unimodular; returns (H, U, pivots)."""
    B = [list(r) for r in rows]
    k = len(B)
    n = len(B[0]) if B else 0
    U = [[int(i == j) for j in range(k)] for i in range(k)]
    pivots = []
    r = 0
    for c in range(n):
        if r >= k:
            break
        # Euclid on column c among rows r..k-1
        while True:
            nz = [i for i in range(r, k) if B[i][c]]
            if not nz:
                break
            p = min(nz, key=lambda i: abs(B[i][c]))
            B[r], B[p] = B[p], B[r]
            U[r], U[p] = U[p], U[r]
            done = True
            for i in range(r + 1, k):
                if B[i][c]:
                    f = B[i][c] // B[r][c]
                    B[i] = [a - f * b for a, b in zip(B[i], B[r])]
                    U[i] = [a - f * b for a, b in zip(U[i], U[r])]
                    if B[i][c]:
                        done = False
            if done:
                break
        if any(B[i][c] for i in range(r, k)):
            if B[r][c] < 0:
                B[r] = [-a for a in B[r]]
                U[r] = [-a for a in U[r]]
            pivots.append((r, c))
            r += 1
    return B, U, pivots


def lattice_solve(generators: Sequence[Sequence[int]], v: Sequence[int]) -> Optional[List[int]]:
    """Integer coefficients c with sum c_i g_i = v, or None if v is not in the lattice."""
    H, U, pivots = _echelon([list(g) for g in generators])
    rem = list(v)
    x = [0] * len(H)
    for r, c in pivots:
        if rem[c] % H[r][c]:
            return None
        f = rem[c] // H[r][c]
        x[r] = f
        rem = [a - f * b for a, b in zip(rem, H[r])]
    if any(rem):
        return None
    k = len(generators)
    coeffs = [sum(x[r] * U[r][i] for r in range(len(H))) for i in range(k)]
    # sanity: reconstruct
    assert [sum(coeffs[i] * generators[i][j] for i in range(k)) for j in range(len(v))] == list(v)
    return coeffs


def lattice_index(generators: Sequence[Sequence[int]]) -> int:
    """|det| for a full-rank square generator set."""
    H, _, pivots = _echelon([list(g) for g in generators])
    if len(pivots) != len(H[0]):
        return 0
    d = 1
    for r, c in pivots:
        d *= H[r][c]
    return abs(d)


BOUNDARY_LATTICE = ((1, -1, -1, 0), (-1, 1, -1, 0), (-1, -1, 1, 0), (0, -1, 0, 1))
Y2_LATTICE = ((1, 0, -1, 0), (-1, 1, -1, 1))


@dataclass
class MembershipReport:
    invariant: bool
    outputs: List[Tuple[Vec, Optional[List[int]]]]
    image: LPoly4

    def as_dict(self):
        return {"invariant": self.invariant,
                "outputs": [{"exps": list(k), "coords": c} for k, c in self.outputs],
                "image": render_lpoly(self.image)}


def _check_subspace(a: TorusElement, lattice, f: LPoly4) -> MembershipReport:
    for k in sorted(f.terms):
        if lattice_solve(lattice, k) is None:
            raise LatticePreconditionError(f"monomial {render_lpoly(LPoly4.monomial(k))} is outside the subspace")
    g = element_action(a, f)
    outs = [(k, lattice_solve(lattice, k)) for k in sorted(g.terms)]
    return MembershipReport(all(c is not None for _, c in outs), outs, g)


def check_invariant_subspace_boundary(f: LPoly4) -> MembershipReport:
    return _check_subspace(CTX.img_boundary, BOUNDARY_LATTICE, f)


def check_invariant_subspace_y2(f: LPoly4) -> MembershipReport:
    return _check_subspace(CTX.img_y2, Y2_LATTICE, f)


def lattice_monomial(lattice, ks: Sequence[int]) -> LPoly4:
    e = [sum(k * g[j] for k, g in zip(ks, lattice)) for j in range(4)]
    return LPoly4.monomial(e)


def y2_display(k1: int, k2: int) -> LPoly4:
    """The displayed three-term image of (x/z)^k1 (yw/xz)^k2 under y2."""
    L = Y2_LATTICE
    return (lattice_monomial(L, (k1 - 1, k2)) * q_pow(2 * k2)
            + lattice_monomial(L, (k1 + 1, k2)) * q_pow(-2 * k2)
            + lattice_monomial(L, (k1, k2 + 1)) * q_pow(2 * k1))


def boundary_display(k1: int, k2: int, k3: int, k4: int) -> LPoly4:
    """The displayed nine-term image of a boundary-lattice monomial under the boundary curve."""
    L = BOUNDARY_LATTICE
    kap = k1 + k2 + k3 + k4
    rows = [
        (2 * kap, (k1, k2, k3 + 1, k4 - 1)),
        (2 * k4, (k1, k2, k3 + 1, k4)),
        (2 * (kap - k4), (k1, k2, k3, k4 - 1)),
        (-2 * (kap - k4), (k1, k2, k3, k4 + 1)),
        (2 * (kap - 2 * k2 + k4), (k1 + 1, k2, k3 + 1, k4 - 1)),
        (2 * (kap - 2 * k2), (k1 + 1, k2, k3, k4 - 1)),
        (2 * (k4 - 2 * k2), (k1 + 1, k2, k3, k4)),
        (2 * (2 * k1 + k4), (k1, k2 + 1, k3, k4)),
        (2 * (k1 - k2 - k3 + k4), (k1, k2 + 1, k3, k4 + 1)),
    ]
    total = LPoly4()
    for e, ks in rows:
        total = total + lattice_monomial(L, ks) * q_pow(e)
    return total


# ---------------------------------------------------------------------------
# Suite
# ---------------------------------------------------------------------------


def laurentmod_suite(seed: int = 0, include_exploratory: bool = True) -> List[Check]:
    import random
    from itertools import product
    from .qtorus import random_element

    rng = random.Random(seed)
    out: List[Check] = []

    # defining relations of the torus hold on the module
    bad = None
    for i, j in product(range(1, 7), repeat=2):
        lhs = GENERATOR_OPERATORS[i].then(GENERATOR_OPERATORS[j])
        rhs = GENERATOR_OPERATORS[j].then(GENERATOR_OPERATORS[i])
        if lhs.mult != rhs.mult or lhs.shift != rhs.shift or lhs.prefactor != rhs.prefactor * q_pow(Q6[i - 1][j - 1]):
            bad = f"x{i} x{j}"
            break
    out.append(Check("laurentmod.generator_relations", "x_i x_j = q^(Q_ij) x_j x_i on the module", bad is None, bad))

    bad = None
    for _ in range(30):
        a = random_element(T6, rng, n_terms=2, max_exp=2)
        b = random_element(T6, rng, n_terms=2, max_exp=2)
        f = LPoly4.monomial([rng.randint(-2, 2) for _ in range(4)])
        if element_action(a * b, f) != element_action(a, element_action(b, f)):
            bad = f"a = {a}, b = {b}, f = {f}"
            break
    out.append(Check("laurentmod.module_law", "module law (ab).f = a.(b.f)", bad is None, bad))

    for name, mism in compare_printed_actions(2).items():
        out.append(Check(f"laurentmod.printed_{name}", f"displayed action formula of {name} on the box [-2,2]^4",
                         mism is None, mism))

    gen_ops = general_instance_operators()
    same = all(gen_ops[i] == GENERATOR_OPERATORS[i] for i in range(1, 7))
    out.append(Check("laurentmod.general_matches_instance",
                     "general construction with variables x1..x4, shift x6, central x5 reproduces the six actions",
                     same, None if same else "operator mismatch", acceptance=False))

    # boundary invariant subspace
    bad = None
    for ks in product(range(-1, 2), repeat=4):
        f = lattice_monomial(BOUNDARY_LATTICE, ks)
        rep = check_invariant_subspace_boundary(f)
        if not rep.invariant:
            bad = f"image of {f} leaves the lattice"
            break
    out.append(Check("laurentmod.boundary_invariant_subspace", "boundary-curve invariant four-generator sublattice",
                     bad is None, bad))
    bad = None
    for ks in product(range(-3, 4), repeat=2):
        f = lattice_monomial(Y2_LATTICE, ks)
        rep = check_invariant_subspace_y2(f)
        if not rep.invariant:
            bad = f"image of {f} leaves the lattice"
            break
        if element_action(CTX.img_y2, f) != y2_display(*ks):
            bad = f"y2 display coefficients differ at {ks}"
            break
    out.append(Check("laurentmod.y2_invariant_subspace", "y2-invariant rank-2 sublattice and its three-term display",
                     bad is None, bad))

    eig = has_monomial_eigenvector(CTX.img_boundary, 2)
    out.append(Check("laurentmod.boundary_no_monomial_eigenvectors", "boundary curve has no monomial eigenvectors",
                     eig is None, None if eig is None else str(eig)))

    if include_exploratory:
        bad = None
        ops = element_operators(CTX.img_boundary)
        for ks in product(range(-2, 3), repeat=4):
            f = lattice_monomial(BOUNDARY_LATTICE, ks)
            got = apply_operator_list(ops, f)
            if got != boundary_display(*ks):
                bad = f"at k = {ks}: computed {got}, displayed {boundary_display(*ks)}"
                break
        out.append(Check("laurentmod.boundary_display_coefficients",
                         "displayed nine-term boundary action in lattice coordinates", bad is None, bad, acceptance=False))
    return out
