"""Shift operators on C[h], h-free presentations of sl(n+1), Nilsson's
rank-one modules, the explicit intertwiner with T(b, V, S), and the
weighting functor.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import product
from typing import Iterable, Mapping, Sequence

from . import linalg as la
from .exactcore import MultiPoly, falling, frac, taylor_constant
from .glnmod import GlModule, one_dim
from .slpresent import (SlPresentation, build_omega, e, h, presentations_equal, root, sl_basis,
                        twist_presentation, verify_presentation)
from .tensormod import TensorContext, act_polynomial_model, lemma_map_inverse, poly_exponents
from .verdict import Verdict
from .weyl import OperatorMatrix, WeylOp, apply_to_monomial


class ShiftOp:
    """sum_k p_k(h) sigma^k with polynomial coefficients kept to the left.

    sigma_i f(h) = f(h - e_i), so sigma_i p(h) = p(h - e_i) sigma_i.
    """

    __slots__ = ("n", "terms")

    def __init__(self, n: int, terms: Mapping | None = None):
        self.n = n
        clean = {}
        for k, p in (terms or {}).items():
            k = tuple(int(x) for x in k)
            if len(k) != n:
                raise ValueError(f"shift {k} has length {len(k)}, expected {n}")
            if not isinstance(p, MultiPoly):
                p = MultiPoly.const(n, p, var="h")
            if p:
                q = clean.get(k)
                q = p if q is None else q + p
                if q:
                    clean[k] = q
                else:
                    clean.pop(k, None)
        self.terms = clean

    @classmethod
    def const(cls, n, c=1):
        return cls(n, {(0,) * n: MultiPoly.const(n, c, var="h")})

    @classmethod
    def poly(cls, p: MultiPoly):
        return cls(p.n, {(0,) * p.n: p})

    @classmethod
    def hvar(cls, n, k):
        return cls.poly(MultiPoly.variable(n, k, var="h"))

    @classmethod
    def sigma(cls, n, shift):
        return cls(n, {tuple(shift): MultiPoly.const(n, 1, var="h")})

    def zero_like(self):
        return ShiftOp(self.n)

    def scalar_like(self, c):
        return ShiftOp.const(self.n, c)

    def _coerce(self, other):
        if isinstance(other, ShiftOp):
            if other.n != self.n:
                raise ValueError(f"dimension mismatch: {self.n} vs {other.n}")
            return other
        if isinstance(other, MultiPoly):
            return ShiftOp.poly(other)
        return ShiftOp.const(self.n, other)

    def __add__(self, other):
        other = self._coerce(other)
        out = dict(self.terms)
        for k, p in other.terms.items():
            out[k] = out[k] + p if k in out else p
        return ShiftOp(self.n, out)

    __radd__ = __add__

    def __neg__(self):
        return ShiftOp(self.n, {k: -p for k, p in self.terms.items()})

    def __sub__(self, other):
        return self + (-self._coerce(other))

    def __rsub__(self, other):
        return self._coerce(other) - self

    def __mul__(self, other):
        if not isinstance(other, (ShiftOp, MultiPoly)):
            c = frac(other)
            return ShiftOp(self.n, {k: p * c for k, p in self.terms.items()})
        other = self._coerce(other)
        out: dict = {}
        for a, p in self.terms.items():
            for b, q in other.terms.items():
                k = tuple(x + y for x, y in zip(a, b))
                term = p * q.shift([-x for x in a])
                out[k] = out[k] + term if k in out else term
        return ShiftOp(self.n, out)

    def __rmul__(self, other):
        if isinstance(other, MultiPoly):
            return ShiftOp.poly(other) * self
        return self * other

    def __pow__(self, k: int):
        out = ShiftOp.const(self.n)
        for _ in range(k):
            out = out * self
        return out

    def __eq__(self, other):
        if isinstance(other, ShiftOp):
            return self.n == other.n and self.terms == other.terms
        return self == self._coerce(other)

    def __hash__(self):
        return hash((self.n, frozenset(self.terms.items())))

    def __bool__(self):
        return bool(self.terms)

    def is_scalar(self) -> bool:
        return all(not any(k) and p.is_constant() for k, p in self.terms.items())

    def scalar_value(self) -> Fraction:
        p = self.terms.get((0,) * self.n)
        return p.constant_term() if p is not None else Fraction(0)

    def apply(self, f: MultiPoly) -> MultiPoly:
        """Action on C[h]."""
        out = MultiPoly.zero(self.n, var="h")
        for k, p in self.terms.items():
            out = out + p * f.shift([-x for x in k])
        return out

    def __str__(self):
        if not self.terms:
            return "0"
        parts = []
        for k, p in sorted(self.terms.items()):
            sig = "*".join(f"s{i}" if x == 1 else f"s{i}^{x}" for i, x in enumerate(k, 1) if x)
            if not sig:
                parts.append(f"({p})")
            else:
                parts.append(f"({p})*{sig}")
        return " + ".join(parts)

    __repr__ = __str__


def shift_mul(u: ShiftOp, v: ShiftOp) -> ShiftOp:
    return u * v


def _hp(n, terms):
    return MultiPoly(n, terms, var="h")


def hsum(n) -> MultiPoly:
    return sum((MultiPoly.variable(n, j, var="h") for j in range(1, n + 1)),
               MultiPoly.zero(n, var="h"))


def hvar(n, k) -> MultiPoly:
    return MultiPoly.variable(n, k, var="h")


def sig(n, **shifts) -> ShiftOp:
    """sig(n, i=a, j=b) is sigma_i^a sigma_j^b (keys like "s1")."""
    k = [0] * n
    for name, v in shifts.items():
        k[int(name[1:]) - 1] += v
    return ShiftOp.sigma(n, k)


def sigma(n, i, power=1) -> ShiftOp:
    k = [0] * n
    k[i - 1] = power
    return ShiftOp.sigma(n, k)


@dataclass
class HFreeModule:
    presentation: SlPresentation
    V: GlModule
    b: tuple
    S: frozenset
    kind: str = "hfree"

    def __call__(self, x):
        return self.presentation(x)


def _T(op: ShiftOp, M) -> OperatorMatrix:
    return OperatorMatrix.tensor(op, M)


def _check_b(b, n):
    b = tuple(frac(x) for x in b)
    if len(b) != n:
        raise ValueError(f"b has {len(b)} entries, expected {n}")
    if any(x == 0 for x in b):
        raise ValueError("every b_i must be nonzero")
    return b


def build_hfree(b: Sequence, V: GlModule, S: Iterable[int] = ()) -> HFreeModule:
    """The displayed h-free presentation on C[h] (x) V, table entry by table entry."""
    n = V.n
    b = _check_b(b, n)
    S = frozenset(S)
    I = la.identity(V.dim)
    E = V.E
    one = ShiftOp.const(n)

    def H(k):
        return ShiftOp.hvar(n, k)

    def bb(i):
        return b[i - 1]

    images = {}
    for k in range(1, n + 1):
        images[h(k)] = _T(H(k), I)
    for i in range(1, n + 1):
        for j in range(1, n + 1):
            if i == j:
                continue
            s = sigma(n, i) * sigma(n, j, -1)
            if i in S and j in S:
                img = (_T(H(i) * s * (bb(j) / bb(i)), I) - _T(s * (bb(j) / bb(i)), E(i, i))
                       + _T(s, E(i, j)))
            elif i not in S and j not in S:
                img = (_T((H(j) + 1) * s * (bb(i) / bb(j)), I) - _T(s * (bb(i) / bb(j)), E(j, j))
                       + _T(s, E(i, j)))
            elif j in S:
                img = _T(s * (-bb(i) * bb(j)), I) + _T(s, E(i, j))
            else:
                c = 1 / (bb(i) * bb(j))
                img = (_T(H(i) * (H(j) + 1) * s * (-c), I) + _T((H(j) + 1) * s * c, E(i, i))
                       + _T(H(i) * s * c, E(j, j)) - _T(s * c, la.matmul(E(i, i), E(j, j)))
                       + _T(s, E(i, j)))
            images[e(i, j)] = img
    for j in range(1, n + 1):
        sj = sigma(n, j, -1)
        if j in S:
            images[e(n + 1, j)] = _T(sj * (-bb(j)), I)
        else:
            images[e(n + 1, j)] = (_T(H(j) * sj * (1 / bb(j)), I) - _T(sj * (1 / bb(j)), E(j, j))
                                   + _T(sj * (1 / bb(j)), I))
    hs = ShiftOp.poly(hsum(n))
    for i in range(1, n + 1):
        si = sigma(n, i)
        tail = OperatorMatrix.scalar(V.dim, ShiftOp(n))
        for j in range(1, n + 1):
            if j not in S:
                tail = tail - _T(si * bb(j), E(i, j))
        for p in sorted(S):
            tail = (tail + _T(H(p) * si * (1 / bb(p)), E(i, p))
                    - _T(si * (1 / bb(p)), la.matmul(E(i, p), E(p, p)))
                    + _T(si * (1 / bb(p)), E(i, p)))
        if i in S:
            head = (_T((hs - 1) * H(i) * si * (1 / bb(i)), I) - _T(hs * si * (1 / bb(i)), E(i, i)))
        else:
            head = _T((hs - 1) * si * (-bb(i)), I)
        images[e(i, n + 1)] = head + tail
    P = SlPresentation(n, "shift", V, images, f"hfree(b={b},V={V},S={sorted(S)})")
    return HFreeModule(P, V, b, S)


def algebra_map_shift(u: WeylOp, t_images, d_images, n) -> ShiftOp:
    """Image of a Weyl element under t_i -> t_images[i-1], d_i -> d_images[i-1]."""
    out = ShiftOp(n)
    for (a, c_), coeff in u.terms.items():
        term = ShiftOp.const(n, coeff)
        for i, ex in enumerate(a):
            for _ in range(ex):
                term = term * t_images[i]
        for i, ex in enumerate(c_):
            for _ in range(ex):
                term = term * d_images[i]
        out = out + term
    return out


def composite_images(b: Sequence, V: GlModule, S: Iterable[int] = ()) -> SlPresentation:
    """omega_{V,S} followed by the map D(n) (x) End(V) -> End(C[h] (x) V) of the proof.

    On a weight basis, a matrix unit v_c -> v_r goes to sigma^(wt_r - wt_c) and
    t_i, d_i go to diagonal shift operators depending on the row weight.
    """
    n = V.n
    b = _check_b(b, n)
    S = frozenset(S)
    omega = build_omega(V, S)
    rows = []
    for r in range(V.dim):
        wt = V.weights[r]
        ts, ds = [], []
        for i in range(1, n + 1):
            bi = b[i - 1]
            H = ShiftOp.hvar(n, i)
            if i in S:
                ts.append((H - wt[i - 1]) * sigma(n, i) * (1 / bi))
                ds.append(sigma(n, i, -1) * bi)
            else:
                ts.append((H + 1 - wt[i - 1]) * sigma(n, i, -1) * (-1 / bi))
                ds.append(sigma(n, i) * bi)
        rows.append((ts, ds))
    images = {}
    for x in sl_basis(n):
        M = omega(x)
        ent = []
        for r in range(V.dim):
            row = []
            for c in range(V.dim):
                delta = [V.weights[r][k] - V.weights[c][k] for k in range(n)]
                u = M.entries[r][c]
                if not u:
                    row.append(ShiftOp(n))
                    continue
                if any(d.denominator != 1 for d in delta):
                    raise ValueError("weights of V must differ by integers")
                img = algebra_map_shift(u, rows[r][0], rows[r][1], n)
                row.append(img * ShiftOp.sigma(n, [int(d) for d in delta]))
            ent.append(row)
        images[x] = OperatorMatrix(ent)
    return SlPresentation(n, "shift", V, images, "composite")


def hfree_table_vs_composite(b, V, S) -> Verdict:
    table = build_hfree(b, V, S).presentation
    comp = composite_images(b, V, S)
    diff = presentations_equal(table, comp)
    return Verdict.from_failures([(x, str(table(x)), str(comp(x))) for x in diff])


def h_images_literal(M: HFreeModule) -> bool:
    """Each h_k acts as multiplication by h_k on every coordinate."""
    n = M.V.n
    return all(M(h(k)) == OperatorMatrix.scalar(M.V.dim, ShiftOp.hvar(n, k)) for k in range(1, n + 1))


def h_commutes_with_multiplication(M: HFreeModule) -> bool:
    n, d = M.V.n, M.V.dim
    mults = [OperatorMatrix.scalar(d, ShiftOp.hvar(n, j)) for j in range(1, n + 1)]
    mults.append(OperatorMatrix.scalar(d, ShiftOp.poly(hsum(n) * hsum(n) + 1)))
    return all(M(h(k)) * Q == Q * M(h(k)) for k in range(1, n + 1) for Q in mults)


# ---------------------------------------------------------------------------
# Nilsson's modules

def build_nilsson(bval, S: Iterable[int], n: int) -> HFreeModule:
    """M_b^S on C[h] as displayed (rank one)."""
    bval = frac(bval)
    S = frozenset(S)
    hs = hsum(n)

    def H(k):
        return hvar(n, k)

    images = {}
    for k in range(1, n + 1):
        images[h(k)] = ShiftOp.hvar(n, k)
    for i in range(1, n + 1):
        if i in S:
            images[e(i, n + 1)] = ShiftOp.poly(hs + bval) * sigma(n, i)
        else:
            images[e(i, n + 1)] = ShiftOp.poly((hs + bval) * (H(i) - bval - 1)) * sigma(n, i)
    for j in range(1, n + 1):
        if j in S:
            images[e(n + 1, j)] = ShiftOp.poly(-(H(j) - bval)) * sigma(n, j, -1)
        else:
            images[e(n + 1, j)] = -sigma(n, j, -1)
    for i in range(1, n + 1):
        for j in range(1, n + 1):
            if i == j:
                continue
            s = sigma(n, i) * sigma(n, j, -1)
            if i in S and j in S:
                coef = H(j) - bval
            elif i in S:
                coef = MultiPoly.const(n, 1, var="h")
            elif j in S:
                coef = (H(i) - bval - 1) * (H(j) - bval)
            else:
                coef = H(i) - bval - 1
            images[e(i, j)] = ShiftOp.poly(coef) * s
    V = one_dim(0, n)
    images = {x: OperatorMatrix([[op]]) for x, op in images.items()}
    P = SlPresentation(n, "shift", V, images, f"nilsson(b={bval},S={sorted(S)})")
    return HFreeModule(P, V, (bval,), S, kind="nilsson")


def nilsson_target_b(b: Sequence, S, convention: str = "displayed") -> tuple:
    """(b_S)_i = b_i on S and -1/b_j off S.

    "corrected" negates every coordinate; with that choice F_b(M_a^S) and the
    h-free module agree on the nose.
    """
    S = set(S)
    out = tuple(frac(x) if i in S else -1 / frac(x) for i, x in enumerate(b, 1))
    if convention == "corrected":
        return tuple(-x for x in out)
    if convention != "displayed":
        raise ValueError(f"unknown convention {convention!r}")
    return out


def _scalar_ratio(A: OperatorMatrix, B: OperatorMatrix):
    """c with A == c * B, or None."""
    a, bb = A.entries[0][0], B.entries[0][0]
    if not a and not bb:
        return Fraction(1)
    if not a or not bb:
        return None
    k = next(iter(sorted(bb.terms)))
    if k not in a.terms:
        return None
    p, q = a.terms[k], bb.terms[k]
    m = next(iter(sorted(q.terms)))
    if m not in p.terms:
        return None
    c = p.terms[m] / q.terms[m]
    return c if A == B * c else None


def nilsson_correspondence_check(a, b: Sequence, S: Iterable[int], n: int | None = None,
                                 convention: str = "displayed", target_b=None,
                                 right_scale=1) -> Verdict:
    """Compare F_b(M_a^S) with build_hfree(b_S, V_{a+1}, complement of S) generator by generator.

    A rank-one isomorphism over C[h] is a nonzero constant, so the check passes
    iff every generator agrees up to one common scalar. Generators that are not
    literally equal come back as findings carrying both operators.
    """
    b = tuple(frac(x) for x in b)
    n = n or len(b)
    b = _check_b(b, n)
    S = frozenset(S)
    comp = frozenset(range(1, n + 1)) - S
    left = twist_presentation(build_nilsson(a, S, n).presentation, ("phi", b + (Fraction(1),)))
    bS = tuple(frac(x) for x in target_b) if target_b is not None else nilsson_target_b(b, S, convention)
    right = build_hfree(bS, one_dim(frac(a) + 1, n), comp).presentation
    if right_scale != 1:
        c0 = frac(right_scale)
        right = SlPresentation(n, right.algebra_kind, right.V, {x: M * c0 for x, M in right.images.items()},
                               right.label)
    records = []
    ratios = set()
    for x in sl_basis(n):
        c = _scalar_ratio(left(x), right(x))
        rec = {"x": x, "left": str(left(x)), "right": str(right(x))}
        if c is None:
            rec["status"] = "mismatch"
        else:
            rec["status"] = "equal" if c == 1 else f"scalar {c}"
        records.append(rec)
        ratios.add(c)
    single = len(ratios) == 1 and None not in ratios
    findings = [r for r in records if r["status"] != "equal"]
    info = {"records": records, "b_S": [str(x) for x in bS], "convention": convention,
            "global_scalar": str(next(iter(ratios))) if single else None}
    return Verdict("pass" if single else "fail", findings, info)


# ---------------------------------------------------------------------------
# intertwiner T(b, V, S) -> C[h] (x) V

def intertwine_poly(b: Sequence, V: GlModule, S, vec: dict) -> dict:
    """Image of sum c e^{bt} t^k (x) v_l as {l: polynomial in h}."""
    n = V.n
    b = _check_b(b, n)
    S = set(S)
    out: dict = {}
    for (k, l), c in vec.items():
        wt = V.weights[l]
        p = MultiPoly.const(n, c, var="h")
        for i in range(1, n + 1):
            ki = k[i - 1]
            if not ki:
                continue
            H = hvar(n, i)
            base = H - wt[i - 1] if i in S else -H + wt[i - 1] - 1
            p = p * falling(base, ki) * (Fraction(1) / b[i - 1] ** ki)
        out[l] = out[l] + p if l in out else p
    return {l: p for l, p in out.items() if p}


def intertwine(w, b: Sequence) -> dict:
    """Corner-basis input: composed with the inverse of the corner bijection."""
    ctx = w.ctx
    return intertwine_poly(b, ctx.V, ctx.S, lemma_map_inverse(ctx, w.terms))


def apply_hfree(M: HFreeModule | SlPresentation, x, vec: dict) -> dict:
    P = M.presentation if isinstance(M, HFreeModule) else M
    A = P(x)
    out: dict = {}
    for c, f in vec.items():
        for r in range(A.dim):
            op = A.entries[r][c]
            if op:
                img = op.apply(f)
                out[r] = out[r] + img if r in out else img
    return {r: p for r, p in out.items() if p}


def linear_g(b: Sequence) -> MultiPoly:
    n = len(b)
    return MultiPoly(n, {tuple(int(k == i) for k in range(n)): frac(x) for i, x in enumerate(b)})


def verify_intertwiner(b: Sequence, V: GlModule, S, N: int, module: HFreeModule | None = None) -> Verdict:
    """Phi(x . w) == x . Phi(w) on all basis vectors with |k| <= N."""
    n = V.n
    b = _check_b(b, n)
    S = frozenset(S)
    M = module or build_hfree(b, V, S)
    ctx = TensorContext.make(V, S, linear_g(b))
    failures = []
    checked = 0
    for k in poly_exponents(n, N):
        for l in range(V.dim):
            w = {(k, l): Fraction(1)}
            phi_w = intertwine_poly(b, V, S, w)
            for x in sl_basis(n):
                lhs = intertwine_poly(b, V, S, act_polynomial_model(x, w, ctx))
                rhs = apply_hfree(M, x, phi_w)
                checked += 1
                if lhs != rhs:
                    failures.append((x, k, l, {r: str(p) for r, p in lhs.items()},
                                     {r: str(p) for r, p in rhs.items()}))
    return Verdict.from_failures(failures, checked=checked)


def verify_corner_intertwiner(b: Sequence, V: GlModule, S, N: int) -> Verdict:
    """The composite through the corner bijection against the corner-model action."""
    from .tensormod import TensorVector, act_corner, corner_box
    n = V.n
    b = _check_b(b, n)
    S = frozenset(S)
    M = build_hfree(b, V, S)
    ctx = TensorContext.make(V, S, linear_g(b))
    failures = []
    for m in corner_box(n, S, N):
        if sum(abs(x) for x in m) > N:
            continue
        for l in range(V.dim):
            w = TensorVector.basis(ctx, m, l)
            for x in sl_basis(n):
                lhs = intertwine(act_corner(x, w), b)
                rhs = apply_hfree(M, x, intertwine(w, b))
                if lhs != rhs:
                    failures.append((x, m, l))
    return Verdict.from_failures(failures)


# ---------------------------------------------------------------------------
# weighting functor

def column_polys(M: HFreeModule, x, l: int) -> list:
    """x . 1_l = sum_j Q_j(h) 1_j; returns [Q_j]."""
    n = M.V.n
    one = MultiPoly.const(n, 1, var="h")
    img = apply_hfree(M, x, {l: one})
    return [img.get(j, MultiPoly.zero(n, var="h")) for j in range(M.V.dim)]


def weighting_fiber_act(M: HFreeModule, x, lam: Sequence, l: int) -> list:
    """Coordinates of x . v_{lam,l} in the fiber at lam + alpha."""
    n = M.V.n
    alpha = root(x, n)
    point = [frac(a) + b for a, b in zip(lam, alpha)]
    return [q.eval(point) for q in column_polys(M, x, l)]


def weighting_fiber_oracle(M: HFreeModule, x, lam: Sequence, l: int) -> list:
    """Same coordinates via reduction modulo the maximal ideal at lam + alpha."""
    n = M.V.n
    alpha = root(x, n)
    point = [frac(a) + b for a, b in zip(lam, alpha)]
    return [taylor_constant(q, point) for q in column_polys(M, x, l)]


def weighting_bases(b, S, convention="corrected") -> tuple:
    if convention == "displayed":
        return tuple(b)
    if convention != "corrected":
        raise ValueError(f"unknown convention {convention!r}")
    return tuple(1 / x if i in S else -1 / x for i, x in enumerate(b, 1))


class FormalB:
    """Normalizes products of b_i^(rational) into (rational, fractional exponents)."""

    def __init__(self, b):
        self.b = tuple(frac(x) for x in b)

    def normalize(self, coeff, exps) -> tuple:
        key = []
        for bi, ex in zip(self.b, exps):
            ex = frac(ex)
            if bi == 1:
                key.append(Fraction(0))
                continue
            whole = ex.numerator // ex.denominator
            coeff *= bi ** whole
            key.append(ex - whole)
        return coeff, tuple(key)


def _weighting_image(n, S, V, lam, l, fb: FormalB, coeff=Fraction(1)) -> dict:
    """Psi(coeff * v_{lam,l}) as {(m, l, bkey): c}."""
    wt = V.weights[l]
    exps = []
    for i in range(1, n + 1):
        if i in S:
            exps.append(-frac(lam[i - 1]) + wt[i - 1] - 1)
        else:
            exps.append(frac(lam[i - 1]) - wt[i - 1])
    c, key = fb.normalize(coeff, exps)
    return {(tuple(exps), l, key): c}


def _merge(acc: dict, more: dict):
    for k, v in more.items():
        acc[k] = acc.get(k, 0) + v


def sample_lambdas(n: int, samples: int, seed: int) -> list:
    rng = random.Random(seed)
    out = []
    for _ in range(samples):
        out.append(tuple(Fraction(rng.randint(-9, 9), rng.choice([1, 2, 3, 5, 7])) for _ in range(n)))
    return out


def weighting_iso_check(b: Sequence, V: GlModule, S, samples: int = 20, seed: int = 0,
                        lambdas=None, convention: str = "corrected", bases=None) -> Verdict:
    """v_{lam,l} -> prod_S (c_i t_i)^(-lam_i + wt_i - 1) prod_off-S (c_j t_j)^(lam_j - wt_j) (x) v_l
    intertwines the weighting of T(b, V, S) with the coherent family T(V, complement of S).

    convention "displayed" takes c = b; "corrected" takes c_i = 1/b_i on S and
    c_j = -1/b_j off S, which is the choice that actually intertwines.
    """
    n = V.n
    b = _check_b(b, n)
    S = frozenset(S)
    comp = frozenset(range(1, n + 1)) - S
    M = build_hfree(b, V, S)
    target = build_omega(V, comp)
    if bases is None:
        bases = weighting_bases(b, S, convention)
    fb = FormalB(bases)
    lambdas = lambdas or sample_lambdas(n, samples, seed)
    failures = []
    for lam in lambdas:
        for l in range(V.dim):
            for x in sl_basis(n):
                alpha = root(x, n)
                lam2 = tuple(frac(a) + d for a, d in zip(lam, alpha))
                lhs: dict = {}
                for j, c in enumerate(weighting_fiber_act(M, x, lam, l)):
                    if c:
                        _merge(lhs, _weighting_image(n, S, V, lam2, j, fb, c))
                rhs: dict = {}
                for (m, ll, key), c in _weighting_image(n, S, V, lam, l, fb).items():
                    A = target(x)
                    for r in range(V.dim):
                        op = A.entries[r][ll]
                        if op:
                            for m2, v in apply_to_monomial(op, m).items():
                                _merge(rhs, {(m2, r, key): c * v})
                lhs = {k: v for k, v in lhs.items() if v}
                rhs = {k: v for k, v in rhs.items() if v}
                if lhs != rhs:
                    failures.append((tuple(str(a) for a in lam), l, x))
    return Verdict.from_failures(failures, samples=len(lambdas), convention=convention,
                                 bases=[str(x) for x in bases])
