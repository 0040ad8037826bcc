"""Exponential tensor modules T(g, V, S).

Two concrete models are used side by side.

* Corner model: basis e^g t^m (x) v with m in the corner C_S (m_i < 0 on S,
  m_i >= 0 off S).  sl(n+1) acts through theta_g(omega_V) with the quotient
  rule of D^+_(S): monomials leaving the corner are dropped.
* Polynomial model: C[t] (x) V with x acting through theta_g(omega_{V,S}),
  i.e. theta_g o psi_S applied to omega_V.

The two agree through the basis bijection t_S^k p -> k! t_S^(-1-k) p whenever
g does not involve the variables in S.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from itertools import product
from math import factorial
from typing import Iterable, Sequence

from . import linalg as la
from .exactcore import MultiPoly, frac
from .glnmod import GlModule, exterior_algebra
from .slpresent import (SlPresentation, build_omega, e, h, root, sl_basis, sl_bracket,
                        twist_presentation)
from .verdict import Verdict
from .weyl import OperatorMatrix, WeylOp, apply_to_monomial, exp_twist, fourier, in_corner


@dataclass(frozen=True)
class TensorContext:
    n: int
    S: frozenset
    g: MultiPoly
    V: GlModule

    @classmethod
    def make(cls, V: GlModule, S: Iterable[int] = (), g: MultiPoly | None = None):
        n = V.n
        S = frozenset(S)
        if not S <= set(range(1, n + 1)):
            raise ValueError(f"S = {sorted(S)} is not a subset of 1..{n}")
        if g is None:
            g = MultiPoly.zero(n)
        if g.n != n:
            raise ValueError(f"g lives in {g.n} variables, expected {n}")
        if g.constant_term():
            raise ValueError("g must have zero constant term")
        return cls(n, S, g, V)

    def g_touches_S(self) -> bool:
        return any(g_i for i in self.S for g_i in [self.g.diff(i)])

    def label(self) -> str:
        return f"n={self.n} S={sorted(self.S)} g={self.g} V={self.V}"


class TensorVector:
    """Finite combination of corner basis vectors e^g t^m (x) v_l."""

    __slots__ = ("ctx", "terms")

    def __init__(self, ctx: TensorContext, terms: dict | None = None):
        clean = {}
        for (m, l), c in (terms or {}).items():
            c = frac(c)
            if not c:
                continue
            m = tuple(m)
            if not in_corner(m, ctx.S):
                raise ValueError(f"exponent {m} is outside the corner for S={sorted(ctx.S)}")
            if not 0 <= l < ctx.V.dim:
                raise IndexError(f"basis index {l} out of range")
            clean[(m, l)] = clean.get((m, l), 0) + c
        self.ctx = ctx
        self.terms = {k: v for k, v in clean.items() if v}

    @classmethod
    def basis(cls, ctx, m, l=0):
        return cls(ctx, {(tuple(m), l): 1})

    def __add__(self, other):
        out = dict(self.terms)
        for k, c in other.terms.items():
            out[k] = out.get(k, 0) + c
        return TensorVector(self.ctx, out)

    def __sub__(self, other):
        return self + other * -1

    def __mul__(self, c):
        return TensorVector(self.ctx, {k: v * frac(c) for k, v in self.terms.items()})

    __rmul__ = __mul__

    def __eq__(self, other):
        return isinstance(other, TensorVector) and self.terms == other.terms

    def __bool__(self):
        return bool(self.terms)

    def __str__(self):
        return format_vector(self.terms)


def format_vector(terms: dict) -> str:
    if not terms:
        return "0"
    parts = []
    for (m, l), c in sorted(terms.items()):
        parts.append(f"{c}*t^{tuple(int(x) if x == int(x) else str(x) for x in m)}@v{l}")
    return " + ".join(parts)


# ---------------------------------------------------------------------------
# operator tables

@lru_cache(maxsize=256)
def corner_presentation(ctx: TensorContext) -> SlPresentation:
    return twist_presentation(build_omega(ctx.V, ()), ("exp", ctx.g))


@lru_cache(maxsize=256)
def polynomial_presentation(ctx: TensorContext, order: str = "theta_psi") -> SlPresentation:
    """``theta_psi``: theta_g(omega_{V,S}); ``psi_theta``: psi_S(theta_g(omega_V))."""
    if order == "theta_psi":
        return twist_presentation(build_omega(ctx.V, ctx.S), ("exp", ctx.g))
    if order == "psi_theta":
        return twist_presentation(corner_presentation(ctx), ("fourier", tuple(sorted(ctx.S))))
    raise ValueError(f"unknown order {order!r}")


def apply_opmatrix(M: OperatorMatrix, vec: dict, corner=None) -> dict:
    """Apply an operator matrix to {(m, l): c} on Laurent monomials."""
    out: dict = {}
    for (m, l), c in vec.items():
        for r in range(M.dim):
            op = M.entries[r][l]
            if not op:
                continue
            for m2, v in apply_to_monomial(op, m, corner).items():
                key = (m2, r)
                out[key] = out.get(key, 0) + c * v
    return {k: v for k, v in out.items() if v}


def act_corner(x: tuple, w: TensorVector) -> TensorVector:
    ctx = w.ctx
    M = corner_presentation(ctx)(x)
    return TensorVector(ctx, apply_opmatrix(M, w.terms, corner=ctx.S))


def act_polynomial_model(x: tuple, p: dict, ctx: TensorContext, order: str = "theta_psi") -> dict:
    """x acting on {(k, l): c}, the vector sum c t^k (x) v_l of C[t] (x) V."""
    return apply_opmatrix(polynomial_presentation(ctx, order)(x), p)


# ---------------------------------------------------------------------------
# basis enumeration

def corner_box(n: int, S, N: int) -> list[tuple]:
    """Corner exponents with |m_i| <= N."""
    S = set(S)
    ranges = [range(-N, 0) if i in S else range(0, N + 1) for i in range(1, n + 1)]
    return [tuple(m) for m in product(*ranges)]


def poly_exponents(n: int, N: int) -> list[tuple]:
    """Exponents k >= 0 with |k| <= N."""
    return [k for k in product(range(N + 1), repeat=n) if sum(k) <= N]


def lemma_map(ctx: TensorContext, p: dict, scale=None) -> dict:
    """Polynomial model -> corner model: t_S^k p -> k! t_S^(-1-k) p."""
    S = ctx.S
    out = {}
    for (k, l), c in p.items():
        coeff = c
        m = []
        for i, ki in enumerate(k, 1):
            if i in S:
                coeff *= (scale or factorial)(ki)
                m.append(-1 - ki)
            else:
                m.append(ki)
        out[(tuple(m), l)] = out.get((tuple(m), l), 0) + coeff
    return {k: v for k, v in out.items() if v}


def lemma_map_inverse(ctx: TensorContext, w: dict) -> dict:
    out = {}
    for (m, l), c in w.items():
        coeff = frac(c)
        k = []
        for i, mi in enumerate(m, 1):
            if i in ctx.S:
                ki = -1 - mi
                coeff /= factorial(ki)
                k.append(ki)
            else:
                k.append(mi)
        out[(tuple(k), l)] = coeff
    return out


def model_equivalence_check(ctx: TensorContext, N: int, scale=None, order: str | None = None) -> Verdict:
    """x . Phi(w) == Phi(x . w) for every generator x and basis w with |k| <= N."""
    if order is None:
        order = "psi_theta" if ctx.g_touches_S() else "theta_psi"
    failures = []
    P = polynomial_presentation(ctx, order)
    C = corner_presentation(ctx)
    checked = 0
    for x in sl_basis(ctx.n):
        for k in poly_exponents(ctx.n, N):
            for l in range(ctx.V.dim):
                w = {(k, l): Fraction(1)}
                lhs = apply_opmatrix(C(x), lemma_map(ctx, w, scale), corner=ctx.S)
                rhs = lemma_map(ctx, apply_opmatrix(P(x), w), scale)
                checked += 1
                if lhs != rhs:
                    failures.append((x, k, l, format_vector(lhs), format_vector(rhs)))
    return Verdict.from_failures(failures, order=order, checked=checked,
                                 orders_agree=not ctx.g_touches_S())


# ---------------------------------------------------------------------------
# simplicity

@dataclass
class Witness:
    verdict: str  # simple_witnessed | proper_submodule | inconclusive
    basis: list = field(default_factory=list)
    info: dict = field(default_factory=dict)


def critical_level(a, n: int) -> Fraction:
    """T' = span{t^m : |m| >= (n+1)(a-1) + 1}."""
    return (n + 1) * (frac(a) - 1) + 1


def tprime_membership(m, level) -> bool:
    return sum(m) >= level


def tprime_bounds(n: int, S) -> tuple:
    """(min, max) of |m| over the corner, None meaning unbounded."""
    S = set(S)
    lo = 0 if not S else None
    hi = -n if len(S) == n else None
    return lo, hi


def tprime_status(ctx: TensorContext) -> str:
    """"zero", "everything" or "proper" for T' in the full module."""
    a = ctx.V.weights[0][0]
    L = critical_level(a, ctx.n)
    lo, hi = tprime_bounds(ctx.n, ctx.S)
    if hi is not None and hi < L:
        return "zero"
    if lo is not None and lo >= L:
        return "everything"
    return "proper"


def check_tprime_invariance(ctx: TensorContext, N: int) -> tuple[list, list]:
    """Basis of T' within the box, and generator images leaving T'."""
    a = ctx.V.weights[0][0]
    L = critical_level(a, ctx.n)
    C = corner_presentation(ctx)
    basis = [m for m in corner_box(ctx.n, ctx.S, N) if tprime_membership(m, L)]
    bad = []
    for m in basis:
        for x in sl_basis(ctx.n):
            img = apply_opmatrix(C(x), {(m, 0): Fraction(1)}, corner=ctx.S)
            for (m2, _), c in img.items():
                if not tprime_membership(m2, L):
                    bad.append((x, m, m2, c))
    return basis, bad


def _reach(start, edges):
    seen = {start}
    queue = deque([start])
    while queue:
        u = queue.popleft()
        for v in edges.get(u, ()):
            if v not in seen:
                seen.add(v)
                queue.append(v)
    return seen


def ladder_graph(n: int, S, a, N: int) -> dict:
    """Edges m -> m' among box monomials where some generator has a nonzero coefficient."""
    V_ctx = TensorContext.make(_one_dim(a, n), S)
    C = corner_presentation(V_ctx)
    nodes = corner_box(n, S, N)
    node_set = set(nodes)
    gens = [x for x in sl_basis(n) if x[0] == "e"]
    edges = {}
    for m in nodes:
        out = set()
        for x in gens:
            for (m2, _), c in apply_opmatrix(C(x), {(m, 0): Fraction(1)}, corner=S).items():
                if m2 != m and m2 in node_set:
                    out.add(m2)
        edges[m] = out
    return edges


def _one_dim(a, n):
    from .glnmod import one_dim
    return one_dim(a, n)


def simplicity_witness(ctx: TensorContext, N: int = 6, trials: int = 0) -> Witness:
    if ctx.V.dim == 1:
        return _graph_witness(ctx, N)
    if ctx.g:
        return Witness("inconclusive", info={"reason": "g != 0 and dim V > 1: not a weight module"})
    return weight_window_witness(ctx, N)


def _graph_witness(ctx: TensorContext, N: int) -> Witness:
    n, S = ctx.n, set(ctx.S)
    a = ctx.V.weights[0][0]
    L = critical_level(a, n)
    box = N
    if L.denominator == 1:
        # the box must straddle the level where the ladder coefficient vanishes
        box = max(N, abs(int(L)) + 1)
    edges = ladder_graph(n, S, a, box)
    nodes = list(edges)
    rev = {}
    for u, vs in edges.items():
        for v in vs:
            rev.setdefault(v, set()).add(u)
    start = nodes[0]
    strongly = len(_reach(start, edges)) == len(nodes) and len(_reach(start, rev)) == len(nodes)
    info = {"box": box, "critical_level": str(L), "nodes": len(nodes)}
    if strongly:
        return Witness("simple_witnessed", info=info)
    basis, bad = check_tprime_invariance(ctx, box)
    if basis and len(basis) < len(nodes) and not bad:
        info["witness"] = "Tprime"
        return Witness("proper_submodule", basis=[(m, 0) for m in basis], info=info)
    info["invariance_failures"] = len(bad)
    return Witness("inconclusive", info=info)


# ---------------------------------------------------------------------------
# weight-window search (g = 0)

def corner_weight(ctx: TensorContext, m, l) -> tuple:
    """h-eigenvalues of t^m (x) v_l under omega_V (g = 0)."""
    wt = ctx.V.weights[l]
    return tuple(-m[k] + wt[k] - 1 for k in range(ctx.n))


class WeightWindow:
    """Full weight spaces of the corner model whose weights meet the box |m_i| <= r."""

    def __init__(self, ctx: TensorContext, r: int):
        self.ctx, self.r = ctx, r
        n, V = ctx.n, ctx.V
        weights = {corner_weight(ctx, m, l) for m in corner_box(n, ctx.S, r) for l in range(V.dim)}
        spaces = {}
        for mu in sorted(weights):
            vecs = []
            for l in range(V.dim):
                m = tuple(V.weights[l][k] - 1 - mu[k] for k in range(n))
                if all(x.denominator == 1 for x in m):
                    m = tuple(int(x) for x in m)
                    if in_corner(m, ctx.S):
                        vecs.append((m, l))
            spaces[mu] = vecs
        self.spaces = spaces
        self.index = {b: (mu, p) for mu, vs in spaces.items() for p, b in enumerate(vs)}
        P = corner_presentation(ctx)
        self.gens = [x for x in sl_basis(n) if x[0] == "e"]
        self.mats = {}
        for x in self.gens:
            alpha = root(x, n)
            for mu, vs in spaces.items():
                nu = tuple(a + b for a, b in zip(mu, alpha))
                if nu not in spaces or not vs:
                    continue
                M = la.zeros(len(spaces[nu]), len(vs))
                for c, b in enumerate(vs):
                    for key, v in apply_opmatrix(P(x), {b: Fraction(1)}, corner=ctx.S).items():
                        mu2, p = self.index.get(key, (None, None))
                        if mu2 != nu:
                            raise ArithmeticError(f"{x} does not shift weight by its root")
                        M[p][c] += v
                self.mats[(x, mu)] = (nu, M)

    def size(self) -> int:
        return sum(len(v) for v in self.spaces.values())

    def closure(self, seeds: dict) -> dict:
        """Smallest generator-stable family of subspaces containing ``seeds`` ({mu: [vec]})."""
        span = {mu: [] for mu in self.spaces}
        queue = deque()
        for mu, vecs in seeds.items():
            for v in vecs:
                queue.append((mu, v))
        while queue:
            mu, v = queue.popleft()
            if not any(v) or la.in_span(span[mu], v):
                continue
            span[mu] = la.row_basis(span[mu] + [list(v)])
            for x in self.gens:
                hit = self.mats.get((x, mu))
                if hit:
                    nu, M = hit
                    queue.append((nu, la.matvec(M, v)))
        return span

    def is_everything(self, span) -> bool:
        return all(len(span[mu]) == len(vs) for mu, vs in self.spaces.items())

    def transfer_maps(self, mu0) -> dict:
        """Span of path maps M_mu -> M_mu0 inside the window, per mu (flattened matrices)."""
        d0 = len(self.spaces[mu0])
        maps = {mu: [] for mu in self.spaces}
        raw = {mu: [] for mu in self.spaces}
        ident = la.identity(d0)
        maps[mu0] = [sum(ident, [])]
        raw[mu0] = [ident]
        changed = True
        while changed:
            changed = False
            for (x, mu), (nu, M) in self.mats.items():
                for T in list(raw[nu]):
                    TM = la.matmul(T, M) if T and M else []
                    if not TM:
                        continue
                    flat = sum(TM, [])
                    if not any(flat) or la.in_span(maps[mu], flat):
                        continue
                    maps[mu] = la.row_basis(maps[mu] + [flat])
                    raw[mu].append(TM)
                    changed = True
        return raw


def _restrict(span, inner: WeightWindow, outer: WeightWindow) -> dict:
    """Project the outer-window closure onto the inner window's weight spaces."""
    out = {}
    for mu, vs in inner.spaces.items():
        ovs = outer.spaces.get(mu, [])
        pos = [ovs.index(b) for b in vs]
        if len(ovs) != len(vs):
            return None
        out[mu] = la.row_basis([[row[p] for p in pos] for row in span.get(mu, [])])
    return out


def weight_window_witness(ctx: TensorContext, r: int = 4) -> Witness:
    W = WeightWindow(ctx, r)
    info = {"radius": r, "window_dim": W.size()}
    candidates = []
    mus = [mu for mu, vs in W.spaces.items() if vs]
    center = mus[len(mus) // 2]
    raw = W.transfer_maps(center)
    d0 = len(W.spaces[center])
    deaf = {}
    for mu in mus:
        stacked = [row for T in raw[mu] for row in T]
        K = la.nullspace(stacked, len(W.spaces[mu])) if stacked else la.identity(len(W.spaces[mu]))
        if K:
            deaf[mu] = K
    full_algebra = la.rank([sum(T, []) for T in raw[center]]) == d0 * d0
    seed_center = {center: [la.identity(d0)[0]]}
    gen_all = W.is_everything(W.closure(seed_center))
    info.update(full_return_algebra=full_algebra, deaf_weights=len(deaf), center_generates=gen_all)
    if not deaf and full_algebra and gen_all:
        return Witness("simple_witnessed", info=info)
    for mu, K in deaf.items():
        candidates.append({mu: K})
    for mu in mus:
        for v in la.identity(len(W.spaces[mu])):
            candidates.append({mu: [v]})
    # vectors killed by a single root vector often generate the de Rham-type pieces
    for (x, mu), (nu, M) in sorted(W.mats.items(), key=lambda kv: (kv[0][1], str(kv[0][0]))):
        if len(W.spaces[mu]) > 1:
            for v in la.nullspace(M, len(W.spaces[mu])):
                candidates.append({mu: [v]})
    outer = WeightWindow(ctx, r + 2)
    for seeds in candidates:
        span = W.closure(seeds)
        if W.is_everything(span):
            continue
        big = outer.closure({mu: [_embed(v, W, outer, mu) for v in vs] for mu, vs in seeds.items()})
        restricted = _restrict(big, W, outer)
        if restricted is None:
            continue
        if all(len(restricted[mu]) == len(span[mu]) for mu in W.spaces):
            basis = []
            for mu in sorted(span):
                for row in span[mu]:
                    basis.append({W.spaces[mu][p]: c for p, c in enumerate(row) if c})
            info["stable_at_radius"] = r + 2
            return Witness("proper_submodule", basis=basis, info=info)
    return Witness("inconclusive", info=info)


def _embed(v, inner, outer, mu):
    ovs = outer.spaces[mu]
    out = [Fraction(0)] * len(ovs)
    for p, b in enumerate(inner.spaces[mu]):
        out[ovs.index(b)] = v[p]
    return out


# ---------------------------------------------------------------------------
# de Rham complex

def wedge_left(i: int, L: tuple):
    """e_i ^ e_L as (sign, L') or None."""
    if i in L:
        return None
    before = sum(1 for x in L if x < i)
    return (-1) ** before, tuple(sorted(L + (i,)))


@lru_cache(maxsize=64)
def _exterior_data(n: int):
    V, basis = exterior_algebra(n)
    return V, basis, {L: p for p, L in enumerate(basis)}


def t_operator(ctx: TensorContext, i: int, model: str) -> WeylOp:
    """The operator by which t_i acts on P."""
    t = WeylOp.t(ctx.n, i)
    if model == "corner":
        return exp_twist(t, ctx.g)
    return exp_twist(fourier(t, ctx.S), ctx.g)


def derham_d(ctx: TensorContext, vec: dict, model: str = "polynomial") -> dict:
    """d_P(f (x) v) = sum_i (t_i f) (x) (e_i ^ v) on T(P, full exterior algebra)."""
    n = ctx.n
    _, basis, pos = _exterior_data(n)
    corner = ctx.S if model == "corner" else None
    out = {}
    for i in range(1, n + 1):
        T = t_operator(ctx, i, model)
        for (m, l), c in vec.items():
            hit = wedge_left(i, basis[l])
            if hit is None:
                continue
            sign, L2 = hit
            for m2, v in apply_to_monomial(T, m, corner).items():
                key = (m2, pos[L2])
                out[key] = out.get(key, 0) + sign * c * v
    return {k: v for k, v in out.items() if v}


def _model_action(ctx: TensorContext, model: str):
    if model == "corner":
        P = corner_presentation(ctx)
        return lambda x, vec: apply_opmatrix(P(x), vec, corner=ctx.S)
    P = polynomial_presentation(ctx)
    return lambda x, vec: apply_opmatrix(P(x), vec)


def _model_basis(ctx: TensorContext, N: int, model: str) -> list:
    if model == "corner":
        return corner_box(ctx.n, ctx.S, N)
    return poly_exponents(ctx.n, N)


def exterior_context(n: int, S=(), g=None) -> TensorContext:
    return TensorContext.make(_exterior_data(n)[0], S, g)


def derham_check(ctx: TensorContext, N: int, model: str = "polynomial", degrees=None) -> Verdict:
    """d^2 = 0 and d(x.w) = x.d(w) on all basis vectors of degree <= N."""
    _, basis, _ = _exterior_data(ctx.n)
    act = _model_action(ctx, model)
    failures = []
    checked = 0
    for m in _model_basis(ctx, N, model):
        for l, L in enumerate(basis):
            if degrees is not None and len(L) not in degrees:
                continue
            w = {(m, l): Fraction(1)}
            dw = derham_d(ctx, w, model)
            if derham_d(ctx, dw, model):
                failures.append(("d^2", m, L))
            for x in sl_basis(ctx.n):
                checked += 1
                if derham_d(ctx, act(x, w), model) != act(x, dw):
                    failures.append(("equivariance", x, m, L))
    return Verdict.from_failures(failures, checked=checked, model=model)


def derham_image_check(ctx: TensorContext, k: int, N: int, model: str = "polynomial") -> Verdict:
    """d(T(P, wedge^(k-1))) is invariant, nonzero and proper inside T(P, wedge^k)."""
    n = ctx.n
    if not 1 <= k <= n - 1:
        raise ValueError(f"derham_image needs 1 <= k <= n-1, got k={k}")
    _, basis, _ = _exterior_data(n)
    act = _model_action(ctx, model)
    failures = []
    image = []
    for m in _model_basis(ctx, N, model):
        for l, L in enumerate(basis):
            if len(L) != k - 1:
                continue
            w = {(m, l): Fraction(1)}
            dw = derham_d(ctx, w, model)
            if dw:
                image.append(dw)
            for x in sl_basis(n):
                if derham_d(ctx, act(x, w), model) != act(x, dw):
                    failures.append(("not invariant", x, m, L))
    outside = None
    for m in _model_basis(ctx, N, model):
        for l, L in enumerate(basis):
            if len(L) == k and derham_d(ctx, {(m, l): Fraction(1)}, model):
                outside = (m, L)
                break
        if outside:
            break
    if not image:
        failures.append(("zero image", None))
    if outside is None:
        failures.append(("no vector outside the image found", None))
    return Verdict.from_failures(failures, image_vectors=len(image),
                                 outside_witness=str(outside), model=model)


def known_submodule_check(ctx: TensorContext, which, N: int = 4, model: str = "polynomial") -> Verdict:
    """``which`` is "Tprime" or ("derham_image", k)."""
    if which == "Tprime":
        if ctx.V.dim != 1:
            raise ValueError("T' is defined for one-dimensional V")
        basis, bad = check_tprime_invariance(ctx, N)
        status = tprime_status(ctx)
        return Verdict.from_failures(bad, status=status, box_basis=len(basis))
    kind, k = which
    if kind != "derham_image":
        raise ValueError(f"unknown submodule {which!r}")
    return derham_image_check(ctx, k, N, model)


# ---------------------------------------------------------------------------
# Witten deformation

def _perm_sign(seq) -> int:
    seq = list(seq)
    inv = sum(1 for a in range(len(seq)) for b in range(a + 1, len(seq)) if seq[a] > seq[b])
    return -1 if inv % 2 else 1


def classical_d(form: dict, n: int) -> dict:
    """Exterior derivative of {L: MultiPoly}, L a sorted tuple of indices."""
    out: dict = {}
    for L, f in form.items():
        for i in range(1, n + 1):
            if i in L:
                continue
            df = f.diff(i)
            if not df:
                continue
            L2 = tuple(sorted((i,) + L))
            out[L2] = out.get(L2, MultiPoly.zero(n)) + df * _perm_sign((i,) + L)
    return {L: f for L, f in out.items() if f}


def wedge_exact(g: MultiPoly, form: dict, n: int) -> dict:
    """dg ^ form."""
    out: dict = {}
    for L, f in form.items():
        for i in range(1, n + 1):
            gi = g.diff(i)
            if i in L or not gi:
                continue
            L2 = tuple(sorted((i,) + L))
            out[L2] = out.get(L2, MultiPoly.zero(n)) + gi * f * _perm_sign((i,) + L)
    return {L: f for L, f in out.items() if f}


def _to_form(vec: dict, n: int) -> dict:
    _, basis, _ = _exterior_data(n)
    out: dict = {}
    for (m, l), c in vec.items():
        L = basis[l]
        out[L] = out.get(L, MultiPoly.zero(n)) + MultiPoly.monomial(m, c)
    return {L: f for L, f in out.items() if f}


def witten_compare(g: MultiPoly, n: int, N: int) -> Verdict:
    """d_P == d + dg ^ on T(g, wedge, {1..n}) in the polynomial model."""
    ctx = exterior_context(n, range(1, n + 1), g)
    _, basis, _ = _exterior_data(n)
    failures = []
    for m in poly_exponents(n, N):
        for l, L in enumerate(basis):
            dp = _to_form(derham_d(ctx, {(m, l): Fraction(1)}), n)
            form = {L: MultiPoly.monomial(m, 1)}
            expected = classical_d(form, n)
            for L2, f in wedge_exact(g, form, n).items():
                expected[L2] = expected.get(L2, MultiPoly.zero(n)) + f
            expected = {L2: f for L2, f in expected.items() if f}
            if dp != expected:
                failures.append((m, L, {str(k): str(v) for k, v in dp.items()},
                                 {str(k): str(v) for k, v in expected.items()}))
    return Verdict.from_failures(failures, forms=len(poly_exponents(n, N)) * len(basis))


# ---------------------------------------------------------------------------
# Whittaker vectors

def whittaker_pairs(n: int, S) -> list[tuple]:
    S = set(S)
    return [(i, j) for i in range(1, n + 2) if i not in S for j in sorted(S)]


def whittaker_check(b: Sequence, S, V: GlModule, l: int) -> Verdict:
    """(x - chi_b(x)) . (e^{bt} (x) v_l) == 0 for x in n_S, with chi_b(e_ij) = -b_i b_j."""
    n = V.n
    b = [frac(x) for x in b]
    if len(b) == n:
        b.append(Fraction(1))
    if len(b) != n + 1 or b[n] != 1:
        raise ValueError("b must have n entries, optionally followed by b_{n+1} = 1")
    S = set(S)
    for i, j in whittaker_pairs(n, S):
        if i <= n and any(V.E(i, j)[r][l] for r in range(V.dim)):
            raise ValueError(f"E_{i}{j} does not kill v_{l}: Whittaker precondition fails at ({i}, {j})")
    g = MultiPoly(n, {tuple(int(k == i) for k in range(1, n + 1)): b[i - 1] for i in range(1, n + 1)})
    ctx = TensorContext.make(V, S, g)
    w = {((0,) * n, l): Fraction(1)}
    failures = []
    for i, j in whittaker_pairs(n, S):
        chi = -b[i - 1] * b[j - 1]
        img = act_polynomial_model(e(i, j), w, ctx)
        resid = dict(img)
        key = ((0,) * n, l)
        resid[key] = resid.get(key, 0) - chi
        resid = {k: v for k, v in resid.items() if v}
        if resid:
            failures.append(((i, j), str(chi), format_vector(resid)))
    return Verdict.from_failures(failures, pairs=len(whittaker_pairs(n, S)))


# ---------------------------------------------------------------------------
# coherent families

def coherent_weight(n: int, S, V: GlModule, k, l, lam) -> tuple:
    """h-weight of t^(lam+k) (x) v_l under omega_{V,S}."""
    wt = V.weights[l]
    out = []
    for j in range(n):
        e_ = frac(lam[j]) + k[j]
        out.append(e_ + wt[j] if (j + 1) in S else -e_ + wt[j] - 1)
    return tuple(out)


def coherent_checks(V: GlModule, S, lam: Sequence, r: int = 2) -> Verdict:
    """Constant multiplicity dim V and (S u {n+1})-injectivity on a weight window."""
    n = V.n
    S = frozenset(S)
    lam = tuple(frac(x) for x in lam)
    P = build_omega(V, S)
    spread = r + 2 + int(max((abs(x) for w in V.weights for x in w), default=0))
    ks = list(product(range(-spread, spread + 1), repeat=n))
    by_weight: dict = {}
    for k in ks:
        for l in range(V.dim):
            m = tuple(lam[j] + k[j] for j in range(n))
            by_weight.setdefault(coherent_weight(n, S, V, k, l, lam), []).append((m, l))
    # weights of the window: shifts of the weight of t^lam (x) v_0 by at most r
    base = coherent_weight(n, S, V, (0,) * n, 0, lam)
    window = [tuple(base[j] + d[j] for j in range(n)) for d in product(range(-r, r + 1), repeat=n)]
    failures = []
    # literal check that the claimed weights are h-eigenvalues
    for mu in window:
        for (m, l) in by_weight.get(mu, []):
            for kk in range(1, n + 1):
                img = apply_opmatrix(P(h(kk)), {(m, l): Fraction(1)})
                if img != {(m, l): mu[kk - 1]}:
                    failures.append(("not a weight vector", m, l))
        if len(by_weight.get(mu, [])) != V.dim:
            failures.append(("multiplicity", mu, len(by_weight.get(mu, []))))
    Stilde = set(S) | {n + 1}
    roots = [(i, j) for i in sorted(Stilde) for j in range(1, n + 2) if j not in Stilde]
    ranks = {}
    info_only = {}
    for i, j in [(i, j) for i in range(1, n + 2) for j in range(1, n + 2) if i != j]:
        x = e(i, j)
        alpha = root(x, n)
        worst = V.dim
        for mu in window:
            src = by_weight.get(mu, [])
            nu = tuple(a + b for a, b in zip(mu, alpha))
            tgt = by_weight.get(nu, [])
            pos = {b: p for p, b in enumerate(tgt)}
            M = la.zeros(len(tgt), len(src))
            for c, bvec in enumerate(src):
                for key, v in apply_opmatrix(P(x), {bvec: Fraction(1)}).items():
                    if key not in pos:
                        raise ArithmeticError(f"{x} leaves the expected weight space")
                    M[pos[key]][c] += v
            worst = min(worst, la.rank(M) if src else V.dim)
        if (i, j) in roots:
            ranks[f"e({i},{j})"] = worst
            if worst < V.dim:
                failures.append(("not injective", (i, j), worst))
        else:
            info_only[f"e({i},{j})"] = worst
    return Verdict.from_failures(failures, weights=len(window), min_rank=ranks, other_roots=info_only)
