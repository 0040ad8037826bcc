"""Finite-dimensional gl(n)-modules on explicit weight bases."""

from __future__ import annotations

import re
from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations, product
from typing import Mapping, Sequence

from . import linalg as la
from .exactcore import frac
from .verdict import Verdict


@dataclass(frozen=True, eq=False)
class GlModule:
    """gl(n)-module with E_ij acting by ``action[(i, j)]`` (1-based indices).

    ``weights[l]`` is the tuple of E_kk eigenvalues of basis vector ``l``.
    """

    n: int
    dim: int
    action: Mapping[tuple, list]
    weights: tuple
    label: str = ""

    def E(self, i: int, j: int) -> list:
        return self.action[(i, j)]

    def __eq__(self, other):
        if not isinstance(other, GlModule):
            return NotImplemented
        return (self.n == other.n and self.dim == other.dim
                and tuple(self.weights) == tuple(other.weights)
                and all(self.action[k] == other.action[k] for k in self.action))

    def __hash__(self):
        return hash((self.n, self.dim, tuple(self.weights)))

    def __str__(self):
        return self.label or f"GlModule(n={self.n}, dim={self.dim})"


def _indices(n):
    return [(i, j) for i in range(1, n + 1) for j in range(1, n + 1)]


def verify_gl_relations(V: GlModule) -> Verdict:
    """Check [E_ij, E_kl] = d_jk E_il - d_li E_kj and diagonal E_kk exhaustively."""
    n, N = V.n, V.dim
    failures = []
    for (i, j), (k, l) in product(_indices(n), repeat=2):
        lhs = la.commutator(V.E(i, j), V.E(k, l))
        rhs = la.zeros(N, N)
        if j == k:
            rhs = la.add(rhs, V.E(i, l))
        if l == i:
            rhs = la.sub(rhs, V.E(k, j))
        if lhs != rhs:
            failures.append(("bracket", (i, j, k, l)))
    for k in range(1, n + 1):
        expected = [[V.weights[r][k - 1] if r == c else Fraction(0) for c in range(N)]
                    for r in range(N)]
        if V.E(k, k) != expected:
            failures.append(("weight", k))
    return Verdict.from_failures(failures)


def one_dim(a, n: int) -> GlModule:
    a = frac(a)
    action = {(i, j): [[a if i == j else Fraction(0)]] for i, j in _indices(n)}
    return GlModule(n, 1, action, ((a,) * n,), f"va:{a}")


def _wedge_apply(i: int, j: int, L: tuple):
    """E_ij applied to e_L; returns (sign, L') or None."""
    if j not in L:
        return None
    if i == j:
        return 1, L
    if i in L:
        return None
    between = sum(1 for x in L if min(i, j) < x < max(i, j))
    return (-1) ** between, tuple(sorted(set(L) - {j} | {i}))


def exterior(k: int, n: int) -> GlModule:
    if not 0 <= k <= n:
        raise ValueError(f"exterior power {k} out of range 0..{n}")
    basis = list(combinations(range(1, n + 1), k))
    pos = {L: r for r, L in enumerate(basis)}
    N = len(basis)
    action = {}
    for i, j in _indices(n):
        M = la.zeros(N, N)
        for c, L in enumerate(basis):
            hit = _wedge_apply(i, j, L)
            if hit:
                sign, L2 = hit
                M[pos[L2]][c] += sign
        action[(i, j)] = M
    weights = tuple(tuple(Fraction(int(x in L)) for x in range(1, n + 1)) for L in basis)
    return GlModule(n, N, action, weights, f"wedge:{k}")


def exterior_algebra(n: int) -> tuple[GlModule, list[tuple]]:
    """Direct sum of all exterior powers; returns the module and its subset basis."""
    parts = [exterior(k, n) for k in range(n + 1)]
    V = direct_sum(parts, label="wedge:*")
    basis = [L for k in range(n + 1) for L in combinations(range(1, n + 1), k)]
    return V, basis


def direct_sum(parts: Sequence[GlModule], label: str = "") -> GlModule:
    n = parts[0].n
    N = sum(p.dim for p in parts)
    action = {}
    for key in _indices(n):
        M = la.zeros(N, N)
        off = 0
        for p in parts:
            for r in range(p.dim):
                for c in range(p.dim):
                    M[off + r][off + c] = p.E(*key)[r][c]
            off += p.dim
        action[key] = M
    weights = tuple(w for p in parts for w in p.weights)
    return GlModule(n, N, action, weights, label)


def tensor(V: GlModule, W: GlModule) -> GlModule:
    if V.n != W.n:
        raise ValueError("rank mismatch")
    IV, IW = la.identity(V.dim), la.identity(W.dim)
    action = {key: la.add(la.kron(V.E(*key), IW), la.kron(IV, W.E(*key)))
              for key in _indices(V.n)}
    weights = tuple(tuple(a + b for a, b in zip(v, w)) for v in V.weights for w in W.weights)
    return GlModule(V.n, V.dim * W.dim, action, weights, f"tensor({V},{W})")


def explicit(n: int, matrices: Mapping[tuple, Sequence[Sequence]], weights, label="explicit") -> GlModule:
    action = {k: [[frac(x) for x in row] for row in m] for k, m in matrices.items()}
    weights = tuple(tuple(frac(x) for x in w) for w in weights)
    V = GlModule(n, len(weights), action, weights, label)
    verdict = verify_gl_relations(V)
    if not verdict.ok:
        raise ValueError(f"matrices fail the gl({n}) relations at {verdict.failures[0]}")
    return V


def is_dominant(lam: Sequence) -> bool:
    lam = [frac(x) for x in lam]
    return all((a - b).denominator == 1 and a >= b for a, b in zip(lam, lam[1:]))


def weyl_dimension(lam: Sequence) -> int:
    """Weyl dimension formula for gl(n); used as an independent oracle."""
    n = len(lam)
    num = Fraction(1)
    for i in range(n):
        for j in range(i + 1, n):
            num *= Fraction(frac(lam[i]) - frac(lam[j]) + j - i, j - i)
    return int(num)


def build_highest_weight(lam: Sequence) -> GlModule:
    """L(lam) realized inside a tensor power of the natural module.

    lam = mu + c*(1,...,1) with mu integral dominant, mu_n = 0; L(mu) is the
    span of the lowering orbit of a highest vector of weight mu in
    (C^n)^{(x)|mu|}, then twisted by the one-dimensional module of weight c.
    """
    lam = tuple(frac(x) for x in lam)
    n = len(lam)
    if not is_dominant(lam):
        raise ValueError(f"{lam} is not dominant integral for gl({n})")
    c = lam[-1]
    mu = tuple(int(x - c) for x in lam)
    d = sum(mu)

    def weight_of(word):
        return tuple(sum(1 for x in word if x == k) for k in range(1, n + 1))

    def act(i, j, vec):
        out: dict = {}
        for word, coeff in vec.items():
            for p, x in enumerate(word):
                if x == j:
                    w2 = word[:p] + (i,) + word[p + 1:]
                    out[w2] = out.get(w2, 0) + coeff
        return {w: v for w, v in out.items() if v}

    # highest vector: kernel of all raising operators on the mu-weight space
    words = [w for w in product(range(1, n + 1), repeat=d) if weight_of(w) == mu]
    raising = [(i, j) for i in range(1, n + 1) for j in range(i + 1, n + 1)]
    rows = []
    for i, j in raising:
        images = [act(i, j, {w: 1}) for w in words]
        for t in sorted({t for im in images for t in im}):
            rows.append([im.get(t, 0) for im in images])
    if d == 0:
        hv = {(): Fraction(1)}
    else:
        kernel = la.nullspace(rows, len(words))
        hv = {w: x for w, x in zip(words, kernel[0]) if x}

    # lowering orbit, kept per weight space
    basis: list[dict] = []
    by_weight: dict = {}
    queue = [hv]
    lowering = [(i, j) for i in range(1, n + 1) for j in range(1, i)]
    while queue:
        v = queue.pop(0)
        wt = weight_of(next(iter(v)))
        space = by_weight.setdefault(wt, [])
        keys = sorted({w for u in space + [v] for w in u})
        mat = [[u.get(w, 0) for w in keys] for u in space]
        if la.in_span(mat, [v.get(w, 0) for w in keys]):
            continue
        space.append(v)
        basis.append(v)
        for i, j in lowering:
            u = act(i, j, v)
            if u:
                queue.append(u)

    order = sorted(range(len(basis)), key=lambda r: tuple(-x for x in weight_of(next(iter(basis[r])))))
    basis = [basis[r] for r in order]
    N = len(basis)
    all_words = sorted({w for v in basis for w in v})
    B = [[v.get(w, 0) for v in basis] for w in all_words]  # columns = basis vectors
    action = {}
    for i, j in _indices(n):
        M = la.zeros(N, N)
        for col, v in enumerate(basis):
            img = act(i, j, v)
            if not img:
                continue
            rhs = [img.get(w, 0) for w in all_words]
            x = la.solve(B, rhs)
            if x is None:
                raise ArithmeticError("lowering orbit is not invariant")
            for r in range(N):
                M[r][col] = x[r]
        action[(i, j)] = M
    # twist by the trace character of weight c
    for k in range(1, n + 1):
        action[(k, k)] = [[x + (c if r == s else 0) for s, x in enumerate(row)]
                          for r, row in enumerate(action[(k, k)])]
    weights = tuple(tuple(Fraction(x) + c for x in weight_of(next(iter(v)))) for v in basis)
    label = "hw:" + ",".join(str(x) for x in lam)
    return GlModule(n, N, action, weights, label)


_SPEC = re.compile(r"\s*(va|wedge|hw|tensor)\s*(?::|\()(.*)$")


def parse_module_spec(text: str, n: int) -> GlModule:
    """Parse "va:1/3", "wedge:2", "wedge:*", "hw:2,0", "tensor(A,B)"."""
    text = text.strip()
    m = _SPEC.match(text)
    if not m:
        raise ValueError(f"bad module spec {text!r}")
    kind, rest = m.groups()
    if kind == "va":
        return one_dim(Fraction(rest.strip()), n)
    if kind == "wedge":
        if rest.strip() == "*":
            return exterior_algebra(n)[0]
        return exterior(int(rest), n)
    if kind == "hw":
        lam = [Fraction(x) for x in rest.split(",")]
        if len(lam) != n:
            raise ValueError(f"highest weight {rest} has {len(lam)} entries, expected {n}")
        return build_highest_weight(lam)
    # tensor(A,B): split at the top-level comma that starts the second spec
    if not rest.endswith(")"):
        raise ValueError(f"bad module spec {text!r}")
    inner = rest[:-1]
    depth = 0
    for p, ch in enumerate(inner):
        depth += (ch == "(") - (ch == ")")
        if ch == "," and depth == 0 and _SPEC.match(inner[p + 1:]):
            return tensor(parse_module_spec(inner[:p], n), parse_module_spec(inner[p + 1:], n))
    raise ValueError(f"bad module spec {text!r}")


def build_module(spec, n: int | None = None) -> GlModule:
    """Constructor front end: a spec string or a tuple like ("one_dim", a, n)."""
    if isinstance(spec, str):
        return parse_module_spec(spec, n)
    kind, *args = spec
    if kind == "one_dim":
        return one_dim(*args)
    if kind == "exterior":
        return exterior(*args)
    if kind == "tensor":
        return tensor(*args)
    if kind == "explicit":
        return explicit(*args)
    if kind == "hw":
        return build_highest_weight(*args)
    raise ValueError(f"unknown constructor {kind!r}")
