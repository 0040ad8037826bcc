"""sl(n+1) in the basis {h_k, e_ij}, the presentations omega_{V,S} by
differential operators, their twists, relation checks, the quadratic Casimir
and the weight classifier used for simplicity predictions.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations
from typing import Iterable, Sequence

from . import linalg as la
from .exactcore import MultiPoly, frac
from .glnmod import GlModule, build_highest_weight, is_dominant
from .verdict import Verdict
from .weyl import OperatorMatrix, WeylOp, exp_twist, fourier

# An sl(n+1) basis element is ("e", i, j) with i != j in 1..n+1, or ("h", k).


def e(i: int, j: int) -> tuple:
    if i == j:
        raise ValueError("e(i, i) is not a basis element; use h")
    return ("e", i, j)


def h(k: int) -> tuple:
    return ("h", k)


def sl_basis(n: int) -> list[tuple]:
    hs = [h(k) for k in range(1, n + 2 - 1)]
    es = [e(i, j) for i in range(1, n + 2) for j in range(1, n + 2) if i != j]
    return hs + es


def root(x: tuple, n: int) -> tuple:
    """h-weight of ``x`` as a tuple (x is an eigenvector of ad h_k)."""
    if x[0] == "h":
        return (0,) * n
    _, i, j = x
    return tuple(int(k == i) - int(k == j) for k in range(1, n + 1))


def as_matrix(x: tuple, n: int) -> list:
    N = n + 1
    M = la.zeros(N, N)
    if x[0] == "e":
        M[x[1] - 1][x[2] - 1] = Fraction(1)
    else:
        k = x[1]
        for r in range(N):
            M[r][r] = Fraction(-1, N)
        M[k - 1][k - 1] += 1
    return M


def decompose(M: list, n: int) -> dict:
    """Coordinates of a traceless matrix in the fixed basis."""
    N = n + 1
    out = {}
    for i in range(N):
        for j in range(N):
            if i != j and M[i][j]:
                out[e(i + 1, j + 1)] = M[i][j]
    last = M[N - 1][N - 1]
    for k in range(1, N):
        c = M[k - 1][k - 1] - last
        if c:
            out[h(k)] = c
    return out


def sl_bracket(x: tuple, y: tuple, n: int) -> dict:
    return decompose(la.commutator(as_matrix(x, n), as_matrix(y, n)), n)


# ---------------------------------------------------------------------------
# presentations

@dataclass
class SlPresentation:
    """Images of the basis of sl(n+1) in A (x) End(V), A = D(n) or shifts."""

    n: int
    algebra_kind: str
    V: GlModule
    images: dict = field(repr=False)
    label: str = ""

    def __call__(self, x: tuple) -> OperatorMatrix:
        return self.images[x]

    def image_of(self, combo: dict) -> OperatorMatrix:
        """Image of a linear combination {basis element: coefficient}."""
        items = list(combo.items())
        some = next(iter(self.images.values()))
        out = OperatorMatrix.scalar(some.dim, some.entries[0][0].zero_like())
        for x, c in items:
            out = out + self.images[x] * c
        return out


def _ops(n):
    t = [None] + [WeylOp.t(n, i) for i in range(1, n + 1)]
    d = [None] + [WeylOp.d(n, i) for i in range(1, n + 1)]
    return t, d


def build_omega(V: GlModule, S: Iterable[int] = ()) -> SlPresentation:
    """omega_{V,S}: sl(n+1) -> D(n) (x) End(V), entry for entry as displayed."""
    n = V.n
    S = set(S)
    notS = [j for j in range(1, n + 1) if j not in S]
    inS = sorted(S)
    t, d = _ops(n)
    one = WeylOp.const(n, 1)
    I = la.identity(V.dim)
    E = V.E

    def T(op, M):
        return OperatorMatrix.tensor(op, M)

    images = {}
    for k in range(1, n + 1):
        if k in S:
            images[h(k)] = T(t[k] * d[k], I) + T(one, E(k, k))
        else:
            images[h(k)] = T(-(t[k] * d[k]), I) + T(one, E(k, k)) - T(one, I)
    for i in range(1, n + 1):
        for j in range(1, n + 1):
            if i == j:
                continue
            if i not in S and j not in S:
                D = -(t[j] * d[i])
            elif i in S and j in S:
                D = t[i] * d[j]
            elif i in S:
                D = t[i] * t[j]
            else:
                D = -(d[i] * d[j])
            images[e(i, j)] = T(one, E(i, j)) + T(D, I)
    for j in range(1, n + 1):
        images[e(n + 1, j)] = T(-(d[j] if j in S else t[j]), I)
    sumE = la.zeros(V.dim, V.dim)
    for j in range(1, n + 1):
        sumE = la.add(sumE, E(j, j))
    for i in range(1, n + 1):
        acc = T(WeylOp.zero(n), I)
        for j in notS:
            acc = acc - T(d[j], E(i, j))
        for l in inS:
            acc = acc + T(t[l], E(i, l))
        if i not in S:
            for j in notS:
                acc = acc + T(t[j] * d[j] * d[i], I)
            for l in inS:
                acc = acc - T(t[l] * d[l] * d[i], I)
            acc = acc - T(d[i], sumE) + T(d[i] * ((n + 1) - len(S)), I)
        else:
            for j in notS:
                acc = acc - T(t[i] * t[j] * d[j], I)
            for l in inS:
                acc = acc + T(t[i] * t[l] * d[l], I)
            acc = acc + T(t[i], sumE) - T(t[i] * (n - len(S)), I)
        images[e(i, n + 1)] = acc
    return SlPresentation(n, "weyl", V, images, f"omega({V},S={sorted(S)})")


def map_presentation(P: SlPresentation, f, label="") -> SlPresentation:
    return SlPresentation(P.n, P.algebra_kind, P.V,
                          {x: M.map_entries(f) for x, M in P.images.items()}, label or P.label)


def twist_presentation(P: SlPresentation, twist) -> SlPresentation:
    """``twist`` is "tau", ("phi", a) with len(a) == n+1, ("exp", g) or ("fourier", S)."""
    n = P.n
    if twist == "tau" or twist == ("tau",):
        images = {}
        for x in P.images:
            if x[0] == "h":
                images[x] = -P.images[x]
            else:
                images[x] = -P.images[e(x[2], x[1])]
        return SlPresentation(n, P.algebra_kind, P.V, images, f"tau({P.label})")
    kind, arg = twist
    if kind == "phi":
        a = [frac(x) for x in arg]
        if len(a) != n + 1:
            raise ValueError(f"phi needs {n + 1} scalars, got {len(a)}")
        if any(x == 0 for x in a):
            raise ValueError("phi scalars must be nonzero")
        images = {x: (M if x[0] == "h" else M * (a[x[1] - 1] / a[x[2] - 1]))
                  for x, M in P.images.items()}
        return SlPresentation(n, P.algebra_kind, P.V, images, f"phi({P.label})")
    if kind == "exp":
        if P.algebra_kind != "weyl":
            raise ValueError("exp twist needs a Weyl-algebra presentation")
        g = arg
        return map_presentation(P, lambda u: exp_twist(u, g), f"exp({P.label})")
    if kind == "fourier":
        S = tuple(arg)
        return map_presentation(P, lambda u: fourier(u, S), f"fourier({P.label})")
    raise ValueError(f"unknown twist {twist!r}")


def verify_presentation(P: SlPresentation) -> Verdict:
    """[P(x), P(y)] == P([x, y]) for every pair of basis elements."""
    basis = sl_basis(P.n)
    failures = []
    for x, y in combinations(basis, 2):
        A, B = P(x), P(y)
        lhs = A * B - B * A
        rhs = P.image_of(sl_bracket(x, y, P.n))
        if lhs != rhs:
            failures.append((x, y, str(lhs - rhs)))
    return Verdict.from_failures(failures, pairs=len(basis) * (len(basis) - 1) // 2)


def presentations_equal(P: SlPresentation, Q: SlPresentation) -> list:
    """Basis elements on which P and Q differ."""
    return [x for x in sl_basis(P.n) if P(x) != Q(x)]


# ---------------------------------------------------------------------------
# Casimir element

def casimir_coefficients(n: int) -> dict:
    """{(x, y): c} with C = sum c x y, dual bases under tr(XY)."""
    basis = sl_basis(n)
    mats = [as_matrix(x, n) for x in basis]
    G = [[sum(la.matmul(A, B)[i][i] for i in range(n + 1)) for B in mats] for A in mats]
    Ginv = la.inverse(G)
    out = {}
    for a, x in enumerate(basis):
        for b, y in enumerate(basis):
            if Ginv[a][b]:
                out[(x, y)] = Ginv[a][b]
    return out


class NonScalarCasimir(ValueError):
    def __init__(self, residual):
        super().__init__(f"Casimir image is not scalar: {residual}")
        self.residual = residual


def casimir_image(P: SlPresentation) -> OperatorMatrix:
    some = next(iter(P.images.values()))
    out = OperatorMatrix.scalar(some.dim, some.entries[0][0].zero_like())
    for (x, y), c in casimir_coefficients(P.n).items():
        out = out + (P(x) * P(y)) * c
    return out


def casimir_scalar(P: SlPresentation) -> Fraction:
    C = casimir_image(P)
    value = C.scalar_value()
    if value is None:
        raise NonScalarCasimir(str(C))
    return value


def casimir_on_matrices(images: dict, n: int) -> list:
    """Casimir acting on a finite-dimensional module given by rational matrices."""
    dim = len(next(iter(images.values())))
    out = la.zeros(dim, dim)
    for (x, y), c in casimir_coefficients(n).items():
        out = la.add(out, la.scale(la.matmul(images[x], images[y]), c))
    return out


def sl_weight_to_gl(mu: Sequence, n: int) -> tuple:
    """gl(n+1) highest weight (last entry 0) restricting to h-weight ``mu``."""
    mu = [frac(x) for x in mu]
    s = sum(mu)
    return tuple(x + s for x in mu) + (Fraction(0),)


def finite_dim_module_images(mu: Sequence, n: int) -> dict:
    """Matrices of sl(n+1) on L_s(mu), mu given in h-coordinates."""
    nu = sl_weight_to_gl(mu, n)
    L = build_highest_weight(nu)
    N = n + 1
    images = {}
    for x in sl_basis(n):
        if x[0] == "e":
            images[x] = L.E(x[1], x[2])
        else:
            M = L.E(x[1], x[1])
            for i in range(1, N + 1):
                M = la.sub(M, la.scale(L.E(i, i), Fraction(1, N)))
            images[x] = M
    return images


def casimir_oracle(mu: Sequence, n: int) -> Fraction:
    """Casimir scalar on L_s(mu) by direct matrix arithmetic."""
    C = casimir_on_matrices(finite_dim_module_images(mu, n), n)
    c = C[0][0]
    if any(C[i][j] != (c if i == j else 0) for i in range(len(C)) for j in range(len(C))):
        raise NonScalarCasimir(C)
    return c


def casimir_closed_form(mu: Sequence, n: int) -> Fraction:
    """sum nu_i (nu_i + N + 1 - 2i) - (sum nu)^2 / N with N = n + 1."""
    nu = sl_weight_to_gl(mu, n)
    N = n + 1
    val = sum(x * (x + N + 1 - 2 * i) for i, x in enumerate(nu, 1))
    return val - Fraction(sum(nu) ** 2, N)


def in_sl_dominant(mu: Sequence) -> bool:
    """mu (h-coordinates) is the highest weight of a finite-dimensional sl(n+1)-module."""
    mu = [frac(x) for x in mu]
    top = mu[-1] + sum(mu)
    return is_dominant(mu) and top.denominator == 1 and top >= 0


# ---------------------------------------------------------------------------
# weight classes and simplicity predictions

@dataclass(frozen=True)
class WeightClass:
    """Class of lambda - 1: "N" (nonintegral), "S" with k for H^{k-1,k},
    or "R" with k for H^k."""

    kind: str
    k: int | None = None

    def __str__(self):
        if self.kind == "N":
            return "N"
        if self.kind == "S":
            return f"H^{self.k - 1},{self.k}"
        return f"H^{self.k}"


def classify(lam: Sequence) -> WeightClass:
    lam = [frac(x) for x in lam]
    n = len(lam)
    if not is_dominant(lam):
        raise ValueError(f"{tuple(lam)} is not dominant for gl({n})")
    x = -sum(lam)
    if (lam[-1] - x).denominator != 1:
        return WeightClass("N")
    # c_j = lam_j - j is strictly decreasing; c_0 = +inf
    c = [None] + [lam[j - 1] - j for j in range(1, n + 1)]
    for j in range(1, n + 1):
        if x == c[j]:
            return WeightClass("S", n - j + 1)
    for j in range(0, n + 1):
        upper_ok = j == 0 or c[j] > x
        lower_ok = j == n or x > c[j + 1]
        if upper_ok and lower_ok:
            return WeightClass("R", n - j)
    raise AssertionError("unreachable: classes cover all dominant weights")


def predict_simple(cls: WeightClass, S: Iterable[int], n: int) -> bool:
    S = set(S)
    full = S == set(range(1, n + 1))
    empty = not S
    if cls.kind == "N":
        return True
    if cls.kind == "S":
        return empty or full
    if cls.k == 0:
        return full
    if cls.k == n:
        return empty
    return False


def classify_and_predict(lam: Sequence, S: Iterable[int]) -> tuple[WeightClass, str]:
    cls = classify(lam)
    return cls, "simple" if predict_simple(cls, S, len(lam)) else "not_simple"


def one_dim_prediction(a, n: int, S: Iterable[int]) -> str:
    """Simplicity of T(g, V_a, S) read off from (n+1)(a-1)."""
    S = set(S)
    q = (n + 1) * (frac(a) - 1)
    full = S == set(range(1, n + 1))
    if q.denominator != 1:
        ok = True
    elif q <= -n - 1:
        ok = not S
    elif q <= -1:
        ok = not S or full
    else:
        ok = full
    return "simple" if ok else "not_simple"


def exterior_prediction(k: int, n: int, S: Iterable[int]) -> str:
    S = set(S)
    if 0 < k < n:
        return "not_simple"
    if k == 0:
        return "simple" if not S else "not_simple"
    return "simple" if S == set(range(1, n + 1)) else "not_simple"
