"""The Weyl algebra D(n) in t-before-d normal order, its Fourier and
exponentiation automorphisms, and square matrices over an operator algebra.
"""

from __future__ import annotations

from fractions import Fraction
from functools import lru_cache
from itertools import product
from math import comb, factorial
from typing import Iterable, Mapping, Sequence

from .exactcore import MultiPoly, add_idx, falling, format_coeff, frac, sub_idx, unit


@lru_cache(maxsize=None)
def _reorder(b: int, c: int) -> tuple:
    """d^b t^c = sum_k C(b,k) C(c,k) k! t^(c-k) d^(b-k) in one variable."""
    return tuple((k, comb(b, k) * comb(c, k) * factorial(k)) for k in range(min(b, c) + 1))


class WeylOp:
    """Element of D(n) stored as {(t-exponent, d-exponent): coefficient}.

    A key ``(a, b)`` stands for the normal-ordered monomial t^a d^b.
    """

    __slots__ = ("n", "terms")

    def __init__(self, n: int, terms: Mapping | None = None):
        self.n = n
        clean: dict = {}
        for (a, b), c in (terms or {}).items():
            c = frac(c)
            if c:
                key = (tuple(a), tuple(b))
                v = clean.get(key, 0) + c
                if v:
                    clean[key] = v
                else:
                    clean.pop(key, None)
        self.terms = clean

    # constructors
    @classmethod
    def const(cls, n: int, c=1) -> "WeylOp":
        z = (0,) * n
        return cls(n, {(z, z): c})

    @classmethod
    def zero(cls, n: int) -> "WeylOp":
        return cls(n)

    @classmethod
    def t(cls, n: int, i: int) -> "WeylOp":
        return cls(n, {(unit(n, i), (0,) * n): 1})

    @classmethod
    def d(cls, n: int, i: int) -> "WeylOp":
        return cls(n, {((0,) * n, unit(n, i)): 1})

    @classmethod
    def from_poly(cls, p: MultiPoly) -> "WeylOp":
        if p.laurent:
            raise ValueError("Laurent polynomials are not elements of D(n)")
        z = (0,) * p.n
        return cls(p.n, {(m, z): c for m, c in p.terms.items()})

    def zero_like(self) -> "WeylOp":
        return WeylOp(self.n)

    def scalar_like(self, c) -> "WeylOp":
        return WeylOp.const(self.n, c)

    # arithmetic
    def _coerce(self, other) -> "WeylOp":
        if isinstance(other, WeylOp):
            if other.n != self.n:
                raise ValueError(f"dimension mismatch: {self.n} vs {other.n}")
            return other
        return WeylOp.const(self.n, other)

    def __add__(self, other):
        other = self._coerce(other)
        out = dict(self.terms)
        for k, c in other.terms.items():
            out[k] = out.get(k, 0) + c
        return WeylOp(self.n, out)

    __radd__ = __add__

    def __neg__(self):
        return WeylOp(self.n, {k: -c for k, c in self.terms.items()})

    def __sub__(self, other):
        return self + (-self._coerce(other))

    def __rsub__(self, other):
        return self._coerce(other) - self

    def __mul__(self, other):
        if not isinstance(other, WeylOp):
            c = frac(other)
            return WeylOp(self.n, {k: c * v for k, v in self.terms.items()})
        other = self._coerce(other)
        out: dict = {}
        for (a1, b1), c1 in self.terms.items():
            for (a2, b2), c2 in other.terms.items():
                per_var = [_reorder(b, c) for b, c in zip(b1, a2)]
                for choice in product(*per_var):
                    coeff = c1 * c2
                    a = list(a1)
                    b = list(b2)
                    for i, (k, w) in enumerate(choice):
                        coeff *= w
                        a[i] += a2[i] - k
                        b[i] += b1[i] - k
                    key = (tuple(a), tuple(b))
                    out[key] = out.get(key, 0) + coeff
        return WeylOp(self.n, out)

    def __rmul__(self, other):
        return self * other

    def __pow__(self, k: int):
        out = WeylOp.const(self.n, 1)
        for _ in range(k):
            out = out * self
        return out

    def __eq__(self, other):
        if isinstance(other, WeylOp):
            return self.n == other.n and self.terms == other.terms
        return self == WeylOp.const(self.n, other)

    def __hash__(self):
        return hash((self.n, frozenset(self.terms.items())))

    def __bool__(self):
        return bool(self.terms)

    def is_scalar(self) -> bool:
        return all(not any(a) and not any(b) for a, b in self.terms)

    def scalar_value(self) -> Fraction:
        z = (0,) * self.n
        return self.terms.get((z, z), Fraction(0))

    def __str__(self):
        if not self.terms:
            return "0"
        pieces = []
        for (a, b), c in sorted(self.terms.items()):
            factors = [f"t{i}" if e == 1 else f"t{i}^{e}" for i, e in enumerate(a, 1) if e]
            factors += [f"d{i}" if e == 1 else f"d{i}^{e}" for i, e in enumerate(b, 1) if e]
            if not factors:
                pieces.append(format_coeff(c))
            else:
                pieces.append(" * ".join([format_coeff(c)] + factors))
        return " + ".join(pieces)

    __repr__ = __str__


def weyl_mul(u: WeylOp, v: WeylOp) -> WeylOp:
    return u * v


def weyl_commutator(u: WeylOp, v: WeylOp) -> WeylOp:
    return u * v - v * u


# ---------------------------------------------------------------------------
# automorphisms

def algebra_map(u: WeylOp, t_images: Sequence[WeylOp], d_images: Sequence[WeylOp]) -> WeylOp:
    """Extend t_i -> t_images[i-1], d_i -> d_images[i-1] multiplicatively."""
    n = u.n
    powers: dict = {}

    def power(kind, i, e):
        key = (kind, i, e)
        if key not in powers:
            base = (t_images if kind == "t" else d_images)[i]
            powers[key] = base if e == 1 else power(kind, i, e - 1) * base
        return powers[key]

    out = WeylOp(n)
    for (a, b), c in u.terms.items():
        term = WeylOp.const(n, c)
        for i, e in enumerate(a):
            if e:
                term = term * power("t", i, e)
        for i, e in enumerate(b):
            if e:
                term = term * power("d", i, e)
        out = out + term
    return out


def fourier(u: WeylOp, S: Iterable[int]) -> WeylOp:
    """psi_S: t_i -> d_i, d_i -> -t_i for i in S, identity elsewhere."""
    S = set(S)
    n = u.n
    ts = [WeylOp.d(n, i) if i in S else WeylOp.t(n, i) for i in range(1, n + 1)]
    ds = [-WeylOp.t(n, i) if i in S else WeylOp.d(n, i) for i in range(1, n + 1)]
    return algebra_map(u, ts, ds)


def exp_twist(u: WeylOp, g: MultiPoly) -> WeylOp:
    """theta_g: t_i -> t_i, d_i -> d_i + dg/dt_i.  ``g`` must have no constant term."""
    if g.n != u.n:
        raise ValueError(f"dimension mismatch: {u.n} vs {g.n}")
    if g.constant_term():
        raise ValueError(f"exponent polynomial has nonzero constant term {g.constant_term()}")
    if not g:
        return u
    n = u.n
    ts = [WeylOp.t(n, i) for i in range(1, n + 1)]
    ds = [WeylOp.d(n, i) + WeylOp.from_poly(g.diff(i)) for i in range(1, n + 1)]
    return algebra_map(u, ts, ds)


def automorphism_apply(u: WeylOp, twist) -> WeylOp:
    """``twist`` is ``("fourier", S)`` or ``("exp", g)``."""
    kind, arg = twist
    if kind == "fourier":
        return fourier(u, arg)
    if kind == "exp":
        return exp_twist(u, arg)
    raise ValueError(f"unknown twist {kind!r}")


# ---------------------------------------------------------------------------
# action on Laurent monomials

def in_corner(m: Sequence, S: Iterable[int]) -> bool:
    S = set(S)
    return all((e < 0) if i in S else (e >= 0) for i, e in enumerate(m, 1))


def apply_to_monomial(u: WeylOp, m: Sequence, corner: Iterable[int] | None = None) -> dict:
    """Apply ``u`` to t^m.  Exponents may be integers or Fractions.

    With ``corner=S`` the result is projected to the quotient D^+_(S): terms
    whose exponent leaves the corner region are dropped.
    """
    m = tuple(m)
    S = None if corner is None else set(corner)
    out: dict = {}
    for (a, b), c in u.terms.items():
        coeff = c
        for e, k in zip(m, b):
            if k:
                coeff *= falling(e, k)
                if not coeff:
                    break
        if not coeff:
            continue
        target = add_idx(sub_idx(m, b), a)
        if S is not None and not in_corner(target, S):
            continue
        out[target] = out.get(target, 0) + coeff
    return {k: v for k, v in out.items() if v}


def apply_to_poly(u: WeylOp, p: MultiPoly, corner=None) -> MultiPoly:
    out: dict = {}
    for m, c in p.terms.items():
        for k, v in apply_to_monomial(u, m, corner).items():
            out[k] = out.get(k, 0) + c * v
    return MultiPoly(p.n, out, laurent=p.laurent or corner is not None, var=p.var)


# ---------------------------------------------------------------------------
# matrices over an operator algebra (D(n) or the shift algebra)

class OperatorMatrix:
    """Square matrix whose entries lie in a noncommutative operator algebra.

    Entries must provide ``+ - *``, ``==``, ``zero_like`` and ``scalar_like``.
    Realizes elements of A (x) End(V) for A = D(n) or the shift algebra.
    """

    __slots__ = ("dim", "entries")

    def __init__(self, entries: Sequence[Sequence]):
        self.entries = [list(row) for row in entries]
        self.dim = len(self.entries)
        if any(len(row) != self.dim for row in self.entries):
            raise ValueError("operator matrix must be square")

    @classmethod
    def scalar(cls, dim: int, op) -> "OperatorMatrix":
        z = op.zero_like()
        return cls([[op if i == j else z for j in range(dim)] for i in range(dim)])

    @classmethod
    def tensor(cls, op, mat: Sequence[Sequence]) -> "OperatorMatrix":
        """op (x) mat for a rational matrix ``mat``."""
        return cls([[op * frac(x) for x in row] for row in mat])

    def _check(self, other: "OperatorMatrix"):
        if other.dim != self.dim:
            raise ValueError(f"dimension mismatch: {self.dim} vs {other.dim}")

    def __add__(self, other: "OperatorMatrix"):
        self._check(other)
        return OperatorMatrix([[a + b for a, b in zip(ra, rb)]
                               for ra, rb in zip(self.entries, other.entries)])

    def __sub__(self, other: "OperatorMatrix"):
        self._check(other)
        return OperatorMatrix([[a - b for a, b in zip(ra, rb)]
                               for ra, rb in zip(self.entries, other.entries)])

    def __neg__(self):
        return OperatorMatrix([[-a for a in row] for row in self.entries])

    def __mul__(self, other):
        if not isinstance(other, OperatorMatrix):
            return OperatorMatrix([[a * other for a in row] for row in self.entries])
        self._check(other)
        N = self.dim
        out = []
        for i in range(N):
            row = []
            for j in range(N):
                acc = self.entries[i][0].zero_like()
                for k in range(N):
                    a = self.entries[i][k]
                    b = other.entries[k][j]
                    if a and b:
                        acc = acc + a * b
                row.append(acc)
            out.append(row)
        return OperatorMatrix(out)

    def __rmul__(self, other):
        return OperatorMatrix([[a * other for a in row] for row in self.entries])

    def __eq__(self, other):
        return isinstance(other, OperatorMatrix) and self.entries == other.entries

    def __hash__(self):
        return hash(tuple(tuple(row) for row in self.entries))

    def is_zero(self) -> bool:
        return not any(a for row in self.entries for a in row)

    def map_entries(self, f) -> "OperatorMatrix":
        return OperatorMatrix([[f(a) for a in row] for row in self.entries])

    def scalar_value(self):
        """c if the matrix equals c times the identity, else None."""
        N = self.dim
        c = self.entries[0][0]
        if not c.is_scalar():
            return None
        for i in range(N):
            for j in range(N):
                a = self.entries[i][j]
                if i == j and a != c:
                    return None
                if i != j and a:
                    return None
        return c.scalar_value()

    def __str__(self):
        if self.dim == 1:
            return str(self.entries[0][0])
        return "[" + "; ".join(", ".join(str(a) for a in row) for row in self.entries) + "]"

    __repr__ = __str__


def opmatrix_compose(A: OperatorMatrix, B: OperatorMatrix, kind: str):
    if kind == "mul":
        return A * B
    if kind == "commutator":
        return A * B - B * A
    if kind == "equals":
        A._check(B)
        return A == B
    raise ValueError(f"unknown kind {kind!r}")
