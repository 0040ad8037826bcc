"""Exact scalars and sparse multivariate (Laurent) polynomials.

Scalars are :class:`fractions.Fraction`.  Polynomials are immutable sparse maps
from exponent tuples to nonzero coefficients.
"""

from __future__ import annotations

from fractions import Fraction
from itertools import product
from math import comb
from typing import Iterable, Mapping, Sequence

Rational = Fraction
MultiIndex = tuple


def frac(x) -> Fraction:
    """Coerce ints, strings like ``"1/3"`` and Fractions to Fraction."""
    if isinstance(x, Fraction):
        return x
    return Fraction(x)


def unit(n: int, i: int, value: int = 1) -> tuple:
    """Multi-index with ``value`` in (1-based) slot ``i``."""
    e = [0] * n
    e[i - 1] = value
    return tuple(e)


def add_idx(a: Sequence, b: Sequence) -> tuple:
    return tuple(x + y for x, y in zip(a, b))


def sub_idx(a: Sequence, b: Sequence) -> tuple:
    return tuple(x - y for x, y in zip(a, b))


def falling(x, k: int):
    """x (x-1) ... (x-k+1); works for Fractions and MultiPoly alike."""
    out = 1
    for r in range(k):
        out = out * (x - r)
    return out


def format_coeff(c: Fraction) -> str:
    return str(c.numerator) if c.denominator == 1 else f"{c.numerator}/{c.denominator}"


def format_monomial(exps: Sequence, var: str = "t") -> str:
    parts = []
    for i, e in enumerate(exps, start=1):
        if e == 0:
            continue
        parts.append(f"{var}{i}" if e == 1 else f"{var}{i}^{format_coeff(frac(e))}")
    return "*".join(parts)


class MultiPoly:
    """Sparse polynomial in ``n`` variables with exact rational coefficients.

    With ``laurent=True`` negative exponents are allowed.  Instances are
    treated as immutable.
    """

    __slots__ = ("n", "terms", "laurent", "var")

    def __init__(self, n: int, terms: Mapping[tuple, object] | None = None,
                 laurent: bool = False, var: str = "t"):
        self.n = n
        self.laurent = laurent
        self.var = var
        clean = {}
        for m, c in (terms or {}).items():
            m = tuple(m)
            if len(m) != n:
                raise ValueError(f"exponent {m} has length {len(m)}, expected {n}")
            if not laurent and any(e < 0 for e in m):
                raise ValueError(f"negative exponent {m} in a non-Laurent polynomial")
            c = frac(c)
            if c:
                clean[m] = clean.get(m, 0) + c
                if not clean[m]:
                    del clean[m]
        self.terms = clean

    # constructors
    @classmethod
    def const(cls, n: int, c=1, **kw) -> "MultiPoly":
        return cls(n, {(0,) * n: c}, **kw)

    @classmethod
    def zero(cls, n: int, **kw) -> "MultiPoly":
        return cls(n, {}, **kw)

    @classmethod
    def variable(cls, n: int, i: int, **kw) -> "MultiPoly":
        return cls(n, {unit(n, i): 1}, **kw)

    @classmethod
    def monomial(cls, exps: Sequence[int], c=1, **kw) -> "MultiPoly":
        return cls(len(exps), {tuple(exps): c}, **kw)

    def _like(self, terms) -> "MultiPoly":
        return MultiPoly(self.n, terms, laurent=self.laurent, var=self.var)

    def _check(self, other: "MultiPoly"):
        if other.n != self.n:
            raise ValueError(f"dimension mismatch: {self.n} vs {other.n}")
        if other.laurent != self.laurent:
            raise ValueError("laurent flag mismatch")

    def _coerce(self, other) -> "MultiPoly":
        if isinstance(other, MultiPoly):
            self._check(other)
            return other
        return self._like({(0,) * self.n: other})

    # ring operations
    def __add__(self, other):
        other = self._coerce(other)
        out = dict(self.terms)
        for m, c in other.terms.items():
            out[m] = out.get(m, 0) + c
        return self._like(out)

    __radd__ = __add__

    def __neg__(self):
        return self._like({m: -c for m, c in self.terms.items()})

    def __sub__(self, other):
        return self + (-self._coerce(other))

    def __rsub__(self, other):
        return self._coerce(other) - self

    def __mul__(self, other):
        if not isinstance(other, MultiPoly):
            c = frac(other)
            return self._like({m: c * v for m, v in self.terms.items()})
        self._check(other)
        out: dict = {}
        for m1, c1 in self.terms.items():
            for m2, c2 in other.terms.items():
                m = add_idx(m1, m2)
                out[m] = out.get(m, 0) + c1 * c2
        return self._like(out)

    __rmul__ = __mul__

    def __pow__(self, k: int):
        if k < 0:
            raise ValueError("negative power")
        out = self._like({(0,) * self.n: 1})
        base = self
        while k:
            if k & 1:
                out = out * base
            base = base * base
            k >>= 1
        return out

    def __eq__(self, other):
        if isinstance(other, MultiPoly):
            return self.n == other.n and self.terms == other.terms
        if not self.terms:
            return other == 0
        return self.is_constant() and self.constant_term() == other

    def __hash__(self):
        return hash((self.n, frozenset(self.terms.items())))

    def __bool__(self):
        return bool(self.terms)

    # queries
    def is_constant(self) -> bool:
        return all(not any(m) for m in self.terms)

    def constant_term(self) -> Fraction:
        return self.terms.get((0,) * self.n, Fraction(0))

    def degree(self) -> int:
        return max((sum(m) for m in self.terms), default=-1)

    def sorted_terms(self):
        return sorted(self.terms.items())

    # calculus and evaluation
    def diff(self, i: int) -> "MultiPoly":
        if not 1 <= i <= self.n:
            raise IndexError(f"variable index {i} out of range 1..{self.n}")
        out = {}
        for m, c in self.terms.items():
            e = m[i - 1]
            if e:
                out[sub_idx(m, unit(self.n, i))] = c * e
        return self._like(out)

    def eval(self, point: Sequence) -> Fraction:
        if len(point) != self.n:
            raise ValueError(f"point has {len(point)} coordinates, expected {self.n}")
        point = [frac(x) for x in point]
        total = Fraction(0)
        for m, c in self.terms.items():
            v = c
            for x, e in zip(point, m):
                if e < 0 and x == 0:
                    raise ZeroDivisionError("zero raised to a negative power")
                v *= x ** e
            total += v
        return total

    def shift(self, offset: Sequence) -> "MultiPoly":
        """Substitute ``x_i -> x_i + offset_i`` (non-Laurent only)."""
        if self.laurent:
            raise ValueError("shift is only defined for polynomials")
        offset = [frac(o) for o in offset]
        if not any(offset):
            return self
        out: dict = {}
        for m, c in self.terms.items():
            ranges = [range(e + 1) for e in m]
            for k in product(*ranges):
                coeff = c
                for e, j, o in zip(m, k, offset):
                    if j < e:
                        coeff *= comb(e, j) * o ** (e - j)
                out[k] = out.get(k, 0) + coeff
        return self._like(out)

    def __str__(self):
        if not self.terms:
            return "0"
        pieces = []
        for m, c in self.sorted_terms():
            mono = format_monomial(m, self.var)
            if not mono:
                pieces.append(format_coeff(c))
            elif c == 1:
                pieces.append(mono)
            elif c == -1:
                pieces.append("-" + mono)
            else:
                pieces.append(f"{format_coeff(c)}*{mono}")
        return " + ".join(pieces).replace("+ -", "- ")

    def __repr__(self):
        return f"MultiPoly({self})"


def poly_arith(p: MultiPoly, q: MultiPoly, kind: str) -> MultiPoly:
    if kind == "add":
        return p + q
    if kind == "sub":
        return p - q
    if kind == "mul":
        return p * q
    raise ValueError(f"unknown kind {kind!r}")


def binomial_poly(x: MultiPoly, k: int) -> MultiPoly:
    """C(x, k) as a polynomial in the variables of ``x``."""
    out = falling(x, k)
    if not isinstance(out, MultiPoly):
        out = x._like({(0,) * x.n: out})
    return out * Fraction(1, _factorial(k))


def _factorial(k: int) -> int:
    out = 1
    for r in range(2, k + 1):
        out *= r
    return out


factorial = _factorial


def taylor_constant(p: MultiPoly, point: Sequence) -> Fraction:
    """Remainder of ``p`` modulo the ideal (x_i - point_i).

    Computed by re-expanding around ``point`` and reading the constant
    coefficient, i.e. by ideal reduction instead of direct substitution.
    """
    return p.shift(point).constant_term()


def collect(pairs: Iterable[tuple]) -> dict:
    """Sum ``(key, coefficient)`` pairs into a dict without zero entries."""
    out: dict = {}
    for k, c in pairs:
        out[k] = out.get(k, 0) + c
    return {k: c for k, c in out.items() if c}
