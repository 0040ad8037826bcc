"""Command-line front end: polynomial parsing, suite orchestration, reports."""

from __future__ import annotations

import argparse
import json
import random
import sys
import time
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import chain, combinations
from typing import Callable, Iterable, Sequence

from . import __version__
from .exactcore import MultiPoly, frac
from .glnmod import GlModule, exterior, one_dim, parse_module_spec
from .verdict import Verdict


# ---------------------------------------------------------------------------
# polynomial expressions

class PolyParseError(ValueError):
    def __init__(self, msg: str, offset: int):
        super().__init__(f"{msg} at offset {offset}")
        self.offset = offset


class _Parser:
    """expr := term (('+'|'-') term)*; term := atom ('*' atom)*;
    atom := rational | var | atom '^' nat | '(' expr ')'.

    A single leading sign on an expression is accepted as well.
    """

    def __init__(self, src: str, n: int):
        self.src, self.n, self.pos = src, n, 0

    def _skip(self):
        while self.pos < len(self.src) and self.src[self.pos].isspace():
            self.pos += 1

    def _peek(self):
        self._skip()
        return self.src[self.pos] if self.pos < len(self.src) else ""

    def _int(self) -> int:
        self._skip()
        start = self.pos
        while self.pos < len(self.src) and self.src[self.pos].isdigit():
            self.pos += 1
        if start == self.pos:
            raise PolyParseError("expected an integer", start)
        return int(self.src[start:self.pos])

    def parse(self) -> MultiPoly:
        p = self.expr()
        self._skip()
        if self.pos != len(self.src):
            raise PolyParseError(f"unexpected {self.src[self.pos]!r}", self.pos)
        return p

    def expr(self) -> MultiPoly:
        sign = 1
        if self._peek() in "+-" and self._peek():
            sign = -1 if self.src[self.pos] == "-" else 1
            self.pos += 1
        p = self.term() * sign
        while self._peek() in ("+", "-") and self._peek():
            op = self.src[self.pos]
            self.pos += 1
            q = self.term()
            p = p + q if op == "+" else p - q
        return p

    def term(self) -> MultiPoly:
        p = self.atom()
        while self._peek() == "*":
            self.pos += 1
            p = p * self.atom()
        return p

    def atom(self) -> MultiPoly:
        ch = self._peek()
        start = self.pos
        if ch == "(":
            self.pos += 1
            p = self.expr()
            if self._peek() != ")":
                raise PolyParseError("expected ')'", self.pos)
            self.pos += 1
        elif ch == "t":
            self.pos += 1
            if not self._peek().isdigit() or self.src[self.pos - 1] != "t":
                raise PolyParseError("expected a variable index", self.pos)
            k = self._int()
            if not 1 <= k <= self.n:
                raise PolyParseError(f"variable t{k} out of range 1..{self.n}", start)
            p = MultiPoly.variable(self.n, k)
        elif ch.isdigit():
            num = self._int()
            den = 1
            if self._peek() == "/":
                self.pos += 1
                at = self.pos
                den = self._int()
                if den == 0:
                    raise PolyParseError("zero denominator", at)
            p = MultiPoly.const(self.n, Fraction(num, den))
        else:
            raise PolyParseError(f"unexpected {ch!r}" if ch else "unexpected end of input", self.pos)
        while self._peek() == "^":
            self.pos += 1
            p = p ** self._int()
        return p


def parse_poly_expr(src: str, n: int, as_g: bool = False) -> MultiPoly:
    p = _Parser(src, n).parse()
    if as_g and p.constant_term() != 0:
        raise PolyParseError("g must have zero constant term", 0)
    return p


def parse_subset(text: str, n: int) -> frozenset:
    text = text.strip()
    if text == "all":
        return frozenset(range(1, n + 1))
    if not text:
        return frozenset()
    S = frozenset(int(x) for x in text.split(","))
    bad = [i for i in S if not 1 <= i <= n]
    if bad:
        raise ValueError(f"S contains {bad[0]} outside 1..{n}")
    return S


def fmt_subset(S) -> str:
    return "{" + ",".join(str(i) for i in sorted(S)) + "}"


def subsets(n: int) -> list[frozenset]:
    return [frozenset(c) for c in chain.from_iterable(combinations(range(1, n + 1), k)
                                                       for k in range(n + 1))]


def parse_rationals(text: str) -> tuple:
    return tuple(Fraction(x.strip()) for x in text.split(",") if x.strip())


# ---------------------------------------------------------------------------
# records and reports

@dataclass
class CheckRecord:
    id: str
    params: dict
    status: str
    witness: str | None = None
    runtime_ms: int = 0

    def __post_init__(self):
        if self.status not in ("pass", "fail", "inconclusive"):
            raise ValueError(f"bad status {self.status!r}")
        if self.status == "fail" and self.witness is None:
            raise ValueError("a failing record needs a witness")

    def to_json(self) -> dict:
        return {"id": self.id, "params": dict(sorted(self.params.items())), "status": self.status,
                "witness": self.witness, "runtime_ms": self.runtime_ms}


@dataclass
class CheckSpec:
    check: str
    params: dict = field(default_factory=dict)
    criterion: int | None = None


@dataclass
class SuiteConfig:
    grid: list = field(default_factory=list)
    seed: int = 0
    timing: bool = False


def _canon(obj, limit: int = 5) -> str:
    """Short deterministic text for a list of failures or a finding."""
    if isinstance(obj, list):
        shown = [_canon(x) for x in obj[:limit]]
        more = f" (+{len(obj) - limit} more)" if len(obj) > limit else ""
        return "[" + "; ".join(shown) + "]" + more
    if isinstance(obj, tuple):
        return "(" + ", ".join(_canon(x) for x in obj) + ")"
    if isinstance(obj, dict):
        return "{" + ", ".join(f"{k}: {_canon(v)}" for k, v in obj.items()) + "}"
    return str(obj)


# ---------------------------------------------------------------------------
# individual checks; each returns (status, witness or None)

def _ctx_parts(p, n):
    V = parse_module_spec(p["V"], n)
    S = parse_subset(p.get("S", ""), n)
    g = parse_poly_expr(p["g"], n, as_g=True) if p.get("g", "0") != "0" else None
    return V, S, g


def _verdict(v: Verdict):
    if v.status == "pass":
        return "pass", None
    return v.status, _canon(v.failures) if v.failures else _canon(v.info)


def check_relations(p, rng):
    from .slpresent import build_omega, twist_presentation, verify_presentation
    n = p["n"]
    V, S, g = _ctx_parts(p, n)
    P = build_omega(V, S)
    if g is not None:
        P = twist_presentation(P, ("exp", g))
    return _verdict(verify_presentation(P))


def check_fourier(p, rng):
    from .slpresent import build_omega, presentations_equal, twist_presentation
    from .weyl import WeylOp, fourier
    n = p["n"]
    V, S, _ = _ctx_parts(p, n)
    lhs = build_omega(V, S)
    rhs = twist_presentation(build_omega(V, ()), ("fourier", sorted(S)))
    diff = presentations_equal(lhs, rhs)
    failures = [("entrywise", x) for x in diff]
    gens = [WeylOp.t(n, i) for i in range(1, n + 1)] + [WeylOp.d(n, i) for i in range(1, n + 1)]
    for u in gens:
        w = u
        for _ in range(4):
            w = fourier(w, sorted(S))
        if w != u:
            failures.append(("fourier^4", str(u)))
    return _verdict(Verdict.from_failures(failures))


def check_simplicity(p, rng):
    from .slpresent import classify_and_predict, exterior_prediction, one_dim_prediction
    from .tensormod import TensorContext, simplicity_witness
    n = p["n"]
    V, S, g = _ctx_parts(p, n)
    spec = p["V"]
    if spec.startswith("va:"):
        pred = one_dim_prediction(Fraction(spec[3:]), n, S)
    elif spec.startswith("wedge:") and spec[6:].isdigit():
        pred = exterior_prediction(int(spec[6:]), n, S)
    elif spec.startswith("hw:"):
        pred = classify_and_predict(parse_rationals(spec[3:]), S)[1]
    else:
        pred = None
    w = simplicity_witness(TensorContext.make(V, S, g), p.get("box", 6))
    got = {"simple_witnessed": "simple", "proper_submodule": "not_simple"}.get(w.verdict)
    if got is None:
        return "inconclusive", _canon(w.info)
    if pred is not None and got != pred:
        return "fail", f"predicted {pred}, found {w.verdict} {_canon(w.info)}"
    if got == "not_simple" and not w.basis:
        return "fail", "not simple without an invariant-subspace witness"
    return "pass", None


def check_theorem(p, rng):
    from .slpresent import classify_and_predict
    from .tensormod import TensorContext, weight_window_witness
    n = p["n"]
    V, S, _ = _ctx_parts(p, n)
    cls, pred = classify_and_predict(parse_rationals(p["V"][3:]), S)
    w = weight_window_witness(TensorContext.make(V, S), p.get("radius", 4))
    got = {"simple_witnessed": "simple", "proper_submodule": "not_simple"}.get(w.verdict)
    if got is None:
        return "inconclusive", f"class {cls}, predicted {pred}, search undecided"
    if got != pred:
        return "fail", f"class {cls}, predicted {pred}, found {w.verdict}"
    return "pass", None


def check_exterior(p, rng):
    from .tensormod import exterior_context, known_submodule_check
    n = p["n"]
    _, S, g = _ctx_parts(p, n)
    k = int(p["V"][6:])
    if 0 < k < n:
        # d lives on the whole exterior algebra; the image of degree k-1 sits in degree k
        ctx = exterior_context(n, S, g)
        return _verdict(known_submodule_check(ctx, ("derham_image", k), p.get("box", 4)))
    return check_simplicity(p, rng)


def check_derham(p, rng):
    from .tensormod import derham_check, exterior_context
    n = p["n"]
    S = parse_subset(p.get("S", ""), n)
    g = parse_poly_expr(p["g"], n, as_g=True) if p.get("g", "0") != "0" else None
    return _verdict(derham_check(exterior_context(n, S, g), p.get("box", 5), p.get("model", "polynomial")))


def check_witten(p, rng):
    from .tensormod import witten_compare
    n = p["n"]
    return _verdict(witten_compare(parse_poly_expr(p["g"], n, as_g=True), n, p.get("box", 4)))


def check_whittaker(p, rng):
    from .tensormod import whittaker_check
    n = p["n"]
    V, S, _ = _ctx_parts(p, n)
    try:
        v = whittaker_check(parse_rationals(p["b"]), S, V, p.get("l", 0))
    except ValueError as exc:
        if p.get("expect_reject"):
            return "pass", None
        return "fail", str(exc)
    if p.get("expect_reject"):
        return "fail", "precondition violation was not rejected"
    return _verdict(v)


def _generic_lambda(n, rng):
    return tuple(Fraction(rng.randint(-7, 7), rng.choice([2, 3, 5, 7])) for _ in range(n))


def check_coherent(p, rng):
    from .tensormod import coherent_checks
    n = p["n"]
    V, S, _ = _ctx_parts(p, n)
    lam = parse_rationals(p["lam"]) if p.get("lam") else _generic_lambda(n, rng)
    v = coherent_checks(V, S, lam, p.get("radius", 2))
    status, wit = _verdict(v)
    return status, wit if wit is None else f"lam={_canon(lam)}: {wit}"


def check_casimir(p, rng):
    from .slpresent import (NonScalarCasimir, build_omega, casimir_closed_form, casimir_oracle,
                            casimir_scalar, in_sl_dominant, twist_presentation)
    n = p["n"]
    V = parse_module_spec(p["V"], n)
    gs = [parse_poly_expr(x, n, as_g=True) for x in p.get("twists", [])]
    values = {}
    try:
        for S in subsets(n):
            P = build_omega(V, S)
            values[(fmt_subset(S), "0")] = casimir_scalar(P)
            for g in gs:
                values[(fmt_subset(S), str(g))] = casimir_scalar(twist_presentation(P, ("exp", g)))
    except NonScalarCasimir as exc:
        return "fail", f"non-scalar Casimir: {exc}"
    distinct = sorted(set(values.values()))
    if len(distinct) != 1:
        return "fail", _canon(sorted((k, str(v)) for k, v in values.items()))
    c = distinct[0]
    if p.get("lam"):
        mu = tuple(x - 1 for x in parse_rationals(p["lam"]))
        if in_sl_dominant(mu):
            oracle = casimir_oracle(mu, n)
            closed = casimir_closed_form(mu, n)
            if not c == oracle == closed:
                return "fail", f"scalar {c}, oracle {oracle}, closed form {closed}"
    return "pass", None


def check_hfree(p, rng):
    from .hfree import (build_hfree, h_commutes_with_multiplication, h_images_literal,
                        hfree_table_vs_composite, verify_intertwiner)
    from .slpresent import verify_presentation
    n = p["n"]
    V, S, _ = _ctx_parts(p, n)
    b = parse_rationals(p["b"])
    M = build_hfree(b, V, S)
    failures = []
    rel = verify_presentation(M.presentation)
    if not rel.ok:
        failures.append(("relations", _canon(rel.failures)))
    comp = hfree_table_vs_composite(b, V, S)
    if not comp.ok:
        failures.append(("table vs composite", _canon(comp.failures)))
    if not (h_images_literal(M) and h_commutes_with_multiplication(M)):
        failures.append(("h images", "not literal multiplication"))
    for N in p.get("deg", [4]):
        iv = verify_intertwiner(b, V, S, N, module=M)
        if not iv.ok:
            failures.append(("intertwiner", N, _canon(iv.failures)))
    return _verdict(Verdict.from_failures(failures))


def check_nilsson_relations(p, rng):
    from .hfree import build_nilsson
    from .slpresent import verify_presentation
    n = p["n"]
    S = parse_subset(p.get("S", ""), n)
    return _verdict(verify_presentation(build_nilsson(Fraction(p["a"]), S, n).presentation))


def check_nilsson(p, rng):
    from .hfree import nilsson_correspondence_check
    n = p["n"]
    S = parse_subset(p.get("S", ""), n)
    v = nilsson_correspondence_check(Fraction(p["a"]), parse_rationals(p["b"]), S, n,
                                     convention=p.get("convention", "displayed"))
    if v.ok:
        return "pass", None
    findings = [(str(r["x"]), r["status"], r["left"], r["right"]) for r in v.failures]
    return "fail", _canon(findings, limit=len(findings))


def check_weighting(p, rng):
    from .hfree import weighting_iso_check
    n = p["n"]
    V, S, _ = _ctx_parts(p, n)
    v = weighting_iso_check(parse_rationals(p["b"]), V, S, samples=p.get("samples", 20),
                            seed=p.get("seed", 0), convention=p.get("convention", "corrected"))
    return _verdict(v)


CHECKS: dict[str, Callable] = {
    "relations": check_relations,
    "fourier": check_fourier,
    "simplicity": check_simplicity,
    "exterior": check_exterior,
    "theorem": check_theorem,
    "derham": check_derham,
    "witten": check_witten,
    "whittaker": check_whittaker,
    "coherent": check_coherent,
    "casimir": check_casimir,
    "hfree": check_hfree,
    "nilsson_relations": check_nilsson_relations,
    "nilsson": check_nilsson,
    "weighting": check_weighting,
}


def _params_text(p: dict) -> dict:
    out = {}
    for k, v in p.items():
        if isinstance(v, (list, tuple)):
            out[k] = "[" + ",".join(str(x) for x in v) + "]"
        else:
            out[k] = str(v)
    return out


def run_one(spec: CheckSpec, rng: random.Random, timing: bool = False) -> CheckRecord:
    start = time.perf_counter()
    try:
        status, witness = CHECKS[spec.check](spec.params, rng)
    except Exception as exc:  # a crash is a failed check, not a crashed suite
        status, witness = "fail", f"{type(exc).__name__}: {exc}"
    ms = int((time.perf_counter() - start) * 1000) if timing else 0
    return CheckRecord(spec.check, _params_text(spec.params), status, witness, ms)


def run_suite(config: SuiteConfig | Sequence[CheckSpec]) -> list[CheckRecord]:
    if not isinstance(config, SuiteConfig):
        config = SuiteConfig(list(config))
    unknown = sorted({s.check for s in config.grid} - set(CHECKS))
    if unknown:
        raise ValueError(f"unknown check(s): {', '.join(unknown)}")
    # one generator drives all sampling, so record order fixes every sample
    rng = random.Random(config.seed)
    return [run_one(s, rng, config.timing) for s in config.grid]


def emit_report(records: Iterable[CheckRecord], fmt: str = "json") -> str:
    records = list(records)
    if fmt == "json":
        doc = {"version": __version__, "checks": [r.to_json() for r in records]}
        return json.dumps(doc, indent=2, ensure_ascii=False) + "\n"
    if fmt != "table":
        raise ValueError(f"unknown format {fmt!r}")
    rows = [("status", "check", "params", "witness")]
    for r in records:
        params = " ".join(f"{k}={v}" for k, v in sorted(r.params.items()))
        rows.append((r.status, r.id, params, (r.witness or "")[:120]))
    widths = [max(len(row[i]) for row in rows) for i in range(3)]
    lines = ["  ".join(row[i].ljust(widths[i]) for i in range(3)) + "  " + row[3] for row in rows]
    return "\n".join(line.rstrip() for line in lines) + "\n"


# ---------------------------------------------------------------------------
# the acceptance grid

A_GRID = ["0", "1/3", "1/2", "1", "4/3", "-2"]
# (1/2,0) and (5/2,1) are not dominant; these share their nonintegral class
THEOREM_WEIGHTS = ["1,1", "2,1", "1,0", "1/2,-1/2", "5/2,3/2", "3,1"]


def _grid_modules(n: int) -> list[str]:
    mods = [f"va:{a}" for a in A_GRID] + [f"wedge:{k}" for k in range(n + 1)]
    if n == 2:
        mods.append("hw:2,1")
    return mods


def acceptance_grid(criteria: Iterable[int] | None = None) -> list[CheckSpec]:
    want = set(criteria) if criteria is not None else set(range(1, 13))
    out: list[CheckSpec] = []

    def add(c, check, **params):
        if c in want:
            out.append(CheckSpec(check, params, c))

    for n in (1, 2, 3):
        for V in _grid_modules(n):
            for S in subsets(n):
                add(1, "relations", n=n, V=V, S=",".join(map(str, sorted(S))))
    for n in (1, 2, 3):
        for V in _grid_modules(n):
            for S in subsets(n):
                add(2, "fourier", n=n, V=V, S=",".join(map(str, sorted(S))))
    for n in (1, 2):
        for a in A_GRID:
            for S in subsets(n):
                for g in ["0", "t1"] + (["t1*t2"] if n == 2 else []):
                    add(3, "simplicity", n=n, V=f"va:{a}", S=",".join(map(str, sorted(S))), g=g, box=6)
    for n in (2, 3):
        for k in range(n + 1):
            for S in subsets(n):
                for g in ("0", "t1"):
                    add(4, "exterior", n=n, V=f"wedge:{k}", S=",".join(map(str, sorted(S))), g=g, box=4)
    for lam in THEOREM_WEIGHTS:
        for S in subsets(2):
            add(5, "theorem", n=2, V=f"hw:{lam}", S=",".join(map(str, sorted(S))), radius=4)
    for n in (1, 2):
        for S in subsets(n):
            for g in ["0", "t1"] + (["t1*t2"] if n == 2 else []):
                for model in ("polynomial", "corner"):
                    add(6, "derham", n=n, S=",".join(map(str, sorted(S))), g=g, box=5, model=model)
    for g in ("t1", "t1*t2"):
        add(6, "witten", n=2, g=g, box=4)
    for n, V, b in [(1, "va:0", "1"), (1, "va:1/3", "2"), (2, "va:1/2", "1,2"), (2, "wedge:1", "1,2"),
                    (2, "hw:2,1", "2,-1")]:
        for S in subsets(n):
            add(7, "hfree", n=n, V=V, S=",".join(map(str, sorted(S))), b=b, deg=[4, 6] if n == 1 else [4])
    for n in (1, 2, 3):
        for a in ("0", "1/2", "1"):
            for S in subsets(n):
                add(7, "nilsson_relations", n=n, a=a, S=",".join(map(str, sorted(S))))
    for n, b in [(1, "1"), (2, "1,2")]:
        for a in ("0", "1/2"):
            for S in subsets(n):
                add(8, "nilsson", n=n, a=a, b=b, S=",".join(map(str, sorted(S))))
    for V in ("va:1/2", "wedge:1"):
        for S in ("", "1", "1,2"):
            for b in ("1,1", "1,2"):
                add(9, "weighting", n=2, V=V, S=S, b=b, samples=20, seed=0)
    for n in (1, 2, 3):
        for V in _grid_modules(n):
            lam = None
            if V.startswith("va:"):
                lam = ",".join([V[3:]] * n)
            elif V.startswith("hw:"):
                lam = V[3:]
            elif V.startswith("wedge:"):
                k = int(V[6:])
                lam = ",".join(["1"] * k + ["0"] * (n - k))
            params = dict(n=n, V=V, twists=["t1"] + (["t1*t2"] if n > 1 else []))
            if lam:
                params["lam"] = lam
            add(10, "casimir", **params)
    for _ in range(2):
        add(11, "coherent", n=2, V="wedge:1", S="1", radius=2)
    add(11, "coherent", n=2, V="wedge:1", S="1", lam="1/2,1/3", radius=2)
    add(12, "whittaker", n=2, V="wedge:1", S="2", b="2,3", l=0)
    add(12, "whittaker", n=2, V="wedge:1", S="2", b="2,3", l=1, expect_reject=True)
    add(12, "whittaker", n=2, V="wedge:1", S="1,2", b="2,3", l=0)
    add(12, "whittaker", n=1, V="va:1/2", S="1", b="5", l=0)
    add(12, "whittaker", n=2, V="va:1/3", S="1", b="1,-2", l=0)
    add(12, "whittaker", n=3, V="wedge:1", S="3", b="1,2,3", l=0)
    add(12, "whittaker", n=3, V="wedge:2", S="2,3", b="2,1,-1", l=0)
    return out


# ---------------------------------------------------------------------------
# argparse front end

def _build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="exptensor", description="Exact checks for exponential tensor modules.")
    sub = ap.add_subparsers(dest="cmd", required=True)

    def common(p, *, V="va:0", S=""):
        p.add_argument("--n", type=int, default=2)
        p.add_argument("--V", default=V, help='gl(n)-module: "va:1/3", "wedge:1", "hw:2,1", "tensor(A,B)"')
        p.add_argument("--S", default=S, help='comma list, "all" for {1..n}, empty for the empty set')
        p.add_argument("--g", default="0", help="polynomial with zero constant term, e.g. t1*t2")
        p.add_argument("--box", "--deg", dest="box", type=int, default=None)
        p.add_argument("--samples", type=int, default=20)
        p.add_argument("--seed", type=int, default=0)
        p.add_argument("--out", default=None)
        p.add_argument("--format", choices=("json", "table"), default="table")
        p.add_argument("--timing", action="store_true", help="record wall-clock runtimes (breaks byte determinism)")

    for name in ("relations", "simplicity", "derham", "witten", "coherent"):
        common(sub.add_parser(name))
    p = sub.add_parser("whittaker")
    common(p, S="all")
    p.add_argument("--b", default=None)
    p.add_argument("--l", type=int, default=0)
    for name in ("hfree", "nilsson", "weighting"):
        p = sub.add_parser(name)
        common(p)
        p.add_argument("--b", default=None)
        p.add_argument("--a", default="0")
        if name == "nilsson":
            p.add_argument("--convention", choices=("displayed", "corrected"), default="displayed")
        if name == "weighting":
            p.add_argument("--convention", choices=("displayed", "corrected"), default="corrected")
    p = sub.add_parser("suite")
    common(p)
    p.add_argument("--criteria", default="", help="comma list of criterion numbers (default: all)")
    return ap


def _specs_from_args(args) -> list[CheckSpec]:
    n = args.n
    S = ",".join(map(str, sorted(parse_subset(args.S, n))))
    parse_module_spec(args.V, n)  # fail early on a bad module
    if args.g != "0":
        parse_poly_expr(args.g, n, as_g=True)
    b = args.b if getattr(args, "b", None) else ",".join(str(i) for i in range(1, n + 1))
    c = args.cmd
    if c == "relations":
        return [CheckSpec("relations", dict(n=n, V=args.V, S=S, g=args.g)),
                CheckSpec("fourier", dict(n=n, V=args.V, S=S))]
    if c == "simplicity":
        if args.V.startswith("hw:") and args.g == "0":
            return [CheckSpec("theorem", dict(n=n, V=args.V, S=S, radius=args.box or 4))]
        return [CheckSpec("simplicity", dict(n=n, V=args.V, S=S, g=args.g, box=args.box or 6))]
    if c == "derham":
        return [CheckSpec("derham", dict(n=n, S=S, g=args.g, box=args.box or 4, model=m))
                for m in ("polynomial", "corner")]
    if c == "witten":
        return [CheckSpec("witten", dict(n=n, g=args.g if args.g != "0" else "t1", box=args.box or 4))]
    if c == "whittaker":
        return [CheckSpec("whittaker", dict(n=n, V=args.V, S=S, b=b, l=args.l))]
    if c == "coherent":
        return [CheckSpec("coherent", dict(n=n, V=args.V, S=S, radius=args.box or 2))
                for _ in range(max(1, args.samples if args.samples != 20 else 2))]
    if c == "hfree":
        return [CheckSpec("hfree", dict(n=n, V=args.V, S=S, b=b, deg=[args.box or 4]))]
    if c == "nilsson":
        return [CheckSpec("nilsson_relations", dict(n=n, a=args.a, S=S)),
                CheckSpec("nilsson", dict(n=n, a=args.a, b=b, S=S, convention=args.convention))]
    if c == "weighting":
        return [CheckSpec("weighting", dict(n=n, V=args.V, S=S, b=b, samples=args.samples,
                                            seed=args.seed, convention=args.convention))]
    raise AssertionError(c)


def main(argv: Sequence[str] | None = None) -> int:
    args = _build_parser().parse_args(argv)
    try:
        if args.cmd == "suite":
            crit = [int(x) for x in args.criteria.split(",") if x.strip()] or None
            specs = acceptance_grid(crit)
        else:
            specs = _specs_from_args(args)
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    records = run_suite(SuiteConfig(specs, args.seed, args.timing))
    text = emit_report(records, args.format)
    if args.out:
        with open(args.out, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    return 0 if all(r.status != "fail" for r in records) else 1


if __name__ == "__main__":
    raise SystemExit(main())
