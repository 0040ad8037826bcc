import json
from fractions import Fraction

import pytest
from hypothesis import given

from exptensor import cli
from exptensor.cli import (CheckRecord, CheckSpec, PolyParseError, SuiteConfig, emit_report, main,
                           parse_poly_expr, parse_subset, run_suite)
from exptensor.exactcore import MultiPoly
from strategies import polys


def t(i, n=3):
    return MultiPoly.variable(n, i)


def test_parse_examples():
    assert parse_poly_expr("t1^2*t2 - 1/2*t3", 3) == t(1) ** 2 * t(2) - Fraction(1, 2) * t(3)
    assert parse_poly_expr("t1+t1", 3) == 2 * t(1)
    assert parse_poly_expr("-t2 + 3", 3) == 3 - t(2)


def test_parse_errors_carry_offset():
    with pytest.raises(PolyParseError) as err:
        parse_poly_expr("t4", 3)
    assert err.value.offset == 0
    with pytest.raises(PolyParseError) as err:
        parse_poly_expr("t1 + * t2", 3)
    assert err.value.offset == 5


def test_g_needs_zero_constant_term():
    with pytest.raises(ValueError):
        parse_poly_expr("t1 + 1", 2, as_g=True)
    assert parse_poly_expr("t1*t2", 2, as_g=True) == t(1, 2) * t(2, 2)


@given(polys(3, 3))
def test_parse_roundtrip(f):
    assert parse_poly_expr(str(f), 3) == f


def test_parse_subset():
    assert parse_subset("all", 3) == frozenset({1, 2, 3})
    assert parse_subset("", 3) == frozenset()
    assert parse_subset("3, 1", 3) == frozenset({1, 3})
    with pytest.raises(ValueError):
        parse_subset("4", 3)


def test_empty_grid():
    assert json.loads(emit_report(run_suite([]))) == {"version": cli.__version__, "checks": []}


def test_single_pass_record():
    recs = run_suite([CheckSpec("relations", dict(n=1, V="va:0", S="", g="0"))])
    assert len(recs) == 1 and recs[0].status == "pass"
    assert recs[0].witness is None and recs[0].runtime_ms == 0


def test_report_is_byte_deterministic():
    grid = [CheckSpec("coherent", dict(n=1, V="va:0", S="1", radius=1)),
            CheckSpec("weighting", dict(n=2, V="va:1/2", S="1", b="1,2", samples=3, seed=0)),
            CheckSpec("nilsson", dict(n=1, a="0", b="1", S=""))]
    first = emit_report(run_suite(SuiteConfig(grid, seed=5)))
    assert first == emit_report(run_suite(SuiteConfig(grid, seed=5)))
    assert '"status": "fail"' in first


def test_unknown_check_rejected():
    with pytest.raises(ValueError, match="nosuch"):
        run_suite([CheckSpec("nosuch")])


def test_failing_record_needs_witness():
    with pytest.raises(ValueError):
        CheckRecord("relations", {}, "fail")
    with pytest.raises(ValueError):
        CheckRecord("relations", {}, "maybe", "x")


def test_fault_injection_isolated(monkeypatch):
    grid = [CheckSpec("relations", dict(n=1, V="va:0", S="", g="0")),
            CheckSpec("hfree", dict(n=1, V="va:0", S="", b="1", deg=[3])),
            CheckSpec("relations", dict(n=1, V="wedge:1", S="1", g="0"))]

    def broken(p, rng):
        raise RuntimeError("injected")

    monkeypatch.setitem(cli.CHECKS, "hfree", broken)
    recs = run_suite(grid)
    assert [r.status for r in recs] == ["pass", "fail", "pass"]
    assert "injected" in recs[1].witness


def test_main_exit_codes(capsys, tmp_path):
    assert main(["relations", "--n", "1", "--V", "va:1/3", "--format", "json"]) == 0
    doc = json.loads(capsys.readouterr().out)
    assert {c["id"] for c in doc["checks"]} == {"relations", "fourier"}
    assert main(["nilsson", "--n", "1", "--b", "1"]) == 1
    assert main(["nilsson", "--n", "1", "--b", "1", "--convention", "corrected"]) == 0
    assert main(["relations", "--n", "2", "--S", "5"]) == 2
    out = tmp_path / "r.json"
    assert main(["weighting", "--n", "1", "--samples", "3", "--format", "json", "--out", str(out)]) == 0
    assert json.loads(out.read_text())["checks"][0]["status"] == "pass"


def test_table_format(capsys):
    main(["whittaker", "--n", "1"])
    out = capsys.readouterr().out
    assert out.splitlines()[0].startswith("status")
    assert "whittaker" in out
