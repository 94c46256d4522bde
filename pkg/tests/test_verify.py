from __future__ import annotations

import json

from braidex.homfly import SkeinEngine
from braidex.montesinos import MontesinosPresentation
from braidex.rational import Fraction, cf_value, odd_continued_fraction
from braidex.verify import (
    check_montesinos,
    check_rational,
    dump_disagreement,
    enumerate_montesinos,
    enumerate_rational,
    odd_compositions,
    run_verification,
)


def test_odd_compositions():
    assert list(odd_compositions(3)) == [(1, 1, 1), (3,)]
    for m in range(1, 11):
        assert len(list(odd_compositions(m))) == (1 if m == 1 else 2 ** (m - 2))


def test_enumerate_rational_small():
    got = [str(f) for f in enumerate_rational(3)]
    assert {"1/2", "1/3", "2/3"} <= set(got) and len(got) == 3
    assert {"1/4", "3/4", "2/5", "3/5"} <= {str(f) for f in enumerate_rational(4)}
    fs = list(enumerate_rational(9))
    assert len(fs) == len(set(fs)) == sum(2 ** (m - 2) for m in range(2, 10))
    for f in fs:
        v = cf_value(odd_continued_fraction(f))
        assert (v.numerator, v.denominator) == (f.beta, f.alpha)


def _closed_form_count(n, kmax):
    # tangles with m crossings: 2^(m-2); e fills the remaining budget
    total = 0
    for k in range(2, kmax + 1):
        ways = {0: 1}
        for _ in range(k):
            nxt = {}
            for used, w in ways.items():
                for m in range(2, n - used + 1):
                    nxt[used + m] = nxt.get(used + m, 0) + w * 2 ** (m - 2)
            ways = nxt
        total += sum(w * (n - used + 1) for used, w in ways.items() if used <= n)
    return total


def test_enumerate_montesinos_count_and_order():
    ps = list(enumerate_montesinos(8, 4))
    assert len(ps) == _closed_form_count(8, 4)
    names = {str(p) for p in ps}
    assert "M(1/2,1/2,e=0)" in names and "M(1/2,1/2,1/2,e=0)" in names
    keys = [(p.crossings, len(p.tangles), tuple((f.alpha, f.beta) for f in p.tangles), p.e) for p in ps]
    assert keys == sorted(keys)


def test_cross_check_examples():
    eng = SkeinEngine()
    (rec,) = check_rational(Fraction(3, 1), eng)
    assert rec.agree and rec.formula_b == 2 and rec.status == "checked"
    recs = check_rational(Fraction(17426, 4117), eng)
    assert [r.status for r in recs] == ["formula-only", "formula-only"]
    assert {r.orientation_choice: r.formula_b for r in recs} == {"A": 10, "B": 9}
    (rec,) = check_montesinos(MontesinosPresentation.of([(7, 19), (1, 3), (1, 2)]), eng)
    assert rec.agree and rec.formula_b == 5 and rec.base_equations_hold and rec.morton_ok
    assert rec.runtime_ms is None


def test_records_serialize_stably():
    recs = run_verification("rational", 5)
    lines = [r.to_json() for r in recs]
    assert all(json.loads(x)["agree"] for x in lines)
    assert lines == [r.to_json() for r in run_verification("rational", 5, threads=3)]


def test_dump_writes_pd_and_trace(tmp_path):
    eng = SkeinEngine()
    from braidex.rational import analyze_rational

    o = analyze_rational(5, 2).orientations[0]
    (rec,) = check_rational(Fraction(5, 2), eng)
    pd = dump_disagreement(rec, o.diagram, tmp_path, max_lines=3)
    assert json.loads(pd.read_text())["components"] == 1
    trace = (tmp_path / pd.name.replace(".pd.json", ".trace.jsonl")).read_text().splitlines()
    assert len(trace) == 4 and "truncated_after" in trace[-1]
