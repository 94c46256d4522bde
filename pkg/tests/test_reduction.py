from __future__ import annotations

import pytest
from hypothesis import given, strategies as st

from braidex.diagram import build_elementary_torus, seifert_decompose, seifert_graph, unknot
from braidex.homfly import SkeinEngine
from braidex.montesinos import MontesinosPresentation, analyze_montesinos
from braidex.rational import analyze_rational, cf_value
from braidex.reduction import cycle_reduction, reduction_montesinos, reduction_rational, verify_base_equations


def test_cycle_reduction():
    assert cycle_reduction(4, 6) == 3
    assert cycle_reduction(3, 0) == 0
    assert cycle_reduction(2, 2) == 1
    with pytest.raises(ValueError):
        cycle_reduction(1, 1)
    with pytest.raises(ValueError):
        cycle_reduction(3, 7)


@given(st.integers(2, 12), st.integers(0, 24))
def test_cycle_reduction_monotone_and_capped(n, k):
    k = min(k, 2 * n)
    r = cycle_reduction(n, k)
    assert 0 <= r <= n - 1
    if k < 2 * n:
        assert cycle_reduction(n, k + 1) >= r


def test_rational_examples():
    r = reduction_rational((-4, 4, -3, -2, -1, 3, 3, 2, 3))
    assert (r.r_total, r.r_plus, r.r_minus) == (5, 3, 2)
    assert reduction_rational((2,)).r_total == 0
    assert reduction_rational((3,)).r_total == 0
    assert sum(b.reduction for b in r.per_block) == 5
    with pytest.raises(ValueError):
        reduction_rational((1, 1))


def test_montesinos_example_split():
    a = analyze_montesinos(MontesinosPresentation.of([(17, 44), (7, 10), (19, 26)], 2))
    o = {o.label: o for o in a.orientations}["-++"]
    r = reduction_montesinos(o)
    assert (r.r_minus, r.r_plus, r.r_total) == (1, 2, 3)


def test_montesinos_12a304():
    a = analyze_montesinos(MontesinosPresentation.of([(7, 19), (1, 3), (1, 2)]))
    (o,) = a.orientations
    assert reduction_montesinos(o).r_total == o.seifert_circles - 5


def test_base_equations_small_cases():
    eng = SkeinEngine()
    assert verify_base_equations(unknot(), 0, 0, engine=eng).ok
    for m in (2, 3, 5):
        assert verify_base_equations(build_elementary_torus(m), 0, 0, engine=eng).ok
    o = analyze_rational(5, 2).orientations[0]
    r = reduction_rational(o.signed)
    rep = verify_base_equations(o.diagram, r.r_plus, r.r_minus, engine=eng)
    assert rep.ok and rep.to_json_obj()["base_equations_hold"]
    # a wrong split is reported, not absorbed
    assert not verify_base_equations(o.diagram, r.r_plus + 1, r.r_minus, engine=eng).ok


cf_strategy = st.lists(st.integers(1, 4), min_size=1, max_size=5).filter(lambda v: len(v) % 2 == 1)


@given(cf_strategy)
def test_zero_reduction_without_lone_crossings(cf):
    v = cf_value(cf)
    if v >= 1:
        return
    for o in analyze_rational(v.denominator, v.numerator).orientations:
        r = reduction_rational(o.signed)
        assert r.r_total >= 0
        g = seifert_graph(seifert_decompose(o.diagram))
        if not g.lone_edges:
            assert r.r_total == 0
