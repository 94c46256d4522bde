from __future__ import annotations

from fractions import Fraction as Q

import pytest

from braidex.homfly import SkeinEngine
from braidex.montesinos import (
    MontesinosPresentation,
    analyze_montesinos,
    braid_index_montesinos,
    build_montesinos,
    classify,
    delta,
    delta0,
    normalize_presentation,
)
from braidex.rational import analyze_rational


def M(*pairs, e=0):
    return MontesinosPresentation.of(list(pairs), e)


def by_label(a):
    return {o.label: o for o in a.orientations}


def test_presentation_validation():
    with pytest.raises(ValueError):
        M((1, 2))
    with pytest.raises(ValueError):
        MontesinosPresentation(M((1, 2), (1, 3)).tangles, -1)
    assert str(M((7, 19), (1, 3), (1, 2))) == "M(7/19,1/3,1/2,e=0)"


@pytest.mark.parametrize("p, crossings", [
    (M((7, 19), (1, 3), (1, 2)), 12),
    (M((1, 4), (3, 5), (1, 3), e=1), 12),
    (M((17, 44), (7, 10), (19, 26), e=2), 25),
])
def test_crossing_counts(p, crossings):
    assert p.crossings == crossings
    assert build_montesinos(p).diagram.num_crossings == crossings


def test_12a304():
    a = analyze_montesinos(M((7, 19), (1, 3), (1, 2)))
    (o,) = a.orientations
    assert o.tag.cls == "B" and o.tag.eta == 2
    assert [t.signed.entries for t in o.tangles] == [(2, 1, -2, 1, 1), (3,), (-2,)]
    assert [t.parity for t in o.tangles] == [3, 3, 2]
    assert [t.delta for t in o.tangles] == [2, 0, 1]
    assert o.braid_index == 5


def test_12a252():
    a = analyze_montesinos(M((1, 4), (3, 5), (1, 3), e=1))
    assert a.braid_index == 4
    assert all(o.tag.cls == "B" and o.tag.eta == 3 for o in a.orientations if o.braid_index == 4)


def test_class_m1_and_m2_examples():
    m1 = by_label(analyze_montesinos(M((12, 19), (2, 3), e=2)))
    assert m1["++"].tag.cls == "M1" and m1["++"].braid_index == 5
    assert [t.signed.entries for t in m1["++"].tangles][0] == (-1, 1, 1, 2, 2)
    assert [t.parity for t in m1["++"].tangles] == [1, 1]
    assert m1["++"].tangles[0].delta == 2
    m2 = analyze_montesinos(M((12, 19), (2, 3), (1, 2)))
    assert {o.tag.cls for o in m2.orientations} >= {"M2"}
    assert min(o.braid_index for o in m2.orientations if o.tag.cls == "M2") == 6


def test_four_orientations_of_last_example():
    a = by_label(analyze_montesinos(M((17, 44), (7, 10), (19, 26), e=2)))
    o = a["-++"]
    assert [t.signed.entries for t in o.tangles] == [(2, 1, -1, -2, -3), (1, 2, 3), (-1, -2, -1, 2, -2)]
    assert o.tag.cls == "B" and o.tag.eta == 2
    assert o.braid_index == 9 and o.seifert_circles == 12


def test_delta_examples():
    assert delta(3, (2, 1, -2, 1, 1)) == 2
    assert delta(2, (-2,)) == 1
    assert delta(1, (-1, 1, 1, 2, 2)) == 2
    with pytest.raises(ValueError):
        delta(3, (-2,))
    with pytest.raises(ValueError):
        delta(2, (2,))
    with pytest.raises(ValueError):
        delta(4, (2,))


def test_delta0_examples():
    assert delta0(2, 0) == 2
    assert delta0(3, 1) == 3
    assert delta0(2, 2) == 3
    with pytest.raises(ValueError):
        delta0(2, 1)
    with pytest.raises(ValueError):
        delta0(0, 0)


def test_classify_rules():
    assert classify([1, 1], 2, -1).cls == "M1"
    assert classify([2, 2], 0).cls == "M2"
    assert classify([3, 3, 2], 0).cls == "B"
    assert classify([2, 2], 2, 1).cls == "B"
    with pytest.raises(ValueError):
        classify([1, 3], 0)
    with pytest.raises(ValueError):
        classify([1, 2], 0)
    with pytest.raises(ValueError):
        classify([3, 2], 2, 1)
    with pytest.raises(ValueError):
        classify([3, 2], 1, -1)


def test_two_tangle_case_matches_two_bridge_form():
    eng = SkeinEngine()
    mont = analyze_montesinos(M((12, 19), (2, 3), e=2))
    rat = analyze_rational(188, 79)
    assert sorted(o.braid_index for o in mont.orientations) == sorted(o.braid_index for o in rat.orientations)
    hm = {eng.evaluate(o.diagram) for o in mont.orientations}
    hr = {eng.evaluate(o.diagram) for o in rat.orientations}
    assert hm == hr


def test_normalization():
    p, notes = normalize_presentation([Q(26, 19), Q(2, 3)], 1)
    assert p.e == 2 and str(p) == "M(7/19,2/3,e=2)" and notes
    p, notes = normalize_presentation([Q(-7, 19), Q(-1, 3), Q(-1, 2)], 0)
    assert p.mirror_flag and str(p) == "M(7/19,1/3,1/2,e=0)"
    assert braid_index_montesinos(p) == 5
    with pytest.raises(ValueError):
        normalize_presentation([Q(1, 2), Q(-1, 3)], 0)
    with pytest.raises(ValueError):
        normalize_presentation([Q(1, 2), Q(1)], 0)


def test_orientation_index():
    p = M((17, 44), (7, 10), (19, 26), e=2)
    assert braid_index_montesinos(p, 1) == 9
    with pytest.raises(ValueError):
        analyze_montesinos(p, 7)
