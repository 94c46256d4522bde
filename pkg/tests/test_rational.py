from __future__ import annotations

import math

import pytest
from hypothesis import given, strategies as st

from braidex.diagram import DiagramError, is_alternating, seifert_decompose
from braidex.rational import (
    Fraction,
    SignedVector,
    analyze_rational,
    blocks,
    braid_index_rational,
    build_4plat,
    cf_value,
    mirrored_orientation,
    odd_continued_fraction,
    orient_4plat,
    signed_vector,
)
from braidex.reduction import reduction_rational


@pytest.mark.parametrize("alpha, beta, cf", [
    (17426, 4117, (4, 4, 3, 2, 1, 3, 3, 2, 3)),
    (191, 56, (3, 2, 2, 3, 3)),
    (2, 1, (2,)),
    (3, 2, (1, 1, 1)),
    (5, 2, (2, 1, 1)),
])
def test_odd_continued_fraction_examples(alpha, beta, cf):
    assert odd_continued_fraction(Fraction(alpha, beta)) == cf


def test_reconstruction_exhaustive_to_1000():
    for alpha in range(2, 1001):
        for beta in range(1, alpha):
            if math.gcd(alpha, beta) != 1:
                continue
            cf = odd_continued_fraction(Fraction(alpha, beta))
            assert len(cf) % 2 == 1 and min(cf) >= 1
            v = cf_value(cf)
            assert (v.numerator, v.denominator) == (beta, alpha)


def test_fraction_validation():
    with pytest.raises(ValueError):
        Fraction(4, 2)
    with pytest.raises(ValueError):
        Fraction(3, 3)
    with pytest.raises(ValueError):
        Fraction(3, 0)


@pytest.mark.parametrize("cf", [(2,), (3,), (1, 1, 1), (4, 4, 3, 2, 1, 3, 3, 2, 3), (2, 1, 2, 1, 1)])
def test_4plat_shape(cf):
    d = build_4plat(cf).diagram
    assert d.num_crossings == sum(cf)
    assert is_alternating(d)
    # numerator parity decides knot versus two-component link
    v = cf_value(cf)
    assert d.num_components == (1 if v.denominator % 2 else 2)


def test_worked_example_signed_vectors():
    a = analyze_rational(17426, 4117)
    got = {o.choice: o.signed.entries for o in a.orientations}
    assert got == {"A": (-4, 4, -3, -2, -1, 3, 3, 2, 3), "B": (4, 4, 3, 2, 1, 3, -3, -2, -3)}
    assert {o.choice: o.braid_index for o in a.orientations} == {"A": 10, "B": 9}
    assert all(o.seifert_circles == 15 for o in a.orientations)
    assert blocks(got["A"]) == [(-4,), (4,), (-3, -2, -1), (3, 3, 2, 3)]


def test_orientation_choices():
    hopf = build_4plat((2,))
    assert {orient_4plat(hopf, (2,), c).signs()[0] for c in "AB"} == {1, -1}
    trefoil = build_4plat((3,))
    orient_4plat(trefoil, (3,), "A")
    with pytest.raises(ValueError):
        orient_4plat(trefoil, (3,), "B")


def test_trefoil_signed_vector_is_uniform():
    res = build_4plat((3,))
    sv = signed_vector(orient_4plat(res, (3,)), res.tags, (3,))
    assert sv.entries in ((3,), (-3,))


def test_mixed_signs_within_entry_detected():
    res = build_4plat((3,))
    d = orient_4plat(res, (3,))
    xs = list(d.crossings)
    xs[0] = xs[0].mirrored()
    from braidex.diagram import OrientedDiagram

    with pytest.raises(DiagramError):
        signed_vector(OrientedDiagram(tuple(xs), d.components, d.orientations), res.tags, (3,))


def test_formula_examples():
    assert braid_index_rational(SignedVector((-4, 4, -3, -2, -1, 3, 3, 2, 3))) == 10
    assert braid_index_rational(SignedVector((4, 4, 3, 2, 1, 3, -3, -2, -3))) == 9
    with pytest.raises(ValueError):
        braid_index_rational((1, 1))
    with pytest.raises(ValueError):
        braid_index_rational((1,), form="sideways")
    with pytest.raises(ValueError):
        SignedVector((1, 0, 1))


cf_strategy = st.lists(st.integers(1, 5), min_size=1, max_size=7).filter(lambda v: len(v) % 2 == 1)


@given(cf_strategy)
def test_formula_properties_on_built_diagrams(cf):
    v = cf_value(cf)
    if v >= 1:
        return
    a = analyze_rational(v.denominator, v.numerator)
    for o in a.orientations:
        sv = o.signed
        assert tuple(abs(b) for b in sv.entries) == a.cf
        assert braid_index_rational(sv.negated(), form="mirror") == o.braid_index
        assert o.braid_index <= o.seifert_circles
        assert o.seifert_circles - o.braid_index == reduction_rational(sv).r_total
        # the mirror drawing carries the negated vector
        d, msv = mirrored_orientation(o, a.build, a.cf)
        assert msv.entries == sv.negated().entries
        assert seifert_decompose(d).circle_count == o.seifert_circles
