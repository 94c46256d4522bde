from __future__ import annotations

import json
from concurrent.futures import ThreadPoolExecutor

import pytest
from hypothesis import given, settings

from braidex.diagram import build_elementary_torus, mirror, unknot, unlink
from braidex.homfly import (
    CrossingCapExceeded,
    SkeinEngine,
    homfly,
    morton_bounds_check,
    mwf_lower_bound,
    trace_lines,
)
from braidex.polynomial import DELTA, Laurent2
from braidex.rational import analyze_rational, build_4plat
from helpers import builder_diagrams, poly, reference_homfly

# frozen values, cross-checked against the textbook skein recursion in helpers
TREFOIL_POS = poly((2, 0, -2), (-1, 0, -4), (1, 2, -2))
HOPF_POS = poly((1, -1, -1), (-1, -1, -3), (1, 1, -1))
FIGURE_EIGHT = poly((1, 0, -2), (-1, 0, 0), (-1, 2, 0), (1, 0, 2))
CINQUEFOIL_POS = poly((3, 0, -4), (-2, 0, -6), (4, 2, -4), (-1, 2, -6), (1, 4, -4))
T24_PARALLEL = poly((1, -1, -3), (-1, -1, -5), (3, 1, -3), (-1, 1, -5), (1, 3, -3))


def test_unknot_and_unlinks():
    assert homfly(unknot()) == Laurent2.one()
    for n in range(1, 5):
        assert homfly(unlink(n)) == DELTA ** (n - 1)


@pytest.mark.parametrize("d, expected", [
    (build_elementary_torus(3), TREFOIL_POS),
    (build_elementary_torus(2), HOPF_POS),
    (build_elementary_torus(5), CINQUEFOIL_POS),
    (build_elementary_torus(4), T24_PARALLEL),
    (analyze_rational(5, 2).orientations[0].diagram, FIGURE_EIGHT),
])
def test_known_values(d, expected):
    assert homfly(d) == expected
    assert reference_homfly(d) == expected


def test_left_trefoil_is_mirror():
    assert homfly(mirror(build_elementary_torus(3))) == TREFOIL_POS.mirror_substitute()


@settings(max_examples=200)
@given(builder_diagrams(max_crossings=8))
def test_engine_matches_reference(d):
    assert homfly(d) == reference_homfly(d)


@given(builder_diagrams(max_crossings=10))
def test_relabelling_does_not_matter(d):
    assert homfly(d.normalized()) == homfly(d)


def test_cap():
    d = build_4plat((4, 4, 3, 2, 1, 3, 3, 2, 3)).diagram
    with pytest.raises(CrossingCapExceeded):
        homfly(d)
    with pytest.raises(CrossingCapExceeded):
        SkeinEngine(cap=5).evaluate(build_4plat((3, 3, 1)).diagram)


def test_small_cache_gives_same_answers():
    tiny = SkeinEngine(cache_size=4)
    big = SkeinEngine()
    for beta in range(1, 40):
        if beta % 2 == 0:
            continue
        a = analyze_rational(41, beta)
        if a.crossings > 12:
            continue
        for o in a.orientations:
            assert tiny.evaluate(o.diagram) == big.evaluate(o.diagram)


def test_shared_engine_across_threads():
    eng = SkeinEngine()
    ds = [o.diagram for b in range(1, 30) for o in analyze_rational(31, b).orientations
          if o.diagram.num_crossings <= 12]
    serial = [SkeinEngine().evaluate(d).to_string() for d in ds]
    with ThreadPoolExecutor(max_workers=8) as pool:
        threaded = list(pool.map(lambda d: eng.evaluate(d).to_string(), ds))
    assert threaded == serial


def test_trace_tree_adds_up():
    d = analyze_rational(7, 3).orientations[0].diagram
    p, lines = trace_lines(d)
    assert p == homfly(d)
    recs = [json.loads(x) for x in lines]
    ids = {r["id"] for r in recs}
    assert len(ids) == len(recs)
    assert recs[0]["parent"] is None
    assert all(r["parent"] in ids for r in recs[1:])
    total = Laurent2.zero()
    for r in recs:
        if r["kind"] == "leaf":
            total = total + Laurent2.from_string(r["value"])
    assert total == p


def test_mwf_and_morton_on_trefoil():
    d = build_elementary_torus(3)
    p = homfly(d)
    assert mwf_lower_bound(p) == 2
    m = morton_bounds_check(d, p)
    assert m.ok and m.upper_slack == 0 and m.lower_slack == 0


def test_mwf_rejects_odd_span():
    with pytest.raises(ValueError):
        mwf_lower_bound(poly((1, 0, 0), (1, 0, 1)))


@given(builder_diagrams(max_crossings=10))
def test_morton_bounds_hold(d):
    m = morton_bounds_check(d, homfly(d))
    assert m.ok
