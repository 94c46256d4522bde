"""Diagram generators and small independent reference routines for the tests."""

from __future__ import annotations

from typing import Dict, List, Sequence, Tuple

from hypothesis import strategies as st

from braidex.diagram import OrientedDiagram, from_oriented
from braidex.polynomial import Laurent2
from braidex.tangle import Builder


def twist_diagram(ops: Sequence[Tuple[str, int]], closure: str) -> OrientedDiagram:
    """Diagram from single-crossing twists ``(where, kind)`` applied to the infinity tangle."""
    b = Builder()
    t = b.infinity_tangle()
    for where, kind in ops:
        getattr(b, f"twist_{where}")(t, 1, kind)
    getattr(b, closure)(t)
    return b.finish().diagram


@st.composite
def builder_diagrams(draw, max_crossings: int = 10, min_crossings: int = 1):
    """Random twist-tangle closures with arbitrary crossing kinds and orientation."""
    n = draw(st.integers(min_crossings, max_crossings))
    ops = draw(st.lists(st.tuples(st.sampled_from(["bottom", "left", "right"]), st.integers(0, 1)),
                        min_size=n, max_size=n))
    closure = draw(st.sampled_from(["numerator", "denominator"]))
    d = twist_diagram(ops, closure)
    flags = draw(st.lists(st.sampled_from([1, -1]), min_size=d.num_components, max_size=d.num_components))
    return d.with_orientations(flags)


def smoothing(d: OrientedDiagram, i: int) -> OrientedDiagram:
    """Oriented smoothing of crossing ``i``, renumbered; loops left without crossings become free."""
    xs = d.oriented_crossings()
    a, b, c, dd, s = xs[i]
    parent: Dict[int, int] = {}

    def find(e):
        parent.setdefault(e, e)
        while parent[e] != e:
            e = parent[e]
        return e

    def union(x, y):
        parent[find(x)] = find(y)

    if s > 0:
        union(a, b)
        union(dd, c)
    else:
        union(a, dd)
        union(b, c)
    rest = [tuple(find(e) for e in x[:4]) + (x[4],) for k, x in enumerate(xs) if k != i]
    touched = {find(e) for e in (a, b, c, dd)}
    still = {e for x in rest for e in x[:4]}
    loops = len(touched - still) + d.free_loop_count()
    return from_oriented(rest, loops)


def with_sign(d: OrientedDiagram, i: int, sign: int) -> OrientedDiagram:
    """Same diagram with crossing ``i`` switched if needed so that its sign is ``sign``."""
    if d.signs()[i] == sign:
        return d
    xs = list(d.crossings)
    xs[i] = xs[i].mirrored()
    return OrientedDiagram(tuple(xs), d.components, d.orientations)


def split_union(d1: OrientedDiagram, d2: OrientedDiagram) -> OrientedDiagram:
    n1, n2 = d1.normalized(), d2.normalized()
    xs1 = n1.oriented_crossings()
    shift = 1 + max((e for comp in n1.components for e in comp), default=-1)
    xs2 = [tuple(e + shift for e in x[:4]) + (x[4],) for x in n2.oriented_crossings()]
    return from_oriented(xs1 + xs2, n1.free_loop_count() + n2.free_loop_count())


def mono(c: int, z: int, a: int) -> Laurent2:
    return Laurent2.monomial(c, z, a)


def poly(*terms: Tuple[int, int, int]) -> Laurent2:
    """``poly((c, z, a), ...)`` sums ``c z^z a^a``."""
    out = Laurent2.zero()
    for c, z, a in terms:
        out = out + mono(c, z, a)
    return out


def _delta() -> Laurent2:
    return mono(1, -1, 1) - mono(1, -1, -1)


def reference_homfly(d: OrientedDiagram) -> Laurent2:
    """Textbook descending-diagram skein recursion; exponential, for small diagrams only."""
    xs = d.oriented_crossings()
    if not xs:
        return _delta() ** (d.num_components - 1)
    head = {}
    for i, (a, b, c, dd, s) in enumerate(xs):
        head[a] = (i, True)
        head[dd if s > 0 else b] = (i, False)
    seen = set()
    for comp, flag in zip(d.components, d.orientations):
        for e in (comp if flag > 0 else comp[::-1]):
            if e not in head:
                continue
            i, under = head[e]
            if i in seen:
                continue
            seen.add(i)
            if under:
                s = xs[i][4]
                switched = reference_homfly(with_sign(d, i, -s))
                smoothed = reference_homfly(smoothing(d, i))
                # a H+ - a^-1 H- = z H0
                if s > 0:
                    return mono(1, 0, -2) * switched + mono(1, 1, -1) * smoothed
                return mono(1, 0, 2) * switched - mono(1, 1, 1) * smoothed
    return _delta() ** (d.num_components - 1)
