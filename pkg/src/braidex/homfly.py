"""HOMFLY polynomial by skein resolution toward a descending diagram.

Normalisation: ``a H(D+) - a^-1 H(D-) = z H(D0)`` with ``H(unknot) = 1``, so
the ``n``-component unlink is ``delta**(n-1)`` where ``delta = (a - a^-1)/z``.

The engine walks the edges of a diagram from a base point on each component.
The first time a crossing is reached along its under-strand it is "bad": it
is switched, and the smoothed diagram is evaluated recursively.  When the walk
ends the diagram is descending, hence an unlink.  Smoothed diagrams are first
cleaned of kinks, split into connected pieces and put in a canonical labelling
that serves as a memo key.
"""

from __future__ import annotations

import json
import threading
from collections import OrderedDict
from dataclasses import dataclass
from typing import Callable, Dict, List, Optional, Sequence, Tuple

from .diagram import OrientedDiagram, seifert_decompose, writhe
from .polynomial import AExtremes, Laurent2, a_extremes

__all__ = [
    "homfly",
    "SkeinEngine",
    "CrossingCapExceeded",
    "mwf_lower_bound",
    "morton_bounds_check",
    "MortonCheck",
    "DEFAULT_CAP",
    "trace_lines",
]

DEFAULT_CAP = 20
DEFAULT_CACHE = 1 << 20

Poly = Dict[Tuple[int, int], int]
XS = List[Tuple[int, int, int, int, int]]


class CrossingCapExceeded(ValueError):
    def __init__(self, crossings: int, cap: int):
        super().__init__(f"diagram has {crossings} crossings, above the cap of {cap}")
        self.crossings = crossings
        self.cap = cap


# -- small polynomial helpers on plain dicts ------------------------------

_ONE: Poly = {(0, 0): 1}


def _mul(p: Poly, q: Poly) -> Poly:
    out: Poly = {}
    for (i1, j1), c1 in p.items():
        for (i2, j2), c2 in q.items():
            k = (i1 + i2, j1 + j2)
            out[k] = out.get(k, 0) + c1 * c2
    return {k: c for k, c in out.items() if c}


def _add_into(acc: Poly, p: Poly, coeff: int, zp: int, ap: int) -> None:
    for (i, j), c in p.items():
        k = (i + zp, j + ap)
        v = acc.get(k, 0) + c * coeff
        if v:
            acc[k] = v
        else:
            acc.pop(k, None)


_DELTA_POWERS: List[Poly] = [_ONE]


def _delta_pow(n: int) -> Poly:
    while len(_DELTA_POWERS) <= n:
        _DELTA_POWERS.append(_mul(_DELTA_POWERS[-1], {(-1, 1): 1, (-1, -1): -1}))
    return _DELTA_POWERS[n]


# -- diagram surgery on oriented crossing lists ----------------------------


def _splice(xs: XS, idx, pairs) -> Tuple[XS, int]:
    """Delete crossing ``idx`` (or a set of crossings), joining edges in ``pairs``.

    Returns the new crossing list and the number of closed loops created.
    """
    gone = (idx,) if isinstance(idx, int) else tuple(idx)
    parent = {}
    for i in gone:
        for e in xs[i][:4]:
            parent[e] = e

    def find(e):
        while parent[e] != e:
            e = parent[e]
        return e

    for u, v in pairs:
        ru, rv = find(u), find(v)
        if ru != rv:
            parent[ru] = rv
    rep = {e: find(e) for e in parent}
    rest = []
    present = set()
    for k, y in enumerate(xs):
        if k in gone:
            continue
        a, b, c, d, s = y
        y = (rep.get(a, a), rep.get(b, b), rep.get(c, c), rep.get(d, d), s)
        present.update(y[:4])
        rest.append(y)
    loops = len({r for r in rep.values() if r not in present})
    return rest, loops


def _through_pairs(x) -> Tuple[Tuple[int, int], Tuple[int, int]]:
    a, b, c, d, s = x
    return ((a, c), (d, b)) if s > 0 else ((a, c), (b, d))


def _smooth_pairs(x) -> Tuple[Tuple[int, int], Tuple[int, int]]:
    a, b, c, d, s = x
    return ((a, b), (d, c)) if s > 0 else ((a, d), (b, c))


def _removable_bigon(xs: XS):
    """A face bounded by two edges, one passing over at both ends, or None."""
    ends: Dict[int, List[Tuple[int, int]]] = {}
    for i, x in enumerate(xs):
        for k in range(4):
            ends.setdefault(x[k], []).append((i, k))
    for e, occ in ends.items():
        (i, k), (j, m) = occ
        if i == j:
            continue
        # face traversal: along e into crossing j at slot m, leave by slot m+1
        m2 = (m + 1) % 4
        f = xs[j][m2]
        o1, o2 = ends[f]
        other = o2 if o1 == (j, m2) else o1
        if other[0] != i or (other[1] + 1) % 4 != k:
            continue
        # bigon between crossings i and j with edges e and f
        e_over = k % 2 == 1 and m % 2 == 1
        e_under = k % 2 == 0 and m % 2 == 0
        f_over = m2 % 2 == 1 and other[1] % 2 == 1
        f_under = m2 % 2 == 0 and other[1] % 2 == 0
        if (e_over and f_under) or (e_under and f_over):
            return i, j
    return None


def _simplify(xs: XS, loops: int) -> Tuple[XS, int]:
    """Remove kinks and bigons that one strand passes entirely over."""
    while True:
        changed = True
        while changed:
            changed = False
            for i, x in enumerate(xs):
                if len({x[0], x[1], x[2], x[3]}) < 4:
                    xs, extra = _splice(xs, i, _through_pairs(x))
                    loops += extra
                    changed = True
                    break
        if len(xs) < 2:
            return xs, loops
        hit = _removable_bigon(xs)
        if hit is None:
            return xs, loops
        i, j = hit
        xs, extra = _splice(xs, (i, j), _through_pairs(xs[i]) + _through_pairs(xs[j]))
        loops += extra


def _remove_kinks(xs: XS, loops: int) -> Tuple[XS, int]:
    changed = True
    while changed:
        changed = False
        for i, x in enumerate(xs):
            if len({x[0], x[1], x[2], x[3]}) < 4:
                xs, extra = _splice(xs, i, _through_pairs(x))
                loops += extra
                changed = True
                break
    return xs, loops


def _pieces(xs: XS) -> List[XS]:
    parent: Dict[int, int] = {}

    def find(e):
        root = e
        while parent.setdefault(root, root) != root:
            root = parent[root]
        while parent[e] != root:
            parent[e], e = root, parent[e]
        return root

    for a, b, c, d, _ in xs:
        ra = find(a)
        for e in (b, c, d):
            re_ = find(e)
            if re_ != ra:
                parent[re_] = ra
    groups: Dict[int, XS] = {}
    for x in xs:
        groups.setdefault(find(x[0]), []).append(x)
    return list(groups.values())


def _incidence(xs: XS):
    head = {}
    succ = {}
    for i, (a, b, c, d, s) in enumerate(xs):
        head[a] = (i, 0)
        succ[a] = c
        if s > 0:
            head[d] = (i, 3)
            succ[d] = b
        else:
            head[b] = (i, 1)
            succ[b] = d
    return head, succ


def _label(xs: XS, head, succ, start: int):
    """Label edges along components from ``start``; later components start at the
    first unlabelled edge of the earliest crossing met.  Returns (labels, components)."""
    lab: Dict[int, int] = {}
    order: List[int] = []
    total = len(head)
    e = start
    comps = 0
    ptr = 0
    while True:
        comps += 1
        while e not in lab:
            lab[e] = len(order)
            order.append(e)
            e = succ[e]
        if len(order) == total:
            return lab, comps
        e = None
        while ptr < len(order):
            x = xs[head[order[ptr]][0]]
            for f in x[:4]:
                if f not in lab:
                    e = f
                    break
            if e is not None:
                break
            ptr += 1
        if e is None:
            # disconnected diagram: fall back to the smallest unlabelled edge
            e = min(f for f in head if f not in lab)


def _canonical(xs: XS):
    """Canonical crossing code: minimum over admissible base points.

    Base points are incoming under-edges on a longest component.  The code's
    first crossing is ``(0, label(b), 1, label(d), sign)`` at the base point,
    and labels below the component length are known from positions alone, so
    only base points minimising that prefix are labelled in full.
    """
    head, succ = _incidence(xs)
    comp_of: Dict[int, int] = {}
    pos: Dict[int, int] = {}
    lengths: List[int] = []
    for e0 in succ:
        if e0 in comp_of:
            continue
        cid = len(lengths)
        e, n = e0, 0
        while e not in comp_of:
            comp_of[e] = cid
            pos[e] = n
            n += 1
            e = succ[e]
        lengths.append(n)
    longest = max(lengths)
    big = 2 * len(xs) + 1
    keyed = []
    for x in xs:
        a, b, c, d, s = x
        ca = comp_of[a]
        if lengths[ca] != longest:
            continue
        p = pos[a]
        lb = (pos[b] - p) % longest if comp_of[b] == ca else big
        ld = (pos[d] - p) % longest if comp_of[d] == ca else big
        keyed.append(((lb, ld, s), a))
    best_key = min(k for k, _ in keyed)
    best = None
    best_comps = 0
    for k, a in keyed:
        if k != best_key:
            continue
        lab, comps = _label(xs, head, succ, a)
        code = tuple(sorted((lab[a], lab[b], lab[c], lab[d], s) for a, b, c, d, s in xs))
        if best is None or code < best:
            best, best_comps = code, comps
    return best, best_comps


# -- memo -------------------------------------------------------------------


class _LRU:
    def __init__(self, size: int):
        self.size = size
        self.data: "OrderedDict[tuple, Poly]" = OrderedDict()
        self.lock = threading.Lock()
        self.hits = 0
        self.misses = 0

    def get(self, key):
        with self.lock:
            val = self.data.get(key)
            if val is None:
                self.misses += 1
                return None
            self.hits += 1
            self.data.move_to_end(key)
            return val

    def put(self, key, val):
        with self.lock:
            # first writer wins; a racing duplicate computed the same value
            if key in self.data:
                return self.data[key]
            self.data[key] = val
            if len(self.data) > self.size:
                self.data.popitem(last=False)
            return val


# -- engine -----------------------------------------------------------------


class SkeinEngine:
    """Reusable evaluator holding a bounded memo of connected sub-diagrams.

    ``trace`` is an optional callable receiving one dict per node and leaf of
    the resolving tree, each carrying its id, parent id and accumulated weight; with tracing on the memo and the split into pieces are
    bypassed so the leaves add up to the full answer.
    """

    def __init__(self, cap: int = DEFAULT_CAP, cache_size: int = DEFAULT_CACHE,
                 trace: Optional[Callable[[dict], None]] = None):
        self.cap = cap
        self.trace = trace
        self.cache = _LRU(cache_size)

    def evaluate(self, d: OrientedDiagram) -> Laurent2:
        if d.num_crossings > self.cap:
            raise CrossingCapExceeded(d.num_crossings, self.cap)
        xs = d.oriented_crossings()
        loops = d.free_loop_count()
        if self.trace is not None:
            self._next_id = 0
            p = self._traced(xs, loops, 1, 0, 0, None)
        else:
            p = self._evaluate(xs, loops)
        return Laurent2._wrap(dict(p))

    def _evaluate(self, xs: XS, loops: int) -> Poly:
        xs, loops = _simplify(list(xs), loops)
        if not xs:
            return _delta_pow(loops - 1)
        pieces = _pieces(xs)
        if len(pieces) == 1 and loops == 0:
            return self._connected(xs)
        out = _delta_pow(len(pieces) + loops - 1)
        for piece in pieces:
            out = _mul(out, self._connected(piece))
        return out

    def _connected(self, xs: XS) -> Poly:
        code, comps = _canonical(xs)
        hit = self.cache.get(code)
        if hit is not None:
            return hit
        val = self._resolve(code, comps)
        return self.cache.put(code, val)

    def _resolve(self, code, comps: int) -> Poly:
        xs = list(code)
        head, _ = _incidence(xs)
        seen = [False] * len(xs)
        ap = 0
        acc: Poly = {}
        for e in range(2 * len(xs)):
            i, pos = head[e]
            if seen[i]:
                continue
            seen[i] = True
            if pos != 0:
                continue
            a, b, c, d, s = xs[i]
            sub, loops = _splice(xs, i, _smooth_pairs(xs[i]))
            _add_into(acc, self._evaluate(sub, loops), s, 1, ap - s)
            xs[i] = (d, a, b, c, -1) if s > 0 else (b, c, d, a, 1)
            ap -= 2 * s
        _add_into(acc, _delta_pow(comps - 1), 1, 0, ap)
        return acc

    # plain resolving tree for trace output
    def _traced(self, xs: XS, loops: int, coeff: int, zp: int, ap: int, parent: Optional[int]) -> Poly:
        node = self._emit({"kind": "node", "parent": parent, "crossings": len(xs),
                           "weight": {"coeff": coeff, "z": zp, "a": ap}})
        xs, loops = _remove_kinks(list(xs), loops)
        acc: Poly = {}
        if not xs:
            self._emit_leaf(node, coeff, zp, ap, loops)
            _add_into(acc, _delta_pow(loops - 1), 1, 0, 0)
            return acc
        head, succ = _incidence(xs)
        lab, comps = _label(xs, head, succ, min(x[0] for x in xs))
        xs = [(lab[a], lab[b], lab[c], lab[d], s) for a, b, c, d, s in xs]
        head, _ = _incidence(xs)
        seen = [False] * len(xs)
        sw = 0
        for e in range(2 * len(xs)):
            i, pos = head[e]
            if seen[i]:
                continue
            seen[i] = True
            if pos != 0:
                continue
            a, b, c, d, s = xs[i]
            sub, extra = _splice(xs, i, _smooth_pairs(xs[i]))
            child = self._traced(sub, loops + extra, coeff * s, zp + 1, ap + sw - s, node)
            _add_into(acc, child, s, 1, sw - s)
            xs[i] = (d, a, b, c, -1) if s > 0 else (b, c, d, a, 1)
            sw -= 2 * s
        self._emit_leaf(node, coeff, zp, ap + sw, comps + loops)
        _add_into(acc, _delta_pow(comps + loops - 1), 1, 0, sw)
        return acc

    def _emit(self, rec: dict) -> int:
        rec["id"] = self._next_id
        self._next_id += 1
        self.trace(rec)
        return rec["id"]

    def _emit_leaf(self, parent, coeff, zp, ap, components):
        # the descending diagram reached after all switches is an unlink
        value = Laurent2._wrap(dict(_delta_pow(components - 1))).mul_monomial(coeff, zp, ap)
        self._emit({"kind": "leaf", "parent": parent, "components": components,
                    "weight": {"coeff": coeff, "z": zp, "a": ap}, "value": value.to_string()})


def homfly(d: OrientedDiagram, cap: int = DEFAULT_CAP, engine: Optional[SkeinEngine] = None,
           trace: Optional[Callable[[dict], None]] = None) -> Laurent2:
    """HOMFLY polynomial of an oriented diagram."""
    if engine is None:
        engine = SkeinEngine(cap=cap, trace=trace)
    elif d.num_crossings > cap:
        raise CrossingCapExceeded(d.num_crossings, cap)
    return engine.evaluate(d)


def trace_lines(d: OrientedDiagram, cap: int = DEFAULT_CAP) -> Tuple[Laurent2, List[str]]:
    """Evaluate with tracing, returning the polynomial and one JSON line per tree record."""
    lines: List[str] = []
    p = homfly(d, cap=cap, trace=lambda rec: lines.append(json.dumps(rec, sort_keys=True)))
    return p, lines


# -- bounds -----------------------------------------------------------------


def mwf_lower_bound(p: Laurent2) -> int:
    """Braid index lower bound from the ``a``-span: ``span/2 + 1``."""
    ext = a_extremes(p)
    if ext.span % 2:
        raise ValueError(f"a-span {ext.span} is odd; not the HOMFLY polynomial of a link")
    return ext.span // 2 + 1


@dataclass(frozen=True)
class MortonCheck:
    seifert_circles: int
    writhe: int
    E: int
    e: int
    upper_ok: bool   # E <= s - w - 1
    lower_ok: bool   # e >= -s - w + 1

    @property
    def ok(self) -> bool:
        return self.upper_ok and self.lower_ok

    @property
    def upper_slack(self) -> int:
        return self.seifert_circles - self.writhe - 1 - self.E

    @property
    def lower_slack(self) -> int:
        return self.e + self.seifert_circles + self.writhe - 1


def morton_bounds_check(d: OrientedDiagram, p: Laurent2, extremes: Optional[AExtremes] = None) -> MortonCheck:
    ext = extremes or a_extremes(p)
    s = seifert_decompose(d).circle_count
    w = writhe(d)
    return MortonCheck(s, w, ext.E, ext.e, ext.E <= s - w - 1, ext.e >= -s - w + 1)
