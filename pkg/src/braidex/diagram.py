"""Oriented planar link diagrams in PD form, plus Seifert circle structure.

A crossing record lists its four incident edges counterclockwise, starting
with the incoming under-edge *in the reference orientation* (the orientation
in which the edges were numbered).  ``over`` gives the direction of the
over-strand in that same reference orientation:

* ``over == 0``: the over-strand enters at ``edges[3]`` and leaves at ``edges[1]``
* ``over == 1``: the over-strand enters at ``edges[1]`` and leaves at ``edges[3]``

With the under-strand drawn south-to-north, an over-strand running west to
east (``over == 0``) is a positive crossing.  The actual orientation of the
link is the reference orientation with each component optionally reversed
(``orientations[i] == -1``), so one set of crossing records serves every
orientation of the same unoriented diagram.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from functools import cached_property
from typing import Dict, Iterable, List, Optional, Sequence, Tuple

__all__ = [
    "Crossing",
    "OrientedDiagram",
    "DiagramError",
    "SeifertDecomposition",
    "SeifertGraph",
    "writhe",
    "seifert_decompose",
    "seifert_graph",
    "mirror",
    "connected_sum",
    "build_elementary_torus",
    "unknot",
    "unlink",
    "is_alternating",
    "from_oriented",
]


class DiagramError(ValueError):
    pass


# (a, b, c, d, sign): a incoming under, c outgoing under, counterclockwise
OrientedCrossing = Tuple[int, int, int, int, int]


@dataclass(frozen=True)
class Crossing:
    edges: Tuple[int, int, int, int]
    over: int

    def mirrored(self) -> "Crossing":
        e0, e1, e2, e3 = self.edges
        # the old over-strand becomes the under-strand
        if self.over == 0:
            return Crossing((e3, e0, e1, e2), 1)
        return Crossing((e1, e2, e3, e0), 0)


@dataclass(frozen=True)
class OrientedDiagram:
    crossings: Tuple[Crossing, ...]
    components: Tuple[Tuple[int, ...], ...]
    orientations: Tuple[int, ...] = ()

    def __post_init__(self):
        if not self.orientations:
            object.__setattr__(self, "orientations", (1,) * len(self.components))
        if len(self.orientations) != len(self.components):
            raise DiagramError("one orientation flag per component is required")
        if any(f not in (1, -1) for f in self.orientations):
            raise DiagramError("orientation flags must be +1 or -1")

    # -- basic counts -----------------------------------------------------

    @property
    def num_crossings(self) -> int:
        return len(self.crossings)

    @property
    def num_components(self) -> int:
        return len(self.components)

    def edge_component(self) -> Dict[int, int]:
        return self._comp_of

    @cached_property
    def _comp_of(self) -> Dict[int, int]:
        return {e: i for i, comp in enumerate(self.components) for e in comp}

    def oriented_crossings(self) -> List[OrientedCrossing]:
        """Crossings in the actual orientation as ``(a, b, c, d, sign)``."""
        return list(self._oriented)

    @cached_property
    def _oriented(self) -> Tuple[OrientedCrossing, ...]:
        comp_of = self._comp_of
        flags = self.orientations
        out = []
        for x in self.crossings:
            e0, e1, e2, e3 = x.edges
            fu = flags[comp_of[e0]]
            fo = flags[comp_of[e1]]
            over_in_e3 = (x.over == 0) == (fo == 1)
            if fu == 1:
                out.append((e0, e1, e2, e3, 1 if over_in_e3 else -1))
            else:
                out.append((e2, e3, e0, e1, -1 if over_in_e3 else 1))
        return tuple(out)

    def signs(self) -> List[int]:
        return [x[4] for x in self._oriented]

    def negative_crossings(self) -> int:
        return sum(1 for s in self.signs() if s < 0)

    # -- validation -------------------------------------------------------

    def validate(self) -> None:
        count: Dict[int, int] = {}
        for x in self.crossings:
            if len(x.edges) != 4 or x.over not in (0, 1):
                raise DiagramError(f"malformed crossing {x}")
            for e in x.edges:
                count[e] = count.get(e, 0) + 1
        comp_edges = [e for comp in self.components for e in comp]
        if len(set(comp_edges)) != len(comp_edges):
            raise DiagramError("an edge is listed in two components")
        for e in comp_edges:
            c = count.get(e, 0)
            if c != 2 and not (c == 0 and self._is_free_loop(e)):
                raise DiagramError(f"edge {e} occurs {c} times in crossing records")
        if set(count) - set(comp_edges):
            raise DiagramError("crossing records mention edges outside every component")
        # reference traversal must follow the component edge lists
        nxt = _reference_successor(self.crossings)
        for comp in self.components:
            if len(comp) == 1 and self._is_free_loop(comp[0]):
                continue
            for i, e in enumerate(comp):
                if nxt.get(e) != comp[(i + 1) % len(comp)]:
                    raise DiagramError(f"component {comp} is not a closed traversal")

    def _is_free_loop(self, e: int) -> bool:
        return all(e not in x.edges for x in self.crossings)

    # -- orientation ------------------------------------------------------

    def with_orientations(self, flags: Sequence[int]) -> "OrientedDiagram":
        return OrientedDiagram(self.crossings, self.components, tuple(flags))

    def reversed_component(self, i: int) -> "OrientedDiagram":
        flags = list(self.orientations)
        flags[i] = -flags[i]
        return self.with_orientations(flags)

    def normalized(self) -> "OrientedDiagram":
        """Same oriented diagram with all flags +1 and edges renumbered in traversal order."""
        return from_oriented(self.oriented_crossings(), self.free_loop_count())

    def free_loop_count(self) -> int:
        return sum(1 for comp in self.components if len(comp) == 1 and self._is_free_loop(comp[0]))

    # -- PD JSON ----------------------------------------------------------

    def to_json_obj(self) -> dict:
        return {
            "components": len(self.components),
            "crossings": [{"edges": list(x.edges), "over": x.over} for x in self.crossings],
            "orientations": list(self.orientations),
        }

    def to_json(self) -> str:
        return json.dumps(self.to_json_obj(), separators=(", ", ": "))

    @classmethod
    def from_json_obj(cls, obj: dict) -> "OrientedDiagram":
        try:
            crossings = tuple(Crossing(tuple(int(e) for e in c["edges"]), int(c["over"]))
                              for c in obj["crossings"])
            n = int(obj["components"])
            flags = tuple(int(f) for f in obj.get("orientations") or [1] * n)
        except (KeyError, TypeError, ValueError) as exc:
            raise DiagramError(f"malformed PD object: {exc}") from None
        for x in crossings:
            if len(x.edges) != 4 or x.over not in (0, 1):
                raise DiagramError(f"malformed crossing {x}")
        components = _components_from_records(crossings, n)
        d = cls(crossings, components, flags)
        d.validate()
        return d

    @classmethod
    def from_json(cls, text: str) -> "OrientedDiagram":
        return cls.from_json_obj(json.loads(text))


def _reference_successor(crossings: Iterable[Crossing]) -> Dict[int, int]:
    nxt = {}
    for x in crossings:
        e0, e1, e2, e3 = x.edges
        nxt[e0] = e2
        if x.over == 0:
            nxt[e3] = e1
        else:
            nxt[e1] = e3
    return nxt


def _components_from_records(crossings: Sequence[Crossing], n: int) -> Tuple[Tuple[int, ...], ...]:
    """Recover components from the reference traversal; edges numbered consecutively."""
    nxt = _reference_successor(crossings)
    seen = set()
    comps = []
    for start in sorted(nxt):
        if start in seen:
            continue
        comp = []
        e = start
        while e not in seen:
            seen.add(e)
            comp.append(e)
            if e not in nxt:
                raise DiagramError(f"edge {e} has no crossing at its head")
            e = nxt[e]
        comps.append(tuple(comp))
    # crossingless components take the remaining ids
    used = set(seen)
    extra = n - len(comps)
    if extra < 0:
        raise DiagramError(f"declared {n} components but found {len(comps)}")
    nxt_id = max(used) + 1 if used else 0
    for _ in range(extra):
        comps.append((nxt_id,))
        nxt_id += 1
    comps.sort(key=min)
    return tuple(comps)


def from_oriented(xs: Sequence[OrientedCrossing], free_loops: int = 0) -> OrientedDiagram:
    """Build a diagram from oriented crossings, renumbering edges along components."""
    head = {}
    for i, (a, b, c, d, s) in enumerate(xs):
        head[a] = (i, 0)
        head[d if s > 0 else b] = (i, 3 if s > 0 else 1)
    out_of = {}
    for i, (a, b, c, d, s) in enumerate(xs):
        out_of[(i, 0)] = c
        out_of[(i, 3 if s > 0 else 1)] = b if s > 0 else d

    def succ(e):
        return out_of[head[e]]

    relabel: Dict[int, int] = {}
    comps = []
    for e0 in sorted(head):
        if e0 in relabel:
            continue
        comp = []
        e = e0
        while e not in relabel:
            relabel[e] = len(relabel)
            comp.append(relabel[e])
            e = succ(e)
        comps.append(tuple(comp))
    n_edges = len(relabel)
    for k in range(free_loops):
        comps.append((n_edges + k,))
    crossings = []
    for a, b, c, d, s in xs:
        crossings.append(Crossing((relabel[a], relabel[b], relabel[c], relabel[d]), 0 if s > 0 else 1))
    return OrientedDiagram(tuple(crossings), tuple(comps), (1,) * len(comps))


# -- basic operations -----------------------------------------------------


def writhe(d: OrientedDiagram) -> int:
    return sum(d.signs())


def mirror(d: OrientedDiagram) -> OrientedDiagram:
    return OrientedDiagram(tuple(x.mirrored() for x in d.crossings), d.components, d.orientations)


def unknot() -> OrientedDiagram:
    return OrientedDiagram((), ((0,),))


def unlink(n: int) -> OrientedDiagram:
    if n < 1:
        raise DiagramError("an unlink needs at least one component")
    return OrientedDiagram((), tuple((i,) for i in range(n)))


def connected_sum(d1: OrientedDiagram, d2: OrientedDiagram, arc1: int, arc2: int) -> OrientedDiagram:
    """Band ``d1`` and ``d2`` together along edge ``arc1`` of ``d1`` and ``arc2`` of ``d2``.

    Edge ids refer to the diagrams as given.  The result is renumbered in
    traversal order.
    """
    n1, n2 = d1.normalized(), d2.normalized()
    # map the caller's edge ids through normalization by position in components
    arc1 = _normalized_edge(d1, n1, arc1)
    arc2 = _normalized_edge(d2, n2, arc2)
    xs1 = n1.oriented_crossings()
    shift = max((e for comp in n1.components for e in comp), default=-1) + 1
    xs2 = [tuple(e + shift for e in x[:4]) + (x[4],) for x in n2.oriented_crossings()]
    arc2 += shift
    loops1 = n1.free_loop_count()
    loops2 = n2.free_loop_count()
    free1 = not any(arc1 in x[:4] for x in xs1)
    free2 = not any(arc2 in x[:4] for x in xs2)
    loops = loops1 + loops2
    if free1 or free2:
        # summing with a crossingless unknot leaves the other diagram unchanged
        return from_oriented(xs1 + xs2, loops - 1)
    new_edge = shift + max((e for comp in n2.components for e in comp), default=-1) + 1

    def rewire(xs, in_old, in_new):
        # replace the *incoming* occurrence of in_old by in_new
        out = []
        for a, b, c, d, s in xs:
            x = [a, b, c, d]
            in_pos = 0 if a == in_old else ((3 if s > 0 else 1) if x[3 if s > 0 else 1] == in_old else None)
            if in_pos is not None:
                x[in_pos] = in_new
            out.append((*x, s))
        return out

    # d1: tail1 --arc1--> head1 ; d2: tail2 --arc2--> head2
    # result: tail1 --arc1--> head2 ; tail2 --new--> head1
    xs1 = rewire(xs1, arc1, new_edge)
    xs2 = rewire(xs2, arc2, arc1)
    xs2 = [tuple(new_edge if (e == arc2) else e for e in x[:4]) + (x[4],) for x in xs2]
    return from_oriented(xs1 + xs2, loops)


def _normalized_edge(orig: OrientedDiagram, norm: OrientedDiagram, e: int) -> int:
    comp_of = orig.edge_component()
    if e not in comp_of:
        raise DiagramError(f"edge {e} is not in the diagram")
    # normalization renumbers along the actual orientation; match by oriented crossings
    xs_o = orig.oriented_crossings()
    xs_n = norm.oriented_crossings()
    if not xs_o:
        return norm.components[comp_of[e]][0]
    for xo, xn in zip(xs_o, xs_n):
        for k in range(4):
            if xo[k] == e:
                return xn[k]
    return norm.components[comp_of[e]][0]


def build_elementary_torus(m: int, parallel: bool = True) -> OrientedDiagram:
    """Closed two-string twist with ``m`` same-sign crossings.

    ``parallel`` orientation gives two Seifert circles joined by ``m``
    positive crossings.  Antiparallel orientation needs ``m`` even.
    """
    from .tangle import Builder

    if m < 1:
        raise DiagramError("an elementary torus link needs m >= 1 crossings")
    if not parallel and m % 2:
        raise DiagramError("antiparallel orientation requires an even number of crossings")
    b = Builder()
    t = b.zero_tangle()
    b.twist_right(t, m, kind=0, tag="twist")
    b.numerator(t)
    base = b.finish().diagram
    want = 2 if parallel else m
    for flags in _flag_choices(base.num_components):
        d = base.with_orientations(flags)
        if len(seifert_decompose(d).circles) == want:
            return d if writhe(d) > 0 else mirror(d)
    raise AssertionError("no orientation realises the requested elementary torus link")


def _flag_choices(n: int):
    for bits in range(1 << max(n - 1, 0)):
        yield (1,) + tuple(-1 if bits >> i & 1 else 1 for i in range(n - 1))


# -- Seifert circles ------------------------------------------------------


@dataclass(frozen=True)
class SeifertDecomposition:
    circles: Tuple[Tuple[int, ...], ...]
    crossing_assignment: Tuple[Tuple[int, int, int], ...]  # (circle, circle, sign) per crossing

    @property
    def circle_count(self) -> int:
        return len(self.circles)


def seifert_successor(xs: Sequence[OrientedCrossing]) -> Dict[int, int]:
    """Edge-to-edge map obtained by smoothing every crossing along the orientation."""
    nxt = {}
    for a, b, c, d, s in xs:
        if s > 0:
            nxt[a] = b
            nxt[d] = c
        else:
            nxt[a] = d
            nxt[b] = c
    return nxt


def seifert_decompose(d: OrientedDiagram) -> SeifertDecomposition:
    xs = d.oriented_crossings()
    nxt = seifert_successor(xs)
    circle_of: Dict[int, int] = {}
    circles = []
    for e0 in sorted(nxt):
        if e0 in circle_of:
            continue
        circ = []
        e = e0
        while e not in circle_of:
            circle_of[e] = len(circles)
            circ.append(e)
            e = nxt[e]
        circles.append(tuple(circ))
    for comp in d.components:
        if len(comp) == 1 and d._is_free_loop(comp[0]):
            circles.append(comp)
    assignment = []
    for a, b, c, dd, s in xs:
        ci, cj = circle_of[a], circle_of[dd if s > 0 else b]
        if ci == cj:
            raise DiagramError("a Seifert circle meets itself at a crossing")
        assignment.append((min(ci, cj), max(ci, cj), s))
    return SeifertDecomposition(tuple(circles), tuple(assignment))


@dataclass(frozen=True)
class SeifertGraph:
    vertices: int
    multiedges: Dict[Tuple[int, int], Tuple[int, int]] = field(hash=False)  # pair -> (multiplicity, sign)
    lone_edges: Tuple[Tuple[int, int], ...] = ()
    sigma_plus: int = 0
    sigma_minus: int = 0

    def is_bipartite(self) -> bool:
        return self.two_coloring() is not None

    def two_coloring(self) -> Optional[List[int]]:
        adj = self.adjacency()
        color = [-1] * self.vertices
        for root in range(self.vertices):
            if color[root] >= 0:
                continue
            color[root] = 0
            stack = [root]
            while stack:
                u = stack.pop()
                for v in adj[u]:
                    if color[v] < 0:
                        color[v] = 1 - color[u]
                        stack.append(v)
                    elif color[v] == color[u]:
                        return None
        return color

    def adjacency(self) -> List[List[int]]:
        adj = [[] for _ in range(self.vertices)]
        for u, v in self.multiedges:
            adj[u].append(v)
            adj[v].append(u)
        return adj

    def is_connected(self) -> bool:
        if self.vertices == 0:
            return True
        adj = self.adjacency()
        seen = {0}
        stack = [0]
        while stack:
            for v in adj[stack.pop()]:
                if v not in seen:
                    seen.add(v)
                    stack.append(v)
        return len(seen) == self.vertices

    def partial_components(self, sign: int) -> List[List[int]]:
        """Circle sets of the components left after smoothing every crossing of sign ``-sign``."""
        parent = list(range(self.vertices))

        def find(x):
            while parent[x] != x:
                parent[x] = parent[parent[x]]
                x = parent[x]
            return x

        for (u, v), (_, s) in self.multiedges.items():
            if s == sign:
                parent[find(u)] = find(v)
        groups: Dict[int, List[int]] = {}
        for v in range(self.vertices):
            groups.setdefault(find(v), []).append(v)
        return sorted(groups.values())

    def cycles_are_monochromatic(self) -> bool:
        """Every cycle of Seifert circles uses crossings of a single sign."""
        import networkx as nx

        g = nx.Graph()
        g.add_nodes_from(range(self.vertices))
        for (u, v), (_, s) in self.multiedges.items():
            g.add_edge(u, v, sign=s)
        for block in nx.biconnected_component_edges(g):
            if len({g.edges[u, v]["sign"] for u, v in block}) > 1:
                return False
        return True


def seifert_graph(sd: SeifertDecomposition) -> SeifertGraph:
    groups: Dict[Tuple[int, int], List[int]] = {}
    for u, v, s in sd.crossing_assignment:
        groups.setdefault((u, v), []).append(s)
    multiedges = {}
    mixed = False
    for pair, signs in groups.items():
        if len(set(signs)) > 1:
            mixed = True
        multiedges[pair] = (len(signs), signs[0] if len(set(signs)) == 1 else 0)
    lone = tuple(sorted(p for p, (m, _) in multiedges.items() if m == 1))
    sp = sum(1 for m, s in multiedges.values() if m > 1 and s > 0)
    sm = sum(1 for m, s in multiedges.values() if m > 1 and s < 0)
    if mixed:
        # non-alternating input: count pairs by how many crossings of each sign they share
        sp = sum(1 for signs in groups.values() if signs.count(1) > 1)
        sm = sum(1 for signs in groups.values() if signs.count(-1) > 1)
    return SeifertGraph(sd.circle_count, multiedges, lone, sp, sm)


def is_alternating(d: OrientedDiagram) -> bool:
    """Over and under passages alternate along every component."""
    role = {}
    for i, x in enumerate(d.crossings):
        e0, e1, e2, e3 = x.edges
        role[(e0, "head")] = "under"
        role[(e2, "tail")] = "under"
        for e, end in ((e1, "head" if x.over == 1 else "tail"), (e3, "tail" if x.over == 1 else "head")):
            role[(e, end)] = "over"
    for comp in d.components:
        for e in comp:
            if (e, "head") in role and role[(e, "head")] == role[(e, "tail")]:
                return False
    return True
