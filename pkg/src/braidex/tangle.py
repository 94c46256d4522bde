"""Planar construction of diagrams from twist tangles.

A four-ended tangle is a dict of ports ``NW, NE, SW, SE`` pointing at graph
nodes.  A node is either a crossing slot ``("x", crossing, slot)`` with slots
numbered counterclockwise ``0=NE, 1=NW, 2=SW, 3=SE``, or a pin ``("p", k)``
on a crossingless arc.  Every operation here is a planar move, so the
diagram read off at the end is planar by construction.

A crossing of kind 0 has its NE-SW strand on top, kind 1 its NW-SE strand.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Dict, List, Tuple

from .diagram import Crossing, DiagramError, OrientedDiagram

NE, NW, SW, SE = 0, 1, 2, 3

Node = tuple
Tangle = Dict[str, Node]


@dataclass
class BuildResult:
    diagram: OrientedDiagram
    tags: List[object]                 # per crossing
    edge_paths: Dict[int, List[Node]]  # edge -> nodes from tail slot to head slot
    node_edge: Dict[Node, int]         # every node on a crossing-to-crossing path

    def flow(self, outer: Node, inner: Node) -> int:
        """+1 if the reference orientation runs from ``outer`` to ``inner``, -1 otherwise.

        The two nodes must be adjacent along one edge.
        """
        e = self.node_edge[inner]
        path = self.edge_paths[e]
        i, j = path.index(outer), path.index(inner)
        return 1 if i < j else -1


class Builder:
    def __init__(self):
        self.kinds: List[int] = []
        self.tags: List[object] = []
        self._adj: Dict[Node, List[Node]] = {}
        self._pins = 0

    # -- primitives -------------------------------------------------------

    def crossing(self, kind: int, tag=None) -> Tangle:
        cid = len(self.kinds)
        self.kinds.append(kind)
        self.tags.append(tag)
        ports = {}
        for name, slot in (("NE", NE), ("NW", NW), ("SW", SW), ("SE", SE)):
            node = ("x", cid, slot)
            self._adj[node] = []
            ports[name] = node
        return ports

    def arc(self) -> Tuple[Node, Node]:
        p, q = ("p", self._pins), ("p", self._pins + 1)
        self._pins += 2
        self._adj[p] = [q]
        self._adj[q] = [p]
        return p, q

    def join(self, u: Node, v: Node) -> None:
        self._adj[u].append(v)
        self._adj[v].append(u)

    # -- tangles ----------------------------------------------------------

    def infinity_tangle(self) -> Tangle:
        nw, sw = self.arc()
        ne, se = self.arc()
        return {"NW": nw, "SW": sw, "NE": ne, "SE": se}

    def zero_tangle(self) -> Tangle:
        nw, ne = self.arc()
        sw, se = self.arc()
        return {"NW": nw, "NE": ne, "SW": sw, "SE": se}

    def twist_bottom(self, t: Tangle, n: int, kind: int, tag=None) -> None:
        for _ in range(n):
            x = self.crossing(kind, tag)
            self.join(t["SW"], x["NW"])
            self.join(t["SE"], x["NE"])
            t["SW"], t["SE"] = x["SW"], x["SE"]

    def twist_left(self, t: Tangle, n: int, kind: int, tag=None) -> None:
        for _ in range(n):
            x = self.crossing(kind, tag)
            self.join(x["NE"], t["NW"])
            self.join(x["SE"], t["SW"])
            t["NW"], t["SW"] = x["NW"], x["SW"]

    def twist_right(self, t: Tangle, n: int, kind: int, tag=None) -> None:
        for _ in range(n):
            x = self.crossing(kind, tag)
            self.join(t["NE"], x["NW"])
            self.join(t["SE"], x["SW"])
            t["NE"], t["SE"] = x["NE"], x["SE"]

    def add(self, left: Tangle, right: Tangle) -> Tangle:
        self.join(left["NE"], right["NW"])
        self.join(left["SE"], right["SW"])
        return {"NW": left["NW"], "SW": left["SW"], "NE": right["NE"], "SE": right["SE"]}

    def numerator(self, t: Tangle) -> None:
        self.join(t["NW"], t["NE"])
        self.join(t["SW"], t["SE"])

    def denominator(self, t: Tangle) -> None:
        self.join(t["NW"], t["SW"])
        self.join(t["NE"], t["SE"])

    # -- read off ---------------------------------------------------------

    def finish(self) -> BuildResult:
        adj = self._adj
        for node, nbrs in adj.items():
            want = 1 if node[0] == "x" else 2
            if len(nbrs) != want:
                raise DiagramError(f"open end at {node}")

        def path_from(slot_node):
            path = [slot_node]
            prev, cur = slot_node, adj[slot_node][0]
            while cur[0] == "p":
                path.append(cur)
                a, b = adj[cur]
                prev, cur = cur, (b if a == prev else a)
            path.append(cur)
            return path

        edge_paths: Dict[int, List[Node]] = {}
        slot_edge: Dict[Tuple[int, int], int] = {}
        slot_in: Dict[Tuple[int, int], bool] = {}
        components = []
        used = set()
        for cid in range(len(self.kinds)):
            for start_slot in (NE, NW):
                if (cid, start_slot) in used:
                    continue
                comp = []
                c, s = cid, start_slot
                while (c, s) not in used:
                    used.add((c, s))
                    e = len(edge_paths)
                    path = path_from(("x", c, s))
                    edge_paths[e] = path
                    _, c2, s2 = path[-1]
                    slot_edge[(c, s)] = e
                    slot_in[(c, s)] = False
                    slot_edge[(c2, s2)] = e
                    slot_in[(c2, s2)] = True
                    used.add((c2, s2))
                    comp.append(e)
                    c, s = c2, (s2 + 2) % 4
                components.append(tuple(comp))

        # crossingless loops made only of pins
        seen_pins = {n for p in edge_paths.values() for n in p if n[0] == "p"}
        loops = 0
        for node in adj:
            if node[0] != "p" or node in seen_pins:
                continue
            loops += 1
            stack = [node]
            while stack:
                u = stack.pop()
                if u in seen_pins:
                    continue
                seen_pins.add(u)
                stack.extend(adj[u])
        n_edges = len(edge_paths)
        for k in range(loops):
            components.append((n_edges + k,))

        crossings = []
        for cid, kind in enumerate(self.kinds):
            under = (NW, SE) if kind == 0 else (NE, SW)
            u_in = under[0] if slot_in[(cid, under[0])] else under[1]
            edges = tuple(slot_edge[(cid, (u_in + k) % 4)] for k in range(4))
            over = 1 if slot_in[(cid, (u_in + 1) % 4)] else 0
            crossings.append(Crossing(edges, over))

        node_edge = {n: e for e, p in edge_paths.items() for n in p[1:-1]}
        for e, p in edge_paths.items():
            node_edge.setdefault(p[0], e)
            node_edge.setdefault(p[-1], e)
        d = OrientedDiagram(tuple(crossings), tuple(components))
        return BuildResult(d, list(self.tags), edge_paths, node_edge)
