"""Alternating Montesinos links: construction, Seifert parity, classes, formulas.

``M(b1/a1, ..., bk/ak, e)`` is drawn as the numerator closure of the tangle
sum ``A1 + A2 + ... + Ak + [e]`` where each ``Aj`` is the standard drawing of
the rational tangle ``bj/aj`` and ``[e]`` is a row of ``e`` horizontal
half-twists on the right.  The top long strand (the closing arc over the
top) is oriented right to left; every other component may go either way.

Everything the formulas need (entry signs, parities, the class) is read off
the oriented diagram rather than inferred from the fractions.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction as Q
from typing import Dict, List, Optional, Sequence, Tuple

from .diagram import DiagramError, OrientedDiagram, seifert_decompose, seifert_successor
from .rational import (
    STANDARD_KIND,
    Fraction,
    SignedVector,
    build_tangle,
    formula_sum,
    odd_continued_fraction,
)
from .tangle import Builder, BuildResult

__all__ = [
    "MontesinosPresentation",
    "TangleAnalysis",
    "ClassTag",
    "MontesinosOrientation",
    "MontesinosBuild",
    "normalize_presentation",
    "build_montesinos",
    "orientations",
    "seifert_parity",
    "classify",
    "delta",
    "delta0",
    "braid_index_from_parts",
    "analyze_orientation",
    "analyze_montesinos",
    "braid_index_montesinos",
]


@dataclass(frozen=True)
class MontesinosPresentation:
    tangles: Tuple[Fraction, ...]
    e: int = 0
    mirror_flag: bool = False

    def __post_init__(self):
        if len(self.tangles) < 2:
            raise ValueError("a Montesinos presentation needs at least two tangles")
        if self.e < 0:
            raise ValueError("the twist count e must be nonnegative in normal form")

    @classmethod
    def of(cls, fractions: Sequence[Tuple[int, int]], e: int = 0) -> "MontesinosPresentation":
        """From ``(beta, alpha)`` pairs."""
        return cls(tuple(Fraction(a, b) for b, a in fractions), e)

    @property
    def cfs(self) -> List[Tuple[int, ...]]:
        return [odd_continued_fraction(f) for f in self.tangles]

    @property
    def crossings(self) -> int:
        return self.e + sum(sum(cf) for cf in self.cfs)

    def __str__(self) -> str:
        inner = ",".join(str(f) for f in self.tangles)
        return f"M({inner},e={self.e})"


def normalize_presentation(fractions: Sequence[Q], e: int = 0) -> Tuple[MontesinosPresentation, List[str]]:
    """Bring arbitrary tangle fractions and twists into normal form.

    Integer parts are moved into ``e``, an all-negative family is mirrored,
    and mixed signs (a non-alternating input) are rejected.  Returns the
    presentation and human-readable notes about what was changed.
    """
    notes: List[str] = []
    vals = [Q(f) for f in fractions]
    if any(v == 0 for v in vals):
        raise ValueError("a zero tangle splits the diagram; not a Montesinos presentation")
    signs = {v > 0 for v in vals}
    if e:
        signs.add(e > 0)
    if len(signs) > 1:
        raise ValueError("fractions and twists of mixed sign do not give an alternating diagram")
    mirrored = False
    if signs == {False}:
        vals = [-v for v in vals]
        e = -e
        mirrored = True
        notes.append("all-negative input mirrored; the braid index is unchanged")
    tangles = []
    for v in vals:
        whole = math.floor(v)
        frac = v - whole
        if whole:
            e += whole
            notes.append(f"{v} split as {whole} twist(s) plus tangle {frac}")
        if frac:
            tangles.append(Fraction(frac.denominator, frac.numerator))
        else:
            notes.append(f"integer tangle {v} absorbed into e")
    if len(tangles) < 2:
        raise ValueError("fewer than two proper tangles remain; this is a two-bridge link")
    return MontesinosPresentation(tuple(tangles), e, mirrored), notes


# -- construction -----------------------------------------------------------


@dataclass
class MontesinosBuild:
    presentation: MontesinosPresentation
    cfs: List[Tuple[int, ...]]
    result: BuildResult
    ports: List[Dict[str, tuple]]       # per tangle: port -> node inside the tangle
    partners: List[Dict[str, tuple]]    # per tangle: port -> node just outside
    top: Tuple[tuple, tuple]            # (right end, left end) of the top closing arc
    bottom: Tuple[tuple, tuple]

    @property
    def diagram(self) -> OrientedDiagram:
        return self.result.diagram


def build_montesinos(p: MontesinosPresentation) -> MontesinosBuild:
    b = Builder()
    cfs = p.cfs
    tangles = [build_tangle(b, cf, STANDARD_KIND, tag=j) for j, cf in enumerate(cfs)]
    ports = [dict(t) for t in tangles]
    parts = list(tangles)
    if p.e:
        et = b.zero_tangle()
        b.twist_right(et, p.e, STANDARD_KIND, "e")
        parts.append(et)
    partners: List[Dict[str, tuple]] = [dict() for _ in tangles]
    for j in range(len(parts)):
        right = parts[(j + 1) % len(parts)]
        left = parts[j - 1]
        if j < len(tangles):
            partners[j]["NE"] = right["NW"] if j + 1 < len(parts) else parts[0]["NW"]
            partners[j]["SE"] = right["SW"] if j + 1 < len(parts) else parts[0]["SW"]
            partners[j]["NW"] = left["NE"] if j > 0 else parts[-1]["NE"]
            partners[j]["SW"] = left["SE"] if j > 0 else parts[-1]["SE"]
    # numerator closure: top arc joins the far right NE to the far left NW
    top = (parts[-1]["NE"], parts[0]["NW"])
    bottom = (parts[-1]["SE"], parts[0]["SW"])
    acc = parts[0]
    for t in parts[1:]:
        acc = b.add(acc, t)
    b.numerator(acc)
    return MontesinosBuild(p, cfs, b.finish(), ports, partners, top, bottom)


def orientations(mb: MontesinosBuild) -> List[Tuple[int, ...]]:
    """All orientation flag tuples with the top long strand running right to left."""
    d = mb.diagram
    comp_of = d.edge_component()
    right, left = mb.top
    top_comp = comp_of[mb.result.node_edge[left]]
    top_flag = mb.result.flow(right, left)
    others = [i for i in range(d.num_components) if i != top_comp]
    out = []
    for bits in range(1 << len(others)):
        flags = [1] * d.num_components
        flags[top_comp] = top_flag
        for k, i in enumerate(others):
            flags[i] = -1 if bits >> k & 1 else 1
        out.append(tuple(flags))
    return out


# -- Seifert parity and classes --------------------------------------------


@dataclass
class TangleAnalysis:
    fraction: Fraction
    cf: Tuple[int, ...]
    signed: SignedVector
    parity: int
    delta: Q
    pattern: Dict[str, str] = field(default_factory=dict)  # entering port -> leaving port
    inner_circles: int = 0


@dataclass
class ClassTag:
    cls: str            # "M1" | "M2" | "B"
    eta: int
    omega2: Tuple[int, ...]
    omega3: Tuple[int, ...]


def _edge_flow(mb: MontesinosBuild, flags, outer, inner) -> int:
    """+1 if the oriented strand runs from ``outer`` into ``inner``."""
    e = mb.result.node_edge[inner]
    comp = mb.diagram.edge_component()[e]
    return mb.result.flow(outer, inner) * flags[comp]


def _crossing_owner(mb: MontesinosBuild) -> List[object]:
    owner = []
    for t in mb.result.tags:
        owner.append(t[0] if isinstance(t, tuple) else t)
    return owner


def _trace_context(mb: MontesinosBuild, flags):
    d = mb.diagram.with_orientations(flags)
    xs = d.oriented_crossings()
    head = {}
    for i, (a, b, c, dd, s) in enumerate(xs):
        head[a] = i
        head[dd if s > 0 else b] = i
    return d, xs, head, seifert_successor(xs), _crossing_owner(mb)


def seifert_parity(mb: MontesinosBuild, flags, j: int, _ctx=None) -> Tuple[int, Dict[str, str]]:
    """Parity of tangle ``j`` from how Seifert arcs pass through its ports."""
    d, xs, head, succ, owner = _ctx or _trace_context(mb, flags)
    port_edge = {}
    entering = []
    for name, node in mb.ports[j].items():
        port_edge[mb.result.node_edge[node]] = name
        if _edge_flow(mb, flags, mb.partners[j][name], node) > 0:
            entering.append(name)
    if len(entering) != 2:
        raise DiagramError("a tangle must have two entering and two leaving ends")
    pattern = {}
    for name in entering:
        e = mb.result.node_edge[mb.ports[j][name]]
        guard = 0
        while True:
            e = succ[e]
            if owner[head[e]] != j:
                break
            guard += 1
            if guard > len(xs) * 4:
                raise DiagramError("Seifert arc trace did not leave the tangle")
        if e not in port_edge:
            raise DiagramError("Seifert arc left the tangle away from a port")
        pattern[name] = port_edge[e]
    pairs = {frozenset(x) for x in pattern.items()}
    horizontal = {frozenset(("NW", "NE")), frozenset(("SW", "SE"))}
    vertical = {frozenset(("NW", "SW")), frozenset(("NE", "SE"))}
    if pairs == horizontal:
        # the arcs through a tangle run against the closing long strands, so
        # left-to-right here means the matching long strand runs right to left
        top_lr = pattern.get("NW") == "NE"
        bottom_lr = pattern.get("SW") == "SE"
        if top_lr and bottom_lr:
            return 1, pattern
        if top_lr != bottom_lr:
            return 2, pattern
        raise DiagramError(f"tangle {j}: both boundary arcs run right to left")
    if pairs == vertical:
        left_down = pattern.get("NW") == "SW"
        right_down = pattern.get("NE") == "SE"
        if left_down == right_down:
            return 3, pattern
        raise DiagramError(f"tangle {j}: vertical boundary arcs are antiparallel")
    raise DiagramError(f"tangle {j}: boundary arcs cross over")


def delta(parity: int, sv: SignedVector | Sequence[int]) -> Q:
    entries = sv.entries if isinstance(sv, SignedVector) else tuple(sv)
    if parity not in (1, 2, 3):
        raise ValueError(f"parity must be 1, 2 or 3, got {parity}")
    if (parity == 3) != (entries[0] > 0):
        raise ValueError(f"parity {parity} is inconsistent with leading entry {entries[0]}")
    last = 1 if entries[-1] > 0 else -1
    anchor = 1 if parity == 2 else -1
    return Q(anchor + last, 4) + formula_sum(entries)


def delta0(eta: int, e: int) -> int:
    n = eta + e
    if n % 2 or n < 2:
        raise ValueError(f"eta + e must be even and at least 2, got {n}")
    return n - min(n // 2 - 1, e)


def classify(parities: Sequence[int], e: int, e_sign: Optional[int] = None) -> ClassTag:
    """Class from tangle parities; ``e_sign`` is the sign of the twist crossings if any."""
    ps = list(parities)
    omega2 = tuple(j for j, p in enumerate(ps) if p == 2)
    omega3 = tuple(j for j, p in enumerate(ps) if p == 3)
    eta = len(omega3)
    if 1 in ps and 3 in ps:
        raise ValueError("parity 1 and parity 3 tangles cannot coexist")
    if 1 in ps or (e and e_sign is not None and e_sign < 0):
        if any(p != 1 for p in ps):
            raise ValueError("class M1 needs every tangle of parity 1")
        if e and e_sign is not None and e_sign > 0:
            raise ValueError("class M1 twists must be negative")
        return ClassTag("M1", 0, omega2, omega3)
    if eta or e:
        # with twists present and no parity 1 tangle the long strands share a
        # Seifert circle, even when no tangle has parity 3
        if e and e_sign is not None and e_sign < 0:
            raise ValueError("class B twists must be positive")
        if (eta + e) % 2:
            raise ValueError("class B needs eta + e even")
        return ClassTag("B", eta, omega2, omega3)
    return ClassTag("M2", 0, omega2, omega3)


def braid_index_from_parts(tag: ClassTag, analyses: Sequence[TangleAnalysis], e: int) -> Q:
    if tag.cls == "M1":
        return 2 + sum((a.delta for a in analyses), Q(0))
    if tag.cls == "M2":
        return 1 + sum((a.delta for a in analyses), Q(0))
    return delta0(tag.eta, e) + sum((a.delta for a in analyses), Q(0))


# -- per-orientation analysis -----------------------------------------------


@dataclass
class MontesinosOrientation:
    flags: Tuple[int, ...]
    diagram: OrientedDiagram
    tangles: List[TangleAnalysis]
    tag: ClassTag
    diagram_class: str
    e_sign: Optional[int]
    braid_index: int
    seifert_circles: int
    twists: int = 0

    @property
    def label(self) -> str:
        return "".join("+" if f > 0 else "-" for f in self.flags)


def _diagram_class(mb: MontesinosBuild, flags) -> str:
    """Class from the long strands: same Seifert circle, or their directions."""
    d = mb.diagram.with_orientations(flags)
    sd = seifert_decompose(d)
    circle_of = {e: i for i, c in enumerate(sd.circles) for e in c}
    top_edge = mb.result.node_edge[mb.top[1]]
    bottom_edge = mb.result.node_edge[mb.bottom[1]]
    if circle_of[top_edge] == circle_of[bottom_edge]:
        return "B"
    rl = _edge_flow(mb, flags, mb.bottom[0], mb.bottom[1]) > 0
    return "M1" if rl else "M2"


def analyze_orientation(mb: MontesinosBuild, flags) -> MontesinosOrientation:
    from .rational import signed_vector

    d = mb.diagram.with_orientations(flags)
    p = mb.presentation
    tags = mb.result.tags
    signs = d.signs()
    e_signs = {s for s, t in zip(signs, tags) if t == "e"}
    if len(e_signs) > 1:
        raise DiagramError("twist crossings of mixed sign")
    e_sign = e_signs.pop() if e_signs else None
    sd = seifert_decompose(d)
    ctx = _trace_context(mb, flags)
    owner = ctx[4]
    head_owner = {e: owner[i] for e, i in ctx[2].items()}
    analyses = []
    for j, (f, cf) in enumerate(zip(p.tangles, mb.cfs)):
        sv = signed_vector(d, tags, cf, tag=j)
        parity, pattern = seifert_parity(mb, flags, j, ctx)
        inner = sum(1 for c in sd.circles if all(head_owner.get(e) == j for e in c))
        analyses.append(TangleAnalysis(f, cf, sv, parity, delta(parity, sv), pattern, inner))
    tag = classify([a.parity for a in analyses], p.e, e_sign)
    dclass = _diagram_class(mb, flags)
    if dclass != tag.cls:
        raise DiagramError(f"class from parities {tag.cls} differs from the long-strand class {dclass}")
    b = braid_index_from_parts(tag, analyses, p.e)
    if b.denominator != 1:
        raise ValueError(f"non-integer braid index {b} for {p}")
    return MontesinosOrientation(tuple(flags), d, analyses, tag, dclass, e_sign, int(b), sd.circle_count, p.e)


@dataclass
class MontesinosAnalysis:
    build: MontesinosBuild
    orientations: List[MontesinosOrientation]

    @property
    def presentation(self) -> MontesinosPresentation:
        return self.build.presentation

    @property
    def braid_index(self) -> int:
        """Minimum over orientations: the braid index of the unoriented link."""
        return min(o.braid_index for o in self.orientations)


def analyze_montesinos(p: MontesinosPresentation, which: Optional[int] = None) -> MontesinosAnalysis:
    mb = build_montesinos(p)
    flag_list = orientations(mb)
    if which is not None:
        if not 0 <= which < len(flag_list):
            raise ValueError(f"orientation index {which} out of range 0..{len(flag_list) - 1}")
        flag_list = [flag_list[which]]
    return MontesinosAnalysis(mb, [analyze_orientation(mb, f) for f in flag_list])


def braid_index_montesinos(p: MontesinosPresentation, which: int = 0) -> int:
    """Braid index of the oriented link for orientation index ``which``."""
    return analyze_montesinos(p, which).orientations[0].braid_index
