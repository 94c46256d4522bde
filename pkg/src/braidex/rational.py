"""Two-bridge links: odd continued fractions, standard 4-plats, signed vectors.

The standard 4-plat of ``b(alpha, beta)`` is the denominator closure of the
rational tangle built from the odd-length positive continued fraction of
``beta/alpha``: the tangle starts from two vertical arcs, and entries are
applied innermost first, odd positions as vertical twists at the bottom and
even positions as horizontal twists on the left.  Crossings carry the entry
index as their tag, so signs per entry are read straight off the diagram.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction as Q
from typing import List, Optional, Sequence, Tuple

from .diagram import DiagramError, OrientedDiagram, mirror, seifert_decompose
from .tangle import Builder, BuildResult, Tangle

__all__ = [
    "Fraction",
    "SignedVector",
    "odd_continued_fraction",
    "cf_value",
    "build_tangle",
    "build_4plat",
    "orient_4plat",
    "orientation_choices",
    "signed_vector",
    "blocks",
    "braid_index_rational",
    "formula_sum",
    "RationalOrientation",
    "analyze_rational",
]

STANDARD_KIND = 0  # crossing kind that reproduces the standard (not mirrored) drawing


@dataclass(frozen=True)
class Fraction:
    """``beta/alpha`` with ``0 < beta < alpha`` coprime."""

    alpha: int
    beta: int

    def __post_init__(self):
        if not (0 < self.beta < self.alpha):
            raise ValueError(f"need 0 < beta < alpha, got {self.beta}/{self.alpha}")
        if math.gcd(self.alpha, self.beta) != 1:
            raise ValueError(f"{self.beta}/{self.alpha} is not in lowest terms")

    def __str__(self) -> str:
        return f"{self.beta}/{self.alpha}"


def odd_continued_fraction(f: Fraction) -> Tuple[int, ...]:
    """Unique all-positive odd-length expansion ``beta/alpha = 1/(a1 + 1/(a2 + ...))``."""
    num, den = f.alpha, f.beta  # expand alpha/beta = a1 + ...
    entries = []
    while den:
        q, r = divmod(num, den)
        entries.append(q)
        num, den = den, r
    if len(entries) % 2 == 0:
        if entries[-1] >= 2:
            entries[-1] -= 1
            entries.append(1)
        else:
            entries.pop()
            entries[-1] += 1
    return tuple(entries)


def cf_value(entries: Sequence[int]) -> Q:
    """``1/(a1 + 1/(a2 + ... + 1/an))`` as an exact rational."""
    val = Q(0)
    for a in reversed(entries):
        val = 1 / (a + val)
    return val


# -- construction -----------------------------------------------------------


def build_tangle(b: Builder, cf: Sequence[int], kind: int = STANDARD_KIND, tag=None) -> Tangle:
    """Standard drawing of the rational tangle with vector ``cf``.

    Crossings are tagged ``(tag, i)`` with ``i`` the 1-based entry index, or
    just ``i`` when ``tag`` is None.
    """
    if not cf or len(cf) % 2 == 0 or any(a < 1 for a in cf):
        raise ValueError(f"not an odd-length positive vector: {tuple(cf)}")
    t = b.infinity_tangle()
    for i in range(len(cf), 0, -1):
        label = i if tag is None else (tag, i)
        if i % 2:
            b.twist_bottom(t, cf[i - 1], kind, label)
        else:
            b.twist_left(t, cf[i - 1], kind, label)
    return t


def build_4plat(cf: Sequence[int], mirrored: bool = False) -> BuildResult:
    """Standard 4-plat of the vector ``cf`` (or its mirror image)."""
    b = Builder()
    t = build_tangle(b, cf, 1 - STANDARD_KIND if mirrored else STANDARD_KIND)
    b.denominator(t)
    return b.finish()


@dataclass(frozen=True)
class SignedVector:
    entries: Tuple[int, ...]
    choice: str = "A"

    def __post_init__(self):
        if not self.entries or any(b == 0 for b in self.entries):
            raise ValueError("signed vector entries must be nonzero")

    @property
    def blocks(self) -> List[Tuple[int, ...]]:
        return blocks(self.entries)

    def negated(self) -> "SignedVector":
        return SignedVector(tuple(-b for b in self.entries), self.choice)


def blocks(entries: Sequence[int]) -> List[Tuple[int, ...]]:
    """Maximal runs of same-sign entries."""
    out: List[List[int]] = []
    for b in entries:
        if out and (out[-1][-1] > 0) == (b > 0):
            out[-1].append(b)
        else:
            out.append([b])
    return [tuple(x) for x in out]


def signed_vector(d: OrientedDiagram, tags: Sequence, cf: Sequence[int], choice: str = "A",
                  tag=None) -> SignedVector:
    """Read entry signs off an oriented diagram built by :func:`build_tangle`."""
    signs = d.signs()
    per_entry: List[set] = [set() for _ in cf]
    for s, t in zip(signs, tags):
        if tag is None and isinstance(t, int):
            per_entry[t - 1].add(s)
        elif tag is not None and isinstance(t, tuple) and t[0] == tag:
            per_entry[t[1] - 1].add(s)
    out = []
    for i, (a, ss) in enumerate(zip(cf, per_entry)):
        if len(ss) != 1:
            raise DiagramError(f"entry {i + 1} has crossings of mixed or missing sign")
        out.append(a * ss.pop())
    return SignedVector(tuple(out), choice)


def _sv_for(result: BuildResult, cf, flags) -> Tuple[int, ...]:
    d = result.diagram.with_orientations(flags)
    return signed_vector(d, result.tags, cf).entries


def orientation_choices(result: BuildResult, cf: Sequence[int]) -> List[Tuple[str, OrientedDiagram]]:
    """Labelled orientations of a built 4-plat.

    A knot has the single choice ``"A"``.  For a two-component link the
    choices differ by reversing one component; ``"A"`` is the one in which
    the first entry whose sign depends on the choice is negative.
    """
    d = result.diagram
    if d.num_components == 1:
        return [("A", d.with_orientations((1,)))]
    if d.num_components != 2:
        raise DiagramError("a 4-plat closes to a knot or a two-component link")
    f1, f2 = (1, 1), (1, -1)
    v1, v2 = _sv_for(result, cf, f1), _sv_for(result, cf, f2)
    for x, y in zip(v1, v2):
        if x != y:
            if x > 0:
                f1, f2 = f2, f1
            break
    return [("A", d.with_orientations(f1)), ("B", d.with_orientations(f2))]


def orient_4plat(result: BuildResult, cf: Sequence[int], choice: str = "A") -> OrientedDiagram:
    choices = dict(orientation_choices(result, cf))
    if choice not in choices:
        raise ValueError(f"orientation choice {choice!r} not available (have {sorted(choices)})")
    return choices[choice]


# -- braid index formulas ---------------------------------------------------


def _sign(x: int) -> int:
    return 1 if x > 0 else -1


def formula_sum(entries: Sequence[int]) -> Q:
    """Half the even-position positive entries plus half the odd-position negative ones."""
    total = Q(0)
    for i, b in enumerate(entries, start=1):
        if (i % 2 == 0 and b > 0) or (i % 2 == 1 and b < 0):
            total += Q(abs(b), 2)
    return total


def braid_index_rational(sv: SignedVector | Sequence[int], form: str = "standard") -> int:
    """Braid index from the signed vector of a standard 4-plat or of its mirror drawing."""
    entries = sv.entries if isinstance(sv, SignedVector) else tuple(sv)
    if not entries or len(entries) % 2 == 0:
        raise ValueError("signed vector must have odd length")
    if form == "standard":
        val = 1 + Q(2 + _sign(entries[0]) + _sign(entries[-1]), 4) + formula_sum(entries)
    elif form == "mirror":
        val = 1 + Q(2 - _sign(entries[0]) - _sign(entries[-1]), 4) + formula_sum([-b for b in entries])
    else:
        raise ValueError(f"unknown form {form!r}")
    if val.denominator != 1:
        raise ValueError(f"signed vector {entries} gives non-integer value {val}")
    return int(val)


# -- one-stop analysis ------------------------------------------------------


@dataclass
class RationalOrientation:
    choice: str
    diagram: OrientedDiagram
    signed: SignedVector
    braid_index: int
    seifert_circles: int


@dataclass
class RationalAnalysis:
    fraction: Fraction
    cf: Tuple[int, ...]
    build: BuildResult
    orientations: List[RationalOrientation] = field(default_factory=list)

    @property
    def crossings(self) -> int:
        return sum(self.cf)

    @property
    def components(self) -> int:
        return self.build.diagram.num_components


def analyze_rational(alpha: int, beta: int) -> RationalAnalysis:
    f = Fraction(alpha, beta)
    cf = odd_continued_fraction(f)
    res = build_4plat(cf)
    out = RationalAnalysis(f, cf, res)
    for label, d in orientation_choices(res, cf):
        sv = signed_vector(d, res.tags, cf, label)
        out.orientations.append(RationalOrientation(
            label, d, sv, braid_index_rational(sv), seifert_decompose(d).circle_count))
    return out


def mirrored_orientation(o: RationalOrientation, result: BuildResult, cf) -> Tuple[OrientedDiagram, SignedVector]:
    """Mirror drawing of an oriented 4-plat together with its (negated) signed vector."""
    d = mirror(o.diagram)
    return d, signed_vector(d, result.tags, cf, o.choice)
