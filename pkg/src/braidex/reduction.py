"""Seifert circle reduction numbers for standard rational and Montesinos diagrams.

The reduction number ``r = r+ + r-`` counts the Seifert circles that can be
removed by rerouting strands at lone crossings, split by the sign of those
crossings.  Here it is pure bookkeeping over signed vectors: each block of
same-sign entries owns the circles its twists create and is charged its
share of the braid index formula, and the difference is that block's
reduction, credited to the block's sign.  The split is then checked against
the HOMFLY extremes with :func:`verify_base_equations`.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction as Q
from typing import List, Optional, Sequence, Tuple

from .diagram import OrientedDiagram, seifert_decompose, writhe
from .polynomial import Laurent2, a_extremes
from .rational import SignedVector, blocks

__all__ = [
    "BlockContribution",
    "ReductionReport",
    "BaseEquationReport",
    "cycle_reduction",
    "reduction_rational",
    "reduction_montesinos",
    "verify_base_equations",
]


def cycle_reduction(n: int, k: int) -> int:
    """Reduction available on a cycle of ``2n`` Seifert circles with ``k`` lone crossings."""
    if n < 2:
        raise ValueError(f"a cycle of Seifert circles has length 2n with n >= 2, got n={n}")
    if not 0 <= k <= 2 * n:
        raise ValueError(f"lone crossing count must lie in 0..{2 * n}, got {k}")
    return min(k, n - 1)


@dataclass(frozen=True)
class BlockContribution:
    source: str                # "block" or "structure"
    entries: Tuple[int, ...]   # the block (empty for structural terms)
    sign: int                  # +1 credits r_plus, -1 credits r_minus
    circles: Q
    charged: Q
    reduction: int
    owner: Optional[int] = None  # tangle index for Montesinos blocks


@dataclass
class ReductionReport:
    r_plus: int
    r_minus: int
    per_block: List[BlockContribution] = field(default_factory=list)

    @property
    def r_total(self) -> int:
        return self.r_plus + self.r_minus


def _vertical(i: int, b: int) -> bool:
    # entries whose twists each split off a fresh Seifert circle
    return (i % 2 == 1 and b < 0) or (i % 2 == 0 and b > 0)


def _block_terms(entries: Sequence[int], owner=None) -> List[BlockContribution]:
    """Per-block circle counts and formula charges for an odd-length signed vector."""
    out = []
    pos = 1
    n = len(entries)
    for blk in blocks(entries):
        circles = Q(0)
        charged = Q(0)
        for off, b in enumerate(blk):
            i = pos + off
            if _vertical(i, b):
                circles += abs(b) - 1
                charged += Q(abs(b), 2)
            else:
                circles += 1
            # each end of the vector carries its own sign term
            charged += Q(1 + (1 if b > 0 else -1), 4) * ((i == 1) + (i == n))
        red = circles - charged
        if red.denominator != 1 or red < 0:
            raise ValueError(f"block {blk} of {tuple(entries)} has reduction {red}")
        out.append(BlockContribution("block", blk, 1 if blk[0] > 0 else -1, circles, charged,
                                     int(red), owner))
        pos += len(blk)
    return out


def _collect(terms: List[BlockContribution]) -> ReductionReport:
    rp = sum(t.reduction for t in terms if t.sign > 0)
    rm = sum(t.reduction for t in terms if t.sign < 0)
    return ReductionReport(rp, rm, terms)


def reduction_rational(sv: SignedVector | Sequence[int]) -> ReductionReport:
    """Reduction numbers of a standard oriented 4-plat from its signed vector."""
    entries = sv.entries if isinstance(sv, SignedVector) else tuple(sv)
    if not entries or len(entries) % 2 == 0:
        raise ValueError("signed vector must have odd length")
    return _collect(_block_terms(entries))


def reduction_montesinos(orientation) -> ReductionReport:
    """Reduction numbers of one oriented Montesinos diagram.

    ``orientation`` is a :class:`~braidex.montesinos.MontesinosOrientation`.
    Each tangle is charged through the block accounting of its signed vector;
    a parity 1 tangle first absorbs the adjacent long strand into its leading
    entry.  Whatever the tangles leave over comes from the big circles and is
    credited to ``r+`` in class B and to ``r-`` otherwise.
    """
    from .montesinos import delta0

    terms: List[BlockContribution] = []
    inner_total = 0
    for j, t in enumerate(orientation.tangles):
        entries = list(t.signed.entries)
        if t.parity == 1:
            entries[0] -= 1
        tj = _block_terms(entries, owner=j)
        got = sum(x.reduction for x in tj)
        if got != t.inner_circles - t.delta:
            raise ValueError(f"tangle {j} accounting gives {got}, expected {t.inner_circles - t.delta}")
        terms.extend(tj)
        inner_total += t.inner_circles
    tag = orientation.tag
    e = orientation.twists
    if tag.cls == "M1":
        base, sign = Q(2), -1
    elif tag.cls == "M2":
        base, sign = Q(1), -1
    else:
        base, sign = Q(delta0(tag.eta, e)), 1
    outer = orientation.seifert_circles - inner_total
    red = outer - base
    if red.denominator != 1 or red < 0:
        raise ValueError(f"structural reduction {red} is not a nonnegative integer")
    terms.append(BlockContribution("structure", (), sign, Q(outer), base, int(red)))
    report = _collect(terms)
    if report.r_total != orientation.seifert_circles - orientation.braid_index:
        raise ValueError("reduction total differs from s - b")
    return report


@dataclass
class BaseEquationReport:
    s: int
    w: int
    E: int
    e: int
    r_plus: int
    r_minus: int
    top_ok: bool
    bottom_ok: bool

    @property
    def ok(self) -> bool:
        return self.top_ok and self.bottom_ok

    def to_json_obj(self) -> dict:
        return {"s": self.s, "w": self.w, "r_plus": self.r_plus, "r_minus": self.r_minus,
                "E": self.E, "e": self.e, "base_equations_hold": self.ok}


def verify_base_equations(d: OrientedDiagram, r_plus: int, r_minus: int,
                          poly: Optional[Laurent2] = None, engine=None) -> BaseEquationReport:
    """Check ``E = s - w - 1 - 2 r-`` and ``e = -s - w + 1 + 2 r+`` exactly."""
    if poly is None:
        from .homfly import homfly

        poly = homfly(d, engine=engine) if engine is None else engine.evaluate(d)
    x = a_extremes(poly)
    s = seifert_decompose(d).circle_count
    w = writhe(d)
    return BaseEquationReport(s, w, x.E, x.e, r_plus, r_minus,
                              x.E == s - w - 1 - 2 * r_minus,
                              x.e == -s - w + 1 + 2 * r_plus)
