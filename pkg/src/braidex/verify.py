"""Enumeration of small rational and Montesinos links and formula-vs-oracle checks.

Each oriented diagram yields one :class:`VerificationRecord` comparing the
braid index formula against ``(E - e)/2 + 1`` from the HOMFLY engine, the
Seifert circle count minus the reduction number, the Morton bounds and the
base equations.  Reports are JSON lines in enumeration order, so they are
byte-identical for any worker count.
"""

from __future__ import annotations

import json
import os
import time
from concurrent.futures import ThreadPoolExecutor
from dataclasses import asdict, dataclass
from pathlib import Path
from typing import Callable, Iterator, List, Optional, Sequence, Tuple

from .diagram import OrientedDiagram, seifert_decompose, seifert_graph, writhe
from .homfly import DEFAULT_CAP, SkeinEngine, homfly, morton_bounds_check, mwf_lower_bound
from .montesinos import MontesinosPresentation, analyze_montesinos
from .polynomial import a_extremes
from .rational import Fraction, analyze_rational, cf_value
from .reduction import reduction_montesinos, reduction_rational

__all__ = [
    "VerificationRecord",
    "odd_compositions",
    "enumerate_rational",
    "enumerate_montesinos",
    "cross_check",
    "check_rational",
    "check_montesinos",
    "run_verification",
    "write_report",
    "dump_disagreement",
    "worker_count",
]

THREADS_ENV = "BRAIDEX_THREADS"


@dataclass
class VerificationRecord:
    family: str
    presentation: str
    orientation_choice: str
    crossings: int
    s: int
    w: int
    formula_b: int
    r_plus: int
    r_minus: int
    lone_crossings: int = 0
    status: str = "checked"            # or "formula-only" above the oracle cap
    homfly_E: Optional[int] = None
    homfly_e: Optional[int] = None
    mwf_b: Optional[int] = None
    morton_ok: Optional[bool] = None
    base_equations_hold: Optional[bool] = None
    agree: Optional[bool] = None
    runtime_ms: Optional[float] = None

    def to_json(self) -> str:
        return json.dumps(asdict(self), sort_keys=True)


# -- enumeration ------------------------------------------------------------


def odd_compositions(m: int) -> Iterator[Tuple[int, ...]]:
    """Odd-length compositions of ``m`` in lexicographic order."""
    def rec(rem, cur):
        if rem == 0:
            if len(cur) % 2:
                yield tuple(cur)
            return
        for a in range(1, rem + 1):
            cur.append(a)
            yield from rec(rem - a, cur)
            cur.pop()

    yield from rec(m, [])


def _fractions_with_crossings(m: int) -> List[Fraction]:
    out = []
    for cf in odd_compositions(m):
        v = cf_value(cf)
        if v < 1:
            out.append(Fraction(v.denominator, v.numerator))
    return sorted(out, key=lambda f: (f.alpha, f.beta))


def enumerate_rational(max_crossings: int) -> Iterator[Fraction]:
    """All ``beta/alpha`` whose standard 4-plat has at most ``max_crossings`` crossings.

    Distinct odd compositions give distinct fractions, so nothing repeats.
    """
    if max_crossings < 2:
        raise ValueError("max_crossings must be at least 2")
    for m in range(2, max_crossings + 1):
        yield from _fractions_with_crossings(m)


def enumerate_montesinos(max_crossings: int, max_tangles: int = 4,
                         min_tangles: int = 2) -> Iterator[MontesinosPresentation]:
    """Presentations ordered by (crossings, k, fraction list, e)."""
    if max_crossings < 4 or max_tangles < 2:
        raise ValueError("need max_crossings >= 4 and max_tangles >= 2")
    by_size = {m: _fractions_with_crossings(m) for m in range(2, max_crossings + 1)}

    def tuples(k, budget):
        if k == 0:
            yield (), 0
            return
        for m in range(2, budget - 2 * (k - 1) + 1):
            for f in by_size[m]:
                for rest, used in tuples(k - 1, budget - m):
                    yield (f,) + rest, m + used

    items = []
    for k in range(min_tangles, max_tangles + 1):
        for fs, used in tuples(k, max_crossings):
            for e in range(0, max_crossings - used + 1):
                key = (used + e, k, tuple((f.alpha, f.beta) for f in fs), e)
                items.append((key, fs, e))
    items.sort(key=lambda t: t[0])
    for _, fs, e in items:
        yield MontesinosPresentation(fs, e)


# -- checks -----------------------------------------------------------------


def cross_check(family: str, presentation: str, choice: str, d: OrientedDiagram, formula_b: int,
                s: int, r_plus: int, r_minus: int, engine: SkeinEngine,
                timings: bool = False) -> VerificationRecord:
    t0 = time.perf_counter()
    sg = seifert_graph(seifert_decompose(d))
    lone = sum(1 for m, _ in sg.multiedges.values() if m == 1)
    rec = VerificationRecord(family, presentation, choice, d.num_crossings, s, writhe(d),
                             formula_b, r_plus, r_minus, lone)
    if d.num_crossings <= engine.cap:
        poly = engine.evaluate(d)
        ext = a_extremes(poly)
        rec.homfly_E, rec.homfly_e = ext.E, ext.e
        rec.mwf_b = mwf_lower_bound(poly)
        rec.morton_ok = morton_bounds_check(d, poly, ext).ok
        rec.base_equations_hold = (ext.E == rec.s - rec.w - 1 - 2 * r_minus
                                   and ext.e == -rec.s - rec.w + 1 + 2 * r_plus)
        rec.agree = formula_b == rec.mwf_b == s - (r_plus + r_minus)
    else:
        rec.status = "formula-only"
    if timings:
        rec.runtime_ms = round((time.perf_counter() - t0) * 1000, 3)
    return rec


def _failed(rec: VerificationRecord) -> bool:
    return rec.status == "checked" and not (rec.agree and rec.morton_ok and rec.base_equations_hold)


def check_rational(f: Fraction, engine: SkeinEngine, timings: bool = False,
                   on_failure: Optional[Callable] = None) -> List[VerificationRecord]:
    a = analyze_rational(f.alpha, f.beta)
    out = []
    for o in a.orientations:
        r = reduction_rational(o.signed)
        rec = cross_check("rational", str(f), o.choice, o.diagram, o.braid_index,
                          o.seifert_circles, r.r_plus, r.r_minus, engine, timings)
        if on_failure and _failed(rec):
            on_failure(rec, o.diagram)
        out.append(rec)
    return out


def check_montesinos(p: MontesinosPresentation, engine: SkeinEngine, timings: bool = False,
                     on_failure: Optional[Callable] = None) -> List[VerificationRecord]:
    a = analyze_montesinos(p)
    out = []
    for o in a.orientations:
        r = reduction_montesinos(o)
        rec = cross_check("montesinos", str(p), o.label, o.diagram, o.braid_index,
                          o.seifert_circles, r.r_plus, r.r_minus, engine, timings)
        if on_failure and _failed(rec):
            on_failure(rec, o.diagram)
        out.append(rec)
    return out


def worker_count(threads: Optional[int] = None) -> int:
    if threads is None:
        threads = int(os.environ.get(THREADS_ENV, "1") or 1)
    return max(1, threads)


def run_verification(family: str, max_crossings: int, cap: int = DEFAULT_CAP, threads: Optional[int] = None,
                     max_tangles: int = 4, timings: bool = False,
                     engine: Optional[SkeinEngine] = None,
                     on_failure: Optional[Callable] = None) -> List[VerificationRecord]:
    """Check every enumerated diagram of a family; records come back in enumeration order.

    ``on_failure(record, diagram)`` is called for every in-cap record whose
    checks do not all pass.
    """
    engine = engine or SkeinEngine(cap=cap)
    if family == "rational":
        items, check = list(enumerate_rational(max_crossings)), check_rational
    elif family == "montesinos":
        items, check = list(enumerate_montesinos(max_crossings, max_tangles)), check_montesinos
    else:
        raise ValueError(f"unknown family {family!r}")
    n = worker_count(threads)
    if n == 1:
        chunks = [check(x, engine, timings, on_failure) for x in items]
    else:
        with ThreadPoolExecutor(max_workers=n) as pool:
            chunks = list(pool.map(lambda x: check(x, engine, timings, on_failure), items))
    return [r for chunk in chunks for r in chunk]


def write_report(records: Sequence[VerificationRecord], path) -> None:
    with open(path, "w", encoding="utf-8") as fh:
        for r in records:
            fh.write(r.to_json() + "\n")


class _TraceFull(Exception):
    pass


def dump_disagreement(rec: VerificationRecord, d: OrientedDiagram, directory, max_lines: int = 200_000) -> Path:
    """Write the PD code and resolving-tree trace of a failing diagram; returns the PD path."""
    directory = Path(directory)
    directory.mkdir(parents=True, exist_ok=True)
    stem = "".join(ch if ch.isalnum() else "_" for ch in f"{rec.presentation}_{rec.orientation_choice}")
    pd_path = directory / f"{stem}.pd.json"
    pd_path.write_text(d.to_json() + "\n", encoding="utf-8")
    with open(directory / f"{stem}.trace.jsonl", "w", encoding="utf-8") as fh:
        count = 0

        def emit(node):
            nonlocal count
            if count >= max_lines:
                raise _TraceFull
            fh.write(json.dumps(node, sort_keys=True) + "\n")
            count += 1

        try:
            homfly(d, cap=max(d.num_crossings, DEFAULT_CAP), trace=emit)
        except _TraceFull:
            fh.write(json.dumps({"truncated_after": max_lines}) + "\n")
    return pd_path
