"""Command-line front end: ``braidex rational|montesinos|homfly|verify``.

Exit status is 0 on success, 1 on usage or input errors and 2 when a
verification finds a disagreement between a formula and the HOMFLY oracle.
"""

from __future__ import annotations

import argparse
import json
import math
import re
import sys
import time
from fractions import Fraction as Q
from pathlib import Path
from typing import List, Optional, Sequence

from .diagram import DiagramError, OrientedDiagram, seifert_decompose, writhe
from .homfly import DEFAULT_CAP, CrossingCapExceeded, SkeinEngine, morton_bounds_check, mwf_lower_bound
from .montesinos import analyze_montesinos, delta0, normalize_presentation
from .polynomial import a_extremes
from .rational import Fraction, analyze_rational, blocks
from .reduction import reduction_montesinos, reduction_rational, verify_base_equations
from .verify import dump_disagreement, run_verification, worker_count, write_report

EXIT_OK, EXIT_USAGE, EXIT_DISAGREE = 0, 1, 2


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(message)


def build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="braidex", description="Braid indices of two-bridge and alternating Montesinos links.")
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)

    def common(sp, cap=True):
        sp.add_argument("--json", action="store_true", help="emit JSON on stdout")
        sp.add_argument("--timings", action="store_true", help="include wall-clock timings in the output")
        if cap:
            sp.add_argument("--cap", type=int, default=DEFAULT_CAP,
                            help=f"HOMFLY crossing cap (default {DEFAULT_CAP})")

    r = sub.add_parser("rational", help="two-bridge link b(alpha, beta)")
    r.add_argument("fraction", help="alpha/beta, e.g. 17426/4117")
    r.add_argument("--orientation", default="all", help="A, B or all (default all)")
    r.add_argument("--verify", action="store_true", help="cross-check against the HOMFLY oracle")
    common(r)

    m = sub.add_parser("montesinos", help="Montesinos link M(b1/a1,...,bk/ak,e)")
    m.add_argument("presentation", help="b1/a1,b2/a2,...,e=n (a trailing bare integer also counts as e)")
    m.add_argument("--orientation", default="all", help="all or an orientation index (default all)")
    m.add_argument("--verify", action="store_true", help="cross-check against the HOMFLY oracle")
    common(m)

    h = sub.add_parser("homfly", help="HOMFLY polynomial of a PD-code JSON file")
    h.add_argument("--pd", required=True, help="path to a PD-code JSON file")
    common(h)

    v = sub.add_parser("verify", help="enumerate a family and cross-check every diagram")
    v.add_argument("--family", required=True, choices=["rational", "montesinos"])
    v.add_argument("--max-crossings", type=int, required=True)
    v.add_argument("--max-tangles", type=int, default=4)
    v.add_argument("--out", required=True, help="JSON-lines report path")
    v.add_argument("--threads", type=int, default=None, help="worker count (default from BRAIDEX_THREADS or 1)")
    common(v)
    return p


# -- input parsing ------------------------------------------------------------


def parse_rational(text: str, notes: List[str]) -> Fraction:
    m = re.fullmatch(r"\s*(\d+)\s*/\s*(\d+)\s*", text)
    if not m:
        raise UsageError(f"malformed fraction {text!r}; expected alpha/beta")
    alpha, beta = int(m.group(1)), int(m.group(2))
    if alpha < 2 or beta == 0:
        raise UsageError(f"need alpha >= 2 and beta > 0, got {alpha}/{beta}")
    if math.gcd(alpha, beta) != 1:
        raise UsageError(f"{alpha}/{beta} is not coprime")
    if beta >= alpha:
        notes.append(f"beta reduced mod alpha: b({alpha},{beta}) = b({alpha},{beta % alpha})")
        beta %= alpha
    return Fraction(alpha, beta)


def parse_montesinos(text: str):
    body = text.strip()
    if body.startswith("M(") and body.endswith(")"):
        body = body[2:-1]
    parts = [x.strip() for x in body.split(",") if x.strip()]
    if not parts:
        raise UsageError("empty Montesinos presentation")
    e = 0
    fracs: List[Q] = []
    for i, part in enumerate(parts):
        em = re.fullmatch(r"e\s*=\s*(-?\d+)", part)
        if em:
            e += int(em.group(1))
            continue
        if re.fullmatch(r"-?\d+", part) and i == len(parts) - 1:
            e += int(part)
            continue
        fm = re.fullmatch(r"(-?\d+)\s*/\s*(-?\d+)", part)
        if not fm:
            raise UsageError(f"malformed tangle fraction {part!r}")
        num, den = int(fm.group(1)), int(fm.group(2))
        if den == 0:
            raise UsageError(f"zero denominator in {part!r}")
        if math.gcd(num, den) != 1:
            raise UsageError(f"{part} is not in lowest terms")
        fracs.append(Q(num, den))
    try:
        return normalize_presentation(fracs, e)
    except ValueError as exc:
        raise UsageError(str(exc)) from None


# -- commands -----------------------------------------------------------------


def _warn_cap(cap: int) -> None:
    if cap > DEFAULT_CAP:
        print(f"warning: crossing cap {cap} is above {DEFAULT_CAP}; HOMFLY evaluation may take many minutes",
              file=sys.stderr)


def _oracle(d: OrientedDiagram, formula_b: int, r_plus: int, r_minus: int, engine: SkeinEngine) -> dict:
    s = seifert_decompose(d).circle_count
    out = {"s": s, "w": writhe(d), "r_plus": r_plus, "r_minus": r_minus}
    if d.num_crossings > engine.cap:
        out.update(status="formula-only", homfly_E=None, homfly_e=None, mwf=None,
                   morton_ok=None, base_equations_hold=None, agree=None)
        return out
    poly = engine.evaluate(d)
    ext = a_extremes(poly)
    mwf = mwf_lower_bound(poly)
    base = verify_base_equations(d, r_plus, r_minus, poly=poly)
    out.update(status="checked", homfly_E=ext.E, homfly_e=ext.e, mwf=mwf,
               morton_ok=morton_bounds_check(d, poly, ext).ok,
               base_equations_hold=base.ok,
               agree=formula_b == mwf == s - r_plus - r_minus)
    return out


def _disagrees(v: Optional[dict]) -> bool:
    return bool(v) and v.get("status") == "checked" and not (v["agree"] and v["base_equations_hold"])


def run_rational(args) -> int:
    notes: List[str] = []
    f = parse_rational(args.fraction, notes)
    want = args.orientation
    a = analyze_rational(f.alpha, f.beta)
    labels = [o.choice for o in a.orientations]
    if want != "all" and want not in labels:
        raise UsageError(f"orientation {want!r} not available; choose from {', '.join(labels)} or all")
    engine = SkeinEngine(cap=args.cap) if args.verify else None
    out = {"alpha": f.alpha, "beta": f.beta, "cf": list(a.cf), "crossings": a.crossings,
           "components": a.components, "notes": notes, "signed_vectors": []}
    status = EXIT_OK
    for o in a.orientations:
        if want != "all" and o.choice != want:
            continue
        red = reduction_rational(o.signed)
        t0 = time.perf_counter()
        entry = {"choice": o.choice, "vector": list(o.signed.entries),
                 "blocks": [list(b) for b in blocks(o.signed.entries)],
                 "braid_index": o.braid_index, "seifert_circles": o.seifert_circles,
                 "r_plus": red.r_plus, "r_minus": red.r_minus, "verify": None, "runtime_ms": None}
        if engine is not None:
            entry["verify"] = _oracle(o.diagram, o.braid_index, red.r_plus, red.r_minus, engine)
            if _disagrees(entry["verify"]):
                status = EXIT_DISAGREE
        if args.timings:
            entry["runtime_ms"] = round((time.perf_counter() - t0) * 1000, 3)
        out["signed_vectors"].append(entry)
    out["braid_index"] = {e["choice"]: e["braid_index"] for e in out["signed_vectors"]}
    if args.json:
        print(json.dumps(out, sort_keys=True))
    else:
        for n in notes:
            print(f"note: {n}")
        print(f"b({f.alpha},{f.beta})  cf={tuple(a.cf)}  crossings={a.crossings}  components={a.components}")
        for e in out["signed_vectors"]:
            line = (f"  {e['choice']}: signed={tuple(e['vector'])}  braid_index={e['braid_index']}"
                    f"  s={e['seifert_circles']}  r+={e['r_plus']}  r-={e['r_minus']}")
            print(line + _verify_text(e["verify"]))
    return status


def _verify_text(v: Optional[dict]) -> str:
    if not v:
        return ""
    if v["status"] != "checked":
        return "  [formula-only: above crossing cap]"
    return (f"  E={v['homfly_E']} e={v['homfly_e']} mwf={v['mwf']} base={v['base_equations_hold']}"
            f" agree={v['agree']}")


def run_montesinos(args) -> int:
    pres, notes = parse_montesinos(args.presentation)
    which = None
    if args.orientation != "all":
        try:
            which = int(args.orientation)
        except ValueError:
            raise UsageError("--orientation takes 'all' or an integer index") from None
    try:
        a = analyze_montesinos(pres, which)
    except ValueError as exc:
        if "out of range" in str(exc):
            raise UsageError(str(exc)) from None
        raise
    engine = SkeinEngine(cap=args.cap) if args.verify else None
    status = EXIT_OK
    rows = []
    indices = range(len(a.orientations)) if which is None else [which]
    for idx, o in zip(indices, a.orientations):
        red = reduction_montesinos(o)
        t0 = time.perf_counter()
        row = {
            "index": idx, "label": o.label, "class": o.tag.cls, "eta": o.tag.eta,
            "delta0": delta0(o.tag.eta, pres.e) if o.tag.cls == "B" else None,
            "braid_index": o.braid_index, "seifert_circles": o.seifert_circles,
            "r_plus": red.r_plus, "r_minus": red.r_minus,
            "tangles": [{"fraction": str(t.fraction), "cf": list(t.cf), "signed": list(t.signed.entries),
                         "parity": t.parity, "delta": str(t.delta)} for t in o.tangles],
            "verify": None, "runtime_ms": None,
        }
        if engine is not None:
            row["verify"] = _oracle(o.diagram, o.braid_index, red.r_plus, red.r_minus, engine)
            if _disagrees(row["verify"]):
                status = EXIT_DISAGREE
                if o.tag.cls == "M1":
                    row["verify"]["class_m1_flag"] = True
        if args.timings:
            row["runtime_ms"] = round((time.perf_counter() - t0) * 1000, 3)
        rows.append(row)
    first = rows[0]
    out = {
        "presentation": str(pres), "mirrored": pres.mirror_flag, "notes": notes,
        "crossings": pres.crossings, "components": a.build.diagram.num_components,
        "class": first["class"], "eta": first["eta"], "tangles": first["tangles"], "delta0": first["delta0"],
        "braid_index": min(r["braid_index"] for r in rows),
        "braid_index_scope": "oriented" if len(rows) == 1 else "minimum over orientations",
        "orientations": rows,
        "verify": first["verify"],
    }
    if args.json:
        print(json.dumps(out, sort_keys=True))
    else:
        for n in notes:
            print(f"note: {n}")
        print(f"{pres}  crossings={pres.crossings}  components={out['components']}")
        for r in rows:
            print(f"  [{r['index']}] {r['label']}: class={r['class']} eta={r['eta']} braid_index={r['braid_index']}"
                  f"  s={r['seifert_circles']}  r+={r['r_plus']}  r-={r['r_minus']}" + _verify_text(r["verify"]))
            for t in r["tangles"]:
                print(f"      {t['fraction']}: signed={tuple(t['signed'])} parity={t['parity']} delta={t['delta']}")
        print(f"braid_index {out['braid_index']}" + ("" if len(rows) == 1 else " (minimum over orientations)"))
    return status


def run_homfly(args) -> int:
    path = Path(args.pd)
    if not path.is_file():
        raise UsageError(f"no such file: {path}")
    try:
        d = OrientedDiagram.from_json(path.read_text(encoding="utf-8"))
    except (json.JSONDecodeError, DiagramError) as exc:
        raise UsageError(f"bad PD code in {path}: {exc}") from None
    t0 = time.perf_counter()
    try:
        poly = SkeinEngine(cap=args.cap).evaluate(d)
    except CrossingCapExceeded as exc:
        raise UsageError(f"{exc}; raise it with --cap") from None
    ext = a_extremes(poly)
    mc = morton_bounds_check(d, poly, ext)
    out = {"polynomial": poly.to_string(), "E": ext.E, "e": ext.e, "mwf": mwf_lower_bound(poly),
           "s": mc.seifert_circles, "w": mc.writhe, "morton_ok": mc.ok,
           "runtime_ms": round((time.perf_counter() - t0) * 1000, 3) if args.timings else None}
    if args.json:
        print(json.dumps(out, sort_keys=True))
    else:
        print(f"H = {out['polynomial']}")
        print(f"E={ext.E} e={ext.e} mwf={out['mwf']} s={mc.seifert_circles} w={mc.writhe} morton_ok={mc.ok}")
    return EXIT_OK


def run_verify(args) -> int:
    out = Path(args.out)
    dump_dir = out.with_name(out.name + ".disagreements")
    failures = []

    def on_failure(rec, d):
        failures.append(rec)
        dump_disagreement(rec, d, dump_dir)

    t0 = time.perf_counter()
    try:
        records = run_verification(args.family, args.max_crossings, cap=args.cap, threads=args.threads,
                                   max_tangles=args.max_tangles, timings=args.timings, on_failure=on_failure)
    except ValueError as exc:
        raise UsageError(str(exc)) from None
    write_report(records, out)
    checked = sum(1 for r in records if r.status == "checked")
    summary = {"family": args.family, "max_crossings": args.max_crossings, "records": len(records),
               "checked": checked, "formula_only": len(records) - checked, "failures": len(failures),
               "workers": worker_count(args.threads), "report": str(out),
               "runtime_s": round(time.perf_counter() - t0, 3) if args.timings else None}
    if args.json:
        print(json.dumps(summary, sort_keys=True))
    else:
        print(f"{args.family}: {len(records)} records, {checked} checked against HOMFLY, "
              f"{len(failures)} failures -> {out}")
        if failures:
            print(f"failing diagrams dumped to {dump_dir}")
    return EXIT_DISAGREE if failures else EXIT_OK


COMMANDS = {"rational": run_rational, "montesinos": run_montesinos, "homfly": run_homfly, "verify": run_verify}


def main(argv: Optional[Sequence[str]] = None) -> int:
    try:
        args = build_parser().parse_args(argv)
        if getattr(args, "cap", DEFAULT_CAP) < 0:
            raise UsageError("--cap must be nonnegative")
        _warn_cap(getattr(args, "cap", DEFAULT_CAP))
        return COMMANDS[args.command](args)
    except UsageError as exc:
        print(f"braidex: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except (ValueError, DiagramError) as exc:
        print(f"braidex: error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
