"""The ``figorder`` command line.

Exit codes: 0 a decision was reached (including "no"), 1 bad input
(parse error, unknown entry, model mismatch) or a failed verification,
2 the engine cannot decide, 3 a finite figure is above the size cap.
"""

from __future__ import annotations

import argparse
import json
import sys
import time
from pathlib import Path

from . import catalog
from .comparator import DEFAULT_CAP, equal_finite, lambda_compare, leq_finite
from .docio import document_to_dict, dumps_isometry, isometry_to_dict, parse_figure, parse_isometry
from .errors import (
    DocumentError,
    FigorderError,
    ModelMismatchError,
    SizeCapError,
    UnknownEntryError,
    UnsupportedImageError,
)
from .figures import PI_SQRT2, FiniteFigure, OrbitFigure, neighbor_counts, realize
from .geometry import DEFAULT_TOL, Geometry, dist
from .plotting import write_svg
from .subset import check_leq_symbolic

EXIT_OK, EXIT_INPUT, EXIT_UNDECIDED, EXIT_CAP = 0, 1, 2, 3
ORBIT_NEIGHBOR_TOL = 1e-6


def _err(msg: str) -> None:
    print(f"figorder: {msg}", file=sys.stderr)


def _dump(obj) -> None:
    print(json.dumps(obj, indent=2, sort_keys=True))


def _read_figure(path):
    try:
        text = Path(path).read_text()
    except OSError as e:
        raise DocumentError(f"cannot read {path}: {e.strerror}") from None
    try:
        return parse_figure(text)
    except DocumentError as e:
        raise DocumentError(f"{path}: {e}") from None


def _read_witness(path):
    try:
        return parse_isometry(Path(path).read_text())
    except OSError as e:
        raise DocumentError(f"cannot read {path}: {e.strerror}") from None


def _finite_form(F, truncate: int):
    """A finite figure for F, or None if F is symbolic."""
    if isinstance(F, FiniteFigure):
        return F
    if isinstance(F, OrbitFigure):
        return realize(F, F.truncation or truncate)
    return None


def _verdict_dict(v) -> dict:
    return {
        "holds": v.holds,
        "witness": None if v.witness is None else isometry_to_dict(v.witness),
        "certificate": v.certificate,
        "detail": v.detail,
    }


def _verdict_text(v) -> str:
    if v.holds:
        return f"yes\t{dumps_isometry(v.witness)}"
    return f"no\t{v.certificate}: {v.detail}"


def cmd_compare(args) -> int:
    A, B = _read_figure(args.a), _read_figure(args.b)
    if A.geometry is not B.geometry:
        raise ModelMismatchError(f"A is {A.geometry.value} but B is {B.geometry.value}")
    if args.witness:
        return _witness_run(A, B, _read_witness(args.witness), args)
    FA, FB = _finite_form(A, args.truncate), _finite_form(B, args.truncate)
    if FA is None or FB is None:
        _err("symbolic figures cannot be compared without a witness; pass --witness or use check-witness")
        return EXIT_UNDECIDED
    notes = []
    if isinstance(A, OrbitFigure) or isinstance(B, OrbitFigure):
        notes.append(f"orbits compared at truncation {args.truncate}; finite truncations are strongly good, "
                     "so the infinite-set behaviour is certified by `figorder verify ex1.4` instead")
    ab = leq_finite(FA, FB, args.tol, args.cap)
    ba = leq_finite(FB, FA, args.tol, args.cap)
    eq = equal_finite(FA, FB, args.tol, args.cap)
    lam = lambda_compare(FA, FB, args.tol, args.cap)
    if args.json:
        _dump({
            "A<=B": _verdict_dict(ab),
            "B<=A": _verdict_dict(ba),
            "A~B": _verdict_dict(eq),
            "lambda": {"relation": lam.relation, "detail": lam.detail,
                       "witness": None if lam.witness is None else isometry_to_dict(lam.witness)},
            "sizes": [len(FA), len(FB)],
            "notes": notes,
        })
    else:
        print(f"A<=B\t{_verdict_text(ab)}")
        print(f"B<=A\t{_verdict_text(ba)}")
        print(f"A~B\t{_verdict_text(eq)}")
        print(f"lambda\t{lam.relation}")
        for n in notes:
            print(f"note\t{n}")
    return EXIT_OK


def _witness_run(A, B, f, args) -> int:
    res = check_leq_symbolic(A, B, f, args.tol)
    if args.json:
        _dump({"status": res.status, "witness_point": None if res.witness is None else list(res.witness),
               "reason": res.reason})
    else:
        line = res.status
        if res.witness is not None:
            line += "\t" + json.dumps(list(res.witness))
        if res.reason:
            line += "\t" + res.reason
        print(line)
    return EXIT_UNDECIDED if res.status == "unknown" else EXIT_OK


def cmd_check_witness(args) -> int:
    A, B = _read_figure(args.a), _read_figure(args.b)
    if A.geometry is not B.geometry:
        raise ModelMismatchError(f"A is {A.geometry.value} but B is {B.geometry.value}")
    return _witness_run(A, B, _read_witness(args.witness), args)


def cmd_verify(args) -> int:
    if args.all == bool(args.entry):
        _err("give exactly one of an entry id or --all")
        return EXIT_INPUT
    ids = list(catalog.ENTRY_IDS) if args.all else [args.entry]
    entries = [catalog.build_entry(i) for i in ids]
    start = time.perf_counter()
    reports = [catalog.verify_entry(e, args.truncate) for e in entries]
    elapsed = time.perf_counter() - start
    if args.figures:
        out = Path(args.figures)
        out.mkdir(parents=True, exist_ok=True)
        for e in entries:
            write_svg(out / f"{e.id}.svg", [("A", [e.A]), ("B", [e.B])], truncation=args.truncate)
    passed = sum(r.passed for r in reports)
    if args.json:
        docs = [r.to_dict() for r in reports]
        _dump(docs if args.all else docs[0])
    else:
        for r in reports:
            print(f"{r.entry}\t{r.verdict}")
            for c in r.clauses:
                print(f"\t{'ok' if c.passed else 'FAIL'}\t{c.name}\t{c.evidence}")
            for a in r.assumptions:
                print(f"\tassumes\t{a}")
        print(f"{passed}/{len(reports)} PASS\t{elapsed:.2f}s")
    return EXIT_OK if passed == len(reports) else EXIT_INPUT


def cmd_list(args) -> int:
    for id_, g, summary, _ in catalog.list_entries():
        print(f"{id_}\t{g}\t{summary}")
    return EXIT_OK


def _parse_exclude(text: str) -> frozenset:
    if not text:
        return frozenset()
    return frozenset(int(t) for t in text.split(",") if t.strip())


def cmd_orbit(args) -> int:
    g = Geometry.parse(args.geometry)
    omega = args.omega
    try:
        omega_arg = omega if omega == PI_SQRT2 else float(omega)
    except ValueError:
        omega_arg = omega
    orbit = OrbitFigure(g, omega_arg, args.radius, 0, _parse_exclude(args.exclude))
    F = realize(orbit, args.count)
    r = dist(orbit.point(0), orbit.point(1))
    doc = document_to_dict(F)
    doc["metadata"] = {
        "omega": str(omega),
        "count": args.count,
        "indices": orbit.indices(args.count),
        "r": r,
        "neighbor_tol": ORBIT_NEIGHBOR_TOL,
        "neighbor_counts": neighbor_counts(F, r, ORBIT_NEIGHBOR_TOL),
    }
    text = json.dumps(doc, indent=2, sort_keys=True) + "\n"
    if args.output:
        Path(args.output).write_text(text)
    else:
        sys.stdout.write(text)
    return EXIT_OK


def _parse_viewport(text):
    if text is None:
        return None
    vals = [float(t) for t in text.split(",")]
    if len(vals) != 4 or vals[0] >= vals[1] or vals[2] >= vals[3]:
        raise DocumentError("viewport is xmin,xmax,ymin,ymax with xmin < xmax and ymin < ymax")
    return tuple(vals)


def cmd_render(args) -> int:
    figs = [_read_figure(p) for p in args.files]
    panels = [(Path(p).stem, [F]) for p, F in zip(args.files, figs)]
    if args.overlay:
        panels = [("", figs)]
    witness = _read_witness(args.witness) if args.witness else None
    write_svg(args.output, panels, viewport=_parse_viewport(args.viewport),
              truncation=args.truncate, witness=witness)
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="figorder", description="Compare plane figures up to isometry.")
    sub = p.add_subparsers(dest="command", required=True)

    def common(sp, truncate=True):
        sp.add_argument("--tol", type=float, default=DEFAULT_TOL, help="distance tolerance (default 1e-9)")
        if truncate:
            sp.add_argument("--truncate", type=int, default=catalog.DEFAULT_TRUNCATION,
                            help="orbit truncation (default 40)")
        sp.add_argument("--json", action="store_true", help="machine-readable output")

    c = sub.add_parser("compare", help="decide A<=B, B<=A, A~B and the lambda order for finite figures")
    c.add_argument("a")
    c.add_argument("b")
    c.add_argument("--witness", help="check this isometry instead (needed for symbolic figures)")
    c.add_argument("--cap", type=int, default=DEFAULT_CAP, help="maximum points per finite figure")
    common(c)
    c.set_defaults(func=cmd_compare)

    v = sub.add_parser("verify", help="re-check catalog entries")
    v.add_argument("entry", nargs="?")
    v.add_argument("--all", action="store_true")
    v.add_argument("--figures", metavar="DIR", help="also write one SVG per entry into DIR")
    common(v)
    v.set_defaults(func=cmd_verify)

    w = sub.add_parser("check-witness", help="check that an isometry maps A into B")
    w.add_argument("a")
    w.add_argument("b")
    w.add_argument("witness")
    common(w, truncate=False)
    w.set_defaults(func=cmd_check_witness)

    o = sub.add_parser("orbit", help="write a realized rotation orbit as a figure document")
    o.add_argument("--omega", default=PI_SQRT2)
    o.add_argument("--count", type=int, required=True)
    o.add_argument("--geometry", default="euclidean")
    o.add_argument("--exclude", default="", help="comma-separated indices to leave out")
    o.add_argument("--radius", type=float, default=None)
    o.add_argument("-o", "--output")
    o.set_defaults(func=cmd_orbit)

    r = sub.add_parser("render", help="draw figure documents to an SVG file")
    r.add_argument("files", nargs="+")
    r.add_argument("-o", "--output", required=True)
    r.add_argument("--viewport", help="xmin,xmax,ymin,ymax")
    r.add_argument("--witness", help="draw arrows for this isometry")
    r.add_argument("--overlay", action="store_true", help="draw all figures in one panel")
    r.add_argument("--truncate", type=int, default=catalog.DEFAULT_TRUNCATION)
    r.set_defaults(func=cmd_render)

    ls = sub.add_parser("list", help="list catalog entries")
    ls.set_defaults(func=cmd_list)
    return p


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except SizeCapError as e:
        _err(str(e))
        return EXIT_CAP
    except UnsupportedImageError as e:
        _err(f"cannot decide: {e}")
        return EXIT_UNDECIDED
    except (DocumentError, UnknownEntryError, ModelMismatchError) as e:
        _err(str(e).strip("'\""))
        return EXIT_INPUT
    except (FigorderError, ValueError) as e:
        _err(str(e))
        return EXIT_INPUT


if __name__ == "__main__":
    sys.exit(main())
