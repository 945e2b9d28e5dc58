"""Command-line entry point: ``h4matroid <command>``."""

from __future__ import annotations

import argparse
import csv
import io
import json
import sys
from pathlib import Path
from typing import Sequence

from . import __version__
from . import group as grp
from .autos import SearchError, Symmetries
from .gfield import format_golden
from .matroid import (
    DISPLAY,
    EXPECTED_BASES,
    EXPECTED_COUNTS,
    EXPECTED_INCIDENCE,
    FLAT_CLASSES,
    LINE_CLASSES,
    PLANE_CLASSES,
    ClassificationError,
    H4Matroid,
)
from .projection import ProjectionError, ProjectionSpec, parse_matrix, project_svg
from .roots import load_h4
from .verify import CLAIM_IDS, Verifier, tampered_columns

EXIT_OK, EXIT_FAIL, EXIT_USAGE = 0, 1, 2

# checks summarized in each export's manifest
EXPORT_CHECKS = {
    "roots": ["ground_set"],
    "flats": ["ground_set", "line_census", "plane_census", "incidence_table"],
    "orthoframes": ["ground_set", "orthoframes"],
    "group": ["ground_set", "group_orders", "basis_certificates"],
}


class UsageError(Exception):
    pass


def _emit(text: str, out: str | None) -> None:
    if out:
        Path(out).write_text(text, encoding="utf-8")
    else:
        sys.stdout.write(text)


def _dump(doc) -> str:
    return json.dumps(doc, indent=2, ensure_ascii=False) + "\n"


def _csv(rows: Sequence[Sequence]) -> str:
    buf = io.StringIO()
    csv.writer(buf, lineterminator="\n").writerows(rows)
    return buf.getvalue()


def _columns(args) -> list | None:
    if not getattr(args, "tamper", None):
        return None
    try:
        col, row = (int(x) for x in args.tamper.split(":"))
        return tampered_columns(col, row)
    except (ValueError, IndexError) as exc:
        raise UsageError(f"--tamper expects COLUMN:ROW with 0-based indices, got {args.tamper!r}") from exc


def _matroid(args) -> H4Matroid:
    columns = _columns(args)
    return H4Matroid() if columns is None else H4Matroid(load_h4(columns, strict=False))


def _point_id(text: str, m: H4Matroid) -> int:
    try:
        x = int(text)
    except ValueError as exc:
        raise UsageError(f"point id must be an integer, got {text!r}") from exc
    if not 0 <= x < m.n:
        raise UsageError(f"point id must be in 0..{m.n - 1}, got {x}")
    return x


# -- census -------------------------------------------------------------------


def cmd_census(args) -> int:
    m = _matroid(args)
    census = m.census(jobs=args.jobs)
    inc = census.incidence
    cols = [c for c in FLAT_CLASSES if c != "point"]
    rows = ["point"] + list(LINE_CLASSES)

    def cell(r: str, c: str) -> str:
        v = inc.uniform(r, c)
        return "-" if v is None else str(v)

    if args.format == "json":
        doc = {
            "flat_counts": census.counts,
            "incidence": {r: {c: inc.uniform(r, c) for c in cols} for r in rows},
            "point_total_incidence": {k: sorted(v) for k, v in inc.apex_total.items()},
            "bases": census.bases,
            "orthoframes": census.orthoframes,
            "matches": census.matches(),
        }
        text = _dump(doc)
    elif args.format == "csv":
        table = [["table", "flat", "column", "value", "expected"]]
        for c in FLAT_CLASSES:
            table.append(["counts", c, "count", census.counts[c], EXPECTED_COUNTS[c]])
        for r in rows:
            for c in cols:
                table.append(["incidence", r, c, cell(r, c), EXPECTED_INCIDENCE[r][c]])
        table.append(["counts", "bases", "count", census.bases, EXPECTED_BASES])
        table.append(["counts", "orthoframes", "count", census.orthoframes, 75])
        text = _csv(table)
    else:
        lines = ["Flats by class"]
        for c in FLAT_CLASSES:
            mark = "" if census.counts[c] == EXPECTED_COUNTS[c] else f"  (expected {EXPECTED_COUNTS[c]})"
            lines.append(f"  {DISPLAY[c]}: {census.counts[c]}{mark}")
        lines.append(f"  bases: {census.bases}")
        lines.append(f"  orthoframes: {census.orthoframes}")
        lines.append("")
        lines.append("Flats of each column class containing a given flat")
        width = 12
        lines.append("  " + "".ljust(width) + "".join(DISPLAY[c].rjust(width) for c in cols))
        for r in rows:
            lines.append("  " + DISPLAY[r].ljust(width) + "".join(cell(r, c).rjust(width) for c in cols))
        totals = ", ".join(f"{DISPLAY[k]} {sorted(v)[0]}" for k, v in sorted(inc.apex_total.items()))
        lines.append(f"  (point row counts apexes for Π3 and Π5; all containing planes: {totals})")
        lines.append("")
        lines.append("census matches" if census.matches() else "census MISMATCH")
        text = "\n".join(lines) + "\n"
    _emit(text, args.out)
    if args.figures:
        from .figures import write_census_figures

        for p in write_census_figures(census, args.figures):
            print(f"wrote {p}", file=sys.stderr)
    return EXIT_OK if census.matches() else EXIT_FAIL


# -- verification -----------------------------------------------------------------


def cmd_verify_all(args) -> int:
    columns = _columns(args)
    only = args.only or None
    if only:
        unknown = [c for c in only if c not in CLAIM_IDS]
        if unknown:
            raise UsageError(f"unknown claim ids: {', '.join(unknown)}")
    verifier = Verifier(columns, seed=args.seed, jobs=args.jobs)

    def progress(r) -> None:
        if args.format == "text":
            print(f"{r.status.upper():4}  {r.id:<28} {r.elapsed_s:7.2f}s  {r.anchor}", flush=True)

    report = verifier.run(only=only, progress=progress)
    doc = report.to_json(timings=not args.no_timings)
    if args.out:
        Path(args.out).write_text(doc, encoding="utf-8")
    if args.format == "json" and not args.out:
        sys.stdout.write(doc)
    elif args.format == "text":
        s = report.summary()
        print(f"{s['passed']}/{s['total']} claims pass")
    return EXIT_OK if report.passed else EXIT_FAIL


# -- orthoframes, bases ----------------------------------------------------------


def cmd_orthoframes(args) -> int:
    m = _matroid(args)
    frames = [list(f.points) for f in m.orthoframes]
    chars = m.orthoframe_characterizations()
    ok = len(frames) == 75 and not chars["disagreements"]
    if args.format == "json":
        text = _dump({"count": len(frames), "orthoframes": frames, "characterizations_agree": not chars["disagreements"]})
    elif args.format == "csv":
        text = _csv([["frame", "p1", "p2", "p3", "p4"]] + [[i, *f] for i, f in enumerate(frames)])
    else:
        text = "".join(f"{i:3d}: {' '.join(f'{p:2d}' for p in f)}\n" for i, f in enumerate(frames))
        text += f"{len(frames)} orthoframes; characterizations {'agree' if not chars['disagreements'] else 'DISAGREE'}\n"
    _emit(text, args.out)
    return EXIT_OK if ok else EXIT_FAIL


def cmd_bases(args) -> int:
    m = _matroid(args)
    n = m.count_bases(jobs=args.jobs)
    total = 487_635
    if args.format == "json":
        text = _dump({"bases": n, "four_subsets": total, "expected": EXPECTED_BASES})
    elif args.format == "csv":
        text = _csv([["bases", "four_subsets", "expected"], [n, total, EXPECTED_BASES]])
    else:
        text = f"bases: {n} of {total} four-point subsets ({n / total:.4f})\n"
    _emit(text, args.out)
    return EXIT_OK if n == EXPECTED_BASES else EXIT_FAIL


# -- groups ---------------------------------------------------------------------------


def _group_doc(sym: Symmetries) -> dict:
    aut = sym.aut
    w = sym.nongeometric_witness()
    return {
        "degree": sym.n,
        "order": aut.order,
        "geometric_order": sym.geometric_group.order(),
        "generators": [list(g) for g in aut.generators],
        "certified_basis_preserving": aut.certified,
        "coset_witness": {
            "permutation": list(w.witness),
            "geometric": w.in_geometric,
            "plane_point": w.plane_point,
            "frame_permutation": list(w.frame_permutation),
            "frame_parity": "odd" if w.frame_parity else "even",
        },
    }


def cmd_aut(args) -> int:
    sym = Symmetries(_matroid(args))
    doc = _group_doc(sym)
    if args.export:
        Path(args.export).write_text(_dump(_with_manifest(doc, "group", args)), encoding="utf-8")
    if args.format == "json":
        text = _dump(doc)
    elif args.format == "csv":
        text = _csv([["generator", *range(sym.n)]] + [[i, *g] for i, g in enumerate(doc["generators"])])
    else:
        w = doc["coset_witness"]
        lines = [
            f"automorphism group order: {doc['order']}",
            f"geometric subgroup order: {doc['geometric_order']} (index {doc['order'] // doc['geometric_order']})",
            f"generators: {len(doc['generators'])}, all basis-preserving: {all(doc['certified_basis_preserving'])}",
        ]
        for i, g in enumerate(sym.aut.generators):
            lines.append(f"  g{i}: {grp.fmt_perm(g)}")
        lines.append(
            f"non-geometric witness: frame permutation {w['frame_permutation']} in the orthoplane of "
            f"point {w['plane_point']} is {w['frame_parity']}"
        )
        text = "\n".join(lines) + "\n"
    _emit(text, args.out)
    return EXIT_OK if doc["order"] == 14_400 and all(doc["certified_basis_preserving"]) else EXIT_FAIL


def cmd_stab(args) -> int:
    m = _matroid(args)
    x = _point_id(args.point, m)
    sym = Symmetries(m)
    r = sym.stabilizer(x, with_table=True)
    doc = {
        "point": x,
        "order": r.order,
        "reflection_central": r.reflection_central,
        "restriction_image_order": r.restriction_image_order,
        "restriction_kernel": [list(g) for g in r.restriction_kernel],
        "kernel_is_identity_and_reflection": r.kernel_is_reflection,
        "frame_action_order": r.frame_action_order,
        "equals_orthoplane_stabilizer": r.equals_plane_stabilizer,
        "isomorphic_to_s5_x_z2": r.isomorphic_to_s5_x_z2,
        "ok": r.ok,
    }
    if args.format == "json":
        text = _dump(doc)
    elif args.format == "csv":
        text = _csv([list(doc), [json.dumps(v) if isinstance(v, list) else v for v in doc.values()]])
    else:
        text = "".join(
            f"{k}: {v}\n" for k, v in doc.items() if k != "restriction_kernel"
        ) + f"restriction kernel: {', '.join(grp.fmt_perm(g) for g in r.restriction_kernel)}\n"
    _emit(text, args.out)
    return EXIT_OK if r.ok else EXIT_FAIL


def cmd_primitivity(args) -> int:
    sym = Symmetries(_matroid(args))
    r = sym.primitivity_check()
    ok = r["primitive"] and r["stabilizer_maximal"] and not r["plane_action_primitive"]
    if args.format == "json":
        text = _dump(r)
    elif args.format == "csv":
        text = _csv([list(r), [json.dumps(v) if isinstance(v, list) else v for v in r.values()]])
    else:
        text = "".join(f"{k}: {v}\n" for k, v in r.items())
    _emit(text, args.out)
    return EXIT_OK if ok else EXIT_FAIL


# -- projection -------------------------------------------------------------------


def cmd_project(args) -> int:
    m = _matroid(args)
    spec = ProjectionSpec()
    if args.matrix:
        spec = ProjectionSpec(transform=parse_matrix(args.matrix))
    if args.plane is not None and not 0 <= args.plane < 60:
        raise UsageError(f"--plane must be in 0..59, got {args.plane}")
    svg = project_svg(m, spec, line_sizes=args.lines or (), plane=args.plane)
    _emit(svg, args.out)
    return EXIT_OK


# -- export -----------------------------------------------------------------------------


def _with_manifest(payload: dict, what: str, args) -> dict:
    report = Verifier(_columns(args)).run(only=EXPORT_CHECKS[what])
    manifest = {
        "artifact": "h4matroid",
        "version": __version__,
        "export": what,
        "checks": {c.id: c.status for c in report.claims},
        "summary": report.summary(),
    }
    return {"manifest": manifest, **payload}


def cmd_export(args) -> int:
    m = _matroid(args)
    what = args.what
    if what == "roots":
        payload = {"roots": [{"id": p.id, "coords": [format_golden(c) for c in p.coords]} for p in m.points]}
    elif what == "flats":
        payload = {
            "lines": [{"class": c, "points": list(f.points)} for c in LINE_CLASSES for f in m.flats[c]],
            "planes": [{"class": c, "points": list(f.points)} for c in PLANE_CLASSES for f in m.flats[c]],
            "orthoframes": [list(f.points) for f in m.orthoframes],
        }
    elif what == "orthoframes":
        payload = {"orthoframes": [list(f.points) for f in m.orthoframes]}
    else:
        payload = _group_doc(Symmetries(m))
    doc = _with_manifest(payload, what, args)
    _emit(_dump(doc), args.out)
    return EXIT_OK if doc["manifest"]["summary"]["failed"] == 0 else EXIT_FAIL


# -- parser -------------------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="h4matroid", description="Exact computations on the matroid M(H4).")
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", choices=("text", "csv", "json"), default="text")
    common.add_argument("--out", help="write output to this file instead of stdout")
    common.add_argument("--jobs", type=int, default=1, help="worker processes for basis counting")
    common.add_argument("--tamper", metavar="COL:ROW", help="negate one matrix entry (0-based) before loading")

    p = sub.add_parser("census", parents=[common], help="flat counts and the incidence table")
    p.add_argument("--figures", metavar="DIR", help="also write matplotlib census figures here")
    p.set_defaults(func=cmd_census)

    p = sub.add_parser("verify-all", parents=[common], help="run every claim and report pass/fail")
    p.add_argument("--seed", type=int, default=0, help="seed for the randomized property suites")
    p.add_argument("--only", nargs="+", metavar="CLAIM", help="run only these claim ids")
    p.add_argument("--no-timings", action="store_true", help="omit elapsed times for byte-stable JSON")
    p.set_defaults(func=cmd_verify_all)

    for name, func, text in (
        ("orthoframes", cmd_orthoframes, "list the 75 orthoframes"),
        ("bases", cmd_bases, "count bases among all 4-subsets"),
        ("primitivity", cmd_primitivity, "block systems of the automorphism group"),
    ):
        sub.add_parser(name, parents=[common], help=text).set_defaults(func=func)

    p = sub.add_parser("aut", parents=[common], help="automorphism group and coset witness")
    p.add_argument("--export", metavar="FILE", help="write generators, order and witness as JSON")
    p.set_defaults(func=cmd_aut)

    p = sub.add_parser("stab", parents=[common], help="structure of a point stabilizer")
    p.add_argument("point", help="point id (0-based)")
    p.set_defaults(func=cmd_stab)

    p = sub.add_parser("project", parents=[common], help="SVG of the affine projection")
    p.add_argument("--lines", type=int, choices=(2, 3, 5), action="append", help="overlay lines of this size")
    p.add_argument("--plane", type=int, help="highlight this 15-point plane (0-based)")
    p.add_argument("--matrix", help="4x4 change of basis, rows ';'-separated, entries a+b*t")
    p.set_defaults(func=cmd_project)

    p = sub.add_parser("export", parents=[common], help="JSON export with a manifest")
    p.add_argument("what", choices=("roots", "flats", "orthoframes", "group"))
    p.set_defaults(func=cmd_export)
    return parser


def main(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except (UsageError, ProjectionError) as exc:
        print(f"h4matroid: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except (ClassificationError, SearchError) as exc:
        print(f"h4matroid: structure check failed: {exc}", file=sys.stderr)
        return EXIT_FAIL
    except OSError as exc:
        print(f"h4matroid: I/O error: {exc}", file=sys.stderr)
        return EXIT_FAIL


if __name__ == "__main__":
    sys.exit(main())
