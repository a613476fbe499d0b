"""Command line surface: build, validate, bound, invariant, export, demo.

Exit codes: 0 success, 1 semantic failure (validation, bounds, audits),
2 syntactic or usage failure (bad JSON, unknown keys, unknown names).
"""

from __future__ import annotations

import argparse
import json
import sys

from .assembly import build_full
from .bounds import arc_index_upper, binding_point_count, construction_count, crossing_stick_bound
from .errors import LatticeStickError, NotACycle
from .fixtures import DEMOS
from .graph import census, derive_edges, validate_spec
from .invariants import crossing_count, extract_knot_cycle, knot_determinant, project_generic
from .io import (
    DocumentError,
    embedding_to_document,
    export_obj,
    load_embedding,
    load_spec,
)
from .validate import check_bound, count_sticks, full_audit


def cmd_build(args) -> int:
    try:
        spec = load_spec(args.input)
    except DocumentError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    problems = validate_spec(spec)
    if problems:
        for p in problems:
            print(f"invalid: {p}", file=sys.stderr)
        return 1
    try:
        emb = build_full(spec)
    except LatticeStickError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    cens = census(spec)
    counts = count_sticks(list(emb.sticks), emb.markers)
    bounds = check_bound(counts, cens, cens.alpha_total, spec.declared_crossings)
    doc = embedding_to_document(emb, counts, bounds, cens.alpha_total)
    with open(args.output, "w", encoding="utf-8") as fh:
        json.dump(doc, fh, indent=2)
        fh.write("\n")
    for w in emb.warnings:
        print(f"note: {w}")
    print(f"sticks: x={counts.x} y={counts.y} z={counts.z} total={counts.total}")
    print(f"construction bound: {bounds.construction_bound}")
    if bounds.crossing_bound is not None:
        print(f"crossing bound: {bounds.crossing_bound}")
    print(f"wrote {args.output}")
    return 0


def cmd_validate(args) -> int:
    try:
        emb, counts = load_embedding(args.embedding)
        spec = load_spec(args.input)
    except DocumentError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    problems = validate_spec(spec)
    if problems:
        for p in problems:
            print(f"invalid input: {p}", file=sys.stderr)
        return 1
    cens = census(spec)
    report = full_audit(list(emb.sticks), emb.markers, spec, cens.degrees)
    print(f"self-avoiding: {report.self_avoiding}")
    for kind, p in report.violations:
        print(f"  violation: {kind} at {tuple(map(int, p))}")
    print(f"unmarked junctions: {len(report.unmarked_junctions)}")
    print(f"marker problems: {report.marker_problems or 'none'}")
    print(f"reconstruction: {'ok' if report.reconstruction_ok else report.reconstruction_diff}")
    ok = report.clean
    if report.counts != counts:
        print(f"counts mismatch: document says {counts}, audit found {report.counts}")
        ok = False
    try:
        bounds = check_bound(report.counts, cens, cens.alpha_total, spec.declared_crossings)
        print(f"stick count {report.counts.total} <= bound {bounds.construction_bound}")
    except LatticeStickError as exc:
        print(f"bound violated: {exc}")
        ok = False
    return 0 if ok else 1


def cmd_bound(args) -> int:
    try:
        spec = load_spec(args.input)
    except DocumentError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    problems = validate_spec(spec)
    if problems:
        for p in problems:
            print(f"invalid: {p}", file=sys.stderr)
        return 1
    cens = census(spec)
    print(
        f"census: e={cens.e} v={cens.v} s={cens.s} b={cens.b} k={cens.k} "
        f"alpha={cens.alpha_total}"
    )
    for comp in spec.components:
        pres = comp.presentation
        e_k = len(derive_edges(comp))
        beta = binding_point_count(pres.alpha, len(pres.labels), e_k)
        marker = "ok" if beta == pres.beta else f"MISMATCH (actual {pres.beta})"
        print(f"component {comp.id}: alpha={pres.alpha} binding points={beta} [{marker}]")
    print(
        "construction bound: "
        f"{construction_count(cens.alpha_total, cens.e, cens.v, cens.s, cens.k)}"
    )
    crossings = args.crossings if args.crossings is not None else spec.declared_crossings
    if crossings is not None:
        print(f"arc index bound: {arc_index_upper(crossings, cens.e, cens.b)}")
        print(
            "crossing bound: "
            f"{crossing_stick_bound(crossings, cens.e, cens.v, cens.s, cens.b, cens.k)}"
        )
    return 0


def cmd_invariant(args) -> int:
    try:
        emb, _ = load_embedding(args.embedding)
    except DocumentError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    try:
        diagram = project_generic(emb, {args.component})
        gauss = extract_knot_cycle(diagram, args.component)
    except NotACycle as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    print(f"projection crossings: {crossing_count(diagram)}")
    print(f"determinant: {knot_determinant(gauss)}")
    return 0


def cmd_export(args) -> int:
    if args.format != "obj":
        print(f"error: unknown format {args.format}", file=sys.stderr)
        return 2
    try:
        emb, _ = load_embedding(args.embedding)
    except DocumentError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    with open(args.output, "w", encoding="utf-8") as fh:
        fh.write(export_obj(emb))
    print(f"wrote {args.output}")
    return 0


def cmd_demo(args) -> int:
    if args.name not in DEMOS:
        print(
            f"error: unknown demo {args.name}; choose from {', '.join(sorted(DEMOS))}",
            file=sys.stderr,
        )
        return 2
    with open(args.output, "w", encoding="utf-8") as fh:
        json.dump(DEMOS[args.name], fh, indent=2)
        fh.write("\n")
    print(f"wrote {args.output}")
    return 0


def make_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="latticestick",
        description="Build and check axis-parallel lattice embeddings of spatial graphs.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("build", help="build an embedding from an input document")
    p.add_argument("--input", required=True)
    p.add_argument("--output", required=True)
    p.set_defaults(func=cmd_build)

    p = sub.add_parser("validate", help="audit an embedding against its input")
    p.add_argument("--embedding", required=True)
    p.add_argument("--input", required=True)
    p.set_defaults(func=cmd_validate)

    p = sub.add_parser("bound", help="print census and stick bounds")
    p.add_argument("--input", required=True)
    p.add_argument("--crossings", type=int)
    p.set_defaults(func=cmd_bound)

    p = sub.add_parser("invariant", help="projection crossings and determinant of a knot cycle")
    p.add_argument("--embedding", required=True)
    p.add_argument("--component", required=True)
    p.set_defaults(func=cmd_invariant)

    p = sub.add_parser("export", help="export an embedding to OBJ")
    p.add_argument("--embedding", required=True)
    p.add_argument("--format", required=True)
    p.add_argument("--output", required=True)
    p.set_defaults(func=cmd_export)

    p = sub.add_parser("demo", help="write a named example input document")
    p.add_argument("--name", required=True)
    p.add_argument("--output", required=True)
    p.set_defaults(func=cmd_demo)
    return parser


def main(argv=None) -> int:
    args = make_parser().parse_args(argv)
    return args.func(args)


if __name__ == "__main__":
    sys.exit(main())
