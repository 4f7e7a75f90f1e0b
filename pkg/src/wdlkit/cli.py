"""Command-line interface.

Exit codes: 0 success, 1 a verification failed, 2 bad input or usage.
"""

from __future__ import annotations

import argparse
import sys

from .algebra import ConceptAlgebraView
from .canonical import build_canonical_context, canonical_embedding, stone_field_of_sets
from .concepts import enumerate_concepts, standard_context, to_dot
from .context import read_cxt
from .errors import (
    AxiomViolation,
    NotWithNegation,
    SizeCapExceeded,
    TheoremViolation,
    UnknownProperty,
    WdlError,
)
from .lab import PROPERTIES, enumerate_lattices, find_counterexample, worker_count
from .latfile import read_lat
from .wdl import boolean_part_diagnostics, check_axioms, derive_bounds, full_report

OK, FAIL, BAD_INPUT = 0, 1, 2


def _write(path, text: str, out):
    if path is None or path == "-":
        out.write(text)
    else:
        with open(path, "w", encoding="utf-8") as fh:
            fh.write(text)


def cmd_concepts(args, out) -> int:
    view = enumerate_concepts(read_cxt(args.file))
    for i in range(len(view)):
        out.write(f"{i}: {view.label(i)}\n")
    if args.dot:
        _write(args.dot, to_dot(view, reduced=args.reduced), out)
    return OK


def cmd_algebra(args, out) -> int:
    A = ConceptAlgebraView(enumerate_concepts(read_cxt(args.file)))
    if args.tables:
        out.write(A.dump())
    else:
        for i in range(len(A)):
            out.write(f"{i}: {A.base.label(i)}\n")
    out.write(A.report.to_text())
    return OK


def cmd_check(args, out) -> int:
    report = full_report(read_lat(args.file))
    out.write(report.to_text())
    return OK if report.ok else FAIL


def cmd_derive_bounds(args, out) -> int:
    D = read_lat(args.file)
    L = D.lattice
    try:
        bottom, top = derive_bounds(L.meet_table, L.join_table, D.up, names=L.names)
    except AxiomViolation as exc:
        out.write(str(exc) + "\n")
        return FAIL
    out.write(f"bottom {L.names[bottom]}\ntop {L.names[top]}\n")
    if (bottom, top) != (L.bottom, L.top):
        out.write("FAIL derived bounds differ from the order's bounds\n")
        return FAIL
    out.write("PASS x v x^up is constant\n")
    return OK


def cmd_standard_context(args, out) -> int:
    K = standard_context(read_lat(args.file).lattice)
    _write(args.output, K.to_cxt(), out)
    return OK


def _require_axioms(D, out) -> bool:
    report = check_axioms(D.lattice, D.up, D.down)
    if not report.ok:
        out.write(report.to_text())
    return report.ok


def cmd_canonical(args, out) -> int:
    D = read_lat(args.file)
    if not _require_axioms(D, out):
        return FAIL
    out.write(build_canonical_context(D, include_improper=args.include_improper).to_cxt())
    if args.embed_report:
        report = canonical_embedding(D, fatal=False)
        out.write("\n".join(report.to_lines()) + "\n")
        return OK if report.ok else FAIL
    return OK


def cmd_stone(args, out) -> int:
    D = read_lat(args.file)
    if not _require_axioms(D, out):
        return FAIL
    out.write("\n".join(stone_field_of_sets(D).to_lines()) + "\n")
    return OK


def cmd_enumerate(args, out) -> int:
    lattices = enumerate_lattices(args.size)
    if args.count_only:
        out.write(f"{len(lattices)}\n")
        return OK
    for i, L in enumerate(lattices):
        if i:
            out.write("\n")
        out.write(f"# size {args.size} lattice #{i}\n")
        out.write(L.to_lat())
    return OK


def cmd_search(args, out) -> int:
    hit = find_counterexample(args.property, args.max_size)
    if hit is None:
        out.write(f"{args.property}: no hit up to size {args.max_size}\n")
        return OK
    out.write(hit.summary() + "\n")
    _write(args.output, hit.to_lat(), out)
    return OK


def cmd_diagnostics(args, out) -> int:
    D = read_lat(args.file)
    if not _require_axioms(D, out):
        return FAIL
    out.write("\n".join(boolean_part_diagnostics(D).to_lines()) + "\n")
    return OK


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="wdlkit", description=__doc__.splitlines()[0])
    sub = p.add_subparsers(dest="command", metavar="command")
    sub.required = True

    s = sub.add_parser("concepts", help="list the concepts of a .cxt context")
    s.add_argument("file")
    s.add_argument("--dot", metavar="OUT", help="also write a DOT diagram ('-' for stdout)")
    s.add_argument("--reduced", action="store_true", help="reduced labeling in the DOT diagram")
    s.set_defaults(func=cmd_concepts)

    s = sub.add_parser("algebra", help="concept algebra of a .cxt context")
    s.add_argument("file")
    s.add_argument("--tables", action="store_true", help="print the up/down tables")
    s.set_defaults(func=cmd_algebra)

    s = sub.add_parser("check", help="axioms and derived properties of a .lat file")
    s.add_argument("file")
    s.set_defaults(func=cmd_check)

    s = sub.add_parser("derive-bounds", help="recover 0 and 1 from the meet, join and up tables")
    s.add_argument("file")
    s.set_defaults(func=cmd_derive_bounds)

    s = sub.add_parser("standard-context", help="(J(L), M(L), <=) as .cxt")
    s.add_argument("file")
    s.add_argument("-o", "--output", metavar="OUT")
    s.set_defaults(func=cmd_standard_context)

    s = sub.add_parser("canonical", help="canonical context of primary filters and ideals")
    s.add_argument("file")
    s.add_argument("--embed-report", action="store_true", help="verify the embedding x -> (F_x, I_x)")
    s.add_argument("--include-improper", action="store_true",
                   help="also use the improper filter and ideal")
    s.set_defaults(func=cmd_canonical)

    s = sub.add_parser("stone", help="field-of-sets representation (requires up = down)")
    s.add_argument("file")
    s.set_defaults(func=cmd_stone)

    s = sub.add_parser("enumerate", help="all lattices of a given size up to isomorphism")
    s.add_argument("--size", type=int, required=True)
    s.add_argument("--count-only", action="store_true")
    s.set_defaults(func=cmd_enumerate)

    s = sub.add_parser("search", help="first counterexample to a named property")
    s.add_argument("--property", required=True, help="one of: " + ", ".join(PROPERTIES))
    s.add_argument("--max-size", type=int, required=True)
    s.add_argument("-o", "--output", metavar="OUT", help="write the hit as .lat here instead of stdout")
    s.set_defaults(func=cmd_search)

    s = sub.add_parser("diagnostics", help="Boolean part, skeletons and complemented elements")
    s.add_argument("file")
    s.set_defaults(func=cmd_diagnostics)
    return p


def run(argv=None, out=None, err=None) -> int:
    out = sys.stdout if out is None else out
    err = sys.stderr if err is None else err
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return BAD_INPUT if exc.code else OK
    try:
        worker_count()
    except ValueError as exc:
        err.write(f"error: {exc}\n")
        return BAD_INPUT
    try:
        return args.func(args, out)
    except (AxiomViolation, TheoremViolation) as exc:
        err.write(f"error: {exc}\n")
        return FAIL
    except (NotWithNegation, SizeCapExceeded, UnknownProperty) as exc:
        err.write(f"error: {exc}\n")
        return BAD_INPUT
    except WdlError as exc:
        err.write(f"error: {exc}\n")
        return BAD_INPUT
    except (OSError, ValueError) as exc:
        err.write(f"error: {exc}\n")
        return BAD_INPUT


def main() -> None:
    sys.exit(run())
