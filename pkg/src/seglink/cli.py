"""``seglink``: validate, solve, transform, verify, render and generate instances.

Exit codes: 0 success (valid / YES / all checks pass), 1 usage, I/O or parse
error, 2 invalid input or failed verification, 3 NO.
"""
from __future__ import annotations

import argparse
import sys

from . import corpus
from .gadgets import TransformError, report_from_json, report_to_json, transform_circuit, transform_path
from .geom import format_rat, parse_rat
from .instance import FamilyError, ParseError, read_family, serialize, validate, write_family
from .lemmas import ReportMismatch, format_results, verify_all
from .linker import decide, format_witness, oracle_decide, parse_witness, verify_linking
from .render import render_svg
from .visibility import visibility_graph


class _Fail(Exception):
    def __init__(self, code, message):
        super().__init__(message)
        self.code = code


def _read(path):
    try:
        return read_family(path)
    except OSError as exc:
        raise _Fail(1, f"cannot read {path}: {exc.strerror}") from None
    except ParseError as exc:
        raise _Fail(1, f"{path}: {exc}") from None


def _read_text(path, what):
    try:
        with open(path, encoding="utf-8") as fh:
            return fh.read()
    except OSError as exc:
        raise _Fail(1, f"cannot read {what} {path}: {exc.strerror}") from None


def _witness(path):
    try:
        return parse_witness(_read_text(path, "witness"))
    except ValueError as exc:
        raise _Fail(1, f"{path}: {exc}") from None


def _report(path):
    try:
        return report_from_json(_read_text(path, "report"))
    except (ValueError, KeyError) as exc:
        raise _Fail(1, f"{path}: bad report: {exc}") from None


def _write(path, text):
    try:
        with open(path, "w", encoding="utf-8") as fh:
            fh.write(text)
    except OSError as exc:
        raise _Fail(1, f"cannot write {path}: {exc.strerror}") from None


def cmd_validate(args):
    family = _read(args.file)
    try:
        v = validate(family)
    except FamilyError as exc:
        print(f"invalid: {exc}")
        return 2
    if v is not None:
        print(f"invalid: {v}")
        return 2
    print(f"valid {family.declared_class.value} ({len(family)} segments)")
    return 0


def cmd_solve(args):
    family = _read(args.file)
    try:
        if args.oracle:
            w = oracle_decide(family, args.mode)
        else:
            w = decide(family, args.mode)
    except ValueError as exc:
        raise _Fail(2, str(exc)) from None
    if w is None:
        print("NO")
        return 3
    print("YES")
    if args.witness:
        _write(args.witness, format_witness(w))
    return 0


def cmd_transform(args):
    family = _read(args.infile)
    fn = transform_circuit if args.mode == "circuit" else transform_path
    delta = None
    if args.delta is not None:
        try:
            delta = parse_rat(args.delta)
        except (ValueError, ZeroDivisionError) as exc:
            raise _Fail(1, f"bad --delta: {exc}") from None
    try:
        out, report = fn(family, delta=delta)
    except (TransformError, FamilyError) as exc:
        raise _Fail(2, str(exc)) from None
    try:
        write_family(args.outfile, out)
    except OSError as exc:
        raise _Fail(1, f"cannot write {args.outfile}: {exc.strerror}") from None
    if args.report:
        _write(args.report, report_to_json(report))
    p = report.params
    print(f"delta {format_rat(p.delta)}")
    print(f"segments {len(family)} -> {len(out)}")
    print(f"gadgets {len(report.gadgets)}")
    return 0


def cmd_verify(args):
    family = _read(args.file)
    if not args.report:
        raise _Fail(1, "verify needs --report")
    report = _report(args.report)
    witness = _witness(args.witness) if args.witness else None
    failed = False
    if witness is not None:
        check = verify_linking(family, witness)
        if not check:
            for problem in check.problems:
                print(f"witness FAIL {problem}")
            failed = True
            witness = None
    try:
        results = verify_all(family, report, witness)
    except ReportMismatch as exc:
        raise _Fail(1, f"report does not match {args.file}: {exc}") from None
    sys.stdout.write(format_results(results))
    failed = failed or not all(r.ok for r in results)
    return 2 if failed else 0


def cmd_render(args):
    family = _read(args.file)
    witness = _witness(args.witness) if args.witness else None
    report = _report(args.report) if args.report else None
    if args.zoom_delta != 1 and report is None:
        raise _Fail(1, "--zoom-delta needs --report to locate the A'1 segments")
    svg = render_svg(family, witness, report, args.zoom_delta)
    if args.output:
        _write(args.output, svg)
    else:
        sys.stdout.write(svg)
    return 0


def cmd_gen(args):
    kind, rest = args.kind, args.params
    try:
        if kind == "random-disjoint":
            if len(rest) != 2:
                raise _Fail(1, "usage: gen random-disjoint N SEED")
            family = corpus.random_disjoint(int(rest[0]), int(rest[1]))
        elif kind == "staircase":
            if len(rest) != 1:
                raise _Fail(1, "usage: gen staircase INCIDENCES")
            family = corpus.staircase(int(rest[0]))
        elif kind in corpus.CORPUS:
            if rest:
                raise _Fail(1, f"gen {kind} takes no parameters")
            family = corpus.CORPUS[kind]()
        else:
            raise _Fail(1, f"unknown generator {kind!r}")
    except ValueError as exc:
        raise _Fail(1, str(exc)) from None
    sys.stdout.write(serialize(family))
    return 0


def cmd_graph(args):
    family = _read(args.file)
    graph = visibility_graph(family)
    for i, p in enumerate(graph.vertices):
        print(f"v {i} {format_rat(p.x)} {format_rat(p.y)}")
    sys.stdout.write("".join(f"e {i} {j}\n" for i, j in sorted(graph.edges)))
    return 0


class _Parser(argparse.ArgumentParser):
    # usage errors share exit code 1 with I/O errors; 2 means "invalid input"
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(1, f"{self.prog}: error: {message}\n")


def build_parser() -> argparse.ArgumentParser:
    ap = _Parser(prog="seglink", description=__doc__.splitlines()[0])
    sub = ap.add_subparsers(dest="command", required=True)

    p = sub.add_parser("validate", help="check the declared disjointness class")
    p.add_argument("file")
    p.set_defaults(func=cmd_validate)

    p = sub.add_parser("solve", help="decide whether the segments link into a simple circuit/path")
    p.add_argument("mode", choices=["circuit", "path"])
    p.add_argument("file")
    p.add_argument("--oracle", action="store_true", help="brute-force enumeration (small inputs only)")
    p.add_argument("--witness", metavar="OUT", help="write the canonical witness here")
    p.set_defaults(func=cmd_solve)

    p = sub.add_parser("transform", help="replace incidences by gadgets")
    p.add_argument("mode", choices=["circuit", "path"])
    p.add_argument("infile")
    p.add_argument("outfile")
    p.add_argument("--report", metavar="JSON", help="write the gadget report sidecar")
    p.add_argument("--delta", help="override delta (e.g. 1/50); skips the disjointness self-check")
    p.set_defaults(func=cmd_transform)

    p = sub.add_parser("verify", help="re-check the gadget lemmas on a transform output")
    p.add_argument("file")
    p.add_argument("--report", metavar="JSON")
    p.add_argument("--witness", metavar="W")
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("render", help="SVG drawing")
    p.add_argument("file")
    p.add_argument("--witness", metavar="W")
    p.add_argument("--report", metavar="JSON")
    p.add_argument("--zoom-delta", type=float, default=1.0, metavar="K")
    p.add_argument("-o", "--output")
    p.set_defaults(func=cmd_render)

    p = sub.add_parser("gen", help="print a corpus instance: l, rect, nested, staircase K, random-disjoint N SEED")
    p.add_argument("kind")
    p.add_argument("params", nargs="*")
    p.set_defaults(func=cmd_gen)

    p = sub.add_parser("graph", help="dump the endpoint visibility graph")
    p.add_argument("file")
    p.set_defaults(func=cmd_graph)
    return ap


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        code = args.func(args)
    except _Fail as exc:
        print(f"seglink: {exc}", file=sys.stderr)
        code = exc.code
    sys.stdout.flush()
    return code


if __name__ == "__main__":
    sys.exit(main())
