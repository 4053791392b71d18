"""``rcmforge`` command-line front end.

Input files are DSL sources (any extension) or canonical JSON documents
(``.json``). Exit status: 0 success, 1 validation or parse failures, 2 usage
or I/O errors.
"""

from __future__ import annotations

import argparse
import sys
from dataclasses import dataclass
from pathlib import Path

from . import __version__
from .canonical import load_canonical
from .coverage import CorpusEntry, coverage_matrix, format_csv, format_text, load_registry
from .dsl import parse_corpus
from .errors import RCMError
from .frames import ENV_VAR, FrameDatabase, bind_predicate, default_frames, dumps_frames, load_frames
from .model import Requirement, Severity, iter_predicates, validate_primitive
from .transform import Target, transform

EXIT_OK, EXIT_FAIL, EXIT_USAGE = 0, 1, 2


class _Usage(Exception):
    pass


@dataclass
class Loaded:
    path: str
    requirements: list[Requirement]
    error: str | None = None
    io_error: bool = False


def _frames(path: str | None) -> FrameDatabase:
    try:
        return load_frames(path) if path else default_frames()
    except OSError as exc:
        raise _Usage(f"cannot read frame database: {exc}") from None
    except RCMError as exc:
        raise _Usage(str(exc)) from None


def _load(path: str, db: FrameDatabase) -> Loaded:
    try:
        text = Path(path).read_text(encoding="utf-8")
    except (OSError, UnicodeDecodeError) as exc:
        return Loaded(path, [], f"cannot read: {exc}", io_error=True)
    try:
        if path.endswith(".json"):
            return Loaded(path, [load_canonical(text)])
        return Loaded(path, parse_corpus(text, db))
    except RCMError as exc:
        hint = ""
        if hasattr(exc, "lemma") and hasattr(exc, "arity"):
            hint = f" (register a frame {exc.lemma}/{exc.arity})"
        return Loaded(path, [], f"{exc}{hint}")


def _labels(req: Requirement):
    for k, pr in enumerate(req.primitives, 1):
        yield (req.id if len(req.primitives) == 1 else f"{req.id}.pr{k}"), pr


def _status(loaded: list[Loaded], ok: bool) -> int:
    if any(x.io_error for x in loaded):
        return EXIT_USAGE
    return EXIT_OK if ok else EXIT_FAIL


# -- commands -------------------------------------------------------------------


def cmd_validate(args, out) -> int:
    db = _frames(args.frames)
    loaded = [_load(p, db) for p in args.files]
    ok = True
    for item in loaded:
        if item.error:
            ok = False
            out.write(f"{item.path}: ERROR {item.error}\n")
            continue
        for req in item.requirements:
            for label, pr in _labels(req):
                report = validate_primitive(pr)
                ok &= report.passed
                out.write(f"{item.path}: {label}: {report.status.value}\n")
                for issue in report.issues:
                    if issue.severity is Severity.INFO and not args.verbose:
                        continue
                    out.write(f"  {issue.severity.value}: {issue.code} at {issue.path}: {issue.message}\n")
    return _status(loaded, ok)


def _targets(value: str) -> list[Target]:
    try:
        return [Target.parse(t.strip()) for t in value.split(",") if t.strip()]
    except ValueError:
        raise _Usage(f"unknown target in {value!r}; expected mtl and/or ctl") from None


def format_block(label: str, result, ascii_only: bool = False) -> str:
    dropped = ", ".join(f"{d.prop} (rule {d.rule})" for d in result.dropped) or "-"
    return (
        f"== {label} [{result.target.value}]\n"
        f"completeness: {result.completeness.value}\n"
        f"dropped: {dropped}\n"
        f"formula: {result.render(ascii_only)}\n"
    )


def cmd_transform(args, out) -> int:
    targets = _targets(args.to)
    if not targets:
        raise _Usage("--to needs at least one target")
    db = _frames(args.frames)
    loaded = [_load(p, db) for p in args.files]
    ok = True
    blocks = []
    for item in loaded:
        if item.error:
            ok = False
            blocks.append(f"!! {item.path}: {item.error}\n")
            continue
        for req in item.requirements:
            for label, pr in _labels(req):
                report = validate_primitive(pr)
                if not report.passed:
                    ok = False
                    msgs = "; ".join(i.message for i in report.failures())
                    blocks.append(f"!! {label}: invalid: {msgs}\n")
                    continue
                for target in targets:
                    result = transform(pr, target, wrap_factual=args.wrap_factual)
                    blocks.append(format_block(label, result, args.ascii))
    out.write("\n".join(blocks))
    return _status(loaded, ok)


def cmd_coverage(args, out) -> int:
    db = _frames(args.frames)
    approaches = None
    if args.registry:
        try:
            approaches = load_registry(args.registry)
        except OSError as exc:
            raise _Usage(f"cannot read registry: {exc}") from None
        except RCMError as exc:
            raise _Usage(str(exc)) from None
    loaded = [_load(p, db) for p in args.files]
    entries = []
    ok = True
    for item in loaded:
        if item.error:
            ok = False
            sys.stderr.write(f"{item.path}: ERROR {item.error}\n")
            continue
        for req in item.requirements:
            entries.extend(CorpusEntry(label, pr) for label, pr in _labels(req))
    if not entries:
        raise _Usage("empty corpus")
    stats = coverage_matrix(entries, approaches)
    out.write(format_csv(stats) if args.format == "csv" else format_text(stats))
    return _status(loaded, ok and not stats.invalid)


def cmd_frames(args, out) -> int:
    db = _frames(args.db)
    if args.action == "list":
        out.write(dumps_frames(db))
        return EXIT_OK
    # check: the database loads; optionally, every predicate in the given files binds
    bad = 0
    for path in args.files:
        item = _load(path, db)
        if item.error:
            out.write(f"{path}: ERROR {item.error}\n")
            bad += 1
            continue
        for req in item.requirements:
            for pr in req.primitives:
                for p in iter_predicates(pr):
                    try:
                        bind_predicate(p, db)
                    except RCMError as exc:
                        out.write(f"{path}: {req.id}: {exc}\n")
                        bad += 1
    out.write(f"ok: {len(db)} frame(s)\n" if not bad else f"{bad} problem(s)\n")
    return EXIT_OK if not bad else EXIT_FAIL


# -- argument parsing -------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="rcmforge", description="Capture, validate and formalise requirements.")
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    frames_help = f"frame database file (default: ${ENV_VAR} or the built-in seed)"

    p = sub.add_parser("validate", help="parse and validate requirement files")
    p.add_argument("files", nargs="+")
    p.add_argument("--frames", help=frames_help)
    p.add_argument("-v", "--verbose", action="store_true", help="also list informational notes")
    p.set_defaults(func=cmd_validate)

    p = sub.add_parser("transform", help="compile requirements to MTL and/or CTL")
    p.add_argument("files", nargs="+")
    p.add_argument("--to", default="mtl,ctl", help="comma-separated targets (mtl, ctl)")
    p.add_argument("--ascii", action="store_true", help="write 'exists' instead of the existential glyph")
    p.add_argument("--wrap-factual", action="store_true", help="wrap action-only rules in G/AG")
    p.add_argument("--frames", help=frames_help)
    p.set_defaults(func=cmd_transform)

    p = sub.add_parser("coverage", help="coverage of legacy template approaches over a corpus")
    p.add_argument("files", nargs="+")
    p.add_argument("--registry", help="approach registry file (default: built-in A1-A15)")
    p.add_argument("--format", choices=("text", "csv"), default="text")
    p.add_argument("--frames", help=frames_help)
    p.set_defaults(func=cmd_coverage)

    p = sub.add_parser("frames", help="inspect a frame database")
    p.add_argument("action", choices=("list", "check"))
    p.add_argument("files", nargs="*", help="with 'check': requirement files whose predicates must bind")
    p.add_argument("--db", help=frames_help)
    p.set_defaults(func=cmd_frames)
    return parser


def main(argv=None, out=None) -> int:
    out = sys.stdout if out is None else out
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_OK if exc.code == 0 else EXIT_USAGE
    try:
        return args.func(args, out)
    except _Usage as exc:
        sys.stderr.write(f"rcmforge: error: {exc}\n")
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
