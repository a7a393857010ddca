"""Command-line front end.

Exit codes: 0 hyperoval (or success), 1 not a hyperoval (or a failed check),
2 invalid input, 3 verifiers disagree.
"""

from __future__ import annotations

import argparse
import json
import logging
import sys
from pathlib import Path

from .consensus import DEFAULT_METHODS
from .field_tower import FieldError, make_field
from .fixtures import check_fixture, fixture_dir, load_fixtures, write_fixtures
from .formats import FormatError, decode, dset_csv, dset_json, dset_latex, encode
from .gram import gram_spectrum_report
from .pipeline import TARGETS, convert, to_points, verify_object
from .plane import DirectionCollision, ZeroNotInSet
from .search import SearchConfig, run_search

EXIT_YES, EXIT_NO, EXIT_INVALID, EXIT_DISAGREE = 0, 1, 2, 3

METHOD_FLAGS = {
    "all": DEFAULT_METHODS,
    "geometric": ("geometric",),
    "powersum": ("power_sum_D",),
    "evensol": ("even_solution",),
    "coeff": ("coefficient",),
    "gram": ("gram",),
}
TABLE_QS = (4, 8, 16, 32, 64, 128)

log = logging.getLogger("ovaline")


class InputError(Exception):
    pass


def _emit(obj):
    json.dump(obj, sys.stdout, indent=2, sort_keys=True)
    sys.stdout.write("\n")


def _hex(s: str) -> int:
    return int(s, 16)


def _field(args):
    if args.m is None:
        if args.fpoly is not None or args.delta is not None:
            raise InputError("--fpoly and --delta need --m")
        return None
    try:
        return make_field(args.m, args.fpoly, args.delta)
    except (FieldError, ValueError) as exc:
        raise InputError(str(exc)) from None


def _read_doc(path: str, args):
    try:
        text = sys.stdin.read() if path == "-" else Path(path).read_text()
    except OSError as exc:
        raise InputError(str(exc)) from None
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise InputError(f"{path}: not valid JSON ({exc})") from None
    try:
        return decode(doc, _field(args))
    except FormatError as exc:
        raise InputError(f"{path}: {exc}") from None


def _parse_k(ctx, s: str) -> int:
    """A K element as a packed hex int or as 're,im' hex pair."""
    try:
        if "," in s:
            return ctx.kparse(s.split(","))
        v = int(s, 16)
    except ValueError:
        raise InputError(f"cannot parse K element {s!r}") from None
    if not 0 <= v < ctx.order + 1:
        raise InputError(f"{s} is not an element of K")
    return v


def cmd_dset(args) -> int:
    qs = args.q or list(TABLE_QS)
    for q in qs:
        if q < 4 or q > 4096 or q & (q - 1):
            raise InputError(f"q={q} must be a power of 2 between 4 and 4096")
    if args.format == "csv":
        sys.stdout.write(dset_csv(qs))
    elif args.format == "json":
        _emit(dset_json(qs))
    else:
        sys.stdout.write(dset_latex(qs))
    return EXIT_YES


def cmd_verify(args) -> int:
    ctx, kind, obj = _read_doc(args.input, args)
    try:
        report = verify_object(ctx, kind, obj, METHOD_FLAGS[args.method])
    except (ValueError, ArithmeticError) as exc:
        raise InputError(str(exc)) from None
    _emit(report.to_dict())
    if not report.unanimous:
        log.error("verifiers disagree: %s",
                  {k: r.verdict for k, r in report.reports.items()})
        return EXIT_DISAGREE
    return EXIT_YES if report.verdict else EXIT_NO


def cmd_convert(args) -> int:
    ctx, kind, obj = _read_doc(args.input, args)
    b = _parse_k(ctx, args.translate_first) if args.translate_first is not None else None
    try:
        out_kind, out = convert(ctx, kind, obj, args.to, b, args.normalize)
    except ZeroNotInSet as exc:
        raise InputError(f"{exc}; try --translate-first with one of the set's points") from None
    except DirectionCollision as exc:
        raise InputError(f"no g-function: {exc}") from None
    except ValueError as exc:
        raise InputError(str(exc)) from None
    _emit(encode(ctx, out_kind, out))
    return EXIT_YES


def cmd_search(args) -> int:
    try:
        raw = json.loads(Path(args.config).read_text())
        if args.seed is not None:
            raw["seed"] = args.seed
        if args.threads is not None:
            raw["parallel_shards"] = args.threads
        if args.checkpoint is not None:
            raw["checkpoint"] = args.checkpoint
        cfg = SearchConfig.from_dict(raw)
    except (OSError, json.JSONDecodeError, KeyError, TypeError, ValueError) as exc:
        raise InputError(f"bad search config: {exc}") from None
    outcome = run_search(cfg)
    manifest = outcome.manifest()
    if args.out:
        Path(args.out).write_text(json.dumps(manifest, indent=2, sort_keys=True) + "\n")
    _emit(manifest)
    return EXIT_DISAGREE if outcome.disagreements else EXIT_YES


def cmd_gram(args) -> int:
    ctx, kind, obj = _read_doc(args.input, args)
    try:
        report = gram_spectrum_report(ctx, to_points(ctx, kind, obj))
    except (ValueError, ArithmeticError) as exc:
        raise InputError(str(exc)) from None
    _emit(report)
    return EXIT_YES if report["all_passed"] else EXIT_NO


def cmd_fixtures(args) -> int:
    if args.write:
        for p in write_fixtures(Path(args.write)):
            print(p)
        return EXIT_YES
    fixtures = load_fixtures()
    if not fixtures:
        raise InputError(f"no fixtures found in {fixture_dir()}")
    if args.check:
        failed = 0
        for fx in fixtures:
            ok, _ = check_fixture(fx)
            failed += not ok
            print(f"{'PASS' if ok else 'FAIL'} {fx.name} expected={fx.expected_verdict}")
        return EXIT_YES if failed == 0 else EXIT_NO
    for fx in fixtures:
        print(f"{fx.name}\tq={fx.q}\t{fx.source}\texpected={fx.expected_verdict}")
    return EXIT_YES


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="ovaline", description="Verify and search for hyperovals in PG(2, 2^m).")
    p.add_argument("--m", type=int, help="field degree; F = GF(2^m)")
    p.add_argument("--fpoly", type=_hex, help="defining polynomial of F as a hex bit-vector")
    p.add_argument("--delta", type=_hex, help="constant in i^2 = i + delta, as hex")
    p.add_argument("--seed", type=int, help="seed for random search mode")
    p.add_argument("--threads", type=int, help="search shard parallelism (default 1)")
    p.add_argument("-v", "--verbose", action="store_true")
    sub = p.add_subparsers(dest="command", required=True)

    s = sub.add_parser("dset", help="print the reduced exponent set D/~ for each q")
    s.add_argument("q", type=int, nargs="*", help=f"field sizes (default {' '.join(map(str, TABLE_QS))})")
    s.add_argument("--format", choices=("csv", "json", "latex"), default="csv")
    s.set_defaults(func=cmd_dset)

    s = sub.add_parser("verify", help="run the hyperoval verifiers on an input document")
    s.add_argument("input", help="JSON document, or - for stdin")
    s.add_argument("--method", choices=tuple(METHOD_FLAGS), default="all")
    s.set_defaults(func=cmd_verify)

    s = sub.add_parser("convert", help="convert between representations")
    s.add_argument("input")
    s.add_argument("--to", choices=TARGETS, required=True)
    s.add_argument("--translate-first", metavar="B",
                   help="translate affine points by B (packed hex or 're,im') first")
    s.add_argument("--normalize", action="store_true",
                   help="shift g so it has no zero on the unit circle")
    s.set_defaults(func=cmd_convert)

    s = sub.add_parser("search", help="run a search from a JSON config")
    s.add_argument("config")
    s.add_argument("--out", help="also write the manifest here")
    s.add_argument("--checkpoint", help="JSONL file of completed shards; resumes if present")
    s.set_defaults(func=cmd_search)

    s = sub.add_parser("gram", help="Gram matrix spectrum report")
    s.add_argument("input")
    s.set_defaults(func=cmd_gram)

    s = sub.add_parser("fixtures", help="list, re-check or regenerate reference fixtures")
    g = s.add_mutually_exclusive_group()
    g.add_argument("--list", action="store_true", help="default")
    g.add_argument("--check", action="store_true")
    g.add_argument("--write", metavar="DIR")
    s.set_defaults(func=cmd_fixtures)
    return p


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING,
                        format="%(levelname)s %(name)s: %(message)s")
    try:
        return args.func(args)
    except InputError as exc:
        print(f"ovaline: error: {exc}", file=sys.stderr)
        return EXIT_INVALID


if __name__ == "__main__":
    sys.exit(main())
