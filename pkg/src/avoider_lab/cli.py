"""Command-line front end: counting, mapping, paths, series, verification.

Subcommands: count, enumerate, map, unmap, analyze, paths, series, verify.
Formats are json | csv | bfile for sequence tables and text | json for
analysis output.  Exit codes: 0 success, 1 domain/verification failure,
2 usage error.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from typing import Sequence

from . import bijection, paths, series, verify
from .errors import DomainError, InvalidInputError
from .perm import count_avoiders, enumerate_avoiders, format_perm, parse_perm

COUNT_MAX_N = 12
VERIFY_MAX_N = 10
SCHEMA = "v1"


def _parse_patterns(text: str) -> tuple[tuple[int, ...], ...]:
    """Comma-separated compact pattern forms, e.g. '4321,3241'."""
    tokens = [tok for tok in text.split(",") if tok]
    if not tokens:
        raise InvalidInputError("at least one pattern is required")
    return tuple(parse_perm(tok) for tok in tokens)


def _default_threads() -> int:
    env = os.environ.get("AVOIDER_LAB_THREADS")
    if env:
        try:
            return max(1, int(env))
        except ValueError:
            raise InvalidInputError(f"AVOIDER_LAB_THREADS={env!r} is not an integer") from None
    return os.cpu_count() or 1


def _emit_sequence(values: list[int], fmt: str, offset: int, meta: dict) -> str:
    if fmt == "json":
        return json.dumps({"schema": SCHEMA, **meta, "values": values})
    if fmt == "csv":
        label = meta.get("csv_label", "value")
        lines = [f"n,{label}"]
        lines.extend(f"{offset + i},{v}" for i, v in enumerate(values))
        return "\n".join(lines)
    if fmt == "bfile":
        return "\n".join(series.bfile_lines(values, offset))
    raise InvalidInputError(f"unknown format {fmt!r}")


def _triple_text(triple: dict) -> str:
    if triple["degenerate"]:
        return "(degenerate, c=1)"
    c = "inf" if triple["c"] is None else str(triple["c"])
    return f"(a={triple['a']}, b={triple['b']}, c={c})"


def _seq_text(values: Sequence[int]) -> str:
    return ",".join(str(v) for v in values) if values else "(empty)"


def _parse_heights(text: str) -> tuple[int, ...]:
    text = text.strip()
    if not text:
        return ()
    try:
        return tuple(int(tok) for tok in text.split(","))
    except ValueError:
        raise InvalidInputError(f"cannot parse heights from {text!r}") from None


def _cmd_count(args: argparse.Namespace, parser: argparse.ArgumentParser) -> int:
    patterns = _parse_patterns(args.patterns)
    if args.max_n < 0:
        parser.error("--max-n must be >= 0")
    if args.max_n > COUNT_MAX_N and not args.unsafe_no_limit:
        parser.error(
            f"--max-n {args.max_n} exceeds the guardrail {COUNT_MAX_N}; "
            "pass --unsafe-no-limit to override"
        )
    counts = [count_avoiders(n, patterns, args.indecomposable) for n in range(args.max_n + 1)]
    meta = {
        "patterns": [format_perm(p) for p in patterns],
        "indecomposable": args.indecomposable,
        "max_n": args.max_n,
        "csv_label": "count",
    }
    print(_emit_sequence(counts, args.format, args.offset, meta))
    return 0


def _cmd_enumerate(args: argparse.Namespace, parser: argparse.ArgumentParser) -> int:
    patterns = _parse_patterns(args.patterns)
    if args.n < 0:
        parser.error("--n must be >= 0")
    if args.n > COUNT_MAX_N and not args.unsafe_no_limit:
        parser.error(
            f"--n {args.n} exceeds the guardrail {COUNT_MAX_N}; pass --unsafe-no-limit to override"
        )
    stream = enumerate_avoiders(args.n, patterns, args.indecomposable)
    if args.format == "json":
        perms = [list(p) for p in stream]
        print(
            json.dumps(
                {
                    "schema": SCHEMA,
                    "n": args.n,
                    "patterns": [format_perm(p) for p in patterns],
                    "indecomposable": args.indecomposable,
                    "perms": perms,
                }
            )
        )
    else:
        for p in stream:
            print(format_perm(p))
    return 0


def _analysis_text(dump: dict) -> str:
    lines = [
        f"perm={_seq_text(dump['perm'])}",
        f"blue={_seq_text(dump['blue'])}",
        f"peak_blue={dump['peak_blue'] if dump['peak_blue'] is not None else '(none)'}",
        f"triple={_triple_text(dump['triple'])}",
        f"insertion_list={_seq_text(dump['insertion_list'])}",
        f"q={_seq_text(dump['image']['q'])}",
        f"heights={_seq_text(dump['image']['heights'])}",
    ]
    return "\n".join(lines)


def _cmd_map(args: argparse.Namespace, parser: argparse.ArgumentParser) -> int:
    dump = bijection.analyze(parse_perm(args.perm))
    if args.format == "json":
        print(json.dumps({"schema": SCHEMA, **dump}))
    else:
        print(_analysis_text(dump))
    return 0


def _cmd_unmap(args: argparse.Namespace, parser: argparse.ArgumentParser) -> int:
    q = parse_perm(args.perm)
    heights = _parse_heights(args.heights)
    p = bijection.inverse_map(q, heights)
    if args.format == "json":
        print(
            json.dumps(
                {"schema": SCHEMA, "q": list(q), "heights": list(heights), "perm": list(p)}
            )
        )
    else:
        print(format_perm(p))
    return 0


def _cmd_paths(args: argparse.Namespace, parser: argparse.ArgumentParser) -> int:
    if args.to_heights is not None:
        path = paths.parse_path(args.to_heights)
        heights = paths.path_to_heights(path)
        if args.format == "json":
            downs = path.count("D")
            print(
                json.dumps(
                    {
                        "schema": SCHEMA,
                        "path": path,
                        "heights": list(heights),
                        "downsteps": downs,
                        "surplus": len(path) - 2 * downs,
                    }
                )
            )
        else:
            print(_seq_text(heights))
    else:
        if args.ups is None:
            parser.error("--from-heights requires --ups")
        heights = _parse_heights(args.from_heights)
        path = paths.heights_to_path(heights, args.ups)
        if args.format == "json":
            print(
                json.dumps(
                    {"schema": SCHEMA, "heights": list(heights), "ups": args.ups, "path": path}
                )
            )
        else:
            print(path)
    return 0


def _cmd_series(args: argparse.Namespace, parser: argparse.ArgumentParser) -> int:
    if args.terms < 1:
        parser.error("--terms must be >= 1")
    order = args.terms - 1
    which = args.which.upper() if args.which.lower() in ("f", "g") else args.which.lower()
    if which == "F":
        values = list(series.f_series(order).coefficients)
    elif which == "G":
        values = list(series.g_series(order).coefficients)
    elif which == "catalan":
        values = list(series.catalan_series(order).coefficients)
    else:
        parser.error(f"--which must be F, G, or catalan (got {args.which!r})")
    meta = {"which": which, "terms": args.terms, "csv_label": "coefficient"}
    print(_emit_sequence(values, args.format, args.offset, meta))
    return 0


def _cmd_verify(args: argparse.Namespace, parser: argparse.ArgumentParser) -> int:
    if args.max_n < 0:
        parser.error("--max-n must be >= 0")
    if args.max_n > VERIFY_MAX_N and not args.unsafe_no_limit:
        parser.error(
            f"--max-n {args.max_n} exceeds the guardrail {VERIFY_MAX_N}; "
            "pass --unsafe-no-limit to override"
        )
    threads = args.threads if args.threads is not None else _default_threads()
    report = verify.run_verification(args.max_n, threads=threads)
    print(json.dumps(report, indent=2))
    return 0 if report["all_passed"] else 1


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="avoider-lab",
        description=(
            "Indecomposable {4321,3241}-avoiding permutations: height-list "
            "bijection, lattice paths, exact series, exhaustive verification."
        ),
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p_count = sub.add_parser("count", help="count avoiders per length")
    p_count.add_argument("--patterns", required=True, help="comma-separated compact patterns, e.g. 4321,3241")
    p_count.add_argument("--max-n", type=int, required=True)
    p_count.add_argument("--indecomposable", action="store_true")
    p_count.add_argument("--format", choices=("json", "csv", "bfile"), default="csv")
    p_count.add_argument("--offset", type=int, default=0, help="index label of the first emitted value")
    p_count.add_argument("--unsafe-no-limit", action="store_true")
    p_count.set_defaults(func=_cmd_count)

    p_enum = sub.add_parser("enumerate", help="list avoiders of one length")
    p_enum.add_argument("--patterns", required=True)
    p_enum.add_argument("--n", type=int, required=True)
    p_enum.add_argument("--indecomposable", action="store_true")
    p_enum.add_argument("--format", choices=("json", "csv"), default="csv")
    p_enum.add_argument("--unsafe-no-limit", action="store_true")
    p_enum.set_defaults(func=_cmd_enumerate)

    for name, help_text in (("map", "map an avoider to its (q, heights) image"),
                            ("analyze", "full analysis dump of an avoider")):
        p_map = sub.add_parser(name, help=help_text)
        p_map.add_argument("--perm", required=True)
        p_map.add_argument("--format", choices=("text", "json"), default="text")
        p_map.set_defaults(func=_cmd_map)

    p_unmap = sub.add_parser("unmap", help="rebuild an avoider from (q, heights)")
    p_unmap.add_argument("--perm", required=True, help="the indecomposable 321-avoider q")
    p_unmap.add_argument("--heights", default="", help="comma-separated heights; empty for none")
    p_unmap.add_argument("--format", choices=("text", "json"), default="text")
    p_unmap.set_defaults(func=_cmd_unmap)

    p_paths = sub.add_parser("paths", help="convert paths to height lists and back")
    group = p_paths.add_mutually_exclusive_group(required=True)
    group.add_argument("--to-heights", metavar="PATH", help="path string over U and D")
    group.add_argument("--from-heights", metavar="HEIGHTS", help="comma-separated heights")
    p_paths.add_argument("--ups", type=int, help="surplus upstep count for --from-heights")
    p_paths.add_argument("--format", choices=("text", "json"), default="text")
    p_paths.set_defaults(func=_cmd_paths)

    p_series = sub.add_parser("series", help="print series coefficients")
    p_series.add_argument("--which", required=True, help="F, G, or catalan")
    p_series.add_argument("--terms", type=int, required=True)
    p_series.add_argument("--format", choices=("json", "csv", "bfile"), default="csv")
    p_series.add_argument("--offset", type=int, default=0)
    p_series.set_defaults(func=_cmd_series)

    p_verify = sub.add_parser("verify", help="run the exhaustive invariant suites")
    p_verify.add_argument("--max-n", type=int, required=True)
    p_verify.add_argument("--threads", type=int, default=None,
                          help="worker count (default: AVOIDER_LAB_THREADS or machine parallelism)")
    p_verify.add_argument("--unsafe-no-limit", action="store_true")
    p_verify.set_defaults(func=_cmd_verify)

    return parser


def main(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args, parser)
    except (DomainError, InvalidInputError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


def entry_point() -> None:
    sys.exit(main())


if __name__ == "__main__":
    entry_point()
