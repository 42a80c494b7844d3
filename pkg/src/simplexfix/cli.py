"""Command-line frontend.

Subcommands: ``decide``, ``extensions``, ``canon``, ``count-classes``,
``enumerate-classes``, ``scan``, ``witness``, ``sample``.  Configuration
arguments are file paths (``-`` for stdin) in the text or JSON format of
:mod:`simplexfix.configio`.

Exit codes: 0 success, 1 usage error, 2 unparseable input (with
``line:column`` diagnostics).  Flag defaults honor environment variables
``SIMPLEXFIX_FORMAT``, ``SIMPLEXFIX_SEED``, ``SIMPLEXFIX_SAMPLES`` and
``SIMPLEXFIX_THREADS``.  Identical invocations print byte-identical
output regardless of ``--threads``.
"""

from __future__ import annotations

import argparse
import json
import os
import sys

from . import equivalence, landmark
from .configio import (
    InputFormatError,
    assignment_to_json,
    configuration_to_json,
    parse_configuration,
    render_configuration_text,
)
from .engine import (
    NotNonFixedError,
    Status,
    build_witness,
    decide,
    sample_signs,
)
from .orders import configuration_extensions

USAGE_ERROR = 1
INPUT_ERROR = 2


class _Parser(argparse.ArgumentParser):
    def error(self, message):  # argparse defaults to exit code 2
        self.print_usage(sys.stderr)
        self.exit(USAGE_ERROR, f"{self.prog}: error: {message}\n")


def _env_default(name: str, fallback, cast=str):
    raw = os.environ.get(f"SIMPLEXFIX_{name}")
    if raw is None:
        return fallback
    try:
        return cast(raw)
    except ValueError:
        return fallback


def _add_common(parser: _Parser) -> None:
    parser.add_argument(
        "--format",
        choices=("text", "json"),
        default=_env_default("FORMAT", "text"),
        help="output format (default text; env SIMPLEXFIX_FORMAT)",
    )


def _add_sampling(parser: _Parser) -> None:
    parser.add_argument(
        "--seed",
        type=int,
        default=_env_default("SEED", 0, int),
        help="RNG seed (default 0; env SIMPLEXFIX_SEED)",
    )
    parser.add_argument(
        "--samples",
        type=int,
        default=_env_default("SAMPLES", 1000, int),
        help="sample count (default 1000; env SIMPLEXFIX_SAMPLES)",
    )


def build_parser() -> _Parser:
    parser = _Parser(prog="simplexfix", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("decide", help="decide fixity of a configuration")
    p.add_argument("config", help="configuration file ('-' for stdin)")
    _add_common(p)
    _add_sampling(p)
    p.add_argument(
        "--debug-crosscheck",
        action="store_true",
        help="at n=4, verify the three characterizations agree",
    )

    p = sub.add_parser("extensions", help="list the linear extensions of a configuration")
    p.add_argument("config")
    _add_common(p)

    p = sub.add_parser("canon", help="canonical form and the group element reaching it")
    p.add_argument("config")
    _add_common(p)

    p = sub.add_parser("count-classes", help="number of equivalence classes of linear configurations")
    p.add_argument("n", type=int)
    p.add_argument("--allow-long", action="store_true", help="permit the n=6 computation")
    _add_common(p)

    p = sub.add_parser("enumerate-classes", help="one representative per equivalence class")
    p.add_argument("n", type=int)
    p.add_argument("--allow-long", action="store_true", help="permit the n=5 enumeration")
    _add_common(p)

    p = sub.add_parser("scan", help="decide every (d+1)-subset of a labeled point cloud")
    p.add_argument("csv", help="point cloud CSV ('-' for stdin)")
    _add_common(p)
    p.add_argument("--jitter", type=int, metavar="SEED", default=None,
                   help="break coordinate ties by deterministic perturbation (non-exact)")
    p.add_argument("--threads", type=int, default=_env_default("THREADS", 1, int),
                   help="worker threads (default 1; env SIMPLEXFIX_THREADS)")

    p = sub.add_parser("witness", help="construct an exact opposite-orientation witness pair")
    p.add_argument("config")
    _add_common(p)

    p = sub.add_parser("sample", help="histogram of determinant signs over random satisfying assignments")
    p.add_argument("config")
    _add_common(p)
    _add_sampling(p)
    p.add_argument("--threads", type=int, default=_env_default("THREADS", 1, int),
                   help="worker threads (default 1; env SIMPLEXFIX_THREADS)")

    return parser


def _read_source(path: str) -> str:
    if path == "-":
        return sys.stdin.read()
    try:
        with open(path, "r", encoding="utf-8") as handle:
            return handle.read()
    except OSError as exc:
        raise InputFormatError(str(exc)) from None


def _load_configuration(path: str):
    return parse_configuration(_read_source(path))


def _print_verdict_text(verdict) -> None:
    if verdict.status is Status.FIXED:
        print(f"fixed {verdict.sign}")
    elif verdict.status is Status.NON_FIXED:
        print("non_fixed")
    elif verdict.frontier:
        print("unknown (conjecture frontier)")
    else:
        print("unknown")


def _cmd_decide(args) -> int:
    cfg = _load_configuration(args.config)
    verdict = decide(
        cfg,
        debug_crosscheck=args.debug_crosscheck,
        frontier_samples=args.samples,
        seed=args.seed,
    )
    if args.format == "json":
        print(json.dumps(verdict.to_json(), sort_keys=True))
    else:
        _print_verdict_text(verdict)
    return 0


def _cmd_extensions(args) -> int:
    cfg = _load_configuration(args.config)
    extensions = list(configuration_extensions(cfg))
    if args.format == "json":
        print(json.dumps([configuration_to_json(e) for e in extensions]))
    else:
        print("\n\n".join(render_configuration_text(e) for e in extensions))
    return 0


def _cmd_canon(args) -> int:
    cfg = _load_configuration(args.config)
    canon, g = equivalence.canonical_form(cfg)  # ValueError on partial input
    element = {
        "axis_source": list(g.axis_source),
        "label_perm": list(g.label_perm),
        "reversals": [bool(b) for b in g.reversals],
        "parity": str(equivalence.sign_parity(g)),
    }
    if args.format == "json":
        print(json.dumps({"canonical": configuration_to_json(canon), "group_element": element},
                         sort_keys=True))
    else:
        print(render_configuration_text(canon))
        print(f"# mapped by axes={element['axis_source']} labels={element['label_perm']} "
              f"reversals={element['reversals']} parity={element['parity']}")
    return 0


def _cmd_count_classes(args) -> int:
    if args.n >= 6 and not args.allow_long:
        print("simplexfix: count-classes 6 needs --allow-long", file=sys.stderr)
        return USAGE_ERROR
    count = equivalence.count_classes(args.n)
    if args.format == "json":
        print(json.dumps({"n": args.n, "classes": count}))
    else:
        print(count)
    return 0


def _cmd_enumerate_classes(args) -> int:
    reps = equivalence.enumerate_classes(args.n, allow_long=args.allow_long)
    if args.format == "json":
        print(json.dumps([configuration_to_json(r) for r in reps]))
    else:
        print("\n\n".join(render_configuration_text(r) for r in reps))
    return 0


def _cmd_scan(args) -> int:
    cloud = landmark.PointCloud.from_csv(_read_source(args.csv))
    report = landmark.scan(cloud, threads=args.threads, jitter_seed=args.jitter)
    if args.format == "json":
        for obj in report.to_json_objects():
            print(json.dumps(obj, sort_keys=True))
    else:
        print(report.to_text())
    return 0


def _cmd_witness(args) -> int:
    cfg = _load_configuration(args.config)
    try:
        pair = build_witness(cfg)
    except NotNonFixedError as exc:
        print(f"simplexfix: {exc}", file=sys.stderr)
        return USAGE_ERROR
    payload = {"plus": assignment_to_json(pair.plus), "minus": assignment_to_json(pair.minus)}
    if args.format == "json":
        print(json.dumps(payload, sort_keys=True))
    else:
        for side in ("plus", "minus"):
            print(f"{side}:")
            for lab, coords in payload[side].items():
                rendered = " ".join(f"{a}={v}" for a, v in coords.items())
                print(f"  {lab}: {rendered}")
    return 0


def _cmd_sample(args) -> int:
    cfg = _load_configuration(args.config)
    histogram = sample_signs(cfg, args.seed, args.samples, threads=args.threads)
    if args.format == "json":
        print(json.dumps(histogram, sort_keys=True))
    else:
        print(f"pos={histogram['pos']} neg={histogram['neg']} zero={histogram['zero']}")
    return 0


_COMMANDS = {
    "decide": _cmd_decide,
    "extensions": _cmd_extensions,
    "canon": _cmd_canon,
    "count-classes": _cmd_count_classes,
    "enumerate-classes": _cmd_enumerate_classes,
    "scan": _cmd_scan,
    "witness": _cmd_witness,
    "sample": _cmd_sample,
}


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return _COMMANDS[args.command](args)
    except InputFormatError as exc:
        print(f"simplexfix: {exc.location()}{exc}", file=sys.stderr)
        return INPUT_ERROR
    except ValueError as exc:
        print(f"simplexfix: {exc}", file=sys.stderr)
        return USAGE_ERROR


if __name__ == "__main__":
    sys.exit(main())
