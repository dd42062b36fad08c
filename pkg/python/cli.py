#!/usr/bin/env python3
"""
QGR command line.
Runs the verification suites and prints deterministic reports on stdout;
logging goes to stderr.
"""

import argparse
import json
import logging
import os
import sys
from pathlib import Path

from dotenv import load_dotenv

# Load environment variables from .env file
# Try both the current directory and the project root
load_dotenv()
load_dotenv(os.path.join(os.path.dirname(os.path.dirname(os.path.abspath(__file__))), ".env"))

from algebra.grassmann import GrassmannContext, IndexSet, minor
from algebra.groupoid import parse_map
from algebra.qmatrix import quasi_commutation_exponent
from algebra.twist import CocycleKind, eval_cocycle
from combinatorics.hspec import weakly_separated
from engine import ConfigManager, VerificationEngine, render_text
from models import VERSION, RunConfig, SuiteReport

logger = logging.getLogger("qgr.cli")

LOG_FORMAT = "%(asctime)s - %(name)s - %(levelname)s - %(message)s"


def setup_logging(level: str, log_file: str = "") -> None:
    handlers: list[logging.Handler] = [logging.StreamHandler(sys.stderr)]
    if log_file:
        path = Path(log_file).expanduser()
        path.parent.mkdir(parents=True, exist_ok=True)
        handlers.append(logging.FileHandler(path, mode="a"))
    logging.basicConfig(level=level.upper(), format=LOG_FORMAT, handlers=handlers, force=True)


def _int_list(text: str) -> list[int]:
    return [int(part) for part in text.replace(" ", "").split(",") if part]


def _common_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--m", type=int, default=2, help="Plane dimension")
    common.add_argument("--n", type=int, default=4, help="Ambient dimension")
    common.add_argument("--seed", type=int, default=None)
    common.add_argument("--trials", type=int, default=None)
    common.add_argument("--grid-bound", type=int, default=None, help="Entries drawn from -G..G")
    common.add_argument("--level-bound", type=int, default=None, help="Largest |l| for twist levels (0 = 2n)")
    common.add_argument("--threads", type=int, default=None)
    common.add_argument("--format", choices=["json", "text"], default=None)
    common.add_argument("--config", type=Path, default=None, help="Config file (overrides $QGR_CONFIG)")
    common.add_argument("--log-level", default=None)
    return common


def build_parser() -> argparse.ArgumentParser:
    common = _common_parser()
    parser = argparse.ArgumentParser(prog="qgr", description="Quantum Grassmannian verification suites")
    parser.add_argument("--version", action="version", version=f"qgr {VERSION}")
    sub = parser.add_subparsers(dest="command", required=True)

    nf = sub.add_parser("nf", parents=[common], help="Normal forms of expressions read from stdin")
    nf.add_argument("--check", action="store_true", help="Run the rewriting suite instead")

    minor_cmd = sub.add_parser("minor", parents=[common], help="Quantum minors and consecutive-minor normality")
    minor_cmd.add_argument("--set", dest="index_set", default=None, help="Print the expansion of one minor")

    qcomm = sub.add_parser("qcomm", parents=[common], help="Quasi-commutation against weak separability")
    qcomm.add_argument("--pair", nargs=2, default=None, metavar=("I", "J"))

    sub.add_parser("relations", parents=[common], help="Degree-2 relation basis")

    twist = sub.add_parser("twist", help="Cocycles and twisted products")
    twist_sub = twist.add_subparsers(dest="action", required=True)
    twist_sub.add_parser("verify", parents=[common])
    cocycle = twist_sub.add_parser("cocycle", parents=[common])
    cocycle.add_argument("--kind", choices=[k.value for k in CocycleKind], required=True)
    cocycle.add_argument("--s", type=_int_list, required=True)
    cocycle.add_argument("--t", type=_int_list, required=True)

    groupoid = sub.add_parser("groupoid", help="Rotations and reflections")
    groupoid_sub = groupoid.add_subparsers(dest="action", required=True)
    verify = groupoid_sub.add_parser("verify", parents=[common])
    verify.add_argument("--map", dest="maps", action="append", default=None, help="theta<l> or omega<l>")
    image = groupoid_sub.add_parser("image", parents=[common])
    image.add_argument("--map", required=True)
    image.add_argument("--set", dest="index_set", required=True)

    dehom = sub.add_parser("dehom", help="Dehomogenisation at consecutive minors")
    dehom_sub = dehom.add_subparsers(dest="action", required=True)
    dcheck = dehom_sub.add_parser("check", parents=[common])
    dcheck.add_argument("--alpha", type=int, action="append", default=None)
    dtables = dehom_sub.add_parser("tables", parents=[common])
    dtables.add_argument("--alpha", type=int, default=1)

    hs = sub.add_parser("hspec", help="Dihedral orbits on vanishing patterns")
    hs_sub = hs.add_subparsers(dest="action", required=True)
    hs_sub.add_parser("orbits", parents=[common])
    hs_sub.add_parser("le-count", parents=[common])

    t = sub.add_parser("tnn", help="Totally nonnegative matrices")
    t_sub = t.add_subparsers(dest="action", required=True)
    t_sub.add_parser("verify", parents=[common])

    sub.add_parser("all", parents=[common], help="Every suite")

    config = sub.add_parser("config", help="Configuration file")
    config_sub = config.add_subparsers(dest="action", required=True)
    init = config_sub.add_parser("init")
    init.add_argument("--path", type=Path, default=None)
    init.add_argument("--force", action="store_true")
    show = config_sub.add_parser("show")
    show.add_argument("--path", type=Path, default=None)
    return parser


def emit(payload: dict | list | str, fmt: str) -> None:
    if isinstance(payload, str):
        sys.stdout.write(payload)
    elif fmt == "json":
        sys.stdout.write(json.dumps(payload, indent=2, sort_keys=True) + "\n")
    else:
        sys.stdout.write(_text_lines(payload) + "\n")


def _text_lines(payload: dict | list, indent: int = 0) -> str:
    pad = "  " * indent
    if isinstance(payload, list):
        return "\n".join(f"{pad}{item}" for item in payload)
    lines = []
    for key in sorted(payload):
        value = payload[key]
        if isinstance(value, (dict, list)):
            lines.append(f"{pad}{key}:")
            lines.append(_text_lines(value, indent + 1))
        else:
            lines.append(f"{pad}{key}: {value}")
    return "\n".join(lines)


def emit_report(report: SuiteReport, fmt: str) -> int:
    if fmt == "json":
        emit(report.model_dump(mode="json"), "json")
    else:
        emit(render_text(report), "text")
    failure = report.first_failure()
    if failure is None:
        return 0
    suite, check, error = failure
    if check is not None:
        print(f"FAILED {suite}: {check.name}: {check.residual or 'check failed'}", file=sys.stderr)
    else:
        print(f"FAILED {suite}: {error}", file=sys.stderr)
    return 1


def run_config_from_args(engine: VerificationEngine, args: argparse.Namespace, suite: str) -> RunConfig:
    return engine.run_config(
        m=args.m,
        n=args.n,
        suite=suite,
        seed=args.seed,
        trials=args.trials,
        grid_bound=args.grid_bound,
        level_bound=args.level_bound,
        threads=args.threads,
        format=args.format,
        maps=getattr(args, "maps", None),
        alphas=args.alpha if isinstance(getattr(args, "alpha", None), list) else None,
    )


def dispatch(args: argparse.Namespace, parser: argparse.ArgumentParser) -> int:
    if args.command == "config":
        manager = ConfigManager(args.path)
        if args.action == "init":
            path = manager.init(overwrite=args.force)
            print(path)
        else:
            print(json.dumps({"path": str(manager.config_path), **manager.load()}, indent=2, sort_keys=True))
        return 0

    engine = VerificationEngine(ConfigManager(args.config) if args.config else None)
    if args.command == "nf" and not args.check:
        emit(engine.normal_forms(args.m, args.n, sys.stdin.read().splitlines()), "text")
        return 0

    try:
        rc = run_config_from_args(engine, args, args.command)
        if args.command == "groupoid":
            for text in [args.map] if args.action == "image" else rc.maps:
                parse_map(text)
    except ValueError as e:
        parser.error(str(e))
    fmt = rc.format
    ctx = GrassmannContext(rc.m, rc.n)

    if args.command == "minor" and args.index_set:
        I = ctx.check_set(IndexSet.parse(args.index_set))
        emit({"set": str(I), "minor": str(minor(ctx, I))}, fmt)
        return 0
    if args.command == "qcomm" and args.pair:
        I, J = (ctx.check_set(IndexSet.parse(p)) for p in args.pair)
        emit(
            {
                "pair": [str(I), str(J)],
                "exponent": quasi_commutation_exponent(minor(ctx, I), minor(ctx, J)),
                "weakly_separated": weakly_separated(I, J, ctx.n),
            },
            fmt,
        )
        return 0
    if args.command == "twist" and args.action == "cocycle":
        value = eval_cocycle(ctx.scalars, CocycleKind(args.kind), args.s, args.t)
        emit({"kind": args.kind, "s": args.s, "t": args.t, "value": str(value)}, fmt)
        return 0
    if args.command == "groupoid" and args.action == "image":
        emit(engine.map_image(ctx, args.map, IndexSet.parse(args.index_set)), fmt)
        return 0
    if args.command == "dehom" and args.action == "tables":
        emit(engine.dehom_tables(ctx, args.alpha), fmt)
        return 0
    if args.command == "hspec" and args.action == "le-count":
        emit(engine.le_count(rc.m, rc.n), fmt)
        return 0

    return emit_report(engine.run(rc), fmt)


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)

    log_config = ConfigManager(getattr(args, "config", None) or getattr(args, "path", None)).load()["logging"]
    level = getattr(args, "log_level", None) or os.environ.get("QGR_LOG_LEVEL") or log_config.get("level", "WARNING")
    setup_logging(level, log_config.get("file", ""))

    try:
        return dispatch(args, parser)
    except SystemExit:
        raise
    except Exception as e:
        logger.error(f"{type(e).__name__}: {e}")
        print(f"error: {e}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
