"""The ``gpd`` command line tool.

Subcommands: validate, build, monoid, verify, rep, search.  Every command
is deterministic: identical inputs produce byte-identical outputs.  Exit
codes: 0 on success / all checks passing, 1 on a mathematical failure
(an axiom or a verified law fails on the given data), 2 on operational
failure (I/O, malformed input, exceeded caps, usage).
"""

from __future__ import annotations

import argparse
import sys
from dataclasses import dataclass

from . import io
from .census import enumerate_groupoids, principal_converse_search
from .corpus import cyclic
from .endo import DEFAULT_MONOID_CAP, DEFAULT_PRODUCT_CAP, enumerate_monoid, gfun
from .errors import MathError, OperationalError
from .groupoid import (
    disjoint_union,
    is_principal,
    pair_groupoid,
    transformation_groupoid,
    unit_groupoid,
)
from .operators import left_operator, right_operator
from .report import CHECK_IDS, full_report

EXIT_OK = 0
EXIT_MATH = 1
EXIT_OPERATIONAL = 2

DEFAULT_CENSUS_CAP = 6


@dataclass(frozen=True)
class RunConfig:
    command: str
    inputs: tuple[str, ...]
    output: str | None
    cap_monoid: int
    cap_order: int
    fmt: str


def _config(args) -> RunConfig:
    cfg = RunConfig(
        command=args.command,
        inputs=tuple(getattr(args, "paths", ()) or ()),
        output=getattr(args, "output", None),
        cap_monoid=getattr(args, "cap_monoid", DEFAULT_MONOID_CAP),
        cap_order=getattr(args, "cap_order", DEFAULT_CENSUS_CAP),
        fmt=getattr(args, "format", "json"),
    )
    if cfg.cap_monoid < 1 or cfg.cap_order < 1:
        raise OperationalError("caps must be positive")
    return cfg


def _emit(cfg: RunConfig, payload: dict, text_lines):
    if cfg.fmt == "json":
        data = io.dump_bytes(payload)
        if cfg.output:
            with open(cfg.output, "wb") as fh:
                fh.write(data)
        else:
            sys.stdout.write(data.decode("utf-8"))
    else:
        text = "\n".join(text_lines) + "\n"
        if cfg.output:
            with open(cfg.output, "w", encoding="utf-8") as fh:
                fh.write(text)
        else:
            sys.stdout.write(text)


def cmd_validate(args) -> int:
    cfg = _config(args)
    try:
        g = io.load_groupoid(args.path)
    except MathError as err:
        payload = {"valid": False, "error": str(err)}
        _emit(cfg, payload, [f"INVALID: {err}"])
        return EXIT_MATH
    payload = {
        "valid": True,
        "name": g.name,
        "size": g.size,
        "units": list(g.units),
        "principal": is_principal(g),
    }
    _emit(cfg, payload, [f"VALID: {g.name or 'groupoid'} "
                         f"({g.size} elements, {len(g.units)} units)"])
    return EXIT_OK


def cmd_build(args) -> int:
    _config(args)
    if not args.output:
        raise OperationalError("build needs -o/--output")
    kind = args.kind
    params = args.params
    try:
        if kind == "cyclic":
            g = cyclic(int(params[0]))
        elif kind == "pair":
            g = pair_groupoid(int(params[0]))
        elif kind == "unitset":
            g = unit_groupoid(int(params[0]))
        elif kind == "union":
            g = disjoint_union(io.load_groupoid(params[0]), io.load_groupoid(params[1]))
        else:
            g = transformation_groupoid(io.load_action(params[0]))
    except (IndexError, ValueError) as exc:
        raise OperationalError(f"bad parameters for build {kind}: {exc}") from None
    io.save_groupoid(args.output, g)
    return EXIT_OK


def cmd_monoid(args) -> int:
    cfg = _config(args)
    g = io.load_groupoid(args.path)
    t = enumerate_monoid(g, args.side, cfg.cap_monoid, DEFAULT_PRODUCT_CAP)
    payload = io.monoid_to_dict(t)
    lines = [f"{t.side}-monoid of {g.name or 'groupoid'}: {len(t)} elements, "
             f"identity index {t.identity}"]
    _emit(cfg, payload, lines)
    return EXIT_OK


def cmd_verify(args) -> int:
    cfg = _config(args)
    g = io.load_groupoid(args.path)
    checks = None
    if args.props and args.props != "all":
        checks = tuple(p.strip() for p in args.props.split(",") if p.strip())
    report = full_report(g, checks, cfg.cap_monoid, DEFAULT_PRODUCT_CAP)
    payload = report.to_dict()
    lines = [f"{g.name or 'groupoid'}: |S| = {report.monoid_size}"]
    for cid, verdict in report.verdicts.items():
        if verdict.passed is None:
            lines.append(f"  {cid}: SKIPPED ({verdict.witness})")
        else:
            lines.append(f"  {cid}: {'PASS' if verdict.passed else 'FAIL'}")
    _emit(cfg, payload, lines)
    if checks is not None and any(v.passed is None for v in report.verdicts.values()):
        return EXIT_OPERATIONAL
    return EXIT_OK if report.all_passed else EXIT_MATH


def cmd_rep(args) -> int:
    cfg = _config(args)
    g = io.load_groupoid(args.path)
    t = enumerate_monoid(g, args.side, cfg.cap_monoid, DEFAULT_PRODUCT_CAP)
    build = left_operator if args.side == "S" else right_operator
    operators = [io.linop_to_dict(f, build(f)) for f in t.elements]
    payload = {"groupoid": g.name, "side": args.side, "operators": operators}
    lines = [f"{len(operators)} operators of size {g.size}x{g.size}"]
    _emit(cfg, payload, lines)
    return EXIT_OK


def cmd_search(args) -> int:
    cfg = _config(args)
    report = principal_converse_search(args.order, cfg.cap_order, cfg.cap_monoid)
    if args.census_dir:
        import os

        os.makedirs(args.census_dir, exist_ok=True)
        for order in range(1, args.order + 1):
            census = enumerate_groupoids(order, cfg.cap_order)
            io.write_json(os.path.join(args.census_dir, f"census-{order}.json"),
                          io.census_manifest(census))
            for g in census.representatives:
                io.save_groupoid(os.path.join(args.census_dir, f"{g.name}.json"), g)
    payload = io.probe_to_dict(report)
    lines = [f"census through order {report.max_order}: "
             f"forward implication {'holds' if report.forward_holds else 'FAILS'}"]
    for row in report.rows:
        mark = " CANDIDATE" if row.candidate else ""
        lines.append(f"  order {row.order} {row.name}: principal={row.principal} "
                     f"|intersection|={row.intersection_size}{mark}")
    if report.candidates:
        lines.append(f"counterexample candidates: {', '.join(report.candidates)}")
    else:
        lines.append(f"no counterexample up to order {report.max_order}")
    _emit(cfg, payload, lines)
    return EXIT_OK


def _parser() -> argparse.ArgumentParser:
    top = argparse.ArgumentParser(prog="gpd", description=__doc__)
    sub = top.add_subparsers(dest="command", required=True)

    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--cap-monoid", type=int, default=DEFAULT_MONOID_CAP,
                        help="largest monoid to enumerate (default 1000000)")
    common.add_argument("--cap-order", type=int, default=DEFAULT_CENSUS_CAP,
                        help="largest census order (default 6)")
    common.add_argument("--format", choices=("json", "text"), default="json")
    common.add_argument("-o", "--output", default=None, help="write the report here")

    p = sub.add_parser("validate", parents=[common], help="check a groupoid file")
    p.add_argument("path")
    p.set_defaults(fn=cmd_validate)

    p = sub.add_parser("build", parents=[common], help="construct a groupoid file")
    p.add_argument("kind", choices=("cyclic", "pair", "union", "transform", "unitset"))
    p.add_argument("params", nargs="*")
    p.set_defaults(fn=cmd_build)

    p = sub.add_parser("monoid", parents=[common], help="enumerate one side")
    p.add_argument("path")
    p.add_argument("--side", choices=("S", "S'"), default="S")
    p.set_defaults(fn=cmd_monoid)

    p = sub.add_parser("verify", parents=[common], help="run the check suite")
    p.add_argument("path")
    p.add_argument("--props", default="all",
                   help="comma-separated check ids (default: all); "
                        f"known ids: {', '.join(CHECK_IDS)}")
    p.set_defaults(fn=cmd_verify)

    p = sub.add_parser("rep", parents=[common], help="export operator matrices")
    p.add_argument("path")
    p.add_argument("--side", choices=("S", "S'"), default="S")
    p.set_defaults(fn=cmd_rep)

    p = sub.add_parser("search", parents=[common], help="census and converse probe")
    p.add_argument("--order", type=int, required=True)
    p.add_argument("--census-dir", default=None,
                   help="also write every census groupoid file plus a manifest per order")
    p.set_defaults(fn=cmd_search)
    return top


def main(argv=None) -> int:
    parser = _parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_OPERATIONAL if exc.code else EXIT_OK
    try:
        return args.fn(args)
    except MathError as err:
        print(f"mathematical failure: {err}", file=sys.stderr)
        return EXIT_MATH
    except OperationalError as err:
        print(f"error: {err}", file=sys.stderr)
        return EXIT_OPERATIONAL
    except OSError as err:
        print(f"i/o error: {err}", file=sys.stderr)
        return EXIT_OPERATIONAL


if __name__ == "__main__":
    sys.exit(main())
