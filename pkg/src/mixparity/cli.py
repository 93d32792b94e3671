"""Command line: class tables, check suites, Hilbert series, table validation.

Exit codes: 0 success, 1 a check failed, 2 bad configuration or data.

    mixparity tables --kind tilting --type A2
    mixparity tables --kind simple --type B3 --char 2 --pcan b3.json --pcan-dual c3.json --format csv
    mixparity check --suite identities --type B2 --cache ~/.cache/mixparity
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import logging
import sys
from collections.abc import Sequence
from dataclasses import dataclass
from pathlib import Path

from .cache import KLCache
from .coxeter import CoxeterSystem, dual_system, parse_type
from .errors import (
    CategoryError,
    MissingEntryError,
    SingularSystemError,
    SystemMismatchError,
    TableParseError,
    TableValidationError,
)
from .hecke import PCanTable, kl_table, load_pcan, parse_word_key, word_key
from .mixclass import MixedContext
from .suites import SUITES, run_suite

EXIT_OK, EXIT_FAIL, EXIT_CONFIG = 0, 1, 2
KINDS = ("tilting", "projective", "simple", "parity")
DATA_ERRORS = (TableParseError, TableValidationError, MissingEntryError, SingularSystemError,
               SystemMismatchError, CategoryError)


class ConfigError(ValueError):
    pass


@dataclass(frozen=True)
class JobConfig:
    command: str
    cartan_type: str
    characteristic: int = 0
    pcan: Path | None = None
    pcan_dual: Path | None = None
    fmt: str = "json"
    out: Path | None = None
    cache: Path | None = None

    def validate(self) -> None:
        try:
            parse_type(self.cartan_type)
        except ValueError as exc:
            raise ConfigError(str(exc)) from None
        if self.characteristic < 0:
            raise ConfigError("characteristic must be 0 or a prime")
        if self.characteristic and (self.pcan is None or self.pcan_dual is None):
            raise ConfigError("--pcan and --pcan-dual are required when --char is not 0")
        for p in (self.pcan, self.pcan_dual):
            if p is not None and not p.is_file():
                raise ConfigError(f"no such table file: {p}")
        if self.fmt not in ("json", "csv"):
            raise ConfigError(f"unknown format {self.fmt!r}")

    @classmethod
    def from_args(cls, args: argparse.Namespace) -> JobConfig:
        cfg = cls(
            command=args.command,
            cartan_type=args.type,
            characteristic=args.char,
            pcan=Path(args.pcan).expanduser() if args.pcan else None,
            pcan_dual=Path(args.pcan_dual).expanduser() if args.pcan_dual else None,
            fmt=getattr(args, "format", "json"),
            out=Path(args.out).expanduser() if args.out else None,
            cache=Path(args.cache).expanduser() if args.cache else None,
        )
        cfg.validate()
        return cfg


def build_context(cfg: JobConfig) -> MixedContext:
    system = CoxeterSystem.get(cfg.cartan_type)
    dual = dual_system(system)

    def table(path: Path | None, sys_: CoxeterSystem) -> PCanTable:
        if path is not None:
            return load_pcan(path, cartan_type=sys_.cartan_type, characteristic=cfg.characteristic)
        if cfg.cache is not None:
            return KLCache(cfg.cache).table(sys_)
        return kl_table(sys_)

    return MixedContext(system, table(cfg.pcan, system), table(cfg.pcan_dual, dual))


# -- tables ---------------------------------------------------------------

def class_table(ctx: MixedContext, kind: str):
    make = {
        "tilting": ctx.tilting_class,
        "projective": ctx.projective_class,
        "simple": ctx.simple_class,
        "parity": ctx.parity_class,
    }[kind]
    return [(w, make(w)) for w in ctx.system.elements]


def render_json(ctx: MixedContext, kind: str, rows) -> str:
    data = {
        "cartan_type": ctx.system.cartan_type,
        "characteristic": ctx.characteristic,
        "kind": kind,
        "entries": [{"w": list(w.word), "expansion": c.hecke.to_expansion()} for w, c in rows],
    }
    return json.dumps(data, indent=2) + "\n"


def render_csv(ctx: MixedContext, kind: str, rows) -> str:
    els = ctx.system.elements
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow([f"{kind}\\y"] + [word_key(y) for y in els])
    for w, c in rows:
        writer.writerow([word_key(w)] + [c.hecke.coeff(y).to_csv_cell() for y in els])
    return buf.getvalue()


def cmd_tables(cfg: JobConfig, kind: str) -> tuple[int, str]:
    ctx = build_context(cfg)
    rows = class_table(ctx, kind)
    text = render_json(ctx, kind, rows) if cfg.fmt == "json" else render_csv(ctx, kind, rows)
    return EXIT_OK, text


def cmd_check(cfg: JobConfig, suite: str) -> tuple[int, str]:
    ctx = build_context(cfg)
    checks = run_suite(suite, ctx)
    passed = all(c.passed for c in checks)
    report = {
        "suite": suite,
        "cartan_type": ctx.system.cartan_type,
        "characteristic": ctx.characteristic,
        "passed": passed,
        "checks": [c.to_json() for c in checks],
    }
    return (EXIT_OK if passed else EXIT_FAIL), json.dumps(report, indent=2) + "\n"


def cmd_hilbert(cfg: JobConfig, elements: str | None) -> tuple[int, str]:
    ctx = build_context(cfg)
    if elements:
        ws = []
        for key in elements.split(";"):
            word = parse_word_key(key)
            w = ctx.system.element(word)
            if w.length != len(word):
                raise ConfigError(f"word {key!r} is not reduced")
            ws.append(w)
    else:
        ws = list(ctx.system.elements)
    series = ctx.ext_algebra_hilbert(ws)
    data = {
        "cartan_type": ctx.system.cartan_type,
        "characteristic": ctx.characteristic,
        "elements": [list(w.word) for w in sorted(set(ws), key=lambda x: x.index)],
        "diagonal": {str(j): n for (_, j), n in sorted(series.entries.items())},
        "total": series.total().to_json(),
    }
    return EXIT_OK, json.dumps(data, indent=2) + "\n"


def cmd_validate(path: str) -> tuple[int, str]:
    try:
        table = load_pcan(Path(path))
    except TableValidationError as exc:
        return EXIT_FAIL, json.dumps({"valid": False, "check": exc.check,
                                      "w": list(exc.w) if exc.w is not None else None,
                                      "message": str(exc)}, indent=2) + "\n"
    return EXIT_OK, json.dumps({"valid": True, "cartan_type": table.cartan_type,
                                "characteristic": table.characteristic,
                                "entries": len(table.entries)}, indent=2) + "\n"


# -- entry point ----------------------------------------------------------

def _common(p: argparse.ArgumentParser, fmt: bool = False) -> None:
    p.add_argument("--type", required=True, help="Cartan type, e.g. B3")
    p.add_argument("--char", type=int, default=0, help="characteristic label of the tables")
    p.add_argument("--pcan", help="table for the group (required if --char is not 0)")
    p.add_argument("--pcan-dual", help="table for the Langlands dual group")
    p.add_argument("--out", help="write here instead of stdout")
    p.add_argument("--cache", help="directory for the KL cache")
    if fmt:
        p.add_argument("--format", choices=("json", "csv"), default="json")


def make_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="mixparity", description=__doc__.splitlines()[0])
    parser.add_argument("-v", "--verbose", action="store_true")
    sub = parser.add_subparsers(dest="command", required=True)
    p = sub.add_parser("tables", help="per-element class tables")
    p.add_argument("--kind", choices=KINDS, required=True)
    _common(p, fmt=True)
    p = sub.add_parser("check", help="run a named check suite")
    p.add_argument("--suite", choices=sorted(SUITES), required=True)
    _common(p)
    p = sub.add_parser("hilbert", help="bigraded Hilbert series of the Ext algebra")
    p.add_argument("--elements", help="';'-separated words such as 'e;1;1,2' (default: all)")
    _common(p)
    p = sub.add_parser("validate", help="validate a table file")
    p.add_argument("path")
    return parser


def main(argv: Sequence[str] | None = None) -> int:
    parser = make_parser()
    args = parser.parse_args(argv)
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING,
                        format="%(levelname)s %(name)s: %(message)s")
    try:
        if args.command == "validate":
            code, text = cmd_validate(args.path)
            out = None
        else:
            cfg = JobConfig.from_args(args)
            out = cfg.out
            if args.command == "tables":
                code, text = cmd_tables(cfg, args.kind)
            elif args.command == "check":
                code, text = cmd_check(cfg, args.suite)
            else:
                code, text = cmd_hilbert(cfg, args.elements)
    except (ValueError, *DATA_ERRORS) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_CONFIG
    if out is None:
        sys.stdout.write(text)
    else:
        out.parent.mkdir(parents=True, exist_ok=True)
        out.write_text(text, encoding="utf-8")
    return code


if __name__ == "__main__":
    sys.exit(main())
