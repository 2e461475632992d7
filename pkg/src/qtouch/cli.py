"""Command-line entry point.

    qtouch list
    qtouch verify --id touchard-main --order 16 [--json]
    qtouch verify-all [--order N] [--json] [--jobs N]
    qtouch expand ladder.cf --order 6 [--param d=3] [--var x]

Exit codes: 0 pass, 1 identity failure, 2 usage or parse error.
"""

from __future__ import annotations

import argparse
import json
import sys
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from pathlib import Path
from typing import Sequence, TextIO

from .arith import SeriesError, format_poly
from .checks import CATALOG, catalog_ids, run_check
from .contfrac import stable_expansion
from .dsl import DSLError, ladder_names, ladder_text, parse_spec, to_cfspec
from .report import CheckReport

EXIT_PASS, EXIT_FAIL, EXIT_USAGE = 0, 1, 2


@dataclass
class CliConfig:
    command: str
    id: str | None = None
    order: int | None = None
    spec_file: str | None = None
    json: bool = False
    var: str | None = None
    params: dict[str, int] = field(default_factory=dict)
    timing: bool = False
    jobs: int = 1

    def __post_init__(self):
        if self.command == "verify" and not self.id:
            raise ValueError("verify requires --id")
        if self.command == "expand" and not self.spec_file:
            raise ValueError("expand requires a spec file")


def _report_dict(rep: CheckReport, timing: bool) -> dict:
    out = rep.to_json()
    if not timing:
        out["elapsed_ms"] = 0
    return out


def _report_text(rep: CheckReport, timing: bool) -> str:
    head = f"{rep.id}: {rep.status.upper()} (order {rep.order}, depth {rep.depth_used}"
    head += f", {rep.elapsed_ms} ms)" if timing else ")"
    m = rep.first_mismatch
    if m is None:
        return head
    where = f" [{m.where}]" if m.where else ""
    return (f"{head}\n  first mismatch at power {m.power}{where}\n"
            f"    lhs: {format_poly(m.lhs)}\n    rhs: {format_poly(m.rhs)}")


def _unknown_id(id: str, err: TextIO) -> int:
    print(f"error: unknown check id {id!r}; valid ids:", file=err)
    for name in catalog_ids():
        print(f"  {name}", file=err)
    return EXIT_USAGE


def cmd_verify(cfg: CliConfig, out: TextIO = sys.stdout, err: TextIO = sys.stderr) -> int:
    if cfg.id not in CATALOG:
        return _unknown_id(cfg.id, err)
    rep = run_check(cfg.id, cfg.order)
    if cfg.json:
        print(json.dumps(_report_dict(rep, cfg.timing), indent=2), file=out)
    else:
        print(_report_text(rep, cfg.timing), file=out)
    return EXIT_PASS if rep.passed else EXIT_FAIL


def _run_one(args: tuple[str, int | None]) -> CheckReport:
    return run_check(*args)


def cmd_verify_all(cfg: CliConfig, out: TextIO = sys.stdout, err: TextIO = sys.stderr) -> int:
    jobs = [(id, cfg.order) for id in catalog_ids()]
    if cfg.jobs > 1:
        with ProcessPoolExecutor(max_workers=cfg.jobs) as pool:
            reports = list(pool.map(_run_one, jobs))
    else:
        reports = [_run_one(j) for j in jobs]
    if cfg.json:
        print(json.dumps([_report_dict(r, cfg.timing) for r in reports], indent=2), file=out)
    else:
        width = max(len(r.id) for r in reports)
        header = f"{'id':<{width}}  status  order  depth"
        print(header + ("  ms" if cfg.timing else ""), file=out)
        for r in reports:
            line = f"{r.id:<{width}}  {r.status:<6}  {r.order:>5}  {r.depth_used:>5}"
            print(line + (f"  {r.elapsed_ms}" if cfg.timing else ""), file=out)
        failed = [r for r in reports if not r.passed]
        print(f"{len(reports) - len(failed)}/{len(reports)} passed", file=out)
        for r in failed:
            print(_report_text(r, cfg.timing), file=out)
    return EXIT_PASS if all(r.passed for r in reports) else EXIT_FAIL


def _read_spec(path: str) -> str:
    # "@name" selects a ladder shipped with the package
    if path.startswith("@"):
        name = path[1:]
        if name not in ladder_names():
            raise FileNotFoundError(f"no packaged ladder {name!r}; available: {', '.join(ladder_names())}")
        return ladder_text(name)
    return Path(path).read_text(encoding="utf-8")


def cmd_expand(cfg: CliConfig, out: TextIO = sys.stdout, err: TextIO = sys.stderr) -> int:
    order = 16 if cfg.order is None else cfg.order
    if order < 0:
        print("error: order must be nonnegative", file=err)
        return EXIT_USAGE
    try:
        text = _read_spec(cfg.spec_file)
    except (OSError, UnicodeDecodeError) as e:
        print(f"error: {e}", file=err)
        return EXIT_USAGE
    try:
        doc = parse_spec(text)
        spec = to_cfspec(doc, cfg.params)
        res = stable_expansion(spec, order)
    except DSLError as e:
        print(f"{cfg.spec_file}: {e}", file=err)
        return EXIT_USAGE
    except SeriesError as e:
        print(f"{cfg.spec_file}: degenerate specification: {e}", file=err)
        return EXIT_USAGE
    var = cfg.var or doc.variable
    for k in range(order + 1):
        print(f"{var}^{k}: {format_poly(res.series.coeff(k))}", file=out)
    if not res.stabilized:
        print("warning: expansion did not stabilize at the default depth", file=err)
    return EXIT_PASS


def cmd_list(cfg: CliConfig, out: TextIO = sys.stdout, err: TextIO = sys.stderr) -> int:
    width = max(len(i) for i in catalog_ids())
    for id, entry in CATALOG.items():
        print(f"{id:<{width}}  {entry.default_order:>3}  {entry.summary}", file=out)
    print(f"\npackaged ladders (use as @name with expand): {', '.join(ladder_names())}", file=out)
    return EXIT_PASS


COMMANDS = {"verify": cmd_verify, "verify-all": cmd_verify_all, "expand": cmd_expand, "list": cmd_list}


def _param(text: str) -> tuple[str, int]:
    name, sep, value = text.partition("=")
    try:
        if not sep:
            raise ValueError
        return name.strip(), int(value)
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected NAME=INT, got {text!r}") from None


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="qtouch", description="Exact verification of Touchard-type q-continued fractions.")
    sub = p.add_subparsers(dest="command", required=True)

    def common(sp: argparse.ArgumentParser, json_flag: bool = True) -> None:
        sp.add_argument("--order", type=int, default=None,
                        help="series order (default: the check's own default, 16 for expand)")
        if json_flag:
            sp.add_argument("--json", action="store_true", help="emit JSON reports")
            sp.add_argument("--timing", action="store_true",
                            help="report wall-clock times (output is then no longer reproducible)")

    sp = sub.add_parser("verify", help="run one catalog check")
    sp.add_argument("--id", required=True)
    common(sp)
    sp = sub.add_parser("verify-all", help="run the whole catalog")
    common(sp)
    sp.add_argument("--jobs", type=int, default=1, help="worker processes")
    sp = sub.add_parser("expand", help="expand a ladder written in the .cf language")
    sp.add_argument("spec_file", help="path to a .cf file, or @name for a packaged ladder")
    common(sp, json_flag=False)
    sp.add_argument("--var", default=None, help="symbol used for the series variable in the output")
    sp.add_argument("--param", type=_param, action="append", default=[], metavar="NAME=INT")
    sub.add_parser("list", help="list check ids and packaged ladders")
    return p


def main(argv: Sequence[str] | None = None) -> int:
    ns = build_parser().parse_args(argv)
    cfg = CliConfig(
        command=ns.command,
        id=getattr(ns, "id", None),
        order=getattr(ns, "order", None),
        spec_file=getattr(ns, "spec_file", None),
        json=getattr(ns, "json", False),
        var=getattr(ns, "var", None),
        params=dict(getattr(ns, "param", [])),
        timing=getattr(ns, "timing", False),
        jobs=getattr(ns, "jobs", 1),
    )
    if cfg.order is not None and cfg.order < 0:
        print("error: --order must be nonnegative", file=sys.stderr)
        return EXIT_USAGE
    return COMMANDS[cfg.command](cfg, sys.stdout, sys.stderr)


if __name__ == "__main__":
    sys.exit(main())
