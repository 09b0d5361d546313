"""Command-line front end.

    quivcusp kac       --quiver Q.json --box 2,2 [--a-table A.json] [--cache DIR]
    quivcusp cuspidal  --quiver Q.json --box 2,2 [--out json|csv|latex]
    quivcusp check     --quiver Q.json --box 2,2 [--tables T.json] [--strict]
    quivcusp hua       --quiver Q.json --box 3,3

Exit codes: 0 success, 1 input error, 2 capability gap, 3 failed check.
"""

from __future__ import annotations

import argparse
import hashlib
import json
import logging
import os
import sys
import tempfile
from dataclasses import dataclass
from pathlib import Path
from typing import Dict, Optional

from . import __version__
from .cuspidal import CheckReport, ConsistencyViolation, CuspidalTable, cuspidal_tables, run_checks
from .fforacle import (DEFAULT_BUDGET, CapabilityGap, KacTable, OracleInconsistency, iso_class_count,
                       kac_tables)
from .hua import hua_a_table
from .quiver import DimVector, Quiver, QuiverError
from .series import Box

log = logging.getLogger("quivcusp")

EXIT_OK, EXIT_INPUT, EXIT_GAP, EXIT_CHECK = 0, 1, 2, 3
FORMATS = ("json", "csv", "latex")


class InputError(Exception):
    pass


@dataclass
class JobConfig:
    command: str
    quiver_path: str
    box: Box
    quiver: Quiver
    a_table: Optional[str] = None
    primes_limit: Optional[int] = None
    out: str = "json"
    cache: Optional[str] = None
    output: Optional[str] = None
    tables: Optional[str] = None
    strict: bool = False
    budget: int = DEFAULT_BUDGET


# ---------------------------------------------------------------------------
# files and cache

def _read_json(path: str, what: str):
    try:
        with open(path) as fh:
            return json.load(fh)
    except OSError as exc:
        raise InputError(f"cannot read {what} {path}: {exc.strerror}") from exc
    except json.JSONDecodeError as exc:
        raise InputError(f"{what} {path} is not valid JSON: {exc}") from exc


def dumps(data) -> str:
    return json.dumps(data, indent=2, sort_keys=True) + "\n"


def atomic_write(path: Path, text: str) -> None:
    path.parent.mkdir(parents=True, exist_ok=True)
    fd, tmp = tempfile.mkstemp(dir=path.parent, prefix=".tmp-", suffix=path.suffix)
    try:
        with os.fdopen(fd, "w") as fh:
            fh.write(text)
        os.replace(tmp, path)
    except BaseException:
        if os.path.exists(tmp):
            os.unlink(tmp)
        raise


class CountCache:
    """Oracle counts per ``(quiver hash, d, p)`` in one JSON file per quiver."""

    def __init__(self, root: Path, Q: Quiver):
        self.path = root / "counts" / f"{Q.sha256()}.json"
        self.data: Dict[str, int] = {}
        if self.path.exists():
            self.data = _read_json(str(self.path), "cache file")
        self.dirty = False

    def __call__(self, Q: Quiver, d: DimVector, p: int) -> int:
        key = f"{','.join(map(str, d))}@{p}"
        if key not in self.data:
            self.data[key] = iso_class_count(Q, d, p)
            self.dirty = True
        return self.data[key]

    def flush(self) -> None:
        if self.dirty:
            atomic_write(self.path, dumps(self.data))
            self.dirty = False


def cache_key(Q: Quiver, box: Box, extra: str = "") -> str:
    h = hashlib.sha256()
    h.update(Q.canonical_bytes())
    h.update(f"|{box}|{__version__}|{extra}".encode())
    return h.hexdigest()


# ---------------------------------------------------------------------------
# pipeline pieces

def load_a_table(cfg: JobConfig, Q: Quiver) -> Optional[Dict[DimVector, object]]:
    if not cfg.a_table:
        return None
    data = _read_json(cfg.a_table, "A-table")
    try:
        imported = KacTable.from_json(data)
    except (KeyError, TypeError, ValueError) as exc:
        raise InputError(f"A-table {cfg.a_table} is malformed: {exc}") from exc
    # A-polynomials do not depend on the orientation, so a table for the
    # reversed quiver is accepted as well
    if imported.quiver not in (Q, Q.reversed()):
        raise InputError(f"A-table {cfg.a_table} is for a different quiver")
    return {d: a for d, a in imported.A.items() if any(d)}


def compute_kac(cfg: JobConfig, Q: Quiver) -> KacTable:
    provider = load_a_table(cfg, Q)
    tag = ""
    if cfg.a_table:
        tag = hashlib.sha256(Path(cfg.a_table).read_bytes()).hexdigest()
    tag += f"|{cfg.primes_limit}|{cfg.budget}"
    cached = None
    if cfg.cache:
        cached = Path(cfg.cache) / "kac" / f"{cache_key(Q, cfg.box, tag)}.json"
        if cached.exists():
            log.info("cache hit %s", cached)
            try:
                return KacTable.from_json(_read_json(str(cached), "cache file"))
            except (KeyError, TypeError, ValueError) as exc:
                raise InputError(f"cache file {cached} is corrupted: {exc}") from exc
    count = CountCache(Path(cfg.cache), Q) if cfg.cache else iso_class_count
    try:
        table = kac_tables(Q, cfg.box, provider, budget=cfg.budget,
                           primes_limit=cfg.primes_limit, count=count)
    finally:
        if cfg.cache:
            count.flush()
    if cached is not None:
        atomic_write(cached, dumps(table.to_json()))
    return table


def compute_all(cfg: JobConfig):
    kac = compute_kac(cfg, cfg.quiver)
    tab = cuspidal_tables(cfg.quiver, cfg.box, kac)
    return kac, tab


def checks_for(cfg: JobConfig, kac: KacTable, tab: CuspidalTable) -> CheckReport:
    Q = cfg.quiver
    R = Q.reversed()

    def reversed_tables():
        if R == Q:
            return kac, tab
        rkac = compute_kac(cfg, R)
        return rkac, cuspidal_tables(R, cfg.box, rkac)

    return run_checks(Q, cfg.box, kac, tab, reversed_tables)


# ---------------------------------------------------------------------------
# rendering

def render_kac(kac: KacTable, fmt: str) -> str:
    if fmt == "json":
        return dumps(kac.to_json())
    keys = [d for d in kac.box.points() if any(d)]
    if fmt == "csv":
        rows = ["d,H,I,A,source"]
        for d in keys:
            rows.append(f"\"{','.join(map(str, d))}\",\"{kac.H[d]}\",\"{kac.I[d]}\",\"{kac.A[d]}\",{kac.source.get(d, '')}")
        return "\n".join(rows) + "\n"
    lines = [r"\begin{tabular}{l|l|l|l}",
             r"$\mathbf{d}$ & $H_{Q,\mathbf{d}}(t)$ & $I_{Q,\mathbf{d}}(t)$ & $A_{Q,\mathbf{d}}(t)$ \\ \hline"]
    for d in keys:
        lines.append(f"$({','.join(map(str, d))})$ & ${kac.H[d].latex()}$ & ${kac.I[d].latex()}$ & ${kac.A[d].latex()}$ \\\\")
    lines.append(r"\end{tabular}")
    return "\n".join(lines) + "\n"


def render_cuspidal(tab: CuspidalTable, report: Optional[CheckReport], fmt: str) -> str:
    if fmt == "json":
        doc = {"cuspidal": tab.to_json()}
        if report is not None:
            doc["checks"] = report.to_json()
        return dumps(doc)
    return tab.csv() if fmt == "csv" else tab.latex()


def emit(cfg: JobConfig, text: str) -> None:
    if cfg.output:
        atomic_write(Path(cfg.output), text)
    else:
        sys.stdout.write(text)


# ---------------------------------------------------------------------------
# commands

def cmd_kac(cfg: JobConfig) -> int:
    emit(cfg, render_kac(compute_kac(cfg, cfg.quiver), cfg.out))
    return EXIT_OK


def cmd_cuspidal(cfg: JobConfig) -> int:
    kac, tab = compute_all(cfg)
    report = checks_for(cfg, kac, tab)
    emit(cfg, render_cuspidal(tab, report, cfg.out))
    return _status(cfg, report)


def cmd_check(cfg: JobConfig) -> int:
    kac = compute_kac(cfg, cfg.quiver)
    if cfg.tables:
        data = _read_json(cfg.tables, "table file")
        if isinstance(data, dict) and "cuspidal" in data:
            data = data["cuspidal"]
        try:
            tab = CuspidalTable.from_json(data)
        except (KeyError, TypeError, ValueError) as exc:
            raise InputError(f"table file {cfg.tables} is malformed: {exc}") from exc
        if tab.quiver != cfg.quiver or tab.box != cfg.box:
            raise InputError(f"table file {cfg.tables} does not match the quiver and box")
    else:
        tab = cuspidal_tables(cfg.quiver, cfg.box, kac)
    report = checks_for(cfg, kac, tab)
    emit(cfg, dumps(report.to_json()))
    return _status(cfg, report)


def cmd_hua(cfg: JobConfig) -> int:
    from .fforacle import table_from_a
    A = hua_a_table(cfg.quiver, cfg.box)
    emit(cfg, render_kac(table_from_a(cfg.quiver, cfg.box, A, source="hua"), cfg.out))
    return EXIT_OK


def _status(cfg: JobConfig, report: CheckReport) -> int:
    for r in report.results:
        log.info("check %s: %s (%s)", r.name, r.status, r.detail)
    if not report.ok:
        return EXIT_CHECK
    if cfg.strict and report.warnings:
        return EXIT_CHECK
    return EXIT_OK


COMMANDS = {"kac": cmd_kac, "cuspidal": cmd_cuspidal, "check": cmd_check, "hua": cmd_hua}
COMMAND_HELP = {
    "kac": "H, I and A tables from the finite-field oracle (plus an optional A-table)",
    "cuspidal": "C and C^abs tables with the check report",
    "check": "run the checks, optionally on an existing table file",
    "hua": "export an A-table computed from Hua's formula",
}


class _Parser(argparse.ArgumentParser):
    # usage errors are input errors; exit code 2 is reserved for capability gaps
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_INPUT, f"{self.prog}: error: {message}\n")


def build_parser() -> argparse.ArgumentParser:
    ap = _Parser(prog="quivcusp", description="Kac and cuspidal polynomials of quivers.")
    ap.add_argument("--version", action="version", version=__version__)
    sub = ap.add_subparsers(dest="command", required=True)
    for name in COMMANDS:
        p = sub.add_parser(name, help=COMMAND_HELP[name])
        p.add_argument("--quiver", required=True, help="quiver JSON file")
        p.add_argument("--box", required=True, help="dimension bound, e.g. 2,2")
        p.add_argument("--a-table", help="A-table JSON (KacTable schema) for dimensions beyond the oracle")
        p.add_argument("--out", choices=FORMATS, default="json")
        p.add_argument("--cache", help="cache directory")
        p.add_argument("--primes-limit", type=int, help="largest prime the oracle may use")
        p.add_argument("--budget", type=int, default=DEFAULT_BUDGET, help="oracle cost budget")
        p.add_argument("--strict", action="store_true", help="fail on conjecture warnings")
        p.add_argument("--tables", help="cuspidal table JSON to check (check command)")
        p.add_argument("-o", "--output", help="write here instead of stdout")
        p.add_argument("-v", "--verbose", action="store_true")
    return ap


def parse_config(args) -> JobConfig:
    Q = Quiver.from_json(_read_json(args.quiver, "quiver file"))
    try:
        box = Box.parse(args.box)
    except ValueError as exc:
        raise InputError(f"bad box {args.box!r}: {exc}") from exc
    if box.rank != Q.n:
        raise InputError(f"box {box} has {box.rank} entries but the quiver has {Q.n} vertices")
    return JobConfig(args.command, args.quiver, box, Q, a_table=args.a_table,
                     primes_limit=args.primes_limit, out=args.out, cache=args.cache,
                     output=args.output, tables=args.tables, strict=args.strict, budget=args.budget)


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING,
                        format="%(levelname)s %(name)s: %(message)s", stream=sys.stderr)
    try:
        cfg = parse_config(args)
        return COMMANDS[cfg.command](cfg)
    except (InputError, QuiverError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except CapabilityGap as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_GAP
    except (ConsistencyViolation, OracleInconsistency) as exc:
        print(f"check failed: {exc}", file=sys.stderr)
        return EXIT_CHECK


if __name__ == "__main__":
    sys.exit(main())
