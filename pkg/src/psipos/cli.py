"""Command-line interface.

Subcommands: ``table``, ``psi``, ``verify``, ``census``, ``fixtures``.
Exit codes: 0 success, 1 a theorem/control claim or a fixture check failed,
2 usage error, 3 capacity exceeded.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from dataclasses import dataclass
from pathlib import Path
from typing import Sequence

from . import fixtures
from .census import STRATEGIES, count_f, negative_capable
from .characters import CapacityError, full_table
from .lab import CLAIMS, FAMILY_ITEMS, ClaimId, all_claims, verify
from .models import epsilon_interval, hk, psi_interval
from .partitions import Partition, format_partition, parse_partition
from .symfun import SchurVector, power_to_schur, psum

EXIT_OK, EXIT_FAIL, EXIT_USAGE, EXIT_CAPACITY = 0, 1, 2, 3


class UsageError(Exception):
    pass


@dataclass(frozen=True)
class RunConfig:
    command: str
    threads: int
    emit: str
    timings: bool
    args: argparse.Namespace


def _default_threads() -> int:
    raw = os.environ.get("PSIPOS_THREADS", "").strip()
    if not raw:
        return 1
    try:
        value = int(raw)
    except ValueError:
        raise UsageError(f"PSIPOS_THREADS must be a positive integer, got {raw!r}") from None
    if value < 1:
        raise UsageError(f"PSIPOS_THREADS must be a positive integer, got {raw!r}")
    return value


def _partition(text: str) -> Partition:
    try:
        return parse_partition(text)
    except ValueError as exc:
        raise UsageError(str(exc)) from None


def _positive_int(text: str) -> int:
    try:
        value = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected a positive integer, got {text!r}") from None
    if value < 1:
        raise argparse.ArgumentTypeError(f"expected a positive integer, got {text!r}")
    return value


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--threads", type=_positive_int, help="worker budget (default: PSIPOS_THREADS or 1)")
    common.add_argument("--emit", choices=("text", "json", "csv"), help="output format")
    common.add_argument("--no-timings", action="store_true", help="omit wall-clock fields so output is byte-stable")

    parser = argparse.ArgumentParser(prog="psipos", description="Schur positivity of class sums of symmetric groups.")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("table", parents=[common], help="character table of S_n")
    p.add_argument("--n", type=_positive_int, required=True)
    p.add_argument("--row", help="print one row, e.g. \"[1^8]\"")

    p = sub.add_parser("psi", parents=[common], help="Schur expansion of a class sum")
    group = p.add_mutually_exclusive_group(required=True)
    group.add_argument("--mu", help="interval end: sum over [(1^n), mu] in revlex")
    group.add_argument("--subset", help="file with one class per line")
    group.add_argument("--epsilon", help="all-odd interval end")
    group.add_argument("--hk", type=_positive_int, help="hook classes of S_n")
    p.add_argument("--n", type=_positive_int, help="expected degree (checked)")

    p = sub.add_parser("verify", parents=[common], help="run positivity claims")
    p.add_argument("--claim", action="append", required=True, help="claim name, 'families.<i>', or 'all' (repeatable)")
    p.add_argument("--max-n", type=_positive_int, help="upper end of the n range")
    p.add_argument("--min-n", type=_positive_int, help="lower end of the n range")
    p.add_argument("--max-k", type=_positive_int)
    p.add_argument("--max-m", type=_positive_int)
    p.add_argument("--mode", choices=("auto", "vector", "rows"), default="auto", help="interval evaluation mode")

    p = sub.add_parser("census", parents=[common], help="count non-Schur-positive subset sums")
    p.add_argument("--n", type=_positive_int, required=True)
    p.add_argument("--max-n", type=_positive_int, help="with --g-only: report every n up to this bound")
    p.add_argument("--strategy", choices=STRATEGIES, default="auto")
    p.add_argument("--rows", help="watched rows, ';'-separated, e.g. \"[1^8];[2,1^6]\"")
    p.add_argument("--checkpoint", help="directory for resumable mitm state")
    p.add_argument("--joint", action="store_true", help="also count subsets negative at several rows")
    p.add_argument("--g-only", action="store_true", help="only list the rows that can go negative")

    p = sub.add_parser("fixtures", parents=[common], help="write or check golden tables")
    p.add_argument("--fixtures-dir", help="directory to write fixtures into")
    p.add_argument("--check", metavar="DIR", help="compare generated fixtures against DIR")
    return parser


# ---------------------------------------------------------------- commands


def _emit_vector(v: SchurVector, fmt: str, label: str) -> str:
    if fmt == "json":
        return json.dumps({"expansion": label, "n": v.n, "terms": v.to_json_obj()}) + "\n"
    if fmt == "csv":
        return "coefficient,lambda\n" + "".join(f"{c},\"{format_partition(l)}\"\n" for l, c in sorted(v.items(), reverse=True))
    return v.to_text()


def cmd_table(cfg: RunConfig) -> int:
    a = cfg.args
    table = full_table(a.n)
    fmt = cfg.emit or "csv"
    if a.row is not None:
        lam = _partition(a.row)
        if sum(lam) != a.n:
            raise UsageError(f"row {format_partition(lam)} is not a partition of {a.n}")
        values = [int(x) for x in table.row(lam)]
        sums = [int(x) for x in table.row_partial_sums(lam)]
        if fmt == "json":
            out = json.dumps({"n": a.n, "lambda": format_partition(lam), "classes": [format_partition(c) for c in table.classes], "values": values, "partial_sums": sums})
            sys.stdout.write(out + "\n")
        elif fmt == "csv":
            sys.stdout.write("class,value,partial_sum\n")
            for c, v, s in zip(table.classes, values, sums):
                sys.stdout.write(f"\"{format_partition(c)}\",{v},{s}\n")
        else:
            sys.stdout.write("values: " + ", ".join(map(str, values)) + "\n")
            sys.stdout.write("partial sums: " + ", ".join(map(str, sums)) + "\n")
        return EXIT_OK
    if fmt == "json":
        sys.stdout.write(table.to_json() + "\n")
    elif fmt == "csv":
        sys.stdout.write(table.to_csv())
    else:
        for lam, row in zip(table.classes, table.rows):
            sys.stdout.write(f"{format_partition(lam)}\t{' '.join(str(int(x)) for x in row)}\n")
    return EXIT_OK


def cmd_psi(cfg: RunConfig) -> int:
    a = cfg.args
    if a.mu is not None:
        mu = _partition(a.mu)
        label = f"psi {format_partition(mu)}"
        v = psi_interval(mu)
    elif a.epsilon is not None:
        mu = _partition(a.epsilon)
        if any(p % 2 == 0 for p in mu):
            raise UsageError(f"epsilon needs all parts odd, got {format_partition(mu)}")
        label = f"epsilon {format_partition(mu)}"
        v = epsilon_interval(mu)
    elif a.hk is not None:
        label = f"hooks {a.hk}"
        v = hk(a.hk)
    else:
        try:
            lines = Path(a.subset).read_text().splitlines()
        except OSError as exc:
            raise UsageError(f"cannot read subset file: {exc}") from None
        members = sorted({_partition(line) for line in lines if line.strip() and not line.lstrip().startswith("#")})
        if not members:
            raise UsageError("subset file lists no classes")
        degrees = {sum(m) for m in members}
        if len(degrees) != 1:
            raise UsageError("subset classes have different sizes")
        label = "subset " + " ".join(format_partition(m) for m in members)
        v = power_to_schur(psum(members))
    if a.n is not None and v.n != a.n:
        raise UsageError(f"expansion has degree {v.n}, not --n {a.n}")
    sys.stdout.write(_emit_vector(v, cfg.emit or "text", label))
    return EXIT_OK


def _claims_from_args(a: argparse.Namespace) -> list[ClaimId]:
    overrides = {"max_n": a.max_n, "max_k": a.max_k, "max_m": a.max_m}
    out: list[ClaimId] = []
    for raw in a.claim:
        try:
            if raw.strip().lower() == "all":
                found = all_claims(**overrides)
            elif raw.strip().lower() == "families":
                found = [ClaimId.parse(f"families.{i}", **overrides) for i in FAMILY_ITEMS]
            else:
                found = [ClaimId.parse(raw, **overrides)]
            if a.min_n is not None:
                found = [
                    ClaimId.parse(str(c), n=(a.min_n, c.range("n").stop - 1), max_k=a.max_k, max_m=a.max_m)
                    if "n" in CLAIMS[c.tag].ranges
                    else c
                    for c in found
                ]
        except ValueError as exc:
            raise UsageError(str(exc)) from None
        out.extend(found)
    return out


def cmd_verify(cfg: RunConfig) -> int:
    claims = _claims_from_args(cfg.args)
    reports = []
    for claim in claims:
        try:
            reports.append(verify(claim, workers=cfg.threads, mode=cfg.args.mode))
        except ValueError as exc:
            raise UsageError(str(exc)) from None
    fmt = cfg.emit or "json"
    if fmt == "json":
        verdicts = []
        for r in reports:
            for v in r.verdicts:
                obj = v.to_json_obj()
                if not cfg.timings:
                    obj.pop("millis")
                verdicts.append(obj)
        sys.stdout.write(json.dumps(verdicts, indent=2) + "\n")
    elif fmt == "csv":
        sys.stdout.write("claim,instance,status,witness" + (",millis" if cfg.timings else "") + "\n")
        for r in reports:
            for v in r.verdicts:
                w = json.dumps(v.witness, sort_keys=True).replace('"', '""') if v.witness is not None else ""
                row = f"{v.claim},\"{v.instance}\",{v.status},\"{w}\""
                sys.stdout.write(row + (f",{v.millis:.3f}" if cfg.timings else "") + "\n")
    else:
        for r in reports:
            flag = "" if r.ok else ("  <-- CONJECTURE FAILS" if r.kind == "conjecture" else "  <-- FAILED")
            sys.stdout.write(f"{r.claim} [{r.kind}]: {'pass' if r.ok else 'fail'} ({len(r.verdicts)} instances){flag}\n")
            for v in r.failures:
                sys.stdout.write(f"  {v.instance}: {v.status} {json.dumps(v.witness, sort_keys=True)}\n")
    if any(v.status == "error" for r in reports for v in r.verdicts):
        return EXIT_CAPACITY
    return EXIT_FAIL if any(r.hard_failure for r in reports) else EXIT_OK


def cmd_census(cfg: RunConfig) -> int:
    a = cfg.args
    fmt = cfg.emit or "text"
    if a.g_only:
        top = a.max_n or a.n
        if top < a.n:
            raise UsageError("--max-n must be at least --n")
        results = []
        for n in range(max(a.n, 2), top + 1):
            cap = negative_capable(n)
            results.append({"n": n, "g": len(cap), "negative_capable": [{"lambda": format_partition(c.shape), "slack": c.slack} for c in cap]})
        if fmt == "json":
            sys.stdout.write(json.dumps(results, indent=2) + "\n")
        elif fmt == "csv":
            sys.stdout.write("n,g\n" + "".join(f"{r['n']},{r['g']}\n" for r in results))
        else:
            for r in results:
                sys.stdout.write(f"n={r['n']} g={r['g']}: " + " ".join(x["lambda"] for x in r["negative_capable"]) + "\n")
        return EXIT_OK
    rows = None
    if a.rows:
        rows = [_partition(t) for t in a.rows.split(";") if t.strip()]
        for r in rows:
            if sum(r) != a.n:
                raise UsageError(f"row {format_partition(r)} is not a partition of {a.n}")
    if a.n < 2:
        raise UsageError("census needs --n >= 2")
    report = count_f(a.n, a.strategy, rows=rows, threads=cfg.threads, checkpoint=a.checkpoint, joint=True if a.joint else None)
    if not cfg.timings:
        report.timings = {}
    if fmt == "json":
        obj = report.to_json_obj()
        if not cfg.timings:
            obj.pop("timings")
        sys.stdout.write(json.dumps(obj, indent=2) + "\n")
    elif fmt == "csv":
        sys.stdout.write(report.to_csv())
    else:
        sys.stdout.write(report.to_text())
        if cfg.timings:
            sys.stdout.write("timings: " + ", ".join(f"{k} {v:.3f}s" for k, v in report.timings.items()) + "\n")
    return EXIT_OK


def cmd_fixtures(cfg: RunConfig) -> int:
    a = cfg.args
    if not a.fixtures_dir and not a.check:
        raise UsageError("fixtures needs --fixtures-dir and/or --check")
    if a.fixtures_dir:
        for path in fixtures.write(a.fixtures_dir):
            sys.stdout.write(f"wrote {path}\n")
    if a.check:
        if not Path(a.check).is_dir():
            raise UsageError(f"--check directory {a.check} does not exist")
        diffs = fixtures.check(a.check)
        if cfg.emit == "json":
            sys.stdout.write(json.dumps({"directory": a.check, "diffs": diffs}, indent=2) + "\n")
        elif diffs:
            for name, text in diffs.items():
                sys.stdout.write(text)
        else:
            sys.stdout.write(f"fixtures in {a.check}: no differences\n")
        return EXIT_FAIL if diffs else EXIT_OK
    return EXIT_OK


COMMANDS = {"table": cmd_table, "psi": cmd_psi, "verify": cmd_verify, "census": cmd_census, "fixtures": cmd_fixtures}


def main(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        threads = args.threads or _default_threads()
        cfg = RunConfig(args.command, threads, args.emit, not args.no_timings, args)
        return COMMANDS[args.command](cfg)
    except UsageError as exc:
        sys.stderr.write(f"psipos: error: {exc}\n")
        return EXIT_USAGE
    except CapacityError as exc:
        sys.stderr.write(f"psipos: capacity: {exc}\n")
        return EXIT_CAPACITY


def entry() -> None:
    sys.exit(main())


if __name__ == "__main__":  # pragma: no cover
    entry()
