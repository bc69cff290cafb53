"""Command-line front end.

    pebbling sequence --k-max 20
    pebbling table --k-max 30 --m-max 3 --format csv
    pebbling enumerate --m-max 2 --max-steps 9
    pebbling constants --digits 50
    pebbling asymptotic --k-max 200 --digits 20
    pebbling w0 --l-max 30
    pebbling verify --k-max 60 --order 100 --digits 20

Exit codes: 0 success, 1 verification failure, 2 usage error, 3 resource
ceiling hit (partial results are still printed).
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import sys
from dataclasses import dataclass
from typing import Any, Optional, Sequence

from . import asymptotics as asy
from .board import ResourceLimitError, enumerate_counts
from .qseries import w0
from .recurrence import build_table, g, g_total, m_max
from .verify import refinement_check, run_all

COMMANDS = ("table", "sequence", "enumerate", "constants", "asymptotic", "w0", "verify")
EXIT_OK, EXIT_FAIL, EXIT_USAGE, EXIT_RESOURCE = 0, 1, 2, 3


@dataclass
class RunConfig:
    command: str
    k_max: Optional[int] = None
    m_max: Optional[int] = None
    max_steps: Optional[int] = None
    l_max: Optional[int] = None
    precision_digits: Optional[int] = None
    series_order: Optional[int] = None
    output_format: Optional[str] = None
    output_path: Optional[str] = None
    ks: Optional[list[int]] = None


class Table:
    """Columns plus rows; big integers stay exact in every format."""

    def __init__(self, columns: Sequence[str], rows: list[Sequence[Any]], note: str = ""):
        self.columns = list(columns)
        self.rows = rows
        self.note = note

    def render(self, fmt: str) -> str:
        if fmt == "csv":
            buf = io.StringIO()
            w = csv.writer(buf, lineterminator="\n")
            w.writerow(self.columns)
            w.writerows(self.rows)
            return buf.getvalue()
        if fmt == "json":
            records = [
                {c: _json_value(v) for c, v in zip(self.columns, row)} for row in self.rows
            ]
            return json.dumps(records, indent=2) + "\n"
        cells = [self.columns] + [[str(v) for v in row] for row in self.rows]
        widths = [max(len(r[i]) for r in cells) for i in range(len(self.columns))]
        lines = ["  ".join(v.rjust(w) for v, w in zip(r, widths)) for r in cells]
        if self.note:
            lines.append(self.note)
        return "\n".join(lines) + "\n"


def _json_value(v: Any) -> Any:
    if isinstance(v, bool) or v is None:
        return v
    if isinstance(v, int):
        return v if abs(v) < 2**53 else str(v)
    return str(v)


def _usage(msg: str) -> SystemExit:
    print(f"pebbling: error: {msg}", file=sys.stderr)
    return SystemExit(EXIT_USAGE)


def _positive(name: str, value: Optional[int], default: int) -> int:
    value = default if value is None else value
    if value <= 0:
        raise _usage(f"{name} must be positive (got {value})")
    return value


# ---------------------------------------------------------------- commands


def cmd_table(cfg: RunConfig) -> tuple[Table, int]:
    k_max = _positive("--k-max", cfg.k_max, 30)
    table = build_table(k_max)
    rows = []
    for k in range(k_max + 1):
        top = m_max(k) if cfg.m_max is None else min(m_max(k), cfg.m_max)
        for m in range(max(top, 0) + 1):
            rows.append((k, m, g(table, k, m)))
    return Table(("k", "m", "G"), rows), EXIT_OK


def cmd_sequence(cfg: RunConfig) -> tuple[Table, int]:
    k_max = _positive("--k-max", cfg.k_max, 30)
    if k_max < 2:
        raise _usage("--k-max must be at least 2 for G(k)")
    table = build_table(k_max)
    return Table(("k", "G"), [(k, g_total(table, k)) for k in range(2, k_max + 1)]), EXIT_OK


def cmd_enumerate(cfg: RunConfig) -> tuple[Table, int]:
    steps = _positive("--max-steps", cfg.max_steps, 9)
    top_m = 0 if cfg.m_max is None else cfg.m_max
    if top_m < 0:
        raise _usage("--m-max must be non-negative")
    rows = []
    status = EXIT_OK
    note = ""
    for m in range(top_m + 1):
        base = 2 if m == 0 else 2 * m + 2
        try:
            counts = enumerate_counts(m, steps)
            last = base + steps
        except ResourceLimitError as exc:
            counts, last = exc.counts, exc.last_complete
            status = EXIT_RESOURCE
            note = f"partial results: {exc} (last complete level {last} pebbles, m={m})"
        table = build_table(last)
        for k in range(base, last + 1):
            bfs = counts.get(k, 0)
            rec = g(table, k, m)
            rows.append((m, k, bfs, rec, bfs == rec))
        if status == EXIT_RESOURCE:
            break
    return Table(("m", "k", "bfs", "recurrence", "match"), rows, note), status


def _constants(digits: int, order: Optional[int]) -> dict[str, Any]:
    policy = asy.PrecisionPolicy(digits=digits, series_order=order)
    c = asy.asymptotic_constants(policy)
    out: dict[str, Any] = {"digits": digits}
    for key in ("z_star", "a", "s_prime", "c_star", "c_1", "theorem_b_prefactor"):
        out[key] = asy.decimal_string(getattr(c, key), digits)
    return out


def cmd_constants(cfg: RunConfig) -> tuple[Any, int]:
    digits = _positive("--digits", cfg.precision_digits, 15)
    try:
        consts = _constants(digits, cfg.series_order)
    except asy.PrecisionError as exc:
        raise _usage(str(exc))
    return consts, EXIT_OK


def cmd_asymptotic(cfg: RunConfig) -> tuple[Table, int]:
    k_max = _positive("--k-max", cfg.k_max, 200)
    digits = _positive("--digits", cfg.precision_digits, 20)
    ks = cfg.ks or list(range(50, k_max + 1, 50))
    if max(ks, default=0) > k_max:
        raise _usage("--ks entries must not exceed --k-max")
    ms = list(range((1 if cfg.m_max is None else cfg.m_max) + 1))
    table = build_table(k_max)
    report = asy.ratio_report(table, asy.PrecisionPolicy(digits, series_order=cfg.series_order), ks, ms)
    rows = []
    for c in report.checks:
        d = c.data
        rows.append((d["k"], d["m"], d.get("ratio", "inapplicable"), d.get("gap", ""), c.passed))
    return Table(("k", "m", "ratio", "gap", "ok"), rows), EXIT_OK if report.passed else EXIT_FAIL


def cmd_w0(cfg: RunConfig) -> tuple[Table, int]:
    l_max = _positive("--l-max", cfg.l_max, 20)
    if l_max < 2:
        raise _usage("--l-max must be at least 2")
    return Table(("l", "W0"), [(l, w0(l)) for l in range(2, l_max + 1)]), EXIT_OK


def cmd_verify(cfg: RunConfig) -> tuple[Any, int]:
    k_max = _positive("--k-max", cfg.k_max, 60)
    order = _positive("--order", cfg.series_order, 100)
    digits = _positive("--digits", cfg.precision_digits, 20)
    steps = _positive("--max-steps", cfg.max_steps, 9)
    if k_max < 5:
        raise _usage("--k-max must be at least 5 for the boundary identities")
    if order < 30:
        raise _usage("--order must be at least 30")
    if digits < 15:
        raise _usage("--digits must be at least 15 to compare published constants")
    try:
        report = run_all(k_max=k_max, order=order, digits=digits, max_steps=steps)
    except ResourceLimitError as exc:
        print(f"resource ceiling: {exc}", file=sys.stderr)
        return {"passed": False, "error": str(exc)}, EXIT_RESOURCE
    report.extend(refinement_check(asy.PrecisionPolicy(digits)))
    return report, EXIT_OK if report.passed else EXIT_FAIL


HANDLERS = {
    "table": cmd_table,
    "sequence": cmd_sequence,
    "enumerate": cmd_enumerate,
    "constants": cmd_constants,
    "asymptotic": cmd_asymptotic,
    "w0": cmd_w0,
    "verify": cmd_verify,
}


# ------------------------------------------------------------------ output


def _render(result: Any, fmt: str) -> str:
    if isinstance(result, Table):
        return result.render(fmt)
    if hasattr(result, "to_dict"):  # VerificationReport
        if fmt == "json":
            return json.dumps(result.to_dict(), indent=2) + "\n"
        if fmt == "csv":
            return Table(
                ("check", "passed", "detail", "first_failure"),
                [(c.name, c.passed, c.detail, "" if c.first_failure is None else c.first_failure)
                 for c in result.checks],
            ).render("csv")
        return result.render() + "\n"
    if fmt == "json":
        return json.dumps(result, indent=2) + "\n"
    rows = [(k, v) for k, v in result.items()]
    return Table(("name", "value"), rows).render(fmt)


def run(cfg: RunConfig, stdout=None) -> int:
    stdout = stdout or sys.stdout
    if cfg.command not in HANDLERS:
        raise _usage(f"unknown command {cfg.command!r}")
    result, status = HANDLERS[cfg.command](cfg)
    fmt = cfg.output_format
    if fmt is None:
        interactive = cfg.output_path is None and getattr(stdout, "isatty", lambda: False)()
        fmt = "text" if interactive else "json"
    text = _render(result, fmt)
    if cfg.output_path:
        with open(cfg.output_path, "w", encoding="utf-8", newline="") as fh:
            fh.write(text)
    else:
        stdout.write(text)
    if cfg.command == "verify" and status == EXIT_FAIL and hasattr(result, "failures"):
        first = result.failures()[0]
        print(f"first counterexample: {first.line()}", file=sys.stderr)
    if isinstance(result, Table) and result.note:
        print(result.note, file=sys.stderr)
    return status


def _int_list(text: str) -> list[int]:
    try:
        return [int(x) for x in text.split(",") if x.strip()]
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected comma-separated integers, got {text!r}")


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--k-max", type=int)
    common.add_argument("--m-max", type=int)
    common.add_argument("--max-steps", type=int)
    common.add_argument("--l-max", type=int)
    common.add_argument("--digits", type=int)
    common.add_argument("--order", type=int)
    common.add_argument("--format", choices=("csv", "json", "text"))
    common.add_argument("--out", metavar="PATH")
    common.add_argument("--ks", type=_int_list, help="asymptotic: comma-separated k values")

    parser = argparse.ArgumentParser(
        prog="pebbling",
        description="Exact counts and growth constants for chessboard pebbling.",
    )
    sub = parser.add_subparsers(dest="command", required=True)
    helps = {
        "table": "G(k, m) rows from the recurrences",
        "sequence": "G(k) = G(k, 0) for k = 2..k-max",
        "enumerate": "brute-force board search vs recurrence",
        "constants": "z_star, a, S'(z_star), c_star, c_1, prefactor",
        "asymptotic": "exact / asymptotic ratio report",
        "w0": "W0(l) for l = 2..l-max",
        "verify": "run every verification suite",
    }
    for name in COMMANDS:
        sub.add_parser(name, parents=[common], help=helps[name])
    return parser


def main(argv: Optional[Sequence[str]] = None) -> int:
    try:
        args = build_parser().parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    cfg = RunConfig(
        command=args.command,
        k_max=args.k_max,
        m_max=args.m_max,
        max_steps=args.max_steps,
        l_max=args.l_max,
        precision_digits=args.digits,
        series_order=args.order,
        output_format=args.format,
        output_path=args.out,
        ks=args.ks,
    )
    try:
        return run(cfg)
    except SystemExit as exc:
        return int(exc.code or 0)


if __name__ == "__main__":
    sys.exit(main())
