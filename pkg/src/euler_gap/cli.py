"""Command-line front end.

Exit codes: 0 success (for ``verify``: everything certified), 1 some check
falsified, 2 usage error, 3 inconclusive at the configured ceilings.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import logging
import sys
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from fractions import Fraction
from pathlib import Path

from . import __version__
from .chain import ChainOptions, MuCandidate, bound_digits, first_certified_n0, theorem_check, verify_chain
from .euler_product import trajectory_rows
from .exponents import scan
from .numerics import Status, parse_rational, rat_str
from .primes import SieveCapExceeded, default_table
from .report import SCHEMA, allow_big_decimals, chain_report_to_dict, exponent_record_to_dict, flatten_chain_dict, replay_document
from .zeta import adaptive_enclosure, zeta2_enclosure

log = logging.getLogger("euler_gap")

EXIT_OK, EXIT_FALSIFIED, EXIT_USAGE, EXIT_INCONCLUSIVE = 0, 1, 2, 3


class UsageError(Exception):
    pass


@dataclass(frozen=True)
class RunConfig:
    subcommand: str
    n_range: tuple[int, int] | None
    mu: MuCandidate | None
    truncation: int | None
    terms: int | None
    output_format: str
    out: Path | None
    verbosity: int

    def as_dict(self) -> dict:
        return {
            "subcommand": self.subcommand,
            "n_range": list(self.n_range) if self.n_range else None,
            "mu": str(self.mu) if self.mu else None,
            "truncation": "auto" if self.truncation is None else self.truncation,
            "terms": "auto" if self.terms is None else self.terms,
        }


# ---------------------------------------------------------------------------
# argument parsing
# ---------------------------------------------------------------------------


def parse_range(text: str) -> tuple[int, int]:
    """``"a..b"`` (inclusive) or a single ``"a"``; both ends must be >= 1."""
    lo_s, sep, hi_s = text.partition("..")
    try:
        lo = int(lo_s)
        hi = int(hi_s) if sep else lo
    except ValueError:
        raise UsageError(f"--n: expected a..b or a single integer, got {text!r}") from None
    if lo < 1 or hi < lo:
        raise UsageError(f"--n: range {text!r} must satisfy 1 <= a <= b")
    return lo, hi


def parse_mu(text: str) -> MuCandidate:
    try:
        return MuCandidate(parse_rational(text))
    except (ValueError, ZeroDivisionError) as exc:
        raise UsageError(f"--mu: {exc}") from None


def _parse_policy(text: str, flag: str) -> int | None:
    if text == "auto":
        return None
    try:
        value = int(text)
    except ValueError:
        raise UsageError(f"{flag}: expected 'auto' or a positive integer, got {text!r}") from None
    if value < 1:
        raise UsageError(f"{flag}: must be positive, got {value}")
    return value


def _parse_positive_rational(text: str, flag: str) -> Fraction:
    try:
        value = parse_rational(text)
    except (ValueError, ZeroDivisionError) as exc:
        raise UsageError(f"{flag}: {exc}") from None
    if value <= 0:
        raise UsageError(f"{flag}: must be positive")
    return value


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(message)


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="euler-gap", description=__doc__.splitlines()[0])
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = parser.add_subparsers(dest="subcommand", required=True, parser_class=_Parser)

    def common(p, formats=("json", "csv", "table"), default="table"):
        p.add_argument("--format", choices=formats, default=default)
        p.add_argument("--out", type=Path, help="write output here instead of stdout")
        p.add_argument("-v", "--verbose", action="count", default=0)

    p = sub.add_parser("verify", help="certify the inequality chain for each n")
    p.add_argument("--n", required=True, help="index range a..b (inclusive)")
    p.add_argument("--mu", required=True, help="candidate measure P/Q")
    p.add_argument("--truncation", default="auto", help="prime truncation index K, or auto")
    p.add_argument("--terms", default="auto", help="series terms N for 6/pi^2, or auto")
    p.add_argument("--exact-threshold", type=int, default=ChainOptions.exact_threshold)
    p.add_argument("--jobs", type=int, default=1, help="worker processes")
    common(p)

    p = sub.add_parser("scan", help="empirical irrationality exponents")
    p.add_argument("--n", required=True)
    p.add_argument("--precision", default="1/1000")
    common(p)

    p = sub.add_parser("table", help="Bertrand baseline versus the prime bound")
    p.add_argument("--n", required=True)
    p.add_argument("--mu", required=True)
    p.add_argument("--exact-threshold", type=int, default=ChainOptions.exact_threshold)
    common(p)

    p = sub.add_parser("enclosure", help="rational enclosures of zeta(2) and 6/pi^2")
    g = p.add_mutually_exclusive_group(required=True)
    g.add_argument("--terms", help="number of series terms N")
    g.add_argument("--width", help="target width P/Q for the 6/pi^2 enclosure")
    common(p)

    p = sub.add_parser("trajectory", help="partial products and denominator cofactors")
    p.add_argument("--n", required=True)
    common(p, formats=("csv", "json"), default="csv")

    p = sub.add_parser("replay", help="re-check a JSON verify report")
    p.add_argument("report", type=Path)
    p.add_argument("-v", "--verbose", action="count", default=0)
    return parser


# ---------------------------------------------------------------------------
# output helpers
# ---------------------------------------------------------------------------


def _csv_text(rows: list[dict]) -> str:
    fields: list[str] = []
    for row in rows:
        for k in row:
            if k not in fields:
                fields.append(k)
    buf = io.StringIO()
    writer = csv.DictWriter(buf, fieldnames=fields, lineterminator="\n")
    writer.writeheader()
    writer.writerows(rows)
    return buf.getvalue()


def _table_text(rows: list[dict], header_note: str = "") -> str:
    if not rows:
        return header_note
    cols = list(rows[0])
    widths = {c: max(len(c), *(len(str(r.get(c, ""))) for r in rows)) for c in cols}
    lines = [header_note] if header_note else []
    lines.append("  ".join(c.rjust(widths[c]) for c in cols))
    for r in rows:
        lines.append("  ".join(str(r.get(c, "")).rjust(widths[c]) for c in cols))
    return "\n".join(lines) + "\n"


def _emit(text: str, out: Path | None) -> None:
    if out is None:
        sys.stdout.write(text)
    else:
        out.write_text(text)


def _json_text(doc: dict) -> str:
    return json.dumps(doc, indent=1) + "\n"


# ---------------------------------------------------------------------------
# subcommands
# ---------------------------------------------------------------------------


def _verify_worker(args):
    n, mu, opts = args
    return verify_chain(n, mu, opts)


def cmd_verify(cfg: RunConfig, exact_threshold: int, jobs: int) -> int:
    lo, hi = cfg.n_range
    if cfg.truncation is not None and cfg.truncation <= hi:
        raise UsageError(f"--truncation: K={cfg.truncation} must exceed every n (max {hi})")
    if cfg.mu.below_two:
        log.warning("mu = %s <= 2: no genuine irrationality measure is this small", cfg.mu)
    opts = ChainOptions(K=cfg.truncation, N=cfg.terms, exact_threshold=exact_threshold)
    work = [(n, cfg.mu, opts) for n in range(lo, hi + 1)]
    if jobs > 1:
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            reports = list(pool.map(_verify_worker, work, chunksize=8))
    else:
        reports = [_verify_worker(w) for w in work]

    statuses = [s for r in reports for s in r.statuses()]
    if Status.FALSIFIED in statuses:
        code = EXIT_FALSIFIED
    elif Status.INCONCLUSIVE in statuses:
        code = EXIT_INCONCLUSIVE
    else:
        code = EXIT_OK
    summary = {
        "instances": len(reports),
        "all_certified": sum(r.all_certified for r in reports),
        "falsified": statuses.count(Status.FALSIFIED),
        "inconclusive": statuses.count(Status.INCONCLUSIVE),
        "n0_link1": first_certified_n0(reports),
        "exit_code": code,
    }
    dicts = [chain_report_to_dict(r) for r in reports]
    if cfg.output_format == "json":
        text = _json_text({"schema": SCHEMA, "config": cfg.as_dict(), "reports": dicts, "summary": summary})
    elif cfg.output_format == "csv":
        text = _csv_text([flatten_chain_dict(d) for d in dicts])
    else:
        rows = []
        for r in reports:
            row = {"n": r.n, "K": r.K, "N": r.N}
            row.update({k: v.status.value for k, v in r.links.items()})
            row["L3_mode"] = r.links["L3"].mode or "-"
            row["theorem"] = f"{r.theorem.status.value} ({r.theorem.mode})"
            row["gap~"] = f"{float(r.gap.midpoint):.6g}"
            rows.append(row)
        note = f"mu = {cfg.mu}; gap~ is a non-certified decimal midpoint"
        text = _table_text(rows, note)
        text += f"summary: {json.dumps(summary)}\n"
    _emit(text, cfg.out)
    log.info("verify finished with exit code %d", code)
    return code


def cmd_scan(cfg: RunConfig, precision: Fraction) -> int:
    lo, hi = cfg.n_range
    result = scan(hi, precision, start=lo)
    dicts = [exponent_record_to_dict(r, m) for r, m in zip(result.records, result.running_max)]
    if cfg.output_format == "json":
        doc = {
            "schema": SCHEMA,
            "config": {**cfg.as_dict(), "precision": rat_str(precision)},
            "records": dicts,
            "summary": {"max_mu_hi": rat_str(result.max_hi), "argmax_n": result.argmax},
        }
        text = _json_text(doc)
    elif cfg.output_format == "csv":
        text = _csv_text([{k: str(v) for k, v in d.items()} for d in dicts])
    else:
        rows = [
            {
                "n": r.n,
                "mu_lo~": f"{float(r.mu_n.lo):.6f}",
                "mu_hi~": f"{float(r.mu_n.hi):.6f}",
                "midpoint~": f"{r.midpoint:.3f}",
                "terms": r.terms,
                "converged": r.converged,
            }
            for r in result.records
        ]
        note = "decimal columns (~) are non-certified approximations of exact enclosures"
        text = _table_text(rows, note)
        text += f"running max of mu_hi ~ {float(result.max_hi):.6f} (first at n={result.argmax})\n"
    _emit(text, cfg.out)
    return EXIT_OK


def cmd_table(cfg: RunConfig, exact_threshold: int) -> int:
    lo, hi = cfg.n_range
    table = default_table()
    ps = table.first(hi + 1)
    rows = []
    for n in range(lo, hi + 1):
        p, q = ps[n - 1], ps[n]
        digits, dmode = bound_digits(n, cfg.mu, exact_threshold=exact_threshold)
        th = theorem_check(n, cfg.mu, exact_threshold=exact_threshold)
        rows.append(
            {
                "n": str(n),
                "p_n": str(p),
                "p_next": str(q),
                "two_p_n": str(2 * p),
                "bound_digits": digits,
                "digits_mode": dmode,
                "bertrand": str(q < 2 * p).lower(),
                "theorem": th.status.value,
                "theorem_mode": th.mode,
            }
        )
    if cfg.output_format == "json":
        text = _json_text({"schema": SCHEMA, "config": cfg.as_dict(), "rows": rows})
    elif cfg.output_format == "csv":
        text = _csv_text(rows)
    else:
        text = _table_text(rows, f"mu = {cfg.mu}; bound_digits = decimal digits of primorial^(2 mu)")
    _emit(text, cfg.out)
    code = EXIT_OK
    if any(r["bertrand"] != "true" or r["theorem"] == "falsified" for r in rows):
        code = EXIT_FALSIFIED
    return code


def cmd_enclosure(cfg: RunConfig, width: Fraction | None) -> int:
    if width is not None:
        enc = adaptive_enclosure(width)
    else:
        enc = zeta2_enclosure(cfg.terms)
    items = [("zeta2", enc.zeta2), ("six_over_pi2", enc.six_over_pi2)]
    rows = [
        {"quantity": name, "terms": str(enc.terms), "lo": rat_str(iv.lo), "hi": rat_str(iv.hi), "width": rat_str(iv.width)}
        for name, iv in items
    ]
    if cfg.output_format == "json":
        doc = {"schema": SCHEMA, "config": {"terms": cfg.terms, "width": rat_str(width) if width else None}}
        doc["enclosure"] = {r["quantity"]: {k: r[k] for k in ("lo", "hi", "width")} for r in rows}
        doc["enclosure"]["terms"] = enc.terms
        text = _json_text(doc)
    elif cfg.output_format == "csv":
        text = _csv_text(rows)
    else:
        lines = [f"terms N = {enc.terms}"]
        for name, iv in items:
            lines.append(f"{name}: [{rat_str(iv.lo)}, {rat_str(iv.hi)}]  width {rat_str(iv.width)}  (~{float(iv.width):.3e})")
        text = "\n".join(lines) + "\n"
    _emit(text, cfg.out)
    return EXIT_OK


def cmd_trajectory(cfg: RunConfig) -> int:
    lo, hi = cfg.n_range
    rows = trajectory_rows(hi)[lo - 1 :]
    if cfg.output_format == "json":
        text = _json_text({"schema": SCHEMA, "config": cfg.as_dict(), "rows": rows})
    else:
        text = _csv_text(rows)
    _emit(text, cfg.out)
    return EXIT_OK


def cmd_replay(path: Path) -> int:
    try:
        doc = json.loads(path.read_text())
    except (OSError, json.JSONDecodeError) as exc:
        raise UsageError(f"cannot read report {path}: {exc}") from None
    problems = replay_document(doc)
    for p in problems:
        print(p, file=sys.stderr)
    n = len(doc.get("reports", []))
    print(f"replayed {n} reports: {len(problems)} disagreements")
    return EXIT_OK if not problems else EXIT_FALSIFIED


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    allow_big_decimals()
    try:
        args = parser.parse_args(argv)
        logging.basicConfig(
            level=logging.WARNING - 10 * min(args.verbose, 2), format="%(levelname)s %(name)s: %(message)s"
        )
        if args.subcommand == "replay":
            return cmd_replay(args.report)
        cfg = RunConfig(
            subcommand=args.subcommand,
            n_range=parse_range(args.n) if getattr(args, "n", None) is not None else None,
            mu=parse_mu(args.mu) if getattr(args, "mu", None) is not None else None,
            truncation=_parse_policy(args.truncation, "--truncation") if hasattr(args, "truncation") else None,
            terms=_parse_policy(args.terms, "--terms") if getattr(args, "terms", None) is not None else None,
            output_format=args.format,
            out=args.out,
            verbosity=args.verbose,
        )
        if args.subcommand == "verify":
            if args.jobs < 1:
                raise UsageError("--jobs must be >= 1")
            return cmd_verify(cfg, args.exact_threshold, args.jobs)
        if args.subcommand == "scan":
            return cmd_scan(cfg, _parse_positive_rational(args.precision, "--precision"))
        if args.subcommand == "table":
            return cmd_table(cfg, args.exact_threshold)
        if args.subcommand == "enclosure":
            width = _parse_positive_rational(args.width, "--width") if args.width is not None else None
            return cmd_enclosure(cfg, width)
        return cmd_trajectory(cfg)
    except UsageError as exc:
        print(f"euler-gap: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except SieveCapExceeded as exc:
        print(f"euler-gap: error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    raise SystemExit(main())
