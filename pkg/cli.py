#!/usr/bin/env python3
"""
balans command line
Subcommands: seq, detect, find, recip, verify, grid.

Exit codes: 0 success / all pass, 1 verification mismatch, 2 usage error,
3 undecidable at the term budget. Logging goes to stderr so stdout stays
byte-deterministic.
"""

import argparse
import copy
import csv
import io
import json
import logging
import sys
from fractions import Fraction
from pathlib import Path
from typing import Any, Dict, List, Optional, Sequence, Tuple

from balancing import CoeffPair, Variant, balancer_of, find_all, square_balancer_of
from exactnum import rat_str
from exceptions import BalansError, BudgetError, ConfigError
from gridlab import emit_csv, emit_ppm, pattern_report, scan_grid
from recdetect import detect_fixed, detect_minimal, detect_table_form, render_tuple
from recipsum import (DEFAULT_BUDGET_CAP, DEFAULT_INITIAL_TERMS, Denominator, Mode, Sign, SumSpec,
                      inverse_answer)
from sequences import (Recurrence, balancing_rec, cobalancer_rec, cobalancing_rec, fibonacci,
                       generalized_tribonacci, pell, tribonacci, window)
from verify import THEOREMS, VerifyOptions, run_theorem
from workers import resolve_jobs

logger = logging.getLogger("balans")

DEFAULT_CONFIG_FILE = Path(__file__).resolve().parent / "balans_config.json"

EXIT_OK = 0
EXIT_MISMATCH = 1
EXIT_USAGE = 2
EXIT_UNDECIDABLE = 3

DEFAULT_CONFIG: Dict[str, Any] = {
    "jobs": 1,
    "budget": {"initial_terms": DEFAULT_INITIAL_TERMS, "cap": DEFAULT_BUDGET_CAP},
    "verify": {},
    "grid": {"a_max": 120, "b_max": 120, "n_max": 5000},
}

FAMILIES = ("fibonacci", "tribonacci", "pell", "balancing", "cobalancing", "cobalancer",
            "gentrib", "recurrence")


# ---------------------------------------------------------------------------
# Configuration
# ---------------------------------------------------------------------------

def _merge(base: Dict[str, Any], override: Dict[str, Any]) -> Dict[str, Any]:
    merged = copy.deepcopy(base)
    for key, value in override.items():
        if isinstance(value, dict) and isinstance(merged.get(key), dict):
            merged[key] = _merge(merged[key], value)
        else:
            merged[key] = value
    return merged


def load_config(config_file: Optional[str] = None) -> Dict[str, Any]:
    """Load defaults from JSON; a missing file falls back to built-in defaults."""
    config_path = Path(config_file) if config_file else DEFAULT_CONFIG_FILE
    if not config_path.exists():
        logger.warning("⚠️  %s not found, using built-in defaults", config_path)
        return copy.deepcopy(DEFAULT_CONFIG)
    try:
        with open(config_path, "r") as f:
            loaded = json.load(f)
    except (OSError, json.JSONDecodeError) as e:
        raise ConfigError(f"Error loading {config_path}: {e}")
    if not isinstance(loaded, dict):
        raise ConfigError(f"{config_path} must hold a JSON object")
    logger.info("✅ Loaded configuration from %s", config_path)
    return _merge(DEFAULT_CONFIG, loaded)


# ---------------------------------------------------------------------------
# Argument helpers
# ---------------------------------------------------------------------------

def _int_list(text: str) -> List[int]:
    try:
        return [int(part) for part in text.split(",") if part.strip()]
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected comma-separated integers, got {text!r}")


def _rat_list(text: str) -> List[Fraction]:
    try:
        return [Fraction(part.strip()) for part in text.split(",") if part.strip()]
    except (ValueError, ZeroDivisionError):
        raise argparse.ArgumentTypeError(f"expected comma-separated rationals, got {text!r}")


def _positive_int(text: str) -> int:
    try:
        value = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected a positive integer, got {text!r}")
    if value < 1:
        raise argparse.ArgumentTypeError(f"expected a positive integer, got {text!r}")
    return value


def _span(text: str) -> Tuple[int, int]:
    try:
        lo, hi = (int(part) for part in text.split(":"))
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected LO:HI, got {text!r}")
    if lo > hi:
        raise argparse.ArgumentTypeError(f"empty range {text!r}")
    return lo, hi


def build_family(args: argparse.Namespace) -> Recurrence:
    name = args.family
    if name == "fibonacci":
        return fibonacci()
    if name == "tribonacci":
        return tribonacci()
    if name == "pell":
        return pell()
    if name == "balancing":
        return balancing_rec()
    if name == "cobalancing":
        return cobalancing_rec(args.a, args.b)
    if name == "cobalancer":
        return cobalancer_rec(args.a, args.b)
    if name == "gentrib":
        if not args.params or len(args.params) != 6:
            raise argparse.ArgumentTypeError("gentrib needs --params p,q,r,x,y,z")
        return generalized_tribonacci(*args.params)
    if not args.coeffs or not args.init:
        raise argparse.ArgumentTypeError("recurrence needs --coeffs and --init")
    return Recurrence(tuple(args.coeffs), args.constant, tuple(args.init), args.base, "recurrence")


def _add_family_args(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("--family", choices=FAMILIES, required=True)
    parser.add_argument("--a", type=int, default=1, help="pair coefficient a (cobalancing families)")
    parser.add_argument("--b", type=int, default=1, help="pair coefficient b (cobalancing families)")
    parser.add_argument("--params", type=_rat_list, help="gentrib: p,q,r,x,y,z")
    parser.add_argument("--coeffs", type=_rat_list, help="recurrence: x1,...,xd")
    parser.add_argument("--constant", type=Fraction, default=Fraction(0), help="recurrence: constant term")
    parser.add_argument("--init", type=_rat_list, help="recurrence: initial terms")
    parser.add_argument("--base", type=int, default=0, help="recurrence: index of the first initial term")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="balans",
        description="Exact explorer for (a,b) balancing numbers, recurrences and reciprocal sums")
    parser.add_argument("--format", choices=("json", "csv", "text"), default="json")
    parser.add_argument("--jobs", type=int, help="worker processes (default: BALANS_JOBS, then config, then 1)")
    parser.add_argument("--config", help="configuration file (default: balans_config.json)")
    parser.add_argument("--verbose", "-v", action="store_true", help="debug logging on stderr")
    sub = parser.add_subparsers(dest="command", required=True)

    seq = sub.add_parser("seq", help="terms of a recurrence family")
    _add_family_args(seq)
    seq.add_argument("--start", type=int, default=0, help="first index (negative extends backward)")
    seq.add_argument("--count", type=int, default=10)

    detect = sub.add_parser("detect", help="exact recurrence satisfied by a term list")
    detect.add_argument("--terms", type=_rat_list, required=True)
    detect.add_argument("--depth", type=int, help="fixed depth (default: minimal search)")
    detect.add_argument("--constant", action="store_true", help="allow / require a constant term")
    detect.add_argument("--max-depth", type=_positive_int, default=5)
    detect.add_argument("--table-form", action="store_true", help="fit (1,K,-K,-1,1)")

    find = sub.add_parser("find", help="balancing / cobalancing solutions up to nmax")
    find.add_argument("--a", type=int, required=True)
    find.add_argument("--b", type=int, required=True)
    find.add_argument("--variant", choices=[v.value for v in Variant], default=Variant.BALANCING.value)
    find.add_argument("--square", action="store_true", help="sums of squares")
    find.add_argument("--nmax", type=int, default=1000)
    find.add_argument("--n", type=int, help="test a single n instead of scanning")
    find.add_argument("--detect", action="store_true", help="also detect the minimal recurrence")

    recip = sub.add_parser("recip", help="floor / nearest integer of an inverse reciprocal sum")
    _add_family_args(recip)
    recip.add_argument("--start", type=int, required=True)
    recip.add_argument("--stride", type=int, default=1)
    recip.add_argument("--alternating", action="store_true")
    recip.add_argument("--partial-sum-denoms", action="store_true")
    recip.add_argument("--mode", choices=[m.value for m in Mode], default=Mode.FLOOR.value)
    recip.add_argument("--budget", type=int, help="maximum number of summed terms")

    verify = sub.add_parser("verify", help="run one theorem check over its default range",
                            description="Theorem ids: " + ", ".join(sorted(THEOREMS)) +
                            ". Default ranges come from balans_config.json.")
    verify.add_argument("--theorem", choices=sorted(THEOREMS), required=True)
    verify.add_argument("--range", type=_span, help="index range LO:HI")
    verify.add_argument("--strides", type=_span, help="stride range LO:HI (m or k)")
    verify.add_argument("--nmax", type=int)
    verify.add_argument("--ymax", type=int)

    grid = sub.add_parser("grid", help="square balancing grid scan")
    grid.add_argument("--variant", choices=[v.value for v in Variant], default=Variant.BALANCING.value)
    grid.add_argument("--amax", type=_positive_int)
    grid.add_argument("--bmax", type=_positive_int)
    grid.add_argument("--nmax", type=_positive_int)
    grid.add_argument("--out-csv", help="CSV path (stdout with --format csv when absent)")
    grid.add_argument("--out-ppm", help="plain PPM path")
    grid.add_argument("--pattern-report", action="store_true")
    return parser


# ---------------------------------------------------------------------------
# Output
# ---------------------------------------------------------------------------

def _stringify(value: Any) -> Any:
    """Numbers become decimal strings so arbitrary precision survives JSON parsers."""
    if isinstance(value, bool) or value is None or isinstance(value, str):
        return value
    if isinstance(value, (int, Fraction)):
        return rat_str(value)
    if isinstance(value, dict):
        return {str(k): _stringify(v) for k, v in value.items()}
    if isinstance(value, (list, tuple)):
        return [_stringify(v) for v in value]
    return str(value)


def _emit_json(payload: Any, out) -> None:
    out.write(json.dumps(_stringify(payload), sort_keys=True, indent=2) + "\n")


def _emit_rows(header: Sequence[str], rows: List[Sequence[Any]], out) -> None:
    writer = csv.writer(out, lineterminator="\n")
    writer.writerow(header)
    for row in rows:
        writer.writerow([_stringify(v) for v in row])


# ---------------------------------------------------------------------------
# Subcommands
# ---------------------------------------------------------------------------

def cmd_seq(args, config, out) -> int:
    rec = build_family(args)
    win = window(rec, args.start, args.count)
    indexed = list(zip(range(win.start, win.stop), win.terms))
    if args.format == "json":
        _emit_json({"family": rec.label, "start": win.start,
                    "terms": win.terms, "recurrence": rec.describe()}, out)
    elif args.format == "csv":
        _emit_rows(["index", "term"], indexed, out)
    else:
        out.write(" ".join(rat_str(t) for t in win.terms) + "\n")
    return EXIT_OK


def cmd_detect(args, config, out) -> int:
    if args.table_form:
        result = detect_table_form(args.terms)
    elif args.depth is not None:
        result = detect_fixed(args.terms, args.depth, with_constant=args.constant)
    else:
        result = detect_minimal(args.terms, args.max_depth, allow_constant=args.constant)
    rendered = render_tuple(result) if result else None
    if args.format == "json":
        payload = {"found": result is not None, "tuple": rendered}
        if result:
            payload.update({"coeffs": list(result.coeffs), "constant": result.constant,
                            "verified_terms": result.verified_terms, "form": result.form})
        _emit_json(payload, out)
    else:
        out.write((rendered or "none") + "\n")
    return EXIT_OK


def cmd_find(args, config, out) -> int:
    pair = CoeffPair(args.a, args.b)
    variant = Variant(args.variant)
    power = 2 if args.square else 1
    if args.n is not None:
        r = square_balancer_of(args.n, pair, variant) if args.square else balancer_of(args.n, pair, variant)
        solutions = [(args.n, r)] if r is not None else []
    else:
        jobs = resolve_jobs(args.jobs, config.get("jobs"))
        solutions = [(s.n, s.r) for s in find_all(pair, variant, args.nmax, power, jobs)]

    if args.format == "csv":
        _emit_rows(["n", "r"], solutions, out)
        return EXIT_OK
    if args.format == "text":
        for n, r in solutions:
            out.write(f"{n} {r}\n")
        return EXIT_OK
    payload: Dict[str, Any] = {"pair": str(pair), "variant": variant.value, "power": power,
                               "n": [n for n, _ in solutions], "r": [r for _, r in solutions]}
    if args.n is None:
        payload["nmax"] = args.nmax
    if args.detect:
        numbers = detect_minimal([n for n, _ in solutions], 5)
        partners = detect_minimal([r for _, r in solutions], 5)
        payload["recurrence"] = {"n": render_tuple(numbers) if numbers else None,
                                 "r": render_tuple(partners) if partners else None}
    _emit_json(payload, out)
    return EXIT_OK


def cmd_recip(args, config, out) -> int:
    rec = build_family(args)
    spec = SumSpec(rec, args.start, args.stride,
                   Sign.ALTERNATING if args.alternating else Sign.PLAIN,
                   Denominator.PARTIAL_SUM if args.partial_sum_denoms else Denominator.TERM)
    budget = config["budget"]
    cap = args.budget or budget.get("cap", DEFAULT_BUDGET_CAP)
    initial = min(budget.get("initial_terms", DEFAULT_INITIAL_TERMS), cap)
    verdict = inverse_answer(spec, Mode(args.mode), initial, cap)
    if args.format == "text":
        out.write(f"{verdict.answer}\n")
        return EXIT_OK
    _emit_json({
        "family": rec.label,
        "start": args.start,
        "stride": args.stride,
        "sign": spec.sign.value,
        "denominator": spec.denominator.value,
        "mode": verdict.mode.value,
        "answer": verdict.answer,
        "sum_enclosure": list(verdict.enclosure.as_strings()),
        "inverse_enclosure": list(verdict.inverse.as_strings()),
        "terms_used": verdict.terms_used,
        "tail": {"kind": verdict.certificate.kind, "first_omitted": verdict.certificate.first_omitted,
                 "bound": verdict.certificate.bound},
    }, out)
    return EXIT_OK


def _verify_options(args, config) -> VerifyOptions:
    defaults = config.get("verify", {}).get(args.theorem, {})
    budget = config["budget"]

    def pick(flag, key):
        if flag is not None:
            return flag
        value = defaults.get(key)
        return tuple(value) if isinstance(value, list) else value

    return VerifyOptions(
        n_range=pick(args.range, "range"),
        strides=pick(args.strides, "strides"),
        n_max=pick(args.nmax, "n_max"),
        y_max=pick(args.ymax, "y_max"),
        initial_terms=budget.get("initial_terms", DEFAULT_INITIAL_TERMS),
        budget_cap=budget.get("cap", DEFAULT_BUDGET_CAP),
        jobs=resolve_jobs(args.jobs, config.get("jobs")),
    )


def cmd_verify(args, config, out) -> int:
    table = run_theorem(args.theorem, _verify_options(args, config))
    if args.format == "json":
        _emit_json(table.to_dict(), out)
    elif args.format == "csv":
        _emit_rows(["status", "row"], [[row.get("status"), json.dumps(_stringify(row), sort_keys=True)]
                                       for row in table.rows], out)
    else:
        out.write(f"{table.theorem}: {table.status} {json.dumps(table.counts(), sort_keys=True)}\n")
        for row in table.rows:
            fields = " ".join(f"{k}={_stringify(v)}" for k, v in sorted(row.items())
                              if k != "status" and not isinstance(v, (dict, list)))
            out.write(f"  {row.get('status'):<12} {fields}\n")
    return {"pass": EXIT_OK, "fail": EXIT_MISMATCH, "undecidable": EXIT_UNDECIDABLE}[table.status]


def cmd_grid(args, config, out) -> int:
    defaults = config["grid"]
    a_max = args.amax if args.amax is not None else defaults["a_max"]
    b_max = args.bmax if args.bmax is not None else defaults["b_max"]
    n_max = args.nmax if args.nmax is not None else defaults["n_max"]
    scan = scan_grid(a_max, b_max, n_max, Variant(args.variant),
                     resolve_jobs(args.jobs, config.get("jobs")))
    csv_bytes = emit_csv(scan)
    if args.out_csv:
        Path(args.out_csv).write_bytes(csv_bytes)
        logger.info("✅ Wrote %s", args.out_csv)
    if args.out_ppm:
        Path(args.out_ppm).write_bytes(emit_ppm(scan))
        logger.info("✅ Wrote %s", args.out_ppm)
    if args.format == "csv" and not args.out_csv:
        out.write(csv_bytes.decode("ascii"))
        return EXIT_OK
    counts = [len(s) for s in scan.cells.values()]
    payload: Dict[str, Any] = {
        "variant": scan.variant.value, "a_max": scan.a_max, "b_max": scan.b_max, "n_max": scan.n_max,
        "cells": len(counts), "nonempty_cells": sum(1 for c in counts if c),
        "max_count": max(counts, default=0),
    }
    if args.pattern_report:
        payload["pattern"] = pattern_report(scan).to_dict()
    if args.format == "text":
        for key in sorted(payload):
            if not isinstance(payload[key], dict):
                out.write(f"{key}: {payload[key]}\n")
    else:
        _emit_json(payload, out)
    return EXIT_OK


COMMANDS = {"seq": cmd_seq, "detect": cmd_detect, "find": cmd_find,
            "recip": cmd_recip, "verify": cmd_verify, "grid": cmd_grid}


def _configure_logging(verbose: bool) -> None:
    logging.basicConfig(stream=sys.stderr,
                        format="%(asctime)s [%(levelname)8s] %(name)s: %(message)s",
                        datefmt="%Y-%m-%d %H:%M:%S")
    logging.getLogger().setLevel(logging.DEBUG if verbose else logging.WARNING)


def run(argv: Optional[Sequence[str]] = None, out=None) -> int:
    out = out if out is not None else sys.stdout
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        return EXIT_OK if e.code in (0, None) else EXIT_USAGE
    _configure_logging(args.verbose)
    buffer = io.StringIO()
    try:
        config = load_config(args.config)
        code = COMMANDS[args.command](args, config, buffer)
    except BudgetError as e:
        print(f"❌ {e}", file=sys.stderr)
        return EXIT_UNDECIDABLE
    except (BalansError, argparse.ArgumentTypeError) as e:
        print(f"❌ {e}", file=sys.stderr)
        return EXIT_USAGE
    out.write(buffer.getvalue())
    return code


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
