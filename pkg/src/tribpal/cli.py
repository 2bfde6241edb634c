"""Command-line entry point: ``tribpal {search,bounds,reduce,verify}``."""
from __future__ import annotations

import argparse
import json
import logging
import sys
import time

from .certified import PrecisionExhausted, retry_precision
from .pipeline import (
    PipelineConfig,
    build_context,
    run_full,
    run_initial,
    run_round1,
    run_round2,
    run_round3,
)
from .palindrome import search_low_range

EXIT_VERIFIED, EXIT_ERROR, EXIT_INCONCLUSIVE = 0, 1, 2


def _config(args) -> PipelineConfig:
    config = PipelineConfig.from_file(args.config) if args.config else PipelineConfig()
    return config.replace(
        n_low_max=args.n_max,
        precision_digits=args.precision,
        output_format=args.format,
        prefer_extension=False if args.pure else None,
    )


def _emit(text: str, output) -> None:
    if output:
        with open(output, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def cmd_search(config: PipelineConfig, args) -> int:
    found = search_low_range(config.n_low_max)
    if config.output_format == "text":
        lines = [f"n <= {config.n_low_max}: {len(found)} solution(s)"]
        lines += [f"S_{s.n} = {s.value}  (d1, d2, l, m) = {s.params.as_tuple()}" for s in found]
        _emit("\n".join(lines) + "\n", args.output)
    else:
        rows = [{"n": str(s.n), "params": [str(v) for v in s.params.as_tuple()], "value": str(s.value)} for s in found]
        _emit(json.dumps({"n_low_max": str(config.n_low_max), "solutions": rows}, indent=1) + "\n", args.output)
    return EXIT_VERIFIED


def cmd_bounds(config: PipelineConfig, args) -> int:
    (initial, res), digits = retry_precision(
        lambda d: run_initial(config, build_context(d)), config.precision_digits
    )
    if config.output_format == "text":
        lines = [f"{k}: {v}" for k, v in initial.to_dict().items() if k != "steps"]
        lines += [f"  {k}: {v}" for k, v in initial.to_dict()["steps"].items()]
        lines += [f"[{'ok' if c['holds'] else 'FAIL'}] {c['name']}: {c['computed']} {c['relation']} {c['reference']}"
                  for c in res.checks]
        lines += [f"note: {n}" for n in res.notes]
        _emit("\n".join(lines) + "\n", args.output)
    else:
        _emit(json.dumps({"digits": str(digits), **res.to_dict(), "notes": res.notes}, indent=1) + "\n", args.output)
    return EXIT_VERIFIED


def cmd_reduce(config: PipelineConfig, args) -> int:
    def rounds(digits):
        ctx = build_context(digits)
        initial, _ = run_initial(config, ctx)
        out = []
        ell_max, r1 = run_round1(config, ctx)
        out.append(r1)
        if ell_max is not None:
            m_max, r2 = run_round2(config, ell_max, ctx, initial)
            out.append(r2)
            if m_max is not None:
                out.append(run_round3(config, ell_max, m_max, ctx)[1])
        return out

    results, digits = retry_precision(rounds, config.precision_digits)
    conclusive = len(results) == 3 and all(r.conclusive for r in results)
    if config.output_format == "text":
        lines = [f"{r.name}: bound {r.bound}" for r in results]
        lines += [f"note: {n}" for r in results for n in r.notes]
        _emit("\n".join(lines) + "\n", args.output)
    else:
        payload = {"digits": str(digits), "rounds": [r.to_dict() for r in results],
                   "notes": [n for r in results for n in r.notes]}
        _emit(json.dumps(payload, indent=1) + "\n", args.output)
    return EXIT_VERIFIED if conclusive else EXIT_INCONCLUSIVE


def cmd_verify(config: PipelineConfig, args) -> int:
    report = run_full(config, timestamp=not args.no_timestamp)
    _emit(report.render(), args.output)
    return EXIT_VERIFIED if report.verdict == "verified" else EXIT_INCONCLUSIVE


COMMANDS = {"search": cmd_search, "bounds": cmd_bounds, "reduce": cmd_reduce, "verify": cmd_verify}


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--n-max", type=int, default=None, help="low-range search limit (default 500)")
    common.add_argument("--precision", type=int, default=None, help="working precision in decimal digits (default 250)")
    common.add_argument("--format", choices=("json", "text"), default=None)
    common.add_argument("--config", default=None, help="key = value file mirroring the pipeline settings")
    common.add_argument("-o", "--output", default=None, help="write the report here instead of stdout")
    common.add_argument("--pure", action="store_true", help="use the pure-Python sweep even if the kernel is built")
    common.add_argument("--no-timestamp", action="store_true", help="leave the report timestamp empty")
    common.add_argument("-v", "--verbose", action="store_true")

    parser = argparse.ArgumentParser(
        prog="tribpal",
        description="Certify the Tribonacci-Lucas numbers of the form d1..d1 d2..d2 d1..d1.",
    )
    sub = parser.add_subparsers(dest="command", required=True)
    sub.add_parser("search", parents=[common], help="exhaustive low-range search")
    sub.add_parser("bounds", parents=[common], help="initial bounds from linear forms in logarithms")
    sub.add_parser("reduce", parents=[common], help="the three reduction rounds")
    sub.add_parser("verify", parents=[common], help="full pipeline and verdict")
    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING, format="%(levelname)s %(message)s")
    start = time.perf_counter()
    try:
        config = _config(args)
        code = COMMANDS[args.command](config, args)
    except (ValueError, OSError, PrecisionExhausted, ArithmeticError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_ERROR
    logging.getLogger(__name__).info("%s finished in %.1f s", args.command, time.perf_counter() - start)
    return code


if __name__ == "__main__":
    sys.exit(main())
