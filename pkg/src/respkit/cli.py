"""Command-line front end.

    respkit <job> --config <file> [--output-dir D] [--allow-divergent]
            [--emit-svg] [--threads N]

Exit codes: 0 success, 2 configuration error, 3 numerical failure,
4 divergent-bath refusal.
"""

from __future__ import annotations

import argparse
import sys

from .config import JOBS, parse_config
from .errors import ConfigError, DivergentBathError, DomainError, NumericalError
from .jobs import RUNNERS

EXIT_OK = 0
EXIT_CONFIG = 2
EXIT_NUMERICAL = 3
EXIT_DIVERGENT = 4


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="respkit",
        description="Vibrational response functions and 1D/2D IR spectra "
                    "of a weakly anharmonic oscillator coupled to a bath.")
    sub = parser.add_subparsers(dest="job", required=True)
    for job in JOBS:
        p = sub.add_parser(job, help=f"run the {job} pipeline")
        p.add_argument("--config", required=True, help="path to the config file")
        p.add_argument("--output-dir", default=None,
                       help="override the configured output directory")
        p.add_argument("--allow-divergent", action="store_true",
                       help="acknowledge truncation of divergent responses")
        p.add_argument("--emit-svg", action="store_true",
                       help="also write SVG heatmaps")
        p.add_argument("--threads", type=int, default=None,
                       help="worker threads (reserved; evaluation is serial "
                            "and deterministic)")
    return parser


def main(argv=None) -> int:
    args = _build_parser().parse_args(argv)
    try:
        with open(args.config, encoding="utf-8") as fh:
            text = fh.read()
    except OSError as exc:
        print(f"config error: {exc}", file=sys.stderr)
        return EXIT_CONFIG

    try:
        cfg = parse_config(text)
        if cfg.job is not None and cfg.job != args.job:
            raise ConfigError(f"config declares job '{cfg.job}' but the "
                              f"'{args.job}' subcommand was invoked")
        cfg.job = args.job
        if args.output_dir is not None:
            cfg.output_dir = args.output_dir
        if args.allow_divergent:
            cfg.allow_divergent = True
        if args.emit_svg:
            cfg.emit_svg = True
        if args.threads is not None:
            if args.threads < 1:
                raise ConfigError("threads must be >= 1")
            cfg.threads = args.threads
        if args.job == "twodir" and not cfg.t2_list_ps:
            raise ConfigError("job twodir requires a nonempty 't2_list_ps'")
        if args.job == "validate" and not cfg.hbar_scan_list:
            raise ConfigError("job validate requires a nonempty 'hbar_scan_list'")
        report = RUNNERS[args.job](cfg)
    except (ConfigError, DomainError) as exc:
        print(f"config error: {exc}", file=sys.stderr)
        return EXIT_CONFIG
    except NumericalError as exc:
        print(f"numerical failure: {exc}", file=sys.stderr)
        return EXIT_NUMERICAL
    except DivergentBathError as exc:
        print(f"refused: {exc}", file=sys.stderr)
        return EXIT_DIVERGENT

    print(f"job {args.job} completed; outputs in {cfg.output_dir}/")
    for key in sorted(report.scalars):
        print(f"  {key} = {report.scalars[key]}")
    for msg in report.messages:
        print(f"  note: {msg}")
    return EXIT_OK


if __name__ == "__main__":
    sys.exit(main())
