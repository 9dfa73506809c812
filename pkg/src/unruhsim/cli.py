"""Command-line front end.

Subcommands:
    sweep    emit one record per grid point as CSV or JSON
    verify   run the cross-check suite; exit 0 only if every check passes
    point    evaluate and pretty-print a single acceleration value

Exit codes: 0 success, 1 verification failure, 2 usage or configuration error.
"""

from __future__ import annotations

import argparse
import sys
from dataclasses import asdict

from .errors import ConfigError
from .fock import TruncationConfig
from .measures import measure_record
from .sweep import OUTPUT_FORMATS, SweepConfig, render, run_sweep
from .verify import first_failure, run_verify


def _add_config_args(sp: argparse.ArgumentParser) -> None:
    sp.add_argument("--r-min", type=float, default=0.0, help="grid start (default 0)")
    sp.add_argument("--r-max", type=float, default=3.0, help="grid end (default 3)")
    sp.add_argument("--points", type=int, default=200, help="grid size (default 200)")
    sp.add_argument(
        "--n-max", type=int, default=256, help="base Fock truncation (default 256)"
    )
    sp.add_argument(
        "--no-adaptive",
        action="store_true",
        help="freeze the truncation at --n-max instead of growing it with r",
    )
    sp.add_argument(
        "--tol", type=float, default=1e-10, help="absolute tolerance (default 1e-10)"
    )


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="unruhsim",
        description="Acceleration-induced decoherence as an operator-sum channel "
        "on a truncated Fock space.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    sweep_p = sub.add_parser("sweep", help="emit per-grid-point records")
    _add_config_args(sweep_p)
    sweep_p.add_argument(
        "--format", choices=OUTPUT_FORMATS, default="csv", help="output format"
    )
    sweep_p.add_argument(
        "--output", default=None, help="output path (default stdout)"
    )

    verify_p = sub.add_parser("verify", help="run the invariant cross-check suite")
    _add_config_args(verify_p)

    point_p = sub.add_parser("point", help="evaluate a single acceleration value")
    _add_config_args(point_p)
    point_p.add_argument("--r", type=float, required=True, help="acceleration value")

    return parser


def _config_from_args(args: argparse.Namespace) -> SweepConfig:
    return SweepConfig(
        r_min=args.r_min,
        r_max=args.r_max,
        points=args.points,
        n_max=args.n_max,
        adaptive=not args.no_adaptive,
        abs_tol=args.tol,
        output_format=getattr(args, "format", "csv"),
    )


def _cmd_sweep(cfg: SweepConfig, output: str | None) -> int:
    text = render(cfg, run_sweep(cfg))
    if output is None:
        sys.stdout.write(text)
    else:
        with open(output, "w", encoding="utf-8", newline="\n") as fh:
            fh.write(text)
    return 0


def _cmd_verify(cfg: SweepConfig) -> int:
    results = run_verify(cfg)
    for res in results:
        print(res.line())
    failed = first_failure(results)
    if failed is None:
        print(f"verify: all {len(results)} checks passed")
        return 0
    print(f"verify: FAILED (first failing check: {failed.name})")
    return 1


def _cmd_point(cfg: SweepConfig, r: float) -> int:
    if r < 0:
        raise ConfigError(f"--r must be >= 0, got {r}")
    trunc = TruncationConfig(n_max=cfg.n_max, abs_tol=cfg.abs_tol)
    rec = measure_record(r, trunc, adaptive=cfg.adaptive)
    labels = {
        "r": "acceleration parameter",
        "fe_closed": "entanglement fidelity (closed form)",
        "fe_kraus": "entanglement fidelity (operator sum)",
        "s_ar": "joint entropy S(rho_AR) [bits]",
        "s_r": "Rob entropy S(rho_R) [bits]",
        "s_a": "Alice entropy S(rho_A) [bits]",
        "s_e": "entropy exchange [bits]",
        "mutual_info": "mutual information [bits]",
        "subadd_margin": "sub-additivity margin [bits]",
        "tail": "truncation tail",
        "n_used": "effective truncation",
    }
    for key, value in asdict(rec).items():
        print(f"{labels[key]:38s} {value}")
    return 0


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        cfg = _config_from_args(args)
        if args.command == "sweep":
            return _cmd_sweep(cfg, args.output)
        if args.command == "verify":
            return _cmd_verify(cfg)
        if args.command == "point":
            return _cmd_point(cfg, args.r)
    except ConfigError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    raise AssertionError(f"unhandled command {args.command!r}")


def entrypoint() -> None:
    sys.exit(main())


if __name__ == "__main__":
    entrypoint()
