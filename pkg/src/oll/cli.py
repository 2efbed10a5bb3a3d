"""Batch command-line interface.

Subcommands mirror the library operations one-to-one:

    norm          Luxemburg norm of the configured simple function
    rearrange     emit the decreasing rearrangement of that function
    classify      run the expansivity criteria and the orbit-norm oracle
    simulate      dump the orbit-norm trace of the configured function
    probe-delta2  probe the doubling condition of the configured gauge

Exit codes: 0 means every requested notion decided (Holds/Fails);
1 means at least one Inconclusive; 2 means a configuration or
validation error.  Set OLL_LOG=debug|info|warning for logging verbosity.
"""

from __future__ import annotations

import argparse
import logging
import os
import sys

from .config import JobConfig, parse_config
from .dynamics import FAILS, HOLDS, NOTIONS
from .errors import DomainError, OllError
from .measure import validate_system
from .orlicz import delta2_probe
from .rearrangement import luxemburg_norm_info
from .report import canonical_json_bytes, emit_report, run_job

log = logging.getLogger("oll")


def _add_common(p: argparse.ArgumentParser, formats: tuple[str, ...]) -> None:
    p.add_argument("--config", required=True, help="path to a TOML or JSON job config")
    p.add_argument("--output", default=None, help="write the report here instead of stdout")
    p.add_argument("--format", default="json", choices=formats, help="report format")


def _add_overrides(p: argparse.ArgumentParser) -> None:
    p.add_argument("--notion", action="append", choices=NOTIONS, help="repeatable notion filter")
    p.add_argument("--horizon", type=int, default=None, help="orbit horizon N")
    p.add_argument("--epsilon", type=float, default=None, help="smallness threshold")
    p.add_argument("--ratio-threshold", type=float, default=None, dest="ratio_threshold")
    p.add_argument("--window", type=int, default=None, help="symmetric window half-width W")
    p.add_argument("--seed", type=int, default=None, help="seed for random test sets")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="oll",
        description="Orlicz-Lorentz norms and expansivity classification "
        "of composition operators on atomic measure spaces.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    for name, help_text, formats, overrides in (
        ("norm", "Luxemburg norm of the configured simple function", ("json",), False),
        ("rearrange", "decreasing rearrangement of the configured function", ("json",), False),
        ("classify", "expansivity criteria plus orbit-norm oracle", ("json", "csv"), True),
        ("simulate", "orbit-norm trace of the configured function", ("json",), True),
        ("probe-delta2", "doubling-condition probe of the configured gauge", ("json",), False),
    ):
        p = sub.add_parser(name, help=help_text)
        _add_common(p, formats)
        if overrides:
            _add_overrides(p)
    return parser


def _load(args: argparse.Namespace) -> JobConfig:
    cfg = parse_config(args.config)
    kwargs = {}
    if getattr(args, "notion", None):
        kwargs["notions"] = tuple(args.notion)
    for attr, key in (
        ("horizon", "horizon"),
        ("epsilon", "epsilon"),
        ("ratio_threshold", "ratio_R"),
        ("seed", "seed"),
    ):
        v = getattr(args, attr, None)
        if v is not None:
            kwargs[key] = v
    w = getattr(args, "window", None)
    if w is not None:
        kwargs["window"] = (-abs(w), abs(w))
    if args.format:
        kwargs["out_format"] = args.format
    if args.output:
        kwargs["out_path"] = args.output
    return cfg.with_overrides(**kwargs)


def _write(payload: bytes, path: str | None) -> None:
    if path is None:
        sys.stdout.buffer.write(payload)
        sys.stdout.buffer.flush()
    else:
        with open(path, "wb") as fh:
            fh.write(payload)


def _require_g(cfg: JobConfig):
    if cfg.g is None:
        raise DomainError('this subcommand needs a simple function: add g = [[index, value], ...]')
    return cfg.g


def _cmd_norm(cfg: JobConfig) -> int:
    g = _require_g(cfg)
    info = luxemburg_norm_info(cfg.system, g)
    _write(
        canonical_json_bytes(
            {
                "norm": info.value,
                "iterations": info.iterations,
                "residual": info.residual,
                "bracket": list(info.bracket),
                "modular_at_value": info.modular_at_value,
            }
        ),
        cfg.out_path,
    )
    return 0


def _cmd_rearrange(cfg: JobConfig) -> int:
    from .rearrangement import rearrangement

    g = _require_g(cfg)
    steps = rearrangement(cfg.system.space, g)
    _write(
        canonical_json_bytes(
            {
                "breakpoints": [0.0] + list(steps.breakpoints),
                "values": list(steps.values),
            }
        ),
        cfg.out_path,
    )
    return 0


def _cmd_classify(cfg: JobConfig) -> int:
    report = run_job(cfg)
    _write(emit_report(report, cfg.out_format), cfg.out_path)
    if report.all_decided:
        return 0
    return 1


def _cmd_simulate(cfg: JobConfig) -> int:
    from .dynamics import orbit_norms

    g = _require_g(cfg)
    two_sided = validate_system(cfg.system).two_sided_admissible
    lo = -cfg.fam.horizon_N if two_sided else 0
    trace = orbit_norms(cfg.system, g, (lo, cfg.fam.horizon_N))
    _write(
        canonical_json_bytes(
            {
                "entries": [[n, v] for n, v in trace.entries],
                "out_of_window": list(trace.out_of_window),
            }
        ),
        cfg.out_path,
    )
    return 0


def _cmd_probe_delta2(cfg: JobConfig) -> int:
    s0, s_max, n_samples = cfg.delta2
    rep = delta2_probe(cfg.system.phi, s0, s_max, n_samples)
    _write(
        canonical_json_bytes(
            {
                "satisfied_on_grid": rep.satisfied_on_grid,
                "constant_M": rep.constant_M,
                "s0": rep.s0,
                "max_ratio": rep.max_ratio,
                "grid": list(rep.grid),
                "skipped_zero": list(rep.skipped_zero),
                "skipped_infinite": list(rep.skipped_infinite),
            }
        ),
        cfg.out_path,
    )
    return 0


_COMMANDS = {
    "norm": _cmd_norm,
    "rearrange": _cmd_rearrange,
    "classify": _cmd_classify,
    "simulate": _cmd_simulate,
    "probe-delta2": _cmd_probe_delta2,
}


def main(argv: list[str] | None = None) -> int:
    level = os.environ.get("OLL_LOG", "warning").upper()
    logging.basicConfig(level=getattr(logging, level, logging.WARNING))
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        cfg = _load(args)
        return _COMMANDS[args.command](cfg)
    except OllError as e:
        print(f"error: {e}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    raise SystemExit(main())
