"""Command-line entry point: ``cpih-sim run|sweep|audit-ihull|version``.

Exit codes: 0 success, 1 audit found containment violations, 2 invalid
configuration, 3 file-system error.
"""

from __future__ import annotations

import argparse
import dataclasses
import json
import sys
from pathlib import Path
from typing import List, Optional

from . import __version__
from .consensus import ConfigError
from .geometry import GeometryError
from .oracle import SAMPLING, audit_ihull
from .report import run_and_record
from .scenario import ScenarioConfig, load_regions, load_scenario

EXIT_OK, EXIT_VIOLATION, EXIT_CONFIG, EXIT_IO = 0, 1, 2, 3


def _deltas(text: str) -> List[float]:
    try:
        out = [float(t) for t in text.split(",") if t.strip()]
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected comma-separated numbers, got {text!r}") from None
    if not out or any(d < 0 for d in out):
        raise argparse.ArgumentTypeError("need at least one nonnegative delta")
    return out


def with_delta(cfg: ScenarioConfig, delta: float) -> ScenarioConfig:
    """Same scenario at another imprecision width (square unless the scenario says disk)."""
    if delta == 0.0:
        return dataclasses.replace(cfg, imprecision_shape="none", delta=0.0)
    shape = "square" if cfg.imprecision_shape == "none" else cfg.imprecision_shape
    return dataclasses.replace(cfg, imprecision_shape=shape, delta=delta)


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="cpih-sim", description="CPIH resilient consensus simulator")
    sub = p.add_subparsers(dest="command", required=True)

    r = sub.add_parser("run", help="simulate one scenario and write trace, summary and plot")
    r.add_argument("scenario", type=Path)
    r.add_argument("--out", type=Path, required=True, help="output directory")

    s = sub.add_parser("sweep", help="run one scenario at several imprecision widths")
    s.add_argument("scenario", type=Path)
    s.add_argument("--delta", type=_deltas, required=True, help="comma-separated full widths, e.g. 0.5,1,1.5")
    s.add_argument("--out", type=Path, required=True, help="output directory (one subdirectory per delta)")

    a = sub.add_parser("audit-ihull", help="compare ihull of a regions file with the sampling oracle")
    a.add_argument("regions", type=Path)
    a.add_argument("--samples", type=int, default=10000)
    a.add_argument("--seed", type=int, default=0)
    a.add_argument("--sampling", choices=SAMPLING, default="extreme")

    sub.add_parser("version", help="print the package version")
    return p


def _run(args) -> int:
    summary = run_and_record(load_scenario(args.scenario), args.out)
    print(json.dumps(summary, indent=2, sort_keys=True))
    return EXIT_OK


def _sweep(args) -> int:
    base = load_scenario(args.scenario)
    rows = []
    for d in args.delta:
        summary = run_and_record(with_delta(base, d), args.out / f"delta_{d:g}")
        rows.append({"delta": d, **{k: summary[k] for k in
                                    ("final_diameter", "tail_mean_diameter", "max_hull_excursion", "hold_steps")}})
        print(f"delta={d:g}  tail_mean_diameter={summary['tail_mean_diameter']:.6g}  "
              f"max_hull_excursion={summary['max_hull_excursion']:.6g}  holds={summary['hold_steps']}")
    path = args.out / "sweep.json"
    try:
        path.write_text(json.dumps(rows, indent=2) + "\n")
    except OSError as e:
        raise OSError(f"cannot write {path}: {e.strerror}") from e
    return EXIT_OK


def _audit(args) -> int:
    if args.samples < 1:
        raise ConfigError(f"--samples must be positive, got {args.samples}")
    family = load_regions(args.regions)
    report = audit_ihull(family, args.samples, args.seed, str(args.regions), args.sampling)
    print(json.dumps(dataclasses.asdict(report), indent=2))
    return EXIT_OK if report.violations == 0 else EXIT_VIOLATION


def main(argv: Optional[List[str]] = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        if args.command == "version":
            print(__version__)
            return EXIT_OK
        return {"run": _run, "sweep": _sweep, "audit-ihull": _audit}[args.command](args)
    except (ConfigError, GeometryError) as e:
        print(f"configuration error: {e}", file=sys.stderr)
        return EXIT_CONFIG
    except OSError as e:
        print(f"i/o error: {e}", file=sys.stderr)
        return EXIT_IO


if __name__ == "__main__":
    sys.exit(main())
