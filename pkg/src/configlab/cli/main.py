"""Command-line entry point.

Exit codes: 0 success, 2 configuration error, 3 numerical precondition
violated, 4 anything else.
"""

from __future__ import annotations

import argparse
import json
import logging
import os
import sys
from pathlib import Path

from ..errors import ConfigError, NumericalPrecondition
from ..geometry.maps import catalog, threshold_for
from .config import ExperimentConfig, parse_config, parse_override
from .runner import run_experiment

log = logging.getLogger("configlab")

EXIT_OK, EXIT_CONFIG, EXIT_NUMERICAL, EXIT_INTERNAL = 0, 2, 3, 4

SHORTCUT_BASE = """\
map.name = distance
map.d = 2
mu1.kind = uniform
mu2.kind = uniform
"""


def thresholds_table() -> list[dict]:
    rows = []
    for cmap in catalog():
        rows.append({
            "name": cmap.name,
            "params": cmap.describe()["params"],
            "d1": cmap.d1,
            "d2": cmap.d2,
            "k": cmap.k,
            "alpha": str(cmap.alpha),
            "beta": str(cmap.beta),
            "threshold": str(threshold_for(cmap)),
        })
    return rows


def format_table(rows: list[dict]) -> str:
    cols = ["name", "d1", "d2", "k", "alpha", "beta", "threshold"]
    cells = [cols] + [[str(r[c]) for c in cols] for r in rows]
    widths = [max(len(row[i]) for row in cells) for i in range(len(cols))]
    return "\n".join("  ".join(c.ljust(w) for c, w in zip(row, widths)).rstrip() for row in cells) + "\n"


def _load_config(args, analysis: str | None = None) -> ExperimentConfig:
    overrides = dict(parse_override(item) for item in args.set or [])
    if args.seed is not None:
        overrides["seed"] = args.seed
    path = getattr(args, "file", None) or args.config
    if path is not None:
        try:
            text = Path(path).read_text()
        except OSError as exc:
            raise ConfigError(f"cannot read config {path}: {exc}") from exc
    else:
        text = SHORTCUT_BASE
        overrides.setdefault("seed", 0)
    if analysis is not None:
        overrides["analyses"] = [analysis]
    return parse_config(text, overrides)


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--config", help="experiment document (key = value lines)")
    common.add_argument("--seed", type=int, help="override the document's seed")
    common.add_argument("--workers", type=int, default=1, help="threads for pair and sample chunks; results do not depend on it")
    common.add_argument("--out", help="output directory (default: the document's output key)")
    common.add_argument("--set", action="append", metavar="KEY=VALUE", help="override a document key; repeatable")

    parser = argparse.ArgumentParser(prog="configlab", description="Configuration-set experiments on sampled fractal measures.")
    sub = parser.add_subparsers(dest="command", required=True)
    p = sub.add_parser("thresholds", help="dimension thresholds of the catalog maps")
    p.add_argument("--json", action="store_true")
    sub.add_parser("catalog", help="catalog entries as JSON")
    p = sub.add_parser("run", parents=[common], help="run an experiment document")
    p.add_argument("file", nargs="?")
    p.add_argument("--print-config", action="store_true", help="print the completed document and exit")
    for name in ("density", "energy", "dimension", "decay"):
        sub.add_parser(name, parents=[common], help=f"run only the {name} analysis")
    return parser


def _run(args, analysis=None) -> int:
    cfg = _load_config(args, analysis)
    if getattr(args, "print_config", False):
        sys.stdout.write(cfg.to_text())
        return EXIT_OK
    if args.workers < 1:
        raise ConfigError("--workers must be at least 1")
    out = Path(args.out or cfg.output)
    report = run_experiment(cfg, workers=args.workers, out_dir=out)
    summary = {
        "out": str(out),
        "threshold": report.threshold,
        "measured_dimension_sum": report.measured_dimension_sum,
        "above_threshold": report.above_threshold,
    }
    if "intervals" in report.analyses:
        summary["intervals"] = report.intervals
    sys.stdout.write(json.dumps(summary, sort_keys=True) + "\n")
    return EXIT_OK


def main(argv=None) -> int:
    logging.basicConfig(
        level=os.environ.get("CONFIGLAB_LOG", "WARNING").upper(),
        format="%(levelname)s %(name)s: %(message)s",
    )
    args = build_parser().parse_args(argv)
    try:
        if args.command == "thresholds":
            rows = thresholds_table()
            sys.stdout.write(json.dumps(rows, indent=2) + "\n" if args.json else format_table(rows))
            return EXIT_OK
        if args.command == "catalog":
            sys.stdout.write(json.dumps([c.describe() for c in catalog()], indent=2, sort_keys=True) + "\n")
            return EXIT_OK
        if args.command == "run":
            if not (args.file or args.config):
                raise ConfigError("run needs a document: configlab run FILE")
            return _run(args)
        return _run(args, analysis=args.command)
    except ConfigError as exc:
        log.error("%s", exc)
        sys.stderr.write(f"configlab: configuration error: {exc}\n")
        return EXIT_CONFIG
    except NumericalPrecondition as exc:
        sys.stderr.write(f"configlab: numerical precondition violated: {exc}\n")
        return EXIT_NUMERICAL
    except Exception as exc:  # noqa: BLE001 - exit code 4 covers every unexpected failure
        log.exception("internal error")
        sys.stderr.write(f"configlab: internal error: {exc!r}\n")
        return EXIT_INTERNAL
