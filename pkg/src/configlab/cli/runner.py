"""Run one experiment: generators, diagnostics, density, then the requested analyses."""

from __future__ import annotations

import json
import logging
import math
import time
from dataclasses import dataclass, field
from pathlib import Path

import numpy as np

from ..diagnostics import energy_by_depth, energy_by_samples, fourier_decay, local_dimension
from ..errors import ConfigLabError, InvalidArgument
from ..fractal import (
    SampledMeasure,
    circle_measure,
    falconer_lattice_set,
    ifs_with_dimension,
    product_measure,
    pushforward,
    read_measure,
    sample_ifs,
    uniform_measure,
    write_measure,
)
from ..geometry.maps import ConfigurationMap, get_map, threshold_for
from ..geometry.sampling import chart, space_of
from ..measure import (
    GridSpec,
    detect_intervals,
    estimate_density,
    fit_scaling_exponent,
    interval_lengths,
)
from ..measure.density import observed_range
from ..measure.pairs import PairPlan
from .config import ExperimentConfig

log = logging.getLogger(__name__)

REPORT_VERSION = 1
DIMENSION_TOLERANCE = 0.1
# bound on the Lipschitz constant of the cube charts at their default bounds
CHART_LIPSCHITZ = 4.0
DEFAULT_XI_MAX = 100.0


@dataclass
class Side:
    """A generated cloud: the cube-side measure and what the map consumes."""

    cube: SampledMeasure
    charted: SampledMeasure
    ifs: object = None


def build_generator(spec: dict, workers: int = 1) -> tuple[SampledMeasure, object]:
    kind = spec["kind"]
    seed = int(spec["seed"])
    if kind == "uniform":
        return uniform_measure(int(spec["d"]), int(spec["n"]), seed, tuple(spec["box"]), spec["layout"]), None
    if kind == "ifs":
        ifs = ifs_with_dimension(int(spec["d"]), int(spec["m"]), float(spec["s"]))
        return sample_ifs(ifs, int(spec["depth"]), int(spec["n"]), seed, workers), ifs
    if kind == "lattice":
        mu = falconer_lattice_set(int(spec["d"]), float(spec["s"]), int(spec["q"]), int(spec["n"]), seed, workers)
        return mu, None
    if kind == "circle":
        return circle_measure(int(spec["n"]), float(spec["radius"])), None
    if kind == "product":
        a, _ = build_generator(spec["a"], workers)
        b, _ = build_generator(spec["b"], workers)
        return product_measure(a, b, int(spec["max_points"]), spec.get("n"), seed), None
    if kind == "file":
        mu = read_measure(spec["path"])
        if mu.d != int(spec["d"]):
            raise InvalidArgument(f"{spec['path']} holds {mu.d}-dimensional points, expected {spec['d']}")
        return mu, None
    raise InvalidArgument(f"unknown generator kind {kind!r}")


def build_side(cmap: ConfigurationMap, which: str, spec: dict, workers: int = 1) -> Side:
    cube, ifs = build_generator(spec, workers)
    space, d = space_of(cmap, which)
    if space in ("lines", "hyperplanes", "spheres"):
        charted = pushforward(cube, lambda u: chart(space, d, u), f"{cube.meta['generator']}->{space}", CHART_LIPSCHITZ)
    else:
        charted = cube
    return Side(cube, charted, ifs)


def _jsonable(value):
    if isinstance(value, dict):
        return {str(k): _jsonable(v) for k, v in value.items()}
    if isinstance(value, (list, tuple)):
        return [_jsonable(v) for v in value]
    if isinstance(value, np.ndarray):
        return _jsonable(value.tolist())
    if isinstance(value, (np.floating, float)):
        value = float(value)
        return value if math.isfinite(value) else repr(value)
    if isinstance(value, (np.integer,)):
        return int(value)
    if isinstance(value, (np.bool_,)):
        return bool(value)
    return value


@dataclass
class ExperimentReport:
    config: dict
    map: dict
    threshold: str
    threshold_value: float
    dimensions: dict
    measured_dimension_sum: float
    nominal_dimension_sum: float | None
    dimension_tolerance: float
    above_threshold: bool
    analyses: dict = field(default_factory=dict)
    intervals: list = field(default_factory=list)
    timings: str = "timings.json"
    version: int = REPORT_VERSION

    def to_dict(self) -> dict:
        return _jsonable(dict(self.__dict__))

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), sort_keys=True, indent=2) + "\n"

    @classmethod
    def from_json(cls, text: str) -> "ExperimentReport":
        return cls(**json.loads(text))


class Stopwatch:
    def __init__(self):
        self.laps: dict[str, float] = {}

    def lap(self, name: str, start: float) -> None:
        self.laps[name] = round(time.perf_counter() - start, 6)


def _scaling(cfg, cmap, mu1, mu2, workers, density):
    sec = cfg.section("scaling")
    t = sec["t"]
    if t == "auto":
        if density is not None:
            t = density.grid.nodes()[int(np.argmax(density.values))].tolist()
        else:
            plan = PairPlan.build(mu1.n, mu2.n, cfg.pair_budget, cfg.seed)
            lo, hi = observed_range(cmap, mu1, mu2, plan, workers)
            t = ((lo + hi) / 2).tolist()
    eps_min = cfg.eps / 2 if sec["eps_min"] == "auto" else float(sec["eps_min"])
    steps = int(round(float(sec["octaves"]) * int(sec["per_octave"])))
    eps = eps_min * 2.0 ** (np.arange(steps + 1) / int(sec["per_octave"]))
    fit = fit_scaling_exponent(cmap, mu1, mu2, np.atleast_1d(t), eps, cfg.pair_budget, cfg.seed, workers)
    return {"t": np.atleast_1d(t).tolist(), **fit.describe()}


def _energy(cfg, side: Side, workers):
    sec = cfg.section("energy")
    if side.ifs is not None:
        return energy_by_depth(side.ifs, float(sec["s"]), tuple(sec["depths"])).describe()
    report = energy_by_samples(side.cube, float(sec["s"]), int(sec["doublings"]), cfg.pair_budget, cfg.seed, workers)
    return report.describe()


def _decay(cfg, side: Side, workers):
    sec = cfg.section("decay")
    mu = side.cube
    xi_max = sec["xi_max"]
    if xi_max == "auto":
        pe = mu.positional_error
        xi_max = min(DEFAULT_XI_MAX, 0.9 / (2 * pe)) if pe > 0 else DEFAULT_XI_MAX
    return fourier_decay(mu, float(xi_max), int(sec["directions"]), cfg.seed, workers=workers).describe()


def run_experiment(cfg: ExperimentConfig, workers: int = 1, out_dir=None) -> ExperimentReport:
    """Execute ``cfg``; when ``out_dir`` is given, write the report and data files there."""
    watch = Stopwatch()
    cmap = get_map(cfg.map["name"], **{k: v for k, v in cfg.map.items() if k != "name"})
    threshold = threshold_for(cmap)

    start = time.perf_counter()
    try:
        side1 = build_side(cmap, "X", cfg.mu1, workers)
        side2 = build_side(cmap, "Y", cfg.mu2, workers)
    except ConfigLabError as exc:
        raise type(exc)(f"generating clouds: {exc}") from exc
    watch.lap("generators", start)

    start = time.perf_counter()
    centers = int(cfg.section("dimension")["centers"])
    dims = {
        "mu1": local_dimension(side1.cube, centers=centers, seed=cfg.seed),
        "mu2": local_dimension(side2.cube, centers=centers, seed=cfg.seed + 1),
    }
    nominal = [s.cube.meta.get("nominal_dim") for s in (side1, side2)]
    watch.lap("dimension", start)
    measured = dims["mu1"] + dims["mu2"]

    analyses: dict = {}
    intervals: list = []
    density = None
    wanted = set(cfg.analyses)
    if wanted & {"density", "intervals"}:
        start = time.perf_counter()
        grid = None if cfg.grid == "auto" else GridSpec(tuple(cfg.grid["lo"]), tuple(cfg.grid["hi"]), tuple(cfg.grid["step"]))
        density = estimate_density(cmap, side1.charted, side2.charted, cfg.eps, grid, cfg.pair_budget, cfg.seed, workers)
        analyses["density"] = {
            **density.metadata(),
            "riemann_sum": density.riemann_sum(),
            "max": float(density.values.max()),
            "max_stderr": float(density.stderr.max()),
        }
        watch.lap("density", start)
    if "intervals" in wanted:
        delta = None if cfg.delta == "auto" else float(cfg.delta)
        intervals = detect_intervals(density, delta)
        lengths = interval_lengths(intervals)
        analyses["intervals"] = {
            "delta": delta if delta is not None else 0.1 * float(density.values.max()),
            "count": len(intervals),
            "lengths": lengths,
            "max_length": max(lengths, default=0.0),
        }
    if "scaling" in wanted:
        start = time.perf_counter()
        analyses["scaling"] = _scaling(cfg, cmap, side1.charted, side2.charted, workers, density)
        watch.lap("scaling", start)
    if "energy" in wanted:
        start = time.perf_counter()
        analyses["energy"] = {"mu1": _energy(cfg, side1, workers), "mu2": _energy(cfg, side2, workers)}
        watch.lap("energy", start)
    if "dimension" in wanted:
        analyses["dimension"] = {
            key: {"local_dimension": dims[key], "nominal": nom, "centers": centers}
            for key, nom in zip(("mu1", "mu2"), nominal)
        }
    if "decay" in wanted:
        start = time.perf_counter()
        analyses["decay"] = {"mu1": _decay(cfg, side1, workers), "mu2": _decay(cfg, side2, workers)}
        watch.lap("decay", start)

    report = ExperimentReport(
        config=cfg.to_dict(),
        map=cmap.describe(),
        threshold=str(threshold),
        threshold_value=float(threshold),
        dimensions=dims,
        measured_dimension_sum=measured,
        nominal_dimension_sum=None if None in nominal else float(sum(nominal)),
        dimension_tolerance=DIMENSION_TOLERANCE,
        above_threshold=bool(measured > threshold),
        analyses=analyses,
        intervals=[list(b) for b in intervals],
    )
    if out_dir is not None:
        write_outputs(Path(out_dir), report, side1, side2, density, watch)
    return report


def write_outputs(out: Path, report: ExperimentReport, side1: Side, side2: Side, density, watch: Stopwatch) -> None:
    out.mkdir(parents=True, exist_ok=True)
    (out / "report.json").write_text(report.to_json())
    write_measure(side1.charted, out / "measure_mu1.txt")
    write_measure(side2.charted, out / "measure_mu2.txt")
    if density is not None:
        density.write(out / "density.csv")
    # wall-clock times vary between runs, so they stay out of report.json
    (out / report.timings).write_text(json.dumps(watch.laps, sort_keys=True, indent=2) + "\n")
    log.info("wrote %s", out)
