"""Mollified configuration density nu^eps(t) = sum_ij w_i w'_j chi^eps(Phi(x_i, y_j) - t)."""

from __future__ import annotations

import csv
import itertools
import json
from dataclasses import dataclass
from pathlib import Path

import numpy as np
from scipy import ndimage

from ..errors import InsufficientResolution, InvalidArgument, ParseError, ResolutionConflict
from ..fractal.measures import SampledMeasure
from ..geometry.maps import ConfigurationMap
from ..rng import ordered_map
from .mollifier import Mollifier
from .pairs import BATCHES, PairPlan, batch_bincount, batch_summary, pair_chunk, reduce_pairs

GRID_PAD = 3.0
STEP_FRACTION = 0.5
DELTA_FRACTION = 0.1
_TOL = 1e-9


@dataclass(frozen=True)
class GridSpec:
    """Regular lattice with nodes lo + i*step, i = 0 .. floor((hi - lo)/step), per axis."""

    lo: tuple
    hi: tuple
    step: tuple

    def __post_init__(self):
        lo, hi, step = (tuple(float(v) for v in np.atleast_1d(a)) for a in (self.lo, self.hi, self.step))
        if not len(lo) == len(hi) == len(step):
            raise InvalidArgument("grid lo, hi and step must have the same length")
        if any(s <= 0 for s in step) or any(b < a for a, b in zip(lo, hi)):
            raise InvalidArgument("grid needs step > 0 and hi >= lo on every axis")
        object.__setattr__(self, "lo", lo)
        object.__setattr__(self, "hi", hi)
        object.__setattr__(self, "step", step)

    @property
    def k(self) -> int:
        return len(self.lo)

    @property
    def shape(self) -> tuple:
        return tuple(int(np.floor((b - a) / s + _TOL)) + 1 for a, b, s in zip(self.lo, self.hi, self.step))

    @property
    def size(self) -> int:
        return int(np.prod(self.shape))

    @property
    def cell_volume(self) -> float:
        return float(np.prod(self.step))

    def axes(self) -> list[np.ndarray]:
        return [a + s * np.arange(n) for a, s, n in zip(self.lo, self.step, self.shape)]

    def nodes(self) -> np.ndarray:
        """All nodes, row-major (last axis fastest), shape (size, k)."""
        mesh = np.meshgrid(*self.axes(), indexing="ij")
        return np.stack(mesh, axis=-1).reshape(-1, self.k)

    def describe(self) -> dict:
        return {"lo": list(self.lo), "hi": list(self.hi), "step": list(self.step), "shape": list(self.shape)}

    @classmethod
    def from_dict(cls, data: dict) -> "GridSpec":
        return cls(tuple(data["lo"]), tuple(data["hi"]), tuple(data["step"]))


@dataclass(frozen=True)
class DensityEstimate:
    grid: GridSpec
    values: np.ndarray
    stderr: np.ndarray
    eps: float
    pairs_used: int
    seed: int
    map_name: str = ""

    def riemann_sum(self) -> float:
        return float(self.values.sum() * self.grid.cell_volume)

    def at(self, t) -> tuple[float, float]:
        """Value and stderr at the node nearest to t."""
        t = np.atleast_1d(np.asarray(t, dtype=float))
        idx = tuple(
            int(np.clip(np.rint((v - a) / s), 0, n - 1))
            for v, a, s, n in zip(t, self.grid.lo, self.grid.step, self.grid.shape)
        )
        return float(self.values[idx]), float(self.stderr[idx])

    def metadata(self) -> dict:
        return {
            "map": self.map_name,
            "eps": self.eps,
            "pairs_used": self.pairs_used,
            "seed": self.seed,
            "grid": self.grid.describe(),
        }

    def write(self, path) -> Path:
        """CSV at ``path`` plus a JSON sidecar next to it; returns the sidecar path."""
        path = Path(path)
        nodes = self.grid.nodes()
        header = [f"t{i + 1}" for i in range(self.grid.k)] + ["value", "stderr"]
        with path.open("w", newline="") as fh:
            writer = csv.writer(fh, lineterminator="\n")
            writer.writerow(header)
            for node, v, e in zip(nodes, self.values.reshape(-1), self.stderr.reshape(-1)):
                writer.writerow([repr(float(c)) for c in node] + [repr(float(v)), repr(float(e))])
        sidecar = sidecar_path(path)
        sidecar.write_text(json.dumps(self.metadata(), sort_keys=True, indent=2) + "\n")
        return sidecar


def sidecar_path(path) -> Path:
    path = Path(path)
    return path.with_name(path.stem + ".meta.json")


def read_density(path) -> DensityEstimate:
    path = Path(path)
    meta = json.loads(sidecar_path(path).read_text())
    grid = GridSpec.from_dict(meta["grid"])
    with path.open(newline="") as fh:
        rows = list(csv.reader(fh))
    expected = [f"t{i + 1}" for i in range(grid.k)] + ["value", "stderr"]
    if not rows or rows[0] != expected:
        raise ParseError(f"expected header {','.join(expected)}", line=1)
    body = rows[1:]
    if len(body) != grid.size:
        raise ParseError(f"grid has {grid.size} nodes but the file has {len(body)} rows")
    try:
        data = np.array([[float(v) for v in row[grid.k:]] for row in body])
    except ValueError as exc:
        raise ParseError(str(exc)) from exc
    return DensityEstimate(
        grid,
        data[:, 0].reshape(grid.shape),
        data[:, 1].reshape(grid.shape),
        float(meta["eps"]),
        int(meta["pairs_used"]),
        int(meta["seed"]),
        meta.get("map", ""),
    )


def _phi_chunk(cmap, mu1, mu2, plan, lo, hi):
    chunk = pair_chunk(plan, mu1, mu2, lo, hi)
    phi = cmap.evaluate(chunk.x, chunk.y)
    weight = np.where(cmap.singular(chunk.x, chunk.y), 0.0, chunk.weight)
    return phi, weight, chunk.batch


def observed_range(cmap, mu1, mu2, plan: PairPlan, workers: int = 1) -> tuple[np.ndarray, np.ndarray]:
    """Per-axis min and max of Phi over the plan's non-singular pairs."""

    def chunk(lo, hi):
        phi, weight, _ = _phi_chunk(cmap, mu1, mu2, plan, lo, hi)
        phi = phi[weight > 0]
        if phi.size == 0:
            return np.full((2, cmap.k), np.nan)
        return np.stack([phi.min(axis=0), -phi.max(axis=0)])

    parts = ordered_map(lambda b: chunk(*b), plan.chunks(), workers)
    table = np.nanmin(np.stack(parts), axis=0)
    if np.any(np.isnan(table)):
        raise InsufficientResolution("every sampled pair is singular")
    return table[0], -table[1]


def default_grid(lo: np.ndarray, hi: np.ndarray, eps: float) -> GridSpec:
    """Padded range at step eps/2, with nodes on integer multiples of the step."""
    pad = GRID_PAD * eps
    step = STEP_FRACTION * eps
    first = np.floor((np.asarray(lo) - pad) / step) * step
    last = np.ceil((np.asarray(hi) + pad) / step) * step
    return GridSpec(tuple(first), tuple(last), (step,) * len(lo))


def check_resolution(mu1: SampledMeasure, mu2: SampledMeasure, eps: float) -> None:
    worst = max(mu1.positional_error, mu2.positional_error)
    if not eps > worst:
        raise InsufficientResolution(f"eps={eps:g} does not exceed the clouds' positional error {worst:.3g}")


def estimate_density(cmap: ConfigurationMap, mu1: SampledMeasure, mu2: SampledMeasure, eps: float,
                     grid: GridSpec | None = None, pair_budget: int = 1_000_000, seed: int = 0,
                     workers: int = 1) -> DensityEstimate:
    """nu^eps on a regular grid, with a standard error from 16 disjoint pair batches.

    Without a grid, the observed range of Phi padded by 3*eps is used, at
    step eps/2.  Pairs in the map's singular set contribute nothing.
    """
    if not eps > 0:
        raise InvalidArgument(f"eps must be positive, got {eps}")
    mol = Mollifier(cmap.k, eps)
    plan = PairPlan.build(mu1.n, mu2.n, pair_budget, seed)
    check_resolution(mu1, mu2, eps)
    if grid is None:
        grid = default_grid(*observed_range(cmap, mu1, mu2, plan, workers), eps)
    if grid.k != cmap.k:
        raise InvalidArgument(f"grid has {grid.k} axes but {cmap.name} has k={cmap.k}")
    if max(grid.step) > STEP_FRACTION * eps * (1 + _TOL):
        raise ResolutionConflict(f"grid step {max(grid.step):g} exceeds eps/2 = {eps / 2:g}")

    lo = np.array(grid.lo)
    step = np.array(grid.step)
    shape = np.array(grid.shape)
    strides = np.array([int(np.prod(shape[a + 1:])) for a in range(grid.k)])
    reach = [int(np.floor(2 * eps / s)) + 2 for s in step]

    def chunk(lo_idx, hi_idx):
        phi, weight, batch = _phi_chunk(cmap, mu1, mu2, plan, lo_idx, hi_idx)
        first = np.ceil((phi - eps - lo) / step).astype(np.int64)
        out = np.zeros((BATCHES, grid.size))
        for offset in itertools.product(*(range(r) for r in reach)):
            idx = first + np.array(offset)
            u = (lo + idx * step - phi) / eps
            r2 = np.sum(u * u, axis=1)
            keep = (r2 < 1.0) & np.all((idx >= 0) & (idx < shape), axis=1) & (weight > 0)
            if not keep.any():
                continue
            kern = mol.profile_sq(r2[keep]) / eps**cmap.k
            out += batch_bincount(batch[keep], idx[keep] @ strides, weight[keep] * kern, grid.size)
        return out

    sums = reduce_pairs(plan, chunk, workers)
    values, stderr = batch_summary(plan, sums)
    return DensityEstimate(
        grid, values.reshape(grid.shape), stderr.reshape(grid.shape), float(eps), plan.count, seed, cmap.name
    )


def detect_intervals(est: DensityEstimate, delta: float | None = None) -> list:
    """Connected grid regions where value - 2*stderr > delta.

    For k = 1 the result is a list of (left, right) node positions sorted by
    left endpoint; for k > 1 each region is reported by its bounding box
    (lower corner, upper corner).  ``delta`` defaults to a tenth of the
    observed maximum.
    """
    if delta is None:
        delta = DELTA_FRACTION * float(est.values.max())
    if delta < 0:
        raise InvalidArgument("delta must be nonnegative")
    mask = (est.values - 2.0 * est.stderr) > delta
    if not mask.any():
        return []
    labels, count = ndimage.label(mask)
    axes = est.grid.axes()
    boxes = []
    for region in ndimage.find_objects(labels):
        lower = tuple(float(axes[a][sl.start]) for a, sl in enumerate(region))
        upper = tuple(float(axes[a][sl.stop - 1]) for a, sl in enumerate(region))
        boxes.append((lower[0], upper[0]) if est.grid.k == 1 else (lower, upper))
    return sorted(boxes)


def interval_lengths(boxes: list) -> list[float]:
    return [b[1] - b[0] if np.ndim(b[0]) == 0 else float(np.prod(np.subtract(b[1], b[0]))) for b in boxes]
