"""Weighted point clouds standing in for probability measures."""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from pathlib import Path

import numpy as np

from ..errors import DimensionMismatch, InvalidArgument, ParseError
from ..rng import stream

WEIGHT_TOL = 1e-12
BOX_TOL = 1e-9


@dataclass
class SampledMeasure:
    """n points with nonnegative weights summing to one.

    ``meta`` carries the generator description; the keys other modules read are
    ``generator``, ``seed``, ``positional_error`` (how far a stored point may sit
    from the support it represents), ``nominal_dim`` and ``bbox``.
    """

    points: np.ndarray
    weights: np.ndarray
    meta: dict = field(default_factory=dict)

    def __post_init__(self):
        self.points = np.atleast_2d(np.asarray(self.points, dtype=float))
        if self.points.ndim != 2:
            raise DimensionMismatch("points must be a 2-D array (n, d)")
        self.weights = np.asarray(self.weights, dtype=float).reshape(-1)
        if self.weights.shape[0] != self.points.shape[0]:
            raise DimensionMismatch(f"{self.points.shape[0]} points but {self.weights.shape[0]} weights")
        if self.points.shape[0] == 0:
            raise InvalidArgument("a measure needs at least one point")
        if np.any(self.weights < 0):
            raise InvalidArgument("weights must be nonnegative")
        if abs(self.weights.sum() - 1.0) > WEIGHT_TOL:
            raise InvalidArgument(f"weights sum to {self.weights.sum()!r}, not 1")
        self.meta.setdefault("generator", "custom")
        self.meta.setdefault("seed", 0)
        self.meta.setdefault("positional_error", 0.0)
        bbox = self.meta.get("bbox")
        if bbox is not None:
            lo, hi = (np.asarray(b, dtype=float) for b in bbox)
            if np.any(self.points < lo - BOX_TOL) or np.any(self.points > hi + BOX_TOL):
                raise InvalidArgument("points fall outside the declared bounding box")

    @property
    def n(self) -> int:
        return self.points.shape[0]

    @property
    def d(self) -> int:
        return self.points.shape[1]

    @property
    def positional_error(self) -> float:
        return float(self.meta.get("positional_error", 0.0))

    @property
    def equal_weights(self) -> bool:
        return bool(np.all(self.weights == self.weights[0]))

    @classmethod
    def uniform_weights(cls, points, meta=None) -> "SampledMeasure":
        points = np.atleast_2d(np.asarray(points, dtype=float))
        n = points.shape[0]
        return cls(points, np.full(n, 1.0 / n), dict(meta or {}))

    def describe(self) -> dict:
        out = {"n": self.n, "d": self.d}
        for key, value in self.meta.items():
            if key == "bbox":
                value = [np.asarray(b).tolist() for b in value]
            out[key] = value
        return out


def atom(point, meta=None) -> SampledMeasure:
    point = np.asarray(point, dtype=float).reshape(1, -1)
    return SampledMeasure(point, np.ones(1), {"generator": "atom", "nominal_dim": 0.0, **(meta or {})})


def _normalized(weights: np.ndarray) -> np.ndarray:
    w = weights / weights.sum()
    # fold the rounding residue into the largest weight so the sum is 1 to the last ulp
    w[np.argmax(w)] += 1.0 - w.sum()
    return w


def uniform_measure(d: int, n: int, seed: int = 0, box=(0.0, 1.0), layout: str = "random") -> SampledMeasure:
    """Uniform measure on the cube box^d: i.i.d. draws, or cell midpoints of a regular grid.

    The grid layout rounds n to m**d with m = round(n**(1/d)).
    """
    if d < 1 or n < 1:
        raise InvalidArgument("need d >= 1 and n >= 1")
    lo, hi = float(box[0]), float(box[1])
    if not hi > lo:
        raise InvalidArgument("box must satisfy lo < hi")
    if layout == "random":
        pts = stream(seed, "uniform").uniform(lo, hi, (n, d))
        err = 0.0
    elif layout == "grid":
        m = max(1, int(round(n ** (1.0 / d))))
        axis = lo + (hi - lo) * (np.arange(m) + 0.5) / m
        pts = np.stack(np.meshgrid(*([axis] * d), indexing="ij"), axis=-1).reshape(-1, d)
        err = (hi - lo) / (2 * m) * np.sqrt(d)
    else:
        raise InvalidArgument(f"unknown layout {layout!r}")
    meta = {
        "generator": f"uniform-{layout}",
        "seed": seed,
        "positional_error": err,
        "nominal_dim": float(d),
        "bbox": (np.full(d, lo), np.full(d, hi)),
    }
    return SampledMeasure.uniform_weights(pts, meta)


def circle_measure(n: int, radius: float = 1.0) -> SampledMeasure:
    """Arc-length measure on the origin-centred circle, at n equispaced arc midpoints."""
    if n < 3:
        raise InvalidArgument("need at least 3 points on the circle")
    theta = 2.0 * np.pi * (np.arange(n) + 0.5) / n
    pts = radius * np.stack([np.cos(theta), np.sin(theta)], axis=1)
    meta = {
        "generator": "circle",
        "seed": 0,
        "positional_error": 2.0 * radius * np.sin(np.pi / (2 * n)),
        "nominal_dim": 1.0,
        "bbox": (np.full(2, -radius), np.full(2, radius)),
    }
    return SampledMeasure.uniform_weights(pts, meta)


def product_measure(mu_a: SampledMeasure, mu_b: SampledMeasure, max_points: int = 1_000_000,
                    n: int | None = None, seed: int = 0) -> SampledMeasure:
    """Product measure on R^(da + db).

    The full index product is used when it has at most ``max_points`` rows;
    otherwise ``n`` index pairs (default max(na, nb)) are drawn uniformly with
    replacement.  Weights are products, renormalised.
    """
    na, nb = mu_a.n, mu_b.n
    if n is None and na * nb <= max_points:
        ia = np.repeat(np.arange(na), nb)
        ib = np.tile(np.arange(nb), na)
        how = "full"
    else:
        size = n if n is not None else max(na, nb)
        rng = stream(seed, "product")
        ia = rng.integers(na, size=size)
        ib = rng.integers(nb, size=size)
        how = "resampled"
    pts = np.concatenate([mu_a.points[ia], mu_b.points[ib]], axis=1)
    w = _normalized(mu_a.weights[ia] * mu_b.weights[ib])
    meta = {
        "generator": f"product({mu_a.meta.get('generator')},{mu_b.meta.get('generator')})",
        "seed": seed,
        "positional_error": float(np.hypot(mu_a.positional_error, mu_b.positional_error)),
        "product": how,
    }
    if "nominal_dim" in mu_a.meta and "nominal_dim" in mu_b.meta:
        meta["nominal_dim"] = float(mu_a.meta["nominal_dim"]) + float(mu_b.meta["nominal_dim"])
    if "bbox" in mu_a.meta and "bbox" in mu_b.meta:
        (alo, ahi), (blo, bhi) = mu_a.meta["bbox"], mu_b.meta["bbox"]
        meta["bbox"] = (np.concatenate([alo, blo]), np.concatenate([ahi, bhi]))
    return SampledMeasure(pts, w, meta)


def pushforward(mu: SampledMeasure, fn, generator: str, lipschitz: float = 1.0, bbox=None) -> SampledMeasure:
    """Image of ``mu`` under a row-wise map; the positional error scales by ``lipschitz``."""
    meta = {k: v for k, v in mu.meta.items() if k != "bbox"}
    meta["generator"] = generator
    meta["positional_error"] = mu.positional_error * lipschitz
    if bbox is not None:
        meta["bbox"] = bbox
    return SampledMeasure(fn(mu.points), mu.weights.copy(), meta)


# --- columnar text format -----------------------------------------------------------

_HEADER = re.compile(r"^#\s*d=(\d+)\s+n=(\d+)\s+seed=(\S+)\s+generator=(\S+)\s*$")


def write_measure(mu: SampledMeasure, path) -> None:
    generator = str(mu.meta.get("generator", "custom")).replace(" ", "_")
    lines = [f"# d={mu.d} n={mu.n} seed={mu.meta.get('seed', 0)} generator={generator}"]
    for w, row in zip(mu.weights, mu.points):
        lines.append(" ".join(f"{v:.17g}" for v in (w, *row)))
    Path(path).write_text("\n".join(lines) + "\n")


def read_measure(path) -> SampledMeasure:
    text = Path(path).read_text().splitlines()
    if not text:
        raise ParseError("empty measure file", line=1)
    match = _HEADER.match(text[0])
    if not match:
        raise ParseError("expected header '# d=<d> n=<n> seed=<seed> generator=<name>'", line=1)
    d, n = int(match.group(1)), int(match.group(2))
    rows = []
    for lineno, line in enumerate(text[1:], start=2):
        if not line.strip():
            continue
        fields = line.split()
        if len(fields) != d + 1:
            raise ParseError(f"expected {d + 1} columns, got {len(fields)}", line=lineno)
        rows.append([float(v) for v in fields])
    if len(rows) != n:
        raise ParseError(f"header announces {n} rows, found {len(rows)}")
    data = np.array(rows, dtype=float).reshape(n, d + 1)
    seed = match.group(3)
    meta = {"generator": match.group(4), "seed": int(seed) if seed.isdigit() else seed}
    return SampledMeasure(data[:, 1:], data[:, 0], meta)
