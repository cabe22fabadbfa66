"""Self-similar measures with prescribed similarity dimension.

An IfsSpec is m similitudes x -> r*x + b_i of the unit cube with a common
ratio r.  The natural self-similar measure gives each first-level image mass
1/m; its dimension is log m / log(1/r) under the open set condition, which
is verified when the spec is built.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass

import numpy as np

from ..errors import InfeasiblePacking, InvalidArgument
from ..rng import chunk_bounds, ordered_map, stream
from .measures import SampledMeasure

DIM_TOL = 1e-12
SAMPLE_CHUNK = 1 << 14


@dataclass(frozen=True)
class IfsSpec:
    d: int
    m: int
    ratio: float
    offsets: np.ndarray
    dim: float

    def __post_init__(self):
        offsets = np.asarray(self.offsets, dtype=float).reshape(self.m, self.d)
        object.__setattr__(self, "offsets", offsets)
        if not 0.0 < self.ratio < 1.0:
            raise InvalidArgument(f"ratio must lie in (0, 1), got {self.ratio}")
        if self.m < 2:
            raise InvalidArgument("need at least two maps")
        expected = math.log(self.m) / math.log(1.0 / self.ratio)
        if abs(expected - self.dim) > DIM_TOL:
            raise InvalidArgument(f"dim {self.dim} disagrees with log m / log(1/r) = {expected}")
        if not 0.0 < self.dim <= self.d + DIM_TOL:
            raise InvalidArgument(f"similarity dimension {self.dim} outside (0, {self.d}]")
        if np.any(offsets < -DIM_TOL) or np.any(offsets + self.ratio > 1.0 + DIM_TOL):
            raise InfeasiblePacking("an image cube leaves the unit cube")
        for i, j in itertools.combinations(range(self.m), 2):
            # image cubes [b, b + r]^d have disjoint interiors iff some axis separates them
            if np.max(np.abs(offsets[i] - offsets[j])) < self.ratio - DIM_TOL:
                raise InfeasiblePacking(f"image cubes {i} and {j} overlap: open set condition fails")

    def positional_error(self, depth: int) -> float:
        """Half-diagonal of a depth-``depth`` cylinder cube."""
        return self.ratio**depth * math.sqrt(self.d) / 2.0

    def describe(self) -> dict:
        return {"d": self.d, "m": self.m, "ratio": self.ratio, "dim": self.dim, "offsets": self.offsets.tolist()}


def ifs_with_dimension(d: int, m: int, s: float) -> IfsSpec:
    """IFS of m maps on [0, 1]^d with ratio r = m^(-1/s) and offsets on a corner grid.

    Offsets are the first m points, in lexicographic order, of the grid with
    p = ceil(m^(1/d)) equally spaced positions 0, ..., 1 - r per axis.
    """
    if d < 1:
        raise InvalidArgument("d must be >= 1")
    if m < 2:
        raise InvalidArgument("m must be >= 2")
    if not 0.0 < s <= d:
        raise InvalidArgument(f"need 0 < s <= d, got s={s}, d={d}")
    r = m ** (-1.0 / s)
    p = 2
    while p**d < m:
        p += 1
    if r > 1.0 / p + DIM_TOL:
        raise InfeasiblePacking(f"ratio {r:.6g} too large to place {m} disjoint cubes on a {p}^{d} grid")
    positions = np.linspace(0.0, 1.0 - r, p)
    grid = itertools.product(positions, repeat=d)
    offsets = np.array(list(itertools.islice(grid, m)))
    dim = math.log(m) / math.log(1.0 / r)
    return IfsSpec(d=d, m=m, ratio=r, offsets=offsets, dim=dim)


def _points_from_digits(spec: IfsSpec, digits: np.ndarray) -> np.ndarray:
    """sum_j r^j b_{i_j} + r^depth * center, for digits of shape (depth, n)."""
    depth, n = digits.shape
    x = np.full((n, spec.d), 0.5)
    for j in range(depth - 1, -1, -1):
        x = spec.offsets[digits[j]] + spec.ratio * x
    return x


def _meta(spec: IfsSpec, depth: int, seed, generator: str) -> dict:
    return {
        "generator": generator,
        "seed": seed,
        "depth": depth,
        "positional_error": spec.positional_error(depth),
        "nominal_dim": spec.dim,
        "ifs": spec.describe(),
        "bbox": (np.zeros(spec.d), np.ones(spec.d)),
    }


def sample_ifs(spec: IfsSpec, depth: int, n: int, seed: int = 0, workers: int = 1) -> SampledMeasure:
    """n equal-weight cylinder centres at ``depth`` with uniformly random digit strings.

    Points are produced in fixed chunks, each from its own counter-based
    stream, with digits drawn level by level; the output is identical for any
    worker count, and the first j digits of every point do not depend on depth.
    """
    if depth < 1 or n < 1:
        raise InvalidArgument("need depth >= 1 and n >= 1")

    def chunk(bounds):
        index = bounds[0] // SAMPLE_CHUNK
        rng = stream(seed, "ifs-digits", index)
        digits = rng.integers(spec.m, size=(depth, bounds[1] - bounds[0]))
        return _points_from_digits(spec, digits)

    parts = ordered_map(chunk, chunk_bounds(n, SAMPLE_CHUNK), workers)
    return SampledMeasure.uniform_weights(np.concatenate(parts), _meta(spec, depth, seed, "ifs"))


def enumerate_ifs(spec: IfsSpec, depth: int) -> SampledMeasure:
    """The exact depth-``depth`` discretisation: all m^depth cylinder centres, weight m^-depth each."""
    if depth < 0:
        raise InvalidArgument("depth must be >= 0")
    count = spec.m**depth
    if count > 1 << 22:
        raise InvalidArgument(f"{count} cylinders is too many to enumerate")
    if depth == 0:
        pts = np.full((1, spec.d), 0.5)
    else:
        idx = np.arange(count)
        digits = np.empty((depth, count), dtype=np.int64)
        for j in range(depth - 1, -1, -1):
            idx, digits[j] = np.divmod(idx, spec.m)
        pts = _points_from_digits(spec, digits)
    return SampledMeasure.uniform_weights(pts, _meta(spec, depth, 0, "ifs-exact"))
