"""Single-stage lattice sets whose difference sets have gaps.

The set is the union of balls of radius q^(-d/s) centred at the grid
(1/q)Z^d inside [0, 1]^d.  Iterating the construction over a rapidly
increasing sequence of q produces a set of dimension s whose difference set
has empty interior; one stage already shows the gaps at scale 1/q.
"""

from __future__ import annotations

import itertools

import numpy as np

from ..errors import InvalidArgument
from ..rng import chunk_bounds, ordered_map, stream
from .measures import SampledMeasure

SAMPLE_CHUNK = 1 << 14


def lattice_radius(d: int, s: float, q: int) -> float:
    return float(q) ** (-d / s)


def falconer_lattice_set(d: int, s: float, q: int, n: int, seed: int = 0, workers: int = 1) -> SampledMeasure:
    """Uniform measure on the union of the lattice balls, sampled at n points."""
    if d < 1 or n < 1:
        raise InvalidArgument("need d >= 1 and n >= 1")
    if not 0.0 < s < d:
        raise InvalidArgument(f"need 0 < s < d, got s={s}, d={d}")
    if q < 2:
        raise InvalidArgument("q must be >= 2")
    rho = lattice_radius(d, s, q)
    if not rho < 1.0 / (2 * q):
        raise InvalidArgument(f"balls of radius {rho:.4g} around (1/{q})Z^{d} overlap; lower s or raise q")
    centers = np.array(list(itertools.product(range(q + 1), repeat=d)), dtype=float) / q

    def chunk(bounds):
        size = bounds[1] - bounds[0]
        rng = stream(seed, "lattice", bounds[0] // SAMPLE_CHUNK)
        which = rng.integers(len(centers), size=size)
        g = rng.standard_normal((size, d))
        g /= np.linalg.norm(g, axis=1, keepdims=True)
        radial = rho * rng.random(size) ** (1.0 / d)
        return centers[which] + g * radial[:, None]

    pts = np.concatenate(ordered_map(chunk, chunk_bounds(n, SAMPLE_CHUNK), workers))
    meta = {
        "generator": "lattice",
        "seed": seed,
        "positional_error": 0.0,
        "nominal_dim": float(s),
        "lattice": {"d": d, "s": s, "q": q, "radius": rho},
        "scale_range": (2.0 * rho, 0.5),
        "bbox": (np.full(d, -rho), np.full(d, 1.0 + rho)),
    }
    return SampledMeasure.uniform_weights(pts, meta)


def lattice_distance(z: np.ndarray, q: int) -> np.ndarray:
    """Euclidean distance from rows of z to the grid (1/q)Z^d."""
    z = np.atleast_2d(z)
    return np.linalg.norm(z - np.round(z * q) / q, axis=1)
