"""Decay rate of |mu^(xi)| = |sum_i w_i exp(-i xi.x_i)| along rays.

|mu^| oscillates with period about 2*pi/diam, so a pointwise log-log fit is
dominated by the zeros.  Along each direction the profile at a node
|xi| = R is the RMS of |mu^| over one period centred at R; a centred
average of a power law is biased only at second order in period/R.  The
envelope is the maximum of these profiles over all probed directions.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from ..errors import AliasLimit, InvalidArgument
from ..fractal.measures import SampledMeasure
from ..rng import ordered_map, stream

MIN_DIRECTIONS = 8
NODES = 24
WINDOW_SAMPLES = 16
_BLOCK = 4096


@dataclass(frozen=True)
class DecayFit:
    exponent: float
    xi: np.ndarray
    envelope: np.ndarray
    max_modulus: float
    directions: int

    def describe(self) -> dict:
        return {
            "exponent": self.exponent,
            "xi": self.xi.tolist(),
            "envelope": self.envelope.tolist(),
            "max_modulus": self.max_modulus,
            "directions": self.directions,
        }


def fourier_transform(mu: SampledMeasure, xi: np.ndarray) -> np.ndarray:
    """mu^ at the rows of xi, shape (F, d) -> (F,) complex."""
    xi = np.atleast_2d(np.asarray(xi, dtype=float))
    out = np.zeros(xi.shape[0], dtype=complex)
    for lo in range(0, mu.n, _BLOCK):
        phase = xi @ mu.points[lo:lo + _BLOCK].T
        w = mu.weights[lo:lo + _BLOCK]
        out += np.cos(phase) @ w - 1j * (np.sin(phase) @ w)
    return out


def probe_directions(d: int, n_directions: int, seed: int) -> np.ndarray:
    """``n_directions`` uniform random unit vectors followed by the d coordinate axes."""
    g = stream(seed, "fourier-directions").standard_normal((n_directions, d))
    g /= np.linalg.norm(g, axis=1, keepdims=True)
    return np.concatenate([g, np.eye(d)])


def fourier_decay(mu: SampledMeasure, xi_max: float, n_directions: int = 16, seed: int = 0,
                  xi_min: float | None = None, workers: int = 1) -> DecayFit:
    """-slope of log envelope |mu^| against log |xi| over the upper half of a geometric grid.

    The coordinate axes are probed in addition to the random directions, since
    product measures decay slowest along them.
    """
    if n_directions < MIN_DIRECTIONS:
        raise InvalidArgument(f"need at least {MIN_DIRECTIONS} directions")
    pe = mu.positional_error
    if pe > 0 and not xi_max < 1.0 / (2.0 * pe):
        raise AliasLimit(f"xi_max={xi_max:g} reaches the aliasing limit 1/(2*{pe:.3g}) = {1 / (2 * pe):.4g}")
    diam = float(np.max(np.ptp(mu.points, axis=0)))
    if diam <= 0:
        raise InvalidArgument("a single atom has no decay")
    period = 2.0 * np.pi / diam
    xi_min = period if xi_min is None else float(xi_min)
    top = xi_max - period / 2
    if not 0 < xi_min < top:
        raise InvalidArgument(f"need 0 < xi_min < xi_max - period/2 = {top:.4g}")
    nodes = np.geomspace(xi_min, top, NODES)
    # midpoints of WINDOW_SAMPLES equal cells spanning one period
    offsets = period * ((np.arange(WINDOW_SAMPLES) + 0.5) / WINDOW_SAMPLES - 0.5)
    radii = nodes[:, None] + offsets[None, :]
    dirs = probe_directions(mu.d, n_directions, seed)

    def along(direction):
        values = np.abs(fourier_transform(mu, radii.reshape(-1, 1) * direction[None, :])).reshape(radii.shape)
        return np.sqrt(np.mean(values**2, axis=1)), values.max()

    results = ordered_map(along, list(dirs), workers)
    per_dir = np.stack([profile for profile, _ in results])
    envelope = per_dir.max(axis=0)
    max_modulus = max(peak for _, peak in results)
    tail = slice(NODES // 2, None)
    slope, _ = np.polyfit(np.log(nodes[tail]), np.log(envelope[tail]), 1)
    return DecayFit(float(-slope), nodes, envelope, float(max_modulus), len(dirs))
