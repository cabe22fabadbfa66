"""Pair mass of Phi-preimages of balls, and the eps^k scaling law."""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from ..errors import DegenerateFit, InvalidArgument
from ..fractal.measures import SampledMeasure
from ..geometry.maps import ConfigurationMap
from .density import _phi_chunk, check_resolution
from .pairs import PairPlan, batch_bincount, batch_summary, reduce_pairs

MIN_OCTAVES = 3.0
SCALING_SLACK = 0.2


def _ball_table(cmap, mu1, mu2, centres, radii, pair_budget, seed, workers):
    """Per-ball pair mass for balls B(centres[j], radii[j]), all from one pair sample."""
    centres = np.asarray(centres, dtype=float).reshape(-1, cmap.k)
    radii = np.asarray(radii, dtype=float).reshape(-1)
    if centres.shape[0] != radii.shape[0]:
        raise InvalidArgument("need one radius per centre")
    if np.any(radii < 0):
        raise InvalidArgument("radii must be nonnegative")
    plan = PairPlan.build(mu1.n, mu2.n, pair_budget, seed)

    def chunk(lo, hi):
        phi, weight, batch = _phi_chunk(cmap, mu1, mu2, plan, lo, hi)
        table = []
        for c, r in zip(centres, radii):
            inside = np.linalg.norm(phi - c, axis=1) < r
            table.append(batch_bincount(batch[inside], np.zeros(inside.sum(), dtype=np.int64), weight[inside], 1))
        return np.concatenate(table, axis=1)

    sums = reduce_pairs(plan, chunk, workers)
    mass, stderr = batch_summary(plan, sums)
    return np.clip(mass, 0.0, 1.0), stderr, plan


def ball_mass(cmap: ConfigurationMap, mu1: SampledMeasure, mu2: SampledMeasure, t, eps: float,
              pair_budget: int = 1_000_000, seed: int = 0, workers: int = 1) -> float:
    """(mu1 x mu2){(x, y) : |Phi(x, y) - t| < eps}, estimated from a pair sample."""
    mass, _, _ = _ball_table(cmap, mu1, mu2, [np.atleast_1d(t)], [eps], pair_budget, seed, workers)
    return float(mass[0])


def ball_masses(cmap: ConfigurationMap, mu1: SampledMeasure, mu2: SampledMeasure, t, eps_values,
                pair_budget: int = 1_000_000, seed: int = 0, workers: int = 1) -> tuple[np.ndarray, np.ndarray]:
    """Masses and standard errors of concentric balls around t; one pair sample for all radii."""
    eps_values = np.asarray(eps_values, dtype=float).reshape(-1)
    centres = np.repeat(np.atleast_1d(np.asarray(t, dtype=float))[None, :], eps_values.size, axis=0)
    mass, stderr, _ = _ball_table(cmap, mu1, mu2, centres, eps_values, pair_budget, seed, workers)
    return mass, stderr


@dataclass(frozen=True)
class ScalingFit:
    slope: float
    intercept: float
    residual: float
    k: int
    eps: np.ndarray
    masses: np.ndarray
    c_max: float

    @property
    def consistent(self) -> bool:
        """Whether the slope reaches k - 0.2, as for a bounded density near t."""
        return self.slope >= self.k - SCALING_SLACK

    def describe(self) -> dict:
        return {
            "slope": self.slope,
            "intercept": self.intercept,
            "residual": self.residual,
            "k": self.k,
            "eps": self.eps.tolist(),
            "masses": self.masses.tolist(),
            "c_max": self.c_max,
            "consistent": self.consistent,
        }


def fit_scaling_exponent(cmap: ConfigurationMap, mu1: SampledMeasure, mu2: SampledMeasure, t, eps_grid,
                         pair_budget: int = 1_000_000, seed: int = 0, workers: int = 1) -> ScalingFit:
    """Least-squares slope of log ball_mass against log eps.

    ``c_max`` is the largest observed ball_mass / eps^k; it is an empirical
    figure, not a bound on any true constant.  ``residual`` is the RMS of
    the log-log fit residuals.
    """
    eps = np.sort(np.asarray(eps_grid, dtype=float).reshape(-1))
    if eps.size < 2 or eps[0] <= 0:
        raise InvalidArgument("eps_grid needs at least two positive values")
    if math.log2(eps[-1] / eps[0]) < MIN_OCTAVES - 1e-9:
        raise InvalidArgument(f"eps_grid must span at least {MIN_OCTAVES:g} octaves")
    check_resolution(mu1, mu2, eps[0])
    masses, _ = ball_masses(cmap, mu1, mu2, t, eps, pair_budget, seed, workers)
    if np.any(masses <= 0):
        raise DegenerateFit(f"ball mass underflows to zero at eps={eps[np.argmax(masses <= 0)]:g}")
    x, y = np.log(eps), np.log(masses)
    slope, intercept = np.polyfit(x, y, 1)
    residual = float(np.sqrt(np.mean((y - (slope * x + intercept)) ** 2)))
    c_max = float(np.max(masses / eps**cmap.k))
    return ScalingFit(float(slope), float(intercept), residual, cmap.k, eps, masses, c_max)


def covering_mass_identity(cmap: ConfigurationMap, mu1: SampledMeasure, mu2: SampledMeasure, cover,
                           pair_budget: int = 1_000_000, seed: int = 0, workers: int = 1) -> float:
    """Sum of ball masses over a cover [(t_j, eps_j), ...]; at least ~1 if the balls cover Phi's range."""
    cover = list(cover)
    if not cover:
        raise InvalidArgument("cover must be nonempty")
    centres = [np.atleast_1d(np.asarray(t, dtype=float)) for t, _ in cover]
    radii = [float(r) for _, r in cover]
    mass, _, _ = _ball_table(cmap, mu1, mu2, centres, radii, pair_budget, seed, workers)
    return float(mass.sum())
