"""Empirical ball-mass growth: mu(B(x, rho)) against rho at centres drawn from mu."""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np
from scipy.spatial import cKDTree

from ..errors import InsufficientResolution, InvalidArgument
from ..rng import stream
from .measures import SampledMeasure

MIN_OCTAVES = 3.0
MIN_PERIODS = 3
PER_PERIOD = 8
MIN_POINTS_IN_BALL = 10
NEIGHBOURS = 16
POSITIONAL_MULTIPLE = 8.0
FROSTMAN_SLACK = 0.1


@dataclass(frozen=True)
class BallMassProfile:
    radii: np.ndarray
    mean_log_mass: np.ndarray
    mean_count: np.ndarray
    slope: float
    intercept: float
    centers: int


def _log_period(mu: SampledMeasure) -> float | None:
    """Period of the mass profile in octaves, for a self-similar measure."""
    ratio = mu.meta.get("ifs", {}).get("ratio")
    return math.log2(1.0 / ratio) if ratio else None


def default_radii(mu: SampledMeasure, centers: int = 1000, seed: int = 0, octaves: float = 5.0,
                  per_octave: int = 4) -> np.ndarray:
    """Geometric radii starting where a ball typically holds ``NEIGHBOURS`` points.

    A generator may pin its own scale window via ``meta["scale_range"]``.
    The lower end never drops below a multiple of the positional error, where
    the cloud stops resolving the support; the upper end stays below a quarter
    of the support's narrowest extent, but the window keeps at least
    ``MIN_OCTAVES`` octaves.  For a self-similar measure the window is a whole
    number of periods of the log-periodic mass profile, sampled
    ``PER_PERIOD`` times per period.
    """
    if "scale_range" in mu.meta:
        lo, hi = mu.meta["scale_range"]
        steps = max(int(round(math.log2(hi / lo) * per_octave)), 1)
        return lo * (hi / lo) ** (np.arange(steps + 1) / steps)
    rng = stream(seed, "frostman-radii")
    idx = rng.choice(mu.n, size=min(centers, mu.n), p=mu.weights)
    k = min(NEIGHBOURS + 1, mu.n)
    dist, _ = cKDTree(mu.points).query(mu.points[idx], k=k)
    r0 = float(np.median(np.atleast_2d(dist)[:, -1]))
    r0 = max(r0, POSITIONAL_MULTIPLE * mu.positional_error)
    extent = float(np.min(np.ptp(mu.points, axis=0)))
    if r0 <= 0.0:
        r0 = 1e-3 * max(extent, 1.0)
    room = math.log2(extent / (4.0 * r0)) if extent > 0 else octaves
    period = _log_period(mu)
    if period is not None:
        periods = max(MIN_PERIODS, math.ceil(octaves / period))
        while periods > 2 and periods * period > max(room, MIN_OCTAVES):
            periods -= 1
        steps = periods * PER_PERIOD
        return r0 * 2.0 ** (period * np.arange(steps + 1) / PER_PERIOD)
    octaves = min(octaves, max(MIN_OCTAVES, room))
    steps = max(int(math.ceil(octaves * per_octave)), 1)
    return r0 * 2.0 ** (octaves * np.arange(steps + 1) / steps)


def _period_samples(radii: np.ndarray, period: float | None) -> int | None:
    """Samples per log-period if ``radii`` is a geometric grid commensurate with it."""
    if period is None or radii.size < 3:
        return None
    steps = np.diff(np.log2(radii))
    h = steps.mean()
    if h <= 0 or np.ptp(steps) > 1e-9 * h:
        return None
    per = period / h
    k = int(round(per))
    if k < 2 or abs(per - k) > 1e-6 or radii.size < 2 * k + 1:
        return None
    return k


def _center_pool(mu: SampledMeasure, reach: float, centers: int) -> np.ndarray:
    """Weights for drawing centres: the border method when a bounding box is known.

    Centres closer than ``reach`` to the box boundary are dropped so that no
    ball is truncated by the edge of the support; if that leaves fewer than
    ``centers`` candidates the plain weights are used.
    """
    bbox = mu.meta.get("bbox")
    if bbox is None:
        return mu.weights
    lo, hi = (np.asarray(b, dtype=float) for b in bbox)
    inside = np.all((mu.points >= lo + reach) & (mu.points <= hi - reach), axis=1)
    if inside.sum() < centers:
        return mu.weights
    w = np.where(inside, mu.weights, 0.0)
    return w / w.sum()


def ball_mass_profile(mu: SampledMeasure, radii=None, centers: int = 1000, seed: int = 0) -> BallMassProfile:
    """Least-squares slope of mean log mu(B(x, rho)) against log rho.

    The fit of the averaged log mass has the same slope as the average of
    per-centre fits, so this is both the Frostman exponent estimate and the
    mean local dimension.
    """
    radii = default_radii(mu, centers, seed) if radii is None else np.sort(np.asarray(radii, dtype=float))
    if radii.size < 2 or radii[0] <= 0:
        raise InvalidArgument("need at least two positive radii")
    if math.log2(radii[-1] / radii[0]) < MIN_OCTAVES - 1e-9:
        raise InvalidArgument(f"radii must span at least {MIN_OCTAVES:g} octaves")
    rng = stream(seed, "frostman-centers")
    idx = rng.choice(mu.n, size=centers, p=_center_pool(mu, radii[-1], centers))
    tree = cKDTree(mu.points)
    ctr = mu.points[idx]
    masses = np.empty((centers, radii.size))
    counts = np.empty((centers, radii.size))
    for j, rho in enumerate(radii):
        if mu.equal_weights:
            c = tree.query_ball_point(ctr, rho, return_length=True).astype(float)
            counts[:, j] = c
            masses[:, j] = c * mu.weights[0]
        else:
            hits = tree.query_ball_point(ctr, rho)
            counts[:, j] = [len(h) for h in hits]
            masses[:, j] = [mu.weights[h].sum() for h in hits]
    mean_count = counts.mean(axis=0)
    # a cloud with fewer points than that is resolved once a ball holds all of them
    if mean_count[0] < min(MIN_POINTS_IN_BALL, mu.n):
        raise InsufficientResolution(
            f"smallest radius {radii[0]:.3g} holds {mean_count[0]:.1f} points on average (< {MIN_POINTS_IN_BALL})"
        )
    # a centre is a sample point, so every ball has positive mass
    mean_log = np.log(masses).mean(axis=0)
    x, y = np.log(radii), mean_log
    k = _period_samples(radii, _log_period(mu))
    if k is not None:
        # a box average over one period cancels the log-periodic oscillation
        box = np.ones(k) / k
        x, y = np.convolve(x, box, "valid"), np.convolve(y, box, "valid")
    slope, intercept = np.polyfit(x, y, 1)
    return BallMassProfile(radii, mean_log, mean_count, float(slope), float(intercept), centers)


@dataclass(frozen=True)
class FrostmanResult:
    slope: float
    passed: bool
    s: float
    profile: BallMassProfile


def frostman_check(mu: SampledMeasure, s: float, radii=None, centers: int = 1000, seed: int = 0) -> FrostmanResult:
    """Pass iff the fitted ball-mass exponent is at least s - 0.1."""
    if centers < 100:
        raise InvalidArgument("average over at least 100 centres")
    profile = ball_mass_profile(mu, radii, centers, seed)
    return FrostmanResult(profile.slope, profile.slope >= s - FROSTMAN_SLACK, s, profile)
