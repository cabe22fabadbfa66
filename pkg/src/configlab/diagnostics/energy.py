"""Riesz s-energies of sampled measures and a finiteness verdict.

For a self-similar measure the energy of its depth-D discretisation obeys

    I_D = (r^-s / m) I_{D-1} + C_{D-1},
    C_L = m^-2 sum_{i != j} sum_{a, b} m^-2L |S_i(a) - S_j(b)|^-s,

where a, b range over the depth-L cylinder centres.  The cross terms
involve separated copies only, so they settle quickly; they are computed
exactly up to a cap on the enumeration and held fixed beyond it.  This gives
energies at depths far beyond anything that can be sampled.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np
from scipy.spatial.distance import cdist

from ..errors import AllPairsDegenerate, InvalidArgument
from ..fractal.ifs import IfsSpec, enumerate_ifs
from ..fractal.measures import SampledMeasure
from ..measure.pairs import PairPlan, batch_bincount, pair_chunk, reduce_pairs

CONVERGED_CHANGE = 0.05
DIVERGING_GROWTH = 1.2
DEFAULT_DEPTHS = (6, 12, 24, 48)
CROSS_POINTS = 2048
_BLOCK = 512


def energy_integral(mu: SampledMeasure, s: float, pair_budget: int = 1_000_000, seed: int = 0,
                    workers: int = 1) -> float:
    """sum_{i != j} w_i w_j |x_i - x_j|^-s, from all pairs or a uniform pair sample.

    Pairs closer than the cloud's positional error (or coincident) are
    dropped, since their distance is not resolved.
    """
    if not s > 0:
        raise InvalidArgument(f"s must be positive, got {s}")
    plan = PairPlan.build(mu.n, mu.n, pair_budget, seed, min_budget=1)
    guard = mu.positional_error

    def chunk(lo, hi):
        pairs = pair_chunk(plan, mu, mu, lo, hi)
        dist = np.linalg.norm(pairs.x - pairs.y, axis=1)
        ok = (dist > 0) & (dist >= guard)
        terms = pairs.weight[ok] * dist[ok] ** -s
        sums = batch_bincount(pairs.batch[ok], np.zeros(ok.sum(), dtype=np.int64), terms, 1)
        return np.concatenate([sums.sum(axis=0), [ok.sum()]])

    total = reduce_pairs(plan, chunk, workers)
    if total[1] == 0:
        raise AllPairsDegenerate("every sampled pair is closer than the positional error")
    return float(total[0])


def _cross_term(spec: IfsSpec, s: float, depth: int) -> float:
    base = enumerate_ifs(spec, depth).points
    w = float(spec.m) ** (-2 * depth - 2)
    total = 0.0
    for i in range(spec.m):
        xi = spec.offsets[i] + spec.ratio * base
        for j in range(spec.m):
            if i == j:
                continue
            yj = spec.offsets[j] + spec.ratio * base
            for lo in range(0, len(xi), _BLOCK):
                total += float(np.sum(cdist(xi[lo:lo + _BLOCK], yj) ** -s))
    return total * w


def ifs_energies(spec: IfsSpec, s: float, depth: int, cross_points: int = CROSS_POINTS) -> np.ndarray:
    """Energies I_0 .. I_depth of the exact discretisations ``enumerate_ifs(spec, D)``."""
    if not s > 0:
        raise InvalidArgument(f"s must be positive, got {s}")
    cap = 0
    while spec.m ** (cap + 1) <= cross_points:
        cap += 1
    factor = spec.ratio**-s / spec.m
    cross = {}
    out = [0.0]
    for d in range(1, depth + 1):
        level = min(d - 1, cap)
        if level not in cross:
            cross[level] = _cross_term(spec, s, level)
        out.append(factor * out[-1] + cross[level])
    return np.array(out)


def energy_verdict(estimates) -> str:
    """converged: last relative change < 5%; diverging: every step grows by > 20%."""
    e = np.asarray(estimates, dtype=float)
    if e.size < 2 or np.any(e <= 0):
        return "inconclusive"
    ratios = e[1:] / e[:-1]
    if np.all(ratios > DIVERGING_GROWTH):
        return "diverging"
    if abs(ratios[-1] - 1.0) < CONVERGED_CHANGE:
        return "converged"
    return "inconclusive"


@dataclass(frozen=True)
class EnergyReport:
    s: float
    levels: tuple
    estimates: tuple
    verdict: str
    kind: str
    extra: dict = field(default_factory=dict)

    def describe(self) -> dict:
        return {
            "s": self.s,
            "kind": self.kind,
            "levels": list(self.levels),
            "estimates": list(self.estimates),
            "verdict": self.verdict,
            **self.extra,
        }


def energy_by_depth(spec: IfsSpec, s: float, depths=DEFAULT_DEPTHS, cross_points: int = CROSS_POINTS) -> EnergyReport:
    """Energies of the depth-D discretisations at doubling depths, with a verdict."""
    depths = tuple(sorted(int(d) for d in depths))
    if not depths or depths[0] < 1:
        raise InvalidArgument("depths must be positive")
    energies = ifs_energies(spec, s, depths[-1], cross_points)
    estimates = tuple(float(energies[d]) for d in depths)
    return EnergyReport(float(s), depths, estimates, energy_verdict(estimates), "depth",
                        {"nominal_dim": spec.dim})


def energy_by_samples(mu: SampledMeasure, s: float, doublings: int = 4, pair_budget: int = 1_000_000,
                      seed: int = 0, workers: int = 1) -> EnergyReport:
    """Energies of the leading n/2^j points of an i.i.d. cloud, j = doublings-1 .. 0."""
    sizes = tuple(mu.n >> j for j in range(doublings - 1, -1, -1))
    if sizes[0] < 2:
        raise InvalidArgument(f"{mu.n} points are too few for {doublings} sample doublings")
    estimates = []
    for n in sizes:
        w = mu.weights[:n] / mu.weights[:n].sum()
        sub = SampledMeasure(mu.points[:n], w, {"positional_error": mu.positional_error})
        estimates.append(energy_integral(sub, s, pair_budget, seed, workers))
    return EnergyReport(float(s), sizes, tuple(estimates), energy_verdict(estimates), "samples")
