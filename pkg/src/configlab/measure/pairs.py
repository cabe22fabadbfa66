"""Pair plans over the index product of two clouds.

A plan either enumerates all n1*n2 pairs or draws ``pair_budget`` pairs
uniformly with replacement.  Pairs are processed in fixed chunks, each with
its own counter-based stream, and every pair belongs to batch
``flat_index % BATCHES``.  Chunk reducers return per-batch partial sums that
are added in chunk order, so totals are bitwise independent of the worker
count.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import reduce
from typing import Callable

import numpy as np

from ..errors import BudgetTooSmall
from ..fractal.measures import SampledMeasure
from ..rng import chunk_bounds, ordered_map, stream

BATCHES = 16
PAIR_CHUNK = 1 << 16
MIN_PAIR_BUDGET = 10_000


@dataclass(frozen=True)
class PairPlan:
    n1: int
    n2: int
    count: int
    exact: bool
    seed: int

    @classmethod
    def build(cls, n1: int, n2: int, pair_budget: int, seed: int, min_budget: int = MIN_PAIR_BUDGET) -> "PairPlan":
        if pair_budget < min_budget:
            raise BudgetTooSmall(f"pair_budget {pair_budget} is below the minimum {min_budget}")
        if n1 * n2 <= pair_budget:
            return cls(n1, n2, n1 * n2, True, seed)
        return cls(n1, n2, int(pair_budget), False, seed)

    @property
    def scale(self) -> float:
        """Factor turning w_i w'_j into an unbiased per-pair contribution."""
        return self.n1 * self.n2 / self.count

    def chunks(self) -> list[tuple[int, int]]:
        return list(chunk_bounds(self.count, PAIR_CHUNK))

    def indices(self, lo: int, hi: int) -> tuple[np.ndarray, np.ndarray]:
        if self.exact:
            return np.divmod(np.arange(lo, hi), self.n2)
        rng = stream(self.seed, "pairs", lo // PAIR_CHUNK)
        return rng.integers(self.n1, size=hi - lo), rng.integers(self.n2, size=hi - lo)

    @staticmethod
    def batch_of(lo: int, hi: int) -> np.ndarray:
        return np.arange(lo, hi) % BATCHES

    def batch_sizes(self) -> np.ndarray:
        full, rest = divmod(self.count, BATCHES)
        return full + (np.arange(BATCHES) < rest)

    def describe(self) -> dict:
        return {"pairs_used": self.count, "exact": self.exact}


@dataclass(frozen=True)
class PairChunk:
    x: np.ndarray
    y: np.ndarray
    weight: np.ndarray
    batch: np.ndarray


def pair_chunk(plan: PairPlan, mu1: SampledMeasure, mu2: SampledMeasure, lo: int, hi: int) -> PairChunk:
    i, j = plan.indices(lo, hi)
    w = mu1.weights[i] * mu2.weights[j] * plan.scale
    return PairChunk(mu1.points[i], mu2.points[j], w, plan.batch_of(lo, hi))


def reduce_pairs(plan: PairPlan, fn: Callable[[int, int], np.ndarray], workers: int = 1) -> np.ndarray:
    """Sum of ``fn(lo, hi)`` over the plan's chunks, added in chunk order."""
    parts = ordered_map(lambda bounds: fn(*bounds), plan.chunks(), workers)
    return reduce(np.add, parts)


def batch_bincount(batch: np.ndarray, slot: np.ndarray, weights: np.ndarray, slots: int) -> np.ndarray:
    """(BATCHES, slots) table of summed weights."""
    flat = np.bincount(batch * slots + slot, weights=weights, minlength=BATCHES * slots)
    return flat.reshape(BATCHES, slots)


def batch_summary(plan: PairPlan, sums: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    """Total and batch standard error from per-batch partial sums of shape (BATCHES, ...)."""
    total = sums.sum(axis=0)
    sizes = plan.batch_sizes()
    used = sizes > 0
    if used.sum() < 2:
        return total, np.zeros_like(total)
    shape = (-1,) + (1,) * (sums.ndim - 1)
    estimates = sums[used] * (plan.count / sizes[used]).reshape(shape)
    stderr = estimates.std(axis=0, ddof=1) / np.sqrt(used.sum())
    return total, stderr
