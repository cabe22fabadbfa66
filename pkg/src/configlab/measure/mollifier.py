"""Compactly supported bump chi(u) = c_k (1 - |u|^2)^4 and its rescalings."""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from ..errors import InvalidArgument

POWER = 4
MAX_K = 4


def normalization(k: int) -> float:
    """c_k with c_k * integral over the unit ball of (1 - |u|^2)^POWER equal to 1."""
    return math.gamma(POWER + 1 + k / 2) / (math.pi ** (k / 2) * math.gamma(POWER + 1))


@dataclass(frozen=True)
class Mollifier:
    k: int
    eps: float

    def __post_init__(self):
        if not 1 <= self.k <= MAX_K:
            raise InvalidArgument(f"mollifier dimension must be in 1..{MAX_K}, got {self.k}")
        if not self.eps > 0:
            raise InvalidArgument(f"bandwidth must be positive, got {self.eps}")

    @property
    def constant(self) -> float:
        return normalization(self.k)

    def profile_sq(self, r2: np.ndarray) -> np.ndarray:
        """chi as a function of |u|^2."""
        r2 = np.asarray(r2, dtype=float)
        return np.where(r2 < 1.0, self.constant * np.clip(1.0 - r2, 0.0, None) ** POWER, 0.0)

    def profile(self, u) -> np.ndarray:
        u = np.asarray(u, dtype=float)
        if self.k == 1 and u.ndim <= 1:
            u = u[..., None]
        return self.profile_sq(np.sum(u * u, axis=-1))

    def __call__(self, t) -> np.ndarray:
        """chi^eps(t) = eps^-k chi(t / eps); t has trailing axis k (or is scalar/1-D for k = 1)."""
        t = np.asarray(t, dtype=float)
        if self.k == 1 and t.ndim <= 1:
            t = t[..., None]
        return self.profile_sq(np.sum(t * t, axis=-1) / self.eps**2) / self.eps**self.k
