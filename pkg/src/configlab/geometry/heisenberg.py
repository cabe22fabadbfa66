"""Arithmetic on the first Heisenberg group, R^2 x R with a twisted product."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

J = np.array([[0.0, -1.0], [1.0, 0.0]])


@dataclass(frozen=True)
class HeisPoint:
    xp: tuple[float, float]
    x3: float

    @classmethod
    def from_array(cls, a) -> "HeisPoint":
        a = np.asarray(a, dtype=float)
        return cls((float(a[0]), float(a[1])), float(a[2]))

    def as_array(self) -> np.ndarray:
        return np.array([self.xp[0], self.xp[1], self.x3])

    def __mul__(self, other: "HeisPoint") -> "HeisPoint":
        return HeisPoint.from_array(heis_mul(self.as_array(), other.as_array()))

    def inverse(self) -> "HeisPoint":
        return HeisPoint.from_array(heis_inv(self.as_array()))


def heis_mul(x: np.ndarray, y: np.ndarray) -> np.ndarray:
    """(x', x3).(y', y3) = (x' + y', x3 + y3 + x'^T J y' / 2), over leading axes."""
    x = np.asarray(x, dtype=float)
    y = np.asarray(y, dtype=float)
    twist = 0.5 * (x[..., 1] * y[..., 0] - x[..., 0] * y[..., 1])
    out = np.empty(np.broadcast_shapes(x.shape, y.shape))
    out[..., :2] = x[..., :2] + y[..., :2]
    out[..., 2] = x[..., 2] + y[..., 2] + twist
    return out


def heis_inv(x: np.ndarray) -> np.ndarray:
    return -np.asarray(x, dtype=float)


def heis_phi(x: np.ndarray, y: np.ndarray) -> np.ndarray:
    """(|x' - y'|, height of x.y^-1): horizontal distance and central coordinate."""
    x = np.asarray(x, dtype=float)
    y = np.asarray(y, dtype=float)
    dx = x[..., :2] - y[..., :2]
    height = x[..., 2] - y[..., 2] + 0.5 * (x[..., 0] * y[..., 1] - x[..., 1] * y[..., 0])
    return np.stack([np.hypot(dx[..., 0], dx[..., 1]), height], axis=-1)
