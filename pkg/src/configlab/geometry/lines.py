"""Affine lines in R^d as points of the tangent bundle of the sphere.

A line is stored as (omega, v): a unit direction and the foot point v, which
is orthogonal to omega.  The line is {v + s*omega : s real}.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from ..errors import DimensionMismatch, InvalidArgument

LINE_TOL = 1e-12
PARALLEL_TOL = 1e-10


@dataclass(frozen=True)
class Line:
    omega: np.ndarray
    v: np.ndarray

    def __post_init__(self):
        omega = np.asarray(self.omega, dtype=float)
        v = np.asarray(self.v, dtype=float)
        if omega.ndim != 1 or omega.shape != v.shape:
            raise DimensionMismatch(f"omega and v must be vectors of equal length, got {omega.shape}, {v.shape}")
        if omega.size < 2:
            raise DimensionMismatch("lines need ambient dimension >= 2")
        if abs(np.linalg.norm(omega) - 1.0) > LINE_TOL:
            raise InvalidArgument(f"|omega| must be 1, got {np.linalg.norm(omega)!r}")
        if abs(omega @ v) > LINE_TOL:
            raise InvalidArgument(f"v must be orthogonal to omega, v.omega = {omega @ v!r}")
        object.__setattr__(self, "omega", omega)
        object.__setattr__(self, "v", v)

    @property
    def dim(self) -> int:
        return self.omega.size

    @classmethod
    def through(cls, point, direction) -> "Line":
        """The line through ``point`` with direction ``direction`` (any nonzero length)."""
        direction = np.asarray(direction, dtype=float)
        omega = direction / np.linalg.norm(direction)
        point = np.asarray(point, dtype=float)
        v = point - (point @ omega) * omega
        v = v - (v @ omega) * omega
        return cls(omega, v)

    def coords(self) -> np.ndarray:
        return np.concatenate([self.omega, self.v])

    @classmethod
    def from_coords(cls, coords) -> "Line":
        coords = np.asarray(coords, dtype=float)
        d = coords.size // 2
        if coords.size != 2 * d:
            raise DimensionMismatch("line coordinates have even length (omega, v)")
        return cls(coords[:d], coords[d:])


def split_line_coords(coords: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    coords = np.asarray(coords, dtype=float)
    d = coords.shape[-1] // 2
    return coords[..., :d], coords[..., d:]


def line_point_distance_batch(omega: np.ndarray, v: np.ndarray, y: np.ndarray) -> np.ndarray:
    """|Pi_omega^perp (v - y)| for broadcastable arrays of shape (..., d)."""
    w = v - y
    w = w - np.sum(w * omega, axis=-1, keepdims=True) * omega
    return np.linalg.norm(w, axis=-1)


def line_point_distance(line: Line, y) -> float:
    y = np.asarray(y, dtype=float)
    if y.shape != (line.dim,):
        raise DimensionMismatch(f"point has shape {y.shape}, line lives in R^{line.dim}")
    return float(line_point_distance_batch(line.omega, line.v, y))


def phi_line_point_smooth(line: Line, y) -> float:
    """Half the squared distance: smooth across the incidence set."""
    return 0.5 * line_point_distance(line, y) ** 2


def line_line_distance_batch(omega, v, omega2, v2) -> np.ndarray:
    """Least-squares distance between lines, vectorised over leading axes.

    Solves the normal equations [[1, -c], [-c, 1]] (s, s') = (-u.omega, u.omega')
    with c = omega.omega' and u = v - v'; falls back to the parallel formula
    when |c| > 1 - 1e-10.
    """
    omega, v, omega2, v2 = (np.asarray(a, dtype=float) for a in (omega, v, omega2, v2))
    u = v - v2
    c = np.sum(omega * omega2, axis=-1)
    a = np.sum(u * omega, axis=-1)
    b = np.sum(u * omega2, axis=-1)
    parallel = np.abs(c) > 1.0 - PARALLEL_TOL
    det = np.where(parallel, 1.0, 1.0 - c * c)
    s = (-a + c * b) / det
    s2 = (b - c * a) / det
    resid = u + s[..., None] * omega - s2[..., None] * omega2
    skew = np.linalg.norm(resid, axis=-1)
    flat = u - a[..., None] * omega
    par = np.linalg.norm(flat, axis=-1)
    return np.where(parallel, par, skew)


def line_line_distance(first: Line, second: Line) -> float:
    if first.dim != second.dim:
        raise DimensionMismatch(f"lines live in R^{first.dim} and R^{second.dim}")
    return float(line_line_distance_batch(first.omega, first.v, second.omega, second.v))
