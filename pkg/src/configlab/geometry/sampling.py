"""Sampling of parameter spaces and explicit charts from the unit cube.

Bounding boxes default to [-1, 1]-type regions; sphere radii default to
[0.05, 1].  Charts send [0, 1]^dim onto a compact patch of a parameter space
by a bi-Lipschitz map, so a measure of dimension s on the cube pushes forward
to one of dimension s on the patch.  Lines and hyperplanes use the
upper-hemisphere chart for the direction and a smooth orthonormal frame of
omega-perp for the foot point.
"""

from __future__ import annotations

import numpy as np

from ..errors import InvalidArgument
from ..rng import stream
from .maps import ConfigurationMap

DEFAULT_BOUNDS = {
    "box": (-1.0, 1.0),
    "offset": (-1.0, 1.0),
    "radius": (0.05, 1.0),
    "foot": 1.0,
    "slope": 1.0,
}


def space_of(cmap: ConfigurationMap, which: str) -> tuple[str, int]:
    """(space name, ambient dimension d) for side ``which`` in {"X", "Y"}."""
    which = which.upper()
    if which not in ("X", "Y"):
        raise InvalidArgument(f"which must be 'X' or 'Y', got {which!r}")
    space = cmap.x_space if which == "X" else cmap.y_space
    width = cmap.x_width if which == "X" else cmap.y_width
    if space == "lines":
        return space, width // 2
    if space in ("hyperplanes", "spheres"):
        return space, width - 1
    return space, width


def chart_dim(space: str, d: int) -> int:
    """Manifold dimension of the parameter space, i.e. the cube dimension its chart needs."""
    return {"lines": 2 * d - 2, "hyperplanes": d, "spheres": d + 1}.get(space, d)


def coord_width(space: str, d: int) -> int:
    return {"lines": 2 * d, "hyperplanes": d + 1, "spheres": d + 1}.get(space, d)


def _uniform_sphere(rng: np.random.Generator, n: int, d: int) -> np.ndarray:
    g = rng.standard_normal((n, d))
    return g / np.linalg.norm(g, axis=1, keepdims=True)


def perp_frame(omega: np.ndarray) -> np.ndarray:
    """Smooth orthonormal frame f_1..f_{d-1} of omega-perp on omega_d > -1.

    f_i = e_i - omega_i / (1 + omega_d) * (e_d + omega); returns shape (n, d-1, d).
    """
    omega = np.atleast_2d(omega)
    n, d = omega.shape
    ed_plus = omega.copy()
    ed_plus[:, -1] += 1.0
    coef = omega[:, :-1] / ed_plus[:, -1:]
    frame = np.zeros((n, d - 1, d))
    frame[:, np.arange(d - 1), np.arange(d - 1)] = 1.0
    frame -= coef[:, :, None] * ed_plus[:, None, :]
    return frame


def _hemisphere(u: np.ndarray, slope: float) -> np.ndarray:
    p = slope * (2.0 * u - 1.0)
    full = np.concatenate([p, np.ones((u.shape[0], 1))], axis=1)
    return full / np.linalg.norm(full, axis=1, keepdims=True)


def chart(space: str, d: int, u, bounds: dict | None = None) -> np.ndarray:
    """Map cube coordinates u in [0, 1]^chart_dim to parameter-space coordinates."""
    b = {**DEFAULT_BOUNDS, **(bounds or {})}
    u = np.atleast_2d(np.asarray(u, dtype=float))
    need = chart_dim(space, d)
    if u.shape[1] != need:
        raise InvalidArgument(f"{space} chart in R^{d} needs {need} cube coordinates, got {u.shape[1]}")
    if space == "lines":
        omega = _hemisphere(u[:, : d - 1], b["slope"])
        coeffs = b["foot"] * (2.0 * u[:, d - 1 :] - 1.0)
        v = np.einsum("ni,nid->nd", coeffs, perp_frame(omega))
        v -= np.sum(v * omega, axis=1, keepdims=True) * omega
        return np.concatenate([omega, v], axis=1)
    if space == "hyperplanes":
        omega = _hemisphere(u[:, : d - 1], b["slope"])
        lo, hi = b["offset"]
        return np.concatenate([omega, lo + (hi - lo) * u[:, d - 1 :]], axis=1)
    if space == "spheres":
        lo, hi = b["box"]
        rlo, rhi = b["radius"]
        return np.concatenate([lo + (hi - lo) * u[:, :d], rlo + (rhi - rlo) * u[:, d:]], axis=1)
    lo, hi = b["box"]
    return lo + (hi - lo) * u


def sample_space(space: str, d: int, n: int, seed: int, bounds: dict | None = None) -> np.ndarray:
    if n < 1:
        raise InvalidArgument("n must be >= 1")
    b = {**DEFAULT_BOUNDS, **(bounds or {})}
    rng = stream(seed, f"parameter-space/{space}/{d}")
    if space == "lines":
        omega = _uniform_sphere(rng, n, d)
        g = rng.standard_normal((n, d))
        g -= np.sum(g * omega, axis=1, keepdims=True) * omega
        g /= np.linalg.norm(g, axis=1, keepdims=True)
        radius = b["foot"] * rng.random(n) ** (1.0 / (d - 1))
        v = g * radius[:, None]
        v -= np.sum(v * omega, axis=1, keepdims=True) * omega
        return np.concatenate([omega, v], axis=1)
    if space == "hyperplanes":
        omega = _uniform_sphere(rng, n, d)
        lo, hi = b["offset"]
        return np.concatenate([omega, rng.uniform(lo, hi, (n, 1))], axis=1)
    if space == "spheres":
        lo, hi = b["box"]
        rlo, rhi = b["radius"]
        return np.concatenate([rng.uniform(lo, hi, (n, d)), rng.uniform(rlo, rhi, (n, 1))], axis=1)
    lo, hi = b["box"]
    return rng.uniform(lo, hi, (n, d))


def sample_parameter_space(cmap: ConfigurationMap, which: str, n: int, seed: int, bounds: dict | None = None) -> np.ndarray:
    """n uniform draws from the X or Y parameter space of ``cmap``, one row per point."""
    space, d = space_of(cmap, which)
    return sample_space(space, d, n, seed, bounds)
