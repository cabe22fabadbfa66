"""Catalog of configuration maps Phi: X x Y -> R^k.

Every map records the manifold dimensions of its parameter spaces, the
smoothing order ``alpha`` of its averaging operators and the loss ``beta``
relative to optimal smoothing, so that the sufficient dimension bound
``d1 + k + 2*beta`` is available for each entry.  Points of non-Euclidean
parameter spaces are passed in fixed coordinates:

* hyperplanes ``(omega, s)``: width d + 1, the set {y : omega.y = s}
* spheres ``(a, r)``: width d + 1, center and radius
* lines ``(omega, v)``: width 2d, see :mod:`configlab.geometry.lines`
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable

import numpy as np

from ..errors import DimensionMismatch, InvalidArgument, SingularConfiguration, UnknownMap, Unsupported
from .heisenberg import heis_phi
from .lines import Line, line_line_distance_batch, line_point_distance_batch, split_line_coords
from .quadratic import QuadraticEnsemble, build_quadratic_ensemble

SINGULAR_MARGIN = 1e-9

BatchFn = Callable[[np.ndarray, np.ndarray], np.ndarray]


@dataclass(frozen=True)
class ConfigurationMap:
    name: str
    d1: int
    d2: int
    k: int
    x_width: int
    y_width: int
    alpha: Fraction
    beta: Fraction
    params: dict = field(default_factory=dict)
    x_space: str = "points"
    y_space: str = "points"
    translation_type: bool = False
    evaluate_fn: BatchFn | None = field(default=None, repr=False, compare=False)
    singular_fn: BatchFn | None = field(default=None, repr=False, compare=False)

    def __post_init__(self):
        if not (1 <= self.k <= self.d2 <= self.d1):
            raise InvalidArgument(f"{self.name}: need 1 <= k <= d2 <= d1, got k={self.k}, d1={self.d1}, d2={self.d2}")
        half = Fraction(self.d2 - self.k, 2)
        if self.alpha + self.beta != half:
            raise InvalidArgument(f"{self.name}: alpha + beta must equal (d2 - k)/2")
        if not (0 <= self.alpha <= half):
            raise InvalidArgument(f"{self.name}: alpha outside [0, (d2 - k)/2]")

    @property
    def threshold_sum(self) -> Fraction:
        return self.d1 + self.k + 2 * self.beta

    @property
    def implemented(self) -> bool:
        return self.evaluate_fn is not None

    def _check(self, x: np.ndarray, y: np.ndarray) -> None:
        if x.shape[-1] != self.x_width:
            raise DimensionMismatch(f"{self.name}: X points have width {x.shape[-1]}, expected {self.x_width}")
        if y.shape[-1] != self.y_width:
            raise DimensionMismatch(f"{self.name}: Y points have width {y.shape[-1]}, expected {self.y_width}")
        if not self.implemented:
            raise Unsupported(f"{self.name}: only catalog data is available for this map")

    def evaluate(self, x, y) -> np.ndarray:
        """Phi over paired rows: x (N, x_width), y (N, y_width) -> (N, k). No singularity check."""
        x = np.atleast_2d(np.asarray(x, dtype=float))
        y = np.atleast_2d(np.asarray(y, dtype=float))
        self._check(x, y)
        return self.evaluate_fn(x, y)

    def singular(self, x, y) -> np.ndarray:
        x = np.atleast_2d(np.asarray(x, dtype=float))
        y = np.atleast_2d(np.asarray(y, dtype=float))
        self._check(x, y)
        if self.singular_fn is None:
            return np.zeros(np.broadcast_shapes(x.shape[:-1], y.shape[:-1]), dtype=bool)
        return self.singular_fn(x, y)

    def is_singular(self, x, y) -> bool:
        return bool(self.singular(x, y).reshape(-1)[0])

    def describe(self) -> dict:
        return {
            "name": self.name,
            "params": {key: _jsonable(val) for key, val in self.params.items()},
            "d1": self.d1,
            "d2": self.d2,
            "k": self.k,
            "x_space": self.x_space,
            "y_space": self.y_space,
            "alpha": str(self.alpha),
            "beta": str(self.beta),
            "threshold": str(self.threshold_sum),
            "implemented": self.implemented,
        }


def _jsonable(value):
    if isinstance(value, np.ndarray):
        return value.tolist()
    if isinstance(value, tuple):
        return list(value)
    return value


def eval_configuration(cmap: ConfigurationMap, x, y) -> np.ndarray:
    """Phi(x, y) for a single pair of points, with the singular set excluded."""
    x = np.asarray(x, dtype=float)
    y = np.asarray(y, dtype=float)
    if x.shape != (cmap.x_width,) or y.shape != (cmap.y_width,):
        raise DimensionMismatch(
            f"{cmap.name}: expected points of width ({cmap.x_width}, {cmap.y_width}), got {x.shape}, {y.shape}"
        )
    if cmap.x_space == "lines":
        Line.from_coords(x)
    if cmap.y_space == "lines":
        Line.from_coords(y)
    if cmap.is_singular(x, y):
        raise SingularConfiguration(f"{cmap.name}: ({x.tolist()}, {y.tolist()}) is in the singular set")
    return cmap.evaluate(x, y)[0]


# --- individual maps ------------------------------------------------------------


def _norm_rows(a: np.ndarray) -> np.ndarray:
    return np.linalg.norm(a, axis=-1)


def distance_map(d: int = 2, metric=None) -> ConfigurationMap:
    """Norm distance |x - y|, or the ellipsoid norm |M(x - y)| for positive-definite M."""
    if metric is None:
        M = None
    else:
        M = np.asarray(metric, dtype=float)
        if M.shape != (d, d):
            raise DimensionMismatch(f"metric must be {d}x{d}")
        if np.max(np.abs(M - M.T)) > 1e-12 or np.min(np.linalg.eigvalsh(M)) <= 0:
            raise InvalidArgument("metric must be symmetric positive-definite")

    def evaluate(x, y):
        diff = x - y
        if M is not None:
            diff = diff @ M.T
        return _norm_rows(diff)[..., None]

    def singular(x, y):
        return _norm_rows(x - y) < SINGULAR_MARGIN

    params = {"d": d} if M is None else {"d": d, "metric": M}
    return ConfigurationMap(
        "distance", d, d, 1, d, d, Fraction(d - 1, 2), Fraction(0), params,
        translation_type=True, evaluate_fn=evaluate, singular_fn=singular,
    )


def difference_map(d: int = 1) -> ConfigurationMap:
    return ConfigurationMap(
        "difference", d, d, d, d, d, Fraction(0), Fraction(0), {"d": d},
        translation_type=True, evaluate_fn=lambda x, y: x - y,
    )


def multi_distance_map(parts=(2, 2)) -> ConfigurationMap:
    """(|x^1 - y^1|, ..., |x^k - y^k|) for the block split d = d_1 + ... + d_k."""
    parts = tuple(int(p) for p in parts)
    if len(parts) < 1 or min(parts) < 2:
        raise InvalidArgument("multi-parameter distance needs every block dimension d_j > 1")
    d = sum(parts)
    k = len(parts)
    edges = np.cumsum((0,) + parts)
    alpha = Fraction(min(parts) - 1, 2)

    def evaluate(x, y):
        diff = x - y
        return np.stack([_norm_rows(diff[..., lo:hi]) for lo, hi in zip(edges[:-1], edges[1:])], axis=-1)

    def singular(x, y):
        return np.min(evaluate(x, y), axis=-1) < SINGULAR_MARGIN

    return ConfigurationMap(
        "multi_distance", d, d, k, d, d, alpha, Fraction(d - k, 2) - alpha, {"parts": parts},
        translation_type=True, evaluate_fn=evaluate, singular_fn=singular,
    )


def hyperplane_point_map(d: int = 2) -> ConfigurationMap:
    """|omega.y - s|: distance from y to the hyperplane (omega, s)."""
    if d < 2:
        raise InvalidArgument("hyperplanes need d >= 2")

    def signed(x, y):
        return np.sum(x[..., :d] * y, axis=-1) - x[..., d]

    return ConfigurationMap(
        "hyperplane_point", d, d, 1, d + 1, d, Fraction(d - 1, 2), Fraction(0), {"d": d},
        x_space="hyperplanes",
        evaluate_fn=lambda x, y: np.abs(signed(x, y))[..., None],
        singular_fn=lambda x, y: np.abs(signed(x, y)) < SINGULAR_MARGIN,
    )


def sphere_point_map(d: int = 2) -> ConfigurationMap:
    """|y - a| - r, signed: negative inside the sphere (a, r)."""

    def evaluate(x, y):
        return (_norm_rows(y - x[..., :d]) - x[..., d])[..., None]

    def singular(x, y):
        return _norm_rows(y - x[..., :d]) < SINGULAR_MARGIN

    return ConfigurationMap(
        "sphere_point", d + 1, d, 1, d + 1, d, Fraction(d - 1, 2), Fraction(0), {"d": d},
        x_space="spheres", evaluate_fn=evaluate, singular_fn=singular,
    )


def line_point_map(d: int = 3) -> ConfigurationMap:
    if d < 2:
        raise InvalidArgument("lines need d >= 2")

    def evaluate(x, y):
        omega, v = split_line_coords(x)
        return line_point_distance_batch(omega, v, y)[..., None]

    return ConfigurationMap(
        "line_point", 2 * d - 2, d, 1, 2 * d, d, Fraction(d - 1, 2), Fraction(0), {"d": d},
        x_space="lines", evaluate_fn=evaluate,
        singular_fn=lambda x, y: evaluate(x, y)[..., 0] < SINGULAR_MARGIN,
    )


def line_line_map(d: int = 3) -> ConfigurationMap:
    if d < 3:
        raise InvalidArgument("line-line distances need d >= 3")

    def evaluate(x, y):
        o1, v1 = split_line_coords(x)
        o2, v2 = split_line_coords(y)
        return line_line_distance_batch(o1, v1, o2, v2)[..., None]

    return ConfigurationMap(
        "line_line", 2 * d - 2, 2 * d - 2, 1, 2 * d, 2 * d, Fraction(2 * d - 3, 2), Fraction(0), {"d": d},
        x_space="lines", y_space="lines", evaluate_fn=evaluate,
        singular_fn=lambda x, y: evaluate(x, y)[..., 0] < SINGULAR_MARGIN,
    )


def quadratic_map(d: int = 4, k: int = 3, ensemble: QuadraticEnsemble | None = None) -> ConfigurationMap:
    """Q(x - y) for a nonsingular ensemble Q = (Q_1, ..., Q_k)."""
    ens = ensemble if ensemble is not None else build_quadratic_ensemble(d, k)
    if (ens.d, ens.k) != (d, k):
        raise DimensionMismatch("ensemble shape disagrees with (d, k)")
    return ConfigurationMap(
        "quadratic", d, d, k, d, d, Fraction(d - k, 2), Fraction(0), {"d": d, "k": k},
        translation_type=True,
        evaluate_fn=lambda x, y: ens(x - y),
        singular_fn=lambda x, y: _norm_rows(x - y) < SINGULAR_MARGIN,
    )


def heisenberg_map() -> ConfigurationMap:
    return ConfigurationMap(
        "heisenberg", 3, 3, 2, 3, 3, Fraction(1, 3), Fraction(1, 6), {},
        x_space="heisenberg", y_space="heisenberg",
        evaluate_fn=heis_phi,
        singular_fn=lambda x, y: np.hypot(x[..., 0] - y[..., 0], x[..., 1] - y[..., 1]) < SINGULAR_MARGIN,
    )


def moment_curve_map(d: int = 3) -> ConfigurationMap:
    """x' - y' - g(x_1 - y_1) with g(tau) = (tau^2, ..., tau^d)."""
    if d < 2:
        raise InvalidArgument("the moment-curve map needs d >= 2")
    powers = np.arange(2, d + 1)

    def evaluate(x, y):
        tau = (x[..., 0] - y[..., 0])[..., None]
        return x[..., 1:] - y[..., 1:] - tau**powers

    alpha = Fraction(1, d)
    return ConfigurationMap(
        "moment_curve", d, d, d - 1, d, d, alpha, Fraction(1, 2) - alpha, {"d": d},
        translation_type=True, evaluate_fn=evaluate,
    )


def step_two_map(n: int = 2, m: int = 1) -> ConfigurationMap:
    """Nondegenerate step-two group of dimension n + m; threshold data only."""
    if n % 2 or n < 2 or m < 1:
        raise InvalidArgument("step-two groups need even n >= 2 and m >= 1")
    k = m + 1
    beta = Fraction(1, 6)
    return ConfigurationMap(
        "step_two", n + m, n + m, k, n + m, n + m, Fraction(n + m - k, 2) - beta, beta, {"n": n, "m": m},
        x_space="group", y_space="group",
    )


CATALOG: dict[str, Callable[..., ConfigurationMap]] = {
    "distance": distance_map,
    "difference": difference_map,
    "multi_distance": multi_distance_map,
    "hyperplane_point": hyperplane_point_map,
    "sphere_point": sphere_point_map,
    "line_point": line_point_map,
    "line_line": line_line_map,
    "quadratic": quadratic_map,
    "heisenberg": heisenberg_map,
    "moment_curve": moment_curve_map,
    "step_two": step_two_map,
}

# Default parameters used when listing the catalog.
DEFAULT_PARAMS: dict[str, dict] = {
    "distance": {"d": 2},
    "difference": {"d": 1},
    "multi_distance": {"parts": (2, 2)},
    "hyperplane_point": {"d": 2},
    "sphere_point": {"d": 2},
    "line_point": {"d": 3},
    "line_line": {"d": 3},
    "quadratic": {"d": 4, "k": 3},
    "heisenberg": {},
    "moment_curve": {"d": 3},
    "step_two": {"n": 2, "m": 1},
}


def get_map(name: str, **params) -> ConfigurationMap:
    try:
        factory = CATALOG[name]
    except KeyError:
        raise UnknownMap(f"unknown configuration map {name!r}; known: {', '.join(sorted(CATALOG))}") from None
    try:
        return factory(**params)
    except TypeError as exc:
        raise InvalidArgument(f"{name}: bad parameters {params}: {exc}") from None


def catalog() -> list[ConfigurationMap]:
    return [get_map(name, **DEFAULT_PARAMS[name]) for name in CATALOG]


def threshold_for(cmap: ConfigurationMap) -> Fraction:
    """Sufficient lower bound on dim E + dim F, written per map family.

    These are the published statements for each family; they agree with
    ``cmap.threshold_sum`` (d1 + k + 2*beta) by construction of the catalog.
    """
    p = cmap.params
    name = cmap.name
    if name == "distance":
        return Fraction(p["d"] + 1)  # single set: dim E > (d + 1)/2
    if name == "difference":
        return Fraction(2 * p["d"])
    if name == "multi_distance":
        d = sum(p["parts"])
        return Fraction(2 * d - min(j - 1 for j in p["parts"]))  # single set: d - min(d_j - 1)/2
    if name == "hyperplane_point":
        return Fraction(p["d"] + 1)
    if name == "sphere_point":
        return Fraction(p["d"] + 2)
    if name in ("line_point", "line_line"):
        return Fraction(2 * p["d"] - 1)
    if name == "quadratic":
        return Fraction(p["d"] + p["k"])
    if name == "heisenberg":
        return Fraction(16, 3)
    if name == "moment_curve":
        return 2 * p["d"] - Fraction(2, p["d"])
    if name == "step_two":
        return p["n"] + 2 * p["m"] + Fraction(4, 3)
    raise UnknownMap(f"no threshold recorded for {name!r}")
