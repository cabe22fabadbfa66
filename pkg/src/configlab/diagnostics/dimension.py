"""Mean local dimension of a sampled measure."""

from __future__ import annotations

from ..errors import InvalidArgument
from ..fractal.frostman import ball_mass_profile
from ..fractal.measures import SampledMeasure


def local_dimension(mu: SampledMeasure, radii=None, centers: int = 1000, seed: int = 0) -> float:
    """Average over random centres x ~ mu of the log-log slope of mu(B(x, rho)).

    Shares its radii, centres and resolution checks with ``frostman_check``;
    since a least-squares slope is linear in the data, the average of
    per-centre slopes equals the slope of the averaged log-masses.
    """
    if centers < 100:
        raise InvalidArgument("average over at least 100 centres")
    return float(ball_mass_profile(mu, radii, centers, seed).slope)


def dimension_sum(mu1: SampledMeasure, mu2: SampledMeasure, seed: int = 0) -> tuple[float, float]:
    """Local dimensions of two clouds, from independent centre streams."""
    return local_dimension(mu1, seed=seed), local_dimension(mu2, seed=seed + 1)


