from .balls import ScalingFit, ball_mass, ball_masses, covering_mass_identity, fit_scaling_exponent
from .density import (
    DensityEstimate,
    GridSpec,
    default_grid,
    detect_intervals,
    estimate_density,
    interval_lengths,
    read_density,
)
from .mollifier import Mollifier, normalization
from .pairs import BATCHES, PairPlan

__all__ = [
    "BATCHES",
    "DensityEstimate",
    "GridSpec",
    "Mollifier",
    "PairPlan",
    "ScalingFit",
    "ball_mass",
    "ball_masses",
    "covering_mass_identity",
    "default_grid",
    "detect_intervals",
    "estimate_density",
    "fit_scaling_exponent",
    "interval_lengths",
    "normalization",
    "read_density",
]
