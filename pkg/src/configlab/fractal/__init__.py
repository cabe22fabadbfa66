from .frostman import BallMassProfile, FrostmanResult, ball_mass_profile, default_radii, frostman_check
from .ifs import IfsSpec, enumerate_ifs, ifs_with_dimension, sample_ifs
from .lattice import falconer_lattice_set, lattice_distance, lattice_radius
from .measures import (
    SampledMeasure,
    atom,
    circle_measure,
    product_measure,
    pushforward,
    read_measure,
    uniform_measure,
    write_measure,
)

__all__ = [
    "BallMassProfile",
    "FrostmanResult",
    "IfsSpec",
    "SampledMeasure",
    "atom",
    "ball_mass_profile",
    "circle_measure",
    "default_radii",
    "enumerate_ifs",
    "falconer_lattice_set",
    "frostman_check",
    "ifs_with_dimension",
    "lattice_distance",
    "lattice_radius",
    "product_measure",
    "pushforward",
    "read_measure",
    "sample_ifs",
    "uniform_measure",
    "write_measure",
]
