from .dimension import dimension_sum, local_dimension
from .energy import (
    EnergyReport,
    energy_by_depth,
    energy_by_samples,
    energy_integral,
    energy_verdict,
    ifs_energies,
)
from .fourier import DecayFit, fourier_decay, fourier_transform, probe_directions

__all__ = [
    "DecayFit",
    "EnergyReport",
    "dimension_sum",
    "energy_by_depth",
    "energy_by_samples",
    "energy_integral",
    "energy_verdict",
    "fourier_decay",
    "fourier_transform",
    "ifs_energies",
    "local_dimension",
    "probe_directions",
]
