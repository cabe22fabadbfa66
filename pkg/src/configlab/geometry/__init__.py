from .heisenberg import HeisPoint, heis_inv, heis_mul, heis_phi
from .lines import (
    Line,
    line_line_distance,
    line_line_distance_batch,
    line_point_distance,
    line_point_distance_batch,
    phi_line_point_smooth,
)
from .maps import (
    CATALOG,
    ConfigurationMap,
    catalog,
    eval_configuration,
    get_map,
    threshold_for,
)
from .quadratic import (
    QuadraticEnsemble,
    alp_max_k,
    build_quadratic_ensemble,
    ensemble_nonsingularity_check,
    radon_hurwitz,
)
from .sampling import chart, chart_dim, sample_parameter_space, sample_space, space_of

__all__ = [
    "CATALOG",
    "ConfigurationMap",
    "HeisPoint",
    "Line",
    "QuadraticEnsemble",
    "alp_max_k",
    "build_quadratic_ensemble",
    "catalog",
    "chart",
    "chart_dim",
    "ensemble_nonsingularity_check",
    "eval_configuration",
    "get_map",
    "heis_inv",
    "heis_mul",
    "heis_phi",
    "line_line_distance",
    "line_line_distance_batch",
    "line_point_distance",
    "line_point_distance_batch",
    "phi_line_point_smooth",
    "radon_hurwitz",
    "sample_parameter_space",
    "sample_space",
    "space_of",
    "threshold_for",
]
