from .config import ExperimentConfig, parse_config
from .main import main
from .runner import ExperimentReport, run_experiment

__all__ = ["ExperimentConfig", "ExperimentReport", "main", "parse_config", "run_experiment"]
