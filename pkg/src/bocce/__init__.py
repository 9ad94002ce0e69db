"""Exact and simulated probabilities for random point clouds, positive
solutions of linear systems, and random matrix games."""
from .exact import Kind, Scenario, p_exact, regions, scenario_probability
from .lp import FLOAT, RATIONAL, Float, Rational

__all__ = [
    "Kind", "Scenario", "p_exact", "regions", "scenario_probability",
    "FLOAT", "RATIONAL", "Float", "Rational",
]
__version__ = "0.1.0"
