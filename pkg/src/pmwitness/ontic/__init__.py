"""Exact linear-programming oracle over deterministic-response ontic models."""
from .kernel import BACKEND
from .lp import (
    LinearProgram,
    LpVerdict,
    OnticDistribution,
    bodp_gap,
    check_model,
    feasibility_program,
    min_parity_tv,
    nc_feasible,
    parity_tv_program,
)

__all__ = [
    "BACKEND",
    "LinearProgram",
    "LpVerdict",
    "OnticDistribution",
    "bodp_gap",
    "check_model",
    "feasibility_program",
    "min_parity_tv",
    "nc_feasible",
    "parity_tv_program",
]
