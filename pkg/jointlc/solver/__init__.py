from .admm_solver import CompletionResult, JointLCSolver, SolverConfig, SolverState, derive_betas
from .presets import PRESETS, get_preset

__all__ = [
    "CompletionResult",
    "JointLCSolver",
    "SolverConfig",
    "SolverState",
    "derive_betas",
    "PRESETS",
    "get_preset",
]
