from .mu_controller import GeometricMuController, mu_summability, mu_summability_limit

__all__ = [
    "GeometricMuController",
    "mu_summability",
    "mu_summability_limit",
]
