from typing import Dict, Tuple

Pair = Tuple[int, int]


class GeometricMuController:
    """Penalty schedule ``mu_{l1l2} <- eta * mu_{l1l2}`` applied after every iteration.

    With ``eta > 1`` the series ``sum_j (mu^j + mu^(j-1)) / (mu^(j-1))**2`` is geometric with ratio
    ``1 / eta`` and therefore finite, which is the summability condition the convergence
    argument asks of the penalty sequence.
    """

    def __init__(self, eta: float):
        if not eta > 1:
            raise ValueError(f"eta must be > 1, got {eta}")
        self.eta = eta

    def update(self, mu: Dict[Pair, float]) -> Dict[Pair, float]:
        return {pair: value * self.eta for pair, value in mu.items()}

    def value_at(self, mu0: float, k: int) -> float:
        return mu0 * self.eta**k


def mu_summability(mu0: float, eta: float, terms: int = 1000) -> float:
    """Partial sum of ``(mu^j + mu^(j-1)) / (mu^(j-1))**2`` for ``j = 1 .. terms``."""
    total = 0.0
    prev = mu0
    for _ in range(terms):
        cur = prev * eta
        total += (cur + prev) / (prev * prev)
        prev = cur
    return total


def mu_summability_limit(mu0: float, eta: float) -> float:
    return (eta + 1) / mu0 * eta / (eta - 1)
