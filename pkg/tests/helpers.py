import numpy as np
import torch


def randn(*shape, generator=None) -> torch.Tensor:
    return torch.randn(*shape, generator=generator, dtype=torch.float64)


def rel_err(a: torch.Tensor, b: torch.Tensor) -> float:
    """``||a - b|| / max(1, ||b||)``."""
    denom = max(1.0, torch.linalg.vector_norm(b).item())
    return torch.linalg.vector_norm(a - b).item() / denom


def h_np(l, y, rho, omega, nu, vartheta):
    cap = nu * vartheta
    g = np.where(l <= cap, nu * l - l * l / (2 * vartheta), nu * nu * vartheta / 2)
    return rho / 2 * (l - y) ** 2 + omega * np.log1p(g)


def grid_argmin(y, rho, omega, nu, vartheta, points=200001):
    """Coarse grid over [0, 1.5 max(y, nu vartheta)], refined around every coarse local minimum."""
    hi = 1.5 * max(y, nu * vartheta, 1e-12)
    grid = np.linspace(0.0, hi, points)
    h = h_np(grid, y, rho, omega, nu, vartheta)
    left = np.concatenate([[np.inf], h[:-1]])
    right = np.concatenate([h[1:], [np.inf]])
    best_l, best_h = None, np.inf
    for k in np.nonzero((h <= left) & (h <= right))[0]:
        fine = np.linspace(grid[max(k - 1, 0)], grid[min(k + 1, points - 1)], 4001)
        fine_h = h_np(fine, y, rho, omega, nu, vartheta)
        j = int(np.argmin(fine_h))
        if fine_h[j] < best_h:
            best_l, best_h = fine[j], fine_h[j]
    return best_l, best_h

