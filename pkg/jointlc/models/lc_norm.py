"""Logarithmic composite norm and its proximal operator.

The norm of an order-3 tensor is a weighted sum of ``log(g(sigma) + 1)`` over the singular values
of its DFT slices, where ``g`` is a concave quadratic capped at ``nu * vartheta``. The proximal
operator acts on singular values only: each one is the argmin of

    h(l) = rho / 2 * (l - y) ** 2 + omega * log(g(l) + 1),   l >= 0,

found among the real stationary points of the quadratic branch (roots of a cubic, clamped to
``[0, nu * vartheta]``), the points ``0`` and ``nu * vartheta``, and ``y`` itself when ``y`` lies on
the flat branch. Ties go to the smallest candidate.
"""

import math
from dataclasses import dataclass
from enum import Enum
from typing import List, Union

import torch

from jointlc.ops.t_algebra import dft_mode3, idft_mode3, singular_values, slice_svd

Scalar = Union[float, torch.Tensor]

# Cubics whose coefficients are all below this are solved by bisection; the case split squares
# and cubes them.
_DEGENERATE_SCALE = 1e-100
_CASE_RTOL = 1e-12


class WeightScheme(str, Enum):
    NORMALIZED = "normalized"
    RAW = "raw"


@dataclass
class LCParams:
    """Parameters of the logarithmic composite norm.

    Args:
        nu (float): slope of ``g`` at zero.
        vartheta (float): curvature scale of ``g``; ``g`` is flat beyond ``nu * vartheta``.
        c (float, defaults to 0.8): offset of the weight sigmoid ``1 / (c + exp(-w))``.
        scheme (WeightScheme): ``normalized`` rescales each slice's singular values by ``R / max``
            before the sigmoid, ``raw`` uses them as they are.
    """

    nu: float = 1.0
    vartheta: float = 500.0
    c: float = 0.8
    scheme: WeightScheme = WeightScheme.NORMALIZED

    def __post_init__(self):
        self.scheme = WeightScheme(self.scheme)
        for name in ("nu", "vartheta", "c"):
            value = getattr(self, name)
            if not value > 0:
                raise ValueError(f"{name} must be positive, got {value}")

    @property
    def cap(self) -> float:
        return self.nu * self.vartheta

    @property
    def g_max(self) -> float:
        return self.nu * self.nu * self.vartheta / 2


def g_cap(sigma: Scalar, p: LCParams) -> Scalar:
    """``nu * s - s**2 / (2 * vartheta)`` up to ``nu * vartheta``, then constant ``nu**2 * vartheta / 2``."""
    if isinstance(sigma, torch.Tensor):
        if bool((sigma < 0).any()):
            raise ValueError("singular values must be nonnegative")
        quadratic = p.nu * sigma - sigma * sigma / (2 * p.vartheta)
        return torch.where(sigma <= p.cap, quadratic, torch.full_like(sigma, p.g_max))
    if sigma < 0:
        raise ValueError(f"singular value must be nonnegative, got {sigma}")
    if sigma <= p.cap:
        return p.nu * sigma - sigma * sigma / (2 * p.vartheta)
    return p.g_max


def weights_from_singular_values(s: torch.Tensor, p: LCParams) -> torch.Tensor:
    """Weights ``(R, I3)`` from per-slice singular values ``(I3, R)``."""
    s = s.T
    if p.scheme == WeightScheme.NORMALIZED:
        r = s.shape[0]
        m = s.max(dim=0, keepdim=True).values
        safe_m = torch.where(m > 0, m, torch.ones_like(m))
        w = torch.where(m > 0, r * s / safe_m, torch.zeros_like(s))
    else:
        w = s
    return 1.0 / (p.c + torch.exp(-w))


def weights(wbar: torch.Tensor, p: LCParams) -> torch.Tensor:
    """Weight matrix ``omega[j, i]`` of singular value ``j`` of DFT slice ``i`` of ``wbar``."""
    return weights_from_singular_values(singular_values(wbar), p)


def lc_norm(x: torch.Tensor, p: LCParams, w: torch.Tensor) -> float:
    s = singular_values(dft_mode3(x)).T
    if w.shape != s.shape:
        raise ValueError(f"weights of shape {tuple(w.shape)} do not match (R, I3) = {tuple(s.shape)}")
    return (torch.sum(w * torch.log1p(g_cap(s, p))) / x.shape[2]).item()


def lc_objective(l: torch.Tensor, y: torch.Tensor, rho: float, p: LCParams, w: torch.Tensor) -> float:
    """``rho / 2 * ||l - y||_F**2 + ||l||_LC`` with the weights held fixed."""
    diff = l - y
    return rho / 2 * torch.sum(diff * diff).item() + lc_norm(l, p, w)


def _cbrt(x: torch.Tensor) -> torch.Tensor:
    return torch.sign(x) * torch.abs(x).pow(1.0 / 3.0)


def _cubic(l, b, c, d):
    return ((-l + b) * l + c) * l + d


def _cubic_prime(l, b, c):
    return (-3 * l + 2 * b) * l + c


def _bisect_real_roots(b: float, c: float, d: float, iters: int = 200) -> List[float]:
    """Real roots of ``-l**3 + b l**2 + c l + d`` by bisection on its monotone pieces."""

    def p(l):
        return ((-l + b) * l + c) * l + d

    bound = 1.0 + max(abs(b), abs(c), abs(d))
    knots = [-bound]
    disc = b * b + 3 * c
    if disc > 0:
        root = math.sqrt(disc)
        knots += sorted([(b - root) / 3, (b + root) / 3])
    knots.append(bound)

    roots = []
    for lo, hi in zip(knots[:-1], knots[1:]):
        p_lo, p_hi = p(lo), p(hi)
        if p_lo == 0:
            roots.append(lo)
            continue
        if p_lo * p_hi > 0:
            continue
        for _ in range(iters):
            mid = 0.5 * (lo + hi)
            p_mid = p(mid)
            if p_mid == 0:
                lo = hi = mid
                break
            if (p_mid > 0) == (p_lo > 0):
                lo, p_lo = mid, p_mid
            else:
                hi = mid
        roots.append(0.5 * (lo + hi))
    if p(knots[-1]) == 0:
        roots.append(knots[-1])
    return sorted(set(roots))


def _cubic_roots(b: torch.Tensor, c: torch.Tensor, d: torch.Tensor) -> torch.Tensor:
    """Real roots of ``-l**3 + b l**2 + c l + d`` for 1-D coefficient tensors.

    Returns an ``(n, 3)`` tensor padded with NaN. Cases follow the discriminants
    ``A = b^2 - 3ac``, ``B = bc - 9ad``, ``C = c^2 - 3bd``, ``Delta = B^2 - 4AC`` with ``a = -1``:
    a triple root when ``A = B = 0``, one real root for ``Delta > 0``, a simple and a double root for
    ``Delta = 0`` and three real roots through the trigonometric form for ``Delta < 0``.
    """
    a = -1.0
    big_a = b * b - 3 * a * c
    big_b = b * c - 9 * a * d
    big_c = c * c - 3 * b * d
    delta = big_b * big_b - 4 * big_a * big_c
    nan = torch.full_like(b, float("nan"))

    triple = (big_a.abs() <= _CASE_RTOL * (b * b + 3 * c.abs())) & (
        big_b.abs() <= _CASE_RTOL * ((b * c).abs() + 9 * d.abs())
    )
    double = ~triple & (delta.abs() <= _CASE_RTOL * (big_b * big_b + 4 * (big_a * big_c).abs()))
    single = ~triple & ~double & (delta > 0)
    three = ~triple & ~double & (delta < 0)

    safe_b = torch.where(b != 0, b, torch.ones_like(b))
    l_triple = torch.where(b != 0, -c / safe_b, b / 3)

    safe_a = torch.where(big_a != 0, big_a, torch.ones_like(big_a))
    l_double_1 = big_b / safe_a - b / a
    l_double_2 = -big_b / (2 * safe_a)

    # K1 * K2 = A^3: take the cube root of the larger radicand and divide for the other one.
    sq = torch.sqrt(torch.clamp(delta, min=0))
    base = big_a * b - 1.5 * a * big_b
    sign = torch.where(base >= 0, torch.ones_like(base), -torch.ones_like(base))
    root_big = _cbrt(base + sign * 1.5 * sq)
    safe_root = torch.where(root_big != 0, root_big, torch.ones_like(root_big))
    root_small = torch.where(root_big != 0, big_a / safe_root, torch.zeros_like(root_big))
    l_single = (-b - (root_big + root_small)) / (3 * a)

    sqrt_a = torch.sqrt(torch.clamp(big_a, min=0))
    denom = 2 * big_a * sqrt_a
    safe_denom = torch.where(denom != 0, denom, torch.ones_like(denom))
    t = torch.clamp((2 * big_a * b - 3 * a * big_b) / safe_denom, -1.0, 1.0)
    theta = torch.arccos(t) / 3
    cos_t, sin_t = torch.cos(theta), math.sqrt(3) * torch.sin(theta)
    l_three_1 = (-b - 2 * sqrt_a * cos_t) / (3 * a)
    l_three_2 = (-b + sqrt_a * (cos_t + sin_t)) / (3 * a)
    l_three_3 = (-b + sqrt_a * (cos_t - sin_t)) / (3 * a)

    first = torch.where(
        triple, l_triple, torch.where(double, l_double_1, torch.where(single, l_single, l_three_1))
    )
    second = torch.where(double, l_double_2, torch.where(three, l_three_2, nan))
    third = torch.where(three, l_three_3, nan)
    roots = torch.stack([first, second, third], dim=1)

    # one Newton step, kept only where it reduces the residual
    bb, cc, dd = b[:, None], c[:, None], d[:, None]
    slope = _cubic_prime(roots, bb, cc)
    safe_slope = torch.where(slope != 0, slope, torch.ones_like(slope))
    polished = roots - torch.where(slope != 0, _cubic(roots, bb, cc, dd) / safe_slope, torch.zeros_like(roots))
    better = _cubic(polished, bb, cc, dd).abs() < _cubic(roots, bb, cc, dd).abs()
    roots = torch.where(better, polished, roots)

    scale = torch.maximum(torch.maximum(b.abs(), c.abs()), d.abs())
    for k in torch.nonzero(scale < _DEGENERATE_SCALE).flatten().tolist():
        found = _bisect_real_roots(b[k].item(), c[k].item(), d[k].item())
        row = found + [float("nan")] * (3 - len(found))
        roots[k] = torch.tensor(row[:3], dtype=roots.dtype)
    return roots


def cubic_real_roots(b: float, c: float, d: float) -> List[float]:
    """Distinct real roots of ``-l**3 + b l**2 + c l + d = 0``, ascending."""
    coeffs = [torch.tensor([v], dtype=torch.float64) for v in (b, c, d)]
    roots = _cubic_roots(*coeffs)[0]
    return sorted({r for r in roots.tolist() if not math.isnan(r)})


def _h(l: torch.Tensor, y: torch.Tensor, rho: float, omega: torch.Tensor, p: LCParams) -> torch.Tensor:
    quadratic = p.nu * l - l * l / (2 * p.vartheta)
    g = torch.where(l <= p.cap, quadratic, torch.full_like(l, p.g_max))
    return rho / 2 * (l - y) ** 2 + omega * torch.log1p(g)


def shrink_singular_values(y: torch.Tensor, rho: float, omega: torch.Tensor, p: LCParams) -> torch.Tensor:
    """Elementwise proximal map of the singular values ``y`` with weights ``omega``."""
    if not rho > 0:
        raise ValueError(f"rho must be positive, got {rho}")
    y, omega = torch.broadcast_tensors(y.to(torch.float64), omega.to(torch.float64))
    if bool((y < 0).any()) or bool((omega < 0).any()):
        raise ValueError("singular values and weights must be nonnegative")
    shape = y.shape
    y, omega = y.reshape(-1), omega.reshape(-1)

    cap = p.cap
    b = 2 * cap + y
    c = -2 * omega / rho + 2 * p.vartheta - 2 * cap * y
    d = 2 * omega * cap / rho - 2 * p.vartheta * y
    stationary = torch.clamp(_cubic_roots(b, c, d), 0.0, cap)

    inf = torch.full_like(y, float("inf"))
    candidates = torch.cat(
        [
            torch.zeros_like(y)[:, None],
            stationary,
            torch.full_like(y, cap)[:, None],
            torch.where(y > cap, y, inf)[:, None],
        ],
        dim=1,
    )
    candidates = torch.where(torch.isnan(candidates), torch.full_like(candidates, float("inf")), candidates)
    candidates, _ = torch.sort(candidates, dim=1)
    finite = torch.isfinite(candidates)
    safe = torch.where(finite, candidates, torch.zeros_like(candidates))
    h = torch.where(finite, _h(safe, y[:, None], rho, omega[:, None], p), torch.full_like(safe, float("inf")))
    best = torch.gather(candidates, 1, torch.argmin(h, dim=1, keepdim=True)).squeeze(1)
    # the minimizer never exceeds y; this only trims rounding in the cubic roots
    best = torch.minimum(best, y)
    return best.reshape(shape)


def scalar_prox(y: float, rho: float, omega: float, p: LCParams) -> float:
    if y < 0:
        raise ValueError(f"y must be nonnegative, got {y}")
    result = shrink_singular_values(
        torch.tensor([float(y)], dtype=torch.float64), rho, torch.tensor([float(omega)], dtype=torch.float64), p
    )
    return result.item()


def tensor_prox(y: torch.Tensor, rho: float, p: LCParams) -> torch.Tensor:
    """argmin_L rho / 2 * ||L - y||_F**2 + ||L||_LC with weights taken from ``y``'s DFT slices."""
    if y.dim() != 3:
        raise ValueError(f"expected an order-3 tensor, got order {y.dim()}")
    ubar, s, vhbar = slice_svd(dft_mode3(y), full_matrices=False)
    w = weights_from_singular_values(s, p)
    shrunk = shrink_singular_values(s, rho, w.T, p)
    lbar = torch.einsum("irk,rk,rjk->ijk", ubar, shrunk.T.to(torch.complex128), vhbar)
    return idft_mode3(lbar)
