"""Picture quality indices of recovered images and tensors.

PSNR and SSIM are computed per frontal slice and averaged; ERGAS is computed once over all slices.
SSIM here is the global single-window formula, not the Gaussian-windowed variant.
"""

import math
from dataclasses import asdict, dataclass, field
from typing import Dict, List, Optional

import torch

from jointlc.ops.tensor_core import unfold_pair

PSNR_CAP = 100.0
ERGAS_DENOMINATORS = ("mean", "mean2")


def _check_same_shape(reference: torch.Tensor, candidate: torch.Tensor) -> None:
    if reference.shape != candidate.shape:
        raise ValueError(f"shape mismatch: {tuple(reference.shape)} vs {tuple(candidate.shape)}")


def _check_order2(x: torch.Tensor) -> None:
    if x.dim() != 2:
        raise ValueError(f"expected an image (order-2 tensor), got order {x.dim()}")


def psnr(
    reference: torch.Tensor, candidate: torch.Tensor, peak: float = 255.0, cap: Optional[float] = PSNR_CAP
) -> float:
    """``10 log10(peak**2 * I1 * I2 / ||reference - candidate||_F**2)``.

    Identical images have infinite PSNR, reported as ``cap`` unless ``cap`` is ``None``.
    """
    _check_same_shape(reference, candidate)
    _check_order2(reference)
    diff = reference.to(torch.float64) - candidate.to(torch.float64)
    sq_err = torch.sum(diff * diff).item()
    if sq_err == 0:
        return float("inf") if cap is None else cap
    value = 10 * math.log10(peak * peak * reference.numel() / sq_err)
    return value if cap is None else min(value, cap)


def ssim(reference: torch.Tensor, candidate: torch.Tensor, peak: float = 255.0) -> float:
    _check_same_shape(reference, candidate)
    _check_order2(reference)
    r = reference.to(torch.float64)
    c = candidate.to(torch.float64)
    c1 = (0.01 * peak) ** 2
    c2 = (0.03 * peak) ** 2
    mu_r, mu_c = r.mean(), c.mean()
    dr, dc = r - mu_r, c - mu_c
    var_r = torch.mean(dr * dr)
    var_c = torch.mean(dc * dc)
    cov = torch.mean(dr * dc)
    numerator = (2 * mu_c * mu_r + c1) * (2 * cov + c2)
    denominator = (mu_c * mu_c + mu_r * mu_r + c1) * (var_c + var_r + c2)
    return (numerator / denominator).item()


def _as_slices(x: torch.Tensor) -> torch.Tensor:
    """View any tensor of order >= 2 as ``(I1, I2, slices)``; trailing modes flatten first-index-fastest."""
    if x.dim() < 2:
        raise ValueError(f"expected a tensor of order >= 2, got order {x.dim()}")
    if x.dim() == 2:
        return x.unsqueeze(-1)
    return unfold_pair(x, 1, 2)


def ergas(reference: torch.Tensor, candidate: torch.Tensor, denominator: str = "mean2") -> float:
    """``100 sqrt(mean_i mse_i / mean(Y_i)**2)`` over frontal slices ``i`` of the reference ``Y``.

    ``denominator="mean"`` divides by the slice mean instead of its square and needs every slice mean
    to be positive.
    """
    _check_same_shape(reference, candidate)
    if denominator not in ERGAS_DENOMINATORS:
        raise ValueError(f"ergas denominator must be one of {ERGAS_DENOMINATORS}, got {denominator}")
    y = _as_slices(reference.to(torch.float64))
    x = _as_slices(candidate.to(torch.float64))
    means = y.mean(dim=(0, 1))
    if bool((means == 0).any()):
        raise ValueError("ERGAS is undefined for a reference slice with zero mean")
    if denominator == "mean" and bool((means < 0).any()):
        raise ValueError("ERGAS with the mean denominator needs positive reference slice means")
    diff = y - x
    mse = torch.mean(diff * diff, dim=(0, 1))
    scale = means * means if denominator == "mean2" else means
    return 100 * math.sqrt(torch.mean(mse / scale).item())


@dataclass
class MetricReport:
    psnr: float
    ssim: float
    ergas: float
    per_slice: Dict[str, List[float]] = field(default_factory=dict)

    def to_dict(self) -> dict:
        return {"schema": 1, **asdict(self)}

    def to_table(self) -> str:
        rows = [("index", "value", "better"), ("PSNR", f"{self.psnr:.4f}", "higher")]
        rows.append(("SSIM", f"{self.ssim:.4f}", "higher"))
        rows.append(("ERGAS", f"{self.ergas:.4f}", "lower"))
        widths = [max(len(row[k]) for row in rows) for k in range(3)]
        return "\n".join("  ".join(cell.ljust(w) for cell, w in zip(row, widths)).rstrip() for row in rows)


def tensor_pqi(
    reference: torch.Tensor,
    candidate: torch.Tensor,
    peak: float = 255.0,
    ergas_denominator: str = "mean2",
) -> MetricReport:
    _check_same_shape(reference, candidate)
    y = _as_slices(reference)
    x = _as_slices(candidate)
    slice_psnr = [psnr(y[:, :, i], x[:, :, i], peak) for i in range(y.shape[2])]
    slice_ssim = [ssim(y[:, :, i], x[:, :, i], peak) for i in range(y.shape[2])]
    return MetricReport(
        psnr=math.fsum(slice_psnr) / len(slice_psnr),
        ssim=math.fsum(slice_ssim) / len(slice_ssim),
        ergas=ergas(reference, candidate, ergas_denominator),
        per_slice={"psnr": slice_psnr, "ssim": slice_ssim},
    )
