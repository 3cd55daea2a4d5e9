from .pqi import MetricReport, ergas, psnr, ssim, tensor_pqi

__all__ = ["MetricReport", "ergas", "psnr", "ssim", "tensor_pqi"]
