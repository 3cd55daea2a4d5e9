from typing import Sequence

import torch

from jointlc.ops.t_algebra import t_product


def synth_low_tubal(dims: Sequence[int], rank: int, seed: int) -> torch.Tensor:
    """t-product of seeded Gaussian ``I1 x r x I3`` and ``r x I2 x I3`` factors (tubal rank ``r``)."""
    if len(dims) != 3:
        raise ValueError(f"expected three extents, got {tuple(dims)}")
    i1, i2, i3 = (int(d) for d in dims)
    if min(i1, i2, i3) < 1:
        raise ValueError(f"every extent must be >= 1, got {tuple(dims)}")
    if not 0 <= rank <= min(i1, i2):
        raise ValueError(f"rank must be in [0, {min(i1, i2)}], got {rank}")
    if rank == 0:
        return torch.zeros(i1, i2, i3, dtype=torch.float64)
    generator = torch.Generator().manual_seed(seed)
    left = torch.randn(i1, rank, i3, generator=generator, dtype=torch.float64)
    right = torch.randn(rank, i2, i3, generator=generator, dtype=torch.float64)
    return t_product(left, right)
