import math
from dataclasses import dataclass
from typing import Sequence, Tuple

import numpy as np
import torch

from jointlc.ops.tensor_core import from_canonical

_MASK64 = (1 << 64) - 1
_GOLDEN_GAMMA = 0x9E3779B97F4A7C15


class SplitMix64:
    """SplitMix64 generator; its constants are public so masks reproduce across languages."""

    def __init__(self, seed: int):
        self.state = seed & _MASK64

    def next(self) -> int:
        self.state = (self.state + _GOLDEN_GAMMA) & _MASK64
        z = self.state
        z = ((z ^ (z >> 30)) * 0xBF58476D1CE4E5B9) & _MASK64
        z = ((z ^ (z >> 27)) * 0x94D049BB133111EB) & _MASK64
        return z ^ (z >> 31)


@dataclass
class MaskSpec:
    """Observation pattern: ``missing_rate`` percent of the entries of ``dims`` are hidden."""

    seed: int
    missing_rate: float
    dims: Tuple[int, ...]

    def __post_init__(self):
        self.dims = tuple(int(d) for d in self.dims)
        if not self.dims or any(d < 1 for d in self.dims):
            raise ValueError(f"every extent must be >= 1, got {self.dims}")
        if not 0 <= self.missing_rate < 100:
            raise ValueError(f"missing rate must be in [0, 100), got {self.missing_rate}")
        if not 0 <= self.seed <= _MASK64:
            raise ValueError(f"seed must be an unsigned 64-bit integer, got {self.seed}")

    @property
    def total(self) -> int:
        return math.prod(self.dims)

    @property
    def observed_count(self) -> int:
        # round half up
        return int(math.floor((100 - self.missing_rate) * self.total / 100 + 0.5))


def generate_mask(spec: MaskSpec) -> torch.Tensor:
    """Choose ``spec.observed_count`` flat positions uniformly without replacement.

    Partial Fisher-Yates over canonical flat indices driven by SplitMix64(seed): step ``i`` swaps
    position ``i`` with ``i + next() % (total - i)``. The first ``observed_count`` positions are
    observed.
    """
    total, k = spec.total, spec.observed_count
    flat = np.zeros(total, dtype=bool)
    if k == total:
        flat[:] = True
    else:
        perm = np.arange(total, dtype=np.int64)
        rng = SplitMix64(spec.seed)
        for i in range(k):
            j = i + rng.next() % (total - i)
            perm[i], perm[j] = perm[j], perm[i]
        flat[perm[:k]] = True
    return from_canonical(torch.from_numpy(flat), spec.dims)


def mask_from_rate(dims: Sequence[int], missing_rate: float, seed: int) -> torch.Tensor:
    return generate_mask(MaskSpec(seed=seed, missing_rate=missing_rate, dims=tuple(dims)))
