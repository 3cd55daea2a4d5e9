"""Dense N-order tensor helpers: canonical ordering, unfoldings and the observation projector.

Tensors are plain ``torch.float64`` tensors whose ``shape`` is the list of extents. Mode indices
(``n``, ``l1``, ``l2``) are 1-based to keep the index maps readable next to their formulas; the
conversion to torch's 0-based axes happens only in this module.
"""

import math
from itertools import combinations_with_replacement
from typing import List, Sequence, Tuple

import torch

Pair = Tuple[int, int]


def _check_dims(dims: Sequence[int]) -> Tuple[int, ...]:
    dims = tuple(int(d) for d in dims)
    if len(dims) == 0:
        raise ValueError("a tensor needs at least one mode")
    if any(d < 1 for d in dims):
        raise ValueError(f"every extent must be >= 1, got {dims}")
    return dims


def _check_mode(n: int, order: int) -> None:
    if not 1 <= n <= order:
        raise ValueError(f"mode {n} out of range for an order-{order} tensor")


def _inverse_permutation(perm: Sequence[int]) -> List[int]:
    inverse = [0] * len(perm)
    for position, axis in enumerate(perm):
        inverse[axis] = position
    return inverse


def mode_pairs(order: int) -> List[Pair]:
    """Lexicographic mode pairs (1,1), (1,2), ..., (1,N), (2,2), ..., (N,N)."""
    if order < 1:
        raise ValueError(f"order must be >= 1, got {order}")
    return list(combinations_with_replacement(range(1, order + 1), 2))


def to_canonical(x: torch.Tensor) -> torch.Tensor:
    """Flatten ``x`` with the first index varying fastest."""
    return x.permute(*reversed(range(x.dim()))).reshape(-1)


def from_canonical(flat: torch.Tensor, dims: Sequence[int]) -> torch.Tensor:
    dims = _check_dims(dims)
    if flat.numel() != math.prod(dims):
        raise ValueError(f"{flat.numel()} elements cannot fill dims {dims}")
    order = len(dims)
    return flat.reshape(tuple(reversed(dims))).permute(*reversed(range(order))).contiguous()


def frobenius_norm(x: torch.Tensor) -> float:
    return math.sqrt(torch.sum(x * x).item())


def unfold_index(dims: Sequence[int], index: Sequence[int], n: int) -> Tuple[int, int]:
    """1-based position ``(i_n, j)`` of element ``index`` in the mode-n unfolding."""
    dims = _check_dims(dims)
    _check_mode(n, len(dims))
    j, stride = 1, 1
    for k, (extent, i) in enumerate(zip(dims, index)):
        if k == n - 1:
            continue
        j += (i - 1) * stride
        stride *= extent
    return index[n - 1], j


def pair_unfold_index(dims: Sequence[int], index: Sequence[int], l1: int, l2: int) -> Tuple[int, ...]:
    """1-based position of element ``index`` in the mode-l1l2 unfolding."""
    if l1 == l2:
        return unfold_index(dims, index, l1)
    dims = _check_dims(dims)
    _check_pair(l1, l2, len(dims))
    j, stride = 1, 1
    for k, (extent, i) in enumerate(zip(dims, index)):
        if k in (l1 - 1, l2 - 1):
            continue
        j += (i - 1) * stride
        stride *= extent
    return index[l1 - 1], index[l2 - 1], j


def unfold_mode_n(x: torch.Tensor, n: int) -> torch.Tensor:
    """Mode-n matricization of shape ``(I_n, prod_{k != n} I_k)``."""
    _check_mode(n, x.dim())
    others = [k for k in range(x.dim()) if k != n - 1]
    return x.permute(n - 1, *reversed(others)).reshape(x.shape[n - 1], -1)


def fold_mode_n(m: torch.Tensor, dims: Sequence[int], n: int) -> torch.Tensor:
    dims = _check_dims(dims)
    _check_mode(n, len(dims))
    others = [k for k in range(len(dims)) if k != n - 1]
    expected = (dims[n - 1], math.prod(dims[k] for k in others))
    if tuple(m.shape) != expected:
        raise ValueError(f"mode-{n} unfolding of {dims} must have shape {expected}, got {tuple(m.shape)}")
    perm = [n - 1, *reversed(others)]
    return m.reshape([dims[p] for p in perm]).permute(*_inverse_permutation(perm)).contiguous()


def _check_pair(l1: int, l2: int, order: int) -> None:
    _check_mode(l1, order)
    _check_mode(l2, order)
    if l1 > l2:
        raise ValueError(f"mode pair requires l1 <= l2, got ({l1}, {l2})")


def unfold_pair(x: torch.Tensor, l1: int, l2: int) -> torch.Tensor:
    """Mode-l1l2 unfolding.

    For ``l1 == l2`` this is the mode-n matricization (an order-2 tensor). Otherwise the result is
    the order-3 tensor of shape ``(I_l1, I_l2, prod_{s != l1, l2} I_s)`` whose third index runs over
    the remaining modes, first remaining mode fastest.
    """
    _check_pair(l1, l2, x.dim())
    if l1 == l2:
        return unfold_mode_n(x, l1)
    others = [k for k in range(x.dim()) if k not in (l1 - 1, l2 - 1)]
    return x.permute(l1 - 1, l2 - 1, *reversed(others)).reshape(x.shape[l1 - 1], x.shape[l2 - 1], -1)


def fold_pair(y: torch.Tensor, dims: Sequence[int], l1: int, l2: int) -> torch.Tensor:
    dims = _check_dims(dims)
    _check_pair(l1, l2, len(dims))
    if l1 == l2:
        return fold_mode_n(y, dims, l1)
    others = [k for k in range(len(dims)) if k not in (l1 - 1, l2 - 1)]
    expected = (dims[l1 - 1], dims[l2 - 1], math.prod(dims[k] for k in others))
    if tuple(y.shape) != expected:
        raise ValueError(
            f"mode-{l1}{l2} unfolding of {dims} must have shape {expected}, got {tuple(y.shape)}"
        )
    perm = [l1 - 1, l2 - 1, *reversed(others)]
    return y.reshape([dims[p] for p in perm]).permute(*_inverse_permutation(perm)).contiguous()


def project(x: torch.Tensor, omega: torch.Tensor) -> torch.Tensor:
    """Keep the entries of ``x`` on ``omega`` and zero the rest."""
    if x.shape != omega.shape:
        raise ValueError(f"mask shape {tuple(omega.shape)} does not match tensor shape {tuple(x.shape)}")
    return torch.where(omega, x, torch.zeros_like(x))


def complement(omega: torch.Tensor) -> torch.Tensor:
    return torch.logical_not(omega)


def missing_rate(omega: torch.Tensor) -> float:
    """Percentage of unobserved entries."""
    total = omega.numel()
    observed = int(omega.sum().item())
    return 100.0 * (total - observed) / total
