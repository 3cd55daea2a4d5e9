"""Third-order tensor algebra under the t-product.

Every product and factorization is carried out in the Fourier domain along mode 3, where the
t-product becomes a stack of independent matrix products. Real inputs give conjugate-symmetric
slice stacks, so only slices ``0 .. I3 // 2`` are factorized and the rest are mirrored.
``bcirc``/``bvec``/``bvfold``/``bdiag`` are the block-matrix views used as test oracles.
"""

from dataclasses import dataclass
from typing import List, Optional, Tuple

import torch

from jointlc.utils.errors import ConjugateSymmetryError

from .tensor_core import mode_pairs, unfold_pair

EPS = torch.finfo(torch.float64).eps


@dataclass
class TSVDFactors:
    """``x = U * S * V^H`` with orthogonal ``U``, ``V`` and f-diagonal ``S``.

    Shapes: U (I1, I1, I3), S (I1, I2, I3), V (I2, I2, I3).
    """

    U: torch.Tensor
    S: torch.Tensor
    V: torch.Tensor

    def reconstruct(self) -> torch.Tensor:
        return t_product(t_product(self.U, self.S), conj_transpose(self.V))


def _check_order3(x: torch.Tensor) -> None:
    if x.dim() != 3:
        raise ValueError(f"expected an order-3 tensor, got order {x.dim()}")


def _self_conjugate(i: int, i3: int) -> bool:
    return i == 0 or 2 * i == i3


def dft_mode3(x: torch.Tensor) -> torch.Tensor:
    """Unnormalized DFT of every tube ``x[i1, i2, :]``."""
    _check_order3(x)
    return torch.fft.fft(x.to(torch.float64), dim=2)


def idft_mode3(xbar: torch.Tensor, tol: float = 1e-8) -> torch.Tensor:
    """Inverse of :func:`dft_mode3` (carries the 1/I3 factor).

    Raises:
        ConjugateSymmetryError: the imaginary residual exceeds ``tol * ||xbar||_F``.
    """
    _check_order3(xbar)
    x = torch.fft.ifft(xbar, dim=2)
    residual = torch.linalg.vector_norm(x.imag).item()
    scale = torch.linalg.vector_norm(xbar).item()
    if residual > tol * scale:
        raise ConjugateSymmetryError(
            f"slice stack is not conjugate symmetric (imaginary residual {residual:.3e}, norm {scale:.3e})"
        )
    return x.real.contiguous()


def bcirc(x: torch.Tensor) -> torch.Tensor:
    """Block-circulant matrix of shape ``(I1 * I3, I2 * I3)``; first block column is the frontal slices."""
    _check_order3(x)
    i3 = x.shape[2]
    rows = [torch.cat([x[:, :, (r - c) % i3] for c in range(i3)], dim=1) for r in range(i3)]
    return torch.cat(rows, dim=0)


def bvec(b: torch.Tensor) -> torch.Tensor:
    _check_order3(b)
    return torch.cat([b[:, :, k] for k in range(b.shape[2])], dim=0)


def bvfold(m: torch.Tensor, i3: int) -> torch.Tensor:
    if m.dim() != 2 or m.shape[0] % i3 != 0:
        raise ValueError(f"cannot fold a {tuple(m.shape)} block vector into {i3} slices")
    return m.reshape(i3, m.shape[0] // i3, m.shape[1]).permute(1, 2, 0).contiguous()


def bdiag(xbar: torch.Tensor) -> torch.Tensor:
    _check_order3(xbar)
    return torch.block_diag(*[xbar[:, :, i] for i in range(xbar.shape[2])])


def t_product(a: torch.Tensor, b: torch.Tensor) -> torch.Tensor:
    _check_order3(a)
    _check_order3(b)
    if a.shape[1] != b.shape[0] or a.shape[2] != b.shape[2]:
        raise ValueError(f"t-product shape mismatch: {tuple(a.shape)} * {tuple(b.shape)}")
    cbar = torch.einsum("ijk,jlk->ilk", dft_mode3(a), dft_mode3(b))
    return idft_mode3(cbar)


def conj_transpose(a: torch.Tensor) -> torch.Tensor:
    """Transpose every frontal slice and reverse the order of slices 2..I3."""
    _check_order3(a)
    at = a.transpose(0, 1)
    if a.shape[2] > 1:
        at = torch.cat([at[:, :, :1], at[:, :, 1:].flip(2)], dim=2)
    return at.contiguous()


def identity_tensor(n: int, i3: int) -> torch.Tensor:
    if n < 1 or i3 < 1:
        raise ValueError(f"identity tensor needs positive extents, got n={n}, i3={i3}")
    eye = torch.zeros(n, n, i3, dtype=torch.float64)
    eye[:, :, 0] = torch.eye(n, dtype=torch.float64)
    return eye


def slice_svd(
    xbar: torch.Tensor, full_matrices: bool = False
) -> Tuple[torch.Tensor, torch.Tensor, torch.Tensor]:
    """SVD of every slice of a conjugate-symmetric stack.

    Returns ``(ubar, s, vhbar)`` with ``ubar[:, :, i] @ diag(s[i]) @ vhbar[:, :, i]`` equal to
    slice ``i``. Self-conjugate slices are factorized as real matrices so their factors stay real,
    and slices past ``I3 // 2`` are conjugate mirrors of their partners.
    """
    _check_order3(xbar)
    i3 = xbar.shape[2]
    us: List[torch.Tensor] = []
    ss: List[torch.Tensor] = []
    vhs: List[torch.Tensor] = []
    for i in range(i3 // 2 + 1):
        if _self_conjugate(i, i3):
            u, s, vh = torch.linalg.svd(xbar[:, :, i].real, full_matrices=full_matrices)
            u, vh = u.to(torch.complex128), vh.to(torch.complex128)
        else:
            u, s, vh = torch.linalg.svd(xbar[:, :, i], full_matrices=full_matrices)
        us.append(u)
        ss.append(s)
        vhs.append(vh)
    for i in range(i3 // 2 + 1, i3):
        us.append(us[i3 - i].conj())
        ss.append(ss[i3 - i])
        vhs.append(vhs[i3 - i].conj())
    return torch.stack(us, dim=2), torch.stack(ss, dim=0), torch.stack(vhs, dim=2)


def singular_values(xbar: torch.Tensor) -> torch.Tensor:
    """Singular values of every DFT slice as an ``(I3, R)`` tensor, each row nonincreasing."""
    _check_order3(xbar)
    i3 = xbar.shape[2]
    rows: List[torch.Tensor] = []
    for i in range(i3 // 2 + 1):
        slice_ = xbar[:, :, i].real if _self_conjugate(i, i3) else xbar[:, :, i]
        rows.append(torch.linalg.svdvals(slice_))
    for i in range(i3 // 2 + 1, i3):
        rows.append(rows[i3 - i])
    return torch.stack(rows, dim=0)


def t_svd(x: torch.Tensor) -> TSVDFactors:
    _check_order3(x)
    i1, i2, i3 = x.shape
    ubar, s, vhbar = slice_svd(dft_mode3(x), full_matrices=True)
    r = min(i1, i2)
    sbar = torch.zeros(i1, i2, i3, dtype=torch.complex128)
    diag = torch.arange(r)
    sbar[diag, diag, :] = s.T.to(torch.complex128)
    vbar = vhbar.transpose(0, 1).conj()
    return TSVDFactors(U=idft_mode3(ubar), S=idft_mode3(sbar), V=idft_mode3(vbar))


def default_rank_tol(shape, sigma_max: float) -> float:
    return max(shape[0], shape[1]) * EPS * sigma_max


def tubal_rank(x: torch.Tensor, tol: Optional[float] = None) -> int:
    """Number of singular tubes with some DFT-slice singular value above ``tol``."""
    _check_order3(x)
    s = singular_values(dft_mode3(x))
    if s.numel() == 0:
        return 0
    if tol is None:
        tol = default_rank_tol(x.shape, s.max().item())
    return int((s.max(dim=0).values > tol).sum().item())


def joint_rank(x: torch.Tensor, tol: Optional[float] = None) -> List[int]:
    """Tubal ranks of every mode-l1l2 unfolding, in lexicographic pair order."""
    if x.dim() < 2:
        raise ValueError(f"joint rank needs an order >= 2 tensor, got order {x.dim()}")
    ranks = []
    for l1, l2 in mode_pairs(x.dim()):
        y = unfold_pair(x, l1, l2)
        if y.dim() == 2:
            y = y.unsqueeze(-1)
        ranks.append(tubal_rank(y, tol))
    return ranks
