from .t_algebra import TSVDFactors, dft_mode3, idft_mode3, joint_rank, slice_svd, t_product, t_svd, tubal_rank
from .tensor_core import (
    complement,
    fold_mode_n,
    fold_pair,
    from_canonical,
    frobenius_norm,
    missing_rate,
    mode_pairs,
    project,
    to_canonical,
    unfold_mode_n,
    unfold_pair,
)

__all__ = [
    "TSVDFactors",
    "dft_mode3",
    "idft_mode3",
    "joint_rank",
    "slice_svd",
    "t_product",
    "t_svd",
    "tubal_rank",
    "complement",
    "fold_mode_n",
    "fold_pair",
    "from_canonical",
    "frobenius_norm",
    "missing_rate",
    "mode_pairs",
    "project",
    "to_canonical",
    "unfold_mode_n",
    "unfold_pair",
]
