from .lc_norm import LCParams, WeightScheme, g_cap, lc_norm, scalar_prox, tensor_prox, weights

__all__ = ["LCParams", "WeightScheme", "g_cap", "lc_norm", "scalar_prox", "tensor_prox", "weights"]
