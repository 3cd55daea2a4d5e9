from .image_slices import export_slices, import_slices
from .masks import MaskSpec, SplitMix64, generate_mask, mask_from_rate
from .synthetic import synth_low_tubal
from .tns_format import TnsHeader, read_header, read_tns, write_tns

__all__ = [
    "export_slices",
    "import_slices",
    "MaskSpec",
    "SplitMix64",
    "generate_mask",
    "mask_from_rate",
    "synth_low_tubal",
    "TnsHeader",
    "read_header",
    "read_tns",
    "write_tns",
]
