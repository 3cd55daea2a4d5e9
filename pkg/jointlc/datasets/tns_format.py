"""Binary ``.tns`` tensor files.

Layout, all little-endian::

    magic   4 bytes   b"TNSR"
    version u32       1
    dtype   u32       1 = float64, 2 = boolean byte
    ndim    u32
    dims    ndim x u64
    payload prod(dims) elements, first index fastest

Serialization is canonical: equal values give equal bytes.
"""

import math
import struct
from dataclasses import dataclass
from pathlib import Path
from typing import Tuple, Union

import numpy as np
import torch

from jointlc.ops.tensor_core import from_canonical, to_canonical
from jointlc.utils.errors import (
    BadMagicError,
    TnsFormatError,
    TrailingDataError,
    TruncatedPayloadError,
    UnsupportedDtypeError,
    UnsupportedVersionError,
)

MAGIC = b"TNSR"
VERSION = 1
DTYPE_FLOAT64 = 1
DTYPE_BOOL = 2

_PREAMBLE = struct.Struct("<4sIII")
_ELEMENT = {DTYPE_FLOAT64: np.dtype("<f8"), DTYPE_BOOL: np.dtype("u1")}


@dataclass
class TnsHeader:
    magic: bytes
    version: int
    dtype: int
    ndim: int
    dims: Tuple[int, ...]

    @property
    def element_size(self) -> int:
        return _ELEMENT[self.dtype].itemsize

    @property
    def header_size(self) -> int:
        return _PREAMBLE.size + 8 * self.ndim

    @property
    def payload_size(self) -> int:
        return math.prod(self.dims) * self.element_size

    @property
    def dtype_name(self) -> str:
        return "float64" if self.dtype == DTYPE_FLOAT64 else "bool"


def parse_header(data: bytes) -> TnsHeader:
    if len(data) < _PREAMBLE.size:
        raise TruncatedPayloadError(f"file of {len(data)} bytes is shorter than the fixed header")
    magic, version, dtype, ndim = _PREAMBLE.unpack_from(data, 0)
    if magic != MAGIC:
        raise BadMagicError(f"bad magic {magic!r}, expected {MAGIC!r}")
    if version != VERSION:
        raise UnsupportedVersionError(f"unsupported version {version}")
    if dtype not in _ELEMENT:
        raise UnsupportedDtypeError(f"unsupported dtype code {dtype}")
    if ndim < 1:
        raise TnsFormatError("a tensor file needs at least one dimension")
    if len(data) < _PREAMBLE.size + 8 * ndim:
        raise TruncatedPayloadError("file ends inside the dims table")
    dims = struct.unpack_from(f"<{ndim}Q", data, _PREAMBLE.size)
    if any(d < 1 for d in dims):
        raise TnsFormatError(f"every extent must be >= 1, got {dims}")
    return TnsHeader(magic=magic, version=version, dtype=dtype, ndim=ndim, dims=tuple(dims))


def decode_tns(data: bytes) -> torch.Tensor:
    header = parse_header(data)
    payload = data[header.header_size :]
    if len(payload) < header.payload_size:
        raise TruncatedPayloadError(f"payload has {len(payload)} bytes, header announces {header.payload_size}")
    if len(payload) > header.payload_size:
        raise TrailingDataError(f"{len(payload) - header.payload_size} bytes after the payload")
    flat = np.frombuffer(payload, dtype=_ELEMENT[header.dtype])
    if header.dtype == DTYPE_BOOL:
        if bool((flat > 1).any()):
            raise TnsFormatError("boolean payload holds bytes other than 0 and 1")
        values = torch.from_numpy(flat.astype(bool))
    else:
        values = torch.from_numpy(flat.astype(np.float64))
    return from_canonical(values, header.dims)


def encode_tns(value: torch.Tensor) -> bytes:
    if value.dim() < 1:
        raise ValueError("cannot serialize a 0-d tensor")
    if value.dtype == torch.bool:
        dtype = DTYPE_BOOL
        flat = to_canonical(value).numpy().astype(np.uint8)
    elif value.is_floating_point():
        dtype = DTYPE_FLOAT64
        flat = to_canonical(value.to(torch.float64)).numpy().astype("<f8")
    else:
        raise ValueError(f"unsupported tensor dtype {value.dtype}")
    dims = tuple(value.shape)
    header = _PREAMBLE.pack(MAGIC, VERSION, dtype, len(dims)) + struct.pack(f"<{len(dims)}Q", *dims)
    return header + flat.tobytes()


def read_header(path: Union[str, Path]) -> TnsHeader:
    with open(path, "rb") as f:
        return parse_header(f.read())


def read_tns(path: Union[str, Path]) -> torch.Tensor:
    with open(path, "rb") as f:
        return decode_tns(f.read())


def write_tns(value: torch.Tensor, path: Union[str, Path]) -> None:
    data = encode_tns(value)
    with open(path, "wb") as f:
        f.write(data)
