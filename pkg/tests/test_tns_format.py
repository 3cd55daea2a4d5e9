import struct

import pytest
import torch

from jointlc.datasets.tns_format import decode_tns, encode_tns, read_header, read_tns, write_tns
from jointlc.utils.errors import (
    BadMagicError,
    TnsFormatError,
    TrailingDataError,
    TruncatedPayloadError,
    UnsupportedDtypeError,
    UnsupportedVersionError,
)

from .helpers import randn

pytestmark = pytest.mark.unit


def test_golden_float_tensor(fixtures_dir, tmp_path):
    path = fixtures_dir / "tensor_2x2x2.tns"
    x = read_tns(path)
    assert x.dtype == torch.float64
    assert x.shape == (2, 2, 2)
    for i in range(2):
        for j in range(2):
            for k in range(2):
                assert x[i, j, k].item() == 1 + i + 2 * j + 4 * k
    write_tns(x, tmp_path / "copy.tns")
    assert (tmp_path / "copy.tns").read_bytes() == path.read_bytes()


def test_golden_mask(fixtures_dir):
    path = fixtures_dir / "mask_2x3.tns"
    omega = read_tns(path)
    assert omega.dtype == torch.bool
    expected = torch.tensor([[True, True, False], [False, True, False]])
    assert torch.equal(omega, expected)
    assert encode_tns(omega) == path.read_bytes()


def test_header(fixtures_dir):
    header = read_header(fixtures_dir / "tensor_2x2x2.tns")
    assert header.magic == b"TNSR"
    assert (header.version, header.dtype, header.ndim) == (1, 1, 3)
    assert header.dims == (2, 2, 2)
    assert header.header_size == 40
    assert header.payload_size == 64
    assert header.dtype_name == "float64"


def test_roundtrip_is_bit_exact(tmp_path, generator):
    x = randn(3, 4, 5, generator=generator)
    write_tns(x, tmp_path / "x.tns")
    y = read_tns(tmp_path / "x.tns")
    assert torch.equal(x, y)
    assert encode_tns(y) == (tmp_path / "x.tns").read_bytes()
    omega = torch.rand(3, 1, 2, generator=generator) < 0.5
    assert torch.equal(decode_tns(encode_tns(omega)), omega)


def test_identical_values_give_identical_bytes(generator):
    x = randn(2, 3, generator=generator)
    assert encode_tns(x) == encode_tns(x.clone())
    assert encode_tns(x.T.contiguous().T) == encode_tns(x)
    assert encode_tns(x.to(torch.float32).to(torch.float64)) == encode_tns(x.to(torch.float32))


def test_truncated_payload(fixtures_dir):
    data = (fixtures_dir / "tensor_2x2x2.tns").read_bytes()
    with pytest.raises(TruncatedPayloadError):
        decode_tns(data[:-1])
    with pytest.raises(TruncatedPayloadError):
        decode_tns(data[:20])
    with pytest.raises(TruncatedPayloadError):
        decode_tns(data[:10])


def test_header_errors(fixtures_dir):
    data = (fixtures_dir / "tensor_2x2x2.tns").read_bytes()
    with pytest.raises(BadMagicError):
        decode_tns(b"TNSX" + data[4:])
    with pytest.raises(UnsupportedVersionError):
        decode_tns(data[:4] + struct.pack("<I", 2) + data[8:])
    with pytest.raises(UnsupportedDtypeError):
        decode_tns(data[:8] + struct.pack("<I", 3) + data[12:])
    with pytest.raises(TrailingDataError):
        decode_tns(data + b"\x00")
    with pytest.raises(TnsFormatError):
        decode_tns(data[:12] + struct.pack("<I", 0))


def test_bool_payload_must_be_binary(fixtures_dir):
    data = bytearray((fixtures_dir / "mask_2x3.tns").read_bytes())
    data[-1] = 2
    with pytest.raises(TnsFormatError):
        decode_tns(bytes(data))


def test_errors_are_value_errors():
    assert issubclass(TruncatedPayloadError, ValueError)
    with pytest.raises(ValueError):
        encode_tns(torch.tensor(1.0, dtype=torch.float64))
    with pytest.raises(ValueError):
        encode_tns(torch.zeros(2, dtype=torch.int64))
