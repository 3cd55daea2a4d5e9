import argparse

import torch

from jointlc.datasets.tns_format import read_header, read_tns
from jointlc.ops.tensor_core import frobenius_norm, missing_rate

from .cli_utils import EXIT_OK


def add_arguments(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("path", type=str, help=".tns file")


def describe(path) -> str:
    header = read_header(path)
    lines = [
        f"magic    {header.magic.decode('ascii')}",
        f"version  {header.version}",
        f"dtype    {header.dtype} ({header.dtype_name})",
        f"ndim     {header.ndim}",
        f"dims     {' x '.join(str(d) for d in header.dims)}",
        f"payload  {header.payload_size} bytes",
    ]
    value = read_tns(path)
    if value.dtype == torch.bool:
        lines.append(f"observed {int(value.sum().item())} of {value.numel()} (MR {missing_rate(value):.4f}%)")
    else:
        lines.append(f"range    [{value.min().item():.6g}, {value.max().item():.6g}]")
        lines.append(f"norm     {frobenius_norm(value):.6g}")
    return "\n".join(lines)


def run(args) -> int:
    print(describe(args.path))
    return EXIT_OK
