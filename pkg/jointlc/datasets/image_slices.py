"""Stacks of binary PGM (P5) / PPM (P6) images.

Grayscale slices stack along mode 3 into ``height x width x slices``. Color frames stack into
``height x width x channel x frame``. Files are taken in lexicographic name order.
"""

from pathlib import Path
from typing import List, Union

import numpy as np
import torch
from PIL import Image

from jointlc.utils.errors import ImageFormatError
from jointlc.utils.logging_utils import init_logger

logger = init_logger(__name__)

SLICE_SUFFIXES = (".pgm", ".ppm", ".pnm")


def _pnm_header(data: bytes) -> List[int]:
    """Width, height and maxval of a binary PNM header; ``#`` comments run to the end of the line."""
    fields: List[int] = []
    pos = 2
    while len(fields) < 3:
        while pos < len(data) and data[pos : pos + 1].isspace():
            pos += 1
        if data[pos : pos + 1] == b"#":
            while pos < len(data) and data[pos : pos + 1] not in (b"\n", b"\r"):
                pos += 1
            continue
        start = pos
        while pos < len(data) and data[pos : pos + 1].isdigit():
            pos += 1
        if start == pos:
            raise ImageFormatError("malformed PNM header")
        fields.append(int(data[start:pos]))
    return fields


def read_image(path: Union[str, Path]) -> np.ndarray:
    with open(path, "rb") as f:
        head = f.read(256)
    if head[:2] not in (b"P5", b"P6"):
        raise ImageFormatError(f"{path}: only binary PGM (P5) and PPM (P6) are supported, found {head[:2]!r}")
    _, _, maxval = _pnm_header(head)
    if maxval != 255:
        raise ImageFormatError(f"{path}: maxval must be 255, got {maxval}")
    with Image.open(path) as im:
        if im.mode not in ("L", "RGB"):
            raise ImageFormatError(f"{path}: unsupported image mode {im.mode}")
        return np.asarray(im, dtype=np.float64)


def import_slices(directory: Union[str, Path]) -> torch.Tensor:
    files: List[Path] = sorted(p for p in Path(directory).iterdir() if p.suffix.lower() in SLICE_SUFFIXES)
    if not files:
        raise ImageFormatError(f"no PGM/PPM files in {directory}")
    images = [read_image(p) for p in files]
    shapes = sorted({im.shape for im in images})
    if len(shapes) != 1:
        raise ImageFormatError(f"slices in {directory} have mixed shapes {shapes}")
    logger.info(f"Imported {len(images)} slices of shape {shapes[0]} from {directory}")
    return torch.from_numpy(np.stack(images, axis=-1))


def to_bytes(x: torch.Tensor) -> np.ndarray:
    """Clamp to [0, 255] and round half up."""
    return torch.floor(x.to(torch.float64).clamp(0, 255) + 0.5).to(torch.uint8).numpy()


def export_slices(x: torch.Tensor, directory: Union[str, Path]) -> None:
    directory = Path(directory)
    data = to_bytes(x)
    if x.dim() == 3:
        frames = [(f"slice_{i:04d}.pgm", data[:, :, i]) for i in range(x.shape[2])]
    elif x.dim() == 4 and x.shape[2] == 3:
        frames = [(f"frame_{i:04d}.ppm", data[:, :, :, i]) for i in range(x.shape[3])]
    else:
        raise ImageFormatError(
            f"cannot export shape {tuple(x.shape)}: expected H x W x S or H x W x 3 x F"
        )
    directory.mkdir(parents=True, exist_ok=True)
    for name, frame in frames:
        Image.fromarray(np.ascontiguousarray(frame)).save(directory / name, format="PPM")
    logger.info(f"Exported {len(frames)} images to {directory}")
