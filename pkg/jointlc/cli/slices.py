import argparse

from jointlc.datasets.image_slices import export_slices, import_slices
from jointlc.datasets.tns_format import read_tns, write_tns

from .cli_utils import EXIT_OK


def add_import_arguments(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("--input-dir", type=str, required=True, help="Directory of P5/P6 images")
    parser.add_argument("--output", type=str, required=True, help="Tensor file (.tns)")


def run_import(args) -> int:
    write_tns(import_slices(args.input_dir), args.output)
    return EXIT_OK


def add_export_arguments(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("--tensor", type=str, required=True, help="H x W x S or H x W x 3 x F tensor (.tns)")
    parser.add_argument("--output", type=str, required=True, help="Output directory")


def run_export(args) -> int:
    export_slices(read_tns(args.tensor), args.output)
    return EXIT_OK
