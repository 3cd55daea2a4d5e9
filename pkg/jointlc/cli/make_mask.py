import argparse

from jointlc.datasets.masks import MaskSpec, generate_mask
from jointlc.datasets.tns_format import write_tns
from jointlc.utils.logging_utils import init_logger

from .cli_utils import EXIT_OK, parse_missing_rate

logger = init_logger(__name__)


def add_arguments(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("--dims", type=int, nargs="+", required=True, help="Extents I1 I2 ... IN")
    parser.add_argument("--mr", type=parse_missing_rate, required=True, help="Missing rate in percent, [0, 100)")
    parser.add_argument("--seed", type=int, default=0, help="SplitMix64 seed")
    parser.add_argument("--output", type=str, required=True, help="Mask file (.tns, bool)")


def run(args) -> int:
    spec = MaskSpec(seed=args.seed, missing_rate=args.mr, dims=tuple(args.dims))
    write_tns(generate_mask(spec), args.output)
    logger.info(f"Wrote mask {args.output}: {spec.observed_count} of {spec.total} entries observed")
    return EXIT_OK
