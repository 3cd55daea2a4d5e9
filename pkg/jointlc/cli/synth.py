import argparse

from jointlc.datasets.synthetic import synth_low_tubal
from jointlc.datasets.tns_format import write_tns
from jointlc.utils.logging_utils import init_logger

from .cli_utils import EXIT_OK

logger = init_logger(__name__)


def add_arguments(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("--dims", type=int, nargs=3, required=True, metavar=("I1", "I2", "I3"))
    parser.add_argument("--rank", type=int, required=True, help="Tubal rank r <= min(I1, I2)")
    parser.add_argument("--seed", type=int, default=42)
    parser.add_argument("--output", type=str, required=True, help="Tensor file (.tns)")


def run(args) -> int:
    x = synth_low_tubal(args.dims, args.rank, args.seed)
    write_tns(x, args.output)
    logger.info(f"Wrote tubal-rank-{args.rank} tensor of shape {tuple(x.shape)} to {args.output}")
    return EXIT_OK
