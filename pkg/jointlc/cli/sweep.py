"""Completion of one ground-truth tensor at a series of missing rates, one JSON line per rate."""

import argparse

import jsonlines

from jointlc.datasets.masks import MaskSpec, generate_mask
from jointlc.datasets.tns_format import read_tns
from jointlc.metrics.pqi import tensor_pqi
from jointlc.ops.tensor_core import project
from jointlc.solver.admm_solver import JointLCSolver
from jointlc.utils.logging_utils import init_logger
from jointlc.utils.utils import get_solver_config, json_safe

from .cli_utils import (
    EXIT_OK,
    REPORT_SCHEMA,
    add_metric_arguments,
    add_solver_arguments,
    parse_missing_rate,
    set_threads,
)

logger = init_logger(__name__)

DEFAULT_RATES = [90.0, 95.0, 96.0, 98.0, 99.0]


def add_arguments(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("--tensor", type=str, required=True, help="Ground-truth tensor (.tns)")
    parser.add_argument("--mr", type=parse_missing_rate, nargs="+", default=DEFAULT_RATES, help="Missing rates")
    parser.add_argument("--seed", type=int, default=0, help="Mask seed shared by every rate")
    parser.add_argument("--output", type=str, required=True, help="Result rows (.jsonl)")
    add_solver_arguments(parser)
    add_metric_arguments(parser)


def run(args) -> int:
    set_threads(args.threads)
    config, options = get_solver_config(args)
    truth = read_tns(args.tensor)
    solver = JointLCSolver(config, disable_progress=args.no_progress)

    with jsonlines.open(args.output, mode="w") as writer:
        for rate in args.mr:
            omega = generate_mask(MaskSpec(seed=args.seed, missing_rate=rate, dims=tuple(truth.shape)))
            result = solver.run(project(truth, omega), omega)
            report = tensor_pqi(truth, result.x, options["peak"], options["ergas_denominator"])
            row = {
                "schema": REPORT_SCHEMA,
                "mr": rate,
                "seed": args.seed,
                "iterations": result.iterations,
                "converged": result.converged,
                "final_re": result.final_re,
                "psnr": report.psnr,
                "ssim": report.ssim,
                "ergas": report.ergas,
            }
            writer.write(json_safe(row))
            logger.info(f"MR {rate:g}%: PSNR {report.psnr:.3f}, SSIM {report.ssim:.4f}, ERGAS {report.ergas:.3f}")
    return EXIT_OK
