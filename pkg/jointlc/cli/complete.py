import argparse

import jsonlines
import torch

from jointlc.datasets.tns_format import read_tns, write_tns
from jointlc.metrics.pqi import tensor_pqi
from jointlc.ops.tensor_core import missing_rate, mode_pairs
from jointlc.solver.admm_solver import JointLCSolver
from jointlc.utils.logging_utils import init_logger
from jointlc.utils.utils import get_solver_config, json_safe

from .cli_utils import (
    EXIT_NOT_CONVERGED,
    EXIT_OK,
    REPORT_SCHEMA,
    add_metric_arguments,
    add_solver_arguments,
    set_threads,
    sibling_path,
    write_json,
)

logger = init_logger(__name__)


def load_problem(tensor_path, mask_path):
    t = read_tns(tensor_path)
    omega = read_tns(mask_path)
    if t.dtype == torch.bool:
        raise ValueError(f"{tensor_path} holds a boolean tensor, expected float64 data")
    if omega.dtype != torch.bool:
        raise ValueError(f"{mask_path} holds float64 data, expected a boolean mask")
    if t.shape != omega.shape:
        raise ValueError(f"mask shape {tuple(omega.shape)} does not match tensor shape {tuple(t.shape)}")
    return t, omega


def add_arguments(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("--tensor", type=str, required=True, help="Incomplete tensor (.tns, float64)")
    parser.add_argument("--mask", type=str, required=True, help="Observed entries (.tns, bool)")
    parser.add_argument("--output", type=str, required=True, help="Recovered tensor (.tns)")
    parser.add_argument("--report", type=str, default=None, help="JSON report, defaults to <output>.report.json")
    parser.add_argument("--re-log", type=str, default=None, help="RE per iteration, defaults to <output>.re.jsonl")
    parser.add_argument("--reference", type=str, default=None, help="Ground truth to score the result against")
    add_solver_arguments(parser)
    add_metric_arguments(parser)


def run(args) -> int:
    set_threads(args.threads)
    config, options = get_solver_config(args)
    t, omega = load_problem(args.tensor, args.mask)
    reference = read_tns(args.reference) if args.reference else None

    result = JointLCSolver(config, disable_progress=args.no_progress).run(t, omega)

    write_tns(result.x, args.output)
    re_log = args.re_log or sibling_path(args.output, ".re.jsonl")
    with jsonlines.open(re_log, mode="w") as writer:
        for k, re in enumerate(result.re_history, start=1):
            writer.write(json_safe({"iter": k, "re": re}))

    report = {
        "schema": REPORT_SCHEMA,
        "shape": list(t.shape),
        "missing_rate": missing_rate(omega),
        "iterations": result.iterations,
        "converged": result.converged,
        "final_re": result.final_re,
        "pairs": [list(pair) for pair in mode_pairs(t.dim())],
        "joint_rank": result.joint_rank_final,
        "options": options,
    }
    if reference is not None:
        report["metrics"] = tensor_pqi(reference, result.x, options["peak"], options["ergas_denominator"]).to_dict()
    report_path = args.report or sibling_path(args.output, ".report.json")
    write_json(report, report_path)
    logger.info(f"Wrote {args.output}, {re_log} and {report_path}")

    if not result.converged:
        logger.warning(f"No convergence within {config.max_iters} iterations (final RE {result.final_re:.3e})")
        return EXIT_NOT_CONVERGED
    return EXIT_OK
