import argparse
import json
from pathlib import Path

import torch

from jointlc.metrics.pqi import ERGAS_DENOMINATORS
from jointlc.solver.presets import PRESETS
from jointlc.utils.errors import UsageError
from jointlc.utils.utils import json_safe

EXIT_OK = 0
EXIT_USAGE = 1
EXIT_DATA = 2
EXIT_NOT_CONVERGED = 3

REPORT_SCHEMA = 1


class JointLCArgumentParser(argparse.ArgumentParser):
    """Raises ``UsageError`` instead of exiting, so the caller owns the exit code."""

    def error(self, message):
        raise UsageError(f"{self.prog}: {message}")


def add_solver_arguments(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("--preset", type=str, default=None, choices=sorted(PRESETS), help="Named parameter row")
    parser.add_argument("--config", type=str, default=None, help="JSON config file (schema 1)")
    parser.add_argument("--max-iters", type=int, default=None, help="Iteration cap K")
    parser.add_argument("--epsilon", type=float, default=None, help="Stop once RE <= epsilon")
    parser.add_argument("--threads", type=int, default=1, help="torch intra-op threads")
    parser.add_argument("--no-progress", action="store_true", default=False, help="Hide the progress bar")


def add_metric_arguments(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("--peak", type=float, default=None, help="Peak signal value, 255 unless configured")
    parser.add_argument("--ergas-denominator", type=str, default=None, choices=ERGAS_DENOMINATORS)


def parse_missing_rate(value: str) -> float:
    rate = float(value)
    if not 0 <= rate < 100:
        raise argparse.ArgumentTypeError(f"missing rate must be in [0, 100), got {value}")
    return rate


def set_threads(threads: int) -> None:
    if threads < 1:
        raise UsageError(f"--threads must be >= 1, got {threads}")
    torch.set_num_threads(threads)


def sibling_path(output, suffix: str) -> Path:
    """``out.tns`` -> ``out<suffix>``."""
    output = Path(output)
    return output.with_name(output.stem + suffix)


def write_json(payload: dict, path) -> None:
    with open(path, "w") as f:
        json.dump(json_safe(payload), f, indent=2, allow_nan=False)
        f.write("\n")
