import sys
from typing import List, Optional

from jointlc.utils.errors import JointLCError, UsageError
from jointlc.utils.logging_utils import init_logger, set_verbosity

from . import complete, evaluate, info, make_mask, slices, sweep, synth
from .cli_utils import EXIT_DATA, EXIT_USAGE, JointLCArgumentParser

logger = init_logger(__name__)

LOG_LEVELS = ("DEBUG", "INFO", "WARNING", "ERROR")

# name -> (help, add_arguments, run)
COMMANDS = {
    "mask": ("Generate a deterministic observation mask", make_mask.add_arguments, make_mask.run),
    "synth": ("Generate a synthetic low-tubal-rank tensor", synth.add_arguments, synth.run),
    "complete": ("Recover the unobserved entries of a tensor", complete.add_arguments, complete.run),
    "evaluate": ("Score a candidate against a reference (PSNR, SSIM, ERGAS)", evaluate.add_arguments, evaluate.run),
    "info": ("Print the header of a .tns file", info.add_arguments, info.run),
    "sweep": ("Complete one tensor at several missing rates", sweep.add_arguments, sweep.run),
    "import-slices": ("Stack PGM/PPM images into a tensor", slices.add_import_arguments, slices.run_import),
    "export-slices": ("Write a tensor as PGM/PPM images", slices.add_export_arguments, slices.run_export),
}


def build_parser() -> JointLCArgumentParser:
    parser = JointLCArgumentParser(prog="jointlc", description="Tensor completion under the joint LC norm.")
    parser.add_argument(
        "--log-level",
        type=str.upper,
        default=None,
        choices=LOG_LEVELS,
        help="Level of the log stream, overrides JOINTLC_LOGGING_LEVEL",
    )
    subparsers = parser.add_subparsers(dest="command", required=True)
    for name, (help_text, add_arguments, run) in COMMANDS.items():
        subparser = subparsers.add_parser(name, help=help_text, description=help_text)
        add_arguments(subparser)
        subparser.set_defaults(func=run)
    return parser


def cli_main(argv: Optional[List[str]] = None) -> int:
    """Run one subcommand; returns 0 on success, 1 on usage errors, 2 on data errors and 3 when the
    solver stops at the iteration cap without converging."""
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
        if args.log_level is not None:
            set_verbosity(args.log_level)
        return args.func(args)
    except UsageError as e:
        logger.error(str(e))
        return EXIT_USAGE
    except SystemExit as e:
        # --help
        return e.code if isinstance(e.code, int) else 0
    except (JointLCError, ValueError, OSError) as e:
        logger.error(f"{type(e).__name__}: {e}")
        return EXIT_DATA


def main() -> None:
    sys.exit(cli_main())


if __name__ == "__main__":
    main()
