import argparse
import json

from jointlc.datasets.tns_format import read_tns
from jointlc.metrics.pqi import tensor_pqi
from jointlc.utils.utils import json_safe, resolve_options

from .cli_utils import EXIT_OK, add_metric_arguments, write_json


def add_arguments(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("reference", type=str, help="Ground-truth tensor (.tns)")
    parser.add_argument("candidate", type=str, help="Recovered tensor (.tns)")
    parser.add_argument("--config", type=str, default=None, help="JSON config file supplying peak / ergas_denominator")
    parser.add_argument("--output", type=str, default=None, help="Write the JSON report here instead of stdout")
    add_metric_arguments(parser)


def run(args) -> int:
    options = resolve_options(
        config_path=args.config,
        overrides={"peak": args.peak, "ergas_denominator": args.ergas_denominator},
    )
    report = tensor_pqi(
        read_tns(args.reference),
        read_tns(args.candidate),
        peak=options["peak"],
        ergas_denominator=options["ergas_denominator"],
    )
    print(report.to_table())
    if args.output:
        write_json(report.to_dict(), args.output)
    else:
        print(json.dumps(json_safe(report.to_dict()), indent=2))
    return EXIT_OK
