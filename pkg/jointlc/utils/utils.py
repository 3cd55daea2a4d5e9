import json
import math
from typing import Optional, Tuple

CONFIG_SCHEMA = 1

DEFAULT_OPTIONS = {
    "alpha": None,
    "tau": 10000.0,
    "eta": 1.1,
    "nu": 1.0,
    "vartheta": 500.0,
    "c": 0.8,
    "scheme": "normalized",
    "epsilon": 1e-4,
    "max_iters": 500,
    "rank_tol": None,
    "peak": 255.0,
    "ergas_denominator": "mean2",
}


def load_config_file(path) -> dict:
    """Read a JSON config; only keys of ``DEFAULT_OPTIONS`` plus ``"schema"`` are accepted."""
    with open(path, "r") as f:
        options = json.load(f)
    if not isinstance(options, dict):
        raise ValueError(f"config {path} must hold a JSON object")
    schema = options.pop("schema", CONFIG_SCHEMA)
    if schema != CONFIG_SCHEMA:
        raise ValueError(f"config {path} has schema {schema}, expected {CONFIG_SCHEMA}")
    unknown = sorted(set(options) - set(DEFAULT_OPTIONS))
    if unknown:
        raise ValueError(f"config {path} has unknown keys: {', '.join(unknown)}")
    return options


def resolve_options(preset: Optional[str] = None, config_path=None, overrides: Optional[dict] = None) -> dict:
    """Defaults, then the preset row, then the config file, then command-line overrides."""
    from jointlc.solver.presets import get_preset

    options = dict(DEFAULT_OPTIONS)
    if preset is not None:
        options.update(get_preset(preset))
    if config_path is not None:
        options.update(load_config_file(config_path))
    options.update({k: v for k, v in (overrides or {}).items() if v is not None})
    return options


def solver_config_from_options(options: dict):
    from jointlc.models.lc_norm import LCParams
    from jointlc.solver.admm_solver import SolverConfig

    return SolverConfig(
        alpha=options["alpha"],
        tau=options["tau"],
        eta=options["eta"],
        lc=LCParams(nu=options["nu"], vartheta=options["vartheta"], c=options["c"], scheme=options["scheme"]),
        epsilon=options["epsilon"],
        max_iters=options["max_iters"],
        rank_tol=options["rank_tol"],
    )


def get_solver_config(args) -> Tuple[object, dict]:
    options = resolve_options(
        preset=getattr(args, "preset", None),
        config_path=getattr(args, "config", None),
        overrides={
            "max_iters": getattr(args, "max_iters", None),
            "epsilon": getattr(args, "epsilon", None),
            "peak": getattr(args, "peak", None),
            "ergas_denominator": getattr(args, "ergas_denominator", None),
        },
    )
    return solver_config_from_options(options), options


def json_safe(value):
    """Replace non-finite floats (recursively) with ``None`` so the output is strict JSON."""
    if isinstance(value, float) and not math.isfinite(value):
        return None
    if isinstance(value, dict):
        return {k: json_safe(v) for k, v in value.items()}
    if isinstance(value, (list, tuple)):
        return [json_safe(v) for v in value]
    return value
