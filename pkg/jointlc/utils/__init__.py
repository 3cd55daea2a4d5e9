from .logging_utils import init_logger
from .utils import get_solver_config, load_config_file, resolve_options

__all__ = [
    "init_logger",
    "get_solver_config",
    "load_config_file",
    "resolve_options",
]
