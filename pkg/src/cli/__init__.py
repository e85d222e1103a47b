"""
Command-line front end: configs, presets, dispatch and report files.
"""

from .commands import EXIT_ANALYSIS_FAILURE, EXIT_CONFIG_ERROR, EXIT_OK, execute
from .config import ConfigError, RunConfig, parse_config
from .presets import build_preset, default_curve, resolve_curve
from .reports import make_json_safe, write_csv, write_json

__all__ = [
    "EXIT_ANALYSIS_FAILURE",
    "EXIT_CONFIG_ERROR",
    "EXIT_OK",
    "ConfigError",
    "RunConfig",
    "build_preset",
    "default_curve",
    "execute",
    "make_json_safe",
    "parse_config",
    "resolve_curve",
    "write_csv",
    "write_json",
]
