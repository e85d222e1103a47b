"""
Shared defaults and worker management.
"""

from .settings import Defaults, ENV_PREFIX, TOOL_NAME, TOOL_VERSION
from .workers import cpu_count, ordered_map, resolve_workers

__all__ = [
    "Defaults",
    "ENV_PREFIX",
    "TOOL_NAME",
    "TOOL_VERSION",
    "cpu_count",
    "ordered_map",
    "resolve_workers",
]
