"""
Run configuration for the command line.

Values are merged in increasing precedence: built-in defaults, a JSON config
file, TYPLAB_<FIELD> environment variables, command-line flags. The merged
config is validated field by field and echoed into every report.
"""

import hashlib
import json
import logging
import math
from dataclasses import asdict, dataclass, field, fields
from typing import Any, Dict, List, Mapping, Optional

from src.config.settings import ENV_PREFIX, Defaults

logger = logging.getLogger(__name__)

SUBCOMMANDS = ("sweep", "density", "orbit", "kneading", "check-i", "check-iii", "transversality")
FAMILIES = ("beta", "skewtent", "markov", "affine")
PATHS = ("symmetric", "mv", "frozen")


class ConfigError(Exception):
    """Invalid configuration value."""

    def __init__(self, field_name: str, reason: str):
        super().__init__(f"{field_name}: {reason}")
        self.field = field_name
        self.reason = reason


@dataclass
class RunConfig:
    """One validated CLI run."""
    subcommand: str
    family: str = "markov"
    family_spec: Optional[Dict[str, Any]] = None  # Full spec; overrides the preset
    interval: Optional[List[float]] = None  # Parameter interval override for presets
    path: str = "symmetric"  # Skew tent slope path
    g: str = "identity"  # Markov homeomorphism: identity or quadratic:c
    curve: Optional[str] = None  # X map, e.g. "linear:0.7,-0.7"
    curve_table: Optional[List[List[float]]] = None  # Sampled (a, X, X') rows
    params: Optional[List[float]] = None
    test_intervals: List[str] = field(default_factory=list)  # "lo,hi" test sets B
    a: Optional[float] = None
    a0: Optional[float] = None
    a1: Optional[float] = None
    a2: Optional[float] = None
    n: int = Defaults.ORBIT_LENGTH
    bins: int = Defaults.BINS
    depth: int = 10
    j_max: int = Defaults.J_MAX
    grid_size: int = Defaults.CHECK_GRID
    grid_points: int = Defaults.GRID_POINTS
    seed: Optional[int] = 0
    threshold: float = Defaults.PASS_THRESHOLD
    burn_in: int = Defaults.BURN_IN
    tol: float = Defaults.POWER_TOL
    max_iter: int = Defaults.POWER_MAX_ITER
    out: str = "out"
    threads: Optional[int] = None
    serial: bool = False

    def validate(self) -> None:
        """
        Raises:
            ConfigError: On the first invalid field
        """
        if self.subcommand not in SUBCOMMANDS:
            raise ConfigError("subcommand", f"must be one of {', '.join(SUBCOMMANDS)}")
        if self.family not in FAMILIES:
            raise ConfigError("family", f"must be one of {', '.join(FAMILIES)}")
        if self.family == "affine" and self.family_spec is None:
            raise ConfigError("family_spec", "affine families need a family spec")
        if self.path not in PATHS:
            raise ConfigError("path", f"must be one of {', '.join(PATHS)}")
        if not (self.g == "identity" or self.g.startswith("quadratic:")):
            raise ConfigError("g", "must be 'identity' or 'quadratic:<c>'")
        if self.interval is not None and (len(self.interval) != 2 or not self.interval[0] < self.interval[1]):
            raise ConfigError("interval", "needs two increasing endpoints")

        _at_least("n", self.n, 0)
        _at_least("bins", self.bins, 2)
        _at_least("depth", self.depth, 1)
        _at_least("j_max", self.j_max, 3)
        _at_least("grid_size", self.grid_size, 2)
        _at_least("grid_points", self.grid_points, 2)
        _at_least("burn_in", self.burn_in, 0)
        _at_least("max_iter", self.max_iter, 1)
        if self.threads is not None:
            _at_least("threads", self.threads, 1)
        if not 0.0 < self.threshold <= 1.0:
            raise ConfigError("threshold", "must lie in (0, 1]")
        if not (math.isfinite(self.tol) and self.tol > 0.0):
            raise ConfigError("tol", "must be a positive number")

        if self.subcommand == "check-iii":
            if self.a1 is None or self.a2 is None:
                raise ConfigError("a1", "check-iii needs both a1 and a2")
            if not self.a1 < self.a2:
                raise ConfigError("a2", "must exceed a1")
        if self.subcommand in ("kneading", "transversality") and self.family != "skewtent" \
                and (self.family_spec or {}).get("kind") != "skew_tent":
            raise ConfigError("family", f"{self.subcommand} needs a skew tent family")

    def normalized(self) -> Dict[str, Any]:
        """Config echo with sorted keys."""
        return json.loads(json.dumps(asdict(self), sort_keys=True))

    @property
    def config_hash(self) -> str:
        text = json.dumps(self.normalized(), sort_keys=True, separators=(",", ":"))
        return hashlib.sha256(text.encode("utf-8")).hexdigest()


def _at_least(name: str, value: int, minimum: int) -> None:
    if value < minimum:
        raise ConfigError(name, f"must be >= {minimum}, got {value}")


_INT_FIELDS = {"n", "bins", "depth", "j_max", "grid_size", "grid_points", "seed", "burn_in", "max_iter", "threads"}
_FLOAT_FIELDS = {"a", "a0", "a1", "a2", "threshold", "tol"}
_FLOAT_LIST_FIELDS = {"params", "interval"}
_BOOL_FIELDS = {"serial"}
_JSON_FIELDS = {"family_spec", "curve_table"}


def _field_names() -> List[str]:
    return [f.name for f in fields(RunConfig)]


def _coerce(name: str, value: Any) -> Any:
    """Convert a raw value (file, environment or flag) to the field's type."""
    if value is None:
        return None
    try:
        if name in _INT_FIELDS:
            if isinstance(value, float) and not value.is_integer():
                raise ValueError(value)
            return int(value)
        if name in _FLOAT_FIELDS:
            return float(value)
        if name in _FLOAT_LIST_FIELDS:
            if isinstance(value, str):
                value = [v for v in value.split(",") if v.strip()]
            return [float(v) for v in value]
        if name == "test_intervals":
            if isinstance(value, str):
                value = [v for v in value.split(";") if v.strip()]
            return [str(v) for v in value]
        if name in _BOOL_FIELDS:
            if isinstance(value, str):
                return value.strip().lower() in ("1", "true", "yes", "on")
            return bool(value)
        if name in _JSON_FIELDS:
            return json.loads(value) if isinstance(value, str) else value
        return str(value)
    except (TypeError, ValueError) as e:
        raise ConfigError(name, f"cannot parse {value!r}: {e}")


def load_config_file(path: str) -> Dict[str, Any]:
    """
    Read a JSON config file.

    Raises:
        ConfigError: If the file is unreadable, not an object or has unknown keys
    """
    try:
        with open(path, "r", encoding="utf-8") as f:
            data = json.load(f)
    except OSError as e:
        raise ConfigError("config", f"cannot read {path}: {e}")
    except json.JSONDecodeError as e:
        raise ConfigError("config", f"{path} is not valid JSON: {e}")
    if not isinstance(data, dict):
        raise ConfigError("config", f"{path} must hold a JSON object")

    known = set(_field_names())
    for key in data:
        if key not in known:
            raise ConfigError(key, "unknown key")
    return data


def parse_config(
    subcommand: str,
    config_path: Optional[str] = None,
    overrides: Optional[Mapping[str, Any]] = None,
    environ: Optional[Mapping[str, str]] = None,
) -> RunConfig:
    """
    Merge defaults, config file, environment and flags into a validated config.

    Args:
        subcommand: Subcommand to run
        config_path: Optional JSON config file
        overrides: Flag values; None entries are ignored
        environ: Environment mapping (TYPLAB_<FIELD> keys are read)

    Raises:
        ConfigError: With the offending field name
    """
    merged: Dict[str, Any] = {}
    if config_path:
        merged.update(load_config_file(config_path))

    for name in _field_names():
        key = ENV_PREFIX + name.upper()
        if environ and key in environ:
            merged[name] = environ[key]

    for name, value in (overrides or {}).items():
        if name not in _field_names():
            raise ConfigError(name, "unknown key")
        if value is not None:
            merged[name] = value

    merged["subcommand"] = subcommand
    nullable = {f.name for f in fields(RunConfig) if f.default is None}
    for name, value in merged.items():
        if value is None and name not in nullable:
            raise ConfigError(name, "must not be null")
    values = {name: _coerce(name, value) for name, value in merged.items()}
    config = RunConfig(**values)
    config.validate()
    logger.debug("Run config %s", config.config_hash[:12])
    return config
