"""
Named families and default distinguished points for the command line.
"""

import logging
from typing import Tuple

from src.derivative.curves import CurveKind, CurveSpec
from src.maps import (
    BaseMapSpec,
    FamilyDescriptor,
    FamilyKind,
    Homeomorphism,
    SlopePath,
    beta_like_family,
    markov_family,
    skew_tent_family,
)
from src.maps.serialization import FamilySpecError, family_from_dict

from .config import ConfigError, RunConfig

logger = logging.getLogger(__name__)

BETA_PIECES = 4
BETA_INTERVAL = (1.05, 3.95)
MARKOV_INTERVAL = (0.1, 0.9)

# (alpha path, beta path, parameter interval)
SKEW_TENT_PATHS = {
    "symmetric": (SlopePath.linear(2.0, 1.0), SlopePath.linear(2.0, 1.0), (-0.5, 0.0)),
    "mv": (SlopePath.linear(1.3, 0.7), SlopePath.linear(1.5, 0.5), (0.0, 1.0)),
    "frozen": (SlopePath.constant(2.0), SlopePath.constant(1.5), (0.0, 1.0)),
}


def parse_homeomorphism(text: str) -> Homeomorphism:
    if text == "identity":
        return Homeomorphism()
    _, _, value = text.partition(":")
    try:
        return Homeomorphism("quadratic", float(value))
    except ValueError:
        raise ConfigError("g", f"cannot parse curvature in {text!r}")


def _interval(config: RunConfig, default: Tuple[float, float]) -> Tuple[float, float]:
    return tuple(config.interval) if config.interval else default


def build_preset(config: RunConfig) -> FamilyDescriptor:
    """
    Build the family a config names.

    Raises:
        ConfigError: If the family spec document is malformed
        MapError: If the family is invalid on its interval
    """
    kwargs = {"grid_points": config.grid_points}
    if config.family_spec is not None:
        spec = dict(config.family_spec)
        if config.interval:
            spec["param_interval"] = list(config.interval)
        try:
            return family_from_dict(spec, grid_points=config.grid_points)
        except FamilySpecError as e:
            raise ConfigError("family_spec", str(e))

    if config.family == "beta":
        return beta_like_family(BaseMapSpec.mod_one(BETA_PIECES), _interval(config, BETA_INTERVAL), **kwargs)
    if config.family == "skewtent":
        alpha, beta, interval = SKEW_TENT_PATHS[config.path]
        return skew_tent_family(alpha, beta, _interval(config, interval), **kwargs)
    if config.family == "markov":
        g = parse_homeomorphism(config.g)
        return markov_family(g, _interval(config, MARKOV_INTERVAL), **kwargs)
    raise ConfigError("family", f"no preset for {config.family!r}")


def default_curve(family: FamilyDescriptor) -> CurveSpec:
    """X(a) used when the config names none."""
    if family.family_kind is FamilyKind.SKEW_TENT:
        return CurveSpec(CurveKind.TURNING_VALUE)
    if family.family_kind is FamilyKind.MARKOV_EXAMPLE:
        return CurveSpec(CurveKind.LINEAR, (0.7, -0.7))
    return CurveSpec(CurveKind.CONSTANT, (1.0,))


def resolve_curve(config: RunConfig, family: FamilyDescriptor) -> CurveSpec:
    if config.curve_table:
        return CurveSpec(CurveKind.TABLE, table=tuple(tuple(float(v) for v in row) for row in config.curve_table))
    if config.curve:
        try:
            return CurveSpec.parse(config.curve)
        except ValueError as e:
            raise ConfigError("curve", str(e))
    return default_curve(family)


def resolve_param(value, family: FamilyDescriptor) -> float:
    """The given parameter, or the midpoint of the family's interval."""
    if value is not None:
        return float(value)
    interval = family.param_interval
    return 0.5 * (interval.lo + interval.hi)
