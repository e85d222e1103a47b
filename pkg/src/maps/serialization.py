"""
JSON form of family specs.

A family spec is a JSON object with a ``kind`` tag, a ``param_interval``
and the kind's branch data. The accepted fields are documented in
schema/family_spec.schema.json.
"""

import json
import logging
from typing import Any, Dict, Optional

from .branches import BetaLikeModel, BranchModel, MarkovModel, PiecewiseAffineModel, SkewTentModel
from .families import build_family
from .models import (
    BaseMapSpec,
    FamilyDescriptor,
    FamilyKind,
    Homeomorphism,
    Interval,
    MapError,
    PiecewiseAffineSpec,
    SlopePath,
)

logger = logging.getLogger(__name__)


class FamilySpecError(MapError):
    """Malformed family spec document."""
    pass


def model_from_dict(data: Dict[str, Any]) -> BranchModel:
    """
    Build the branch model described by a family spec.

    Raises:
        FamilySpecError: If the kind tag is unknown or a field is missing
    """
    try:
        kind = FamilyKind(data["kind"])
    except KeyError:
        raise FamilySpecError("family spec needs a 'kind' field")
    except ValueError:
        raise FamilySpecError(f"unknown family kind: {data['kind']!r}")

    try:
        if kind is FamilyKind.BETA_LIKE:
            return BetaLikeModel(BaseMapSpec.from_dict(data["base_map"]))
        if kind is FamilyKind.SKEW_TENT:
            return SkewTentModel(SlopePath.from_list(data["alpha"]), SlopePath.from_list(data["beta"]))
        if kind is FamilyKind.MARKOV_EXAMPLE:
            return MarkovModel(Homeomorphism.from_dict(data.get("g", {"kind": "identity"})))
        return PiecewiseAffineModel(PiecewiseAffineSpec.from_dict(data))
    except KeyError as e:
        raise FamilySpecError(f"{kind.value} spec is missing field {e.args[0]!r}")


def family_from_dict(data: Dict[str, Any], grid_points: Optional[int] = None) -> FamilyDescriptor:
    """Build a family from its spec; sampled constants are recomputed, never trusted."""
    if "param_interval" not in data:
        raise FamilySpecError("family spec needs a 'param_interval' field")
    model = model_from_dict(data)
    return build_family(model, Interval.from_list(data["param_interval"]), grid_points=grid_points)


def family_to_dict(family: FamilyDescriptor) -> Dict[str, Any]:
    """Spec of a built family, including the sampled constants for reference."""
    return family.to_dict()


def load_family(path: str, grid_points: Optional[int] = None) -> FamilyDescriptor:
    with open(path, "r", encoding="utf-8") as f:
        return family_from_dict(json.load(f), grid_points=grid_points)
