"""
Distinguished-point maps a -> X(a).

X is handed to the checks as value/derivative pairs on the parameter grid,
so a CurveSpec only needs to produce (X(a), X'(a)) for any a.
"""

from dataclasses import dataclass
from enum import Enum
from typing import Any, Dict, Sequence, Tuple

import numpy as np


class CurveKind(Enum):
    """Supported X maps."""
    CONSTANT = "constant"  # X(a) = c0
    LINEAR = "linear"  # X(a) = c0 + c1 a
    RECIPROCAL = "reciprocal"  # X(a) = c0 / a
    TURNING_POINT = "turning_point"  # X(a) = 0 for skew tents
    TURNING_VALUE = "turning_value"  # X(a) = T_a(0) = 1 for skew tents
    MARKOV_PERIOD_TWO = "markov_period_two"  # period-2 point of the identity Markov family
    TABLE = "table"  # Linear interpolation of sampled (a, X, X')


@dataclass(frozen=True)
class CurveSpec:
    kind: CurveKind
    coeffs: Tuple[float, ...] = ()
    table: Tuple[Tuple[float, float, float], ...] = ()

    def evaluate(self, a: float) -> Tuple[float, float]:
        values, derivs = self.sample(np.array([a], dtype=float))
        return float(values[0]), float(derivs[0])

    def sample(self, params: Sequence[float]) -> Tuple[np.ndarray, np.ndarray]:
        """X(a) and X'(a) for every parameter."""
        a = np.asarray(params, dtype=float)
        kind = self.kind
        if kind is CurveKind.CONSTANT:
            return np.full_like(a, self._coeff(0)), np.zeros_like(a)
        if kind is CurveKind.LINEAR:
            c0, c1 = self._coeff(0), self._coeff(1)
            return c0 + c1 * a, np.full_like(a, c1)
        if kind is CurveKind.RECIPROCAL:
            c = self._coeff(0, 1.0)
            return c / a, -c / a ** 2
        if kind is CurveKind.TURNING_POINT:
            return np.zeros_like(a), np.zeros_like(a)
        if kind is CurveKind.TURNING_VALUE:
            return np.ones_like(a), np.zeros_like(a)
        if kind is CurveKind.MARKOV_PERIOD_TWO:
            denom = 1.0 - a + a ** 2
            return a ** 2 / denom, (2.0 * a - a ** 2) / denom ** 2
        rows = np.asarray(self.table, dtype=float)
        if rows.ndim != 2 or len(rows) < 2:
            raise ValueError("table curve needs at least two (a, X, X') rows")
        order = np.argsort(rows[:, 0])
        rows = rows[order]
        return np.interp(a, rows[:, 0], rows[:, 1]), np.interp(a, rows[:, 0], rows[:, 2])

    def _coeff(self, i: int, default: float = 0.0) -> float:
        return float(self.coeffs[i]) if len(self.coeffs) > i else default

    def to_dict(self) -> Dict[str, Any]:
        data: Dict[str, Any] = {"kind": self.kind.value}
        if self.coeffs:
            data["coeffs"] = list(self.coeffs)
        if self.table:
            data["table"] = [list(row) for row in self.table]
        return data

    @classmethod
    def from_dict(cls, data: Dict[str, Any]) -> "CurveSpec":
        return cls(
            kind=CurveKind(data["kind"]),
            coeffs=tuple(float(c) for c in data.get("coeffs", ())),
            table=tuple(tuple(float(v) for v in row) for row in data.get("table", ())),
        )

    @classmethod
    def parse(cls, text: str) -> "CurveSpec":
        """Parse ``kind`` or ``kind:c0,c1`` as given on the command line."""
        kind, _, args = text.partition(":")
        coeffs = tuple(float(v) for v in args.split(",") if v.strip()) if args else ()
        return cls(kind=CurveKind(kind.strip()), coeffs=coeffs)
