"""
Numeric defaults for the typicality lab.

Every tolerance, grid size and cap used by the analysis packages lives here
so that the CLI, the tests and the library agree on one set of values.
Callers override per call; the CLI also reads environment overrides
prefixed with ``ENV_PREFIX``.
"""

from typing import Any, Dict, Optional

# Tool identity (embedded in every report file)
TOOL_NAME = "typlab"
TOOL_VERSION = "0.3.0"

ENV_PREFIX = "TYPLAB_"


class Defaults:
    """Known default values as constants."""

    # Family construction
    GRID_POINTS = 10_000
    """Sample points along x per branch set when estimating lambda, Lambda, L."""

    PARAM_SAMPLES = 257
    """Parameter samples across the family interval during a build."""

    MIN_LIPSCHITZ = 1e-12
    """Floor for the Lipschitz constant L (must stay positive)."""

    # Invariant interval detection for beta-like families
    K_SEED = 1e-4
    K_DEPTH = 60
    K_STABLE_TOL = 1e-9

    # Breakpoint handling
    GUARD_TOL = 1e-11
    """Orbit points this close to an interior breakpoint are flagged."""

    AT_BREAKPOINT_TOL = 1e-14
    """Pointwise queries this close to an interior breakpoint are refused."""

    CUT_TOL = 1e-12
    """Breakpoints closer than this to a cylinder image end do not cut it."""

    DOMAIN_ESCAPE_TOL = 1e-9

    # Symbolic dynamics
    C_TOL = 1e-12
    """Kneading symbol C is emitted iff |x| <= C_TOL."""

    CYLINDER_CAP = 1_000_000
    KNEADING_DEPTH = 40

    # Derivative checks
    FD_STEP = 1e-7
    J_MAX = 30
    CHECK_GRID = 20
    KAPPA = 1e-6
    """Strict-inequality margin used instead of 2L for unimodal families."""

    # Density
    BINS = 4096
    POWER_TOL = 1e-12
    POWER_MAX_ITER = 100_000
    PARRY_CUTOFF = 1e-14
    PARRY_SNAP = 1e-12

    # Typicality
    ORBIT_LENGTH = 1_000_000
    BURN_IN = 1_000
    PASS_THRESHOLD = 0.01

    _defaults: Dict[str, Any] = {
        "n": ORBIT_LENGTH,
        "bins": BINS,
        "depth": 10,
        "j_max": J_MAX,
        "grid_size": CHECK_GRID,
        "seed": 0,
        "threshold": PASS_THRESHOLD,
        "burn_in": BURN_IN,
        "tol": POWER_TOL,
        "max_iter": POWER_MAX_ITER,
        "grid_points": GRID_POINTS,
    }

    @classmethod
    def get_default(cls, key: str) -> Optional[Any]:
        """Get default value for a run-config key."""
        return cls._defaults.get(key)
