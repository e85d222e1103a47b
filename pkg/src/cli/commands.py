"""
Subcommand dispatch.

Each handler runs one analysis, writes its report files and returns whether
the analysis succeeded. execute() maps the outcome to the exit code.
"""

import logging
from typing import Callable, Dict

import numpy as np

from src.config.workers import resolve_workers
from src.density import density_bounds_and_variation, invariant_density, support_estimate
from src.density.models import DensityError
from src.derivative import check_condition_one, orbit_with_derivative, parameter_grid, transversality_report
from src.derivative.models import DerivativeError
from src.maps import FamilyDescriptor, Interval, MapError, snapshot
from src.symbolic import condition_three_sweep, cylinders, kneading_path
from src.symbolic.models import SymbolicError
from src.typicality import TestInterval, parameter_sweep
from src.typicality.models import TypicalityError

from .config import ConfigError, RunConfig
from .presets import build_preset, resolve_curve, resolve_param
from .reports import report_path, write_csv, write_json

logger = logging.getLogger(__name__)

EXIT_OK = 0
EXIT_CONFIG_ERROR = 1
EXIT_ANALYSIS_FAILURE = 2

_UNBOUNDED = Interval(-np.inf, np.inf)


def _test_interval_domain(family: FamilyDescriptor) -> Interval:
    """The domain when it does not move with a; otherwise rows clip per parameter."""
    first = snapshot(family, family.param_interval.lo).domain
    last = snapshot(family, family.param_interval.hi).domain
    return first if first == last else _UNBOUNDED


def _sweep(config: RunConfig, family: FamilyDescriptor) -> bool:
    if config.params:
        params = list(config.params)
    else:
        params = parameter_grid(family, config.grid_size, config.seed).tolist()
    domain = _test_interval_domain(family)
    intervals = [TestInterval.parse(text, domain) for text in config.test_intervals]
    report = parameter_sweep(
        family,
        resolve_curve(config, family),
        params,
        n=config.n,
        bins=config.bins,
        threshold=config.threshold,
        burn_in=config.burn_in,
        test_intervals=intervals,
        workers=resolve_workers(config.threads, config.serial),
        seed=config.seed,
    )

    labels = report.intervals
    columns = ["a", "x_value", "n_iterations", "kolmogorov_distance", "pass", "on_breakpoint", "error"]
    columns += [f"F_n {label}" for label in labels] + [f"C {label}" for label in labels]
    rows = [
        [r.param, r.x_value, r.n_iterations, r.kolmogorov_distance, r.passed, r.on_breakpoint, r.error]
        + [r.f_n.get(label) for label in labels]
        + [r.empirical_c.get(label) for label in labels]
        for r in report.rows
    ]
    write_csv(report_path(config, "sweep.csv"), columns, rows, config)
    write_json(report_path(config, "sweep.json"), report.summary(), config)
    return True


def _density(config: RunConfig, family: FamilyDescriptor) -> bool:
    snap = snapshot(family, resolve_param(config.a, family))
    estimate = invariant_density(snap, config.bins, config.tol, config.max_iter)
    variation, phi_inf, phi_sup = density_bounds_and_variation(snap, estimate)
    support, _ = support_estimate(snap, estimate, strict=False)

    write_csv(report_path(config, "density.csv"), ["bin_left", "bin_right", "value"], estimate.to_rows(), config)
    summary = {
        "density": estimate.to_dict(),
        "variation": variation.to_dict(),
        "support_estimate": support.to_list(),
        "invariant_interval": snap.domain.to_list(),
        "phi_inf": phi_inf,
        "phi_sup": phi_sup,
    }
    write_json(report_path(config, "density.json"), summary, config)
    return True


def _orbit(config: RunConfig, family: FamilyDescriptor) -> bool:
    a = resolve_param(config.a, family)
    value, deriv = resolve_curve(config, family).evaluate(a)
    record = orbit_with_derivative(family, a, value, deriv, config.n)
    rows = zip(range(len(record)), record.points, record.param_derivs, record.space_derivs,
               (record.reliable(j) for j in range(len(record))))
    write_csv(report_path(config, "orbit.csv"), ["j", "x", "param_deriv", "space_deriv", "reliable"], rows, config)
    if record.breakpoint_hits:
        logger.warning("Orbit hits breakpoints at steps %s", list(record.breakpoint_hits)[:10])
    return True


def _kneading(config: RunConfig, family: FamilyDescriptor) -> bool:
    if config.params:
        params = list(config.params)
    else:
        params = np.linspace(family.param_interval.lo, family.param_interval.hi, config.grid_size).tolist()
    path = kneading_path(family, params, config.depth)
    write_csv(report_path(config, "kneading.csv"), ["a", "word"],
              [(a, str(w)) for a, w in zip(path.params, path.words)], config)
    write_json(report_path(config, "kneading.json"), {
        "violations": path.violations,
        "violation_params": path.violation_params,
        "first_l_run": path.first_l_run,
        "depth": config.depth,
    }, config)
    return path.violations == 0


def _check_one(config: RunConfig, family: FamilyDescriptor) -> bool:
    report = check_condition_one(
        family,
        resolve_curve(config, family),
        j_max=config.j_max,
        grid_size=config.grid_size,
        seed=config.seed,
        workers=resolve_workers(config.threads, config.serial),
    )
    write_json(report_path(config, "check_i.json"), report.to_dict(), config)
    return report.passed


def _check_three(config: RunConfig, family: FamilyDescriptor) -> bool:
    sweep = condition_three_sweep(family, config.a1, config.a2, config.depth)
    partition = cylinders(snapshot(family, config.a1), config.depth)
    write_csv(report_path(config, "cylinders.csv"),
              ["word", "domain_lo", "domain_hi", "image_lo", "image_hi", "orientation"],
              partition.to_rows(), config)
    write_json(report_path(config, "check_iii.json"), sweep.to_dict(), config)
    return sweep.largest_verified_depth >= config.depth


def _transversality(config: RunConfig, family: FamilyDescriptor) -> bool:
    report = transversality_report(family, resolve_param(config.a0, family), config.j_max)
    write_json(report_path(config, "transversality.json"), report.to_dict(), config)
    return report.j0_found is not None


HANDLERS: Dict[str, Callable[[RunConfig, FamilyDescriptor], bool]] = {
    "sweep": _sweep,
    "density": _density,
    "orbit": _orbit,
    "kneading": _kneading,
    "check-i": _check_one,
    "check-iii": _check_three,
    "transversality": _transversality,
}


def execute(config: RunConfig) -> int:
    """
    Run a validated config.

    Returns:
        0 on success, 1 on a config or family error, 2 on analysis failure
    """
    try:
        family = build_preset(config)
    except ConfigError as e:
        logger.error("Invalid config: %s", e)
        return EXIT_CONFIG_ERROR
    except MapError as e:
        logger.error("Cannot build family: %s", e)
        return EXIT_CONFIG_ERROR

    handler = HANDLERS[config.subcommand]
    try:
        ok = handler(config, family)
    except ConfigError as e:
        logger.error("Invalid config: %s", e)
        return EXIT_CONFIG_ERROR
    except (MapError, SymbolicError, DerivativeError, DensityError, TypicalityError) as e:
        logger.error("%s failed: %s: %s", config.subcommand, type(e).__name__, e)
        return EXIT_ANALYSIS_FAILURE

    if not ok:
        logger.warning("%s finished with a failed check", config.subcommand)
        return EXIT_ANALYSIS_FAILURE
    logger.info("%s finished", config.subcommand)
    return EXIT_OK
