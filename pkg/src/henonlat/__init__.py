"""Exact arithmetic for a lattice family of Henon-like maps.

The package builds integer-valued polynomial families with exact rational
arithmetic, certifies their growth and escape bounds at the real and
p-adic places, and enumerates rational periodic orbits of the associated
plane maps by exhaustive lattice walks. A FastAPI service and a CLI wrap
the same core functions.
"""

from .exact import (InternalConsistencyError, factorial_padic_abs, is_prime,
                    log_rational_bounds, padic_abs, padic_valuation)
from .polyfamily import (Poly, SineTable, binomial_derivative_value,
                         binomial_value, centered_binomial,
                         central_difference, compressing_poly, discrete_sine,
                         discrete_sine_value, exact_value, six_wave)
from .analysis import (BoundReport, ConvergenceReport, RadiusReport,
                       SearchResult, SigmaReport, compression_check,
                       convergence_report, escape_radius,
                       escape_radius_exceptions, optimal_compression_search,
                       padic_escape_check, preperiodic_integers,
                       radius_report, real_escape_check, verify_cd_bounds,
                       verify_monotonicity, verify_sigma_agreement,
                       verify_tail_growth)
from .dynamics import (CycleRecord, Escapes, HenonMap, NumericDivergenceError,
                       Periodic, PeriodicReport, SweepRow, classify,
                       eight_step_offsets, eight_step_translation,
                       enumerate_periodic, hinf_orbit_float, limit_orbit,
                       limit_period, limit_period_table, limit_step,
                       longest_cycle, perturbation_atlas, sup_norm, sweep)
from .reference import (all_periodic_radius, count_bracket,
                        interpolated_count, interpolated_longest)

__version__ = "0.1.0"

__all__ = [
    "BoundReport",
    "ConvergenceReport",
    "CycleRecord",
    "Escapes",
    "HenonMap",
    "InternalConsistencyError",
    "NumericDivergenceError",
    "Periodic",
    "PeriodicReport",
    "Poly",
    "RadiusReport",
    "SearchResult",
    "SigmaReport",
    "SineTable",
    "SweepRow",
    "all_periodic_radius",
    "binomial_derivative_value",
    "binomial_value",
    "centered_binomial",
    "central_difference",
    "classify",
    "compressing_poly",
    "compression_check",
    "convergence_report",
    "count_bracket",
    "discrete_sine",
    "discrete_sine_value",
    "eight_step_offsets",
    "eight_step_translation",
    "enumerate_periodic",
    "escape_radius",
    "escape_radius_exceptions",
    "exact_value",
    "factorial_padic_abs",
    "hinf_orbit_float",
    "interpolated_count",
    "interpolated_longest",
    "is_prime",
    "limit_orbit",
    "limit_period",
    "limit_period_table",
    "limit_step",
    "log_rational_bounds",
    "longest_cycle",
    "optimal_compression_search",
    "padic_abs",
    "padic_escape_check",
    "padic_valuation",
    "perturbation_atlas",
    "preperiodic_integers",
    "radius_report",
    "real_escape_check",
    "six_wave",
    "sup_norm",
    "sweep",
    "verify_cd_bounds",
    "verify_monotonicity",
    "verify_sigma_agreement",
    "verify_tail_growth",
]
