"""Coherent states on the quadratic energy ladder e_n = n(n+mu)/mu and
their revival dynamics: state construction, time-domain analysis,
measure verification, and a CSV-producing command line."""

from .specfun import (
    AccuracyPolicy,
    ConvergenceError,
    bessel_i_ratio,
    bessel_i_scaled,
    bessel_k_scaled,
    ln_bessel_i,
    ln_bessel_k,
    ln_gamma,
    wronskian_residual,
)
from .spectrum import (
    SpectrumParams,
    TimeScales,
    classical_period,
    energy_level,
    moment_rho,
    revival_time,
    time_scales,
)
from .gkstate import (
    CoherentState,
    build_state,
    evolve,
    mandel_q,
    mean_energy,
    mean_n,
    normalization_sq,
    overlap,
    weight,
    weights,
)
from .revival import (
    FractionalDecomposition,
    PhaseGroupReport,
    TimeSeries,
    autocorrelation,
    autocorrelation_series,
    diagonal_term,
    fractional_decomposition,
    interference_term,
    phase,
    phase_group_check,
    survival_fraction,
    survival_fraction_series,
)
from .measure import (
    MomentReport,
    QuadratureConfig,
    density_rho,
    measure_k,
    moment_check,
    moment_integral,
)

__version__ = "0.1.0"

__all__ = [
    "AccuracyPolicy",
    "ConvergenceError",
    "bessel_i_ratio",
    "bessel_i_scaled",
    "bessel_k_scaled",
    "ln_bessel_i",
    "ln_bessel_k",
    "ln_gamma",
    "wronskian_residual",
    "SpectrumParams",
    "TimeScales",
    "classical_period",
    "energy_level",
    "moment_rho",
    "revival_time",
    "time_scales",
    "CoherentState",
    "build_state",
    "evolve",
    "mandel_q",
    "mean_energy",
    "mean_n",
    "normalization_sq",
    "overlap",
    "weight",
    "weights",
    "FractionalDecomposition",
    "PhaseGroupReport",
    "TimeSeries",
    "autocorrelation",
    "autocorrelation_series",
    "diagonal_term",
    "fractional_decomposition",
    "interference_term",
    "phase",
    "phase_group_check",
    "survival_fraction",
    "survival_fraction_series",
    "MomentReport",
    "QuadratureConfig",
    "density_rho",
    "measure_k",
    "moment_check",
    "moment_integral",
    "__version__",
]
