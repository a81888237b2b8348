"""Discrete multiple-relaxation models of band-limited power-law attenuation."""

from .analysis import (
    DispersionCurve,
    FitReport,
    dispersion_curve,
    loglog_slope,
    max_rel_diff_unnormalized,
    normalize_to_target,
    small_attenuation_attenuation,
    target_attenuation,
    wavenumber,
)
from .continuum import (
    ContinuousDistribution,
    RegimeConstants,
    asymptotic_band_attenuation_check,
    bandlimited_equivalence_gap,
    continuum_compressibility,
    kappa_prime,
    regime_constants,
)
from .core import (
    CalibrationError,
    FrequencyGrid,
    Medium,
    PhysicalityError,
    PowerLawTarget,
    RelaxfitError,
    attenuation_db_per_cm_to_np_per_m,
    hz_to_angular,
    make_log_grid,
)
from .discrete import (
    RelaxationMechanism,
    RelaxationSet,
    build_relaxation_set,
    calibrate,
    discrete_compressibility,
    mechanism_attenuation,
    select_frequencies,
    step_sizes,
)
from .quadrature import QuadratureError
from .zener import ZenerParams, regime_for_target, zener_compressibility, zener_regime_exponents

__version__ = "0.1.0"
