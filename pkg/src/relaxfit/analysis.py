"""Attenuation / phase-velocity curves and comparison against a power law."""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .continuum import ContinuousDistribution, relaxation_integrals
from .core import FrequencyGrid, Medium, PowerLawTarget
from .discrete import RelaxationMechanism, RelaxationSet
from .dispersion import attenuation, loglog_slope_arrays, phase_velocity, wavenumber

__all__ = [
    "DispersionCurve",
    "FitReport",
    "wavenumber",
    "dispersion_curve",
    "small_attenuation_attenuation",
    "target_attenuation",
    "normalize_to_target",
    "max_rel_diff_unnormalized",
    "loglog_slope",
]


@dataclass(frozen=True)
class DispersionCurve:
    grid: FrequencyGrid
    attenuation: np.ndarray = field(repr=False)
    phase_velocity: np.ndarray = field(repr=False)

    def __post_init__(self):
        a = np.asarray(self.attenuation, dtype=float)
        c = np.asarray(self.phase_velocity, dtype=float)
        if a.shape != (len(self.grid),) or c.shape != (len(self.grid),):
            raise ValueError("curve lengths must match the grid")
        if np.any(a < 0) or np.any(c <= 0):
            raise ValueError("attenuation must be >= 0 and phase velocity > 0")
        object.__setattr__(self, "attenuation", a)
        object.__setattr__(self, "phase_velocity", c)

    @property
    def omega(self):
        return self.grid.samples

    def scaled(self, factor):
        """Curve with the attenuation multiplied by ``factor``."""
        return DispersionCurve(self.grid, self.attenuation * factor, self.phase_velocity)


@dataclass(frozen=True)
class FitReport:
    """Relative deviation from a target law over ``band``.

    ``per_sample_rel_diff`` holds ``s*g - 1`` for every in-band sample, where
    ``g`` is the attenuation over the target and ``s`` the normalization.
    """

    max_rel_diff: float
    normalization_scale: float
    per_sample_rel_diff: np.ndarray = field(repr=False)
    band: tuple


def dispersion_curve(kappa_fn, medium: Medium, grid: FrequencyGrid) -> DispersionCurve:
    """Evaluate attenuation and phase velocity of ``kappa_fn`` on ``grid``."""
    w = grid.samples
    kap = np.array([kappa_fn(x) for x in w], dtype=complex)
    return DispersionCurve(grid, attenuation(kap, medium.rho0, w), phase_velocity(kap, medium.rho0))


def small_attenuation_attenuation(model, medium: Medium, omega, tol=1e-9):
    """Attenuation from the loss integral alone, valid for weak loss [Np/m].

    ``model`` may be a :class:`RelaxationSet`, a single
    :class:`RelaxationMechanism` or a :class:`ContinuousDistribution`.
    """
    w = float(omega)
    if w == 0.0:
        return 0.0
    A = medium.small_attenuation_factor
    if isinstance(model, RelaxationMechanism):
        model = RelaxationSet((model,), medium.kappa0)
    if isinstance(model, RelaxationSet):
        om, wt = model._omega, model._weight
        return float(A * w * w * np.sum(wt * om / (om * om + w * w)))
    if isinstance(model, ContinuousDistribution):
        (_, loss), _ = relaxation_integrals(model, w, tol)
        return float(A * w * w * loss)
    raise TypeError(f"unsupported model {type(model).__name__}")


def target_attenuation(target: PowerLawTarget, omega):
    w = np.asarray(omega, dtype=float)
    if np.any(w <= 0):
        raise ValueError("omega must be positive")
    out = target.alpha_ref * (w / target.omega_ref) ** target.eta
    return float(out) if out.ndim == 0 else out


def _ratio_in_band(curve, target, band):
    mask = curve.grid.within(band)
    if not np.any(mask):
        raise ValueError(f"no grid samples inside band {band!r}")
    g = curve.attenuation[mask] / target_attenuation(target, curve.omega[mask])
    if np.any(g <= 0):
        raise ValueError("attenuation must be positive across the comparison band")
    return g


def normalize_to_target(curve: DispersionCurve, target: PowerLawTarget, band=None):
    """Scale making the extreme relative differences equal and opposite.

    Returns
    -------
    scale : float
    report : FitReport
    """
    band = tuple(band) if band is not None else target.band
    g = _ratio_in_band(curve, target, band)
    s = 2.0 / (g.max() + g.min())
    r = s * g - 1.0
    return s, FitReport(float(np.max(np.abs(r))), float(s), r, band)


def max_rel_diff_unnormalized(curve: DispersionCurve, target: PowerLawTarget, band=None):
    band = tuple(band) if band is not None else target.band
    g = _ratio_in_band(curve, target, band)
    return float(np.max(np.abs(g - 1.0)))


def loglog_slope(curve: DispersionCurve, band=None):
    """Least-squares slope of ``ln(attenuation)`` vs ``ln(omega)`` inside ``band``."""
    mask = curve.grid.within(band) if band is not None else np.ones(len(curve.grid), bool)
    if mask.sum() < 2:
        raise ValueError("need at least two samples in band")
    return loglog_slope_arrays(curve.omega[mask], curve.attenuation[mask])
