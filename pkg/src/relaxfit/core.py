"""Shared domain types, unit conversions and frequency grids.

All frequencies handled inside the library are angular (rad/s).  Hz values
only enter through :func:`hz_to_angular` at the edges (config files, CLI).
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

#: dB per neper, 20*log10(e)
DB_PER_NEPER = 20.0 * math.log10(math.e)


class RelaxfitError(Exception):
    """Base class for errors raised by this package."""


class PhysicalityError(RelaxfitError):
    """A relaxation model would violate a physical constraint."""


class CalibrationError(RelaxfitError):
    """Calibration to the reference attenuation could not be completed."""


def _check_positive(name, value):
    if not (np.isfinite(value) and value > 0):
        raise ValueError(f"{name} must be a positive finite number, got {value!r}")


@dataclass(frozen=True)
class Medium:
    """Equilibrium acoustic medium.

    Parameters
    ----------
    c0 : float
        Equilibrium speed of sound [m/s].
    rho0 : float
        Density [kg/m^3].
    kappa0 : float, optional
        Zero-frequency compressibility [1/Pa].  Derived from ``c0`` and
        ``rho0`` when omitted; when given it must agree with them.
    """

    c0: float
    rho0: float
    kappa0: float = None

    def __post_init__(self):
        _check_positive("c0", self.c0)
        _check_positive("rho0", self.rho0)
        derived = 1.0 / (self.c0**2 * self.rho0)
        if self.kappa0 is None:
            object.__setattr__(self, "kappa0", derived)
        else:
            _check_positive("kappa0", self.kappa0)
            if abs(self.kappa0 - derived) > 1e-12 * derived:
                raise ValueError(
                    f"kappa0={self.kappa0!r} inconsistent with 1/(c0^2 rho0)={derived!r}"
                )

    @property
    def small_attenuation_factor(self) -> float:
        """Scalar ``sqrt(rho0/kappa0)/2`` linking loss integrals to Np/m."""
        return 0.5 * math.sqrt(self.rho0 / self.kappa0)


@dataclass(frozen=True)
class PowerLawTarget:
    """Wanted attenuation law ``alpha_ref * (omega/omega_ref)**eta``.

    ``omega_lo``/``omega_hi`` delimit the band (rad/s) over which the law
    should hold; they are also the edges of the populated relaxation band.
    """

    eta: float
    alpha_ref: float
    omega_ref: float
    omega_lo: float
    omega_hi: float

    def __post_init__(self):
        if not (0.0 <= self.eta <= 2.0):
            raise ValueError(f"eta must lie in [0, 2], got {self.eta!r}")
        _check_positive("alpha_ref", self.alpha_ref)
        _check_positive("omega_lo", self.omega_lo)
        _check_positive("omega_hi", self.omega_hi)
        if not self.omega_lo < self.omega_hi:
            raise ValueError("omega_lo must be below omega_hi")
        if not (self.omega_lo <= self.omega_ref <= self.omega_hi):
            raise ValueError("omega_ref must lie inside [omega_lo, omega_hi]")

    @property
    def band(self):
        return (self.omega_lo, self.omega_hi)


@dataclass(frozen=True)
class FrequencyGrid:
    """Strictly increasing, positive angular frequencies [rad/s]."""

    samples: np.ndarray = field(repr=False)

    def __post_init__(self):
        s = np.array(self.samples, dtype=float).ravel()
        if s.size == 0:
            raise ValueError("frequency grid is empty")
        if not np.all(np.isfinite(s)) or np.any(s <= 0):
            raise ValueError("frequency grid samples must be positive and finite")
        if np.any(np.diff(s) <= 0):
            raise ValueError("frequency grid must be strictly increasing")
        s.setflags(write=False)
        object.__setattr__(self, "samples", s)

    def __len__(self):
        return self.samples.size

    def __iter__(self):
        return iter(self.samples)

    def within(self, band):
        """Boolean mask of samples inside ``band`` (edges inclusive)."""
        lo, hi = band
        return (self.samples >= lo) & (self.samples <= hi)


def make_log_grid(omega_lo, omega_hi, n_points) -> FrequencyGrid:
    """Geometrically spaced grid with exact end points."""
    if not (omega_lo > 0 and omega_hi > 0):
        raise ValueError("grid bounds must be positive")
    if not omega_lo < omega_hi:
        raise ValueError("omega_lo must be below omega_hi")
    if int(n_points) != n_points or n_points < 2:
        raise ValueError("n_points must be an integer >= 2")
    n_points = int(n_points)
    samples = np.geomspace(omega_lo, omega_hi, n_points)
    samples[0], samples[-1] = omega_lo, omega_hi
    return FrequencyGrid(samples)


def attenuation_db_per_cm_to_np_per_m(a):
    return a * 100.0 / DB_PER_NEPER


def attenuation_np_per_m_to_db_per_cm(a):
    return a * DB_PER_NEPER / 100.0


def hz_to_angular(f):
    return 2.0 * math.pi * f if np.isscalar(f) else 2.0 * np.pi * np.asarray(f)


def angular_to_hz(omega):
    return omega / (2.0 * math.pi)
