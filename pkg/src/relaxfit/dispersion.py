"""Dispersion relation ``k^2 = omega^2 rho0 kappa`` and its derived curves."""

from __future__ import annotations

import numpy as np


def _sqrt_kappa(kappa):
    kappa = np.asarray(kappa, dtype=complex)
    bad = (kappa.imag == 0) & (kappa.real <= 0)
    if np.any(bad):
        raise ValueError("compressibility with non-positive real part and no loss is unphysical")
    return np.sqrt(kappa)


def wavenumber(kappa, medium, omega):
    """Complex wavenumber ``omega*sqrt(rho0)*sqrt(kappa)`` [rad/m].

    The principal root is used, so ``Re k >= 0`` and ``Im k <= 0`` for any
    ``kappa`` with ``Im kappa <= 0``.
    """
    w = np.asarray(omega, dtype=float)
    if np.any(w < 0):
        raise ValueError("omega must be non-negative")
    k = w * np.sqrt(medium.rho0) * _sqrt_kappa(kappa)
    return complex(k) if np.ndim(k) == 0 else k


def attenuation(kappa, rho0, omega):
    """``-Im k`` in Np/m."""
    a = -np.asarray(omega, dtype=float) * np.sqrt(rho0) * _sqrt_kappa(kappa).imag
    a = a + 0.0  # lossless input gives -0.0
    return float(a) if np.ndim(a) == 0 else a


def phase_velocity(kappa, rho0):
    """``omega / Re k`` in m/s."""
    c = 1.0 / (np.sqrt(rho0) * _sqrt_kappa(kappa).real)
    return float(c) if np.ndim(c) == 0 else c


def loglog_slope_arrays(omega, values):
    """Least-squares slope of ``ln values`` against ``ln omega``."""
    omega = np.asarray(omega, dtype=float)
    values = np.asarray(values, dtype=float)
    if omega.size < 2:
        raise ValueError("need at least two samples for a slope")
    if np.any(values <= 0) or np.any(omega <= 0):
        raise ValueError("slope needs strictly positive samples")
    x = np.log(omega)
    if np.ptp(x) == 0:
        raise ValueError("degenerate frequency span")
    y = np.log(values)
    xc = x - x.mean()
    return float(np.dot(xc, y - y.mean()) / np.dot(xc, xc))
