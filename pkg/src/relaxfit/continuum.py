"""Continuous relaxation distributions and their compressibility.

The compressibility of a relaxation continuum ``kappa_nu(Omega)`` is

    kappa(w) = kappa0 - w^2 * R(w) - i*w * I(w)
    R(w) = int kappa_nu(O) / (O^2 + w^2) dO
    I(w) = int O * kappa_nu(O) / (O^2 + w^2) dO

Both integrals are evaluated in ``u = ln(Omega)`` where the integrands are
smooth and close to exponentials in ``u``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .core import PhysicalityError, RelaxfitError
from .dispersion import attenuation, loglog_slope_arrays
from .quadrature import adaptive_gk, richardson_gl
from .zener import ZenerParams

ZENER_EXACT = "zener_exact"
POWER_LAW = "power_law"

# largest span of ln(Omega) used when a band edge is 0 or infinity
_LN_FLOOR = math.log(1e-280)
_LN_CEIL = math.log(1e280)


class DegenerateDistributionError(RelaxfitError, ValueError):
    """The Mittag-Leffler related density vanishes identically (alpha = 1)."""


def _check_alpha(p):
    if p.alpha != p.beta:
        raise ValueError("relaxation density is only defined for alpha == beta")
    if p.alpha >= 1.0:
        raise DegenerateDistributionError("alpha = 1 gives an identically zero density")


def kappa_prime(p: ZenerParams, Omega):
    """Relaxation density whose full-band continuum equals the Zener model.

    Parameters
    ----------
    p : ZenerParams
        Must satisfy ``alpha == beta < 1``.
    Omega : float or array_like
        Relaxation frequency [rad/s], strictly positive.

    Returns
    -------
    density : float or ndarray
        Compressibility per unit relaxation frequency [1/Pa * s].
    """
    _check_alpha(p)
    O = np.asarray(Omega, dtype=float)
    if np.any(O <= 0):
        raise ValueError("Omega must be positive")
    a = p.alpha
    xa = (p.tau_sigma * O) ** a
    num = p.kappa0 * (p.tau_sigma**a - p.tau_epsilon**a) * math.sin(a * math.pi) / math.pi
    out = num * O ** (a - 1.0) / (xa * xa + 2.0 * xa * math.cos(a * math.pi) + 1.0)
    return float(out) if out.ndim == 0 else out


@dataclass(frozen=True)
class RegimeConstants:
    c_low: float
    c_mid: float
    c_high: float


def regime_constants(p) -> RegimeConstants:
    """Amplitudes of the low, intermediate and high power-law regimes.

    ``kappa_prime`` behaves like ``c_low*O**(a-1)`` for ``O*tau_sigma << 1``,
    ``c_mid/O`` near ``O*tau_sigma = 1`` and ``c_high*O**(-a-1)`` above.
    """
    a = p.alpha
    if not (0.0 < a < 1.0):
        raise ValueError("regime constants need 0 < alpha < 1")
    base = p.kappa0 * (p.tau_sigma**a - p.tau_epsilon**a) * math.sin(a * math.pi) / math.pi
    return RegimeConstants(
        c_low=base,
        c_mid=base / (2.0 * p.tau_sigma**a * (1.0 + math.cos(a * math.pi))),
        c_high=base / p.tau_sigma ** (2.0 * a),
    )


@dataclass(frozen=True)
class ContinuousDistribution:
    """A relaxation density populated on ``band``.

    Use :meth:`zener` or :meth:`power_law` to construct.  ``scale``
    multiplies the Zener density (it is what calibration adjusts).
    """

    kind: str
    kappa0: float
    band: tuple = (0.0, math.inf)
    params: ZenerParams | None = None
    amplitude: float | None = None
    exponent: float | None = None
    scale: float = 1.0

    def __post_init__(self):
        lo, hi = self.band
        if not (0.0 <= lo < hi):
            raise ValueError(f"invalid band {self.band!r}")
        if not self.kappa0 > 0:
            raise ValueError("kappa0 must be positive")
        if self.kind == ZENER_EXACT:
            if self.params is None:
                raise ValueError("zener_exact distribution needs ZenerParams")
            _check_alpha(self.params)
            if not self.scale > 0:
                raise ValueError("scale must be positive")
        elif self.kind == POWER_LAW:
            if not (-2.0 < self.exponent <= 0.0):
                raise ValueError("power-law exponent must satisfy -2 < d <= 0")
            if not self.amplitude > 0:
                raise ValueError("power-law amplitude must be positive")
            if lo <= 0.0 or math.isinf(hi):
                raise ValueError("power-law distributions must be band-limited")
            if self.total_weight >= self.kappa0:
                raise PhysicalityError(
                    f"integrated density {self.total_weight:.6g} must stay below kappa0={self.kappa0:.6g}")
        else:
            raise ValueError(f"unknown distribution kind {self.kind!r}")

    @property
    def total_weight(self):
        """Integral of a power-law density over its band (None for Zener kind)."""
        if self.kind != POWER_LAW:
            return None
        lo, hi = self.band
        e = self.exponent + 1.0
        if e == 0.0:
            return self.amplitude * math.log(hi / lo)
        return self.amplitude * (hi**e - lo**e) / e

    @classmethod
    def zener(cls, params, band=(0.0, math.inf), scale=1.0):
        return cls(ZENER_EXACT, params.kappa0, tuple(band), params=params, scale=scale)

    @classmethod
    def power_law(cls, amplitude, exponent, band, kappa0):
        return cls(POWER_LAW, kappa0, tuple(band), amplitude=amplitude, exponent=exponent)

    @property
    def full_band(self):
        return self.band[0] == 0.0 and math.isinf(self.band[1])

    def density(self, Omega):
        O = np.asarray(Omega, dtype=float)
        inside = (O >= self.band[0]) & (O <= self.band[1]) & (O > 0)
        safe = np.where(inside, O, 1.0)
        if self.kind == ZENER_EXACT:
            vals = self.scale * kappa_prime(self.params, safe)
        else:
            vals = self.amplitude * safe**self.exponent
        out = np.where(inside, vals, 0.0)
        return float(out) if out.ndim == 0 else out

    def compressibility(self, omega, tol=1e-9):
        return continuum_compressibility(self, omega, tol)


def _kernels(dist, omega):
    """Integrand in ``u = ln(Omega)`` for (R, I)."""
    w = float(omega)

    def f(u):
        O = np.exp(u)
        dens = dist.density(O)
        with np.errstate(over="ignore", divide="ignore"):
            kr = 1.0 / (O + (w * w) / O)
            ki = 1.0 / (1.0 + (w / O) ** 2)
        return np.vstack([dens * kr, dens * ki])

    return f


def _log_limits(dist, omega, tol):
    """Integration limits in ln(Omega) plus the analytic tails of a Zener density."""
    lo, hi = dist.band
    tail = np.zeros(2)
    tail_err = np.zeros(2)
    w = float(omega)
    if dist.kind == POWER_LAW:
        return math.log(lo), math.log(hi), tail, tail_err

    p = dist.params
    a = p.alpha
    rc = regime_constants(p)
    inv_tau = 1.0 / p.tau_sigma
    eps = tol * 1e-3
    if lo > 0.0:
        ua = math.log(lo)
    else:
        ua = max(math.log(min(w, inv_tau)) + math.log(eps) / a, _LN_FLOOR)
        Oa = math.exp(ua)
        # kappa' ~ c_low*O**(a-1) and O << w below the cut
        t = dist.scale * rc.c_low * np.array([Oa**a / (a * w * w), Oa ** (a + 1) / ((a + 1) * w * w)])
        tail += t
        tail_err += np.abs(t) * (2.0 * (Oa * p.tau_sigma) ** a + (Oa / w) ** 2)
    if math.isfinite(hi):
        ub = math.log(hi)
    else:
        ub = min(math.log(max(w, inv_tau)) - math.log(eps) / a, _LN_CEIL)
        Ob = math.exp(ub)
        # kappa' ~ c_high*O**(-a-1) and O >> w above the cut
        t = dist.scale * rc.c_high * np.array([Ob ** (-a - 2) / (a + 2), Ob ** (-a - 1) / (a + 1)])
        tail += t
        tail_err += np.abs(t) * (2.0 * (Ob * p.tau_sigma) ** (-a) + (w / Ob) ** 2)
    return ua, ub, tail, tail_err


def relaxation_integrals(dist, omega, tol=1e-9, max_panels=4000):
    """``(R, I)`` integrals and their error estimates.

    Returns
    -------
    values, errors : ndarray of shape (2,)
    """
    if not omega > 0:
        raise ValueError("integrals are only needed for omega > 0")
    ua, ub, tail, tail_err = _log_limits(dist, omega, tol)
    breaks = [math.log(omega)]
    if dist.kind == ZENER_EXACT:
        breaks.append(-math.log(dist.params.tau_sigma))
    # keep initial panels a few e-folds wide
    n0 = max(1, int(math.ceil((ub - ua) / 4.0)))
    breaks.extend(np.linspace(ua, ub, n0 + 1)[1:-1])
    vals, errs = adaptive_gk(_kernels(dist, omega), ua, ub, rtol=tol, breakpoints=breaks,
                             max_panels=max_panels)
    return vals + tail, errs + tail_err


def continuum_compressibility(dist: ContinuousDistribution, omega, tol=1e-9):
    """Compressibility of a relaxation continuum at ``omega`` (scalar).

    Raises :class:`~relaxfit.quadrature.QuadratureError` when the adaptive
    rule cannot reach ``tol``.
    """
    if omega < 0:
        raise ValueError("omega must be non-negative")
    if omega == 0:
        return complex(dist.kappa0)
    (r, i), _ = relaxation_integrals(dist, omega, tol)
    return complex(dist.kappa0 - omega * omega * r, -omega * i)


def oracle_compressibility(dist: ContinuousDistribution, omega, tol=1e-9):
    """Same quantity as :func:`continuum_compressibility` by an independent route.

    Uniform composite Gauss-Legendre with Richardson refinement.  Unbounded
    band edges are cut where the Zener density tails fall below ``tol**2``
    relative; no tail corrections are added.
    """
    if omega == 0:
        return complex(dist.kappa0)
    lo, hi = dist.band
    if dist.kind == ZENER_EXACT:
        a = dist.params.alpha
        inv_tau = 1.0 / dist.params.tau_sigma
        reach = -2.0 * math.log(tol) / a
        ua = math.log(lo) if lo > 0 else max(math.log(min(omega, inv_tau)) - reach, _LN_FLOOR)
        ub = math.log(hi) if math.isfinite(hi) else min(math.log(max(omega, inv_tau)) + reach, _LN_CEIL)
    else:
        ua, ub = math.log(lo), math.log(hi)
    panels = max(8, int(math.ceil(ub - ua)))
    r, i = richardson_gl(_kernels(dist, omega), ua, ub, rtol=tol, panels=panels)
    return complex(dist.kappa0 - omega * omega * r, -omega * i)


def bandlimited_equivalence_gap(p: ZenerParams, band, omega, tol=1e-9):
    """Relative difference between band-limited and full-band Zener continua."""
    full = ContinuousDistribution.zener(p)
    limited = ContinuousDistribution.zener(p, band)
    kf = continuum_compressibility(full, omega, tol)
    kb = continuum_compressibility(limited, omega, tol)
    return abs(kb - kf) / abs(kf)


def asymptotic_band_attenuation_check(model, grid, low_factor=50.0):
    """Log-log attenuation slopes far below and far above a populated band.

    ``model`` is anything with a finite ``band`` and a
    ``compressibility(omega)`` method (continuous distributions and discrete
    relaxation sets).  Samples must sit below ``band[0]/low_factor`` or
    above ``low_factor*band[1]``; a side with fewer than two samples yields
    None.
    """
    lo, hi = model.band
    if lo <= 0 or math.isinf(hi):
        raise ValueError("asymptotic check needs a finite populated band")
    w = np.asarray(grid.samples if hasattr(grid, "samples") else grid, dtype=float)
    below = w < lo / low_factor
    above = w > hi * low_factor
    if np.any(~(below | above)):
        raise ValueError("grid overlaps the populated band")

    def slope(ws):
        if ws.size < 2:
            return None
        kap = np.array([model.compressibility(x) for x in ws])
        # rho0 only rescales the attenuation and drops out of the slope
        return loglog_slope_arrays(ws, attenuation(kap, 1.0, ws))

    return slope(w[below]), slope(w[above])
