"""Fractional Zener constitutive model."""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np


@dataclass(frozen=True)
class ZenerParams:
    """Fractional Zener parameters.

    Parameters
    ----------
    alpha, beta : float
        Fractional orders, ``0 < alpha <= 1`` and ``beta <= alpha``.
    tau_sigma, tau_epsilon : float
        Relaxation times [s], ``tau_sigma > tau_epsilon > 0``.
    kappa0 : float
        Zero-frequency compressibility [1/Pa].
    """

    alpha: float
    beta: float
    tau_sigma: float
    tau_epsilon: float
    kappa0: float

    def __post_init__(self):
        if not (0.0 < self.alpha <= 1.0):
            raise ValueError(f"alpha must lie in (0, 1], got {self.alpha!r}")
        if not self.beta <= self.alpha:
            raise ValueError("beta must not exceed alpha")
        if not (self.tau_sigma > self.tau_epsilon > 0.0):
            raise ValueError("require tau_sigma > tau_epsilon > 0")
        if not self.kappa0 > 0.0:
            raise ValueError("kappa0 must be positive")


def _iw_power(omega, tau, order):
    # principal branch: arg(i*omega*tau) = pi/2 for omega > 0
    return (omega * tau) ** order * np.exp(0.5j * np.pi * order)


def zener_compressibility(p: ZenerParams, omega):
    """``kappa0 (1 + (i w tau_eps)^beta) / (1 + (i w tau_sig)^alpha)``.

    Accepts scalar or array ``omega >= 0``.
    """
    w = np.asarray(omega, dtype=float)
    if np.any(w < 0):
        raise ValueError("omega must be non-negative")
    num = 1.0 + _iw_power(w, p.tau_epsilon, p.beta)
    den = 1.0 + _iw_power(w, p.tau_sigma, p.alpha)
    out = p.kappa0 * num / den
    return complex(out) if out.ndim == 0 else out


def zener_regime_exponents(alpha):
    """Attenuation exponents (low, intermediate, high) for ``alpha = beta``."""
    if not (0.0 < alpha <= 1.0):
        raise ValueError(f"alpha must lie in (0, 1], got {alpha!r}")
    return (1.0 + alpha, 1.0 - alpha / 2.0, 1.0 - alpha)


@dataclass(frozen=True)
class RegimeSelection:
    """Which Zener regime reproduces a wanted exponent.

    ``regime`` is ``"low"``, ``"high"`` or ``"unified"`` (eta == 1).  For the
    unified case ``alpha`` is None and only the distribution exponent
    ``d = eta - 2`` is meaningful.  ``tau_sigma_side`` says where
    ``1/tau_sigma`` has to be placed relative to the band: ``"above"``,
    ``"below"`` or None.
    """

    regime: str
    alpha: float | None
    exponent: float
    tau_sigma_side: str | None


def regime_for_target(eta) -> RegimeSelection:
    if not (0.0 <= eta <= 2.0):
        raise ValueError(f"eta must lie in [0, 2], got {eta!r}")
    d = eta - 2.0
    if eta > 1.0:
        return RegimeSelection("low", eta - 1.0, d, "above")
    if eta < 1.0:
        return RegimeSelection("high", 1.0 - eta, d, "below")
    return RegimeSelection("unified", None, d, None)


def default_tau_sigma_margin(alpha, distortion=1e-2, floor=1e3, cap=1e150):
    """Factor between ``1/tau_sigma`` and the nearest band edge.

    The correction to the pure regime power law of the relaxation density
    scales like ``margin**(-alpha)``; the margin is chosen so that this stays
    below ``distortion``.
    """
    if alpha is None:
        return floor
    m = math.exp(min(math.log(1.0 / distortion) / alpha, math.log(cap)))
    return min(max(m, floor), cap)
