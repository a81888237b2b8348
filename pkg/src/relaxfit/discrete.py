"""Discrete relaxation mechanisms mimicking a band-limited power law.

The recipe:

1. pick the Zener regime whose attenuation exponent matches ``eta`` and put
   ``1/tau_sigma`` far outside the band (or use the bare power law
   ``Omega**(eta - 2)``);
2. place ``N`` relaxation frequencies evenly in ``log(Omega)`` over the band;
3. weight each sampled density by its (geometric) step;
4. scale all weights so the attenuation hits ``alpha_ref`` at ``omega_ref``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field, replace

import numpy as np
from scipy.optimize import brentq

from .continuum import ContinuousDistribution, kappa_prime
from .core import CalibrationError, Medium, PhysicalityError, PowerLawTarget
from .dispersion import attenuation
from .zener import ZenerParams, default_tau_sigma_margin, regime_for_target

ZENER_EXACT = "zener_exact"
POWER_LAW = "power_law"
MODES = (ZENER_EXACT, POWER_LAW)

CALIBRATION_RTOL = 1e-9


@dataclass(frozen=True)
class RelaxationMechanism:
    """One relaxation process.

    ``weight`` is the compressibility contribution ``density * step`` [1/Pa].
    """

    omega_nu: float
    density: float
    step: float

    def __post_init__(self):
        if not self.omega_nu > 0:
            raise ValueError("relaxation frequency must be positive")
        if not self.density >= 0:
            raise ValueError("density must be non-negative")
        if not self.step > 0:
            raise ValueError("step must be positive")

    @property
    def weight(self):
        return self.density * self.step


@dataclass(frozen=True)
class RelaxationSet:
    """N relaxation mechanisms on top of the static compressibility ``kappa0``.

    ``source`` (the Zener parameters densities were sampled from, if any),
    ``target``, ``mode`` and ``scale`` record how the set was produced;
    ``scale`` is the factor applied to the source densities.
    """

    mechanisms: tuple
    kappa0: float
    target: PowerLawTarget | None = None
    source: ZenerParams | None = None
    mode: str | None = None
    scale: float = 1.0
    _omega: np.ndarray = field(init=False, repr=False, compare=False)
    _weight: np.ndarray = field(init=False, repr=False, compare=False)

    def __post_init__(self):
        mechs = tuple(self.mechanisms)
        object.__setattr__(self, "mechanisms", mechs)
        if not self.kappa0 > 0:
            raise ValueError("kappa0 must be positive")
        om = np.array([m.omega_nu for m in mechs], dtype=float)
        wt = np.array([m.weight for m in mechs], dtype=float)
        if np.any(np.diff(om) <= 0):
            raise ValueError("mechanisms must be sorted by strictly increasing omega_nu")
        if wt.sum() >= self.kappa0:
            raise PhysicalityError(
                f"sum of weights {wt.sum():.6e} must stay below kappa0 {self.kappa0:.6e}"
            )
        object.__setattr__(self, "_omega", om)
        object.__setattr__(self, "_weight", wt)

    def __len__(self):
        return len(self.mechanisms)

    @property
    def frequencies(self):
        return self._omega.copy()

    @property
    def weights(self):
        return self._weight.copy()

    @property
    def band(self):
        if not self.mechanisms:
            raise ValueError("empty relaxation set has no band")
        return (float(self._omega[0]), float(self._omega[-1]))

    def compressibility(self, omega):
        return discrete_compressibility(self, omega)

    def scaled(self, factor):
        """Copy with every density multiplied by ``factor``."""
        mechs = [replace(m, density=m.density * factor) for m in self.mechanisms]
        return replace(self, mechanisms=tuple(mechs), scale=self.scale * factor)

    @property
    def tau_epsilon(self):
        """``tau_epsilon`` realizing the current scale, or None.

        Scaling the densities by ``s`` is the same as replacing
        ``tau_sigma**a - tau_epsilon**a`` by ``s`` times itself; when that
        would require ``tau_epsilon**a <= 0`` there is no such value.
        """
        p = self.source
        if p is None:
            return None
        a = p.alpha
        te_a = p.tau_sigma**a - self.scale * (p.tau_sigma**a - p.tau_epsilon**a)
        if te_a <= 0:
            return None
        return te_a ** (1.0 / a)

    def continuum(self):
        """The band-limited continuum this set discretizes (zener_exact mode only)."""
        if self.source is None or not self.mechanisms:
            raise ValueError("set was not sampled from a Zener density")
        lo, hi = self.target.band if self.target is not None else self.band
        return ContinuousDistribution.zener(self.source, (lo, hi), scale=self.scale)


def select_frequencies(n, omega_lo, omega_hi):
    """Relaxation frequencies evenly spaced in ``log(Omega)``, end points included.

    A single mechanism sits at the geometric mean of the band.
    """
    if int(n) != n or n < 1:
        raise ValueError("need at least one mechanism")
    if not (0 < omega_lo < omega_hi):
        raise ValueError("require 0 < omega_lo < omega_hi")
    n = int(n)
    if n == 1:
        return np.array([math.sqrt(omega_lo * omega_hi)])
    nu = np.arange(1, n + 1)
    out = omega_lo ** ((n - nu) / (n - 1)) * omega_hi ** ((nu - 1) / (n - 1))
    out[0], out[-1] = omega_lo, omega_hi
    return out


def step_sizes(frequencies, omega_lo, omega_hi):
    """Quadrature steps ``Omega_nu * (1 - (omega_lo/omega_hi)**(1/(N-1)))``.

    For a single mechanism the whole band width is used.
    """
    f = np.asarray(frequencies, dtype=float)
    n = f.size
    if n == 0:
        raise ValueError("no frequencies")
    if n == 1:
        return np.array([omega_hi - omega_lo])
    return f * (1.0 - (omega_lo / omega_hi) ** (1.0 / (n - 1)))


def discrete_compressibility(rset: RelaxationSet, omega):
    """``kappa0 - i w sum_nu weight_nu / (Omega_nu + i w)`` for scalar or array ``omega``."""
    w = np.asarray(omega, dtype=float)
    if np.any(w < 0):
        raise ValueError("omega must be non-negative")
    om, wt = rset._omega, rset._weight
    if om.size == 0:
        out = np.full(w.shape, rset.kappa0, dtype=complex)
    else:
        out = rset.kappa0 - 1j * w * np.sum(wt / (om + 1j * w[..., None]), axis=-1)
    return complex(out) if out.ndim == 0 else out


def mechanism_attenuation(m: RelaxationMechanism, medium: Medium, omega):
    """Small-attenuation contribution of a single mechanism [Np/m]."""
    w = np.asarray(omega, dtype=float)
    out = medium.small_attenuation_factor * m.weight * m.omega_nu * w * w / (w * w + m.omega_nu**2)
    return float(out) if out.ndim == 0 else out


def set_attenuation(rset, medium, omega):
    return attenuation(discrete_compressibility(rset, omega), medium.rho0, omega)


def _raw_densities(target, n, mode, margin):
    """Frequencies, steps, densities and the Zener source (or None)."""
    lo, hi = target.band
    regime = regime_for_target(target.eta)
    alpha = regime.alpha
    degenerate = (mode == ZENER_EXACT and alpha == 1.0) or (mode == POWER_LAW and target.eta == 0.0)
    if degenerate:
        # a single mechanism far outside the band: omega**2 (eta = 2) or flat (eta = 0)
        m = margin if margin is not None else default_tau_sigma_margin(1.0)
        omega_nu = hi * m if target.eta == 2.0 else lo / m
        return np.array([omega_nu]), np.array([omega_nu]), np.array([1.0]), None

    freqs = select_frequencies(n, lo, hi)
    steps = step_sizes(freqs, lo, hi)
    if mode == POWER_LAW or regime.regime == "unified":
        return freqs, steps, freqs**regime.exponent, None

    m = margin if margin is not None else default_tau_sigma_margin(alpha)
    tau_sigma = 1.0 / (m * hi) if regime.tau_sigma_side == "above" else m / lo
    # tau_eps**a = tau_sig**a / 2; any value works, calibration rescales
    source = ZenerParams(alpha, alpha, tau_sigma, tau_sigma * 0.5 ** (1.0 / alpha), 1.0)
    return freqs, steps, kappa_prime(source, freqs), source


def build_relaxation_set(target: PowerLawTarget, medium: Medium, n, mode=POWER_LAW,
                         tau_sigma_margin=None) -> RelaxationSet:
    """Construct and calibrate a relaxation set for ``target``.

    Parameters
    ----------
    target : PowerLawTarget
        Wanted law and band; the band edges are the outermost relaxation
        frequencies.
    medium : Medium
    n : int
        Number of mechanisms (>= 1).
    mode : {"power_law", "zener_exact"}
        Sample the bare power law ``Omega**(eta-2)`` or the full Zener
        relaxation density.
    tau_sigma_margin : float, optional
        Ratio between ``1/tau_sigma`` and the nearest band edge in
        ``zener_exact`` mode.  Defaults to a value that keeps the sampled
        density within 1% of its regime power law.
    """
    if mode not in MODES:
        raise ValueError(f"mode must be one of {MODES}, got {mode!r}")
    if int(n) != n or n < 1:
        raise ValueError("need at least one mechanism")
    if tau_sigma_margin is not None and not tau_sigma_margin > 1:
        raise ValueError("tau_sigma_margin must exceed 1")

    freqs, steps, dens, source = _raw_densities(target, n, mode, tau_sigma_margin)
    if source is not None:
        # densities were drawn with kappa0 = 1; carry the medium's value
        source = replace(source, kappa0=medium.kappa0)
        dens = dens * medium.kappa0

    # first guess from the small-attenuation sum at the reference frequency
    w = target.omega_ref
    weights = dens * steps
    lin = medium.small_attenuation_factor * w * w * np.sum(weights * freqs / (freqs**2 + w * w))
    s0 = target.alpha_ref / lin
    s0 = min(s0, 0.5 * medium.kappa0 / weights.sum())

    mechs = tuple(RelaxationMechanism(float(o), float(d * s0), float(st))
                  for o, d, st in zip(freqs, dens, steps))
    raw = RelaxationSet(mechs, medium.kappa0, target=target, source=source, mode=mode, scale=s0)
    return calibrate(raw, target, medium)


def calibrate(rset: RelaxationSet, target: PowerLawTarget, medium: Medium) -> RelaxationSet:
    """Scale all weights so that the attenuation at ``omega_ref`` equals ``alpha_ref``.

    Bracketed root finding (Brent) on the multiplicative weight factor; the
    bracket grows geometrically from 1 and is capped by the physical limit
    ``sum(weights) < kappa0``.
    """
    if not rset.mechanisms:
        raise CalibrationError("cannot calibrate an empty relaxation set")
    if np.any(rset._weight <= 0):
        raise CalibrationError("calibration needs strictly positive weights")
    w, a_ref = target.omega_ref, target.alpha_ref
    om, wt = rset._omega, rset._weight
    kernel = 1j * w * np.sum(wt / (om + 1j * w))

    def alpha_at(s):
        return attenuation(rset.kappa0 - s * kernel, medium.rho0, w)

    def resid(s):
        return alpha_at(s) / a_ref - 1.0

    if abs(resid(1.0)) <= 1e-12:
        return rset

    s_max = rset.kappa0 / wt.sum() * (1.0 - 1e-12)
    lo = hi = min(1.0, s_max)
    if resid(hi) < 0:
        while resid(hi) < 0:
            if hi >= s_max:
                raise PhysicalityError(
                    f"alpha_ref={a_ref:.6g} Np/m is unreachable while keeping the sum of "
                    f"weights below kappa0; maximum attainable is {alpha_at(s_max):.6g} Np/m"
                )
            lo, hi = hi, min(hi * 10.0, s_max)
    else:
        while resid(lo) > 0:
            if lo < 1e-300:
                raise CalibrationError("could not bracket the calibration factor from below")
            hi, lo = lo, lo / 10.0
    if resid(hi) == 0:
        s = hi
    else:
        s = brentq(resid, lo, hi, xtol=1e-300, rtol=4 * np.finfo(float).eps, maxiter=500)
    out = rset.scaled(s)
    achieved = set_attenuation(out, medium, w)
    if abs(achieved - a_ref) > CALIBRATION_RTOL * a_ref:
        raise CalibrationError(
            f"calibration reached {achieved!r} Np/m instead of {a_ref!r} Np/m"
        )
    return out
