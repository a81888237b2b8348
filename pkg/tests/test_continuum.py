import cmath
import math
from types import SimpleNamespace

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from relaxfit.continuum import (
    ContinuousDistribution,
    DegenerateDistributionError,
    asymptotic_band_attenuation_check,
    bandlimited_equivalence_gap,
    continuum_compressibility,
    kappa_prime,
    oracle_compressibility,
    regime_constants,
    relaxation_integrals,
)
from relaxfit.core import PhysicalityError, make_log_grid
from relaxfit.discrete import RelaxationMechanism, RelaxationSet
from relaxfit.zener import ZenerParams, zener_compressibility


def stieltjes_density(p, Omega):
    """Independent route to the density: -Im kappa_Z(-Omega + i0) / (pi*Omega)."""
    ph = cmath.exp(1j * math.pi * p.alpha)
    k = p.kappa0 * (1 + (Omega * p.tau_epsilon) ** p.alpha * ph) / (1 + (Omega * p.tau_sigma) ** p.alpha * ph)
    return -k.imag / (math.pi * Omega)


def test_kappa_prime_collapsed_example():
    p = ZenerParams(0.5, 0.5, 1.0, 0.25, 1.0)
    assert kappa_prime(p, 1.0) == pytest.approx(1.0 / (4.0 * math.pi), rel=1e-15)


def test_kappa_prime_tissue_fit_fixture():
    # a low-regime source for eta = 1.1 with tau_sigma one decade above 30 MHz
    p = ZenerParams(0.1, 0.1, 1.0 / (2 * math.pi * 3e8), 0.5**10 / (2 * math.pi * 3e8), 4.0157739601153330e-10)
    O = 2 * math.pi * 1e6
    assert kappa_prime(p, O) == pytest.approx(stieltjes_density(p, O), rel=1e-13)


@settings(max_examples=60)
@given(st.floats(0.05, 0.95), st.floats(0.01, 0.99), st.floats(-8, 8))
def test_kappa_prime_matches_stieltjes_inversion(a, r, lo):
    p = ZenerParams(a, a, 1.0, r, 1.0)
    O = 10.0**lo
    assert kappa_prime(p, O) == pytest.approx(stieltjes_density(p, O), rel=1e-9)


def test_kappa_prime_rejections():
    with pytest.raises(DegenerateDistributionError):
        kappa_prime(ZenerParams(1.0, 1.0, 1.0, 0.5, 1.0), 1.0)
    with pytest.raises(ValueError):
        kappa_prime(ZenerParams(0.5, 0.4, 1.0, 0.5, 1.0), 1.0)
    with pytest.raises(ValueError):
        kappa_prime(ZenerParams(0.5, 0.5, 1.0, 0.5, 1.0), 0.0)


@pytest.mark.parametrize("a", [0.1, 0.3, 0.7, 0.95])
def test_kappa_prime_positive_and_decreasing_past_tau(a):
    p = ZenerParams(a, a, 1.0, 0.2, 1.0)
    v = kappa_prime(p, np.geomspace(1.0, 1e8, 2000))
    assert np.all(v > 0) and np.all(np.diff(v) < 0)
    assert np.all(kappa_prime(p, np.geomspace(1e-8, 1.0, 200)) > 0)


def test_regime_constants_unit_case():
    rc = regime_constants(SimpleNamespace(alpha=0.5, tau_sigma=1.0, tau_epsilon=0.0, kappa0=math.pi))
    assert (rc.c_low, rc.c_mid, rc.c_high) == pytest.approx((1.0, 0.5, 1.0), rel=1e-15)


def test_regime_constants_fixture_and_ratio():
    a, ts, te, k0 = 0.1, 1e-9, 0.9e-9, 4.0158e-10
    p = ZenerParams(a, a, ts, te, k0)
    rc = regime_constants(p)
    base = k0 * (ts**a - te**a) * math.sin(a * math.pi) / math.pi
    assert rc.c_low == pytest.approx(base, rel=1e-14)
    assert rc.c_mid == pytest.approx(base / (2 * ts**a * (1 + math.cos(a * math.pi))), rel=1e-14)
    assert rc.c_high / rc.c_low == pytest.approx(ts ** (-2 * a), rel=1e-13)
    with pytest.raises(ValueError):
        regime_constants(SimpleNamespace(alpha=1.0, tau_sigma=1.0, tau_epsilon=0.0, kappa0=1.0))


@pytest.mark.parametrize("a", [0.5, 0.8])
def test_regime_asymptotes(a):
    p = ZenerParams(a, a, 2e-3, 1e-3, 3.0)
    rc = regime_constants(p)
    ts = p.tau_sigma
    O = 1e-8 / ts
    assert kappa_prime(p, O) * O ** (1 - a) == pytest.approx(rc.c_low, rel=1e-6)
    O = 1e-6 / ts
    assert kappa_prime(p, O) == pytest.approx(rc.c_low * O ** (a - 1), rel=0.02)
    O = 1.0 / ts
    assert kappa_prime(p, O) * O == pytest.approx(rc.c_mid, rel=1e-13)
    O = 1e6 / ts
    assert kappa_prime(p, O) == pytest.approx(rc.c_high * O ** (-a - 1), rel=0.02)


@pytest.mark.parametrize("a", [0.1, 0.2, 0.5, 0.8])
def test_regime_asymptotes_leading_correction(a):
    # next-order terms are 2 cos(a pi) (O tau)**a on either side of 1/tau_sigma
    p = ZenerParams(a, a, 1.0, 0.5, 1.0)
    rc = regime_constants(p)
    x = 1e-7 ** (1.0 / a)
    assert kappa_prime(p, x) * x ** (1 - a) == pytest.approx(rc.c_low, rel=2.5e-7)
    x = 1.0 / x
    assert kappa_prime(p, x) * x ** (1 + a) == pytest.approx(rc.c_high, rel=2.5e-7)


def test_distribution_validation():
    p = ZenerParams(0.5, 0.5, 1.0, 0.5, 1.0)
    assert ContinuousDistribution.zener(p).full_band
    with pytest.raises(ValueError):
        ContinuousDistribution.zener(p, (2.0, 1.0))
    with pytest.raises(ValueError):
        ContinuousDistribution.power_law(1e-3, -2.0, (1.0, 10.0), 1.0)
    with pytest.raises(ValueError):
        ContinuousDistribution.power_law(1e-3, 0.5, (1.0, 10.0), 1.0)
    with pytest.raises(ValueError):
        ContinuousDistribution.power_law(1e-3, -1.0, (0.0, 10.0), 1.0)
    with pytest.raises(ValueError):
        ContinuousDistribution.power_law(-1.0, -1.0, (1.0, 10.0), 1.0)
    with pytest.raises(PhysicalityError):
        ContinuousDistribution.power_law(1.0, -1.0, (1.0, 1e6), 1.0)


def test_total_weight_closed_forms():
    d = ContinuousDistribution.power_law(0.1, -1.0, (1.0, 100.0), 10.0)
    assert d.total_weight == pytest.approx(0.1 * math.log(100.0))
    d = ContinuousDistribution.power_law(0.1, -0.5, (1.0, 100.0), 10.0)
    assert d.total_weight == pytest.approx(0.1 * 2 * (10.0 - 1.0))


def test_density_is_zero_outside_band():
    d = ContinuousDistribution.power_law(0.1, -1.0, (1.0, 100.0), 10.0)
    assert d.density(0.5) == 0.0 and d.density(200.0) == 0.0
    assert d.density(10.0) == pytest.approx(0.01)


def test_zero_frequency_returns_kappa0():
    d = ContinuousDistribution.zener(ZenerParams(0.3, 0.3, 1.0, 0.5, 2.0))
    assert continuum_compressibility(d, 0.0) == 2.0
    with pytest.raises(ValueError):
        continuum_compressibility(d, -1.0)


def test_power_law_closed_form_d_minus_one():
    # C = 1, band [1, 100], omega = 10: both integrals are elementary
    d = ContinuousDistribution.power_law(1.0, -1.0, (1.0, 100.0), 10.0)
    w = 10.0
    R = (math.log(1e4 / (1e4 + w * w)) - math.log(1.0 / (1.0 + w * w))) / (2 * w * w)
    I = (math.atan(100.0 / w) - math.atan(1.0 / w)) / w
    ref = complex(10.0 - w * w * R, -w * I)
    assert abs(continuum_compressibility(d, w, 1e-12) - ref) <= 1e-12 * abs(ref)
    assert abs(oracle_compressibility(d, w, 1e-12) - ref) <= 1e-12 * abs(ref)


@pytest.mark.parametrize("a", [0.3, 0.6])
@pytest.mark.parametrize("x", [1e-4, 1e-2, 1.0, 1e2, 1e4])
def test_full_band_identity(a, x):
    p = ZenerParams(a, a, 1e-6, 4e-7, 4e-10)
    d = ContinuousDistribution.zener(p)
    k = continuum_compressibility(d, x / p.tau_sigma, 1e-9)
    ref = zener_compressibility(p, x / p.tau_sigma)
    assert abs(k - ref) <= 1e-8 * abs(ref)
    # the relaxation part alone is also accurate
    assert abs(k - ref) <= 1e-8 * abs(p.kappa0 - ref)


def test_integral_error_estimates_are_small():
    p = ZenerParams(0.4, 0.4, 1.0, 0.5, 1.0)
    vals, errs = relaxation_integrals(ContinuousDistribution.zener(p), 3.0, 1e-10)
    assert np.all(errs <= 1e-10 * np.abs(vals) * 10)


def test_gap_vanishes_for_full_band():
    p = ZenerParams(0.3, 0.3, 1.0, 0.5, 1.0)
    assert bandlimited_equivalence_gap(p, (0.0, math.inf), 1.0) < 1e-12


def test_gap_at_band_edge():
    p = ZenerParams(0.5, 0.5, 1.0, 0.5, 1.0)
    band = (1e-4, 1e4)
    full = ContinuousDistribution.zener(p)
    limited = ContinuousDistribution.zener(p, band)

    def relaxation_gap(w):
        kf = full.compressibility(w)
        return abs(limited.compressibility(w) - kf) / abs(p.kappa0 - kf)

    # measured against the relaxation part alone the edge gap is order one
    assert relaxation_gap(1e-4) > 0.3
    assert relaxation_gap(1.0) < 0.02
    # the total compressibility is dominated by kappa0, so the op stays small
    assert bandlimited_equivalence_gap(p, band, 1e-4) < 1e-2


def test_asymptotic_slopes_distribution_and_impulse():
    d = ContinuousDistribution.power_law(1e-3, -0.5, (1.0, 1e4), 1.0)
    grid = np.concatenate([np.geomspace(1e-5, 1e-3, 10), np.geomspace(1e7, 1e9, 10)])
    lo, hi = asymptotic_band_attenuation_check(d, grid)
    assert abs(lo - 2) <= 0.05 and abs(hi) <= 0.05
    one = RelaxationSet((RelaxationMechanism(100.0, 1e-5, 1.0),), 1.0)
    lo, hi = asymptotic_band_attenuation_check(one, np.concatenate([np.geomspace(1e-2, 1.0, 10),
                                                                    np.geomspace(1e4, 1e6, 10)]))
    assert abs(lo - 2) <= 0.05 and abs(hi) <= 0.05


def test_asymptotic_check_rejects_overlap_and_handles_one_side():
    d = ContinuousDistribution.power_law(1e-3, -0.5, (1.0, 1e4), 1.0)
    with pytest.raises(ValueError):
        asymptotic_band_attenuation_check(d, make_log_grid(1e-3, 10.0, 10))
    lo, hi = asymptotic_band_attenuation_check(d, make_log_grid(1e-5, 1e-3, 5))
    assert hi is None and abs(lo - 2) < 0.05
    with pytest.raises(ValueError):
        asymptotic_band_attenuation_check(ContinuousDistribution.zener(ZenerParams(0.5, 0.5, 1, 0.5, 1)), [1.0])
