import cmath
import math

import numpy as np
import pytest
from numpy.testing import assert_allclose

from wkbspec.errors import SignAnomalyError, WronskianError
from wkbspec.spectrum import (
    OperatorSpec,
    SampledFunction,
    apply_inverse,
    bs_constant,
    bs_constant_quadrature,
    complex_spectrum,
    default_truncation,
    eigenfunction,
    homogeneous_pair,
    real_spectrum,
    s_numbers,
    spectral_det,
    t_asymptotic,
)

ALPHA_23 = 2.0 / 3.0


# ---------------------------------------------------------------------------
# independent oracle: Airy function by Maclaurin series + bisection
# ---------------------------------------------------------------------------

def airy_series(x: float) -> float:
    """Ai(x) from its Maclaurin series (stdlib gamma only)."""
    f_term, f_sum = 1.0, 1.0
    g_term, g_sum = x, x
    x3 = x * x * x
    for k in range(0, 60):
        f_term *= x3 / ((3 * k + 2) * (3 * k + 3))
        f_sum += f_term
        g_term *= x3 / ((3 * k + 3) * (3 * k + 4))
        g_sum += g_term
        if abs(f_term) < 1e-18 and abs(g_term) < 1e-18:
            break
    ai0 = 3.0 ** (-2.0 / 3.0) / math.gamma(2.0 / 3.0)
    aip0 = -(3.0 ** (-1.0 / 3.0)) / math.gamma(1.0 / 3.0)
    return ai0 * f_sum + aip0 * g_sum


def first_airy_zero() -> float:
    lo, hi = 2.0, 3.0
    flo = airy_series(-lo)
    for _ in range(80):
        mid = 0.5 * (lo + hi)
        fm = airy_series(-mid)
        if flo * fm <= 0.0:
            hi = mid
        else:
            lo, flo = mid, fm
    return 0.5 * (lo + hi)


def test_airy_oracle_sanity():
    # the series oracle itself, pinned against the classical value
    assert abs(first_airy_zero() - 2.33810741045977) < 1e-11
    assert abs(airy_series(0.0) - 0.3550280538878172) < 1e-14


# ---------------------------------------------------------------------------
# Bohr-Sommerfeld constant and asymptotics
# ---------------------------------------------------------------------------

@pytest.mark.parametrize(
    "alpha, expected",
    [(2.0, math.pi / 4.0), (1.0, 2.0 / 3.0), (ALPHA_23, 3.0 * math.pi / 16.0)],
)
def test_bs_constant_closed_values(alpha, expected):
    assert_allclose(bs_constant(alpha), expected, rtol=1e-13)


@pytest.mark.parametrize("alpha", [0.5, ALPHA_23, 1.0, 1.5, 2.0, 3.0])
def test_bs_constant_vs_quadrature(alpha):
    assert abs(bs_constant(alpha) - bs_constant_quadrature(alpha)) < 1e-12


def test_t_asymptotic_alpha2_is_exact_odd_oscillator():
    for n in range(1, 8):
        assert_allclose(t_asymptotic(n, 2.0), 4.0 * n - 1.0, rtol=1e-13)


def test_t_asymptotic_values():
    assert_allclose(t_asymptotic(1, ALPHA_23), 2.0, rtol=1e-13)
    assert_allclose(t_asymptotic(1, 1.0), (0.75 * 1.5 * math.pi) ** (2.0 / 3.0), rtol=1e-13)


def test_t_asymptotic_alpha1_tracks_airy_zeros():
    # [(n - 1/4) 3 pi / 2]^{2/3} is the classical Airy-zero expansion; the
    # residual decays like n^{-2}
    for n, a_n in ((1, 2.33810741045977), (2, 4.08794944413097), (3, 5.52055982809555)):
        assert abs(t_asymptotic(n, 1.0) / a_n - 1.0) < 1e-2 / n**2


# ---------------------------------------------------------------------------
# real spectrum
# ---------------------------------------------------------------------------

def test_real_spectrum_alpha2_odd_oscillator():
    ts = real_spectrum(2.0, 5)
    assert_allclose(ts, [3.0, 7.0, 11.0, 15.0, 19.0], atol=1e-8)


def test_real_spectrum_alpha1_first_airy_zero():
    t1 = real_spectrum(1.0, 1)[0]
    assert abs(t1 - first_airy_zero()) < 1e-7


def test_real_spectrum_truncation_robustness():
    t_hi = 1.3 * t_asymptotic(3, ALPHA_23)
    x_def = default_truncation(ALPHA_23, t_hi)
    a = real_spectrum(ALPHA_23, 3, X=x_def)
    b = real_spectrum(ALPHA_23, 3, X=1.3 * x_def)
    for ta, tb in zip(a, b):
        assert abs(ta - tb) < 1e-8


def test_real_spectrum_rejects_small_truncation():
    with pytest.raises(ValueError):
        real_spectrum(2.0, 3, X=2.0)


def test_asymptotic_trend_alpha1():
    ts = real_spectrum(1.0, 20)
    dev = [abs(t / t_asymptotic(n, 1.0) - 1.0) for n, t in enumerate(ts, start=1)]
    assert all(d < 0.02 for d in dev[4:])
    assert dev[19] < dev[4]


def test_real_spectrum_noninteger_alpha():
    # fractional exponents above 1 stress the boundary clamp at x = 0
    ts = real_spectrum(1.5, 3)
    dev = [abs(t / t_asymptotic(n, 1.5) - 1.0) for n, t in enumerate(ts, start=1)]
    assert all(t > 0 for t in ts)
    assert dev[2] < dev[1] < dev[0] < 0.01


# ---------------------------------------------------------------------------
# determinant proxy
# ---------------------------------------------------------------------------

def test_det_vanishes_at_eigenvalue_alpha2():
    spec = OperatorSpec.for_modes(1.0 + 0j, 2.0, 4)
    d_eig = spectral_det(spec, 3.0)
    d_off = spectral_det(spec, 2.0)
    assert abs(d_eig) < 1e-7 * abs(d_off)


def test_det_nonzero_at_origin():
    spec = OperatorSpec.for_modes(1.0 + 0j, 2.0, 4)
    d0 = spectral_det(spec, 0.0)
    d_half = spectral_det(spec, 1.0)
    assert abs(d0) > 1e-3 * abs(d_half)


def test_det_zero_at_scaled_eigenvalue_complex_c():
    c = cmath.exp(1j * math.pi / 3.0)
    spec = OperatorSpec.for_modes(c, ALPHA_23, 3)
    t1 = real_spectrum(ALPHA_23, 1)[0]
    lam = cmath.exp(0.75 * cmath.log(c)) * t1
    on = spectral_det(spec, lam)
    off = spectral_det(spec, lam * 1.02)
    assert abs(on) < 1e-6 * abs(off)


def test_det_requires_truncation_beyond_turning_point():
    spec = OperatorSpec(c=1.0 + 0j, alpha=2.0, X=3.0, grid_n=64)
    with pytest.raises(ValueError):
        spectral_det(spec, 100.0)


def test_muller_polishes_first_oscillator_eigenvalue():
    from wkbspec.numerics import find_root_complex

    spec = OperatorSpec.for_modes(1.0 + 0j, 2.0, 4)
    res = find_root_complex(lambda z: spectral_det(spec, z), 2.8, 1e-8)
    assert abs(res.root - 3.0) < 1e-7


def test_det_sign_changes_across_real_roots():
    # eigenvalues at 3 and 7: sign flips across each, none between 4 and 6
    spec = OperatorSpec.for_modes(1.0 + 0j, 2.0, 3)
    d = [spectral_det(spec, t).real for t in (2.0, 4.0, 6.0, 8.0)]
    assert d[0] * d[1] < 0.0 and d[1] * d[2] > 0.0 and d[2] * d[3] < 0.0


# ---------------------------------------------------------------------------
# complex spectrum
# ---------------------------------------------------------------------------

def test_complex_spectrum_alpha2_real_coupling():
    spec = OperatorSpec.for_modes(1.0 + 0j, 2.0, 4)
    res = complex_spectrum(spec, 3)
    assert_allclose(res.t_values, [3.0, 7.0, 11.0], atol=1e-7)
    assert all(r < 1e-6 for r in res.residuals)


def test_complex_spectrum_rotation():
    spec = OperatorSpec.for_modes(1j, ALPHA_23, 4)
    res = complex_spectrum(spec, 3)
    for lam in res.eigenvalues:
        assert abs(cmath.phase(lam) - 0.75 * (math.pi / 2.0)) < 1e-6
    # t strictly increasing and positive
    assert all(t > 0 for t in res.t_values)
    assert all(b > a for a, b in zip(res.t_values[:-1], res.t_values[1:]))


def test_complex_spectrum_simplicity_separation():
    spec = OperatorSpec.for_modes(1j, ALPHA_23, 4)
    res = complex_spectrum(spec, 4, tol=1e-9)
    lams = res.eigenvalues
    for i in range(len(lams)):
        for j in range(i + 1, len(lams)):
            assert abs(lams[i] - lams[j]) > 1e3 * 1e-9


# ---------------------------------------------------------------------------
# inverse operator
# ---------------------------------------------------------------------------

@pytest.fixture(scope="module")
def resolvent_spec():
    return OperatorSpec(c=cmath.exp(1j * math.pi / 3.0), alpha=ALPHA_23, X=12.0, grid_n=6001)


def test_apply_inverse_manufactured(resolvent_spec):
    spec = resolvent_spec
    xs = spec.grid()
    bump = np.exp(-((xs - 3.0) ** 2))
    phi = xs * bump
    phi_pp = (-4.0 * (xs - 3.0) + xs * (4.0 * (xs - 3.0) ** 2 - 2.0)) * bump
    f_vals = -phi_pp + spec.c * xs**spec.alpha * phi
    y = apply_inverse(spec, SampledFunction(xs, f_vals))
    assert y.values[0] == 0.0
    assert np.max(np.abs(y.values - phi)) / np.max(np.abs(phi)) < 1e-8


def test_apply_inverse_eigenrelation(resolvent_spec):
    spec = resolvent_spec
    res = complex_spectrum(spec, 1)
    lam1 = res.eigenvalues[0]
    y1 = eigenfunction(spec, lam1)
    out = apply_inverse(spec, y1)
    err = np.max(np.abs(out.values - y1.values / lam1)) / np.max(np.abs(y1.values / lam1))
    assert err < 1e-6


def test_apply_inverse_wronskian_constancy(resolvent_spec):
    for spec in (resolvent_spec, OperatorSpec(c=2.0 + 0j, alpha=1.0, X=10.0, grid_n=2001)):
        u, up, v, vp = homogeneous_pair(spec)
        w = v * up - vp * u
        w0 = w[len(w) // 2]
        assert np.max(np.abs(w - w0)) / abs(w0) < 1e-6


def test_apply_inverse_grid_mismatch(resolvent_spec):
    xs = np.linspace(0.0, 1.0, 11)
    with pytest.raises(ValueError):
        apply_inverse(resolvent_spec, SampledFunction(xs, np.zeros(11)))


# ---------------------------------------------------------------------------
# singular values
# ---------------------------------------------------------------------------

def test_s_numbers_alpha2():
    spec = OperatorSpec.for_modes(1.0 + 0j, 2.0, 6)
    rep = s_numbers(spec, 5)
    assert_allclose(rep.values, [1.0 / 3.0, 1.0 / 7.0, 1.0 / 11.0, 1.0 / 15.0, 1.0 / 19.0], atol=1e-8)
    assert all(b < a for a, b in zip(rep.values[:-1], rep.values[1:]))


def test_s_numbers_coupling_scaling():
    spec1 = OperatorSpec.for_modes(1.0 + 0j, ALPHA_23, 4)
    spec4 = OperatorSpec.for_modes(4.0 + 0j, ALPHA_23, 4)
    r1 = s_numbers(spec1, 4)
    r4 = s_numbers(spec4, 4)
    for a, b in zip(r1.values, r4.values):
        assert abs(b - a * 4.0 ** (-0.75)) < 1e-8
    assert r1.expected_exponent == pytest.approx(-0.5)
