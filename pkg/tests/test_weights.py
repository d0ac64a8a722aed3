import math

import mpmath as mp
import numpy as np
import pytest
from hypothesis import assume, given, settings, strategies as st
from scipy.integrate import quad

from jacobi_pitt.exceptions import ValidationError
from jacobi_pitt.special_functions import JacobiParams
from jacobi_pitt.weights import (
    MeasureTag,
    RearrangementProfile,
    SpatialWeight,
    SpectralWeight,
    analytic_profile,
    bellman_Q,
    cumulative_measure,
    decreasing_rearrangement,
    distribution_function,
    hardy_P,
    pitt_sup_functional,
    rearrangement_table,
)

P00 = JacobiParams(0.0, 0.0)
P10 = JacobiParams(1.0, 0.0)


def slope(x, y):
    return np.polyfit(np.log(x), np.log(y), 1)[0]


def mp_t_of_s(alpha, beta, s_values):
    """Points t with int_0^t m~ = s, by Newton steps on an mpmath quadrature of m~."""
    rho = alpha + beta + 1

    def mt(t):
        phi0 = mp.hyp2f1(rho / 2, rho / 2, alpha + 1, -mp.sinh(t) ** 2)
        return phi0 ** 2 * (2 * mp.pi) ** -0.5 * 2 ** (2 * rho) \
            * mp.sinh(t) ** (2 * alpha + 1) * mp.cosh(t) ** (2 * beta + 1)

    out = []
    t, Mt = mp.mpf(0), mp.mpf(0)
    with mp.workdps(20):
        for s in s_values:
            x = t + 1
            Mx = Mt + mp.quad(mt, [t, x])
            for _ in range(60):
                step = (Mx - s) / mt(x)
                xn = x - step
                if xn <= t:
                    xn = (x + t) / 2
                Mx += mp.quad(mt, [x, xn])
                x = xn
                if abs(step) < mp.mpf(10) ** -14 * x:
                    break
            t, Mt = x, Mx
            out.append(float(x))
    return np.array(out)


def test_constant_weight_distribution():
    one = lambda x: np.ones(np.shape(x))
    assert distribution_function(one, "mtilde", P10, 0.5) == math.inf
    assert distribution_function(one, "mtilde", P10, 1.0) == 0.0
    assert distribution_function(one, "n", P10, 2.0) == 0.0


def test_cumulative_measure_is_increasing_and_small_x_power():
    x = np.geomspace(1e-6, 1e3, 50)
    M = cumulative_measure(P10, "mtilde", x)
    assert np.all(np.diff(M) > 0)
    # m~ ~ t^(2 alpha + 1) near 0
    assert slope(x[:5], M[:5]) == pytest.approx(2 * (P10.alpha + 1), abs=1e-3)


@pytest.mark.parametrize("alpha", [0.0, 1.0])
@pytest.mark.parametrize("kappa", [0.5, 2.0])
def test_distribution_gamma_regimes(alpha, kappa):
    # d(gamma) for t^(-kappa) against m~: ~ gamma^(-N/kappa) for large gamma
    p = JacobiParams(alpha, 0.0)
    w = SpatialWeight(kappa).reciprocal()
    g = np.geomspace(1e-4, 1e-6, 5) ** -kappa  # superlevel sets (0, t), t in [1e-6, 1e-4]
    d = [distribution_function(w, "mtilde", p, x) for x in g]
    assert slope(g, d) == pytest.approx(-2 * (alpha + 1) / kappa, abs=0.02)


def test_rearrangement_near_regime_examples():
    s = np.geomspace(1e-8, 1e-6, 5)
    w = SpatialWeight(1.0).reciprocal()
    assert slope(s, rearrangement_table(w, "mtilde", P10, s)) == pytest.approx(-0.25, abs=1e-3)
    u = SpectralWeight(0.0, 1.5)
    assert slope(s, rearrangement_table(u, "n", P10, s)) == pytest.approx(-0.5, abs=1e-3)


def test_rearrangement_two_paths_agree():
    w = SpatialWeight(0.7).reciprocal()
    for s in (1e-3, 0.5, 40.0):
        a = rearrangement_table(w, "mtilde", P10, [s])[0]
        b = decreasing_rearrangement(w, "mtilde", P10, s)
        assert a == pytest.approx(b, rel=1e-9)


def test_rearrangement_of_non_monotone_weight():
    # bisection path: a bump-shaped weight against n
    w = lambda x: np.exp(-np.log(np.asarray(x, dtype=float)) ** 2)
    vals = rearrangement_table(w, "n", P10, [1e-3, 1e-1, 1.0, 10.0])
    assert np.all(np.diff(vals) <= 0) and vals[0] <= 1.0


@settings(max_examples=15, deadline=None)
@given(st.floats(0.2, 3.0), st.floats(0.05, 0.95))
def test_equimeasurable(kappa, level):
    # w*(d_w(gamma)) = gamma for a continuous decreasing weight
    w = SpatialWeight(kappa).reciprocal()
    gamma = 10 ** (4 * level - 2)
    d = distribution_function(w, "mtilde", P10, gamma)
    assert decreasing_rearrangement(w, "mtilde", P10, d) == pytest.approx(gamma, rel=1e-8)


@settings(max_examples=12, deadline=None)
@given(st.floats(0.0, 1.5), st.floats(0.1, 2.0))
def test_spectral_near_slope(alpha, sigma):
    # near slope -sigma/3; the pre-asymptotic drift is about 0.06 sigma alpha
    assume(sigma * alpha <= 0.75)
    s = np.geomspace(1e-3, 1e-1, 7)
    u = rearrangement_table(SpectralWeight(0.0, sigma), "n", JacobiParams(alpha, 0.0), s)
    assert slope(s, u) == pytest.approx(-sigma / 3, abs=0.05)


@pytest.mark.parametrize("alpha", [0.0, 1.0])
def test_far_slopes_match_mpmath_oracle(alpha):
    s = np.geomspace(10.0, 1e3, 9)
    t = mp_t_of_s(alpha, 0.0, s)
    p = JacobiParams(alpha, 0.0)
    for kappa in (0.5, 1.0, 2.0):
        ours = rearrangement_table(SpatialWeight(kappa).reciprocal(), "mtilde", p, s)
        np.testing.assert_allclose(ours, t ** -kappa, rtol=1e-10)
    # the slope over this window is not yet -kappa/3: kappa = 2 misses by more than 0.05
    ours = rearrangement_table(SpatialWeight(2.0).reciprocal(), "mtilde", p, s)
    assert abs(slope(s, ours) + 2.0 / 3.0) > 0.05


def test_analytic_profile_examples():
    prof = analytic_profile("inverse_spatial", P10, 2.0)
    assert (prof.exponent_near, prof.exponent_far) == (-0.5, -2.0 / 3.0)
    prof = analytic_profile("spectral", P10, 1.5, zeta=0.0)
    assert (prof.exponent_near, prof.exponent_far) == (-0.5, -0.375)
    assert analytic_profile("spectral", P10, 1.5, zeta=1.0).exponent_near == 0.0
    assert prof.non_increasing
    assert RearrangementProfile(-1.0, -2.0)(np.array([1.0]))[0] == 1.0
    with pytest.raises(ValidationError):
        analytic_profile("inverse_spatial", P10, -1.0)
    with pytest.raises(ValidationError):
        analytic_profile("sideways", P10, 1.0)


@pytest.mark.parametrize("a", [-0.5, 0.0, 2.0])
def test_hardy_closed_form(a):
    assert hardy_P(lambda y: y ** a, 3.0) == pytest.approx(3.0 ** (a + 1) / (a + 1), rel=1e-9)


def test_hardy_divergent():
    assert hardy_P(lambda y: 1.0 / y, 1.0) == math.inf


@pytest.mark.parametrize("b", [1.5, 3.0])
def test_bellman_closed_form(b):
    assert bellman_Q(lambda y: y ** -b, 2.0) == pytest.approx(2.0 ** (1 - b) / (b - 1), rel=1e-9)


def test_bellman_divergent():
    assert bellman_Q(lambda y: y ** -0.5, 1.0) == math.inf


def test_hardy_bellman_duality():
    # int h P g = int g Q h
    g = lambda y: np.exp(-y)
    h = lambda y: np.exp(-2.0 * y)
    lhs = quad(lambda x: h(x) * hardy_P(g, x), 0, 40)[0]
    rhs = quad(lambda y: g(y) * bellman_Q(h, y), 0, 40)[0]
    assert lhs == pytest.approx(1.0 / 6.0, rel=1e-7)
    assert rhs == pytest.approx(1.0 / 6.0, rel=1e-7)


def test_sup_functional_unit_weights():
    res = pitt_sup_functional(SpectralWeight(0.0, 0.0), SpatialWeight(0.0), 2.0, 2.0, P00)
    assert res.sup_value == pytest.approx(1.0, rel=1e-9)
    np.testing.assert_allclose(res.values, 1.0, rtol=1e-9)


def test_sup_functional_holds_example():
    sup, arg, flag = pitt_sup_functional(SpectralWeight(1.0, 1.5), SpatialWeight(0.5),
                                         2.0, 2.0, P00)
    assert math.isfinite(sup) and not flag
    assert 1e-4 < arg < 1e4


def test_sup_functional_grows_at_zeta_zero():
    u, v = SpectralWeight(0.0, 0.5), SpatialWeight(0.0)
    a = pitt_sup_functional(u, v, 2.0, 2.0, P00)
    b = pitt_sup_functional(u, v, 2.0, 2.0, P00, r_grid=np.geomspace(1e-4, 1e6, 200))
    assert a.boundary_flag and b.boundary_flag
    assert b.sup_value > 2 * a.sup_value


def test_sup_functional_decreasing_in_sigma():
    vals = [pitt_sup_functional(SpectralWeight(1.0, s), SpatialWeight(0.5), 2.0, 2.0, P00).sup_value
            for s in (0.5, 1.0, 2.0)]
    assert vals[0] > vals[1] > vals[2]


def test_weight_validation():
    with pytest.raises(ValidationError):
        SpectralWeight(-1.0, 1.0)
    with pytest.raises(ValidationError):
        SpatialWeight(-0.5)
    with pytest.raises(ValidationError):
        distribution_function(lambda x: x, "m", P10, 1.0)
    with pytest.raises(ValidationError):
        pitt_sup_functional(SpectralWeight(1, 1), SpatialWeight(1), 2.0, 1.5, P10)
    assert MeasureTag("n") is MeasureTag.N
