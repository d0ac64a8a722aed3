import math

import mpmath as mp
import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from jacobi_pitt.exceptions import PoleError, ValidationError
from jacobi_pitt.special_functions import (
    DEFAULT_CONFIG,
    EvaluationConfig,
    JacobiParams,
    gauss_2f1,
    harish_chandra_c,
    jacobi_phi,
    ln_gamma,
    measure_m,
    measure_mtilde,
    phi0,
    plancherel_density,
)

mp.mp.dps = 50

PARAMS = [(0.0, 0.0), (1.0, 0.0), (1.5, 0.5), (0.5, -0.5), (2.0, 1.0)]


def mp_phi(a, b, lam, t):
    rho = a + b + 1
    z = -mp.sinh(t) ** 2
    val = mp.hyp2f1((rho + 1j * lam) / 2, (rho - 1j * lam) / 2, a + 1, z)
    return float(mp.re(val))


def mp_c(a, b, lam):
    rho = a + b + 1
    num = mp.power(2, rho - 1j * lam) * mp.gamma(a + 1) * mp.gamma(1j * lam)
    den = mp.gamma((rho + 1j * lam) / 2) * mp.gamma((rho + 1j * lam) / 2 - b)
    return complex(num / den)


params_st = st.sampled_from(PARAMS)


# ln_gamma

def test_ln_gamma_one():
    assert abs(ln_gamma(1.0)) < 1e-15


def test_ln_gamma_half():
    assert abs(ln_gamma(0.5) - math.log(math.sqrt(math.pi))) < 1e-14


def test_ln_gamma_oracle_point():
    ref = complex(mp.loggamma(mp.mpc(2, 3)))
    assert abs(ln_gamma(2 + 3j) - ref) < 1e-13 * abs(ref)


@settings(max_examples=200, deadline=None)
@given(st.floats(-20, 40), st.floats(-30, 30))
def test_ln_gamma_matches_mpmath(x, y):
    z = complex(x, y)
    if abs(y) < 1e-3 and round(x) <= 0 and abs(x - round(x)) < 1e-3:
        return  # too close to a pole for a fair comparison
    ref = complex(mp.loggamma(mp.mpc(x, y)))
    got = ln_gamma(z)
    # exp agreement: the branch of the imaginary part is what matters
    assert abs(got.real - ref.real) < 1e-12 * max(1.0, abs(ref))
    assert abs(got.imag - ref.imag) < 1e-12 * max(1.0, abs(ref))


@pytest.mark.parametrize("z", [0.0, -1.0, -2.0, -7.0])
def test_ln_gamma_poles(z):
    with pytest.raises(PoleError):
        ln_gamma(z)


def test_ln_gamma_vectorised():
    z = np.array([1.0, 2.0, 3.0, 4.0])
    assert np.allclose(np.exp(ln_gamma(z)).real, [1, 1, 2, 6], rtol=1e-13)


# gauss_2f1

def test_2f1_at_zero():
    assert gauss_2f1(1.3 + 0.2j, -0.7, 2.5, 0.0) == pytest.approx(1.0, abs=1e-15)


@pytest.mark.parametrize("b,z", [(0.5, -0.3), (1.7, -4.0), (-0.3, -20.0)])
def test_2f1_binomial_reduction(b, z):
    c = 1.9
    got = gauss_2f1(c, b, c, z)
    assert abs(got - (1 - z) ** (-b)) < 1e-12 * abs((1 - z) ** (-b))


def test_2f1_cosine_instance():
    lam, t = 2.0, 1.0
    got = gauss_2f1(0.5 * 1j * lam, -0.5 * 1j * lam, 0.5, -math.sinh(t) ** 2)
    assert abs(got - math.cos(2.0)) < 1e-12


@settings(max_examples=60, deadline=None)
@given(st.floats(0.1, 3), st.floats(-0.5, 2), st.floats(0.5, 4), st.floats(-30, 0))
def test_2f1_matches_mpmath(a, b, c, z):
    ref = complex(mp.hyp2f1(a, b, c, z))
    got = gauss_2f1(a, b, c, z)
    assert abs(got - ref) < 1e-11 * max(1.0, abs(ref))


def test_2f1_rejects_pole_c():
    with pytest.raises((PoleError, ValidationError)):
        gauss_2f1(0.5, 0.5, -2.0, -0.5)


# jacobi_phi

@pytest.mark.parametrize("ab", PARAMS)
def test_phi_at_origin(ab):
    P = JacobiParams(*ab)
    lam = np.array([0.0, 0.3, 2.0, 17.0])
    assert np.all(jacobi_phi(P, lam, 0.0) == 1.0)


def test_phi_cosine_example():
    P = JacobiParams(-0.5, -0.5)
    assert abs(jacobi_phi(P, 3.0, 0.7) - math.cos(2.1)) < 1e-12


def test_phi_ode_example():
    P = JacobiParams(1.0, 0.0)
    a, b, lam, t, h = 1.0, 0.0, 1.0, 2.0, 1e-4
    v = jacobi_phi(P, lam, np.array([t - h, t, t + h]))
    d1 = (v[2] - v[0]) / (2 * h)
    d2 = (v[2] - 2 * v[1] + v[0]) / h ** 2
    res = d2 + ((2 * a + 1) / math.tanh(t) + (2 * b + 1) * math.tanh(t)) * d1 + (lam ** 2 + 4.0) * v[1]
    assert abs(res) < 1e-5 * (1 + abs(v[1]))
    assert abs(v[1] - mp_phi(1, 0, 1, 2)) < 1e-12


@settings(max_examples=120, deadline=None)
@given(params_st, st.floats(0, 25), st.floats(0, 9))
def test_phi_matches_mpmath(ab, lam, t):
    a, b = ab
    P = JacobiParams(a, b)
    ref = mp_phi(a, b, lam, t)
    got = float(jacobi_phi(P, lam, t))
    # phi oscillates under the envelope phi_0, so compare on that scale
    scale = float(phi0(P, t))
    assert abs(got - ref) < 1e-9 * scale


@settings(max_examples=80, deadline=None)
@given(params_st, st.floats(0.01, 30), st.floats(0, 15))
def test_phi_even_in_lambda(ab, lam, t):
    P = JacobiParams(*ab)
    assert abs(jacobi_phi(P, lam, t) - jacobi_phi(P, -lam, t)) <= 1e-12 * max(1.0, abs(jacobi_phi(P, lam, t)))


@settings(max_examples=60, deadline=None)
@given(params_st, st.floats(0, 30), st.floats(0, 15))
def test_phi_bounded_by_phi0(ab, lam, t):
    P = JacobiParams(*ab)
    assert abs(jacobi_phi(P, lam, t)) <= phi0(P, t) * (1 + 1e-9) + 1e-300


@pytest.mark.parametrize("ab", [(0.0, 0.0), (1.0, 0.0), (1.5, 0.5)])
def test_phi_branch_continuity_at_t_switch(ab):
    # at t_switch the evaluated function must agree with the two-term
    # Harish-Chandra asymptotic, measured against its envelope |c| e^{-rho t}
    P = JacobiParams(*ab)
    t = DEFAULT_CONFIG.t_switch
    for lam in np.linspace(0.5, 10, 20):
        c = harish_chandra_c(P, lam)
        lead = 2 * (c * np.exp((1j * lam - P.rho) * t)).real
        env = 2 * abs(c) * math.exp(-P.rho * t)
        got = float(jacobi_phi(P, lam, t))
        assert abs(got - lead) < 1e-6 * env
        ref = mp_phi(ab[0], ab[1], lam, t)
        assert abs(got - ref) < 1e-9 * env


def test_phi_grid_shape():
    P = JacobiParams(1.0, 0.0)
    out = jacobi_phi(P, np.array([1.0, 2.0])[:, None], np.array([0.5, 1.0, 2.0])[None, :])
    assert out.shape == (2, 3)


def test_phi_rejects_negative_t():
    with pytest.raises(ValidationError):
        jacobi_phi(JacobiParams(1.0, 0.0), 1.0, -0.5)


# phi0

@pytest.mark.parametrize("ab", PARAMS)
def test_phi0_at_origin(ab):
    assert phi0(JacobiParams(*ab), 0.0) == pytest.approx(1.0, abs=1e-15)


def test_phi0_cosine_is_one():
    t = np.linspace(0, 40, 81)
    assert np.allclose(phi0(JacobiParams(-0.5, -0.5), t), 1.0, atol=1e-14)


# (c1, c2) brackets of phi0(t) / ((1+t) e^{-rho t}) on [0, 20], measured once
PHI0_BRACKETS = {(0.0, 0.0): (1.0, 1.26), (1.0, 0.0): (1.0, 7.36), (1.5, 0.5): (1.0, 21.8),
                 (1.0, 0.5): (1.0, 9.41), (0.5, -0.5): (1.0, 1.91)}


@pytest.mark.parametrize("ab", sorted(PHI0_BRACKETS))
def test_phi0_bracket(ab):
    P = JacobiParams(*ab)
    t = np.linspace(0, 20, 401)
    r = phi0(P, t) / ((1 + t) * np.exp(-P.rho * t))
    c1, c2 = PHI0_BRACKETS[ab]
    assert np.all(r > 0)
    assert r.min() >= c1 * (1 - 1e-9) and r.max() <= c2


def test_phi0_far_value():
    P = JacobiParams(1.0, 0.5)
    v = float(phi0(P, 10.0))
    assert 0 < v < 11 * math.exp(-25) * PHI0_BRACKETS[(1.0, 0.5)][1]
    assert abs(v - mp_phi(1.0, 0.5, 0.0, 10.0)) < 1e-10 * v


# c-function and densities

@pytest.mark.parametrize("lam", [0.1, 1.0, 10.0, 250.0])
def test_c_cosine_half(lam):
    assert abs(harish_chandra_c(JacobiParams(-0.5, -0.5), lam) - 0.5) < 1e-12


@settings(max_examples=60, deadline=None)
@given(params_st, st.floats(0.01, 200))
def test_c_matches_mpmath(ab, lam):
    ref = mp_c(ab[0], ab[1], lam)
    assert abs(harish_chandra_c(JacobiParams(*ab), lam) - ref) < 1e-11 * abs(ref)


def test_c_pole_at_zero():
    with pytest.raises(PoleError):
        harish_chandra_c(JacobiParams(1.0, 0.0), 0.0)
    with pytest.raises(PoleError):
        plancherel_density(JacobiParams(1.0, 0.0), 0.0)


def test_cosine_densities():
    P = JacobiParams(-0.5, -0.5)
    lam = np.array([0.1, 1.0, 7.0])
    assert np.allclose(plancherel_density(P, lam), 4 / math.sqrt(2 * math.pi), rtol=1e-12)
    t = np.array([0.0, 0.5, 3.0, 50.0])
    assert np.allclose(measure_m(P, t), 1 / math.sqrt(2 * math.pi), rtol=1e-14)


@pytest.mark.parametrize("ab", [(0.0, 0.0), (1.0, 0.0), (1.5, 0.5)])
def test_c_far_bracket(ab):
    P = JacobiParams(*ab)
    lam = np.geomspace(1, 1e3, 60)
    r = np.abs(harish_chandra_c(P, lam)) ** -2 / lam ** (2 * ab[0] + 1)
    assert np.all(r > 0) and r.max() / r.min() < 2.1


def test_m_zero_at_origin():
    assert measure_m(JacobiParams(1.0, 0.0), 0.0) == 0.0


def test_mtilde_far_bracket():
    P = JacobiParams(1.0, 0.0)
    t = np.linspace(2, 30, 60)
    r = measure_mtilde(P, t) / t ** 2
    assert np.all(r > 0) and r.max() / r.min() < 2.2


@pytest.mark.parametrize("ab", [(0.0, 0.0), (1.0, 0.0), (1.5, 0.5)])
def test_mtilde_near_bracket(ab):
    P = JacobiParams(*ab)
    t = np.geomspace(1e-3, 1e-1, 60)
    r = measure_mtilde(P, t) / t ** (2 * ab[0] + 1)
    assert np.all(r > 0) and r.max() / r.min() < 1.01


def test_mtilde_is_phi0_squared_m():
    P = JacobiParams(1.5, 0.5)
    t = np.array([0.01, 0.5, 3.0, 20.0])
    ref = np.array([mp_phi(1.5, 0.5, 0, x) ** 2 for x in t]) * measure_m(P, t)
    assert np.allclose(measure_mtilde(P, t), ref, rtol=1e-10)


@settings(max_examples=60, deadline=None)
@given(params_st, st.floats(1e-4, 60))
def test_positivity(ab, x):
    P = JacobiParams(*ab)
    assert measure_m(P, x) > 0
    assert measure_mtilde(P, x) > 0
    assert plancherel_density(P, x) > 0


@pytest.mark.parametrize("ab", [(0.0, 0.0), (1.0, 0.0), (1.5, 0.5)])
def test_density_slopes(ab):
    P = JacobiParams(*ab)
    near = np.geomspace(1e-3, 1e-1, 30)
    far = np.geomspace(10, 1000, 30)
    s_near = np.polyfit(np.log(near), np.log(plancherel_density(P, near)), 1)[0]
    s_far = np.polyfit(np.log(far), np.log(plancherel_density(P, far)), 1)[0]
    assert abs(s_near - 2) < 0.05
    assert abs(s_far - (2 * ab[0] + 1)) < 0.05


# parameter validation

@pytest.mark.parametrize("ab", [(0.0, 0.5), (-0.6, -0.6), (1.0, -0.7), (math.nan, 0.0)])
def test_params_rejected(ab):
    with pytest.raises(ValidationError):
        JacobiParams(*ab)


def test_rho_derived():
    P = JacobiParams(1.25, 0.5)
    assert P.rho == 1.25 + 0.5 + 1


@pytest.mark.parametrize("kw", [{"series_tol": 0.0}, {"t_switch": -1.0}, {"max_terms": 10}])
def test_config_rejected(kw):
    with pytest.raises(ValidationError):
        EvaluationConfig(**kw)


def test_config_t_switch_changes_route_not_value():
    P = JacobiParams(1.0, 0.0)
    lam, t = 2.5, np.array([0.7, 3.0, 9.0])
    a = jacobi_phi(P, lam, t, EvaluationConfig(t_switch=2.0))
    b = jacobi_phi(P, lam, t, EvaluationConfig(t_switch=12.0))
    assert np.allclose(a, b, rtol=0, atol=1e-10 * 1.0)


@pytest.mark.parametrize("alpha,beta", [(1.5, 0.5), (1.0, 0.0), (2.0, 1.0)])
def test_mehler_factor_interpolant(alpha, beta):
    from jacobi_pitt.special_functions import _mehler_hyp
    y = np.linspace(0.0, 0.4999, 37)
    want = [float(mp.hyp2f1(alpha + beta, alpha - beta, alpha + 0.5, v)) for v in y]
    np.testing.assert_allclose(_mehler_hyp(alpha, beta)(y), want, rtol=1e-13)


@pytest.mark.parametrize("lam,t", [(300.0, 3.0), (1000.0, 1.5)])
def test_phi_large_lambda_t(lam, t):
    a, b = 1.5, 0.5
    got = jacobi_phi(JacobiParams(a, b), lam, t)
    env = float(phi0(JacobiParams(a, b), t))
    with mp.workdps(60):
        want = mp_phi(a, b, lam, t)
    assert abs(got - want) <= 1e-9 * env
