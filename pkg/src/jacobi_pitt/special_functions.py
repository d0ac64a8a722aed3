"""Analytic primitives for Jacobi analysis.

Complex log-Gamma, the Gauss function 2F1 on the negative axis, Jacobi
functions phi_lambda^(alpha, beta)(t), the Harish-Chandra c-function and the
three densities m, m~ and n.

Everything is vectorised over numpy arrays and pure.

phi_lambda(t) is evaluated along one of four routes, chosen per point:

* the Pfaff-transformed power series in w = tanh(t)^2, for small lambda*t;
* the convergent Harish-Chandra expansion
  phi = 2 Re[c(lambda) Phi_lambda(t)], with Phi a 2F1 series in sech(t)^2.
  It is used for moderate and large t, and always beyond ``t_switch``;
* a Mehler-type cosine integral over [0, t] with a lambda-independent
  kernel, integrated by Gauss-Jacobi quadrature. It is used wherever both
  series would suffer cancellation, typically large lambda*t or small
  lambda with large t;
* for alpha = beta = -1/2 the Mehler kernel is a point mass and
  phi_lambda(t) = cos(lambda t).
"""

from __future__ import annotations

import functools
import math
from dataclasses import dataclass

import numpy as np
from numpy.polynomial import Chebyshev
from scipy.special import roots_jacobi

from .exceptions import ConvergenceError, PoleError, ValidationError

__all__ = [
    "JacobiParams",
    "EvaluationConfig",
    "DEFAULT_CONFIG",
    "ln_gamma",
    "gauss_2f1",
    "jacobi_phi",
    "phi0",
    "log_phi0",
    "harish_chandra_c",
    "harish_chandra_expansion",
    "plancherel_density",
    "measure_m",
    "measure_mtilde",
    "log_measure_m",
]

_LOG_SQRT_2PI = 0.5 * math.log(2.0 * math.pi)
_INV_SQRT_2PI = 1.0 / math.sqrt(2.0 * math.pi)

# Lanczos approximation, g = 7, nine coefficients.
_LANCZOS_G = 7.0
_LANCZOS_COEF = np.array(
    [
        0.99999999999980993,
        676.5203681218851,
        -1259.1392167224028,
        771.32342877765313,
        -176.61502916214059,
        12.507343278686905,
        -0.13857109526572012,
        9.9843695780195716e-6,
        1.5056327351493116e-7,
    ]
)
_POLE_TOL = 4.0 * np.finfo(float).eps

# Route selection thresholds for jacobi_phi.
_SERIES_W_MAX = 0.9  # tanh(t)^2 <= 0.9, i.e. t <= 1.82
_SERIES_OSC_MAX = 3.0  # 2*lambda*tanh(t): log of the worst term growth
_HC_X_MAX = 0.85  # sech(t)^2 <= 0.85, i.e. t >= 0.40
_HC_OSC_MAX = 12.0  # lambda*sech(t)^2
_HC_LAMBDA_MIN = 0.05  # c(lambda) ~ 1/lambda cancels below this
_COSINE_SERIES_OSC_MAX = 12.0


@dataclass(frozen=True)
class JacobiParams:
    """Jacobi parameters (alpha, beta) with alpha >= beta >= -1/2, alpha > -1/2
    unless alpha = beta = -1/2 (the cosine case)."""

    alpha: float
    beta: float

    def __post_init__(self) -> None:
        a, b = float(self.alpha), float(self.beta)
        if not (math.isfinite(a) and math.isfinite(b)):
            raise ValidationError("alpha and beta must be finite")
        if b < -0.5:
            raise ValidationError(f"beta must be >= -1/2 (got beta={b})")
        if a < b:
            raise ValidationError(f"alpha must be >= beta (got alpha={a}, beta={b})")
        object.__setattr__(self, "alpha", a)
        object.__setattr__(self, "beta", b)

    @property
    def rho(self) -> float:
        return self.alpha + self.beta + 1.0

    @property
    def is_cosine(self) -> bool:
        return self.alpha == -0.5 and self.beta == -0.5


@dataclass(frozen=True)
class EvaluationConfig:
    series_tol: float = 1e-14
    t_switch: float = 12.0
    max_terms: int = 10000

    def __post_init__(self) -> None:
        if not self.series_tol > 0:
            raise ValidationError("series_tol must be positive")
        if not self.t_switch > 0:
            raise ValidationError("t_switch must be positive")
        if int(self.max_terms) < 50:
            raise ValidationError("max_terms must be at least 50")


DEFAULT_CONFIG = EvaluationConfig()


# ---------------------------------------------------------------------------
# log-Gamma


def _lanczos(z: np.ndarray) -> np.ndarray:
    """ln Gamma(z) for Re z >= 1/2."""
    w = z - 1.0
    x = np.full(z.shape, _LANCZOS_COEF[0], dtype=complex)
    for i in range(1, len(_LANCZOS_COEF)):
        x = x + _LANCZOS_COEF[i] / (w + i)
    t = w + _LANCZOS_G + 0.5
    return _LOG_SQRT_2PI + (w + 0.5) * np.log(t) - t + np.log(x)


def ln_gamma(z):
    """Principal branch of ln Gamma for complex arguments.

    Arguments with Re z < 1/2 are shifted right through
    ln Gamma(z) = ln Gamma(z + 1) - log z, which keeps the branch that is
    continuous off the negative real axis. Raises PoleError on 0, -1, -2, ...
    """
    arr = np.asarray(z, dtype=complex)
    scalar = arr.ndim == 0
    arr = np.atleast_1d(arr)
    near = np.minimum(np.round(arr.real), 0.0)
    on_pole = np.abs(arr - near) <= _POLE_TOL * np.maximum(1.0, np.abs(near))
    if np.any(on_pole):
        raise PoleError(f"ln_gamma has a pole at {arr[on_pole][0]}")
    shift = np.maximum(np.ceil(0.5 - arr.real), 0).astype(int)
    out = _lanczos(arr + shift)
    for j in range(int(shift.max(initial=0))):
        mask = shift > j
        out[mask] -= np.log(arr[mask] + j)
    return complex(out[0]) if scalar else out


# ---------------------------------------------------------------------------
# hypergeometric series


def _series(a, b, c, w, tol, max_terms):
    """Sum 2F1(a, b; c; w) termwise for 0 <= w < 1.

    Returns (values, converged mask). Converged means the last term, inflated
    by a geometric tail bound, fell below tol * |sum|.
    """
    a, b, c, w = np.broadcast_arrays(
        np.asarray(a, dtype=complex),
        np.asarray(b, dtype=complex),
        np.asarray(c, dtype=complex),
        np.asarray(w, dtype=float),
    )
    shape = w.shape
    a, b, c, w = (x.ravel() for x in (a, b, c, w))
    total = np.ones(w.shape, dtype=complex)
    converged = np.zeros(w.shape, dtype=bool)
    active = np.nonzero(w > 0)[0]
    converged[w == 0] = True
    term = np.ones(active.shape, dtype=complex)
    aa, bb, cc, ww = a[active], b[active], c[active], w[active]
    part = total[active]
    n = 0
    while active.size and n < max_terms:
        ratio = (aa + n) * (bb + n) / ((cc + n) * (n + 1.0))
        term = term * ratio * ww
        part = part + term
        n += 1
        r = np.abs((aa + n) * (bb + n) / ((cc + n) * (n + 1.0))) * ww
        mag = np.abs(term)
        tail = np.where(r < 1.0, mag * r / np.maximum(1.0 - r, 1e-300), np.inf)
        done = (mag == 0.0) | ((r < 1.0) & (mag + tail <= tol * np.abs(part)))
        if np.any(done):
            total[active[done]] = part[done]
            converged[active[done]] = True
            keep = ~done
            active, term, part = active[keep], term[keep], part[keep]
            aa, bb, cc, ww = aa[keep], bb[keep], cc[keep], ww[keep]
    total[active] = part
    return total.reshape(shape), converged.reshape(shape)


def gauss_2f1(a, b, c, z, tol: float = 1e-14, max_terms: int = 10000):
    """2F1(a, b; c; z) for real z <= 0 via the Pfaff map w = z / (z - 1).

    2F1(a, b; c; z) = (1 - z)^(-a) 2F1(a, c - b; c; w), 0 <= w < 1.
    Raises ConvergenceError when the series budget is exhausted.
    """
    cz = complex(c)
    if cz.imag == 0 and cz.real <= 0 and cz.real == round(cz.real):
        raise PoleError(f"c must not be a non-positive integer (got {c})")
    z_arr = np.asarray(z, dtype=float)
    if np.any(z_arr > 0) or not np.all(np.isfinite(z_arr)):
        raise ValidationError("gauss_2f1 only accepts finite z <= 0")
    a = np.asarray(a, dtype=complex)
    b = np.asarray(b, dtype=complex)
    w = z_arr / (z_arr - 1.0)
    vals, ok = _series(a, cz - b, cz, w, tol, max_terms)
    if not np.all(ok):
        raise ConvergenceError(
            f"2F1 series did not converge within {max_terms} terms "
            f"(argument too close to the Pfaff boundary w -> 1)"
        )
    out = np.exp(-a * np.log1p(-z_arr)) * vals
    return complex(out) if out.ndim == 0 else out


# ---------------------------------------------------------------------------
# c-function and densities


def _check_lambda_positive(lam: np.ndarray) -> None:
    if np.any(~np.isfinite(lam)):
        raise ValidationError("lambda must be finite")
    if np.any(lam <= 0):
        raise PoleError("the c-function has a pole at lambda = 0; use lambda > 0")


def _ln_c(params: JacobiParams, lam: np.ndarray) -> np.ndarray:
    al, be, rho = params.alpha, params.beta, params.rho
    il = 1j * lam
    return (
        (rho - il) * math.log(2.0)
        + ln_gamma(al + 1.0).real
        + ln_gamma(il)
        - ln_gamma((rho + il) / 2.0)
        - ln_gamma((rho + il) / 2.0 - be)
    )


def harish_chandra_c(params: JacobiParams, lam):
    """c(lambda) = 2^(rho - i lambda) Gamma(alpha+1) Gamma(i lambda)
    / [Gamma((rho + i lambda)/2) Gamma((rho + i lambda)/2 - beta)]."""
    arr = np.atleast_1d(np.asarray(lam, dtype=float))
    _check_lambda_positive(arr)
    out = np.exp(_ln_c(params, arr))
    return complex(out[0]) if np.ndim(lam) == 0 else out.reshape(np.shape(lam))


def plancherel_density(params: JacobiParams, lam):
    """n(lambda) = (2 pi)^(-1/2) |c(lambda)|^(-2), lambda > 0."""
    arr = np.atleast_1d(np.asarray(lam, dtype=float))
    _check_lambda_positive(arr)
    out = _INV_SQRT_2PI * np.exp(-2.0 * _ln_c(params, arr).real)
    return float(out[0]) if np.ndim(lam) == 0 else out.reshape(np.shape(lam))


def _log_sinh(t: np.ndarray) -> np.ndarray:
    t = np.asarray(t, dtype=float)
    big = t > 1.0
    out = np.empty(t.shape)
    with np.errstate(divide="ignore"):
        out[~big] = np.log(np.sinh(t[~big]))
    tb = t[big]
    out[big] = tb - math.log(2.0) + np.log1p(-np.exp(-2.0 * tb))
    return out


def _log_cosh(t: np.ndarray) -> np.ndarray:
    t = np.abs(np.asarray(t, dtype=float))
    return t - math.log(2.0) + np.log1p(np.exp(-2.0 * t))


def log_measure_m(params: JacobiParams, t):
    """log m(t); -inf at t = 0 when 2 alpha + 1 > 0."""
    t = np.asarray(t, dtype=float)
    ka, kb = 2.0 * params.alpha + 1.0, 2.0 * params.beta + 1.0
    out = -_LOG_SQRT_2PI + 2.0 * params.rho * math.log(2.0) + np.zeros(t.shape)
    if ka != 0.0:
        out = out + ka * _log_sinh(t)
    if kb != 0.0:
        out = out + kb * _log_cosh(t)
    return out


def _check_t(t: np.ndarray) -> None:
    if np.any(~np.isfinite(t)) or np.any(t < 0):
        raise ValidationError("t must be finite and non-negative")


def measure_m(params: JacobiParams, t):
    """m(t) = (2 pi)^(-1/2) 2^(2 rho) sinh(t)^(2 alpha + 1) cosh(t)^(2 beta + 1)."""
    arr = np.asarray(t, dtype=float)
    _check_t(arr)
    out = np.exp(log_measure_m(params, arr))
    return float(out) if out.ndim == 0 else out


def measure_mtilde(params: JacobiParams, t, cfg: EvaluationConfig = DEFAULT_CONFIG):
    """m~(t) = phi_0(t)^2 m(t)."""
    arr = np.asarray(t, dtype=float)
    _check_t(arr)
    with np.errstate(divide="ignore"):
        out = np.exp(2.0 * log_phi0(params, arr, cfg) + log_measure_m(params, arr))
    return float(out) if out.ndim == 0 else out


# ---------------------------------------------------------------------------
# Jacobi functions: the individual routes


def _phi_series(params: JacobiParams, lam, t, cfg):
    rho, al, be = params.rho, params.alpha, params.beta
    a = (rho + 1j * lam) / 2.0
    b2 = (al - be + 1.0 + 1j * lam) / 2.0  # c - b after the Pfaff map
    w = np.tanh(t) ** 2
    vals, ok = _series(a, b2, al + 1.0, w, cfg.series_tol, cfg.max_terms)
    if not np.all(ok):
        raise ConvergenceError("Jacobi series did not converge within max_terms")
    out = np.exp(-2.0 * a * _log_cosh(t)) * vals
    return out.real


def _hc_terms(params: JacobiParams, lam, t, cfg, with_series: bool = True):
    rho, al, be = params.rho, params.alpha, params.beta
    il = 1j * lam
    logpref = _ln_c(params, lam) + (il - rho) * (math.log(2.0) + _log_cosh(t))
    if with_series:
        x = 1.0 / np.cosh(np.minimum(t, 350.0)) ** 2
        vals, ok = _series(
            (rho - il) / 2.0, (al - be + 1.0 - il) / 2.0, 1.0 - il, x,
            cfg.series_tol, cfg.max_terms,
        )
        if not np.all(ok):
            raise ConvergenceError("Harish-Chandra series did not converge")
        return 2.0 * (np.exp(logpref) * vals).real
    return 2.0 * np.exp(logpref).real


def harish_chandra_expansion(params: JacobiParams, lam, t, cfg=DEFAULT_CONFIG,
                             leading_only: bool = False):
    """c(lambda) Phi_lambda(t) + c(-lambda) Phi_-lambda(t) for lambda > 0, t > 0.

    Phi_lambda(t) = (2 cosh t)^(i lambda - rho)
        2F1((rho - i lambda)/2, (alpha - beta + 1 - i lambda)/2; 1 - i lambda; sech(t)^2).
    With ``leading_only`` the hypergeometric factor is replaced by 1, which is
    the two-term large-t asymptotic c(l) e^((il - rho)t) + c(-l) e^((-il - rho)t)
    up to the factor (1 + e^(-2t))^(il - rho).
    """
    lam, t = np.broadcast_arrays(np.asarray(lam, float), np.asarray(t, float))
    _check_lambda_positive(np.atleast_1d(lam))
    if np.any(t <= 0):
        raise ValidationError("the Harish-Chandra expansion needs t > 0")
    if leading_only:
        out = 2.0 * np.exp(_ln_c(params, np.atleast_1d(lam).ravel())
                           + (1j * lam.ravel() - params.rho) * t.ravel()).real
        out = out.reshape(lam.shape)
    else:
        out = _hc_terms(params, lam.ravel(), t.ravel(), cfg).reshape(lam.shape)
    return float(out) if out.ndim == 0 else out


def _mehler_log_const(alpha: float) -> float:
    return ((1.5 - alpha) * math.log(2.0) + math.lgamma(alpha + 1.0)
            - 0.5 * math.log(math.pi) - math.lgamma(alpha + 0.5))


@functools.lru_cache(maxsize=256)
def _gauss_jacobi(n: int, a: float):
    x, w = roots_jacobi(n, a, 0.0)
    return x, w


def _mehler_nodes(t: float, lam_max: float, alpha: float) -> int:
    # Gauss rules resolve cos(w x) on [-1, 1] once n exceeds w/2 + O(w^(1/3))
    w = lam_max * t
    n = 16.0 + 0.3 * w + 3.0 * w ** (1.0 / 3.0) + (2.0 + abs(2.0 * alpha - 1.0)) * t
    return int(min(8 * math.ceil(n / 8.0), 8192))


@functools.lru_cache(maxsize=64)
def _mehler_hyp(alpha: float, beta: float) -> Chebyshev:
    """2F1(alpha+beta, alpha-beta; alpha+1/2; y) on [0, 1/2] as a Chebyshev
    interpolant. y = (1 - cosh s / cosh t) / 2 never leaves that interval and
    the nearest singularity is y = 1, so 48 terms reach full precision."""
    f = lambda y: _series(alpha + beta, alpha - beta, alpha + 0.5, y, 1e-17, 4000)[0].real
    return Chebyshev.interpolate(f, 47, domain=[0.0, 0.5])


def _mehler_kernel(params: JacobiParams, t: np.ndarray, n: int):
    """Nodes s and weights K, shape (len(t), n), with
    phi_lambda(t_r) = sum_j K[r, j] cos(lambda s[r, j])."""
    al, be = params.alpha, params.beta
    x, w = _gauss_jacobi(n, al - 0.5)
    t = np.asarray(t, dtype=float)[:, None]
    s = 0.5 * t * (1.0 + x)
    d = 0.5 * t * (1.0 - x)  # t - s without cancellation
    log_r = math.log(2.0) + _log_sinh(t + s) + _log_sinh(d) - np.log(d)
    logpref = (_mehler_log_const(al) - 2.0 * al * _log_sinh(t)
               - (al + be) * _log_cosh(t)
               + (al + 0.5) * np.log(0.5 * t))
    y = np.exp(_log_sinh(0.5 * (t + s)) + _log_sinh(0.5 * d) - _log_cosh(t))
    if al + be == 0.0 or al - be == 0.0:
        hyp = 1.0
    else:
        hyp = _mehler_hyp(al, be)(y)
    kern = w * hyp * np.exp(logpref + (al - 0.5) * log_r)
    return s, kern


_MEHLER_CHUNK = 1 << 21


def _phi_mehler(params: JacobiParams, lam, t):
    out = np.empty(lam.shape)
    ts, inv = np.unique(t, return_inverse=True)
    lam_max = np.zeros(ts.shape)
    np.maximum.at(lam_max, inv, lam)
    n_of = np.array([_mehler_nodes(float(a), float(b), params.alpha)
                     for a, b in zip(ts, lam_max)])
    for n in np.unique(n_of):
        rows = np.nonzero(n_of == n)[0]
        s, kern = _mehler_kernel(params, ts[rows], int(n))
        local = np.full(ts.shape, -1)
        local[rows] = np.arange(rows.size)
        pts = np.nonzero(local[inv] >= 0)[0]
        step = max(1, _MEHLER_CHUNK // int(n))
        for lo in range(0, pts.size, step):
            idx = pts[lo:lo + step]
            r = local[inv[idx]]
            out[idx] = np.einsum("ij,ij->i", kern[r], np.cos(lam[idx, None] * s[r]))
    return out


# ---------------------------------------------------------------------------
# Jacobi functions: dispatch


def jacobi_phi(params: JacobiParams, lam, t, cfg: EvaluationConfig = DEFAULT_CONFIG):
    """phi_lambda^(alpha, beta)(t) = 2F1((rho + i l)/2, (rho - i l)/2; alpha + 1; -sinh(t)^2).

    Broadcasts lam against t. The function is even in lambda, and only
    |lambda| is used.
    """
    lam_arr = np.abs(np.asarray(lam, dtype=float))
    t_arr = np.asarray(t, dtype=float)
    if np.any(~np.isfinite(lam_arr)):
        raise ValidationError("lambda must be finite")
    _check_t(t_arr)
    lam_b, t_b = np.broadcast_arrays(lam_arr, t_arr)
    shape = lam_b.shape
    lam_f, t_f = lam_b.ravel(), t_b.ravel()
    out = np.empty(lam_f.shape)
    todo = np.ones(lam_f.shape, dtype=bool)

    zero = t_f == 0.0
    out[zero] = 1.0
    todo &= ~zero

    th = np.tanh(t_f)
    w = th * th
    x = 1.0 / np.cosh(np.minimum(t_f, 350.0)) ** 2
    cosine = params.is_cosine
    lam_hc_min = 0.0 if cosine else _HC_LAMBDA_MIN
    hc_lam_ok = (lam_f > lam_hc_min) if cosine else (lam_f >= lam_hc_min)

    if cosine:
        # a = (rho + i lambda)/2 vanishes at lambda = 0: the series is exactly 1.
        trivial = todo & (lam_f == 0.0)
        out[trivial] = 1.0
        todo &= ~trivial

    far = todo & (t_f > cfg.t_switch) & hc_lam_ok
    series = todo & ~far & (w <= _SERIES_W_MAX) & (2.0 * lam_f * th <= _SERIES_OSC_MAX)
    hc = todo & ~far & ~series & (x <= _HC_X_MAX) & (lam_f * x <= _HC_OSC_MAX) & hc_lam_ok
    rest = todo & ~(far | series | hc)

    if np.any(series):
        out[series] = _phi_series(params, lam_f[series], t_f[series], cfg)
    hc_all = far | hc
    if np.any(hc_all):
        out[hc_all] = _hc_terms(params, lam_f[hc_all], t_f[hc_all], cfg)
    if np.any(rest):
        if cosine:
            wide = rest & (2.0 * lam_f * th <= _COSINE_SERIES_OSC_MAX) & (w <= _SERIES_W_MAX)
            if np.any(wide):
                out[wide] = _phi_series(params, lam_f[wide], t_f[wide], cfg)
            point = rest & ~wide
            # degenerate Mehler kernel: a unit point mass at s = t
            out[point] = np.cos(lam_f[point] * t_f[point])
        else:
            out[rest] = _phi_mehler(params, lam_f[rest], t_f[rest])
    out = out.reshape(shape)
    return float(out) if out.ndim == 0 else out


def phi0(params: JacobiParams, t, cfg: EvaluationConfig = DEFAULT_CONFIG):
    """The ground spherical function phi_0(t) > 0."""
    return jacobi_phi(params, 0.0, t, cfg)


_PHI0_FAR = 30.0


@functools.lru_cache(maxsize=64)
def _phi0_far_coeffs(alpha: float, beta: float) -> tuple[float, float]:
    # phi_0(t) = (A t + B) e^{-rho t} up to O(t e^{-(rho+2) t})
    params = JacobiParams(alpha, beta)
    t1, t2 = _PHI0_FAR - 5.0, _PHI0_FAR
    g1, g2 = (float(phi0(params, t)) * math.exp(params.rho * t) for t in (t1, t2))
    a = (g2 - g1) / (t2 - t1)
    return a, g1 - a * t1


def log_phi0(params: JacobiParams, t, cfg: EvaluationConfig = DEFAULT_CONFIG):
    """log phi_0(t), free of underflow for large t."""
    arr = np.asarray(t, dtype=float)
    _check_t(arr)
    out = np.zeros(arr.shape)
    if not params.is_cosine:
        near = arr <= _PHI0_FAR
        if np.any(near):
            out[near] = np.log(np.asarray(phi0(params, arr[near], cfg), dtype=float))
        far = ~near
        if np.any(far):
            a, b = _phi0_far_coeffs(params.alpha, params.beta)
            tf = arr[far]
            out[far] = np.log(a * tf + b) - params.rho * tf
    return float(out) if out.ndim == 0 else out
