"""Power weights, distribution functions and non-increasing rearrangements.

Rearrangements are taken with respect to m~(t) dt (spatial weights) or
n(l) dl (spectral weights). Cumulative measures M(x) = int_0^x are tabulated
once per (alpha, beta, measure) on a log grid over [1e-12, 1e12] and
extended by power laws beyond it.
"""

from __future__ import annotations

import functools
import math
from dataclasses import dataclass
from enum import Enum
from typing import Callable

import numpy as np
from scipy.optimize import brentq

from .exceptions import ConvergenceError, ValidationError
from .quadrature import (
    QuadratureSpec,
    gk_integrate,
    integrate_from_origin,
    integrate_to_infinity,
    log_grid,
)
from .special_functions import JacobiParams, measure_mtilde, plancherel_density

__all__ = [
    "MeasureTag",
    "SpectralWeight",
    "SpatialWeight",
    "RearrangementProfile",
    "SupFunctional",
    "cumulative_measure",
    "distribution_function",
    "decreasing_rearrangement",
    "rearrangement_table",
    "analytic_profile",
    "hardy_P",
    "bellman_Q",
    "pitt_sup_functional",
]

DEFAULT_QUAD = QuadratureSpec(rel_tol=1e-10)

_X_LO, _X_HI = 1e-12, 1e12
_TABLE_PER_DECADE = 16
_SCAN_PER_DECADE = 8
_BRACKET_STEPS = 60
_BISECT_ITERS = 60


class MeasureTag(str, Enum):
    MTILDE = "mtilde"
    N = "n"


def _tag(measure) -> MeasureTag:
    try:
        return MeasureTag(measure)
    except ValueError:
        raise ValidationError(f"measure must be 'mtilde' or 'n', got {measure!r}") from None


@dataclass(frozen=True)
class SpectralWeight:
    """u(l) = (l^2 + zeta^2)^(-sigma/2)."""

    zeta: float
    sigma: float

    def __post_init__(self) -> None:
        if not (math.isfinite(self.zeta) and self.zeta >= 0):
            raise ValidationError("zeta must be finite and >= 0")
        if not math.isfinite(self.sigma):
            raise ValidationError("sigma must be finite")

    @property
    def finite_at_zero(self) -> bool:
        return self.zeta > 0 or self.sigma <= 0

    def __call__(self, lam):
        lam = np.asarray(lam, dtype=float)
        with np.errstate(divide="ignore"):
            return (lam * lam + self.zeta * self.zeta) ** (-0.5 * self.sigma)


@dataclass(frozen=True)
class SpatialWeight:
    """v(t) = t^kappa."""

    kappa: float

    def __post_init__(self) -> None:
        if not (math.isfinite(self.kappa) and self.kappa >= 0):
            raise ValidationError("kappa must be finite and >= 0")

    def __call__(self, t):
        t = np.asarray(t, dtype=float)
        if self.kappa == 0:
            return np.ones(t.shape)
        return t ** self.kappa

    def reciprocal(self) -> Callable:
        k = self.kappa

        def inv(t):
            t = np.asarray(t, dtype=float)
            if k == 0:
                return np.ones(t.shape)
            with np.errstate(divide="ignore"):
                return t ** (-k)

        return inv


@dataclass(frozen=True)
class RearrangementProfile:
    """s^exponent_near for s <= crossover, continued by s^exponent_far."""

    exponent_near: float
    exponent_far: float
    crossover: float = 1.0

    @property
    def non_increasing(self) -> bool:
        return self.exponent_near <= 0 and self.exponent_far <= 0

    def __call__(self, s):
        s = np.asarray(s, dtype=float)
        c = self.crossover
        near = (s / c) ** self.exponent_near
        far = (s / c) ** self.exponent_far
        return np.where(s <= c, near, far)


# ---------------------------------------------------------------------------
# cumulative measures


def _density(params: JacobiParams, tag: MeasureTag, x: np.ndarray) -> np.ndarray:
    if tag is MeasureTag.MTILDE:
        return np.asarray(measure_mtilde(params, x), dtype=float)
    if params.is_cosine:
        return np.full(np.shape(x), 4.0 / math.sqrt(2.0 * math.pi))
    return np.asarray(plancherel_density(params, x), dtype=float)


@functools.lru_cache(maxsize=32)
def _table(alpha: float, beta: float, tag: MeasureTag):
    params = JacobiParams(alpha, beta)
    decades = math.log10(_X_HI / _X_LO)
    x = log_grid(_X_LO, _X_HI, int(decades * _TABLE_PER_DECADE) + 1)
    res = gk_integrate(lambda y: _density(params, tag, y), x, rel_tol=1e-13, abs_tol=1e-300)
    seg = res.group_values[:, 0]
    d = _density(params, tag, x[:2])
    k_lo = math.log(d[1] / d[0]) / math.log(x[1] / x[0])
    head = x[0] * d[0] / (k_lo + 1.0)
    cum = head + np.concatenate([[0.0], np.cumsum(seg)])
    d_hi = _density(params, tag, x[-2:])
    k_hi = math.log(d_hi[1] / d_hi[0]) / math.log(x[-1] / x[-2])
    return x, cum, k_lo, k_hi


def cumulative_measure(params: JacobiParams, measure, x) -> np.ndarray:
    """M(x) = int_0^x of m~ or n, vectorised."""
    tag = _tag(measure)
    xs, cum, k_lo, k_hi = _table(params.alpha, params.beta, tag)
    x = np.atleast_1d(np.asarray(x, dtype=float))
    if np.any(x < 0) or np.any(np.isnan(x)):
        raise ValidationError("cumulative measure needs x >= 0")
    out = np.empty(x.shape)
    lo = x <= xs[0]
    hi = x >= xs[-1]
    mid = ~(lo | hi)
    out[lo] = cum[0] * (x[lo] / xs[0]) ** (k_lo + 1.0)
    with np.errstate(over="ignore"):
        out[hi] = cum[-1] + _density(params, tag, xs[-1:])[0] * xs[-1] / (k_hi + 1.0) * (
            (x[hi] / xs[-1]) ** (k_hi + 1.0) - 1.0)
    if np.any(mid):
        xm = x[mid]
        i = np.clip(np.searchsorted(xs, xm) - 1, 0, xs.size - 2)
        a = xs[i]
        # one fixed 15-point Kronrod panel per partial segment
        from .quadrature import _NODES, _WKRON
        half = 0.5 * (xm - a)
        nodes = (0.5 * (xm + a))[:, None] + half[:, None] * _NODES[None, :]
        vals = _density(params, tag, nodes.ravel()).reshape(nodes.shape)
        out[mid] = cum[i] + half * (vals @ _WKRON)
    return out


def _inverse_cumulative(params: JacobiParams, tag: MeasureTag, s: float) -> float:
    """x with M(x) = s (M is strictly increasing)."""
    f = lambda lx: float(cumulative_measure(params, tag, math.exp(lx))[0]) - s
    lo, hi = math.log(_X_LO), math.log(_X_HI)
    while f(lo) > 0:
        lo -= 10.0
    while f(hi) < 0:
        hi += 10.0
    return math.exp(brentq(f, lo, hi, xtol=1e-14, rtol=1e-14, maxiter=200))


# ---------------------------------------------------------------------------
# distribution function and rearrangement


def _superlevel_intervals(w: Callable, gamma: float):
    decades = math.log10(_X_HI / _X_LO)
    xs = log_grid(_X_LO, _X_HI, int(decades * _SCAN_PER_DECADE) + 1)
    vals = np.asarray(w(xs), dtype=float)
    if vals.shape != xs.shape:
        raise ValidationError("weight must map an array of points to an array of values")
    above = vals > gamma
    if above[-1]:
        return None  # unbounded superlevel set
    g = lambda lx: float(np.asarray(w(np.array([math.exp(lx)])), dtype=float)[0]) - gamma
    edges = []
    for i in np.nonzero(above[1:] != above[:-1])[0]:
        lx = brentq(g, math.log(xs[i]), math.log(xs[i + 1]), xtol=1e-13, rtol=1e-13)
        edges.append(math.exp(lx))
    if above[0]:
        edges.insert(0, 0.0)
    return list(zip(edges[0::2], edges[1::2]))


def distribution_function(w: Callable, measure, params: JacobiParams, gamma: float,
                          quad: QuadratureSpec | None = None) -> float:
    """mu{x : w(x) > gamma}; ``math.inf`` when the set has unbounded measure.

    The superlevel set is located on a log scan of [1e-12, 1e12] (8 points per
    decade) and its edges refined by bracketing root search.
    """
    tag = _tag(measure)
    if not (gamma > 0 and math.isfinite(gamma)):
        raise ValidationError("gamma must be a positive finite number")
    intervals = _superlevel_intervals(w, gamma)
    if intervals is None:
        return math.inf
    total = 0.0
    for a, b in intervals:
        ma, mb = cumulative_measure(params, tag, np.array([a, b]))
        total += mb - ma
    return float(total)


def decreasing_rearrangement(w: Callable, measure, params: JacobiParams, s: float,
                             quad: QuadratureSpec | None = None) -> float:
    """w*(s) = inf{gamma > 0 : d_w(gamma) <= s}, by bisection in log gamma."""
    tag = _tag(measure)
    if not (s > 0 and math.isfinite(s)):
        raise ValidationError("s must be a positive finite number")
    d = lambda g: distribution_function(w, tag, params, g)
    hi = 1.0
    steps = 0
    while d(hi) > s:
        hi *= 10.0
        steps += 1
        if steps > _BRACKET_STEPS:
            raise ConvergenceError("rearrangement bracket failed: weight appears unbounded")
    lo = hi
    steps = 0
    while d(lo) <= s:
        lo /= 10.0
        steps += 1
        if steps > _BRACKET_STEPS:
            return 0.0  # d(gamma) <= s for all gamma down to 1e-60
    llo, lhi = math.log(lo), math.log(hi)
    for _ in range(_BISECT_ITERS):
        mid = 0.5 * (llo + lhi)
        if d(math.exp(mid)) <= s:
            lhi = mid
        else:
            llo = mid
        if lhi - llo < 1e-13:
            break
    return math.exp(lhi)


def rearrangement_table(w: Callable, measure, params: JacobiParams, s) -> np.ndarray:
    """w* on an array of s values. A weight that is non-increasing on the scan
    grid is rearranged as w(M^{-1}(s)); anything else goes through bisection."""
    tag = _tag(measure)
    s = np.atleast_1d(np.asarray(s, dtype=float))
    decades = math.log10(_X_HI / _X_LO)
    xs = log_grid(_X_LO, _X_HI, int(decades * _SCAN_PER_DECADE) + 1)
    vals = np.asarray(w(xs), dtype=float)
    if np.all(np.diff(vals) <= 0) and np.all(np.isfinite(vals)):
        pts = np.array([_inverse_cumulative(params, tag, float(v)) for v in s])
        return np.asarray(w(pts), dtype=float)
    return np.array([decreasing_rearrangement(w, tag, params, float(v)) for v in s])


def analytic_profile(weight_kind: str, params: JacobiParams, exponent: float,
                     zeta: float = 0.0) -> RearrangementProfile:
    """Two-regime power profile of a rearranged power weight.

    ``weight_kind`` is "inverse_spatial" for 1/v_kappa against m~, or
    "spectral" for u_{zeta,sigma} against n.
    """
    if not (math.isfinite(exponent) and exponent >= 0):
        raise ValidationError("negative exponents are not supported by the rearrangement profiles")
    n_dim = 2.0 * (params.alpha + 1.0)
    if weight_kind == "inverse_spatial":
        return RearrangementProfile(-exponent / n_dim, -exponent / 3.0)
    if weight_kind == "spectral":
        if zeta < 0:
            raise ValidationError("zeta must be >= 0")
        near = 0.0 if zeta > 0 else -exponent / 3.0
        return RearrangementProfile(near, -exponent / n_dim)
    raise ValidationError(f"unknown weight kind {weight_kind!r}")


# ---------------------------------------------------------------------------
# Hardy and Bellman operators


def hardy_P(g: Callable, x: float, quad: QuadratureSpec | None = None) -> float:
    """P_x g = int_0^x g; ``math.inf`` if the integral diverges at 0."""
    if not x > 0:
        raise ValidationError("x must be positive")
    spec = quad or DEFAULT_QUAD
    res = integrate_from_origin(lambda y: np.asarray(g(y), dtype=float), x, spec)
    return math.inf if res.any_divergent else res.scalar()


def bellman_Q(g: Callable, x: float, quad: QuadratureSpec | None = None) -> float:
    """Q_x g = int_x^inf g; ``math.inf`` if the tail diverges."""
    if not x > 0:
        raise ValidationError("x must be positive")
    spec = quad or DEFAULT_QUAD
    res = integrate_to_infinity(lambda y: np.asarray(g(y), dtype=float), x, max(x, 1.0), spec,
                                min_divergence_level=3)
    return math.inf if res.any_divergent else res.scalar()


# ---------------------------------------------------------------------------
# sup functional


@dataclass
class SupFunctional:
    """sup_r (P_{1/r} u*^q)^{1/q} (P_r v_*^{-p'})^{1/p'} over an r grid.

    Unpacks as (sup_value, arg_r, boundary_flag). ``regime`` names the end
    ("near" or "far") responsible for an infinite value.
    """

    sup_value: float
    arg_r: float
    boundary_flag: bool
    regime: str | None = None
    values: np.ndarray | None = None

    def __iter__(self):
        return iter((self.sup_value, self.arg_r, self.boundary_flag))


def _power_law_primitive(s: np.ndarray, g: np.ndarray):
    """Running integral of a positive tabulated function, exact for power laws
    between nodes, plus the head int_0^{s_0}. Returns (cum, head_ok)."""
    ls, lg = np.log(s), np.log(g)
    e = np.diff(lg) / np.diff(ls)
    ratio = s[1:] / s[:-1]
    with np.errstate(over="ignore", invalid="ignore"):
        seg = np.where(np.abs(e + 1.0) < 1e-12,
                       g[:-1] * s[:-1] * np.log(ratio),
                       g[:-1] * s[:-1] / (e + 1.0) * (ratio ** (e + 1.0) - 1.0))
    e0 = e[0]
    head_ok = e0 > -1.0 + 1e-9
    head = g[0] * s[0] / (e0 + 1.0) if head_ok else math.inf
    return head + np.concatenate([[0.0], np.cumsum(seg)]), bool(head_ok)


def _primitive_at(s_tab, cum, g_tab, x):
    """Evaluate the power-law primitive at points x inside the table range."""
    i = np.clip(np.searchsorted(s_tab, x) - 1, 0, s_tab.size - 2)
    e = np.log(g_tab[i + 1] / g_tab[i]) / np.log(s_tab[i + 1] / s_tab[i])
    r = x / s_tab[i]
    part = np.where(np.abs(e + 1.0) < 1e-12, g_tab[i] * s_tab[i] * np.log(r),
                    g_tab[i] * s_tab[i] / (e + 1.0) * (r ** (e + 1.0) - 1.0))
    return cum[i] + part


def pitt_sup_functional(u, v, p: float, q: float, params: JacobiParams, r_grid=None,
                        quad: QuadratureSpec | None = None) -> SupFunctional:
    """Evaluate the weight condition of the sublinear-operator criterion.

    u* is the rearrangement of u against n, v_* = [(1/v)*]^{-1} with the
    rearrangement against m~. ``u`` and ``v`` may be SpectralWeight /
    SpatialWeight instances or plain callables (for ``v`` a callable is v
    itself, and 1/v is formed pointwise).
    """
    if not (1.0 < p <= q < math.inf):
        raise ValidationError("the sup functional needs 1 < p <= q < inf")
    pc = p / (p - 1.0)
    r = log_grid(1e-4, 1e4, 200) if r_grid is None else np.asarray(r_grid, dtype=float)
    if r.ndim != 1 or r.size < 2 or np.any(r <= 0) or np.any(np.diff(r) <= 0):
        raise ValidationError("r_grid must be increasing and positive")
    inv_v = v.reciprocal() if isinstance(v, SpatialWeight) else (
        lambda t: 1.0 / np.asarray(v(t), dtype=float))
    lo = min(1.0 / r[-1], r[0]) * 1e-3
    hi = max(1.0 / r[0], r[-1]) * 10.0
    s_tab = log_grid(lo, hi, int(math.log10(hi / lo) * 12) + 1)

    u_star = rearrangement_table(u, MeasureTag.N, params, s_tab)
    v_low = rearrangement_table(inv_v, MeasureTag.MTILDE, params, s_tab)  # (1/v)* = 1/v_*
    gu = u_star ** q
    gv = v_low ** pc
    if np.any(gu <= 0) or np.any(gv <= 0) or not (np.all(np.isfinite(gu)) and np.all(np.isfinite(gv))):
        raise ValidationError("rearranged weights must be positive and finite on the grid")
    cu, ok_u = _power_law_primitive(s_tab, gu)
    cv, ok_v = _power_law_primitive(s_tab, gv)
    if not (ok_u and ok_v):
        return SupFunctional(math.inf, float(r[0]), True, regime="near")
    pu = _primitive_at(s_tab, cu, gu, 1.0 / r)
    pv = _primitive_at(s_tab, cv, gv, r)
    vals = pu ** (1.0 / q) * pv ** (1.0 / pc)
    k = int(np.argmax(vals))
    flag = False
    if k in (0, r.size - 1):
        # still climbing toward the edge of the grid? (rise per decade of r)
        target = r[k] * (10.0 if k == 0 else 0.1)
        j = int(np.argmin(np.abs(np.log(r / target))))
        if j != k:
            rise = math.log10(vals[k] / vals[j]) / abs(math.log10(r[k] / r[j]))
            flag = rise > 0.01
    return SupFunctional(float(vals[k]), float(r[k]), bool(flag), values=vals)
