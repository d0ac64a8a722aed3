"""Vectorised adaptive Gauss-Kronrod quadrature with divergence detection.

Integrands are called on whole arrays of nodes and may return either one
value per node or one row of values per node (shape ``(k, m)``). Each of the
``m`` columns is integrated simultaneously on a shared, adaptively refined
panel set.

Endpoints where the integrand behaves like a power are handled by geometric
panel grading. The contributions of successive geometric panels are watched.
A stable ratio r < 1 gives a geometric tail estimate; r >= 1 marks the
integral as divergent, a result that callers consume rather than an error.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from .exceptions import QuadratureError, ValidationError

__all__ = [
    "QuadratureSpec",
    "QuadResult",
    "gk_integrate",
    "integrate_interval",
    "integrate_from_origin",
    "integrate_to_infinity",
    "integrate_halfline",
]

# 15-point Kronrod nodes on [0, 1) (positive half), with the embedded
# 7-point Gauss rule living on the odd positions.
_XK = np.array([
    0.991455371120812639206854697526329,
    0.949107912342758524526189684047851,
    0.864864423359769072789712788640926,
    0.741531185599394439863864773280788,
    0.586087235467691130294144845693013,
    0.405845151377397166906606412076961,
    0.207784955007898467600689403773245,
    0.0,
])
_WK = np.array([
    0.022935322010529224963732008058970,
    0.063092092629978553290700663189204,
    0.104790010322250183839876322541518,
    0.140653259715525918745189590510238,
    0.169004726639267902826583426598550,
    0.190350578064785409913256402421014,
    0.204432940075298892414161999234649,
    0.209482141084727828012999174891714,
])
_WG = np.array([
    0.129484966168869693270611432679082,
    0.279705391489276667901467771423780,
    0.381830050505118944950369775488975,
    0.417959183673469387755102040816327,
])
_NODES = np.concatenate([-_XK[:-1], _XK[::-1]])  # 15 nodes, ascending
_WKRON = np.concatenate([_WK[:-1], _WK[::-1]])
_WGAUSS = np.zeros(15)
_WGAUSS[[1, 3, 5]] = _WG[:3]
_WGAUSS[7] = _WG[3]
_WGAUSS[[9, 11, 13]] = _WG[2::-1]
_ROUNDOFF = 64.0 * np.finfo(float).eps


@dataclass(frozen=True)
class QuadratureSpec:
    """Accuracy contract for one integral.

    ``abs_tol`` is an absolute floor in the units of the integral.
    ``truncation_T`` bounds time integrals of functions without compact support.
    ``graded_origin`` turns on geometric refinement toward 0.
    """

    rel_tol: float = 1e-9
    abs_tol: float = 1e-15
    truncation_T: float = 60.0
    graded_origin: bool = True
    max_panels: int = 20000

    def __post_init__(self) -> None:
        if not (self.rel_tol > 0 and self.abs_tol > 0):
            raise ValidationError("rel_tol and abs_tol must be positive")
        if not self.truncation_T > 0:
            raise ValidationError("truncation_T must be positive")
        if int(self.max_panels) < 1:
            raise ValidationError("max_panels must be positive")

    def replace(self, **changes) -> "QuadratureSpec":
        vals = dict(rel_tol=self.rel_tol, abs_tol=self.abs_tol,
                    truncation_T=self.truncation_T,
                    graded_origin=self.graded_origin, max_panels=self.max_panels)
        vals.update(changes)
        return QuadratureSpec(**vals)


@dataclass
class QuadResult:
    """Value and error estimate per column, plus divergence flags."""

    value: np.ndarray
    error: np.ndarray
    panels: int
    converged: bool
    divergent: np.ndarray = field(default=None)
    regime: list = field(default=None)
    group_values: np.ndarray = field(default=None, repr=False)

    def __post_init__(self) -> None:
        if self.divergent is None:
            self.divergent = np.zeros(np.shape(self.value), dtype=bool)
        if self.regime is None:
            self.regime = [None] * int(np.size(self.value))

    @property
    def any_divergent(self) -> bool:
        return bool(np.any(self.divergent))

    def scalar(self) -> float:
        return float(np.ravel(self.value)[0])


def _eval_panels(fn, a: np.ndarray, b: np.ndarray):
    half = 0.5 * (b - a)
    mid = 0.5 * (b + a)
    x = (mid[:, None] + half[:, None] * _NODES[None, :]).ravel()
    y = np.asarray(fn(x), dtype=float)
    if y.ndim == 1:
        y = y[:, None]
    y = y.reshape(a.size, 15, -1)
    if not np.all(np.isfinite(y)):
        raise QuadratureError("integrand returned a non-finite value")
    kron = np.einsum("pkm,k->pm", y, _WKRON) * half[:, None]
    gauss = np.einsum("pkm,k->pm", y, _WGAUSS) * half[:, None]
    mag = np.einsum("pkm,k->pm", np.abs(y), _WKRON) * half[:, None]
    return kron, np.abs(kron - gauss), mag


def gk_integrate(fn, breaks, rel_tol: float = 1e-9, abs_tol: float = 1e-15,
                 max_panels: int = 20000, raise_on_failure: bool = False) -> QuadResult:
    """Integrate over [breaks[0], breaks[-1]] with initial panels given by
    ``breaks``. ``group_values`` holds the integral over each initial panel."""
    br = np.asarray(breaks, dtype=float)
    if br.ndim != 1 or br.size < 2 or np.any(np.diff(br) <= 0):
        raise ValidationError("breaks must be a strictly increasing sequence")
    a, b = br[:-1].copy(), br[1:].copy()
    grp = np.arange(a.size)
    val, err, mag = _eval_panels(fn, a, b)
    converged = False
    while True:
        total = val.sum(axis=0)
        # the floor keeps cancelling columns from chasing rounding noise
        noise = _ROUNDOFF * mag.sum(axis=0)
        tol = np.maximum(np.maximum(abs_tol, rel_tol * np.abs(total)), noise)
        etot = err.sum(axis=0)
        if np.all(etot <= tol):
            converged = True
            break
        npan = a.size
        score = np.max(err / tol[None, :], axis=1)
        split = score * npan > 1.0
        # never refine below double precision resolution
        split &= (b - a) > 1e-14 * np.maximum(np.abs(a), np.abs(b)) + 1e-300
        if not np.any(split) or npan + int(split.sum()) > max_panels:
            break
        sa, sb, sg = a[split], b[split], grp[split]
        m = 0.5 * (sa + sb)
        na = np.concatenate([sa, m])
        nb = np.concatenate([m, sb])
        ng = np.concatenate([sg, sg])
        nv, ne, nm = _eval_panels(fn, na, nb)
        keep = ~split
        a = np.concatenate([a[keep], na])
        b = np.concatenate([b[keep], nb])
        grp = np.concatenate([grp[keep], ng])
        val = np.concatenate([val[keep], nv])
        err = np.concatenate([err[keep], ne])
        mag = np.concatenate([mag[keep], nm])
    if not converged and raise_on_failure:
        raise QuadratureError(
            f"adaptive quadrature did not reach tolerance within {max_panels} panels")
    gv = np.zeros((br.size - 1, val.shape[1]))
    np.add.at(gv, grp, val)
    return QuadResult(value=val.sum(axis=0), error=err.sum(axis=0), panels=a.size,
                      converged=converged, group_values=gv)


def integrate_interval(fn, a: float, b: float, spec: QuadratureSpec,
                       breakpoints=(), n_initial: int = 1) -> QuadResult:
    """Plain adaptive integral over a finite interval."""
    pts = sorted({float(a), float(b), *[float(p) for p in breakpoints if a < p < b]})
    br = []
    for lo, hi in zip(pts[:-1], pts[1:]):
        br.extend(np.linspace(lo, hi, n_initial + 1)[:-1])
    br.append(pts[-1])
    return gk_integrate(fn, br, spec.rel_tol, spec.abs_tol, spec.max_panels)


def _ratio_tail(groups: np.ndarray, rel_tol: float, total: np.ndarray, strict: bool = False):
    """Inspect the last geometric contributions (ordered toward the singular
    end). Returns (tail, divergent, settled) per column.

    ``strict`` asks for three non-decaying ratios that agree to 5% before a
    column is called divergent; transients of smooth integrands on doubling
    panels can grow for a while before they decay.
    """
    c = np.abs(groups)
    c1, c2, c3 = c[-1], c[-2], c[-3]
    with np.errstate(divide="ignore", invalid="ignore"):
        r1 = np.where(c2 > 0, c1 / c2, 0.0)
        r2 = np.where(c3 > 0, c2 / c3, 0.0)
    tiny = c1 <= 1e-300
    small = (c1 <= 0.01 * rel_tol * np.abs(total)) & (r1 < 0.95)
    stable = np.abs(r1 - r2) <= 1e-4 * np.maximum(r1, 1e-300)
    grow = 1.0 - 1e-9
    divergent = (~tiny) & (r1 >= grow) & (r2 >= grow) & ~small
    if strict:
        if len(c) < 4:
            divergent[:] = False
        else:
            with np.errstate(divide="ignore", invalid="ignore"):
                r3 = np.where(c[-4] > 0, c3 / c[-4], 0.0)
            agree = (np.abs(r1 - r2) <= 0.05 * r1) & (np.abs(r2 - r3) <= 0.05 * r2)
            divergent &= (r3 >= grow) & agree
    with np.errstate(divide="ignore", invalid="ignore"):
        tail = np.where((r1 < 1.0) & ~tiny, groups[-1] * r1 / (1.0 - r1), 0.0)
    settled = tiny | small | divergent | (stable & (r1 < 1.0))
    return tail, divergent, settled


def integrate_from_origin(fn, b: float, spec: QuadratureSpec, levels: int = 48,
                          max_levels: int = 960) -> QuadResult:
    """Integral over (0, b] with dyadic grading toward 0.

    Panels [b 2^-(k+1), b 2^-k] are added in batches of ``levels`` until the
    contributions either fall below tolerance, settle into a geometric
    progression (whose remainder is added), or stop decaying (divergent).
    """
    if not b > 0:
        raise ValidationError("upper limit must be positive")
    depth = levels
    while True:
        br = b * np.exp2(-np.arange(depth, -1, -1, dtype=float))
        res = gk_integrate(fn, br, spec.rel_tol, spec.abs_tol, spec.max_panels)
        groups = res.group_values[::-1]  # ordered from b toward 0
        tail, divergent, settled = _ratio_tail(groups, spec.rel_tol, res.value)
        if np.all(settled) or depth >= max_levels:
            break
        depth = min(2 * depth, max_levels)
    value = np.where(divergent, np.inf, res.value + tail)
    regime = ["origin" if d else None for d in divergent]
    return QuadResult(value=value, error=res.error + 0.1 * np.abs(tail), panels=res.panels,
                      converged=res.converged and bool(np.all(settled)),
                      divergent=divergent, regime=regime)


def integrate_to_infinity(fn, a: float, width: float, spec: QuadratureSpec,
                          batch: int = 1, max_levels: int = 60,
                          min_divergence_level: int = 6) -> QuadResult:
    """Integral over [a, inf) on doubling panels a + width (2^k - 1).

    Panels are added a few at a time, so the integrand is only sampled as far
    out as the tail test requires.
    """
    if not width > 0:
        raise ValidationError("width must be positive")
    groups, value, error, panels, ok = [], 0.0, 0.0, 0, True
    level = 0
    while True:
        nxt = min(level + (3 if level == 0 else batch), max_levels)
        br = a + width * (np.exp2(np.arange(level, nxt + 1, dtype=float)) - 1.0)
        # later panels only need accuracy relative to what is already summed
        floor = np.maximum(spec.abs_tol, 0.5 * spec.rel_tol * np.abs(value))
        res = gk_integrate(fn, br, spec.rel_tol, floor, spec.max_panels)
        groups.extend(res.group_values)
        value = value + res.value
        error = error + res.error
        panels += res.panels
        ok &= res.converged
        level = nxt
        tail, divergent, settled = _ratio_tail(np.array(groups), spec.rel_tol, value,
                                               strict=True)
        if level < min_divergence_level:
            settled &= ~divergent
            divergent[:] = False
        if np.all(settled) or level >= max_levels:
            break
    value = np.where(divergent, np.inf, value + tail)
    regime = ["infinity" if d else None for d in divergent]
    return QuadResult(value=value, error=error + 0.1 * np.abs(tail), panels=panels,
                      converged=ok and bool(np.all(settled)),
                      divergent=divergent, regime=regime)


def integrate_halfline(fn, spec: QuadratureSpec, split: float = 1.0,
                       width: float = 1.0, origin_graded: bool = True) -> QuadResult:
    """Integral over (0, inf): graded head on (0, split], doubling tail after."""
    if origin_graded:
        head = integrate_from_origin(fn, split, spec)
    else:
        head = integrate_interval(fn, 0.0, split, spec)
    tail = integrate_to_infinity(fn, split, width, spec)
    return combine(head, tail)


def combine(*parts: QuadResult) -> QuadResult:
    """Sum independent pieces of one integral."""
    value = sum(np.asarray(p.value, dtype=float) for p in parts)
    error = sum(np.asarray(p.error, dtype=float) for p in parts)
    divergent = np.zeros(np.shape(value), dtype=bool)
    regime = [None] * int(np.size(value))
    for p in parts:
        divergent |= np.asarray(p.divergent, dtype=bool)
        for i, r in enumerate(p.regime):
            if r is not None and regime[i] is None:
                regime[i] = r
    value = np.where(divergent, np.inf, value)
    return QuadResult(value=value, error=error, panels=sum(p.panels for p in parts),
                      converged=all(p.converged for p in parts),
                      divergent=divergent, regime=regime)


def log_grid(lo: float, hi: float, n: int) -> np.ndarray:
    """n log-spaced points on [lo, hi]."""
    return np.exp(np.linspace(math.log(lo), math.log(hi), n))
