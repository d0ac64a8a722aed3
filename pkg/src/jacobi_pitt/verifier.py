"""Numerical experiments for the Pitt, Hardy-Littlewood-Paley, Hausdorff-Young
and uncertainty inequalities.

A ``RatioReport`` holds LHS and RHS of one inequality for one test function.
``blowup_scan`` runs a one-parameter family through ``pitt_ratio`` and fits
the log-log growth of the ratio in the direction where the family degenerates
(s -> inf, s -> 0, or the regularizer eps' -> 0).

Witness families with jump discontinuities have transforms that decay only
algebraically, so their spectral integrals are cut at a finite frequency.
The LHS is then a lower bound, which is still valid evidence of growth. The
cut is written into ``quadrature_note``.
"""

from __future__ import annotations

import io
import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from fractions import Fraction

import numpy as np

from .exceptions import NumericalError, ValidationError
from .quadrature import QuadratureSpec
from .regions import PittQuery, RankOneGeometry
from .special_functions import DEFAULT_CONFIG, EvaluationConfig, JacobiParams, phi0
from .transforms import (
    FREQUENCY,
    TIME,
    AnalyticFunction,
    bump,
    norm_integral,
    transform_function,
)

__all__ = [
    "FAMILY_KINDS",
    "VERIFY_QUAD",
    "TestFamily",
    "RatioReport",
    "SweepResult",
    "pitt_ratio",
    "necessity_witness",
    "blowup_scan",
    "growth_fit",
    "hlp_ratio",
    "hpw_l2_ratio",
    "weighted_uncertainty_ratio",
    "hausdorff_young_defect",
]

FAMILY_KINDS = ("bump", "witness_f0", "witness_f1", "witness_f2",
                "witness_F0", "witness_F1", "witness_F2", "gaussianlike")

VERIFY_QUAD = QuadratureSpec(rel_tol=1e-6)
GROWTH_THRESHOLD = 0.1
DEFAULT_EPS = 0.01
_CAP_WIDE = 32.0
_CAP_F2 = 4.0
_CAP_F1 = 8.0


def _conj(p: float) -> float:
    return math.inf if p == 1.0 else p / (p - 1.0)


# ---------------------------------------------------------------------------
# test families


@dataclass(frozen=True)
class TestFamily:
    """A one-parameter family of test functions.

    ``family_param`` is the support scale a (bump, gaussianlike), the cut s
    (f1, f2, F1, F2) or the regularizer eps' (f0, F0). Witness formulas are
    the ones used in the necessity proofs; for the modified transforms the
    ground function phi_0 is replaced by its modified analogue, which is 1.
    """

    __test__ = False  # keep pytest from collecting this class

    kind: str
    family_param: float
    params: JacobiParams
    side: str = TIME
    p: float = 2.0
    kappa: float = 0.0
    zeta: float = 0.0
    modified: bool = False

    def __post_init__(self) -> None:
        if self.kind not in FAMILY_KINDS:
            raise ValidationError(f"unknown family kind {self.kind!r}")
        if not (math.isfinite(self.family_param) and self.family_param > 0):
            raise ValidationError("family_param must be positive and finite")
        if self.side not in (TIME, FREQUENCY):
            raise ValidationError(f"unknown side {self.side!r}")
        expected = {"witness_f0": TIME, "witness_f1": TIME, "witness_f2": TIME,
                    "witness_F0": FREQUENCY, "witness_F1": FREQUENCY, "witness_F2": FREQUENCY}
        if self.kind in expected and self.side != expected[self.kind]:
            raise ValidationError(f"{self.kind} lives on the {expected[self.kind]} side")
        if not self.p > 1.0:
            raise ValidationError("witness families need p > 1")

    def with_param(self, value: float) -> "TestFamily":
        return TestFamily(self.kind, float(value), self.params, self.side, self.p,
                          self.kappa, self.zeta, self.modified)

    @property
    def direction(self) -> int:
        """+1 if the family degenerates as the parameter grows, -1 as it shrinks."""
        if self.kind in ("witness_f0", "witness_F0", "witness_f1", "witness_F1"):
            return -1
        return 1

    @property
    def is_witness(self) -> bool:
        return self.kind.startswith("witness")

    def _ground(self, t):
        if self.modified:
            return np.ones(np.shape(t))
        return phi0(self.params, t)

    def proof_function(self, value: float | None = None) -> AnalyticFunction:
        """The family member exactly as the proofs write it."""
        v = self.family_param if value is None else float(value)
        p, k = self.p, self.kappa
        N = 2.0 * (self.params.alpha + 1.0)
        power = -k / (p - 1.0)
        kind = self.kind
        if kind == "bump":
            return bump(v, self.side)
        if kind == "gaussianlike":
            return AnalyticFunction(lambda x: np.exp(-(x / v) ** 2), (0.0, math.inf), (),
                                    self.side, f"gauss({v:g})")
        if kind == "witness_f0":
            e = -N / p + v
            return AnalyticFunction(lambda t: t ** e, (0.0, 1.0), (), TIME, f"f0(eps={v:g})")
        if kind in ("witness_f1", "witness_f2"):
            ground = self._ground
            gp = 1.0 / (p - 1.0)
            lo = 0.0 if kind == "witness_f1" else 1.0
            if kind == "witness_f2" and not v > 1.0:
                raise ValidationError("f2 needs s > 1")
            return AnalyticFunction(lambda t: t ** power * ground(t) ** gp, (lo, v), (), TIME,
                                    f"{kind[-2:]}(s={v:g})")
        if kind == "witness_F0":
            e = -3.0 / p + v
            return AnalyticFunction(lambda lam: lam ** e, (0.0, 1.0), (), FREQUENCY,
                                    f"F0(eps={v:g})")
        lo = 0.0 if kind == "witness_F1" else 1.0
        if kind == "witness_F2" and not v > 1.0:
            raise ValidationError("F2 needs s > 1")
        return AnalyticFunction(lambda lam: lam ** power, (lo, v), (), FREQUENCY,
                                f"{kind[-2:]}(s={v:g})")

    def member(self, value: float | None = None) -> AnalyticFunction:
        """The function fed into the weighted inequality.

        The proofs test the operator f -> (weight) T(t^-kappa f); in the
        weighted form that is the proof function times t^-kappa (time side)
        or (l^2 + zeta^2)^(-kappa/2) (frequency side).
        """
        f = self.proof_function(value)
        if not self.is_witness or self.kappa == 0.0:
            return f
        k, z = self.kappa, self.zeta
        if self.side == TIME:
            return f.multiplied(lambda t: t ** (-k))
        return f.multiplied(lambda lam: (lam * lam + z * z) ** (-0.5 * k))

    def spectral_cap(self, value: float | None = None) -> float | None:
        """Frequency cut for the LHS of a direct transform, None if not needed."""
        v = self.family_param if value is None else float(value)
        if self.kind == "witness_f1":
            return _CAP_F1 / v
        if self.kind == "witness_f2":
            return _CAP_F2
        if self.kind == "witness_f0":
            return _CAP_WIDE
        return None


# ---------------------------------------------------------------------------
# reports


@dataclass
class RatioReport:
    lhs: float
    rhs: float
    ratio: float
    query: object = None
    family_param: float = math.nan
    quadrature_note: str = ""
    divergent: bool = False
    indeterminate: bool = False
    extras: dict = field(default_factory=dict)


def _make_report(lhs, rhs, query, family_param, note, zero=False, extras=None) -> RatioReport:
    extras = extras or {}
    if zero:
        return RatioReport(0.0, 0.0, 0.0, query, family_param, note + "; f = 0", False, False,
                           extras)
    lhs_bad = not math.isfinite(lhs)
    rhs_bad = not math.isfinite(rhs)
    if lhs_bad and rhs_bad:
        return RatioReport(math.inf, math.inf, math.nan, query, family_param,
                           note + "; both sides divergent", True, True, extras)
    if lhs_bad:
        return RatioReport(math.inf, rhs, math.inf, query, family_param,
                           note + "; divergent LHS", True, False, extras)
    if rhs_bad:
        return RatioReport(lhs, math.inf, 0.0, query, family_param,
                           note + "; divergent RHS", False, False, extras)
    if rhs <= 0.0:
        ind = lhs <= 0.0
        return RatioReport(lhs, rhs, math.nan if ind else math.inf, query, family_param,
                           note + "; vanishing RHS", not ind, ind, extras)
    return RatioReport(lhs, rhs, lhs / rhs, query, family_param, note, False, False, extras)


@dataclass
class SweepResult:
    reports: list
    growth_exponent: float
    verdict_hint: str
    direction: int = 1

    def to_csv(self) -> str:
        buf = io.StringIO()
        buf.write("family_param,lhs,rhs,ratio,divergent\n")
        for r in self.reports:
            ratio = "" if r.divergent else _fmt(r.ratio)
            buf.write(f"{_fmt(r.family_param)},{_fmt(r.lhs)},{_fmt(r.rhs)},{ratio},"
                      f"{'true' if r.divergent else 'false'}\n")
        return buf.getvalue()


def _fmt(x: float) -> str:
    x = float(x)
    if math.isnan(x):
        return "nan"
    if math.isinf(x):
        return "inf" if x > 0 else "-inf"
    return f"{x:.17g}"


# ---------------------------------------------------------------------------
# norms of transforms


def _restrict(g: AnalyticFunction, cap: float | None) -> AnalyticFunction:
    if cap is None:
        return g
    return AnalyticFunction(g.func, (g.support[0], min(g.support[1], cap)), g.breakpoints,
                            g.domain_tag, g.name)


def _norm(g, p: float, weight, measure: str, params: JacobiParams, quad: QuadratureSpec,
          cfg: EvaluationConfig) -> float:
    res = norm_integral(g, p, weight, measure, params, quad, cfg)
    val = float(res.value[0])
    if res.any_divergent or not math.isfinite(val):
        return math.inf
    return max(val, 0.0) ** (1.0 / p)


def _transform_norm(f: AnalyticFunction, params, kind: str, q: float, weight, measure: str,
                    quad, cfg, cap) -> float:
    with np.errstate(invalid="ignore", over="ignore"):
        g = _restrict(transform_function(f, params, kind, quad, cfg), cap)
        # a non-integrable input makes the transform divergent everywhere
        if not np.all(np.isfinite(g(np.array([0.5])))):
            return math.inf
        return _norm(g, q, weight, measure, params, quad, cfg)


def _jacobi(query: PittQuery) -> JacobiParams:
    if isinstance(query.geometry, RankOneGeometry):
        raise ValidationError("ratios are computed for Jacobi geometries, not rank-one queries")
    return query.geometry


def _note(quad: QuadratureSpec, cap) -> str:
    note = f"rel_tol={quad.rel_tol:g}, T={quad.truncation_T:g}"
    if cap is not None:
        note += f", spectral cut at {cap:g} (LHS is a lower bound)"
    return note


def pitt_ratio(f: AnalyticFunction, query: PittQuery, quad: QuadratureSpec = VERIFY_QUAD,
               spectral_cap: float | None = None, family_param: float = math.nan,
               cfg: EvaluationConfig = DEFAULT_CONFIG) -> RatioReport:
    """LHS and RHS of the weighted Pitt inequality of ``query.kind`` for ``f``.

    direct kinds:  (int |T f|^q (l^2+z^2)^(-sq/2) n)^(1/q)  vs  (int |f|^p t^(kp) mu)^(1/p)
    inverse kinds: (int |T F|^q t^(-sq) mu)^(1/q)  vs  (int |F|^p (l^2+z^2)^(kp/2) n)^(1/p)
    with mu = m for the standard and m~ for the modified transforms.
    """
    params = _jacobi(query)
    p, q = query.exponents.p, query.exponents.q
    s, k, z = query.sigma, query.kappa, query.zeta
    modified = query.kind.startswith("modified")
    mu = "mtilde" if modified else "m"
    direct = query.kind.endswith("direct")
    want = TIME if direct else FREQUENCY
    if f.domain_tag != want:
        raise ValidationError(f"{query.kind} takes a function on the {want} side")
    note = _note(quad, spectral_cap if direct else None)
    if f.is_zero:
        return _make_report(0, 0, query, family_param, note, zero=True)
    if direct:
        kind = "modified_direct" if modified else "direct"
        lhs = _transform_norm(f, params, kind, q, lambda lam: (lam * lam + z * z) ** (-0.5 * s * q),
                              "n", quad, cfg, spectral_cap)
        rhs = _norm(f, p, lambda t: t ** (k * p), mu, params, quad, cfg)
    else:
        kind = "modified_inverse" if modified else "inverse"
        lhs = _transform_norm(f, params, kind, q, lambda t: t ** (-s * q), mu, quad, cfg, None)
        rhs = _norm(f, p, lambda lam: (lam * lam + z * z) ** (0.5 * k * p), "n", params, quad, cfg)
    return _make_report(lhs, rhs, query, family_param, note)


# ---------------------------------------------------------------------------
# witnesses and scans


def _witness_kind(query: PittQuery) -> str:
    """Pick the proof witness for the first violated necessary condition, or
    for the condition with the least slack when none is violated."""
    p, q = query.exponents.p, query.exponents.q
    pc = _conj(p)
    b = 1.0 / p + 1.0 / q - 1.0
    N = 2.0 * (_jacobi(query).alpha + 1.0)
    s, k, z = query.sigma, query.kappa, query.zeta
    direct = query.kind.endswith("direct")
    modified = query.kind.startswith("modified")
    cands = []  # (slack, witness); slack < 0 means violated
    if direct:
        cands.append((N - k * pc, "witness_f0"))
        if z == 0:
            cands.append((3.0 - s * q, "witness_f0"))
        cands.append(((s - k) - N * b, "witness_f1"))
        if not modified:
            cands.append((2.0 - p, "witness_f2"))
        if z == 0 and (modified or p == 2.0):
            cands.append((3.0 * b - (s - k), "witness_f2"))
        if z != 0 and (modified or p == 2.0):
            cands.append((k + 3.0 * b, "witness_f2"))
    else:
        cands.append((N - s * q, "witness_F0"))
        if z == 0:
            cands.append((3.0 - k * pc, "witness_F0"))
        cands.append((N * b - (s - k), "witness_F2"))
        if not modified:
            cands.append((q - 2.0, "witness_F1"))
        if z == 0 and (modified or q == 2.0):
            cands.append(((s - k) - 3.0 * b, "witness_F1"))
        if z != 0 and (modified or q == 2.0):
            cands.append((s - 3.0 * b, "witness_F1"))
    violated = [c for c in cands if c[0] < 0]
    if violated:
        return violated[0][1]
    return min(cands)[1]


def necessity_witness(query: PittQuery, family_param: float | None = None) -> TestFamily:
    if query.kind == "rank_one":
        raise ValidationError("witnesses are built for Jacobi queries")
    kind = _witness_kind(query)
    if family_param is None:
        family_param = {"witness_f0": DEFAULT_EPS, "witness_F0": DEFAULT_EPS,
                        "witness_f1": 0.1, "witness_F1": 0.1}.get(kind, 8.0)
    side = TIME if kind.startswith("witness_f") else FREQUENCY
    return TestFamily(kind, float(family_param), _jacobi(query), side, query.exponents.p,
                      query.kappa, query.zeta, query.kind.startswith("modified"))


def growth_fit(params_, ratios, direction: int = 1) -> float:
    """Least-squares slope of log ratio against log of the degeneration variable."""
    x = np.log(np.asarray(params_, dtype=float)) * direction
    y = np.log(np.asarray(ratios, dtype=float))
    return float(np.polyfit(x, y, 1)[0])


def blowup_scan(query: PittQuery, family: TestFamily, s_grid, quad: QuadratureSpec = VERIFY_QUAD,
                workers: int = 1, cfg: EvaluationConfig = DEFAULT_CONFIG) -> SweepResult:
    """Ratios along ``s_grid``; the growth exponent is measured toward the
    degenerate end of the family and ``verdict_hint`` is "growing" when it
    exceeds 0.1 or any member has a divergent LHS."""
    grid = [float(v) for v in s_grid]
    if len(grid) < 4:
        raise ValidationError("blowup_scan needs at least 4 grid points")

    def one(v):
        fam = family.with_param(v)
        return pitt_ratio(fam.member(), query, quad, fam.spectral_cap(), v, cfg)

    if workers > 1:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            reports = list(pool.map(one, grid))
    else:
        reports = [one(v) for v in grid]
    finite = [(r.family_param, r.ratio) for r in reports
              if not r.divergent and not r.indeterminate and r.ratio > 0 and math.isfinite(r.ratio)]
    any_div = any(r.divergent for r in reports)
    if len(finite) >= 4:
        xs, ys = zip(*finite)
        expo = growth_fit(xs, ys, family.direction)
    elif any_div:
        expo = math.nan
    else:
        raise NumericalError("too few finite ratios to estimate a growth exponent")
    hint = "growing" if any_div or expo > GROWTH_THRESHOLD else "bounded"
    return SweepResult(reports, expo, hint, family.direction)


# ---------------------------------------------------------------------------
# further inequalities


def hlp_ratio(f: AnalyticFunction, p: float, zeta: float, sigma: float, params: JacobiParams,
              quad: QuadratureSpec = VERIFY_QUAD, spectral_cap: float | None = None,
              cfg: EvaluationConfig = DEFAULT_CONFIG) -> RatioReport:
    """(int |J f|^p (l^2+z^2)^(-sp/2) n)^(1/p) / ||f||_{L^p(m)}."""
    if not 1.0 < p <= 2.0:
        raise ValidationError("the Hardy-Littlewood-Paley ratio needs 1 < p <= 2")
    if zeta < 0:
        raise ValidationError("zeta must be >= 0")
    note = _note(quad, spectral_cap)
    if f.is_zero:
        return _make_report(0, 0, None, math.nan, note, zero=True)
    lhs = _transform_norm(f, params, "direct", p,
                          lambda lam: (lam * lam + zeta * zeta) ** (-0.5 * sigma * p),
                          "n", quad, cfg, spectral_cap)
    rhs = _norm(f, p, None, "m", params, quad, cfg)
    return _make_report(lhs, rhs, None, math.nan, note)


def _spatial_energy(f: AnalyticFunction, delta: float, rp: float, params: JacobiParams,
                    quad: QuadratureSpec, cfg: EvaluationConfig) -> float:
    """||(l^2 + rp^2)^(d/2) J f||_2 for d = 1, 2 computed on the time side.

    (l^2 + rp^2) J f = J(A f) with A = -L + rp^2 - rho^2, so by Plancherel the
    d = 2 value is ||A f||_m and the d = 1 value is <A f, f>_m, which after one
    integration by parts is int |f'|^2 m + (rp^2 - rho^2) int |f|^2 m.
    """
    shift = rp * rp - params.rho ** 2
    a1, b1 = 2.0 * params.alpha + 1.0, 2.0 * params.beta + 1.0
    deriv = f.derivatives

    def d1(t):
        return deriv(t)[0]

    def af(t):
        f1, f2 = deriv(t)
        return -f2 - (a1 / np.tanh(t) + b1 * np.tanh(t)) * f1 + shift * f(t)

    if delta == 1:
        g = AnalyticFunction(d1, f.support, f.breakpoints, f.domain_tag)
        val = _norm(g, 2.0, None, "m", params, quad, cfg) ** 2 \
            + shift * _norm(f, 2.0, None, "m", params, quad, cfg) ** 2
        return math.sqrt(max(val, 0.0))
    g = AnalyticFunction(af, f.support, f.breakpoints, f.domain_tag)
    return _norm(g, 2.0, None, "m", params, quad, cfg)


def hpw_l2_ratio(f: AnalyticFunction, gamma: float, delta: float, p0: float,
                 params: JacobiParams, quad: QuadratureSpec = VERIFY_QUAD,
                 cfg: EvaluationConfig = DEFAULT_CONFIG, route: str = "auto") -> RatioReport:
    """||f|| / (||t^g f||^(d/(g+d)) ||(l^2 + rho_p0^2)^(d/2) J f||^(g/(g+d))), all L2,
    with rho_p0 = |2/p0 - 1| rho.

    ``route`` picks how the frequency factor is computed: "spectral" transforms f
    and integrates against n, "spatial" uses the Plancherel identity with the
    Jacobi operator (d in {1, 2}, f with known derivatives and compact support),
    "auto" takes the spatial route when it applies.
    """
    if not (gamma > 0 and delta > 0):
        raise ValidationError("gamma and delta must be positive")
    if not p0 >= 1:
        raise ValidationError("p0 must be >= 1")
    if f.is_zero:
        raise ValidationError("the uncertainty ratio is undefined for f = 0")
    spatial_ok = (delta in (1, 2) and f.derivatives is not None
                  and math.isfinite(f.support[1]) and f.domain_tag == TIME)
    if route not in ("auto", "spectral", "spatial"):
        raise ValidationError(f"unknown route {route!r}; expected auto, spectral or spatial")
    if route == "spatial" and not spatial_ok:
        raise ValidationError("the spatial route needs delta in {1, 2} and a compactly "
                              "supported time-side f with known derivatives")
    use_spatial = spatial_ok and route != "spectral"
    a, b = Fraction(delta) / (Fraction(gamma) + Fraction(delta)), \
        Fraction(gamma) / (Fraction(gamma) + Fraction(delta))
    rp = abs(2.0 / p0 - 1.0) * params.rho
    top = _norm(f, 2.0, None, "m", params, quad, cfg)
    space = _norm(f, 2.0, lambda t: t ** (2.0 * gamma), "m", params, quad, cfg)
    if use_spatial:
        freq = _spatial_energy(f, delta, rp, params, quad, cfg)
    else:
        freq = _transform_norm(f, params, "direct", 2.0,
                               lambda lam: (lam * lam + rp * rp) ** delta, "n", quad, cfg, None)
    extras = {"exponent_sum": a + b, "space_factor": space, "frequency_factor": freq,
              "frequency_route": "spatial" if use_spatial else "spectral"}
    if not math.isfinite(freq):
        return _make_report(top, math.inf, None, math.nan,
                            _note(quad, None) + "; divergent spectral factor", extras=extras)
    rhs = space ** float(a) * freq ** float(b)
    return _make_report(top, rhs, None, math.nan, _note(quad, None), extras=extras)


def _uncertainty_checks(variant, p, q, sigma, kappa, zeta, N) -> list:
    pc = _conj(p)
    qc = _conj(q)
    if variant == "2p":
        checks = [
            ("zeta != 0", zeta != 0),
            ("1 < p <= 2", 1.0 < p <= 2.0),
            ("p <= q'", p <= qc),
            ("3(1/q-1/p) <= kappa", 3.0 * (1.0 / q - 1.0 / p) <= kappa),
            ("kappa < 2(alpha+1)/p'", kappa < N / pc),
            ("sigma >= kappa + 2(alpha+1)(1/p-1/q)", sigma >= kappa + N * (1.0 / p - 1.0 / q)),
            ("sigma, kappa >= 0", sigma >= 0 and kappa >= 0),
        ]
    elif variant == "pq1":
        checks = [
            ("zeta != 0", zeta != 0),
            ("q >= 2", q >= 2.0),
            ("1 < p <= q'", 1.0 < p <= qc),
            ("0 <= kappa < 2(alpha+1)/p'", 0.0 <= kappa < N / pc),
            ("sigma >= kappa + 2(alpha+1)(1/p-1/q)", sigma >= kappa + N * (1.0 / p - 1.0 / q)),
        ]
    else:
        raise ValidationError(f"unknown uncertainty variant {variant!r}; expected '2p' or 'pq1'")
    return checks


def weighted_uncertainty_ratio(f: AnalyticFunction, variant: str, p: float, q: float,
                               sigma: float, kappa: float, zeta: float, params: JacobiParams,
                               quad: QuadratureSpec = VERIFY_QUAD,
                               cfg: EvaluationConfig = DEFAULT_CONFIG) -> RatioReport:
    """Variant "2p":  ||f||_2^2  vs  ||(l^2+z^2)^(s/2) J f||_{L^q(n)} ||t^k f||_{L^p(m)}.
    Variant "pq1": ||f||_q^{q'}  vs  (int |J f|^{q'} (l^2+z^2)^(sq/2) n)^(1/q) ||t^k f||_{L^p(m)}.
    """
    N = 2.0 * (params.alpha + 1.0)
    bad = [name for name, ok in _uncertainty_checks(variant, p, q, sigma, kappa, zeta, N) if not ok]
    if bad:
        raise ValidationError("violated hypothesis: " + "; ".join(bad))
    note = _note(quad, None)
    if f.is_zero:
        return RatioReport(0.0, 0.0, math.nan, None, math.nan, note + "; f = 0 gives 0 = 0",
                           False, True)
    space = _norm(f, p, lambda t: t ** (kappa * p), "m", params, quad, cfg)
    if variant == "2p":
        lhs = _norm(f, 2.0, None, "m", params, quad, cfg) ** 2
        freq = _transform_norm(f, params, "direct", q,
                               lambda lam: (lam * lam + zeta * zeta) ** (0.5 * sigma * q),
                               "n", quad, cfg, None)
    else:
        qc = _conj(q)
        lhs = _norm(f, q, None, "m", params, quad, cfg) ** qc
        inner = _transform_norm(f, params, "direct", qc,
                                lambda lam: (lam * lam + zeta * zeta) ** (0.5 * sigma * q),
                                "n", quad, cfg, None)
        freq = inner ** (qc / q)
    return _make_report(lhs, freq * space, None, math.nan, note,
                        extras={"frequency_factor": freq, "space_factor": space})


def hausdorff_young_defect(f: AnalyticFunction, p: float, params: JacobiParams,
                           quad: QuadratureSpec = VERIFY_QUAD,
                           cfg: EvaluationConfig = DEFAULT_CONFIG) -> float:
    """max(0, ||J f||_{L^p'(n)} / ||f||_{L^p(m)} - 1); 0 for f = 0."""
    if not 1.0 < p <= 2.0:
        raise ValidationError("Hausdorff-Young needs 1 < p <= 2")
    if f.is_zero:
        return 0.0
    src = _norm(f, p, None, "m", params, quad, cfg)
    if src == 0.0:
        return 0.0
    img = _transform_norm(f, params, "direct", _conj(p), None, "n", quad, cfg, None)
    if not math.isfinite(img):
        raise NumericalError("divergent-norm: transform norm did not converge")
    return max(0.0, img / src - 1.0)
