"""Decision procedures for shifted Pitt inequalities.

Each classifier evaluates the necessary and the sufficient conditions that
are known for one transform, and reports a three-state verdict:

* ``holds``   every sufficient condition is met (or the iff characterization);
* ``fails``   some necessary condition is violated;
* ``unknown`` neither, a gap that is reported and never guessed.

Inequalities are compared exactly as stated: strict where the statement is
strict, without tolerance. Notation: N = 2(alpha + 1), b = 1/p + 1/q - 1,
p' = p / (p - 1).
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass, field

from .exceptions import ValidationError
from .special_functions import JacobiParams

__all__ = [
    "KINDS",
    "ExponentPair",
    "RankOneGeometry",
    "PittQuery",
    "Condition",
    "Verdict",
    "BoundaryRow",
    "classify",
    "classify_modified_direct",
    "classify_modified_inverse",
    "classify_standard_direct",
    "classify_standard_inverse",
    "classify_rank_one",
    "region_boundary",
]

KINDS = ("standard_direct", "standard_inverse", "modified_direct", "modified_inverse", "rank_one")

NECESSARY = "necessary"
SUFFICIENT = "sufficient"
IFF = "iff"


@dataclass(frozen=True)
class ExponentPair:
    p: float
    q: float

    def __post_init__(self) -> None:
        if not (math.isfinite(self.p) and self.p >= 1.0):
            raise ValidationError("p must be finite and >= 1")
        if not (math.isfinite(self.q) and self.q >= 1.0):
            raise ValidationError("q must be finite and >= 1 (q = inf is not represented)")

    @property
    def p_conj(self) -> float:
        return math.inf if self.p == 1.0 else self.p / (self.p - 1.0)

    @property
    def balance(self) -> float:
        return 1.0 / self.p + 1.0 / self.q - 1.0


@dataclass(frozen=True)
class RankOneGeometry:
    """Rank-one symmetric space of dimension n; the pseudo-dimension is 3."""

    n: int
    nu: int = 3

    def __post_init__(self) -> None:
        if int(self.n) != self.n or self.n < 2:
            raise ValidationError("dimension n must be an integer >= 2")
        if self.nu != 3:
            raise ValidationError("the pseudo-dimension of a rank-one space is 3")

    @property
    def alpha(self) -> float:
        return (self.n - 1) / 2.0


@dataclass(frozen=True)
class PittQuery:
    kind: str
    exponents: ExponentPair
    sigma: float
    kappa: float
    zeta: float
    geometry: JacobiParams | RankOneGeometry

    def __post_init__(self) -> None:
        if self.kind not in KINDS:
            raise ValidationError(f"unknown kind {self.kind!r}; expected one of {KINDS}")
        for name in ("sigma", "kappa", "zeta"):
            if not math.isfinite(getattr(self, name)):
                raise ValidationError(f"{name} must be finite")
        if self.zeta < 0:
            raise ValidationError("zeta must be >= 0")
        rank_one = isinstance(self.geometry, RankOneGeometry)
        if (self.kind == "rank_one") != rank_one:
            raise ValidationError("rank_one queries take a RankOneGeometry, the others JacobiParams")

    @classmethod
    def make(cls, kind: str, p: float, q: float, sigma: float, kappa: float, zeta: float,
             alpha: float | None = None, beta: float | None = None,
             n: int | None = None) -> "PittQuery":
        if kind == "rank_one":
            if n is None:
                raise ValidationError("rank_one queries need the dimension n")
            geom = RankOneGeometry(int(n))
        else:
            if alpha is None:
                raise ValidationError("Jacobi queries need alpha")
            geom = JacobiParams(alpha, min(alpha, 0.0) if beta is None else beta)
        return cls(kind, ExponentPair(p, q), float(sigma), float(kappa), float(zeta), geom)

    @property
    def dim(self) -> float:
        """N = 2(alpha + 1), or n for a rank-one space."""
        if isinstance(self.geometry, RankOneGeometry):
            return float(self.geometry.n)
        return 2.0 * (self.geometry.alpha + 1.0)


@dataclass(frozen=True)
class Condition:
    name: str
    satisfied: bool
    citation: str
    role: str = NECESSARY

    def as_dict(self) -> dict:
        return {"name": self.name, "satisfied": bool(self.satisfied), "citation": self.citation}


@dataclass
class Verdict:
    status: str
    authority: str
    conditions: list = field(default_factory=list)

    def to_dict(self) -> dict:
        return {"status": self.status, "authority": self.authority,
                "conditions": [c.as_dict() for c in self.conditions]}

    def to_json(self, indent: int | None = 2) -> str:
        return json.dumps(self.to_dict(), indent=indent)

    def of_role(self, role: str) -> list:
        return [c for c in self.conditions if c.role == role]


def _cond(name, ok, citation, role) -> Condition:
    return Condition(name, bool(ok), citation, role)


def _decide(conditions: list, iff: bool, authority_when_iff: str = "iff") -> Verdict:
    nec = [c for c in conditions if c.role == NECESSARY]
    suf = [c for c in conditions if c.role == SUFFICIENT]
    chars = [c for c in conditions if c.role == IFF]
    if iff:
        status = "holds" if all(c.satisfied for c in chars) else "fails"
        return Verdict(status, authority_when_iff, conditions)
    if suf and all(c.satisfied for c in suf):
        status = "holds"
    elif not all(c.satisfied for c in nec):
        status = "fails"
    else:
        status = "unknown"
    if status == "holds":
        authority = "sufficiency_only"
    elif status == "fails":
        authority = "necessity_only"
    else:
        authority = "sufficiency_only" if suf else "necessity_only"
    return Verdict(status, authority, conditions)


def _need_modified_domain(qr: PittQuery) -> tuple[float, float]:
    p, q = qr.exponents.p, qr.exponents.q
    if not (1.0 < p <= q):
        raise ValidationError("modified transforms are classified for 1 < p <= q < inf")
    if qr.sigma < 0 or qr.kappa < 0:
        raise ValidationError("modified transforms are classified for sigma, kappa >= 0")
    return p, q


# ---------------------------------------------------------------------------
# modified transforms: complete characterizations


_SRC_MJ = "modified direct transform: characterization of admissible power weights"
_SRC_MI = "modified inverse transform: characterization of admissible power weights"


def _modified_direct_conditions(qr: PittQuery, role: str) -> list:
    p, q = qr.exponents.p, qr.exponents.q
    pc, b, N = qr.exponents.p_conj, qr.exponents.balance, qr.dim
    s, k = qr.sigma, qr.kappa
    out = [
        _cond("sigma - kappa >= 2(alpha+1)(1/p+1/q-1)", s - k >= N * b, _SRC_MJ, role),
        _cond("kappa p' < 2(alpha+1)", k * pc < N, _SRC_MJ, role),
    ]
    if qr.zeta != 0:
        out.append(_cond("kappa >= 3(1-1/p-1/q)", k >= -3.0 * b, _SRC_MJ, role))
    else:
        out.append(_cond("sigma q < 3", s * q < 3.0, _SRC_MJ, role))
        out.append(_cond("sigma - kappa <= 3(1/p+1/q-1)", s - k <= 3.0 * b, _SRC_MJ, role))
    return out


def _modified_inverse_conditions(qr: PittQuery, role: str) -> list:
    p, q = qr.exponents.p, qr.exponents.q
    pc, b, N = qr.exponents.p_conj, qr.exponents.balance, qr.dim
    s, k = qr.sigma, qr.kappa
    out = [
        _cond("sigma q < 2(alpha+1)", s * q < N, _SRC_MI, role),
        _cond("sigma - kappa <= 2(alpha+1)(1/p+1/q-1)", s - k <= N * b, _SRC_MI, role),
    ]
    if qr.zeta != 0:
        out.append(_cond("sigma >= 3(1/p+1/q-1)", s >= 3.0 * b, _SRC_MI, role))
    else:
        out.append(_cond("kappa p' < 3", k * pc < 3.0, _SRC_MI, role))
        out.append(_cond("sigma - kappa >= 3(1/p+1/q-1)", s - k >= 3.0 * b, _SRC_MI, role))
    return out


def classify_modified_direct(qr: PittQuery) -> Verdict:
    if qr.kind != "modified_direct":
        raise ValidationError("query kind must be modified_direct")
    _need_modified_domain(qr)
    return _decide(_modified_direct_conditions(qr, IFF), iff=True)


def classify_modified_inverse(qr: PittQuery) -> Verdict:
    if qr.kind != "modified_inverse":
        raise ValidationError("query kind must be modified_inverse")
    _need_modified_domain(qr)
    return _decide(_modified_inverse_conditions(qr, IFF), iff=True)


# ---------------------------------------------------------------------------
# standard transforms


_SRC_NEC_J = "standard direct transform: necessary conditions"
_SRC_SUF_J = "standard direct transform: sufficiency via the modified transform (1 < p <= 2, p <= q)"
_SRC_IFF_J2 = "standard direct transform: characterization at p = q = 2"
_SRC_IFF_JP = "standard direct transform: characterization for zeta > 0, 1 < p <= q <= p'"
_SRC_NEC_I = "standard inverse transform: necessary conditions"
_SRC_SUF_I = "standard inverse transform: sufficiency via the modified transform (q >= 2, p <= q)"
_SRC_IFF_I2 = "standard inverse transform: characterization at p = q = 2"


def _standard_domain(qr: PittQuery) -> None:
    if not (qr.exponents.p > 1.0 and qr.exponents.q > 1.0):
        raise ValidationError("standard transforms are classified for 1 < p, q < inf")


def classify_standard_direct(qr: PittQuery) -> Verdict:
    if qr.kind != "standard_direct":
        raise ValidationError("query kind must be standard_direct")
    _standard_domain(qr)
    p, q = qr.exponents.p, qr.exponents.q
    pc, b, N = qr.exponents.p_conj, qr.exponents.balance, qr.dim
    s, k, z = qr.sigma, qr.kappa, qr.zeta
    half = qr.geometry.alpha + 1.0
    nec = [
        _cond("p <= 2", p <= 2.0, _SRC_NEC_J, NECESSARY),
        _cond("kappa p' < 2(alpha+1)", k * pc < N, _SRC_NEC_J, NECESSARY),
        _cond("sigma - kappa >= 2(alpha+1)(1/p+1/q-1)", s - k >= N * b, _SRC_NEC_J, NECESSARY),
    ]
    if z == 0:
        nec.append(_cond("sigma q < 3", s * q < 3.0, _SRC_NEC_J, NECESSARY))
    if p == 2.0:
        nec.append(_cond("kappa < alpha+1", k < half, _SRC_NEC_J, NECESSARY))
        if z != 0:
            nec.append(_cond("kappa >= 3(1/2-1/q)", k >= 3.0 * (0.5 - 1.0 / q), _SRC_NEC_J, NECESSARY))
            if q == 2.0:
                nec.append(_cond("kappa >= 0", k >= 0, _SRC_NEC_J, NECESSARY))
                nec.append(_cond("kappa <= sigma", k <= s, _SRC_NEC_J, NECESSARY))
        else:
            nec.append(_cond("sigma - kappa <= 3(1/q-1/2)", s - k <= 3.0 * (1.0 / q - 0.5),
                             _SRC_NEC_J, NECESSARY))
            if q == 2.0:
                nec.append(_cond("kappa = sigma < min{2(alpha+1), 3}/2",
                                 k == s and s < min(N, 3.0) / 2.0, _SRC_NEC_J, NECESSARY))
    suf = [
        _cond("1 < p <= 2", p <= 2.0, _SRC_SUF_J, SUFFICIENT),
        _cond("p <= q", p <= q, _SRC_SUF_J, SUFFICIENT),
        _cond("sigma, kappa >= 0", s >= 0 and k >= 0, _SRC_SUF_J, SUFFICIENT),
    ] + _modified_direct_conditions(qr, SUFFICIENT)
    conditions = nec + suf
    iff = False
    if p == 2.0 and q == 2.0 and (z != 0 or k >= 0):
        iff = True
        if z != 0:
            chars = [_cond("0 <= kappa < alpha+1", 0 <= k < half, _SRC_IFF_J2, IFF),
                     _cond("sigma >= kappa", s >= k, _SRC_IFF_J2, IFF)]
        else:
            chars = [_cond("kappa = sigma < min{2(alpha+1), 3}/2",
                           k == s and s < min(N, 3.0) / 2.0, _SRC_IFF_J2, IFF)]
        conditions += chars
    elif z > 0 and 1.0 < p <= q <= pc and k >= 0:
        iff = True
        conditions += [
            _cond("p <= 2", p <= 2.0, _SRC_IFF_JP, IFF),
            _cond("sigma - kappa >= 2(alpha+1)(1/p+1/q-1)", s - k >= N * b, _SRC_IFF_JP, IFF),
            _cond("kappa p' < 2(alpha+1)", k * pc < N, _SRC_IFF_JP, IFF),
        ]
    return _decide(conditions, iff)


def classify_standard_inverse(qr: PittQuery) -> Verdict:
    """Weights follow the modified-inverse placement: t^(-sigma q) on the
    output side and (l^2 + zeta^2)^(kappa p / 2) on the input side."""
    if qr.kind != "standard_inverse":
        raise ValidationError("query kind must be standard_inverse")
    _standard_domain(qr)
    p, q = qr.exponents.p, qr.exponents.q
    pc, b, N = qr.exponents.p_conj, qr.exponents.balance, qr.dim
    s, k, z = qr.sigma, qr.kappa, qr.zeta
    half = qr.geometry.alpha + 1.0
    nec = [
        _cond("q >= 2", q >= 2.0, _SRC_NEC_I, NECESSARY),
        _cond("sigma q < 2(alpha+1)", s * q < N, _SRC_NEC_I, NECESSARY),
        _cond("sigma - kappa <= 2(alpha+1)(1/p+1/q-1)", s - k <= N * b, _SRC_NEC_I, NECESSARY),
    ]
    if z == 0:
        nec.append(_cond("kappa p' < 3", k * pc < 3.0, _SRC_NEC_I, NECESSARY))
    if q == 2.0:
        if z != 0:
            nec.append(_cond("sigma < alpha+1", s < half, _SRC_NEC_I, NECESSARY))
            nec.append(_cond("sigma >= 3(1/p-1/2)", s >= 3.0 * (1.0 / p - 0.5), _SRC_NEC_I, NECESSARY))
            if p == 2.0:
                nec.append(_cond("sigma >= 0", s >= 0, _SRC_NEC_I, NECESSARY))
                nec.append(_cond("sigma <= kappa", s <= k, _SRC_NEC_I, NECESSARY))
        else:
            nec.append(_cond("sigma - kappa >= 3(1/p-1/2)", s - k >= 3.0 * (1.0 / p - 0.5),
                             _SRC_NEC_I, NECESSARY))
            if p == 2.0:
                nec.append(_cond("sigma = kappa < min{2(alpha+1), 3}/2",
                                 k == s and s < min(N, 3.0) / 2.0, _SRC_NEC_I, NECESSARY))
    suf = [
        _cond("q >= 2", q >= 2.0, _SRC_SUF_I, SUFFICIENT),
        _cond("1 < p <= q", p <= q, _SRC_SUF_I, SUFFICIENT),
        _cond("sigma, kappa >= 0", s >= 0 and k >= 0, _SRC_SUF_I, SUFFICIENT),
    ] + _modified_inverse_conditions(qr, SUFFICIENT)
    conditions = nec + suf
    iff = False
    if p == 2.0 and q == 2.0 and (z != 0 or s >= 0):
        iff = True
        if z != 0:
            conditions += [_cond("0 <= sigma < alpha+1", 0 <= s < half, _SRC_IFF_I2, IFF),
                           _cond("sigma <= kappa", s <= k, _SRC_IFF_I2, IFF)]
        else:
            conditions += [_cond("sigma = kappa < min{2(alpha+1), 3}/2",
                                 k == s and s < min(N, 3.0) / 2.0, _SRC_IFF_I2, IFF)]
    return _decide(conditions, iff)


# ---------------------------------------------------------------------------
# rank one


_SRC_R1_NEC = "rank-one space: necessary conditions"
_SRC_R1_SUF = "rank-one space: sufficient conditions (1 <= p <= q <= p')"
_SRC_R1_IFF = "rank-one space: characterization for zeta > 0, 1 < p <= q <= p'"


def classify_rank_one(qr: PittQuery) -> Verdict:
    if qr.kind != "rank_one":
        raise ValidationError("query kind must be rank_one")
    p, q = qr.exponents.p, qr.exponents.q
    if not p <= q:
        raise ValidationError("rank-one queries need 1 <= p <= q")
    n, nu = qr.geometry.n, qr.geometry.nu
    pc, b = qr.exponents.p_conj, qr.exponents.balance
    s, k, z = qr.sigma, qr.kappa, qr.zeta
    kappa_ok = (k == 0) if p == 1.0 else (k < n / pc)
    conditions = []
    if p > 1.0:
        conditions += [
            _cond("p <= 2", p <= 2.0, _SRC_R1_NEC, NECESSARY),
            _cond("kappa < n/p'", kappa_ok, _SRC_R1_NEC, NECESSARY),
            _cond("sigma - kappa >= n(1/p+1/q-1)", s - k >= n * b, _SRC_R1_NEC, NECESSARY),
        ]
        if z == 0 and p == 2.0:
            conditions += [
                _cond("sigma < nu/q", s < nu / q, _SRC_R1_NEC, NECESSARY),
                _cond("sigma - kappa <= nu(1/p+1/q-1)", s - k <= nu * b, _SRC_R1_NEC, NECESSARY),
            ]
    conditions += [
        _cond("1 <= p <= q <= p'", q <= pc, _SRC_R1_SUF, SUFFICIENT),
        _cond("sigma, kappa >= 0", s >= 0 and k >= 0, _SRC_R1_SUF, SUFFICIENT),
        _cond("kappa < n/p' (kappa = 0 when p = 1)", kappa_ok, _SRC_R1_SUF, SUFFICIENT),
        _cond("sigma - kappa >= n(1/p+1/q-1)", s - k >= n * b, _SRC_R1_SUF, SUFFICIENT),
    ]
    if z == 0:
        conditions += [
            _cond("n <= nu", n <= nu, _SRC_R1_SUF, SUFFICIENT),
            _cond("sigma < nu/q", s < nu / q, _SRC_R1_SUF, SUFFICIENT),
            _cond("sigma - kappa <= nu(1/p+1/q-1)", s - k <= nu * b, _SRC_R1_SUF, SUFFICIENT),
        ]
    iff = z > 0 and 1.0 < p <= q <= pc and k >= 0
    if iff:
        conditions += [
            _cond("p <= 2", p <= 2.0, _SRC_R1_IFF, IFF),
            _cond("kappa < n/p'", kappa_ok, _SRC_R1_IFF, IFF),
            _cond("sigma - kappa >= n(1/p+1/q-1)", s - k >= n * b, _SRC_R1_IFF, IFF),
        ]
    return _decide(conditions, iff)


_DISPATCH = {
    "standard_direct": classify_standard_direct,
    "standard_inverse": classify_standard_inverse,
    "modified_direct": classify_modified_direct,
    "modified_inverse": classify_modified_inverse,
    "rank_one": classify_rank_one,
}


def classify(qr: PittQuery) -> Verdict:
    return _DISPATCH[qr.kind](qr)


# ---------------------------------------------------------------------------
# region boundaries in the (kappa, sigma) plane


@dataclass(frozen=True)
class BoundaryRow:
    """Admissible sigma for one kappa. ``status`` is "interval", "empty" or
    "unknown"; bounds are nan unless status is "interval"."""

    kappa: float
    sigma_lower: float
    sigma_upper: float
    status: str
    lower_closed: bool = True
    upper_closed: bool = False


def _interval(k, lo, lo_closed, hi, hi_closed) -> BoundaryRow:
    if lo < hi or (lo == hi and lo_closed and hi_closed):
        return BoundaryRow(k, lo, hi, "interval", lo_closed, hi_closed)
    return BoundaryRow(k, math.nan, math.nan, "empty")


def _tighter_upper(a, a_closed, b, b_closed):
    if a < b:
        return a, a_closed
    if b < a:
        return b, b_closed
    return a, a_closed and b_closed


def _tighter_lower(a, a_closed, b, b_closed):
    if a > b:
        return a, a_closed
    if b > a:
        return b, b_closed
    return a, a_closed and b_closed


def _row(kind, k, p, q, zeta, N, alpha) -> BoundaryRow:
    pc = p / (p - 1.0) if p > 1 else math.inf
    b = 1.0 / p + 1.0 / q - 1.0
    empty = BoundaryRow(k, math.nan, math.nan, "empty")
    unknown = BoundaryRow(k, math.nan, math.nan, "unknown")
    if kind == "modified_direct":
        if not (k * pc < N) or (zeta != 0 and not k >= -3.0 * b):
            return empty
        lo, lo_c = _tighter_lower(0.0, True, k + N * b, True)
        if zeta != 0:
            return _interval(k, lo, lo_c, math.inf, False)
        hi, hi_c = _tighter_upper(3.0 / q, False, k + 3.0 * b, True)
        return _interval(k, lo, lo_c, hi, hi_c)
    if kind == "modified_inverse":
        if zeta == 0 and not k * pc < 3.0:
            return empty
        hi, hi_c = _tighter_upper(N / q, False, k + N * b, True)
        extra = 3.0 * b if zeta != 0 else k + 3.0 * b
        lo, lo_c = _tighter_lower(0.0, True, extra, True)
        return _interval(k, lo, lo_c, hi, hi_c)
    if kind == "standard_direct":
        if p == 2.0 and q == 2.0:
            if zeta != 0:
                return _interval(k, k, True, math.inf, False) if 0 <= k < alpha + 1 else empty
            return _interval(k, k, True, k, True) if k < min(N, 3.0) / 2.0 else empty
        if zeta > 0 and 1.0 < p <= q <= pc:
            if p > 2.0 or not k * pc < N:
                return empty
            return _interval(k, k + N * b, True, math.inf, False)
        return unknown
    if kind == "standard_inverse":
        if p == 2.0 and q == 2.0:
            if zeta != 0:
                hi, hi_c = _tighter_upper(alpha + 1.0, False, k, True)
                return _interval(k, 0.0, True, hi, hi_c)
            return _interval(k, k, True, k, True) if k < min(N, 3.0) / 2.0 else empty
        return unknown
    if kind == "rank_one":
        if zeta > 0 and 1.0 < p <= q <= pc:
            if not k * pc < N:
                return empty
            return _interval(k, k + N * b, True, math.inf, False)
        return unknown
    raise ValidationError(f"unknown kind {kind!r}")


def region_boundary(kind: str, p: float, q: float, zeta: float, geometry, kappa_grid) -> list:
    """For each kappa >= 0 on ``kappa_grid``, the set of sigma >= 0 for which
    the inequality holds. Regimes without a characterization give rows with
    status "unknown"."""
    if kind not in KINDS:
        raise ValidationError(f"unknown kind {kind!r}")
    ExponentPair(p, q)
    if zeta < 0:
        raise ValidationError("zeta must be >= 0")
    if kind == "rank_one":
        if not isinstance(geometry, RankOneGeometry):
            raise ValidationError("rank_one needs a RankOneGeometry")
        N, alpha = float(geometry.n), geometry.alpha
    else:
        if not isinstance(geometry, JacobiParams):
            raise ValidationError("Jacobi kinds need JacobiParams")
        N, alpha = 2.0 * (geometry.alpha + 1.0), geometry.alpha
    if kind.startswith("modified") and not (1.0 < p <= q):
        raise ValidationError("modified transforms need 1 < p <= q")
    rows = []
    for k in kappa_grid:
        k = float(k)
        if not (math.isfinite(k) and k >= 0):
            raise ValidationError("kappa grid values must be finite and >= 0")
        rows.append(_row(kind, k, float(p), float(q), float(zeta), N, alpha))
    return rows
