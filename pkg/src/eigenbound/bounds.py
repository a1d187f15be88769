"""Certified eigenvalue bounds assembled from geometry and radial barriers.

Routing for the lower bound:

* infinity laplacian: exact value (pi / 2R)^2, sine barrier;
* gradient-limit operator: exact value 1/R, linear barrier;
* ODE-form operators with alpha > 0 (p-laplacian with p > n): origin-anchored
  barrier, lambda = coeff * (mu_1^(alpha-1) / R)^2;
* ODE-form operators with alpha <= 0 (laplacian, p <= n, Pucci): annular
  barriers.  For each Bessel family Z in {J, Y} and each k (two consecutive
  zeros x = z_k(Z_alpha), y = first zero of Z_{alpha-1} after x), a dilation
  delta with delta / R_delta = x / y is solved, giving
  lambda_k = coeff * (y / R_delta)^2; for convex domains R_delta = R + delta
  collapses this to coeff * ((y - x) / R)^2.  The best scanned certificate
  wins (ties: lowest k, then J before Y).

The upper bound is the ball eigenvalue coeff * (mu_1^(-alpha) / R)^2 when
alpha > -1 (exact values for the two gradient-direction operators); no upper
bound is reported for the Pucci operator.  A volume-based comparison bound
(sharp on balls) is attached for the plain laplacian in dimensions 2 and 3.

When the inradius of a nonconvex polygon comes from a distance-transform
estimate of resolution h, lower bounds use R + pad and upper bounds R - pad
(pad = 2.5 h) so certificates stay one-sided despite the grid error.
"""

import math
from dataclasses import dataclass

from . import geometry, radial, specfun
from .exceptions import NumericError, UnsupportedError
from .radial import OperatorSpec, RadialProfile, ResidualReport

DEFAULT_K_MAX = 64
DEFAULT_TOL = 1e-8
# multiple of the grid resolution h used to pad estimated inradii; the
# two-stage rasterization error of the dilated-set estimate exceeds h itself
RESOLUTION_PAD = 2.5


@dataclass(frozen=True)
class InradiusOnly:
    """Domain given only through its inradius (supports unbounded domains)."""

    inradius: float
    convex: bool = True

    def __post_init__(self):
        if not (math.isfinite(self.inradius) and self.inradius > 0.0):
            raise ValueError("inradius must be positive and finite")


@dataclass(frozen=True)
class ZeroGap:
    """Consecutive-zero pair behind an annular certificate."""

    x: float
    y: float
    k: int
    family: str


@dataclass(frozen=True)
class Certificate:
    profile: RadialProfile
    report: ResidualReport
    lam: float


@dataclass(frozen=True)
class LowerBound:
    value: float
    method: str                      # theorem1 | theorem2-J | theorem2-Y | exact
    profile: RadialProfile
    lam: float
    zero_gap: ZeroGap | None = None
    delta: float | None = None
    r_delta: float | None = None


@dataclass(frozen=True)
class UpperBound:
    value: float
    method: str                      # ball-eigenvalue | exact


@dataclass(frozen=True)
class BoundReport:
    operator: OperatorSpec
    domain: dict
    R: float
    resolution: float
    lower: float
    lower_method: str
    upper: float | None
    upper_method: str | None
    certificate: Certificate
    zero_gap: ZeroGap | None = None
    delta_used: float | None = None
    r_delta_used: float | None = None
    rfk: float | None = None

    def to_dict(self) -> dict:
        d = {
            "operator": _operator_dict(self.operator),
            "domain": self.domain,
            "R": self.R,
            "resolution": self.resolution,
            "lower": self.lower,
            "lower_method": self.lower_method,
            "upper": self.upper,
            "upper_method": self.upper_method,
            "rfk": self.rfk,
            "zero_gap": None,
            "delta_used": self.delta_used,
            "r_delta_used": self.r_delta_used,
            "certificate": {
                "lambda": self.certificate.lam,
                "profile": {
                    "kind": self.certificate.profile.kind,
                    "alpha": self.certificate.profile.alpha,
                    "eta": self.certificate.profile.eta,
                    "c1": self.certificate.profile.c1,
                    "c2": self.certificate.profile.c2,
                    "r_lo": self.certificate.profile.r_lo,
                    "r_hi": self.certificate.profile.r_hi,
                },
                "residual": {
                    "max_residual": self.certificate.report.max_residual,
                    "min_slope": self.certificate.report.min_slope,
                    "samples": self.certificate.report.samples,
                    "r_lo": self.certificate.report.r_lo,
                    "r_hi": self.certificate.report.r_hi,
                    "tol": self.certificate.report.tol,
                    "verified": self.certificate.report.verified,
                },
            },
        }
        if self.zero_gap is not None:
            d["zero_gap"] = {"x": self.zero_gap.x, "y": self.zero_gap.y,
                             "k": self.zero_gap.k, "family": self.zero_gap.family}
        return d


def _operator_dict(op: OperatorSpec) -> dict:
    d = {"family": op.family}
    if op.n is not None:
        d["n"] = op.n
    if op.p is not None:
        d["p"] = op.p
    if op.family == radial.PUCCI:
        d["gamma"] = op.gamma
        d["Gamma"] = op.Gamma
    return d


def _domain_dict(domain) -> dict:
    if isinstance(domain, InradiusOnly):
        return {"inradius_only": domain.inradius, "convex": domain.convex}
    name = type(domain).__name__
    d = {"shape": {"Ball": "ball", "Box": "box", "Stadium": "stadium",
                   "Polygon": "polygon", "LShape": "l_shape",
                   "UShape": "u_shape", "Cylinder": "cylinder"}[name]}
    if isinstance(domain, geometry.Ball):
        d.update(radius=domain.radius, n=domain.n)
    elif isinstance(domain, geometry.Box):
        d.update(sides=list(domain.sides))
    elif isinstance(domain, geometry.Stadium):
        d.update(length=domain.length, radius=domain.radius)
    elif isinstance(domain, geometry.Polygon):
        d.update(vertices=[list(v) for v in domain.vertices])
    elif isinstance(domain, geometry.LShape):
        d.update(leg=domain.leg, width=domain.width)
    elif isinstance(domain, geometry.UShape):
        d.update(outer=domain.outer, slot_width=domain.slot_width,
                 slot_depth=domain.slot_depth)
    elif isinstance(domain, geometry.Cylinder):
        d.update(radius=domain.radius, height=domain.height)
    return d


class _Geo:
    """Geometric quantities of a domain as the bound routes need them."""

    def __init__(self, domain):
        self.domain = domain
        if isinstance(domain, InradiusOnly):
            self.R = domain.inradius
            self.resolution = 0.0
            self.convex = domain.convex
            self.dimension = None
            self.shape_backed = False
        else:
            self.R, self.resolution = geometry.inradius_with_resolution(domain)
            self.convex = geometry.is_convex(domain)
            self.dimension = geometry.dimension(domain)
            self.shape_backed = True
        self.pad = RESOLUTION_PAD * self.resolution

    @property
    def r_for_lower(self) -> float:
        return self.R + self.pad

    @property
    def r_for_upper(self) -> float:
        return self.R - self.pad

    def solve_delta(self, ratio: float) -> tuple:
        if self.convex:
            r = self.r_for_lower
            delta = r * ratio / (1.0 - ratio)
            return delta, r + delta
        if not self.shape_backed:
            raise UnsupportedError(
                "annular lower bounds need dilation geometry; an inradius-only "
                "domain must be declared convex or replaced by a full shape")
        return geometry.solve_delta_for_ratio(self.domain, ratio, pad=self.pad)


def _check_dimensions(op: OperatorSpec, geo: _Geo):
    if op.n is not None and geo.dimension is not None and op.n != geo.dimension:
        raise ValueError(
            f"operator dimension n={op.n} does not match the "
            f"{geo.dimension}-dimensional domain")


def lower_bound(op: OperatorSpec, domain, k_max: int = DEFAULT_K_MAX) -> LowerBound:
    """Certified lower bound for the principal eigenvalue on the domain."""
    geo = _Geo(domain)
    _check_dimensions(op, geo)
    return _lower(op, geo, k_max)


def _lower(op: OperatorSpec, geo: _Geo, k_max: int) -> LowerBound:
    if k_max < 1:
        raise ValueError("k_max must be >= 1")
    r = geo.r_for_lower
    if op.family == radial.INFINITY_LAPLACIAN:
        lam = (math.pi / (2.0 * r)) ** 2
        profile = radial.build_theorem1_profile(op, lam, r)
        return LowerBound(lam, "exact", profile, lam)
    if op.family == radial.GRADIENT_LIMIT:
        lam = 1.0 / r
        profile = radial.build_theorem1_profile(op, lam, r)
        return LowerBound(lam, "exact", profile, lam)
    alpha = radial.profile_exponent(op)
    coeff = radial.eigenvalue_coefficient(op)
    if alpha > 0.0:
        mu = specfun.first_zero(alpha - 1.0, "J")
        lam = coeff * (mu / r) ** 2
        profile = radial.build_theorem1_profile(op, lam, r)
        return LowerBound(lam, "theorem1", profile, lam)
    tables = {fam: specfun.zero_table(alpha, fam, k_max).zeros for fam in ("J", "Y")}
    best = None
    # k before family, J before Y: with strict improvement this realizes the
    # deterministic tie rule (lowest k, then J) by first-seen-wins
    for k in range(1, k_max + 1):
        for fam in ("J", "Y"):
            x = tables[fam][k - 1]
            y = specfun.next_zero_after(alpha - 1.0, fam, x)
            delta, r_delta = geo.solve_delta(x / y)
            lam = coeff * (y / r_delta) ** 2
            if best is None or lam > best[0]:
                best = (lam, fam, k, x, y, delta, r_delta)
    lam, fam, k, x, y, delta, r_delta = best
    eta = y / r_delta
    profile = radial.build_theorem2_profile(op, lam, x / eta, r_delta, fam)
    return LowerBound(lam, f"theorem2-{fam}", profile, lam,
                      zero_gap=ZeroGap(x, y, k, fam), delta=delta, r_delta=r_delta)


def upper_bound(op: OperatorSpec, domain) -> UpperBound | None:
    """Eigenvalue of the inscribed ball; None where no formula is available."""
    geo = _Geo(domain)
    _check_dimensions(op, geo)
    return _upper(op, geo)


def _upper(op: OperatorSpec, geo: _Geo) -> UpperBound | None:
    r = geo.r_for_upper
    if op.family == radial.INFINITY_LAPLACIAN:
        return UpperBound((math.pi / (2.0 * r)) ** 2, "exact")
    if op.family == radial.GRADIENT_LIMIT:
        return UpperBound(1.0 / r, "exact")
    if op.family == radial.PUCCI:
        return None
    alpha = radial.profile_exponent(op)
    if alpha <= -1.0:
        return None
    coeff = radial.eigenvalue_coefficient(op)
    mu = specfun.first_zero(-alpha, "J")
    return UpperBound(coeff * (mu / r) ** 2, "ball-eigenvalue")


def rfk_bound(domain) -> float:
    """Volume-based lower bound for the plain laplacian, sharp on balls."""
    if isinstance(domain, InradiusOnly):
        raise UnsupportedError("the volume bound needs a full domain shape")
    n = geometry.dimension(domain)
    if n not in (2, 3):
        raise UnsupportedError(f"volume bound supported for n in (2, 3), got {n}")
    vol = geometry.volume(domain)
    cn = geometry.unit_ball_volume(n)
    mu = specfun.first_zero(n / 2.0 - 1.0, "J")
    return vol ** (-2.0 / n) * cn ** (2.0 / n) * mu * mu


def full_report(op: OperatorSpec, domain, k_max: int = DEFAULT_K_MAX,
                tol: float = DEFAULT_TOL, samples: int = 1000) -> BoundReport:
    """Lower and upper bounds with a verified barrier certificate.

    Raises NumericError if the certificate fails verification or the bounds
    cross; neither can happen silently.
    """
    geo = _Geo(domain)
    _check_dimensions(op, geo)
    low = _lower(op, geo, k_max)
    up = _upper(op, geo)
    report = radial.verify_supersolution(op, low.profile, low.lam,
                                         samples=samples, tol=tol)
    if not report.verified:
        raise NumericError(
            f"internal consistency failure: certificate residual "
            f"{report.max_residual:g} / slope {report.min_slope:g} "
            f"not verified at tol {tol:g}")
    if up is not None and low.value > up.value * (1.0 + 1e-12):
        raise NumericError(
            f"internal consistency failure: lower {low.value:g} exceeds "
            f"upper {up.value:g}")
    rfk = None
    if op.family == radial.LAPLACIAN and geo.shape_backed and geo.dimension in (2, 3):
        rfk = rfk_bound(domain)
    return BoundReport(
        operator=op,
        domain=_domain_dict(domain),
        R=geo.R,
        resolution=geo.resolution,
        lower=low.value,
        lower_method=low.method,
        upper=up.value if up else None,
        upper_method=up.method if up else None,
        certificate=Certificate(low.profile, report, low.lam),
        zero_gap=low.zero_gap,
        delta_used=low.delta,
        r_delta_used=low.r_delta,
        rfk=rfk,
    )


@dataclass(frozen=True)
class PScanRow:
    p: float
    lower: float | None
    upper: float | None
    skipped: bool = False
    note: str = ""


def p_limit_scan(n: int, R: float, p_list) -> list:
    """Lower/upper bound pairs of the homogeneous p-laplacian for each p.

    Entries with p <= n are skipped with a note; for p > n both bounds come
    from the first-zero formulas and converge to (pi / 2R)^2 as p grows.
    """
    if not (math.isfinite(R) and R > 0.0):
        raise ValueError("R must be positive and finite")
    n = int(n)
    rows = []
    for p in p_list:
        p = float(p)
        if p <= n:
            rows.append(PScanRow(p, None, None, True,
                                 f"p = {p:g} <= n = {n}: origin-anchored route "
                                 "needs p > n"))
            continue
        alpha = (p - n) / (2.0 * (p - 1.0))
        coeff = (p - 1.0) / p
        lo = coeff * (specfun.first_zero(alpha - 1.0, "J") / R) ** 2
        hi = coeff * (specfun.first_zero(-alpha, "J") / R) ** 2
        rows.append(PScanRow(p, lo, hi))
    return rows
