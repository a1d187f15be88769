"""Radial barrier profiles and pointwise supersolution verification.

Each supported operator reduces on radial functions phi(|x|) to an expression
in (phi, phi', phi'').  For the operators with a linear radial ODE the
normal form is

    v'' + c * v'/r + b(lambda) * v = 0,

whose solutions are v(r) = r^alpha [c1 J_alpha(eta r) + c2 Y_alpha(eta r)]
with alpha = (1 - c)/2 and eta = sqrt(b).  Derivatives follow from
d/dx [x^a Z_a(x)] = x^a Z_{a-1}(x), valid for both Bessel families.

Two barrier constructions are provided: a profile vanishing at the origin and
increasing up to the first zero of its derivative (kind "theorem1", plus the
closed sine/linear profiles of the gradient-direction operators), and an
annular profile vanishing on an inner sphere of radius delta (kind
"theorem2"), increasing between a zero of Z_alpha and the next zero of
Z_{alpha-1}.  `verify_supersolution` then certifies L phi + lambda phi <= 0
and phi' > 0 by dense sampling on Chebyshev nodes.
"""

import math
from dataclasses import dataclass

import numpy as np

from . import specfun
from .exceptions import NumericError, UnsupportedError

LAPLACIAN = "laplacian"
P_LAPLACIAN = "p_laplacian"
INFINITY_LAPLACIAN = "infinity_laplacian"
PUCCI = "pucci"
GRADIENT_LIMIT = "gradient_limit"

ODE_FAMILIES = (LAPLACIAN, P_LAPLACIAN, PUCCI)
ALL_FAMILIES = ODE_FAMILIES + (INFINITY_LAPLACIAN, GRADIENT_LIMIT)

# relative margin cut off the interval ends when the operator divides by
# |grad u| and the slope vanishes at an endpoint
ENDPOINT_MARGIN = 1e-9


@dataclass(frozen=True)
class OperatorSpec:
    """One of the supported operator families with its parameters."""

    family: str
    n: int | None = None
    p: float | None = None
    gamma: float | None = None
    Gamma: float | None = None

    def __post_init__(self):
        if self.family not in ALL_FAMILIES:
            raise UnsupportedError(f"unknown operator family {self.family!r}")
        if self.family in (LAPLACIAN, P_LAPLACIAN, PUCCI):
            if self.n is None or int(self.n) < 1:
                raise ValueError(f"{self.family} requires dimension n >= 1")
            object.__setattr__(self, "n", int(self.n))
        if self.family == P_LAPLACIAN:
            if self.p is None or not self.p > 1.0:
                raise ValueError("p_laplacian requires p > 1")
        if self.family == PUCCI:
            if self.gamma is None or self.Gamma is None or not (0.0 < self.gamma <= self.Gamma):
                raise ValueError("pucci requires 0 < gamma <= Gamma")

    @classmethod
    def laplacian(cls, n: int):
        return cls(LAPLACIAN, n=n)

    @classmethod
    def p_laplacian(cls, p: float, n: int):
        return cls(P_LAPLACIAN, n=n, p=float(p))

    @classmethod
    def infinity_laplacian(cls):
        return cls(INFINITY_LAPLACIAN)

    @classmethod
    def pucci(cls, gamma: float, Gamma: float, n: int):
        return cls(PUCCI, n=n, gamma=float(gamma), Gamma=float(Gamma))

    @classmethod
    def gradient_limit(cls):
        return cls(GRADIENT_LIMIT)

    def is_ode_form(self) -> bool:
        return self.family in ODE_FAMILIES

    def label(self) -> str:
        if self.family == LAPLACIAN:
            return f"laplacian(n={self.n})"
        if self.family == P_LAPLACIAN:
            return f"p_laplacian(p={self.p:g}, n={self.n})"
        if self.family == PUCCI:
            return f"pucci(gamma={self.gamma:g}, Gamma={self.Gamma:g}, n={self.n})"
        return self.family


def _ode_c_slope(op: OperatorSpec) -> tuple:
    """(c, s) of the normal form v'' + c v'/r + s*lambda v = 0."""
    if op.family == LAPLACIAN:
        return float(op.n - 1), 1.0
    if op.family == P_LAPLACIAN:
        return (op.n - 1.0) / (op.p - 1.0), op.p / (op.p - 1.0)
    if op.family == PUCCI:
        return op.Gamma * (op.n - 1.0) / op.gamma, 1.0 / op.gamma
    raise UnsupportedError(
        f"{op.family} has no radial ODE form; it uses a dedicated closed profile")


def radial_ode_coefficients(op: OperatorSpec):
    """(c, b) with b the linear map lambda -> b(lambda) of the normal form."""
    c, slope = _ode_c_slope(op)
    return c, (lambda lam, _s=slope: _s * lam)


def profile_exponent(op: OperatorSpec) -> float:
    """Prefactor exponent alpha = (1 - c)/2 of the radial solutions."""
    c, _ = _ode_c_slope(op)
    return 0.5 * (1.0 - c)


def eigenvalue_coefficient(op: OperatorSpec) -> float:
    """Factor turning a squared frequency into an eigenvalue: lambda = coeff * eta^2."""
    _, slope = _ode_c_slope(op)
    return 1.0 / slope


@dataclass(frozen=True)
class RadialProfile:
    """Barrier phi(r) = c1 r^alpha J_alpha(eta r) + c2 r^alpha Y_alpha(eta r)
    on [r_lo, r_hi]; kinds "sine" (phi = sin(eta r)) and "linear" (phi = r)
    bypass the Bessel form."""

    kind: str            # theorem1 | theorem2 | sine | linear
    alpha: float
    eta: float
    c1: float
    c2: float
    r_lo: float
    r_hi: float

    def interval(self) -> tuple:
        return self.r_lo, self.r_hi


def _check_range(profile: RadialProfile, r: np.ndarray):
    lo, hi = profile.r_lo, profile.r_hi
    slack = 1e-12 * max(1.0, hi)
    if np.any(r < lo - slack) or np.any(r > hi + slack):
        raise ValueError(f"r outside profile interval [{lo}, {hi}]")
    if np.any(r <= 0.0):
        raise ValueError("profiles are evaluated at r > 0")


def evaluate(profile: RadialProfile, r):
    """(phi, phi', phi'') at r (scalar or array), accurate to ~1e-14 relative."""
    r_arr = np.atleast_1d(np.asarray(r, dtype=float))
    _check_range(profile, r_arr)
    eta = profile.eta
    x = eta * r_arr
    if profile.kind == "sine":
        phi = np.sin(x)
        dphi = eta * np.cos(x)
        d2phi = -eta * eta * np.sin(x)
    elif profile.kind == "linear":
        phi = r_arr.copy()
        dphi = np.ones_like(r_arr)
        d2phi = np.zeros_like(r_arr)
    else:
        a, c1, c2 = profile.alpha, profile.c1, profile.c2

        def cyl(order):
            out = 0.0
            if c1 != 0.0:
                out = c1 * specfun.bessel_j(order, x)
            if c2 != 0.0:
                out = out + c2 * specfun.bessel_y(order, x)
            return np.asarray(out, dtype=float)

        ra = r_arr ** a
        z0, z1, z2 = cyl(a), cyl(a - 1.0), cyl(a - 2.0)
        phi = ra * z0
        dphi = eta * ra * z1
        d2phi = eta * eta * ra * z2 + eta * ra / r_arr * z1
    if np.isscalar(r) or np.asarray(r).ndim == 0:
        return float(phi[0]), float(dphi[0]), float(d2phi[0])
    return phi, dphi, d2phi


def build_theorem1_profile(op: OperatorSpec, lam: float, r_hi: float) -> RadialProfile:
    """Barrier with phi(0) = 0, increasing on (0, r_hi].

    The gradient-direction operators get their closed profiles: sin(eta r)
    with eta = sqrt(lambda) for the infinity laplacian and phi(r) = r for the
    gradient-limit operator.  ODE-form operators need alpha > 0 so that
    r^alpha J_alpha(eta r) vanishes at the origin; r_hi must not pass the
    first zero of the derivative, i.e. eta * r_hi <= mu_1^(alpha-1).
    """
    lam = float(lam)
    r_hi = float(r_hi)
    if r_hi <= 0.0 or lam <= 0.0:
        raise ValueError("need lam > 0 and r_hi > 0")
    if op.family == INFINITY_LAPLACIAN:
        eta = math.sqrt(lam)
        if eta * r_hi > 0.5 * math.pi * (1.0 + 1e-12):
            raise ValueError("r_hi beyond the monotonicity range pi/(2 eta)")
        return RadialProfile("sine", 0.0, eta, 1.0, 0.0, 0.0, r_hi)
    if op.family == GRADIENT_LIMIT:
        return RadialProfile("linear", 0.0, 1.0, 1.0, 0.0, 0.0, r_hi)
    alpha = profile_exponent(op)
    if alpha <= 0.0:
        raise ValueError(
            f"alpha = {alpha:g} <= 0: no origin-anchored barrier exists; "
            "use the annular route (build_theorem2_profile)")
    _, slope = _ode_c_slope(op)
    eta = math.sqrt(slope * lam)
    first_deriv_zero = specfun.first_zero(alpha - 1.0, "J")
    if eta * r_hi > first_deriv_zero * (1.0 + 1e-12):
        raise ValueError(
            f"r_hi = {r_hi:g} beyond the monotonicity range "
            f"{first_deriv_zero / eta:g}")
    return RadialProfile("theorem1", alpha, eta, 1.0, 0.0, 0.0, r_hi)


def build_theorem2_profile(op: OperatorSpec, lam: float, delta: float,
                           r_hi: float, family: str = "J") -> RadialProfile:
    """Annular barrier vanishing at r = delta, increasing and positive on
    (delta, r_hi].

    Preconditions: eta * delta must be a zero of the chosen Bessel family at
    order alpha (within 1e-8 relative) and eta * r_hi must not pass the next
    zero of the order alpha - 1 member, which is where the derivative first
    vanishes.  The coefficient sign is chosen to make the profile positive.
    """
    if family not in ("J", "Y"):
        raise ValueError(f"family must be 'J' or 'Y', got {family!r}")
    lam, delta, r_hi = float(lam), float(delta), float(r_hi)
    if not 0.0 < delta < r_hi:
        raise ValueError("need 0 < delta < r_hi")
    if not op.is_ode_form():
        raise UnsupportedError(f"{op.family} does not use the annular route")
    alpha = profile_exponent(op)
    _, slope = _ode_c_slope(op)
    eta = math.sqrt(slope * lam)
    x = eta * delta
    z = specfun.next_zero_after(alpha, family, x * (1.0 - 1e-6))
    if abs(z - x) > 1e-8 * max(1.0, x):
        raise ValueError(
            f"eta * delta = {x:g} is not a zero of {family}_alpha "
            f"(nearest: {z:g})")
    y = specfun.next_zero_after(alpha - 1.0, family, x)
    if eta * r_hi > y * (1.0 + 1e-9):
        raise ValueError(
            f"eta * r_hi = {eta * r_hi:g} beyond the next derivative zero {y:g}")
    # sign of Z_{alpha-1} on (x, y) fixes the increasing direction
    xm = 0.5 * (x + min(eta * r_hi, y))
    fn = specfun.bessel_j if family == "J" else specfun.bessel_y
    sign = 1.0 if fn(alpha - 1.0, xm) > 0.0 else -1.0
    c1 = sign if family == "J" else 0.0
    c2 = sign if family == "Y" else 0.0
    return RadialProfile("theorem2", alpha, eta, c1, c2, delta, r_hi)


def _residual_terms(op: OperatorSpec, profile: RadialProfile, lam: float,
                    r_arr: np.ndarray):
    """(residual, scale) arrays; scale is the local magnitude of the terms."""
    phi, dphi, d2phi = evaluate(profile, r_arr)
    phi = np.atleast_1d(phi)
    dphi = np.atleast_1d(dphi)
    d2phi = np.atleast_1d(d2phi)
    fam = op.family
    if fam == INFINITY_LAPLACIAN:
        if np.any(dphi == 0.0):
            raise NumericError("slope vanishes at a sample point; the "
                               "normalized operator is undefined there")
        out = d2phi + lam * phi
        scale = 1.0 + np.abs(d2phi) + np.abs(lam * phi)
    elif fam == GRADIENT_LIMIT:
        a = dphi * dphi * d2phi
        b = lam * phi - dphi
        out = np.maximum(a, b)
        scale = 1.0 + np.abs(a) + np.abs(lam * phi) + np.abs(dphi)
    elif fam == LAPLACIAN:
        slope_term = (op.n - 1.0) * dphi / r_arr
        out = d2phi + slope_term + lam * phi
        scale = 1.0 + np.abs(d2phi) + np.abs(slope_term) + np.abs(lam * phi)
    elif fam == P_LAPLACIAN:
        if np.any(dphi == 0.0):
            raise NumericError("slope vanishes at a sample point; the "
                               "normalized operator is undefined there")
        p = op.p
        curve_term = (p - 1.0) / p * d2phi
        slope_term = (op.n - 1.0) / p * dphi / r_arr
        out = curve_term + slope_term + lam * phi
        scale = 1.0 + np.abs(curve_term) + np.abs(slope_term) + np.abs(lam * phi)
    elif fam == PUCCI:
        g, G = op.gamma, op.Gamma
        weight = np.where(d2phi > 0.0, G, g)
        tang = dphi / r_arr
        wtang = np.where(tang > 0.0, G, g)
        curve_term = weight * d2phi
        slope_term = (op.n - 1.0) * wtang * tang
        out = curve_term + slope_term + lam * phi
        scale = 1.0 + np.abs(curve_term) + np.abs(slope_term) + np.abs(lam * phi)
    else:
        raise UnsupportedError(f"unknown operator family {fam!r}")
    return out, scale, dphi


def residual(op: OperatorSpec, profile: RadialProfile, lam: float, r):
    """Pointwise defect of the supersolution inequality at r.

    For the classical families this is L phi + lambda phi, which must be
    <= 0.  The Pucci operator applies its extreme coefficients to the exact
    eigenvalues of the radial Hessian (phi'' once, phi'/r with multiplicity
    n - 1), checking the sign of each instead of assuming concavity.  The
    gradient-limit operator's min-form inequality (both branches nonnegative)
    is folded into the same convention: the returned value is <= 0 exactly
    when the profile is admissible.
    """
    r_arr = np.atleast_1d(np.asarray(r, dtype=float))
    out, _, _ = _residual_terms(op, profile, lam, r_arr)
    if np.isscalar(r) or np.asarray(r).ndim == 0:
        return float(out[0])
    return out


@dataclass(frozen=True)
class ResidualReport:
    """Result of sampling the supersolution inequality on an interval.

    max_residual is measured relative to the local magnitude of the
    operator's terms at each sample, so the tolerance stays meaningful near
    the origin of ball profiles, where individual terms of the exact
    identity diverge like powers of 1/r and an absolute criterion would
    drown in float cancellation noise.
    """

    max_residual: float
    min_slope: float
    samples: int
    r_lo: float
    r_hi: float
    tol: float

    @property
    def verified(self) -> bool:
        return self.max_residual <= self.tol and self.min_slope > 0.0


def chebyshev_nodes(lo: float, hi: float, n: int) -> np.ndarray:
    """n Chebyshev points in the open interval (lo, hi), ascending."""
    j = np.arange(n)
    theta = (2.0 * j + 1.0) * math.pi / (2.0 * n)
    return 0.5 * (lo + hi) + 0.5 * (hi - lo) * np.cos(theta)[::-1]


def verify_supersolution(op: OperatorSpec, profile: RadialProfile, lam: float,
                         samples: int = 1000, tol: float = 1e-8) -> ResidualReport:
    """Sample the residual and slope on Chebyshev nodes of the interval.

    Operators that normalize by the gradient get the interval ends trimmed by
    a relative margin so the verifier never divides by a vanishing slope; the
    viscosity notion of solution covers the trimmed endpoints.
    """
    if samples < 2:
        raise ValueError("need at least 2 samples")
    lo, hi = profile.r_lo, profile.r_hi
    if op.family in (INFINITY_LAPLACIAN, P_LAPLACIAN):
        width = hi - lo
        lo = lo + ENDPOINT_MARGIN * width
        hi = hi - ENDPOINT_MARGIN * width
    nodes = chebyshev_nodes(lo, hi, samples)
    res, scale, dphi = _residual_terms(op, profile, lam, nodes)
    return ResidualReport(
        max_residual=float(np.max(res / scale)),
        min_slope=float(np.min(dphi)),
        samples=samples,
        r_lo=lo,
        r_hi=hi,
        tol=tol,
    )
