"""Bessel functions J_nu, Y_nu of real order and their positive zeros.

Evaluation is delegated to scipy.special (relative accuracy ~1e-15, well
inside the 1e-12 target).  Zero finding is implemented here because scipy
only tabulates zeros of integer orders: each zero is located from a McMahon
asymptotic guess (with a sign-scan fallback where the asymptotics are poor),
then refined by bisection and bracket-confined Newton steps down to a
certified sign-change bracket of relative width <= 1e-12.

Orders are plain floats restricted to |nu| <= 50, ample for the exponents
alpha = (p-n)/(2(p-1)) and alpha - 1 that arise in the radial barriers.
All functions are pure; zero tables are memoized behind a lock so concurrent
callers always see the same values.
"""

import math
import threading
from dataclasses import dataclass

import numpy as np
from scipy.special import jv, jvp, yv, yvp

MAX_ORDER = 50.0
MAX_ZERO_INDEX = 10_000
FAMILIES = ("J", "Y")

# Relative width of the certified bracket around each zero.
BRACKET_REL_WIDTH = 1e-12

_SCAN_STEP = math.pi / 8


def _check_order(nu: float) -> float:
    nu = float(nu)
    if not math.isfinite(nu) or abs(nu) > MAX_ORDER:
        raise ValueError(f"order must be finite with |nu| <= {MAX_ORDER}, got {nu}")
    return nu


def _check_family(family: str) -> str:
    if family not in FAMILIES:
        raise ValueError(f"family must be one of {FAMILIES}, got {family!r}")
    return family


def bessel_j(nu: float, x):
    """J_nu(x) for real order nu and x > 0 (scalar or array)."""
    nu = _check_order(nu)
    x = np.asarray(x, dtype=float)
    if np.any(x <= 0.0):
        raise ValueError("bessel_j requires x > 0; the r**alpha prefactor "
                         "belongs to the radial profile, not here")
    out = jv(nu, x)
    return float(out) if out.ndim == 0 else out


def bessel_y(nu: float, x):
    """Y_nu(x) for real order nu and x > 0 (scalar or array)."""
    nu = _check_order(nu)
    x = np.asarray(x, dtype=float)
    if np.any(x <= 0.0):
        raise ValueError("bessel_y requires x > 0")
    out = yv(nu, x)
    return float(out) if out.ndim == 0 else out


def bessel_j_prime(nu: float, x):
    """d/dx J_nu(x)."""
    nu = _check_order(nu)
    x = np.asarray(x, dtype=float)
    if np.any(x <= 0.0):
        raise ValueError("bessel_j_prime requires x > 0")
    out = jvp(nu, x)
    return float(out) if out.ndim == 0 else out


def bessel_y_prime(nu: float, x):
    """d/dx Y_nu(x)."""
    nu = _check_order(nu)
    x = np.asarray(x, dtype=float)
    if np.any(x <= 0.0):
        raise ValueError("bessel_y_prime requires x > 0")
    out = yvp(nu, x)
    return float(out) if out.ndim == 0 else out


def _fun(nu: float, family: str):
    if family == "J":
        return lambda x: jv(nu, x), lambda x: jvp(nu, x)
    return lambda x: yv(nu, x), lambda x: yvp(nu, x)


def mcmahon_guess(nu: float, family: str, k: int) -> float:
    """McMahon asymptotic estimate of the k-th positive zero.

    Accurate to ~1e-5 for k >= 2 at small orders; only ~2e-3 for the very
    first zero, and unreliable for negative orders at small k (the asymptotic
    indexing shifts), which is why zero location falls back to sign scanning
    in those regimes.
    """
    mu = 4.0 * nu * nu
    offset = 0.25 if family == "J" else 0.75
    beta = (k + 0.5 * nu - offset) * math.pi
    if beta <= 0.0:
        return math.nan
    e = 8.0 * beta
    t1 = (mu - 1.0) / e
    t2 = 4.0 * (mu - 1.0) * (7.0 * mu - 31.0) / (3.0 * e**3)
    t3 = 32.0 * (mu - 1.0) * (83.0 * mu * mu - 982.0 * mu + 3779.0) / (15.0 * e**5)
    return beta - t1 - t2 - t3


@dataclass(frozen=True)
class ZeroTable:
    """Ascending positive zeros of J_nu or Y_nu with certified brackets.

    brackets[i] = (lo, hi) straddles zeros[i] with a verified sign change
    and hi - lo <= BRACKET_REL_WIDTH * zeros[i].
    """

    order: float
    family: str
    zeros: tuple
    brackets: tuple

    def __post_init__(self):
        z = self.zeros
        if any(z[i] >= z[i + 1] for i in range(len(z) - 1)):
            raise ValueError("zero table is not strictly increasing")


_cache_lock = threading.Lock()
_zero_cache: dict = {}  # (nu, family) -> list[(zero, lo, hi)]


def _refine_bracket(f, lo, hi, flo, fhi, df):
    """Shrink a sign-change bracket to certified width; Newton never exits it."""
    # a few plain bisections first so Newton starts close
    for _ in range(8):
        mid = 0.5 * (lo + hi)
        fm = f(mid)
        if fm == 0.0:
            break
        if flo * fm < 0.0:
            hi, fhi = mid, fm
        else:
            lo, flo = mid, fm
    # Newton from the bracket midpoint, falling back to bisection whenever a
    # step would leave the bracket
    x = 0.5 * (lo + hi)
    step_tol = 0.05 * BRACKET_REL_WIDTH * max(abs(x), 1e-6)
    for _ in range(200):
        fx = f(x)
        if fx == 0.0:
            break
        if flo * fx < 0.0:
            hi, fhi = x, fx
        else:
            lo, flo = x, fx
        d = df(x)
        xn = x - fx / d if d != 0.0 else 0.5 * (lo + hi)
        if not lo < xn < hi:
            xn = 0.5 * (lo + hi)
        done = abs(xn - x) <= step_tol
        x = xn
        if done:
            break
    z = float(x)
    # certify a symmetric sign-change bracket, widening only if roundoff bites
    w = 0.45 * BRACKET_REL_WIDTH * max(abs(z), 1e-6)
    for _ in range(60):
        blo, bhi = z - w, z + w
        if blo > 0.0 and f(blo) * f(bhi) < 0.0:
            return z, float(blo), float(bhi)
        w *= 2.0
    raise ValueError(f"could not certify a sign-change bracket near x={z}")


def _scan_next(f, start, limit=None):
    """First sign change of f after `start`, by pi/8 stepping."""
    x0 = max(start, 1e-3)
    f0 = f(x0)
    steps = 0
    while True:
        x1 = x0 + _SCAN_STEP
        if limit is not None and x0 > limit:
            return None
        f1 = f(x1)
        if f0 == 0.0:
            # landed exactly on a zero: perturb
            f0 = f(x0 + 1e-12 * max(1.0, x0))
        if f0 * f1 < 0.0:
            return x0, x1, f0, f1
        x0, f0 = x1, f1
        steps += 1
        if steps > 200_000:
            raise ValueError("sign scan exhausted without finding a zero")


def _extend_table(nu: float, family: str, count: int):
    f, df = _fun(nu, family)
    entries = _zero_cache.setdefault((nu, family), [])
    while len(entries) < count:
        k = len(entries) + 1
        prev = entries[-1][0] if entries else 0.0
        guess = mcmahon_guess(nu, family, k)
        bracket = None
        # Trust McMahon only where a skipped zero is impossible: past the
        # turning point x ~ sqrt(2 nu^2) the spacing of consecutive zeros
        # lies in (2.8, 4.45), so a +-1 window below prev+3.8 isolates the
        # next zero.  Everywhere else (first zero, negative orders) scan.
        if (entries and math.isfinite(guess)
                and prev + 1.05 < guess < prev + 3.8
                and guess - 1.0 > math.sqrt(2.0 * nu * nu) + 0.5):
            lo = max(guess - 1.0, prev + 0.05)
            hi = guess + 1.0
            flo, fhi = f(lo), f(hi)
            if flo * fhi < 0.0:
                bracket = (lo, hi, flo, fhi)
        if bracket is None:
            start = prev + 1e-9 * max(1.0, prev) if entries else max(0.1, nu) / 100.0
            bracket = _scan_next(f, start)
        z, blo, bhi = _refine_bracket(f, *bracket, df)
        if entries and z <= entries[-1][0]:
            raise ValueError(f"zero search for {family}_{nu} went backwards at k={k}")
        entries.append((z, blo, bhi))
    return entries


def zero_table(nu: float, family: str, count: int) -> ZeroTable:
    """Table of the first `count` positive zeros with certified brackets."""
    nu = _check_order(nu)
    _check_family(family)
    if not 1 <= count <= MAX_ZERO_INDEX:
        raise ValueError(f"count must be in [1, {MAX_ZERO_INDEX}]")
    with _cache_lock:
        entries = _extend_table(nu, family, count)
        rows = list(entries[:count])
    return ZeroTable(
        order=nu,
        family=family,
        zeros=tuple(r[0] for r in rows),
        brackets=tuple((r[1], r[2]) for r in rows),
    )


def bessel_zero(nu: float, family: str, k: int) -> tuple:
    """k-th positive zero of J_nu or Y_nu.

    Returns (zero, (lo, hi)) where (lo, hi) is a certified sign-change
    bracket of relative width <= 1e-12.
    """
    nu = _check_order(nu)
    _check_family(family)
    if not isinstance(k, (int, np.integer)) or k < 1:
        raise ValueError(f"k must be a positive integer, got {k}")
    if k > MAX_ZERO_INDEX:
        raise ValueError(f"zero index {k} exceeds the table limit {MAX_ZERO_INDEX}")
    with _cache_lock:
        entries = _extend_table(nu, family, k)
        z, lo, hi = entries[k - 1]
    return z, (lo, hi)


def first_zero(nu: float, family: str = "J") -> float:
    """First positive zero; mu_1 in the eigenvalue bound formulas."""
    return bessel_zero(nu, family, 1)[0]


def next_zero_after(nu: float, family: str, x: float) -> float:
    """Smallest positive zero of the requested function strictly greater than x."""
    nu = _check_order(nu)
    _check_family(family)
    x = float(x)
    if x <= 0.0:
        return bessel_zero(nu, family, 1)[0]
    f, df = _fun(nu, family)
    # offset so that a zero exactly at x is skipped
    start = x + max(1e-9, 5e-13 * x)
    bracket = _scan_next(f, start)
    z, _, _ = _refine_bracket(f, *bracket, df)
    return z
