"""Domain geometry: inradius, dilation, convexity, volume, distances.

Supported shapes are closed-form wherever possible: balls, boxes, stadiums
and cylinders are trivial; L- and U-shaped domains get exact corner-ball
tangency algebra for both the inradius and the inradius of the dilated set
(so the reentrant-corner behaviour of dilation is computed exactly, not
estimated); convex polygons use a Chebyshev-center linear program; nonconvex
polygons fall back to an exact Euclidean distance transform on a grid of
resolution h, polished by Nelder-Mead on the exact boundary distance, with h
reported so downstream consumers can pad conservatively.

The dilation of a domain by delta is ``{x : dist(x, domain) < delta}``;
``dilated_inradius`` returns the inradius R_delta of that set.  For every
shape R_delta >= R + delta, with equality for convex domains.

All values are immutable and every function is pure, so everything here is
safe to share across threads.
"""

import math
from dataclasses import dataclass
from functools import lru_cache

import numpy as np
import shapely
from scipy.ndimage import distance_transform_edt
from scipy.optimize import linprog, minimize

from .exceptions import GeometryError, NumericError, UnsupportedError

SQRT2 = math.sqrt(2.0)
# inradius factor of the corner ball wedged against two walls and a
# reentrant corner at equal offsets: (2 - sqrt(2)) = 1/(1 + 1/sqrt(2))
CORNER_FACTOR = 2.0 - SQRT2

# default grid resolution (fraction of the bounding-box short side) for the
# distance-transform path on nonconvex polygons
DT_CELLS = 384


def _positive(name, value):
    value = float(value)
    if not math.isfinite(value) or value <= 0.0:
        raise ValueError(f"{name} must be a positive finite length, got {value}")
    return value


@dataclass(frozen=True)
class Ball:
    """n-dimensional ball of given radius centered at the origin."""
    radius: float
    n: int = 2

    def __post_init__(self):
        _positive("radius", self.radius)
        if self.n < 1:
            raise ValueError("dimension must be >= 1")


@dataclass(frozen=True)
class Box:
    """Axis-aligned box [0, s1] x ... x [0, sn]."""
    sides: tuple

    def __init__(self, *sides):
        if len(sides) == 1 and isinstance(sides[0], (tuple, list)):
            sides = tuple(sides[0])
        object.__setattr__(self, "sides", tuple(_positive("side", s) for s in sides))
        if not self.sides:
            raise ValueError("box needs at least one side length")


@dataclass(frozen=True)
class Stadium:
    """2D stadium: all points within `radius` of a segment of given length."""
    length: float
    radius: float

    def __post_init__(self):
        _positive("length", self.length)
        _positive("radius", self.radius)


@dataclass(frozen=True)
class Polygon:
    """Simple 2D polygon, vertices in counterclockwise order."""
    vertices: tuple

    def __init__(self, vertices):
        vts = tuple((float(x), float(y)) for x, y in vertices)
        object.__setattr__(self, "vertices", vts)
        if len(vts) < 3:
            raise GeometryError("polygon needs at least 3 vertices")
        geom = shapely.Polygon(vts)
        if not geom.is_valid or geom.area <= 0.0:
            raise GeometryError("polygon must be simple (no self-intersections) "
                                "and non-degenerate")
        if _signed_area(np.asarray(vts)) <= 0.0:
            raise GeometryError("polygon vertices must be in counterclockwise order")

    @property
    def coords(self) -> np.ndarray:
        return np.asarray(self.vertices, dtype=float)


@dataclass(frozen=True)
class LShape:
    """L-shaped domain {0 <= x, y <= leg, min(x, y) <= width}."""
    leg: float
    width: float

    def __post_init__(self):
        _positive("leg", self.leg)
        _positive("width", self.width)
        if self.leg < self.width:
            raise ValueError("LShape requires leg >= width")


@dataclass(frozen=True)
class UShape:
    """Square [0, outer]^2 with a centered open slot cut from the top edge."""
    outer: float
    slot_width: float
    slot_depth: float

    def __post_init__(self):
        _positive("outer", self.outer)
        _positive("slot_width", self.slot_width)
        _positive("slot_depth", self.slot_depth)
        if self.slot_width >= self.outer or self.slot_depth >= self.outer:
            raise ValueError("slot must be strictly smaller than the outer square")


@dataclass(frozen=True)
class Cylinder:
    """3D solid cylinder, radius in the xy-plane, axis along z in [0, height]."""
    radius: float
    height: float

    def __post_init__(self):
        _positive("radius", self.radius)
        _positive("height", self.height)


DomainSpec = (Ball, Box, Stadium, Polygon, LShape, UShape, Cylinder)


@dataclass(frozen=True)
class GeometrySummary:
    inradius: float
    volume: float
    convex: bool


def _signed_area(v: np.ndarray) -> float:
    x, y = v[:, 0], v[:, 1]
    return 0.5 * float(np.sum(x * np.roll(y, -1) - np.roll(x, -1) * y))


def unit_ball_volume(n: int) -> float:
    """Volume C_n of the n-dimensional unit ball."""
    return math.pi ** (n / 2.0) / math.gamma(n / 2.0 + 1.0)


def dimension(domain) -> int:
    if isinstance(domain, Ball):
        return domain.n
    if isinstance(domain, Box):
        return len(domain.sides)
    if isinstance(domain, Cylinder):
        return 3
    if isinstance(domain, (Stadium, Polygon, LShape, UShape)):
        return 2
    raise UnsupportedError(f"unknown domain {domain!r}")


def is_convex(domain) -> bool:
    if isinstance(domain, (Ball, Box, Stadium, Cylinder)):
        return True
    if isinstance(domain, (LShape, UShape)):
        return False
    if isinstance(domain, Polygon):
        v = domain.coords
        d = np.roll(v, -1, axis=0) - v
        cross = d[:, 0] * np.roll(d, -1, axis=0)[:, 1] - d[:, 1] * np.roll(d, -1, axis=0)[:, 0]
        scale = float(np.max(np.abs(d))) ** 2
        return bool(np.all(cross >= -1e-12 * scale))
    raise UnsupportedError(f"unknown domain {domain!r}")


def volume(domain) -> float:
    if isinstance(domain, Ball):
        return unit_ball_volume(domain.n) * domain.radius ** domain.n
    if isinstance(domain, Box):
        return float(np.prod(domain.sides))
    if isinstance(domain, Stadium):
        return 2.0 * domain.radius * domain.length + math.pi * domain.radius ** 2
    if isinstance(domain, Polygon):
        return _signed_area(domain.coords)
    if isinstance(domain, LShape):
        return domain.width * (2.0 * domain.leg - domain.width)
    if isinstance(domain, UShape):
        return domain.outer ** 2 - domain.slot_width * domain.slot_depth
    if isinstance(domain, Cylinder):
        return math.pi * domain.radius ** 2 * domain.height
    raise UnsupportedError(f"unknown domain {domain!r}")


def bounding_box(domain):
    """((x_lo, y_lo), (x_hi, y_hi)) for 2D shapes."""
    if isinstance(domain, Ball) and domain.n == 2:
        r = domain.radius
        return (-r, -r), (r, r)
    if isinstance(domain, Box) and len(domain.sides) == 2:
        return (0.0, 0.0), domain.sides
    if isinstance(domain, Stadium):
        l2, r = 0.5 * domain.length, domain.radius
        return (-l2 - r, -r), (l2 + r, r)
    if isinstance(domain, Polygon):
        v = domain.coords
        return tuple(v.min(axis=0)), tuple(v.max(axis=0))
    if isinstance(domain, LShape):
        return (0.0, 0.0), (domain.leg, domain.leg)
    if isinstance(domain, UShape):
        return (0.0, 0.0), (domain.outer, domain.outer)
    raise UnsupportedError(f"no 2D bounding box for {domain!r}")


def contains(domain, points) -> np.ndarray:
    """Strict-interior test for 2D shapes; points is an (N, 2) array."""
    pts = np.atleast_2d(np.asarray(points, dtype=float))
    x, y = pts[:, 0], pts[:, 1]
    if isinstance(domain, Ball) and domain.n == 2:
        return x * x + y * y < domain.radius ** 2
    if isinstance(domain, Box) and len(domain.sides) == 2:
        sx, sy = domain.sides
        return (x > 0) & (x < sx) & (y > 0) & (y < sy)
    if isinstance(domain, Stadium):
        l2 = 0.5 * domain.length
        dx = np.maximum(np.abs(x) - l2, 0.0)
        return dx * dx + y * y < domain.radius ** 2
    if isinstance(domain, LShape):
        l, w = domain.leg, domain.width
        return (x > 0) & (y > 0) & (x < l) & (y < l) & (np.minimum(x, y) < w)
    if isinstance(domain, UShape):
        a, sw, sd = domain.outer, domain.slot_width, domain.slot_depth
        xl, xr, yb = 0.5 * (a - sw), 0.5 * (a + sw), a - sd
        inbox = (x > 0) & (x < a) & (y > 0) & (y < a)
        inslot = (x >= xl) & (x <= xr) & (y >= yb)
        return inbox & ~inslot
    if isinstance(domain, Polygon):
        poly = shapely.Polygon(domain.vertices)
        return shapely.contains_xy(poly, x, y)
    raise UnsupportedError(f"containment test not available for {domain!r}")


def distance_to_complement(domain, point) -> float:
    """Euclidean distance from `point` to the complement of the domain.

    Returns 0 for points outside.  This is the function whose maximum over
    the closure defines the inradius.
    """
    p = np.asarray(point, dtype=float)
    if isinstance(domain, Ball):
        if p.shape != (domain.n,):
            raise ValueError(f"point must have dimension {domain.n}")
        return max(0.0, domain.radius - float(np.linalg.norm(p)))
    if isinstance(domain, Box):
        s = np.asarray(domain.sides)
        if p.shape != s.shape:
            raise ValueError(f"point must have dimension {len(domain.sides)}")
        return max(0.0, float(np.min(np.minimum(p, s - p))))
    if isinstance(domain, Cylinder):
        if p.shape != (3,):
            raise ValueError("point must have dimension 3")
        radial = domain.radius - math.hypot(p[0], p[1])
        return max(0.0, min(radial, p[2], domain.height - p[2]))
    if p.shape != (2,):
        raise ValueError("point must have dimension 2")
    x, y = float(p[0]), float(p[1])
    if isinstance(domain, Stadium):
        l2 = 0.5 * domain.length
        d_seg = math.hypot(max(abs(x) - l2, 0.0), y)
        return max(0.0, domain.radius - d_seg)
    if isinstance(domain, LShape):
        l, w = domain.leg, domain.width
        if not (0 < x < l and 0 < y < l and min(x, y) < w):
            return 0.0
        d_corner = math.hypot(max(w - x, 0.0), max(w - y, 0.0))
        return min(x, y, l - x, l - y, d_corner)
    if isinstance(domain, UShape):
        a, sw, sd = domain.outer, domain.slot_width, domain.slot_depth
        xl, xr, yb = 0.5 * (a - sw), 0.5 * (a + sw), a - sd
        if not contains(domain, [(x, y)])[0]:
            return 0.0
        d_slot = math.hypot(max(xl - x, x - xr, 0.0), max(yb - y, 0.0))
        return min(x, y, a - x, a - y, d_slot)
    if isinstance(domain, Polygon):
        poly = shapely.Polygon(domain.vertices)
        pt = shapely.Point(x, y)
        if not poly.contains(pt):
            return 0.0
        return float(poly.exterior.distance(pt))
    raise UnsupportedError(f"unknown domain {domain!r}")


# ---------------------------------------------------------------------------
# inradius


def _chebyshev_lp(poly: Polygon) -> float:
    """Chebyshev center of a convex polygon: maximize t with n_i.c + t <= b_i."""
    v = poly.coords
    edges = np.roll(v, -1, axis=0) - v
    lengths = np.linalg.norm(edges, axis=1)
    if np.any(lengths == 0.0):
        raise GeometryError("polygon has a zero-length edge")
    # outward normal of a CCW edge (dx, dy) is (dy, -dx)
    normals = np.stack([edges[:, 1], -edges[:, 0]], axis=1) / lengths[:, None]
    b = np.sum(normals * v, axis=1)
    a_ub = np.hstack([normals, np.ones((len(v), 1))])
    res = linprog(c=[0.0, 0.0, -1.0], A_ub=a_ub, b_ub=b,
                  bounds=[(None, None)] * 3, method="highs")
    if not res.success or res.x[2] <= 0.0:
        raise GeometryError(f"Chebyshev LP failed: {res.message}")
    return float(res.x[2])


def _lshape_inradius(l: float, w: float) -> float:
    # corner ball of radius (2-sqrt2) w once the leg is long enough to host it,
    # otherwise the mid-diagonal ball of radius leg/2
    return min(0.5 * l, CORNER_FACTOR * w)


def _ushape_inradius(u: UShape) -> float:
    a = u.outer
    xl = 0.5 * (a - u.slot_width)
    yb = a - u.slot_depth
    cands = [0.5 * xl, 0.5 * yb]
    # ball wedged against two outer walls and the slot's bottom corner
    rho = (xl + yb) - math.sqrt(2.0 * xl * yb)
    if rho <= min(xl, yb) and rho <= a - rho:
        cands.append(rho)
    return max(cands)


def _grid_field(poly: Polygon, delta: float, cells: int | None):
    """Distance-to-domain field on a padded grid; returns (xs, ys, dist, h)."""
    if cells is None:
        cells = DT_CELLS
    (x0, y0), (x1, y1) = bounding_box(poly)
    h = min(x1 - x0, y1 - y0) / cells
    pad = delta + 2.0 * h
    xs = np.arange(x0 - pad, x1 + pad + h, h)
    ys = np.arange(y0 - pad, y1 + pad + h, h)
    xx, yy = np.meshgrid(xs, ys, indexing="ij")
    inside = contains(poly, np.column_stack([xx.ravel(), yy.ravel()])).reshape(xx.shape)
    dist_out = distance_transform_edt(~inside) * h
    return xs, ys, inside, dist_out, h


def _polygon_inradius_dt(poly: Polygon, cells: int | None = None):
    """Nonconvex-polygon inradius: exact EDT on a grid, then local polish."""
    xs, ys, inside, _, h = _grid_field(poly, 0.0, cells)
    dist_in = distance_transform_edt(inside) * h
    i, j = np.unravel_index(np.argmax(dist_in), dist_in.shape)
    best = np.array([xs[i], ys[j]])
    res = minimize(lambda q: -distance_to_complement(poly, q), best,
                   method="Nelder-Mead",
                   options={"xatol": 1e-12 * max(1.0, h), "fatol": 1e-13,
                            "maxiter": 400})
    r = max(float(dist_in[i, j]), -float(res.fun))
    return r, h


@lru_cache(maxsize=256)
def _polygon_inradius_cached(poly: Polygon):
    if is_convex(poly):
        return _chebyshev_lp(poly), 0.0
    return _polygon_inradius_dt(poly)


def inradius_with_resolution(domain) -> tuple:
    """(R, h): inradius and the grid resolution h of the estimate.

    h == 0 means the value is exact (closed form or Chebyshev LP); h > 0
    flags a distance-transform estimate whose error is O(h).
    """
    if isinstance(domain, Ball):
        return domain.radius, 0.0
    if isinstance(domain, Box):
        return 0.5 * min(domain.sides), 0.0
    if isinstance(domain, Stadium):
        return domain.radius, 0.0
    if isinstance(domain, Cylinder):
        return min(domain.radius, 0.5 * domain.height), 0.0
    if isinstance(domain, LShape):
        return _lshape_inradius(domain.leg, domain.width), 0.0
    if isinstance(domain, UShape):
        return _ushape_inradius(domain), 0.0
    if isinstance(domain, Polygon):
        return _polygon_inradius_cached(domain)
    raise UnsupportedError(f"unknown domain {domain!r}")


def inradius(domain) -> float:
    """Largest radius of a ball contained in the closed domain."""
    return inradius_with_resolution(domain)[0]


def summarize(domain) -> GeometrySummary:
    return GeometrySummary(inradius=inradius(domain), volume=volume(domain),
                           convex=is_convex(domain))


# ---------------------------------------------------------------------------
# dilation


def _lshape_dilated_inradius(l: float, w: float, delta: float) -> float:
    """Exact inradius of the delta-dilation of an L-shape.

    While delta <= leg - width the reentrant corner of the dilated set stays
    sharp at (w + delta, w + delta) and the dilation is again an L-shape (with
    rounded outer corners that the maximal ball never touches).  Beyond that
    the excluded wedge is bounded by two circular arcs meeting on the
    diagonal; the maximal ball touches the two outer walls and the wedge tip.
    """
    a = l - w
    if delta <= a:
        return min(0.5 * l + delta, CORNER_FACTOR * (w + 2.0 * delta))
    # diagonal coordinate of the wedge tip: (u-w)^2 + (u-l)^2 = delta^2
    ustar = 0.5 * ((w + l) + math.sqrt(2.0 * delta * delta - a * a))
    r_corner = CORNER_FACTOR * (ustar + delta)
    t_corner = r_corner - delta
    cands = []
    if l + delta - t_corner >= r_corner:        # far-wall clearance
        cands.append(r_corner)
    # mid-diagonal ball capped by the wedge
    d_tip = SQRT2 * (ustar - 0.5 * l)
    cands.append(min(0.5 * l + delta, d_tip))
    return max(cands)


def _ushape_dilated_inradius(u: UShape, delta: float) -> float:
    """Exact inradius of the delta-dilation of a U-shape.

    For delta <= slot_width/2 the slot survives with a sharp reentrant corner
    at offset (delta, delta) and corner-ball algebra applies.  Beyond that the
    slot seals; what remains of the obstruction is a wedge hanging over the
    slot mouth, bounded by arcs around the two rim corners, and the maximal
    ball touches a bottom corner of the dilated square plus the wedge tip.
    """
    a, sw = u.outer, u.slot_width
    xl = 0.5 * (a - sw)
    yb = a - u.slot_depth
    if delta <= 0.5 * sw:
        c1, c2 = xl + 2.0 * delta, yb + 2.0 * delta
        cands = [0.5 * xl + delta, 0.5 * yb + delta]
        rho = (c1 + c2) - math.sqrt(2.0 * c1 * c2)
        if rho <= min(c1, c2) and rho <= a + 2.0 * delta - rho:
            cands.append(rho)
        return max(cands)
    vstar = a + math.sqrt(delta * delta - 0.25 * sw * sw)
    big_a = 0.5 * a + delta
    big_b = vstar + delta
    r_corner = (big_a + big_b) - math.sqrt(2.0 * big_a * big_b)
    r_center = min(0.5 * (vstar + delta), 0.5 * a + delta)
    if r_corner - delta <= 0.5 * a:
        return max(r_corner, r_center)
    return r_center


def _polygon_dilated_inradius_dt(poly: Polygon, delta: float, cells: int | None = None):
    xs, ys, inside, dist_out, h = _grid_field(poly, delta, cells)
    dilated = inside | (dist_out < delta)
    dist_in = distance_transform_edt(dilated) * h
    return float(dist_in.max()), h


@lru_cache(maxsize=1024)
def _polygon_dilated_cached(poly: Polygon, delta: float):
    return _polygon_dilated_inradius_dt(poly, delta)


def dilated_inradius_with_resolution(domain, delta: float) -> tuple:
    """(R_delta, h) where h > 0 flags a distance-transform estimate."""
    delta = float(delta)
    if delta < 0.0:
        raise ValueError(f"delta must be >= 0, got {delta}")
    if delta == 0.0:
        return inradius_with_resolution(domain)
    if is_convex(domain):
        r, h = inradius_with_resolution(domain)
        return r + delta, h
    if isinstance(domain, LShape):
        return _lshape_dilated_inradius(domain.leg, domain.width, delta), 0.0
    if isinstance(domain, UShape):
        return _ushape_dilated_inradius(domain, delta), 0.0
    if isinstance(domain, Polygon):
        return _polygon_dilated_cached(domain, delta)
    raise UnsupportedError(f"unknown domain {domain!r}")


def dilated_inradius(domain, delta: float) -> float:
    """Inradius R_delta of {x : dist(x, domain) < delta}.

    Convex domains return R + delta exactly; the L-shape and U-shape use the
    closed corner-tangency formulas; other nonconvex polygons go through the
    distance-transform estimate.
    """
    return dilated_inradius_with_resolution(domain, delta)[0]


def solve_delta_for_ratio(domain, ratio: float, pad: float = 0.0) -> tuple:
    """Find delta with delta / R_delta(delta) == ratio; returns (delta, R_delta).

    The map delta -> delta / R_delta is 0 at delta = 0 and tends to 1, so any
    ratio in (0, 1) is reachable (up to jump discontinuities of R_delta when a
    slot of the domain seals).  Convex domains use the closed form
    delta = R * ratio / (1 - ratio).  `pad` is added to every R_delta seen,
    which consumers use to make distance-transform estimates conservative.
    """
    ratio = float(ratio)
    if not 0.0 < ratio < 1.0:
        raise ValueError(f"ratio must lie in (0, 1), got {ratio}")
    if is_convex(domain) and pad == 0.0:
        r = inradius(domain)
        delta = r * ratio / (1.0 - ratio)
        return delta, r + delta

    def rdelta(d):
        return dilated_inradius(domain, d) + pad

    def f(d):
        return d / rdelta(d) - ratio

    r0 = inradius(domain) + pad
    lo = 0.0
    hi = max(r0, 1.0) * ratio / (1.0 - ratio)
    for _ in range(120):
        if f(hi) >= 0.0:
            break
        hi *= 2.0
    else:
        raise NumericError("failed to bracket delta for the requested ratio")
    for _ in range(200):
        mid = 0.5 * (lo + hi)
        if hi - lo <= 1e-10 * max(mid, 1e-30):
            break
        if f(mid) < 0.0:
            lo = mid
        else:
            hi = mid
    delta = 0.5 * (lo + hi)
    rd = rdelta(delta)
    _, h = dilated_inradius_with_resolution(domain, delta)
    tol = 1e-8 if h == 0.0 else 4.0 * h / rd
    if abs(delta / rd - ratio) > tol:
        raise NumericError(
            f"delta/R_delta = {delta / rd} cannot reach ratio {ratio} "
            "(R_delta jumps at this ratio)")
    return delta, rd
