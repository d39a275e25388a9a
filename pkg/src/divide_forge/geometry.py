"""Exact rational plane geometry.

All coordinates are `fractions.Fraction`; every predicate used for topology
(intersection, sidedness, containment, angular order) is decided exactly.
Floats appear nowhere in this module.  Square roots show up only inside
sign computations of expressions a + b*sqrt(s), which are resolved by
squaring, and in *approximate* unit normals used to propose offset curves
whose correctness is re-checked combinatorially by the caller.
"""

from __future__ import annotations

from fractions import Fraction
from math import isqrt
from typing import Iterable, Optional, Sequence, Tuple

Point = Tuple[Fraction, Fraction]
Vec = Tuple[Fraction, Fraction]

ZERO = Fraction(0)
ONE = Fraction(1)


# ---------------------------------------------------------------------------
# scalars and vectors

def frac(value) -> Fraction:
    """Exact Fraction from int/str/Fraction; decimal strings convert exactly."""
    if isinstance(value, Fraction):
        return value
    if isinstance(value, int):
        return Fraction(value)
    if isinstance(value, str):
        return Fraction(value)
    raise TypeError(f"cannot make an exact rational from {value!r}")


def fmt_frac(q: Fraction) -> str:
    q = Fraction(q)
    if q.denominator == 1:
        return str(q.numerator)
    return f"{q.numerator}/{q.denominator}"


def pt(x, y) -> Point:
    return (frac(x), frac(y))


def sub(a: Point, b: Point) -> Vec:
    return (a[0] - b[0], a[1] - b[1])


def add(a: Point, b: Vec) -> Point:
    return (a[0] + b[0], a[1] + b[1])


def smul(t: Fraction, v: Vec) -> Vec:
    return (t * v[0], t * v[1])


def dot(a: Vec, b: Vec) -> Fraction:
    return a[0] * b[0] + a[1] * b[1]


def cross(a: Vec, b: Vec) -> Fraction:
    return a[0] * b[1] - a[1] * b[0]


def neg(v: Vec) -> Vec:
    return (-v[0], -v[1])


def perp_left(v: Vec) -> Vec:
    """Rotate v by +90 degrees (counterclockwise)."""
    return (-v[1], v[0])


def dist2(a: Point, b: Point) -> Fraction:
    dx = a[0] - b[0]
    dy = a[1] - b[1]
    return dx * dx + dy * dy


def norm2(v: Vec) -> Fraction:
    return v[0] * v[0] + v[1] * v[1]


def lerp(a: Point, b: Point, t: Fraction) -> Point:
    return (a[0] + t * (b[0] - a[0]), a[1] + t * (b[1] - a[1]))


def orient(a: Point, b: Point, c: Point) -> int:
    """Sign of the signed area of triangle abc: +1 = counterclockwise."""
    v = cross(sub(b, a), sub(c, a))
    return (v > 0) - (v < 0)


def sign(q: Fraction) -> int:
    return (q > 0) - (q < 0)


# ---------------------------------------------------------------------------
# angular order of direction vectors (exact atan2 ordering)

def angle_key(v: Vec):
    """Sort key ordering nonzero vectors counterclockwise starting at +x axis.

    Returns a tuple usable with sorted(); equal directions (positive multiples)
    compare equal.  Exact: half-plane index, then slope comparison via cross
    product encoded as a Fraction slope surrogate.
    """
    x, y = v
    if x == 0 and y == 0:
        raise ValueError("zero vector has no direction")
    if y > 0 or (y == 0 and x > 0):
        half = 0
    else:
        half = 1
    # Within a half-turn starting at +x (inclusive), order by decreasing x/y...
    # use the exact tangent-style surrogate: compare by cross product means
    # order by angle; a monotone rational function of the angle inside each
    # half is  −x/y  for y≠0; handle the y=0 start of each half first.
    if y == 0:
        return (half, 0, Fraction(0))
    return (half, 1, Fraction(-x, y) if half == 0 else Fraction(-x, y))


def same_direction(a: Vec, b: Vec) -> bool:
    return cross(a, b) == 0 and dot(a, b) > 0


def opposite_direction(a: Vec, b: Vec) -> bool:
    return cross(a, b) == 0 and dot(a, b) < 0


def ccw_between(a: Vec, x: Vec, b: Vec) -> bool:
    """True if direction x lies strictly inside the CCW sweep from a to b.

    All vectors nonzero; if a and b are the same direction the sector is the
    full turn and every direction not equal to them counts.
    """
    ca_x = cross(a, x)
    cx_b = cross(x, b)
    ca_b = cross(a, b)
    if same_direction(a, b):
        return not same_direction(a, x)
    if ca_b > 0 or (ca_b == 0 and dot(a, b) < 0):
        # sweep smaller than or equal to half turn
        if ca_b == 0:  # exactly half turn
            return ca_x > 0
        return ca_x > 0 and cx_b > 0
    # reflex sweep
    return ca_x > 0 or cx_b > 0


# ---------------------------------------------------------------------------
# segment intersections

SEG_DISJOINT = "disjoint"
SEG_POINT = "point"
SEG_OVERLAP = "overlap"


def segment_intersection(a: Point, b: Point, c: Point, d: Point):
    """Classify the intersection of closed segments ab and cd.

    Returns (SEG_DISJOINT, None) | (SEG_POINT, (point, t_ab, t_cd)) |
    (SEG_OVERLAP, None).  Parameters are exact Fractions in [0,1].
    """
    r = sub(b, a)
    s = sub(d, c)
    denom = cross(r, s)
    qp = sub(c, a)
    if denom == 0:
        if cross(qp, r) != 0:
            return (SEG_DISJOINT, None)
        # collinear: project on r
        rr = norm2(r)
        if rr == 0:
            # ab degenerate
            if norm2(s) == 0:
                return (SEG_POINT, (a, ZERO, ZERO)) if a == c else (SEG_DISJOINT, None)
            t = dot(sub(a, c), s) / norm2(s)
            if 0 <= t <= 1:
                return (SEG_POINT, (a, ZERO, t))
            return (SEG_DISJOINT, None)
        t0 = dot(qp, r) / rr
        t1 = t0 + dot(s, r) / rr
        lo, hi = min(t0, t1), max(t0, t1)
        if hi < 0 or lo > 1:
            return (SEG_DISJOINT, None)
        if hi == 0:
            return (SEG_POINT, (a, ZERO, t_param_on(c, d, a)))
        if lo == 1:
            return (SEG_POINT, (b, ONE, t_param_on(c, d, b)))
        return (SEG_OVERLAP, None)
    t = cross(qp, s) / denom
    u = cross(qp, r) / denom
    if 0 <= t <= 1 and 0 <= u <= 1:
        p = lerp(a, b, t)
        return (SEG_POINT, (p, t, u))
    return (SEG_DISJOINT, None)


def t_param_on(a: Point, b: Point, p: Point) -> Fraction:
    """Parameter of p on segment ab (p assumed collinear with ab)."""
    r = sub(b, a)
    rr = norm2(r)
    if rr == 0:
        return ZERO
    return dot(sub(p, a), r) / rr


def point_on_segment(a: Point, b: Point, p: Point) -> bool:
    if orient(a, b, p) != 0:
        return False
    t = t_param_on(a, b, p)
    return 0 <= t <= 1


def point_segment_dist2(p: Point, a: Point, b: Point) -> Fraction:
    r = sub(b, a)
    rr = norm2(r)
    if rr == 0:
        return dist2(p, a)
    t = dot(sub(p, a), r) / rr
    if t < 0:
        t = ZERO
    elif t > 1:
        t = ONE
    return dist2(p, lerp(a, b, t))


def segment_segment_dist2(a: Point, b: Point, c: Point, d: Point) -> Fraction:
    kind, _ = segment_intersection(a, b, c, d)
    if kind != SEG_DISJOINT:
        return ZERO
    return min(
        point_segment_dist2(a, c, d),
        point_segment_dist2(b, c, d),
        point_segment_dist2(c, a, b),
        point_segment_dist2(d, a, b),
    )


# ---------------------------------------------------------------------------
# circles

def on_circle(p: Point, center: Point, r: Fraction) -> bool:
    return dist2(p, center) == r * r


def in_circle(p: Point, center: Point, r: Fraction) -> bool:
    return dist2(p, center) < r * r


def circle_tangent_dirs(p: Point, center: Point) -> Tuple[Vec, Vec]:
    """The two tangent directions of a circle at a point p on it:
    (counterclockwise, clockwise)."""
    radial = sub(p, center)
    ccw = perp_left(radial)
    return ccw, neg(ccw)


def segment_min_dist2_to_point(a: Point, b: Point, c: Point) -> Fraction:
    return point_segment_dist2(c, a, b)


def segment_avoids_circle(a: Point, b: Point, center: Point, r: Fraction) -> bool:
    """True if the closed segment never meets the circle |x-center| = r.

    Exact: the segment misses the circle iff either every point is strictly
    inside or the minimum distance to the center is strictly greater than r.
    """
    r2 = r * r
    da, db = dist2(a, center), dist2(b, center)
    if da < r2 and db < r2:
        return True  # chordal: convexity keeps it inside
    mind2 = point_segment_dist2(center, a, b)
    return mind2 > r2


# ---------------------------------------------------------------------------
# signs of a + b*sqrt(s)  (s >= 0 rational)

def sign_quad(a: Fraction, b: Fraction, s: Fraction) -> int:
    """Exact sign of a + b*sqrt(s) for rational a, b and s >= 0."""
    if s < 0:
        raise ValueError("sign_quad needs s >= 0")
    if s == 0 or b == 0:
        return sign(a)
    if a == 0:
        return sign(b)
    if a > 0 and b > 0:
        return 1
    if a < 0 and b < 0:
        return -1
    # opposite signs: compare a^2 with b^2 s
    lhs = a * a
    rhs = b * b * s
    if lhs == rhs:
        return 0
    if a > 0:  # b < 0
        return 1 if lhs > rhs else -1
    return -1 if lhs > rhs else 1


def isqrt_frac_bounds(q: Fraction) -> Tuple[Fraction, Fraction]:
    """Rational lower and upper bounds for sqrt(q), q >= 0, within a factor
    determined by integer sqrt of num*den (tight enough for clearances)."""
    if q < 0:
        raise ValueError("negative radicand")
    if q == 0:
        return (ZERO, ZERO)
    n, d = q.numerator, q.denominator
    root = isqrt(n * d)
    lo = Fraction(root, d)
    hi = Fraction(root + 1, d)
    return lo, hi


def inv_sqrt_approx(q: Fraction, scale_bits: int = 40) -> Fraction:
    """Rational approximation of 1/sqrt(q) with relative error < 2**(1-scale_bits)."""
    if q <= 0:
        raise ValueError("need positive q")
    n, d = q.numerator, q.denominator
    # 1/sqrt(n/d) = sqrt(d/n); scale to keep isqrt precise
    k = 1 << scale_bits
    val = isqrt((d * k * k) // n) if d * k * k >= n else 0
    if val == 0:
        # q very large; fall back to direct bound
        val = 1
    return Fraction(val, k)


def unit_normal_approx(v: Vec, scale_bits: int = 40) -> Vec:
    """Left unit normal of v, approximated rationally (|result| within
    2**(1-scale_bits) of 1).  Callers must re-verify geometry exactly."""
    n = perp_left(v)
    r = inv_sqrt_approx(norm2(n), scale_bits)
    return (n[0] * r, n[1] * r)


def unit_dir_approx(v: Vec, scale_bits: int = 40) -> Vec:
    r = inv_sqrt_approx(norm2(v), scale_bits)
    return (v[0] * r, v[1] * r)


# ---------------------------------------------------------------------------
# ray casting: point containment in a closed chain of segments and arcs
#
# An arc element is (circle_center, radius, start_point, end_point, ccw) with
# both endpoints exactly on the circle; ccw=True means the arc runs
# counterclockwise from start to end.  A chain is a list of elements
# ("seg", a, b) / ("arc", center, r, a, b, ccw); closure is the caller's
# responsibility and irrelevant for parity.


class DegenerateRay(Exception):
    pass


def _ray_hits_segment(p: Point, d: Vec, a: Point, b: Point) -> int:
    """Number of transverse crossings (0 or 1) of open ray p+t*d, t>0, with
    closed segment ab; raises DegenerateRay on touching configurations."""
    r = sub(b, a)
    denom = cross(d, r)
    ap = sub(a, p)
    if denom == 0:
        if cross(ap, d) == 0:
            # collinear with the ray line
            ta = dot(ap, d)
            tb = dot(sub(b, p), d)
            if ta > 0 or tb > 0:
                raise DegenerateRay
            return 0
        return 0
    t = cross(ap, r) / denom
    u = cross(ap, d) / denom
    if u == 0 or u == 1:
        if t > 0:
            raise DegenerateRay
        return 0
    if 0 < u < 1:
        if t == 0:
            raise DegenerateRay("point on chain")
        if t > 0:
            return 1
    return 0


def _point_in_ccw_arc(center: Point, va: Vec, vb: Vec, coefs: Tuple[Fraction, Fraction, Fraction, Fraction],
                      s: Fraction) -> Optional[bool]:
    """Is X (with X-center = (c0 + c1*sqrt(s), c2 + c3*sqrt(s))) strictly inside
    the CCW arc from direction va to vb?  Returns None when X sits exactly at an
    arc endpoint direction (degenerate)."""
    c0, c1, c2, c3 = coefs

    def cross_with(v: Vec) -> Tuple[Fraction, Fraction]:
        # cross(v, X-center) = v.x*(c2 + c3*sqrt) - v.y*(c0 + c1*sqrt)
        return (v[0] * c2 - v[1] * c0, v[0] * c3 - v[1] * c1)

    ax, axs = cross_with(va)
    sa = sign_quad(ax, axs, s)
    bx, bxs = cross_with(vb)
    sb = sign_quad(bx, bxs, s)
    if sa == 0 or sb == 0:
        # at an endpoint direction or its antipode: retry with another ray
        return None
    cab = cross(va, vb)
    if cab == 0 and dot(va, vb) > 0:
        # full-circle arc: everything except the endpoint direction counts
        return True
    if cab > 0 or (cab == 0 and dot(va, vb) < 0):
        # sweep <= half turn
        return sa > 0 and sb < 0
    return sa > 0 or sb < 0


def _ray_hits_arc(p: Point, d: Vec, center: Point, r: Fraction,
                  a: Point, b: Point, ccw: bool) -> int:
    """Transverse crossing count (0,1,2) of ray p+t*d (t>0) with the arc."""
    if not ccw:
        a, b = b, a
    va = sub(a, center)
    vb = sub(b, center)
    # Solve |p + t d - center|^2 = r^2
    pc = sub(p, center)
    A = norm2(d)
    B = 2 * dot(pc, d)
    C = norm2(pc) - r * r
    disc = B * B - 4 * A * C
    if disc < 0:
        return 0
    if disc == 0:
        raise DegenerateRay("ray tangent to circle")
    # roots t = (-B ± sqrt(disc)) / (2A); count roots with t > 0 and point in arc
    count = 0
    for pm in (1, -1):
        st = sign_quad(-B, Fraction(pm), disc)  # sign of -B ± sqrt(disc)
        if st == 0:
            raise DegenerateRay("ray through circle at t=0")
        if st < 0:
            continue
        # X - center = pc + t d,  t = (-B ± sqrt(disc)) / (2A)
        inv = Fraction(1, 2) / A
        t_rat = -B * inv
        t_irr = pm * inv  # coefficient of sqrt(disc)
        coefs = (
            pc[0] + t_rat * d[0],
            t_irr * d[0],
            pc[1] + t_rat * d[1],
            t_irr * d[1],
        )
        hit = _point_in_ccw_arc(center, va, vb, coefs, disc)
        if hit is None:
            raise DegenerateRay("ray through arc endpoint")
        if hit:
            count += 1
    return count


_RAY_DIRS: Sequence[Vec] = tuple(
    (Fraction(1), Fraction(k)) for k in (0, 1, -1, 2, -2, 3, -3, 5, -5, 7, -7, 11)
) + tuple(
    (Fraction(k), Fraction(1)) for k in (0, 1, -1, 3, -3)
)


def point_in_chain(p: Point, elements: Iterable[tuple]) -> bool:
    """Parity containment test against a closed chain of segments and arcs.

    Raises ValueError if p lies on the chain itself (callers test that first
    when it matters) or if no generic ray is found (practically impossible).
    """
    elems = list(elements)
    for d in _RAY_DIRS:
        try:
            total = 0
            for el in elems:
                if el[0] == "seg":
                    total += _ray_hits_segment(p, d, el[1], el[2])
                elif el[0] == "arc":
                    total += _ray_hits_arc(p, d, el[1], el[2], el[3], el[4], el[5])
                else:
                    raise ValueError(f"unknown chain element {el[0]!r}")
            return total % 2 == 1
        except DegenerateRay:
            continue
    raise ValueError("no generic ray direction found for containment test")


# ---------------------------------------------------------------------------
# clearance

def min_feature_separation2(points: Sequence[Point],
                            segments: Sequence[Tuple[Point, Point]],
                            adjacency: Optional[set] = None) -> Optional[Fraction]:
    """Smallest squared distance between non-incident features.

    `segments` are (a, b) pairs indexed by position; `adjacency` is a set of
    frozensets of segment indices that are allowed to touch (share vertices or
    cross) and are skipped.  Point-vs-segment pairs are skipped when the point
    equals one of the segment's endpoints.  Returns None when there is nothing
    to compare.
    """
    best: Optional[Fraction] = None

    def consider(v: Fraction):
        nonlocal best
        if v > 0 and (best is None or v < best):
            best = v

    n = len(segments)
    for i in range(n):
        a, b = segments[i]
        for j in range(i + 1, n):
            if adjacency and frozenset((i, j)) in adjacency:
                continue
            c, d = segments[j]
            if a in (c, d) or b in (c, d):
                continue
            kind, _ = segment_intersection(a, b, c, d)
            if kind != SEG_DISJOINT:
                continue
            consider(segment_segment_dist2(a, b, c, d))
    for p in points:
        for i in range(n):
            a, b = segments[i]
            if p == a or p == b:
                continue
            if point_on_segment(a, b, p):
                continue
            consider(point_segment_dist2(p, a, b))
    return best
