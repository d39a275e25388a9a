"""Scene text format: parsing, validation, canonical printing.

A scene lives in a round disk with `n` round holes.  The outer boundary is
always the circle of radius 10 about the origin; holes are given explicitly.
Grammar (one directive per line, `#` starts a comment):

    disk <n>
    hole (<x>,<y>) <r>                      # exactly n of these
    interval <label> <pt> <pt> ...          # open polyline, ends on boundary circles
    circle <label> <pt> <pt> <pt> ...       # closed polyline (closing edge implicit)
    oriented_circle <label> <pt> ...        # closed + carries its traversal orientation
    front <label> [cusp@<i>]* side=<left|right> <pt> ...   # closed co-oriented wave front

Points are `(<rational>,<rational>)` with no internal spaces; rationals are
`p/q` or exact decimals.  Cusp indices are 0-based vertex indices; `side=`
names the co-orientation side of the first segment and flips at every cusp.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Optional, Tuple

from .errors import SceneSyntaxError, SceneValidationError
from .geometry import (
    Point,
    cross,
    dist2,
    dot,
    fmt_frac,
    frac,
    in_circle,
    on_circle,
    segment_avoids_circle,
    sub,
)

OUTER_CENTER: Point = (Fraction(0), Fraction(0))
OUTER_RADIUS: Fraction = Fraction(10)

DIVIDE_KINDS = ("interval", "circle", "oriented_circle")
CURVE_KINDS = DIVIDE_KINDS + ("front",)


@dataclass(frozen=True)
class Hole:
    center: Point
    radius: Fraction


@dataclass(frozen=True)
class CurveSpec:
    kind: str
    label: str
    vertices: Tuple[Point, ...]
    cusps: Tuple[int, ...] = ()
    coorientation_side: Optional[str] = None

    @property
    def closed(self) -> bool:
        return self.kind != "interval"

    @property
    def is_divide(self) -> bool:
        return self.kind in DIVIDE_KINDS

    def segment_count(self) -> int:
        n = len(self.vertices)
        return n if self.closed else n - 1

    def segment(self, i: int) -> Tuple[Point, Point]:
        n = len(self.vertices)
        if self.closed:
            return self.vertices[i % n], self.vertices[(i + 1) % n]
        return self.vertices[i], self.vertices[i + 1]

    def side_of_segment(self, i: int) -> str:
        """Co-orientation side (left/right of traversal) on segment i (fronts)."""
        if self.kind != "front":
            raise ValueError("co-orientation side only defined for fronts")
        flips = sum(1 for c in self.cusps if 0 < c <= i)
        side = self.coorientation_side
        if flips % 2:
            side = "left" if side == "right" else "right"
        return side


@dataclass(frozen=True)
class Scene:
    n_holes: int
    holes: Tuple[Hole, ...]
    components: Tuple[CurveSpec, ...] = field(default_factory=tuple)

    def boundary_circles(self):
        """All boundary circles as (name, center, radius); outer first."""
        out = [("outer", OUTER_CENTER, OUTER_RADIUS)]
        for i, h in enumerate(self.holes):
            out.append((f"hole{i}", h.center, h.radius))
        return out

    def divide_components(self) -> Tuple[CurveSpec, ...]:
        return tuple(c for c in self.components if c.is_divide)

    def front_components(self) -> Tuple[CurveSpec, ...]:
        return tuple(c for c in self.components if c.kind == "front")


# ---------------------------------------------------------------------------
# parsing


def _parse_point(tok: str, line_no: int, col: int) -> Point:
    if not (tok.startswith("(") and tok.endswith(")")):
        raise SceneSyntaxError(f"expected point '(x,y)', got {tok!r}", line_no, col)
    body = tok[1:-1]
    parts = body.split(",")
    if len(parts) != 2:
        raise SceneSyntaxError(f"expected two coordinates in {tok!r}", line_no, col)
    try:
        return (frac(parts[0]), frac(parts[1]))
    except (ValueError, ZeroDivisionError):
        raise SceneSyntaxError(f"bad rational in {tok!r}", line_no, col) from None


def parse_scene(text: str) -> Scene:
    """Parse and validate scene text.  Raises SceneSyntaxError for malformed
    text (with line/column) and SceneValidationError for illegal content."""
    n_holes: Optional[int] = None
    holes: list[Hole] = []
    components: list[CurveSpec] = []

    for line_no, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].rstrip()
        if not line.strip():
            continue
        toks = line.split()
        cols = []
        pos = 0
        for t in toks:
            pos = line.index(t, pos)
            cols.append(pos + 1)
            pos += len(t)
        head = toks[0]

        if head == "disk":
            if n_holes is not None:
                raise SceneSyntaxError("duplicate 'disk' directive", line_no, cols[0])
            if len(toks) != 2:
                raise SceneSyntaxError("usage: disk <n>", line_no, cols[0])
            try:
                n_holes = int(toks[1])
            except ValueError:
                raise SceneSyntaxError(f"bad hole count {toks[1]!r}", line_no, cols[1]) from None
            if n_holes < 0:
                raise SceneSyntaxError("hole count must be >= 0", line_no, cols[1])
            continue

        if n_holes is None:
            raise SceneSyntaxError("first directive must be 'disk <n>'", line_no, cols[0])

        if head == "hole":
            if len(toks) != 3:
                raise SceneSyntaxError("usage: hole (<x>,<y>) <r>", line_no, cols[0])
            center = _parse_point(toks[1], line_no, cols[1])
            try:
                radius = frac(toks[2])
            except (ValueError, ZeroDivisionError):
                raise SceneSyntaxError(f"bad radius {toks[2]!r}", line_no, cols[2]) from None
            if radius <= 0:
                raise SceneSyntaxError("hole radius must be positive", line_no, cols[2])
            holes.append(Hole(center, radius))
            continue

        if head in ("interval", "circle", "oriented_circle"):
            if len(toks) < 2:
                raise SceneSyntaxError(f"usage: {head} <label> <pt>...", line_no, cols[0])
            label = toks[1]
            pts = [_parse_point(t, line_no, c) for t, c in zip(toks[2:], cols[2:])]
            minimum = 2 if head == "interval" else 3
            if len(pts) < minimum:
                raise SceneSyntaxError(f"{head} needs at least {minimum} points", line_no, cols[0])
            components.append(CurveSpec(head, label, tuple(pts)))
            continue

        if head == "front":
            if len(toks) < 2:
                raise SceneSyntaxError("usage: front <label> [cusp@<i>]* side=<left|right> <pt>...", line_no, cols[0])
            label = toks[1]
            idx = 2
            cusps: list[int] = []
            while idx < len(toks) and toks[idx].startswith("cusp@"):
                try:
                    cusps.append(int(toks[idx][5:]))
                except ValueError:
                    raise SceneSyntaxError(f"bad cusp index {toks[idx]!r}", line_no, cols[idx]) from None
                idx += 1
            if idx >= len(toks) or not toks[idx].startswith("side="):
                raise SceneSyntaxError("front needs side=<left|right> after cusps", line_no,
                                       cols[min(idx, len(cols) - 1)])
            side = toks[idx][5:]
            if side not in ("left", "right"):
                raise SceneSyntaxError(f"side must be left or right, got {side!r}", line_no, cols[idx])
            idx += 1
            pts = [_parse_point(t, line_no, c) for t, c in zip(toks[idx:], cols[idx:])]
            if len(pts) < 3:
                raise SceneSyntaxError("front needs at least 3 points", line_no, cols[0])
            components.append(CurveSpec("front", label, tuple(pts), tuple(sorted(cusps)), side))
            continue

        raise SceneSyntaxError(f"unknown directive {head!r}", line_no, cols[0])

    if n_holes is None:
        raise SceneSyntaxError("missing 'disk <n>' directive", 1, 1)
    scene = Scene(n_holes, tuple(holes), tuple(components))
    validate_scene(scene)
    return scene


# ---------------------------------------------------------------------------
# validation


def validate_scene(scene: Scene) -> None:
    if len(scene.holes) != scene.n_holes:
        raise SceneValidationError(
            f"disk declares {scene.n_holes} holes but {len(scene.holes)} given")

    # holes strictly inside the outer circle and pairwise disjoint
    for i, h in enumerate(scene.holes):
        lim = OUTER_RADIUS - h.radius
        if dist2(h.center, OUTER_CENTER) >= lim * lim or h.radius >= OUTER_RADIUS:
            raise SceneValidationError(f"hole {i} overlaps the outer boundary")
        for j in range(i):
            g = scene.holes[j]
            s = h.radius + g.radius
            if dist2(h.center, g.center) <= s * s:
                raise SceneValidationError(f"holes {j} and {i} overlap")

    labels = [c.label for c in scene.components]
    for lab in labels:
        if labels.count(lab) > 1:
            raise SceneValidationError(f"duplicate label {lab!r}")

    circles = scene.boundary_circles()

    def inside_domain(p: Point) -> bool:
        if not in_circle(p, OUTER_CENTER, OUTER_RADIUS):
            return False
        return all(dist2(p, c) > r * r for _, c, r in circles[1:])

    for comp in scene.components:
        vs = comp.vertices
        nseg = comp.segment_count()
        for i in range(nseg):
            a, b = comp.segment(i)
            if a == b:
                raise SceneValidationError(f"{comp.label}: zero-length segment at index {i}")

        # corner sanity: no exact reversals except at marked cusps
        corner_range = range(len(vs)) if comp.closed else range(1, len(vs) - 1)
        for i in corner_range:
            din = sub(vs[i], vs[i - 1]) if (i > 0 or comp.closed) else None
            if din is None:
                continue
            dout = sub(vs[(i + 1) % len(vs)], vs[i])
            is_cusp = comp.kind == "front" and i in comp.cusps
            if is_cusp:
                if cross(din, dout) == 0:
                    raise SceneValidationError(
                        f"{comp.label}: cusp at vertex {i} has exactly anti-parallel branches")
                if dot(din, dout) >= 0:
                    raise SceneValidationError(
                        f"{comp.label}: cusp at vertex {i} is not a reversal")
            else:
                if cross(din, dout) == 0 and dot(din, dout) < 0:
                    raise SceneValidationError(
                        f"{comp.label}: unmarked reversal corner at vertex {i}")

        if comp.kind == "front":
            for c in comp.cusps:
                if not (0 <= c < len(vs)):
                    raise SceneValidationError(f"{comp.label}: cusp index {c} out of range")
            if len(set(comp.cusps)) != len(comp.cusps):
                raise SceneValidationError(f"{comp.label}: repeated cusp index")
            if len(comp.cusps) % 2:
                raise SceneValidationError(
                    f"{comp.label}: odd number of cusps cannot close a co-oriented front")

        # endpoint / containment rules
        if comp.kind == "interval":
            interior = vs[1:-1]
            for endpoint, nxt in ((vs[0], vs[1]), (vs[-1], vs[-2])):
                host = None
                for name, c, r in circles:
                    if on_circle(endpoint, c, r):
                        host = (name, c, r)
                        break
                if host is None:
                    raise SceneValidationError(
                        f"{comp.label}: interval endpoint {_p(endpoint)} not on a boundary circle")
                name, c, r = host
                radial_in = sub(c, endpoint) if name == "outer" else sub(endpoint, c)
                if dot(sub(nxt, endpoint), radial_in) <= 0:
                    raise SceneValidationError(
                        f"{comp.label}: interval leaves {name} tangentially or outward at {_p(endpoint)}")
        else:
            interior = vs

        for p in interior:
            if not inside_domain(p):
                raise SceneValidationError(
                    f"{comp.label}: vertex {_p(p)} is not strictly inside the domain")

        # segments must avoid every boundary circle except at declared endpoints
        for i in range(nseg):
            a, b = comp.segment(i)
            for name, c, r in circles:
                exempt = comp.kind == "interval" and (
                    (i == 0 and on_circle(a, c, r)) or (i == nseg - 1 and on_circle(b, c, r)))
                if exempt:
                    # the non-endpoint part must stay off the circle
                    a_on = on_circle(a, c, r)
                    b_on = on_circle(b, c, r)
                    if a_on and b_on:
                        # a chord of the outer circle stays inside; a chord of a
                        # hole circle would cross the hole
                        ok = name == "outer"
                    elif name == "outer":
                        ok = in_circle(b if a_on else a, c, r)
                    else:
                        other = b if a_on else a
                        ok = dist2(other, c) > r * r and segment_near_misses_only_at(a, b, c, r)
                    if not ok:
                        raise SceneValidationError(
                            f"{comp.label}: segment {i} re-enters boundary circle {name}")
                    continue
                if not segment_avoids_circle(a, b, c, r):
                    raise SceneValidationError(
                        f"{comp.label}: segment {i} touches boundary circle {name}")


def segment_near_misses_only_at(a: Point, b: Point, center: Point, r: Fraction) -> bool:
    """For a segment with exactly one endpoint on the circle: True if the rest
    of the segment stays strictly off the circle."""
    from .geometry import norm2

    # the closest approach to the center must be at the on-circle endpoint only
    end_on = a if on_circle(a, center, r) else b
    other = b if end_on is a else a
    # sample-free exact check: the quadratic |a + t(b-a) - center|^2 - r^2 has a
    # root at the endpoint; it must have no second root in (0,1].
    d = sub(b, a)
    f = sub(a, center)
    A = norm2(d)
    B = 2 * dot(f, d)
    C = norm2(f) - r * r
    # roots t1*t2 = C/A, t1+t2 = -B/A; one root is t0 in {0,1}
    t0 = Fraction(0) if end_on is a else Fraction(1)
    # other root:
    t1 = -B / A - t0
    return not (0 <= t1 <= 1 and t1 != t0)


def _p(p: Point) -> str:
    return f"({fmt_frac(p[0])},{fmt_frac(p[1])})"


# ---------------------------------------------------------------------------
# printing


def print_scene(scene: Scene) -> str:
    lines = [f"disk {scene.n_holes}"]
    for h in scene.holes:
        lines.append(f"hole {_p(h.center)} {fmt_frac(h.radius)}")
    for comp in scene.components:
        pts = " ".join(_p(v) for v in comp.vertices)
        if comp.kind == "front":
            cusps = "".join(f" cusp@{c}" for c in comp.cusps)
            lines.append(f"front {comp.label}{cusps} side={comp.coorientation_side} {pts}")
        else:
            lines.append(f"{comp.kind} {comp.label} {pts}")
    return "\n".join(lines) + "\n"


def render_svg(scene: Scene, **kwargs) -> str:
    """Deterministic SVG rendering; see divide_forge.render."""
    from .render import render_svg as _render

    return _render(scene, **kwargs)
