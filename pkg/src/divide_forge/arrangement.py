"""Planar arrangement of scene curves and boundary circles.

The arrangement subdivides every curve and boundary circle at intersection
points, classifies every vertex, builds the rotation system (cyclic CCW order
of outgoing half-edges at each vertex), extracts face walks with the region on
the left of each half-edge, and nests walks into faces.  All predicates are
exact; degenerate pictures raise instead of being repaired.

Conventions fixed here and relied on downstream:
  * face_next(h) = sigma(twin(h)): following it keeps a face on the LEFT, so
    the rim of a bounded face is traversed counterclockwise.
  * every connected cluster of the arrangement has exactly one "outer" walk
    (the walk that faces away from the cluster); every other walk bounds one
    face, whose interior holes are the outer walks of directly nested
    clusters.
  * vertex ids are assigned in lexicographic coordinate order.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Dict, List, Optional, Sequence, Tuple

from .errors import (
    BoundaryContactError,
    CuspOnIntersection,
    ForbiddenCoincidence,
    TangencyError,
    TriplePointError,
)
from .geometry import (
    Point,
    Vec,
    angle_key,
    ccw_between,
    circle_tangent_dirs,
    fmt_frac,
    neg,
    on_circle,
    perp_left,
    point_in_chain,
    same_direction,
    sub,
    SEG_DISJOINT,
    SEG_OVERLAP,
    SEG_POINT,
    segment_intersection,
)
from .scene_io import OUTER_CENTER, OUTER_RADIUS, CurveSpec, Scene


@dataclass
class Vertex:
    id: int
    point: Point
    kind: str = "anchor"  # double_point | cusp | boundary_endpoint | anchor
    divide_only: bool = False
    out: List[int] = field(default_factory=list)  # outgoing half ids, CCW


@dataclass
class Edge:
    id: int
    component: int
    support: tuple  # ("chain", (pts...)) or ("arc", center, r, a, b) CCW a->b
    halves: Tuple[int, int] = (-1, -1)
    front_side: Optional[str] = None  # co-orientation side for front edges

    @property
    def is_arc(self) -> bool:
        return self.support[0] == "arc"

    def chain_points(self) -> Tuple[Point, ...]:
        assert self.support[0] == "chain"
        return self.support[1]


@dataclass
class HalfEdge:
    id: int
    edge: int
    origin: int
    target: int
    direction: Vec  # initial direction leaving origin
    twin: int = -1


@dataclass
class Face:
    id: int
    outer_walk: int
    inner_walks: Tuple[int, ...] = ()
    hole_interior: bool = False


class Component:
    """A scene-level component of the arrangement: boundary circle or curve."""

    def __init__(self, cid: int, kind: str, *, name: str = "", center=None,
                 radius=None, curve: Optional[CurveSpec] = None):
        self.id = cid
        self.kind = kind  # "boundary" or a curve kind
        self.name = name or (curve.label if curve else "")
        self.center = center
        self.radius = radius
        self.curve = curve

    @property
    def is_boundary(self) -> bool:
        return self.kind == "boundary"

    @property
    def is_divide(self) -> bool:
        return self.curve is not None and self.curve.is_divide


WEST: Vec = (Fraction(-1), Fraction(0))


class Arrangement:
    def __init__(self, scene: Scene, include_fronts: bool):
        self.scene = scene
        self.include_fronts = include_fronts
        self.components: List[Component] = []
        self.vertices: List[Vertex] = []
        self.edges: List[Edge] = []
        self.halves: List[HalfEdge] = []
        self.walks: List[Tuple[int, ...]] = []
        self.walk_of_half: Dict[int, int] = {}
        self.cluster_of_vertex: List[int] = []
        self.outer_walk_of_cluster: Dict[int, int] = {}
        self.faces: List[Face] = []
        self._vid_by_point: Dict[Point, int] = {}

    # -- navigation helpers -------------------------------------------------

    def twin(self, h: int) -> int:
        return self.halves[h].twin

    def sigma(self, h: int) -> int:
        """Next outgoing half-edge CCW at the origin of h."""
        out = self.vertices[self.halves[h].origin].out
        i = out.index(h)
        return out[(i + 1) % len(out)]

    def sigma_inv(self, h: int) -> int:
        out = self.vertices[self.halves[h].origin].out
        i = out.index(h)
        return out[(i - 1) % len(out)]

    def face_next(self, h: int) -> int:
        """Continue the face walk keeping the face on the left: rotate the
        reversed half-edge clockwise by one at the target vertex."""
        return self.sigma_inv(self.twin(h))

    def half_chain(self, h: int) -> tuple:
        """Geometric support of half-edge h, oriented along it, as chain
        elements for point_in_chain."""
        he = self.halves[h]
        e = self.edges[he.edge]
        if e.is_arc:
            _, c, r, a, b = e.support
            if h == e.halves[0]:
                return (("arc", c, r, a, b, True),)
            return (("arc", c, r, b, a, False),)
        pts = self.half_points(h)
        return tuple(("seg", pts[i], pts[i + 1]) for i in range(len(pts) - 1))

    def walk_chain(self, w: int) -> list:
        out = []
        for h in self.walks[w]:
            out.extend(self.half_chain(h))
        return out

    def half_points(self, h: int) -> Tuple[Point, ...]:
        """Polyline vertices along half-edge h (endpoints only for arcs)."""
        he = self.halves[h]
        e = self.edges[he.edge]
        if e.is_arc:
            return (self.vertices[he.origin].point, self.vertices[he.target].point)
        pts = e.chain_points()
        if h != e.halves[0]:
            pts = tuple(reversed(pts))
        return pts

    def component_of_half(self, h: int) -> Component:
        return self.components[self.edges[self.halves[h].edge].component]

    def vertex_at(self, p: Point) -> Optional[Vertex]:
        i = self._vid_by_point.get(p)
        return self.vertices[i] if i is not None else None

    def double_points(self, divide_only: bool = False) -> List[Vertex]:
        return [v for v in self.vertices
                if v.kind == "double_point" and (v.divide_only or not divide_only)]


# ---------------------------------------------------------------------------
# construction


def build_arrangement(scene: Scene, include_fronts: bool = True) -> Arrangement:
    arr = Arrangement(scene, include_fronts)

    arr.components.append(Component(0, "boundary", name="outer",
                                    center=OUTER_CENTER, radius=OUTER_RADIUS))
    for i, h in enumerate(scene.holes):
        arr.components.append(Component(len(arr.components), "boundary",
                                        name=f"hole{i}", center=h.center,
                                        radius=h.radius))
    curve_comps: List[Component] = []
    for c in scene.components:
        if c.kind == "front" and not include_fronts:
            continue
        comp = Component(len(arr.components), c.kind, curve=c)
        arr.components.append(comp)
        curve_comps.append(comp)

    # ---- intersection events between curve segments
    seg_table = []
    for comp in curve_comps:
        for i in range(comp.curve.segment_count()):
            a, b = comp.curve.segment(i)
            seg_table.append((comp.id, i, a, b))

    events: Dict[Tuple[int, int], set] = {}

    def add_event(comp_id: int, seg_idx: int, t: Fraction):
        events.setdefault((comp_id, seg_idx), set()).add(t)

    for i in range(len(seg_table)):
        ci, si, ai, bi = seg_table[i]
        for j in range(i + 1, len(seg_table)):
            cj, sj, aj, bj = seg_table[j]
            kind, payload = segment_intersection(ai, bi, aj, bj)
            if ci == cj:
                n = arr.components[ci].curve.segment_count()
                closed = arr.components[ci].curve.closed
                d = abs(si - sj)
                if d == 1 or (closed and d == n - 1):
                    # adjacent segments share one endpoint; anything more is
                    # a fold-back along the curve
                    if kind == SEG_OVERLAP:
                        raise TangencyError(
                            ai, f"collinear overlap between adjacent segments "
                                f"{si} and {sj} of {arr.components[ci].name}")
                    continue
            if kind == SEG_DISJOINT:
                continue
            if kind == SEG_OVERLAP:
                raise TangencyError(
                    ai, f"collinear overlap between {arr.components[ci].name} "
                        f"segment {si} and {arr.components[cj].name} segment {sj}")
            _, ti, tj = payload
            add_event(ci, si, ti)
            add_event(cj, sj, tj)

    # ---- breaks along each curve
    breaks: Dict[int, List[Tuple[int, Fraction]]] = {}
    for comp in curve_comps:
        spec = comp.curve
        nseg = spec.segment_count()
        got: set = set()

        def put(seg: int, t: Fraction):
            if t == 1 and (spec.closed or seg < nseg - 1):
                seg, t = (seg + 1) % nseg, Fraction(0)
            got.add((seg, t))

        for (cid, seg), ts in events.items():
            if cid != comp.id:
                continue
            for t in ts:
                put(seg, t)
        if spec.kind == "front":
            for cusp in spec.cusps:
                got.add((cusp % nseg, Fraction(0)))
        if not spec.closed:
            got.add((0, Fraction(0)))
            got.add((nseg - 1, Fraction(1)))
        if not got:
            got.add((0, Fraction(0)))
        breaks[comp.id] = sorted(got)

    def break_point(comp: Component, seg: int, t: Fraction) -> Point:
        a, b = comp.curve.segment(seg)
        return (a[0] + t * (b[0] - a[0]), a[1] + t * (b[1] - a[1]))

    # ---- vertex points
    vertex_points: set = set()
    for comp in curve_comps:
        for seg, t in breaks[comp.id]:
            vertex_points.add(break_point(comp, seg, t))

    endpoint_hosts: Dict[Point, int] = {}
    circle_breaks: Dict[int, List[Point]] = {
        c.id: [] for c in arr.components if c.is_boundary}
    for comp in curve_comps:
        if comp.curve.kind != "interval":
            continue
        for p in (comp.curve.vertices[0], comp.curve.vertices[-1]):
            host = None
            for bc in arr.components:
                if bc.is_boundary and on_circle(p, bc.center, bc.radius):
                    host = bc
                    break
            assert host is not None, "validated scenes put interval ends on circles"
            if p not in circle_breaks[host.id]:
                circle_breaks[host.id].append(p)
            endpoint_hosts[p] = host.id

    for bc in arr.components:
        if not bc.is_boundary:
            continue
        if not circle_breaks[bc.id]:
            circle_breaks[bc.id].append((bc.center[0] - bc.radius, bc.center[1]))
        circle_breaks[bc.id].sort(key=lambda p: angle_key(sub(p, bc.center)))
        vertex_points.update(circle_breaks[bc.id])

    arr.vertices = [Vertex(i, p) for i, p in enumerate(sorted(vertex_points))]
    arr._vid_by_point = {v.point: v.id for v in arr.vertices}

    # ---- edges and half-edges
    def new_edge(component: int, support: tuple, front_side=None) -> Edge:
        e = Edge(len(arr.edges), component, support, front_side=front_side)
        arr.edges.append(e)
        return e

    def new_halves(e: Edge, a_pt: Point, b_pt: Point, dir_fwd: Vec, dir_rev: Vec):
        va = arr._vid_by_point[a_pt]
        vb = arr._vid_by_point[b_pt]
        h0 = HalfEdge(len(arr.halves), e.id, va, vb, dir_fwd)
        arr.halves.append(h0)
        h1 = HalfEdge(len(arr.halves), e.id, vb, va, dir_rev)
        arr.halves.append(h1)
        h0.twin, h1.twin = h1.id, h0.id
        e.halves = (h0.id, h1.id)

    # passages[vid] = list of (comp_id, back_ray, fwd_ray, in_edge, out_edge);
    # rays/edges are None on the missing side of an interval endpoint
    passages: Dict[int, list] = {v.id: [] for v in arr.vertices}

    for comp in curve_comps:
        spec = comp.curve
        nseg = spec.segment_count()
        bl = breaks[comp.id]

        def chain(b0, b1) -> Tuple[Point, ...]:
            s0, t0 = b0
            s1, t1 = b1
            pts = [break_point(comp, s0, t0)]
            if (s1, t1) > (s0, t0):
                seg = s0
                while seg < s1:
                    corner = spec.vertices[(seg + 1) % len(spec.vertices)]
                    if pts[-1] != corner:
                        pts.append(corner)
                    seg += 1
            else:  # wraps around the closed curve, possibly a full loop
                seg = s0
                while True:
                    corner = spec.vertices[(seg + 1) % nseg]
                    if pts[-1] != corner:
                        pts.append(corner)
                    seg = (seg + 1) % nseg
                    if seg == s1:
                        break
            end_pt = break_point(comp, s1, t1)
            if pts[-1] != end_pt:
                pts.append(end_pt)
            return tuple(pts)

        pairs = []
        if spec.closed:
            for k in range(len(bl)):
                pairs.append((bl[k], bl[(k + 1) % len(bl)]))
        else:
            for k in range(len(bl) - 1):
                pairs.append((bl[k], bl[k + 1]))

        edge_ids = []
        for b0, b1 in pairs:
            pts = chain(b0, b1)
            assert len(pts) >= 2
            side = spec.side_of_segment(b0[0]) if spec.kind == "front" else None
            e = new_edge(comp.id, ("chain", pts), front_side=side)
            new_halves(e, pts[0], pts[-1], sub(pts[1], pts[0]), sub(pts[-2], pts[-1]))
            edge_ids.append(e.id)

        for k, (seg, t) in enumerate(bl):
            p = break_point(comp, seg, t)
            vid = arr._vid_by_point[p]
            if spec.closed:
                in_e = arr.edges[edge_ids[(k - 1) % len(edge_ids)]]
                out_e = arr.edges[edge_ids[k % len(edge_ids)]]
            else:
                in_e = arr.edges[edge_ids[k - 1]] if k > 0 else None
                out_e = arr.edges[edge_ids[k]] if k < len(edge_ids) else None
            back = arr.halves[in_e.halves[1]].direction if in_e else None
            fwd = arr.halves[out_e.halves[0]].direction if out_e else None
            passages[vid].append((comp.id, back, fwd, in_e, out_e))

    for bc in arr.components:
        if not bc.is_boundary:
            continue
        pts = circle_breaks[bc.id]
        n = len(pts)
        for k in range(n):
            a = pts[k]
            b = pts[(k + 1) % n]
            e = new_edge(bc.id, ("arc", bc.center, bc.radius, a, b))
            ccw_a, _ = circle_tangent_dirs(a, bc.center)
            _, cw_b = circle_tangent_dirs(b, bc.center)
            new_halves(e, a, b, ccw_a, cw_b)

    # ---- rotation system
    for h in arr.halves:
        arr.vertices[h.origin].out.append(h.id)
    for v in arr.vertices:
        v.out.sort(key=lambda hid: angle_key(arr.halves[hid].direction))
        if len(v.out) > 1:
            for i in range(len(v.out)):
                d1 = arr.halves[v.out[i]].direction
                d2 = arr.halves[v.out[(i + 1) % len(v.out)]].direction
                if same_direction(d1, d2):
                    raise TangencyError(v.point)

    _classify_vertices(arr, passages, endpoint_hosts)

    # ---- face walks
    seen = set()
    for h in arr.halves:
        if h.id in seen:
            continue
        walk = []
        cur = h.id
        while True:
            walk.append(cur)
            seen.add(cur)
            cur = arr.face_next(cur)
            if cur == h.id:
                break
            assert cur not in seen, "face traversal is not a permutation"
        wid = len(arr.walks)
        arr.walks.append(tuple(walk))
        for hid in walk:
            arr.walk_of_half[hid] = wid

    # ---- clusters (connected components of the graph)
    parent = list(range(len(arr.vertices)))

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for e in arr.edges:
        a = find(arr.halves[e.halves[0]].origin)
        b = find(arr.halves[e.halves[0]].target)
        if a != b:
            parent[max(a, b)] = min(a, b)
    arr.cluster_of_vertex = [find(v.id) for v in arr.vertices]
    clusters = sorted(set(arr.cluster_of_vertex))

    if len(arr.vertices) - len(arr.edges) + len(arr.walks) != 2 * len(clusters):
        raise AssertionError("Euler relation violated: arrangement inconsistent")

    for cl in clusters:
        arr.outer_walk_of_cluster[cl] = _outer_walk(arr, cl)

    _assemble_faces(arr, clusters)
    return arr


def _fmt_point(p: Point) -> str:
    return f"({fmt_frac(p[0])},{fmt_frac(p[1])})"


def _classify_vertices(arr: Arrangement, passages: Dict[int, list],
                       endpoint_hosts: Dict[Point, int]) -> None:
    cusp_points = set()
    for comp in arr.components:
        if comp.curve is not None and comp.curve.kind == "front":
            for c in comp.curve.cusps:
                cusp_points.add(comp.curve.vertices[c % len(comp.curve.vertices)])

    for v in arr.vertices:
        plist = passages[v.id]
        full = [p for p in plist if p[1] is not None and p[2] is not None]
        halfp = [p for p in plist if (p[1] is None) != (p[2] is None)]
        on_boundary = any(arr.edges[arr.halves[h].edge].is_arc for h in v.out)

        if on_boundary:
            if v.point in endpoint_hosts:
                if len(halfp) != 1 or full:
                    raise BoundaryContactError(
                        v.point, "multiple strands meet the boundary here")
                v.kind = "boundary_endpoint"
            else:
                if plist:
                    raise BoundaryContactError(v.point)
                v.kind = "anchor"
            continue

        if len(full) >= 3:
            raise TriplePointError(
                v.point, [arr.components[p[0]].name for p in full])
        if v.point in cusp_points:
            if len(full) >= 2 or len(plist) > 1:
                raise CuspOnIntersection(v.point)
            v.kind = "cusp"
            continue
        if len(full) == 2:
            rays = []
            for idx, p in enumerate(full):
                rays.append((p[1], idx))
                rays.append((p[2], idx))
            rays.sort(key=lambda rv: angle_key(rv[0]))
            owners = [idx for _, idx in rays]
            if owners[0] == owners[1] or owners[1] == owners[2]:
                raise TangencyError(v.point, "non-transverse crossing")
            v.kind = "double_point"
            v.divide_only = all(arr.components[p[0]].is_divide for p in full)
            kinds = {arr.components[p[0]].kind for p in full}
            if "front" in kinds and "oriented_circle" in kinds:
                _check_coorientation_coincidence(arr, v, full)
            continue
        v.kind = "anchor"


def _check_coorientation_coincidence(arr: Arrangement, v: Vertex, full: list) -> None:
    fronts = [p for p in full if arr.components[p[0]].kind == "front"]
    oriented = [p for p in full if arr.components[p[0]].kind == "oriented_circle"]
    for fp in fronts:
        normals = []
        for e, travel in ((fp[3], neg(fp[1])), (fp[4], fp[2])):
            nu = perp_left(travel)
            if e.front_side == "right":
                nu = neg(nu)
            normals.append(nu)
        for op in oriented:
            for d in (neg(op[1]), op[2]):
                for nu in normals:
                    if same_direction(nu, d):
                        raise ForbiddenCoincidence(v.point)


def _outer_walk(arr: Arrangement, cluster: int) -> int:
    """The walk of this cluster that faces away from it, found at the
    lexicographically smallest point of the cluster."""
    best_pt = None
    best_kind = None  # ("vertex", vid) | ("bend", edge, i) | ("pole", edge)

    for v in arr.vertices:
        if arr.cluster_of_vertex[v.id] != cluster:
            continue
        if best_pt is None or v.point < best_pt:
            best_pt, best_kind = v.point, ("vertex", v.id)

    for e in arr.edges:
        vid = arr.halves[e.halves[0]].origin
        if arr.cluster_of_vertex[vid] != cluster:
            continue
        if e.is_arc:
            pole = _arc_left_pole(e)
            if pole is not None and pole < best_pt:
                best_pt, best_kind = pole, ("pole", e.id)
        else:
            pts = e.chain_points()
            for i in range(1, len(pts) - 1):
                if pts[i] < best_pt:
                    best_pt, best_kind = pts[i], ("bend", e.id, i)

    assert best_kind is not None

    if best_kind[0] == "pole":
        # CCW traversal passes the left pole downward; the CW half goes up,
        # keeping the outside of the circle on its left.
        e = arr.edges[best_kind[1]]
        return arr.walk_of_half[e.halves[1]]

    if best_kind[0] == "bend":
        e = arr.edges[best_kind[1]]
        pts = e.chain_points()
        i = best_kind[2]
        d_out = sub(pts[i + 1], pts[i])
        d_in = sub(pts[i], pts[i - 1])
        if ccw_between(d_out, WEST, neg(d_in)):
            return arr.walk_of_half[e.halves[0]]
        return arr.walk_of_half[e.halves[1]]

    v = arr.vertices[best_kind[1]]
    # The face at corner (h_in, h_out) occupies the sector swept CCW from
    # dir(h_out) to the next ray counterclockwise (which is dir(twin(h_in)));
    # find the corner whose sector contains west.
    for i, h_out in enumerate(v.out):
        if len(v.out) == 1:
            return arr.walk_of_half[h_out]
        h_next = v.out[(i + 1) % len(v.out)]
        d_from = arr.halves[h_out].direction
        d_to = arr.halves[h_next].direction
        if ccw_between(d_from, WEST, d_to):
            return arr.walk_of_half[h_out]
    raise AssertionError("no corner sector at the extreme vertex contains west")


def _arc_left_pole(e: Edge) -> Optional[Point]:
    """The leftmost point of the arc's circle if it lies strictly inside the
    arc, else None."""
    _, c, r, a, b = e.support
    pole = (c[0] - r, c[1])
    if pole == a or pole == b:
        return None
    if a == b:
        return pole  # full circle
    return pole if ccw_between(sub(a, c), WEST, sub(b, c)) else None


def _cluster_rep_point(arr: Arrangement, cl: int) -> Point:
    best = None
    for v in arr.vertices:
        if arr.cluster_of_vertex[v.id] == cl and (best is None or v.point < best):
            best = v.point
    for e in arr.edges:
        vid = arr.halves[e.halves[0]].origin
        if arr.cluster_of_vertex[vid] != cl:
            continue
        if e.is_arc:
            pole = _arc_left_pole(e)
            if pole is not None and pole < best:
                best = pole
        else:
            for q in e.chain_points()[1:-1]:
                if q < best:
                    best = q
    assert best is not None
    return best


def _assemble_faces(arr: Arrangement, clusters: Sequence[int]) -> None:
    outer_walks = set(arr.outer_walk_of_cluster.values())
    cluster_of_walk = {
        wid: arr.cluster_of_vertex[arr.halves[walk[0]].origin]
        for wid, walk in enumerate(arr.walks)}

    rep_point = {cl: _cluster_rep_point(arr, cl) for cl in clusters}
    candidate_walks = [w for w in range(len(arr.walks)) if w not in outer_walks]
    chains = {w: arr.walk_chain(w) for w in candidate_walks}

    container: Dict[int, Optional[int]] = {}
    for cl in clusters:
        rep = rep_point[cl]
        containing = [w for w in candidate_walks
                      if cluster_of_walk[w] != cl and point_in_chain(rep, chains[w])]
        if not containing:
            container[cl] = None
            continue

        def nesting_depth(w: int) -> int:
            sample = arr.vertices[arr.halves[arr.walks[w][0]].origin].point
            return sum(1 for w2 in containing
                       if w2 != w and point_in_chain(sample, chains[w2]))

        container[cl] = max(containing, key=lambda w: (nesting_depth(w), -w))

    roots = [cl for cl in clusters if container[cl] is None]
    outer_cluster = arr.cluster_of_vertex[_some_vertex_on(arr, 0)]
    assert roots == [outer_cluster], "only the outer boundary may be unnested"

    face_of_walk: Dict[int, int] = {}
    for w in candidate_walks:
        f = Face(len(arr.faces), outer_walk=w)
        comp_ids = {arr.edges[arr.halves[h].edge].component for h in arr.walks[w]}
        if len(comp_ids) == 1:
            comp = arr.components[next(iter(comp_ids))]
            if comp.is_boundary and comp.name != "outer":
                f.hole_interior = True
        arr.faces.append(f)
        face_of_walk[w] = f.id

    inner: Dict[int, List[int]] = {f.id: [] for f in arr.faces}
    for cl in clusters:
        w = container[cl]
        if w is None:
            continue
        inner[face_of_walk[w]].append(arr.outer_walk_of_cluster[cl])
    for f in arr.faces:
        f.inner_walks = tuple(sorted(inner[f.id]))
        if f.hole_interior:
            assert not f.inner_walks, "nothing can nest inside a hole"


def _some_vertex_on(arr: Arrangement, comp_id: int) -> int:
    for e in arr.edges:
        if e.component == comp_id:
            return arr.halves[e.halves[0]].origin
    raise AssertionError("component has no edges")
