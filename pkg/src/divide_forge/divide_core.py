"""Regions of a divide, admissibility checks, and checkerboard coloring.

A divide is the union of the scene's interval/circle/oriented_circle
components inside the holed disk.  The complement splits into regions (the
bounded, non-hole faces of the divide-only arrangement).  A divide is
admissible when

  * connected  -- the divide itself is one nonempty connected set,
  * interior_disks -- every region avoiding the boundary is a disk,
  * exterior_shape -- every region touching the boundary is either a disk
    whose boundary-circle part is a single connected run, or an annulus with
    one rim a whole boundary circle and the other rim inside the divide,
  * two_colorable -- regions admit a checkerboard coloring across divide
    edges (a region adjacent to itself across an edge also fails this).

The canonical coloring paints the smallest-id region of each adjacency
component black; `flip=True` selects the opposite checkerboard.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass, field
from typing import Dict, List, Optional, Tuple

from .arrangement import Arrangement, build_arrangement
from .errors import NotBipartite
from .scene_io import Scene


@dataclass
class Region:
    id: int
    face_id: int
    walks: Tuple[int, ...]  # outer walk first, then inner walks
    interior: bool
    exterior_type: Optional[str] = None  # "disk" | "annulus" | "bad" (exterior only)
    touched_boundaries: Tuple[int, ...] = ()  # boundary component ids


@dataclass
class AdmissibilityReport:
    connected: bool
    interior_disks: bool
    exterior_shape: bool
    two_colorable: bool
    failures: List[str] = field(default_factory=list)

    @property
    def admissible(self) -> bool:
        return (self.connected and self.interior_disks
                and self.exterior_shape and self.two_colorable)

    def failed(self) -> List[str]:
        return [name for name in
                ("connected", "interior_disks", "exterior_shape", "two_colorable")
                if not getattr(self, name)]

    def as_dict(self) -> dict:
        return {
            "admissible": self.admissible,
            "connected": self.connected,
            "interior_disks": self.interior_disks,
            "exterior_shape": self.exterior_shape,
            "two_colorable": self.two_colorable,
            "failures": list(self.failures),
        }


def divide_arrangement(scene: Scene) -> Arrangement:
    """Arrangement of the divide components only (fronts left out)."""
    return build_arrangement(scene, include_fronts=False)


def extract_regions(arr: Arrangement) -> List[Region]:
    """Bounded non-hole faces of a divide-only arrangement, as regions."""
    assert not any(c.kind == "front" for c in arr.components), \
        "regions are defined on the divide-only arrangement"
    regions: List[Region] = []
    for f in arr.faces:
        if f.hole_interior:
            continue
        walks = (f.outer_walk,) + f.inner_walks
        touched = set()
        for w in walks:
            for h in arr.walks[w]:
                e = arr.edges[arr.halves[h].edge]
                if e.is_arc:
                    touched.add(e.component)
        regions.append(Region(
            id=len(regions),
            face_id=f.id,
            walks=walks,
            interior=not touched,
            touched_boundaries=tuple(sorted(touched)),
        ))
    for r in regions:
        if not r.interior:
            r.exterior_type = _exterior_type(arr, r)
    return regions


def _walk_is_full_boundary_circle(arr: Arrangement, w: int) -> bool:
    edges = [arr.edges[arr.halves[h].edge] for h in arr.walks[w]]
    if not all(e.is_arc for e in edges):
        return False
    comps = {e.component for e in edges}
    if len(comps) != 1:
        return False
    comp = comps.pop()
    all_arcs = {e.id for e in arr.edges if e.component == comp}
    return {e.id for e in edges} == all_arcs


def _walk_in_divide(arr: Arrangement, w: int) -> bool:
    return all(not arr.edges[arr.halves[h].edge].is_arc for h in arr.walks[w])


def _exterior_type(arr: Arrangement, region: Region) -> str:
    outer, inner = region.walks[0], region.walks[1:]
    if not inner:
        flags = [arr.edges[arr.halves[h].edge].is_arc for h in arr.walks[outer]]
        blocks = sum(1 for i in range(len(flags))
                     if flags[i] and not flags[i - 1])
        if all(flags):
            blocks = 1
        return "disk" if blocks == 1 else "bad"
    if len(inner) == 1:
        a, b = outer, inner[0]
        for rim_boundary, rim_divide in ((a, b), (b, a)):
            if (_walk_is_full_boundary_circle(arr, rim_boundary)
                    and _walk_in_divide(arr, rim_divide)):
                return "annulus"
        return "bad"
    return "bad"


def region_adjacency(arr: Arrangement, regions: List[Region]) -> List[Tuple[int, int, int]]:
    """(region_a, region_b, edge_id) for every divide edge; a == b is legal
    output (and dooms two-colorability)."""
    region_of_walk: Dict[int, int] = {}
    for r in regions:
        for w in r.walks:
            region_of_walk[w] = r.id
    out = []
    for e in arr.edges:
        if e.is_arc:
            continue
        w0 = arr.walk_of_half[e.halves[0]]
        w1 = arr.walk_of_half[e.halves[1]]
        if w0 not in region_of_walk or w1 not in region_of_walk:
            # an edge flanked by the unbounded face cannot occur inside the disk
            raise AssertionError("divide edge not flanked by regions")
        out.append((region_of_walk[w0], region_of_walk[w1], e.id))
    return out


def coloring(arr: Arrangement, regions: List[Region], flip: bool = False) -> Dict[int, int]:
    """Checkerboard colors {region_id: 1 (black) | 0 (white)}.

    Raises NotBipartite with an odd cycle of region ids when impossible.
    """
    adj: Dict[int, List[int]] = {r.id: [] for r in regions}
    for a, b, _ in region_adjacency(arr, regions):
        if a == b:
            raise NotBipartite([a])
        adj[a].append(b)
        adj[b].append(a)

    color: Dict[int, int] = {}
    parent: Dict[int, Optional[int]] = {}
    for root in sorted(adj):
        if root in color:
            continue
        color[root] = 1  # smallest region of the component is black
        parent[root] = None
        queue = deque([root])
        while queue:
            u = queue.popleft()
            for v in adj[u]:
                if v not in color:
                    color[v] = 1 - color[u]
                    parent[v] = u
                    queue.append(v)
                elif color[v] == color[u]:
                    raise NotBipartite(_odd_cycle(parent, u, v))
    if flip:
        color = {k: 1 - v for k, v in color.items()}
    return color


def _odd_cycle(parent: Dict[int, Optional[int]], u: int, v: int) -> List[int]:
    up, vp = [u], [v]
    while parent[up[-1]] is not None:
        up.append(parent[up[-1]])
    while parent[vp[-1]] is not None:
        vp.append(parent[vp[-1]])
    # trim the common tail
    while len(up) > 1 and len(vp) > 1 and up[-2] == vp[-2]:
        up.pop()
        vp.pop()
    if up[-1] == vp[-1]:
        return up[:-1] + vp[::-1]
    return up + vp[::-1]


def check_admissible(scene_or_arr) -> AdmissibilityReport:
    """Run all four admissibility conditions and report per-condition results."""
    if isinstance(scene_or_arr, Scene):
        arr = divide_arrangement(scene_or_arr)
    else:
        arr = scene_or_arr
    regions = extract_regions(arr)
    failures: List[str] = []

    # connected: the divide alone (boundary circles do not glue it together)
    curve_ids = [c.id for c in arr.components if c.curve is not None]
    link: Dict[int, int] = {c: c for c in curve_ids}

    def find(x):
        while link[x] != x:
            link[x] = link[link[x]]
            x = link[x]
        return x

    for v in arr.vertices:
        incident = sorted({arr.edges[arr.halves[h].edge].component for h in v.out
                           if arr.edges[arr.halves[h].edge].component in link})
        for other in incident[1:]:
            ra, rb = find(incident[0]), find(other)
            if ra != rb:
                link[max(ra, rb)] = min(ra, rb)

    if not curve_ids:
        connected = False
        failures.append("divide is empty")
    else:
        classes = {find(c) for c in curve_ids}
        connected = len(classes) == 1
        if not connected:
            names = sorted(arr.components[c].name for c in classes)
            failures.append(f"divide splits into {len(classes)} pieces "
                            f"(starting at {', '.join(names)})")

    interior_disks = True
    for r in regions:
        if r.interior and len(r.walks) > 1:
            interior_disks = False
            failures.append(f"interior region {r.id} is not simply connected")

    exterior_shape = True
    for r in regions:
        if not r.interior and r.exterior_type == "bad":
            exterior_shape = False
            failures.append(f"exterior region {r.id} is neither a disk with "
                            "connected outside boundary nor a clean annulus")

    try:
        coloring(arr, regions)
        two_colorable = True
    except NotBipartite as exc:
        two_colorable = False
        failures.append(f"no checkerboard coloring: odd cycle {exc.cycle}")

    return AdmissibilityReport(connected, interior_disks, exterior_shape,
                               two_colorable, failures)
