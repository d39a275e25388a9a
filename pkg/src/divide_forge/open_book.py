"""Open books from admissible divides.

The page is assembled as an explicit cell complex.  Every black region of
the checkerboard coloring contributes two oppositely oriented sheets.  The
sheets are glued to each other

  * along a pair of truncation edges at every crossing (one per white
    sector, joining the corners of the two adjacent black sectors),
  * along the shared boundary-circle run of an exterior region, and
  * along a core circle sitting over each interior black region, reached
    through a slit cut from the region's rim.

The boundary of the result is the binding: two tangent lifts over every
divide edge, pinched together at interval endpoints and crossing over at
double points.  Vanishing cycles are closed edge paths on the complex --
one per double point and one per interior region -- and the monodromy is
the composite of positive Dehn twists about them.  First homology of the
closed manifold is the cokernel of an integer matrix accumulated from
intersection numbers of those cycles, which the complex makes exactly
computable.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Dict, List, Optional, Sequence, Set, Tuple

from .arrangement import Arrangement
from .divide_core import (
    Region,
    check_admissible,
    coloring,
    divide_arrangement,
    extract_regions,
)
from .errors import SceneValidationError
from .geometry import fmt_frac
from .scene_io import Scene
from .surface import Dart, Homology, Surface


def _sig(sigma: int) -> str:
    return "+" if sigma > 0 else "-"


@dataclass
class BindingComponent:
    """One boundary circle of the page.

    Interval components lift to a single circle labeled by the component
    name; circle components lift to two, tagged by whether the lift runs
    forward or backward along the drawn curve.
    """

    label: str
    component: str
    direction: Optional[str]  # "fwd" | "rev" for circle lifts, None for intervals
    edges: Tuple[str, ...]


@dataclass
class Cycle:
    """A vanishing cycle: a closed path on the page and its homology data."""

    id: str
    kind: str  # "min" | "saddle" | "max"
    site: str
    path: List[Dart]
    chain: Dict[str, int] = field(default_factory=dict)
    h_class: List[int] = field(default_factory=list)


class PageModel:
    """Cell model of the page of a divide's open book.

    Exposes the assembled :class:`Surface` plus the routing registries
    (hubs, ports, locus circles) needed to lay down closed paths that cross
    between sheets.
    """

    def __init__(self, arr: Arrangement, regions: List[Region],
                 colors: Dict[int, int]):
        self.arr = arr
        self.regions = regions
        self.colors = colors
        self.n_holes = sum(1 for c in arr.components
                           if c.is_boundary and c.name != "outer")

        self._region_of_face = {r.face_id: r.id for r in regions}
        self._face_of_walk: Dict[int, int] = {}
        for f in arr.faces:
            self._face_of_walk[f.outer_walk] = f.id
            for w in f.inner_walks:
                self._face_of_walk[w] = f.id

        self.dps = [v.id for v in arr.vertices if v.kind == "double_point"]
        self._sector_tables()

        self._edge_ends: Dict[str, Tuple[str, str]] = {}
        self._black_sides()
        self.binding_meta: Dict[str, Tuple[int, int]] = {}
        self.locus_port: Dict[int, str] = {}
        self.locus_chain: Dict[int, Dict[str, int]] = {}
        self.locus_darts: Dict[int, List[Dart]] = {}
        # circle loci carry one crossing position per boundary feature
        self.locus_wall: Dict[int, Dict[int, str]] = {}
        self.locus_corner: Dict[int, Dict[Tuple[int, int], str]] = {}

        self._face_words: Dict[Tuple[int, int], List[Dart]] = {}
        for region in regions:
            if colors[region.id] == 1:
                for sigma in (+1, -1):
                    self._face_words[(region.id, sigma)] = \
                        self._word_for(region, sigma)

        self._fan()
        self.surface = Surface(dict(self._edge_ends), self._triangles)

        type_a_black = sum(1 for r in regions
                           if colors[r.id] == 1 and r.exterior_type == "disk")
        chi = self.surface.euler_characteristic
        assert chi == type_a_black - 2 * len(self.dps), \
            f"page chi {chi} != {type_a_black} - 2*{len(self.dps)}"

        self.binding = self._label_binding()

    # -- lookup helpers ----------------------------------------------------

    def _region_of_walk(self, w: int) -> Optional[int]:
        fid = self._face_of_walk.get(w)
        return None if fid is None else self._region_of_face.get(fid)

    def _region_across(self, hid: int) -> Optional[int]:
        """Region on the other side of half-edge ``hid``."""
        twin = self.arr.halves[hid].twin
        return self._region_of_walk(self.arr.walk_of_half[twin])

    def face_name(self, rid: int, sigma: int) -> str:
        return f"R{rid}:{_sig(sigma)}"

    def hub(self, rid: int, sigma: int) -> str:
        return f"hub:{self.face_name(rid, sigma)}"

    def _tail(self, dart: Dart) -> str:
        t, h = self._edge_ends[dart[0]]
        return t if dart[1] > 0 else h

    # -- sector bookkeeping at crossings ------------------------------------

    def _sector_tables(self) -> None:
        arr = self.arr
        self.sector_region: Dict[int, List[int]] = {}
        self.white_sectors: Dict[int, List[int]] = {}
        for vid in self.dps:
            v = arr.vertices[vid]
            assert len(v.out) == 4, "double point without four rays"
            rids = []
            for h in v.out:
                rid = self._region_of_walk(arr.walk_of_half[h])
                assert rid is not None, "crossing sector outside every region"
                rids.append(rid)
            cols = [self.colors[r] for r in rids]
            assert all(cols[i] != cols[(i + 1) % 4] for i in range(4)), \
                "sector colors do not alternate around a crossing"
            self.sector_region[vid] = rids
            self.white_sectors[vid] = [i for i in range(4) if cols[i] == 0]

    def _black_sides(self) -> None:
        """The half of each edge whose left face is a black region."""
        self._black_half: Dict[int, int] = {}
        for e in self.arr.edges:
            sides = [h for h in e.halves
                     if (rid := self._region_of_walk(self.arr.walk_of_half[h]))
                     is not None and self.colors[rid] == 1]
            if e.is_arc:
                assert len(sides) <= 1
            else:
                assert len(sides) == 1, "divide edge must split black from white"
            if sides:
                self._black_half[e.id] = sides[0]

        # Boundary arcs both of whose ends are interval endpoints have no
        # interior break; split them so the shared run keeps a port vertex.
        self._split_arcs: Set[int] = set()
        for eid, hid in self._black_half.items():
            e = self.arr.edges[eid]
            if not e.is_arc:
                continue
            h = self.arr.halves[hid]
            if (self.arr.vertices[h.origin].kind == "boundary_endpoint"
                    and self.arr.vertices[h.target].kind == "boundary_endpoint"):
                self._split_arcs.add(eid)

    # -- lifted cells --------------------------------------------------------

    def _lift_tail(self, hid: int, sigma: int) -> str:
        h = self.arr.halves[hid]
        v = self.arr.vertices[h.origin]
        if v.kind == "double_point":
            r = v.out.index(hid)
            return f"d{v.id}:{r if sigma > 0 else (r + 2) % 4}"
        if v.kind == "boundary_endpoint":
            return f"p{v.id}"
        return f"b{v.id}:{_sig(sigma)}"

    def _lift_head(self, hid: int, sigma: int) -> str:
        h = self.arr.halves[hid]
        v = self.arr.vertices[h.target]
        if v.kind == "double_point":
            r = v.out.index(h.twin)
            return f"d{v.id}:{(r + 2) % 4 if sigma > 0 else r}"
        if v.kind == "boundary_endpoint":
            return f"p{v.id}"
        return f"b{v.id}:{_sig(sigma)}"

    def _divide_dart(self, hid: int, sigma: int) -> Dart:
        e = self.arr.halves[hid].edge
        eid = f"E{e}:{_sig(sigma)}"
        if eid not in self._edge_ends:
            self._edge_ends[eid] = (self._lift_tail(hid, sigma),
                                    self._lift_head(hid, sigma))
            edge = self.arr.edges[e]
            # Both lifts are oriented along the black walk half, so travel
            # direction over the drawn curve is independent of the sheet.
            forward = edge.halves[0] == hid
            self.binding_meta[eid] = (edge.component, 1 if forward else -1)
        return (eid, +1)

    def _run_end(self, vid: int) -> str:
        v = self.arr.vertices[vid]
        return f"p{vid}" if v.kind == "boundary_endpoint" else f"r{vid}"

    def _run_darts(self, hid: int) -> List[Dart]:
        h = self.arr.halves[hid]
        e = self.arr.edges[h.edge]
        assert self._black_half.get(e.id) == hid, \
            "boundary arc lifted from its non-black side"
        if e.id in self._split_arcs or h.origin == h.target:
            a, b = f"N{e.id}:a", f"N{e.id}:b"
            if a not in self._edge_ends:
                mid = f"rm{e.id}"
                self._edge_ends[a] = (self._run_end(h.origin), mid)
                self._edge_ends[b] = (mid, self._run_end(h.target))
            return [(a, +1), (b, +1)]
        eid = f"N{e.id}"
        if eid not in self._edge_ends:
            self._edge_ends[eid] = (self._run_end(h.origin),
                                    self._run_end(h.target))
        return [(eid, +1)]

    def _circle_lap(self, rid: int, walk: Sequence[int], foot: str,
                    stem: str) -> None:
        """Subdivide the gluing circle of region ``rid`` radially.

        The circle gets one vertex facing each half-edge of ``walk`` and one
        facing each crossing corner between consecutive halves, in walk
        order starting from ``foot``.  Curves entering the circle cross at
        the vertex facing the feature they come from, so crossings arriving
        from different walls or corners stay combinatorially separated.
        """
        arr = self.arr
        n = len(walk)
        verts: List[str] = [foot]
        wall: Dict[int, str] = {}
        corner: Dict[Tuple[int, int], str] = {}
        for i, hid in enumerate(walk):
            w = f"{stem}:w{i}"
            verts.append(w)
            wall[hid] = w
            v = arr.vertices[arr.halves[hid].target]
            if v.kind == "double_point":
                c = f"{stem}:c{i}"
                verts.append(c)
                corner[(v.id, v.out.index(walk[(i + 1) % n]))] = c
        self.locus_wall[rid] = wall
        self.locus_corner[rid] = corner
        darts: List[Dart] = []
        chain: Dict[str, int] = {}
        m = len(verts)
        for j in range(m):
            e = f"{stem}:{j}"
            self._edge_ends[e] = (verts[j], verts[(j + 1) % m])
            darts.append((e, +1))
            chain[e] = 1
        self.locus_chain[rid] = chain
        self.locus_darts[rid] = darts

    def _t_darts(self, vid: int, sector: int) -> List[Dart]:
        assert sector in self.white_sectors[vid], \
            "truncation attaches at a white sector"
        a, b = f"T{vid}:{sector}:a", f"T{vid}:{sector}:b"
        if a not in self._edge_ends:
            mid = f"tm{vid}:{sector}"
            self._edge_ends[a] = (f"d{vid}:{sector}", mid)
            self._edge_ends[b] = (mid, f"d{vid}:{(sector + 1) % 4}")
        return [(a, +1), (b, +1)]

    def t_port(self, vid: int, sector: int) -> str:
        return f"tm{vid}:{sector}"

    # -- sheet boundary words ------------------------------------------------

    def _circuit(self, walk: Sequence[int], sigma: int) -> List[Dart]:
        """Forward traversal of a region walk on sheet ``sigma``."""
        arr = self.arr
        out: List[Dart] = []
        n = len(walk)
        for idx, hid in enumerate(walk):
            h = arr.halves[hid]
            if arr.edges[h.edge].is_arc:
                out.extend(self._run_darts(hid))
            else:
                out.append(self._divide_dart(hid, sigma))
            v = arr.vertices[h.target]
            if v.kind == "double_point":
                nxt = arr.halves[walk[(idx + 1) % n]]
                assert nxt.origin == v.id
                r_out = v.out.index(nxt.id)
                r_in = v.out.index(h.twin)
                assert r_in == (r_out + 1) % 4, \
                    "region corner spans more than one sector"
                sector = (r_out + 3) % 4 if sigma > 0 else (r_out + 1) % 4
                out.extend(self._t_darts(v.id, sector))
        return out

    def _word_for(self, region: Region, sigma: int) -> List[Dart]:
        arr = self.arr
        rid = region.id
        if region.interior:
            walk = arr.walks[region.walks[0]]
            strip = self._circuit(walk, sigma)
            foot = f"mf{rid}"
            if rid not in self.locus_darts:
                self._circle_lap(rid, walk, foot, f"M{rid}")
            # the core circle is the inner boundary of the slit sheet, so
            # the positively oriented word traverses it against walk order
            lap = [(e, -s) for (e, s) in reversed(self.locus_darts[rid])]
            rho = f"rho{rid}:{_sig(sigma)}"
            self._edge_ends[rho] = (self._tail(strip[0]), foot)
            strip = strip + [(rho, +1)] + lap + [(rho, -1)]
        elif region.exterior_type == "disk":
            walk = list(arr.walks[region.walks[0]])
            shift = next(i for i, hid in enumerate(walk)
                         if not arr.edges[arr.halves[hid].edge].is_arc)
            walk = walk[shift:] + walk[:shift]
            strip = self._circuit(walk, sigma)
            if rid not in self.locus_port:
                runs = [d for d in strip if d[0].startswith("N")]
                assert len(runs) >= 2, "boundary run of a disk region too short"
                self.locus_port[rid] = self._tail((runs[1][0], +1))
                self.locus_chain[rid] = {e: 1 for e, _ in runs}
                self.locus_darts[rid] = runs
        else:
            assert region.exterior_type == "annulus"
            rim_w, run_w = self._annulus_walks(region)
            rim = self._circuit(arr.walks[rim_w], sigma)
            run_halves = arr.walks[run_w]
            assert len(run_halves) == 1, "shared boundary circle must be unbroken"
            anchor = self._run_end(arr.halves[run_halves[0]].origin)
            if rid not in self.locus_darts:
                self._circle_lap(rid, arr.walks[rim_w], anchor, f"NC{rid}")
            lap = [(e, -s) for (e, s) in reversed(self.locus_darts[rid])]
            g = f"G{rid}:{_sig(sigma)}"
            self._edge_ends[g] = (self._tail(rim[0]), anchor)
            strip = [(g, +1)] + lap + [(g, -1)] + rim
        if sigma > 0:
            return strip
        return [(e, -s) for (e, s) in reversed(strip)]

    def _annulus_walks(self, region: Region) -> Tuple[int, int]:
        """(rim walk, boundary-circle walk) of an annulus region."""
        w0, w1 = region.walks
        arcs0 = all(self.arr.edges[self.arr.halves[h].edge].is_arc
                    for h in self.arr.walks[w0])
        return (w1, w0) if arcs0 else (w0, w1)

    # -- fan subdivision -----------------------------------------------------

    def _fan(self) -> None:
        self._triangles: Dict[str, List[Dart]] = {}
        self.port_spokes: Dict[str, Dict[str, List[str]]] = {}
        for (rid, sigma), word in sorted(self._face_words.items()):
            fname = self.face_name(rid, sigma)
            hub = self.hub(rid, sigma)
            n = len(word)
            spokes = []
            for i, dart in enumerate(word):
                sp = f"sp:{fname}:{i}"
                corner = self._tail(dart)
                self._edge_ends[sp] = (hub, corner)
                spokes.append(sp)
                self.port_spokes.setdefault(corner, {}) \
                    .setdefault(fname, []).append(sp)
            for i, dart in enumerate(word):
                self._triangles[f"{fname}:{i}"] = \
                    [(spokes[i], +1), dart, (spokes[(i + 1) % n], -1)]

    # -- binding -------------------------------------------------------------

    def _label_binding(self) -> List[BindingComponent]:
        out = []
        for walk in self.surface.boundary_walks:
            comp_ids, travels = set(), set()
            for eid, s in walk:
                assert eid in self.binding_meta, \
                    f"page boundary runs over non-binding edge {eid!r}"
                cid, d = self.binding_meta[eid]
                comp_ids.add(cid)
                travels.add(s * d)
            assert len(comp_ids) == 1, "binding circle mixes divide components"
            comp = self.arr.components[comp_ids.pop()]
            if comp.curve.kind == "interval":
                assert travels == {1, -1}
                label, direction = comp.name, None
            else:
                assert len(travels) == 1, \
                    "circle lift changes direction along its binding circle"
                direction = "fwd" if travels.pop() > 0 else "rev"
                label = f"{comp.name}:{direction}"
            out.append(BindingComponent(label, comp.name, direction,
                                        tuple(e for e, _ in walk)))
        out.sort(key=lambda b: b.label)
        assert len({b.label for b in out}) == len(out)
        return out

    # -- port crossings --------------------------------------------------------

    def cross_port(self, port: str, from_face: str, to_face: str,
                   locus: Optional[Dict[str, int]]) -> List[Dart]:
        """Two darts hopping hub -> ``port`` -> hub across a gluing locus.

        With a ``locus`` chain, picks the first spoke pair whose passage
        crosses the locus exactly once; without one the spokes must be
        unique on both sides.
        """
        spokes_in = self.port_spokes[port].get(from_face)
        spokes_out = self.port_spokes[port].get(to_face)
        assert spokes_in and spokes_out, \
            f"port {port!r} does not join {from_face} to {to_face}"
        if locus is None:
            assert len(spokes_in) == 1 and len(spokes_out) == 1
            return [(spokes_in[0], +1), (spokes_out[0], -1)]
        for a in spokes_in:
            for b in spokes_out:
                if abs(self.surface.passage_sum((a, +1), (b, -1), locus)) == 1:
                    return [(a, +1), (b, -1)]
        raise AssertionError(f"no single crossing of port {port!r}")

    def cross_locus(self, rid: int, sigma: int,
                    at: Optional[str] = None) -> List[Dart]:
        """Cross from sheet ``sigma`` of region ``rid`` to the other sheet.

        ``at`` names the crossing position on a circle locus; run loci have
        a single canonical port and take no position.
        """
        port = at if at is not None else self.locus_port.get(rid)
        assert port is not None, \
            f"crossing the circle locus of region {rid} needs a position"
        return self.cross_port(port,
                               self.face_name(rid, sigma),
                               self.face_name(rid, -sigma),
                               self.locus_chain[rid])

    def cross_truncation(self, vid: int, sector: int,
                         from_rs: Tuple[int, int],
                         to_rs: Tuple[int, int]) -> List[Dart]:
        return self.cross_port(self.t_port(vid, sector),
                               self.face_name(*from_rs),
                               self.face_name(*to_rs), None)


# -- vanishing cycles ---------------------------------------------------------


def _max_cycle(page: PageModel, region: Region) -> Cycle:
    return Cycle(id=f"max:{region.id}", kind="max", site=f"region {region.id}",
                 path=list(page.locus_darts[region.id]))


def _min_cycle(page: PageModel, region: Region) -> Cycle:
    arr = page.arr
    walk = arr.walks[region.walks[0]]
    n = len(walk)
    corners = [i for i, hid in enumerate(walk)
               if arr.vertices[arr.halves[hid].target].kind == "double_point"]
    cyc = Cycle(id=f"min:{region.id}", kind="min", site=f"region {region.id}",
                path=[])

    if not corners:
        flanks = {page._region_across(hid) for hid in walk}
        assert len(flanks) == 1
        rb = flanks.pop()
        assert rb is not None and page.colors[rb] == 1
        assert page.regions[rb].exterior_type == "annulus", \
            "rim of a cornerless white region must bound a shared-circle region"
        cyc.path = list(page.locus_darts[rb])
        return cyc

    k = len(corners)
    flank = []
    for j in range(k):
        start = (corners[j - 1] + 1) % n
        seg = []
        i = start
        while True:
            seg.append(walk[i])
            if i == corners[j]:
                break
            i = (i + 1) % n
        rids = {page._region_across(hid) for hid in seg}
        assert len(rids) == 1, "segment flank changes between crossings"
        rid = rids.pop()
        assert rid is not None and page.colors[rid] == 1
        flank.append((rid, seg[0]))

    # At each corner the rim crosses the region's own truncation edge, which
    # joins the incoming flank's + sheet to the outgoing flank's - sheet; the
    # following stretch crosses the outgoing flank's gluing locus back to +,
    # at the position facing the shared wall, so the circuit closes after
    # one lap whatever the corner count.
    path: List[Dart] = []
    for j in range(k):
        cpos = corners[j]
        v = arr.vertices[arr.halves[walk[cpos]].target]
        r_out = v.out.index(walk[(cpos + 1) % n])
        assert page.sector_region[v.id][r_out] == region.id
        nxt, seg0 = flank[(j + 1) % k]
        path += page.cross_truncation(v.id, r_out,
                                      (flank[j][0], +1), (nxt, -1))
        at = page.locus_wall.get(nxt, {}).get(arr.halves[seg0].twin)
        path += page.cross_locus(nxt, -1, at)
    cyc.path = path
    return cyc


def _saddle_cycle(page: PageModel, vid: int) -> Cycle:
    w1, w2 = page.white_sectors[vid]
    assert w2 == (w1 + 2) % 4
    rb = page.sector_region[vid][(w1 + 1) % 4]
    ra = page.sector_region[vid][(w1 + 3) % 4]
    at_b = page.locus_corner.get(rb, {}).get((vid, (w1 + 1) % 4))
    at_a = page.locus_corner.get(ra, {}).get((vid, (w1 + 3) % 4))
    path = page.cross_locus(rb, +1, at_b)
    path += page.cross_truncation(vid, w2, (rb, -1), (ra, +1))
    path += page.cross_locus(ra, +1, at_a)
    path += page.cross_truncation(vid, w1, (ra, -1), (rb, +1))
    point = page.arr.vertices[vid].point
    site = f"crossing ({fmt_frac(point[0])},{fmt_frac(point[1])})"
    return Cycle(id=f"saddle:{vid}", kind="saddle", site=site, path=path)


def vanishing_cycles(page: PageModel) -> List[Cycle]:
    """One cycle per interior region and per crossing, in twist order."""
    cycles: List[Cycle] = []
    for r in page.regions:
        if r.interior and page.colors[r.id] == 0:
            cycles.append(_min_cycle(page, r))
    for vid in page.dps:
        cycles.append(_saddle_cycle(page, vid))
    for r in page.regions:
        if r.interior and page.colors[r.id] == 1:
            cycles.append(_max_cycle(page, r))
    for c in cycles:
        page.surface.check_path(c.path, closed=True)
        c.chain = page.surface.chain_of(c.path)
    return cycles


# -- homology of the filled-in mapping torus -----------------------------------


def twist_h1(surface: Surface, habs: Homology, hrel: Homology,
             cycles: Sequence[Cycle],
             word: Sequence[int]) -> Tuple[List[int], int]:
    """H1 invariants of the closed manifold of an open book.

    ``word`` lists indices into ``cycles`` (repeats allowed); the monodromy
    is the corresponding composite of positive Dehn twists.  Each twist
    contributes a relation built from the cycle's class corrected by its
    crossings with all earlier letters; the group is the cokernel of the
    assembled relation matrix.
    """
    rel_basis = hrel.basis_chains()
    r_rel, r_abs, k = hrel.rank, habs.rank, len(cycles)
    n_mat = [[-surface.pair(cycles[j].path, rel_basis[i], closed=True)
              for j in range(k)] for i in range(r_rel)]
    q = [[surface.pair(cycles[a].path, cycles[b].chain, closed=True)
          for b in range(k)] for a in range(k)]
    for a in range(k):
        for b in range(k):
            assert q[a][b] == -q[b][a], "cycle crossing form is not antisymmetric"
    cls = [c.h_class if c.h_class else habs.class_of(c.chain) for c in cycles]

    length = len(word)
    m = [[0] * length for _ in range(r_rel)]
    for t, jt in enumerate(word):
        for i in range(r_rel):
            acc = n_mat[i][jt]
            for s in range(t):
                acc += m[i][s] * q[word[s]][jt]
            m[i][t] = acc

    phi = [[0] * r_rel for _ in range(r_abs)]
    for t, jt in enumerate(word):
        for a in range(r_abs):
            if cls[jt][a]:
                for i in range(r_rel):
                    phi[a][i] += cls[jt][a] * m[i][t]
    from .linalg import cokernel
    return cokernel(phi)


def describe_h1(torsion: Sequence[int], free_rank: int) -> str:
    parts = []
    if free_rank == 1:
        parts.append("Z")
    elif free_rank > 1:
        parts.append(f"Z^{free_rank}")
    parts.extend(f"Z/{t}" for t in torsion)
    return " + ".join(parts) if parts else "0"


@dataclass
class OpenBook:
    """Page, binding, vanishing cycles, and the resulting closed manifold."""

    page: PageModel
    homology: Homology
    rel_homology: Homology
    cycles: List[Cycle]
    word: List[str]
    binding: List[BindingComponent]
    euler_characteristic: int
    genus: int
    boundary_count: int
    page_h1_rank: int
    h1_invariant_factors: List[int]
    h1_free_rank: int

    @property
    def h1_description(self) -> str:
        return describe_h1(self.h1_invariant_factors, self.h1_free_rank)

    def as_dict(self) -> dict:
        return {
            "page": {
                "euler_characteristic": self.euler_characteristic,
                "genus": self.genus,
                "boundary_components": self.boundary_count,
                "h1_rank": self.page_h1_rank,
            },
            "binding": [b.label for b in self.binding],
            "cycles": [
                {"id": c.id, "kind": c.kind, "site": c.site} for c in self.cycles
            ],
            "monodromy": list(self.word),
            "h1": {
                "invariant_factors": list(self.h1_invariant_factors),
                "free_rank": self.h1_free_rank,
                "group": self.h1_description,
            },
        }


def build_open_book(scene: Scene, *, flip: bool = False) -> OpenBook:
    """Full pipeline: admissibility, page, cycles, twist word, homology.

    ``flip`` selects the opposite checkerboard coloring; the resulting open
    book may differ but presents the same manifold.
    """
    arr = divide_arrangement(scene)
    report = check_admissible(arr)
    if not report.admissible:
        raise SceneValidationError(
            "divide is not admissible: " + "; ".join(report.failures))
    regions = extract_regions(arr)
    colors = coloring(arr, regions, flip=flip)
    page = PageModel(arr, regions, colors)
    cycles = vanishing_cycles(page)

    habs = Homology(page.surface)
    hrel = Homology(page.surface, relative=True)
    assert habs.rank == len(cycles) + page.n_holes, \
        "page rank must exceed the cycle count by the hole count"
    # duality: rank of the rim-relative group matches the absolute one
    assert hrel.rank == habs.rank
    for c in cycles:
        c.h_class = habs.class_of(c.chain)

    if page.n_holes == 0:
        from .linalg import invariant_factors
        cls_mat = [[c.h_class[a] for c in cycles] for a in range(habs.rank)]
        assert invariant_factors(cls_mat) == [1] * habs.rank, \
            "cycle classes of a plain-disk divide must form a basis"

    torsion, free = twist_h1(page.surface, habs, hrel, cycles,
                             list(range(len(cycles))))

    n_int = sum(1 for c in page.arr.components
                if c.curve is not None and c.curve.kind == "interval")
    n_circ = sum(1 for c in page.arr.components
                 if c.curve is not None and c.curve.kind != "interval")
    assert len(page.binding) == n_int + 2 * n_circ

    return OpenBook(
        page=page,
        homology=habs,
        rel_homology=hrel,
        cycles=cycles,
        word=[c.id for c in cycles],
        binding=page.binding,
        euler_characteristic=page.surface.euler_characteristic,
        genus=page.surface.genus,
        boundary_count=page.surface.boundary_count,
        page_h1_rank=habs.rank,
        h1_invariant_factors=torsion,
        h1_free_rank=free,
    )
