"""Combinatorial surfaces built from glued oriented polygons.

A surface is described by

* ``edges``: edge id -> (tail vertex id, head vertex id), and
* ``faces``: face id -> boundary word, a cyclic list of darts traversed
  counterclockwise (face interior on the left).

A dart is ``(edge_id, sign)``: ``+1`` runs tail -> head, ``-1`` the
reverse.  Every edge must appear in the face words either once (a
boundary edge) or twice with opposite signs (an interior edge; the
opposite signs are exactly the orientation-reversing gluing condition,
so a successfully validated complex is an oriented surface).

From the words the class derives the rotation system (the cyclic
counterclockwise order of edge-ends around every vertex), boundary
walks, Euler characteristic and genus, and provides the two workhorses
of the homology pipeline:

* :meth:`Surface.pair` — the intersection number of an edge-path pushed
  slightly to its left with an arbitrary 1-cycle chain, computed by
  sweeping vertex passages in the rotation system; and
* :class:`Homology` / :class:`RelativeHomology` — integer H1 with
  explicit coordinates, via the chain complex and Smith reduction.
"""

from __future__ import annotations

from dataclasses import dataclass

from . import linalg

Dart = tuple[str, int]


def reverse(dart: Dart) -> Dart:
    return (dart[0], -dart[1])


@dataclass
class _Rotation:
    rays: list[Dart]  # counterclockwise; for boundary vertices the gap
    #                   sits between the last entry and the first
    has_gap: bool


class SurfaceError(ValueError):
    """The polygon data does not describe an oriented surface."""


class Surface:
    def __init__(self, edges: dict[str, tuple[str, str]], faces: dict[str, list[Dart]]):
        self.edges = dict(edges)
        self.faces = {f: list(word) for f, word in faces.items()}
        self.vertices: set[str] = set()
        for tail, head in self.edges.values():
            self.vertices.add(tail)
            self.vertices.add(head)
        self._validate_words()
        self._chain_corners()
        self._trace_boundary()
        self._check_connected()

    # -- dart geometry -------------------------------------------------

    def tail(self, dart: Dart) -> str:
        t, h = self.edges[dart[0]]
        return t if dart[1] > 0 else h

    def head(self, dart: Dart) -> str:
        t, h = self.edges[dart[0]]
        return h if dart[1] > 0 else t

    # -- validation and derived structure -------------------------------

    def _validate_words(self) -> None:
        occurrences: dict[str, list[tuple[str, int, int]]] = {}
        for fid, word in self.faces.items():
            if not word:
                raise SurfaceError(f"face {fid!r} has an empty boundary word")
            for pos, dart in enumerate(word):
                eid, sign = dart
                if eid not in self.edges:
                    raise SurfaceError(f"face {fid!r} references unknown edge {eid!r}")
                if sign not in (1, -1):
                    raise SurfaceError(f"bad dart sign {sign!r} in face {fid!r}")
                nxt = word[(pos + 1) % len(word)]
                if self.head(dart) != self.tail(nxt):
                    raise SurfaceError(
                        f"face {fid!r} word breaks at position {pos}: "
                        f"{dart} ends at {self.head(dart)!r} but {nxt} "
                        f"starts at {self.tail(nxt)!r}"
                    )
                occurrences.setdefault(eid, []).append((fid, pos, sign))
        self.interior_edges: set[str] = set()
        self.boundary_edges: set[str] = set()
        self._twin: dict[tuple[str, int], tuple[str, int]] = {}
        for eid in self.edges:
            occ = occurrences.get(eid, [])
            if len(occ) == 1:
                self.boundary_edges.add(eid)
            elif len(occ) == 2:
                if occ[0][2] == occ[1][2]:
                    raise SurfaceError(
                        f"edge {eid!r} is traversed twice in the same direction "
                        "(gluing must be orientation-reversing)"
                    )
                self.interior_edges.add(eid)
                a = (occ[0][0], occ[0][1])
                b = (occ[1][0], occ[1][1])
                self._twin[a] = b
                self._twin[b] = a
            elif len(occ) == 0:
                raise SurfaceError(f"edge {eid!r} appears in no face word")
            else:
                raise SurfaceError(f"edge {eid!r} appears {len(occ)} times in face words")
        self._occurrences = occurrences

    def _corner_vertex(self, fid: str, pos: int) -> str:
        return self.tail(self.faces[fid][pos])

    def _chain_corners(self) -> None:
        """Group face corners around vertices into fans; derive rotations."""
        corners_at: dict[str, list[tuple[str, int]]] = {}
        for fid, word in self.faces.items():
            for pos in range(len(word)):
                corners_at.setdefault(self._corner_vertex(fid, pos), []).append((fid, pos))

        def succ(corner: tuple[str, int]) -> tuple[str, int] | None:
            # The corner across this corner's outgoing side (clockwise step).
            fid, pos = corner
            out = self.faces[fid][pos]
            twin = self._twin.get((fid, pos))
            if twin is None:
                return None
            gfid, gpos = twin
            return (gfid, (gpos + 1) % len(self.faces[gfid]))

        self.rotations: dict[str, _Rotation] = {}
        self._fan_exit: dict[Dart, Dart] = {}  # arriving boundary dart -> leaving
        for v, corners in corners_at.items():
            corner_set = set(corners)
            succ_map: dict[tuple[str, int], tuple[str, int]] = {}
            has_pred: set[tuple[str, int]] = set()
            for c in corners:
                s = succ(c)
                if s is not None:
                    if s not in corner_set:
                        raise SurfaceError(f"corner chaining escaped vertex {v!r}")
                    succ_map[c] = s
                    has_pred.add(s)
            starts = [c for c in corners if c not in has_pred]
            if len(starts) == 0:
                # interior vertex: succ is a permutation; must be one cycle
                c0 = corners[0]
                chain = [c0]
                c = succ_map[c0]
                while c != c0:
                    chain.append(c)
                    c = succ_map[c]
                if len(chain) != len(corners):
                    raise SurfaceError(
                        f"vertex {v!r} is a non-manifold point "
                        f"(corner fan splits into several cycles)"
                    )
                gap = False
            elif len(starts) == 1:
                chain = [starts[0]]
                while chain[-1] in succ_map:
                    chain.append(succ_map[chain[-1]])
                if len(chain) != len(corners):
                    raise SurfaceError(
                        f"vertex {v!r} is a non-manifold point "
                        f"(corner fan splits into several chains)"
                    )
                gap = True
            else:
                raise SurfaceError(
                    f"vertex {v!r} is a non-manifold point ({len(starts)} fan chains)"
                )
            # The chain proceeds clockwise; its back-rays enumerate the
            # edge-ends.  For a boundary fan the final corner's out-ray is
            # the extra (boundary) ray.
            rays_cw: list[Dart] = []
            for fid, pos in chain:
                word = self.faces[fid]
                in_dart = word[(pos - 1) % len(word)]
                rays_cw.append(reverse(in_dart))
            if gap:
                fid, pos = chain[-1]
                rays_cw.append(self.faces[fid][pos])
                first_fid, first_pos = chain[0]
                word = self.faces[first_fid]
                entry = word[(first_pos - 1) % len(word)]  # boundary dart into v
                self._fan_exit[entry] = self.faces[fid][pos]
            rays_ccw = list(reversed(rays_cw))
            self.rotations[v] = _Rotation(rays_ccw, gap)

    def _trace_boundary(self) -> None:
        self.boundary_vertices = {v for v, rot in self.rotations.items() if rot.has_gap}
        walks: list[list[Dart]] = []
        seen: set[Dart] = set()
        for dart in sorted(self._fan_exit):
            if dart in seen:
                continue
            walk = []
            d = dart
            while d not in seen:
                seen.add(d)
                walk.append(d)
                d = self._fan_exit[d]
            walks.append(walk)
        self.boundary_walks = walks

    def _check_connected(self) -> None:
        if not self.faces:
            raise SurfaceError("surface has no faces")
        parent = {v: v for v in self.vertices}

        def find(x: str) -> str:
            while parent[x] != x:
                parent[x] = parent[parent[x]]
                x = parent[x]
            return x

        for tail, head in self.edges.values():
            parent[find(tail)] = find(head)
        roots = {find(v) for v in self.vertices}
        if len(roots) != 1:
            raise SurfaceError(f"surface is disconnected ({len(roots)} components)")

    # -- invariants ------------------------------------------------------

    @property
    def euler_characteristic(self) -> int:
        return len(self.vertices) - len(self.edges) + len(self.faces)

    @property
    def boundary_count(self) -> int:
        return len(self.boundary_walks)

    @property
    def genus(self) -> int:
        two_g = 2 - self.euler_characteristic - self.boundary_count
        if two_g < 0 or two_g % 2:
            raise SurfaceError(
                f"inconsistent genus: chi={self.euler_characteristic}, "
                f"boundary={self.boundary_count}"
            )
        return two_g // 2

    # -- paths and chains -------------------------------------------------

    def check_path(self, path: list[Dart], *, closed: bool) -> None:
        if not path:
            raise ValueError("empty path")
        pairs = list(zip(path, path[1:]))
        if closed:
            pairs.append((path[-1], path[0]))
        for d1, d2 in pairs:
            if self.head(d1) != self.tail(d2):
                raise ValueError(f"path breaks between {d1} and {d2}")
            if d2 == reverse(d1):
                raise ValueError(f"path bounces on edge {d1[0]!r}")
        if closed:
            for d1, d2 in pairs:
                if self.head(d1) in self.boundary_vertices:
                    raise ValueError(
                        f"closed path passes through boundary vertex {self.head(d1)!r}"
                    )

    def chain_of(self, path: list[Dart]) -> dict[str, int]:
        chain: dict[str, int] = {}
        for eid, sign in path:
            chain[eid] = chain.get(eid, 0) + sign
        return {e: c for e, c in chain.items() if c}

    def pair(self, path: list[Dart], chain: dict[str, int], *, closed: bool) -> int:
        """Intersection number of ``path`` (pushed to its left) with ``chain``.

        ``chain`` must be a 1-cycle; ``path`` must be a closed interior
        edge-path, or an open path whose interior passages avoid the
        boundary (the two terminal vertices are not swept).
        """
        self.check_path(path, closed=closed)
        passages = list(zip(path, path[1:]))
        if closed:
            passages.append((path[-1], path[0]))
        return sum(self.passage_sum(d_in, d_out, chain) for d_in, d_out in passages)

    def passage_sum(self, d_in: Dart, d_out: Dart, chain: dict[str, int]) -> int:
        """Contribution of one passage (arrive by ``d_in``, leave by ``d_out``)
        to the pushed-left crossing count against ``chain``.

        Sweeps the rotation at the shared vertex counterclockwise from the
        departure ray to the arrival ray; each swept ray (eid, sign)
        contributes ``sign * chain[eid]``.
        """
        v = self.head(d_in)
        rot = self.rotations[v]
        rays = rot.rays
        back = reverse(d_in)
        try:
            i = rays.index(d_out)
        except ValueError:
            raise ValueError(f"dart {d_out} is not a ray at vertex {v!r}")
        total = 0
        steps = 0
        while True:
            stepped_past_gap = rot.has_gap and i == len(rays) - 1
            i = (i + 1) % len(rays)
            if stepped_past_gap:
                raise ValueError(
                    f"passage at vertex {v!r} sweeps across the surface boundary"
                )
            if rays[i] == back:
                break
            eid, sign = rays[i]
            total += sign * chain.get(eid, 0)
            steps += 1
            if steps > len(rays):
                raise ValueError(f"back ray {back} not found at vertex {v!r}")
        return total


class Homology:
    """Integer first homology of a surface, with explicit coordinates."""

    def __init__(self, surface: Surface, *, relative: bool = False):
        self.surface = surface
        self.relative = relative
        if relative:
            edge_ids = sorted(surface.interior_edges)
            vertex_ids = sorted(surface.vertices - surface.boundary_vertices)
        else:
            edge_ids = sorted(surface.edges)
            vertex_ids = sorted(surface.vertices)
        self.edge_ids = edge_ids
        self._edge_pos = {e: i for i, e in enumerate(edge_ids)}
        vertex_pos = {v: i for i, v in enumerate(vertex_ids)}
        face_ids = sorted(surface.faces)

        d1 = linalg.zeros(len(vertex_ids), len(edge_ids))
        for e, j in self._edge_pos.items():
            tail, head = surface.edges[e]
            if head in vertex_pos:
                d1[vertex_pos[head]][j] += 1
            if tail in vertex_pos:
                d1[vertex_pos[tail]][j] -= 1
        if not vertex_ids:
            kernel = linalg.identity(len(edge_ids))
        else:
            kernel = linalg.kernel_basis(d1)
        # Columns of k_mat are the cycle-space basis.
        self._k_mat = [[kernel[b][j] for b in range(len(kernel))] for j in range(len(edge_ids))]
        self._cycle_rank = len(kernel)

        images: list[list[int]] = []
        for fid in face_ids:
            chain = [0] * len(edge_ids)
            for eid, sign in surface.faces[fid]:
                j = self._edge_pos.get(eid)
                if j is not None:
                    chain[j] += sign
            coords = self._cycle_coords(chain)
            images.append(coords)
        y = [[images[f][b] for f in range(len(face_ids))] for b in range(self._cycle_rank)]
        if self._cycle_rank == 0 or not face_ids:
            self._u = linalg.identity(self._cycle_rank)
            self._im_rank = 0
        else:
            d, u, _ = linalg.snf(y)
            diag = [d[i][i] for i in range(min(len(d), len(d[0])))]
            for val in diag:
                if val not in (0, 1):
                    raise SurfaceError(f"surface homology has torsion factor {val}")
            self._u = u
            self._im_rank = sum(1 for val in diag if val)
        self.rank = self._cycle_rank - self._im_rank

    def _cycle_coords(self, chain: list[int]) -> list[int]:
        if self._cycle_rank == 0:
            if any(chain):
                raise ValueError("chain is not a cycle")
            return []
        sol = linalg.solve(self._k_mat, chain)
        if sol is None:
            raise ValueError("chain is not a cycle")
        return sol

    def chain_vector(self, chain: dict[str, int]) -> list[int]:
        vec = [0] * len(self.edge_ids)
        for eid, coeff in chain.items():
            if coeff == 0:
                continue
            j = self._edge_pos.get(eid)
            if j is None:
                if not self.relative:
                    raise ValueError(f"chain uses unknown edge {eid!r}")
                continue  # boundary edges vanish in the relative complex
            vec[j] = coeff
        return vec

    def class_of(self, chain: dict[str, int]) -> list[int]:
        """Coordinates of a 1-cycle chain in the homology basis."""
        y = self._cycle_coords(self.chain_vector(chain))
        w = linalg.mat_vec(self._u, y)
        return w[self._im_rank:]

    def basis_chains(self) -> list[dict[str, int]]:
        """Explicit edge-chains representing the homology basis."""
        u_inv = linalg.unimodular_inverse(self._u)
        out = []
        for b in range(self._im_rank, self._cycle_rank):
            col = [u_inv[i][b] for i in range(self._cycle_rank)]
            chain_vec = linalg.mat_vec(self._k_mat, col)
            chain = {
                self.edge_ids[j]: chain_vec[j]
                for j in range(len(self.edge_ids))
                if chain_vec[j]
            }
            out.append(chain)
        return out
