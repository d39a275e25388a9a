from itertools import product

import pytest

from divide_forge.divide_core import (
    check_admissible,
    coloring,
    divide_arrangement,
    extract_regions,
    region_adjacency,
)
from divide_forge.errors import NotBipartite
from divide_forge.scene_io import parse_scene, validate_scene


def load(text):
    scene = parse_scene(text)
    validate_scene(scene)
    return scene


CHORD = """
disk 0
interval a (-10,0) (10,0)
"""

PLUS = """
disk 0
interval a (-10,0) (10,0)
interval b (0,-10) (0,10)
"""

CIRCLE_D0 = """
disk 0
circle c (0,4) (-4,-2) (4,-2)
"""

RING_D1 = """
disk 1
hole (0,0) 2
circle r (0,5) (-5,-3) (5,-3)
"""

LOOP = """
disk 0
interval a (-10,0) (-2,-2) (2,2) (2,-2) (-2,2) (-6,8)
"""

EMPTY = """
disk 0
"""

RADIAL_WALL = """
disk 1
hole (0,0) 2
interval w (0,-2) (0,-10)
"""

TWO_CHORDS = """
disk 0
interval a (-6,-8) (-6,8)
interval b (6,-8) (6,8)
"""

WHEEL3 = """
disk 1
hole (0,0) 2
circle r (0,5) (-5,-3) (5,-3)
interval s (0,-2) (0,-10)
interval e (2,0) (10,0)
interval w (-2,0) (-10,0)
"""

ADMISSIBLE = [CHORD, PLUS, CIRCLE_D0, RING_D1, LOOP]
REJECTED = [EMPTY, RADIAL_WALL, TWO_CHORDS, WHEEL3]


def regions_of(text):
    arr = divide_arrangement(load(text))
    return arr, extract_regions(arr)


def brute_force_bipartite(pairs, n):
    """Try every 2-coloring of n regions; None if impossible."""
    for bits in product((0, 1), repeat=n):
        if all(bits[a] != bits[b] for a, b, _ in pairs):
            return bits
    return None


# ---------------------------------------------------------------------------
# regions


def test_chord_splits_disk_in_two():
    arr, regions = regions_of(CHORD)
    assert len(regions) == 2
    assert all(not r.interior for r in regions)
    assert all(r.exterior_type == "disk" for r in regions)


def test_plus_sign_four_quadrants():
    arr, regions = regions_of(PLUS)
    assert len(regions) == 4
    assert all(r.exterior_type == "disk" for r in regions)
    pairs = region_adjacency(arr, regions)
    assert len(pairs) == 4
    degree = {r.id: 0 for r in regions}
    for a, b, _ in pairs:
        assert a != b
        degree[a] += 1
        degree[b] += 1
    assert all(d == 2 for d in degree.values())


def test_circle_gives_disk_plus_annulus():
    arr, regions = regions_of(CIRCLE_D0)
    assert len(regions) == 2
    kinds = sorted((r.interior, r.exterior_type) for r in regions)
    assert kinds == [(False, "annulus"), (True, None)]


def test_ring_in_holed_disk_two_annuli():
    arr, regions = regions_of(RING_D1)
    assert len(regions) == 2
    assert all(r.exterior_type == "annulus" for r in regions)
    inner = next(r for r in regions if any(
        arr.components[c].name == "hole0" for c in r.touched_boundaries))
    assert inner.touched_boundaries != ()


def test_loop_regions():
    arr, regions = regions_of(LOOP)
    assert len(regions) == 3
    assert sum(r.interior for r in regions) == 1
    loop_interior = next(r for r in regions if r.interior)
    assert len(loop_interior.walks) == 1


def test_empty_scene_single_region():
    arr, regions = regions_of(EMPTY)
    assert len(regions) == 1
    assert regions[0].exterior_type == "disk"


# ---------------------------------------------------------------------------
# admissibility


@pytest.mark.parametrize("text", ADMISSIBLE)
def test_admissible_scenes_pass(text):
    report = check_admissible(load(text))
    assert report.admissible, report.failures
    assert report.failures == []
    assert report.failed() == []


def test_empty_divide_rejected():
    report = check_admissible(load(EMPTY))
    assert not report.connected
    assert report.failed() == ["connected"]
    assert any("empty" in msg for msg in report.failures)


def test_radial_wall_rejected():
    report = check_admissible(load(RADIAL_WALL))
    assert report.connected
    assert report.interior_disks
    assert not report.exterior_shape
    assert not report.two_colorable
    assert not report.admissible


def test_two_chords_disconnected():
    report = check_admissible(load(TWO_CHORDS))
    assert not report.connected
    assert any("2 pieces" in msg for msg in report.failures)
    # the middle band touches the boundary in two separate arcs
    assert not report.exterior_shape


def test_wheel3_fails_only_coloring():
    report = check_admissible(load(WHEEL3))
    assert report.connected
    assert report.interior_disks
    assert report.exterior_shape
    assert not report.two_colorable
    assert any("odd cycle" in msg for msg in report.failures)


def test_report_as_dict_roundtrip():
    d = check_admissible(load(CHORD)).as_dict()
    assert d["admissible"] is True
    assert d["failures"] == []
    assert set(d) == {"admissible", "connected", "interior_disks",
                      "exterior_shape", "two_colorable", "failures"}


# ---------------------------------------------------------------------------
# coloring


@pytest.mark.parametrize("text", ADMISSIBLE)
def test_coloring_is_checkerboard(text):
    arr, regions = regions_of(text)
    color = coloring(arr, regions)
    for a, b, _ in region_adjacency(arr, regions):
        assert color[a] != color[b]
    assert color[0] == 1  # canonical: smallest region id is black
    flipped = coloring(arr, regions, flip=True)
    assert flipped == {k: 1 - v for k, v in color.items()}


@pytest.mark.parametrize("text", ADMISSIBLE + REJECTED)
def test_coloring_agrees_with_brute_force(text):
    arr, regions = regions_of(text)
    pairs = region_adjacency(arr, regions)
    witness = brute_force_bipartite(pairs, len(regions))
    try:
        coloring(arr, regions)
        assert witness is not None
    except NotBipartite:
        assert witness is None


def test_self_adjacent_region_cycle_witness():
    arr, regions = regions_of(RADIAL_WALL)
    with pytest.raises(NotBipartite) as exc:
        coloring(arr, regions)
    assert len(exc.value.cycle) == 1


def test_wheel3_odd_cycle_witness():
    arr, regions = regions_of(WHEEL3)
    with pytest.raises(NotBipartite) as exc:
        coloring(arr, regions)
    cycle = exc.value.cycle
    assert len(cycle) % 2 == 1
    assert len(cycle) >= 3
    adj = set()
    for a, b, _ in region_adjacency(arr, regions):
        adj.add((a, b))
        adj.add((b, a))
    for i, a in enumerate(cycle):
        b = cycle[(i + 1) % len(cycle)]
        assert (a, b) in adj
    assert len(set(cycle)) == len(cycle)


def test_loop_coloring_shape():
    # the loop interior borders exactly one of the exterior pieces; the two
    # exterior pieces border each other along the tails
    arr, regions = regions_of(LOOP)
    color = coloring(arr, regions)
    interior = next(r.id for r in regions if r.interior)
    neighbours = {r.id: set() for r in regions}
    for a, b, _ in region_adjacency(arr, regions):
        neighbours[a].add(b)
        neighbours[b].add(a)
    assert len(neighbours[interior]) == 1
    (outside_loop,) = neighbours[interior]
    assert color[interior] != color[outside_loop]
    exteriors = [r.id for r in regions if not r.interior]
    assert color[exteriors[0]] != color[exteriors[1]]
