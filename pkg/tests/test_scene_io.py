from fractions import Fraction

import pytest

from divide_forge.errors import SceneSyntaxError, SceneValidationError
from divide_forge.scene_io import (
    OUTER_RADIUS,
    CurveSpec,
    Scene,
    parse_scene,
    print_scene,
)


ARC = """\
disk 0
interval a (-10,0) (10,0)
"""

RING = """\
# a circle around the single hole
disk 1
hole (0,0) 2
circle c (5,5) (-5,5) (-5,-5) (5,-5)
"""


def test_parse_simple_arc():
    s = parse_scene(ARC)
    assert s.n_holes == 0
    assert len(s.components) == 1
    c = s.components[0]
    assert c.kind == "interval"
    assert c.label == "a"
    assert c.vertices == ((Fraction(-10), Fraction(0)), (Fraction(10), Fraction(0)))
    assert not c.closed


def test_parse_ring_with_hole_and_comment():
    s = parse_scene(RING)
    assert s.n_holes == 1
    assert s.holes[0].radius == 2
    assert s.components[0].closed


def test_print_parse_roundtrip():
    text = (
        "disk 1\n"
        "hole (3,0) 3/2\n"
        "interval a (-10,0) (-2,5) (3/2,0)\n"
        "circle mid (-2,1) (-4,1) (-4,-1) (-2,-1)\n"
        "oriented_circle o (-2,4) (-5,4) (-5,7) (-2,7)\n"
        "front f cusp@0 cusp@2 side=left (4,5) (6,6) (8,5) (6,4)\n"
    )
    s = parse_scene(text)
    assert print_scene(s) == text
    assert parse_scene(print_scene(s)) == s


def test_decimal_coordinates_are_exact():
    s = parse_scene("disk 0\ninterval a (-10,0) (0.5,0.25) (10,0)\n")
    assert s.components[0].vertices[1] == (Fraction(1, 2), Fraction(1, 4))


def test_syntax_error_carries_line_and_column():
    with pytest.raises(SceneSyntaxError) as ei:
        parse_scene("disk 0\ninterval a (-10,0) (oops,0)\n")
    assert ei.value.line == 2
    assert ei.value.column == 20
    assert "line 2" in str(ei.value)


def test_missing_disk_directive():
    with pytest.raises(SceneSyntaxError):
        parse_scene("interval a (-10,0) (10,0)\n")


def test_unknown_directive():
    with pytest.raises(SceneSyntaxError) as ei:
        parse_scene("disk 0\nsquiggle a (1,1)\n")
    assert "squiggle" in str(ei.value)


def test_duplicate_label_rejected():
    with pytest.raises(SceneValidationError) as ei:
        parse_scene("disk 0\ninterval a (-10,0) (10,0)\ncircle a (1,1) (2,1) (2,2)\n")
    assert "duplicate label" in str(ei.value)


def test_hole_count_mismatch():
    with pytest.raises(SceneValidationError):
        parse_scene("disk 2\nhole (0,0) 1\n")


def test_hole_overlapping_outer_boundary():
    with pytest.raises(SceneValidationError) as ei:
        parse_scene("disk 1\nhole (9,0) 2\n")
    assert "outer" in str(ei.value)


def test_holes_overlapping_each_other():
    with pytest.raises(SceneValidationError):
        parse_scene("disk 2\nhole (-2,0) 2\nhole (2,0) 2\n")


def test_endpoint_not_on_boundary():
    with pytest.raises(SceneValidationError) as ei:
        parse_scene("disk 0\ninterval a (-9,0) (10,0)\n")
    assert "not on a boundary circle" in str(ei.value)


def test_endpoint_on_hole_is_fine():
    s = parse_scene("disk 1\nhole (0,0) 2\ninterval a (2,0) (10,0)\n")
    assert s.components[0].kind == "interval"


def test_tangential_departure_rejected():
    # (6,8) is on the outer circle; moving toward (10,8) is along the tangent
    # direction? no -- make it exactly tangent: tangent at (6,8) is (8,-6) dir.
    with pytest.raises(SceneValidationError) as ei:
        parse_scene("disk 0\ninterval a (6,8) (10,5) (10/17,0) (-10,0)\n")
    assert "tangentially" in str(ei.value)


def test_segment_through_hole_rejected():
    with pytest.raises(SceneValidationError) as ei:
        parse_scene("disk 1\nhole (0,0) 2\ninterval a (-10,0) (10,0)\n")
    assert "touches boundary circle" in str(ei.value)


def test_chord_of_hole_rejected():
    with pytest.raises(SceneValidationError):
        parse_scene("disk 1\nhole (0,0) 2\ninterval a (-2,0) (2,0)\n")


def test_vertex_outside_disk_rejected():
    with pytest.raises(SceneValidationError):
        parse_scene("disk 0\ncircle c (0,0) (20,0) (0,3)\n")


def test_zero_length_segment_rejected():
    with pytest.raises(SceneValidationError):
        parse_scene("disk 0\ncircle c (1,1) (1,1) (2,2)\n")


def test_unmarked_reversal_corner_rejected():
    with pytest.raises(SceneValidationError) as ei:
        parse_scene("disk 0\ninterval a (-10,0) (5,0) (0,0) (0,10)\n")
    assert "reversal" in str(ei.value)


def test_front_cusp_rules():
    # odd cusp count
    with pytest.raises(SceneValidationError):
        parse_scene("disk 0\nfront f cusp@0 side=left (6,5) (4,7) (6,6)\n")
    # cusp must be a reversal
    with pytest.raises(SceneValidationError):
        parse_scene("disk 0\nfront f cusp@0 cusp@1 side=left (0,0) (2,0) (2,2) (0,2)\n")
    # out-of-range index
    with pytest.raises(SceneValidationError):
        parse_scene("disk 0\nfront f cusp@7 cusp@8 side=left (6,5) (4,7) (6,6)\n")


def test_front_side_flips_at_cusps():
    s = parse_scene("disk 0\nfront f cusp@0 cusp@2 side=left (4,5) (6,6) (8,5) (6,4)\n")
    f = s.components[0]
    assert f.side_of_segment(0) == "left"
    assert f.side_of_segment(1) == "left"
    assert f.side_of_segment(2) == "right"
    assert f.side_of_segment(3) == "right"


def test_front_requires_side():
    with pytest.raises(SceneSyntaxError):
        parse_scene("disk 0\nfront f (6,5) (4,7) (6,6)\n")


def test_boundary_circles_listing():
    s = parse_scene("disk 1\nhole (1,1) 1/2\n")
    names = [b[0] for b in s.boundary_circles()]
    assert names == ["outer", "hole0"]
    assert s.boundary_circles()[0][2] == OUTER_RADIUS
