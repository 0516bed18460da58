"""AST construction, canonicalization, and program validation."""
import pytest

from voxscript.dsl import (Axis, DEFAULT_LIMITS, DrawStmt, ForStmt, GEOMETRY_ARITY,
                           Limits, LoopMode, Program, Semantics, ShapeKind, blocks,
                           validate_program)

from randprog import random_program


def leg(pos=(4, 0, 4), geom=(18, 2)):
    return DrawStmt(Semantics.LEG, ShapeKind.CYLINDER, pos, geom)


def test_enum_sizes():
    assert len(Semantics) == 12
    assert len(ShapeKind) == 6
    assert [s.value for s in Semantics] == [
        "Leg", "Top", "Layer", "Support", "Base", "Sideboard",
        "HBar", "VBoard", "Locker", "Back", "BackSup", "Beam"]
    assert [s.value for s in ShapeKind] == ["Cub", "Cyl", "Cir", "Sqr", "Rect", "Line"]


def test_geometry_arity_table():
    assert GEOMETRY_ARITY[ShapeKind.CUBOID] == (3, 4)
    assert GEOMETRY_ARITY[ShapeKind.RECTANGLE] == (3, 3)
    for k in (ShapeKind.CYLINDER, ShapeKind.CIRCLE, ShapeKind.SQUARE):
        assert GEOMETRY_ARITY[k] == (2, 2)
    assert GEOMETRY_ARITY[ShapeKind.LINE] == (3, 3)


def test_draw_canonicalizes_numbers():
    d = DrawStmt(Semantics.TOP, ShapeKind.CUBOID, (8.0, 20.0, 8.0), (2.0, 16.0, 16.0))
    assert d.position == (8, 20, 8)
    assert all(isinstance(v, int) for v in d.position)
    assert d.geometry == (2, 16, 16)


def test_cuboid_zero_tilt_dropped():
    d = DrawStmt(Semantics.TOP, ShapeKind.CUBOID, (0, 0, 0), (2, 3, 4, 0))
    assert d.geometry == (2, 3, 4)
    d = DrawStmt(Semantics.TOP, ShapeKind.CUBOID, (0, 0, 0), (2, 3, 4, -10))
    assert d.geometry == (2, 3, 4, -10)


def test_for_constructors():
    f = ForStmt.translation(4, (0, 0, 6), (leg(),))
    assert f.mode is LoopMode.TRANSLATION and f.times == 4 and f.step == (0, 0, 6)
    g = ForStmt.rotation(4, 90, Axis.Y, (leg(),))
    assert g.mode is LoopMode.ROTATION and g.angle == 90 and g.axis is Axis.Y


def test_blocks_enumerates_top_level():
    f = ForStmt.translation(2, (1, 0, 0), (leg(),))
    p = Program((leg(), f))
    assert list(blocks(p)) == [leg(), f]


def test_validate_ok_program():
    p = Program((leg(), ForStmt.rotation(4, 90, Axis.Y, (leg(),))))
    assert validate_program(p).violations == ()


def test_validate_position_out_of_range():
    p = Program((leg(pos=(32, 0, 4)),))
    report = validate_program(p)
    assert report.violations
    assert report.violations[0].path == "stmt[0]"


def test_validate_extent_bounds():
    assert validate_program(Program((leg(geom=(0, 2)),))).violations
    assert validate_program(Program((leg(geom=(33, 2)),))).violations
    assert not validate_program(Program((leg(geom=(32, 2)),))).violations


def test_validate_tilt_range():
    bad = DrawStmt(Semantics.TOP, ShapeKind.CUBOID, (0, 0, 0), (2, 3, 4, 46))
    assert validate_program(Program((bad,))).violations
    ok = DrawStmt(Semantics.TOP, ShapeKind.CUBOID, (0, 0, 0), (2, 3, 4, 45))
    assert not validate_program(Program((ok,))).violations


def test_validate_times_minimum():
    f = ForStmt.translation(1, (0, 0, 6), (leg(),))
    report = validate_program(Program((f,)))
    assert any("times" in v.message for v in report.violations)


def test_validate_nesting_depth():
    f = leg()
    for _ in range(4):
        f = ForStmt.translation(2, (0, 0, 1), (f,))
    assert validate_program(Program((f,))).violations
    f = leg()
    for _ in range(3):
        f = ForStmt.translation(2, (0, 0, 1), (f,))
    assert not validate_program(Program((f,))).violations


def test_validate_top_level_count():
    p = Program(tuple(leg() for _ in range(33)))
    assert validate_program(p).violations
    p = Program(tuple(leg() for _ in range(32)))
    assert not validate_program(p).violations


def test_validate_expansion_budget():
    # 16 * 16 * 16 = 4096 expanded draws > 1024
    inner = ForStmt.translation(16, (0, 0, 1), (leg(),))
    mid = ForStmt.translation(16, (0, 1, 0), (inner,))
    outer = ForStmt.translation(16, (1, 0, 0), (mid,))
    report = validate_program(Program((outer,)))
    assert any("expan" in v.message.lower() for v in report.violations)


def test_violation_paths_nested():
    bad = leg(pos=(0, -1, 0))
    f = ForStmt.translation(2, (0, 0, 1), (leg(), bad))
    report = validate_program(Program((leg(), f)))
    assert any(v.path == "stmt[1].body[1]" for v in report.violations)


def test_limits_defaults():
    assert DEFAULT_LIMITS == Limits(max_top_level=32, max_expanded=1024,
                                    max_for_depth=3, max_coord=31,
                                    max_extent=32, max_tilt=45.0)


def test_custom_limits():
    p = Program(tuple(leg() for _ in range(5)))
    assert validate_program(p, Limits(max_top_level=4)).violations


def test_random_programs_validate():
    for seed in range(50):
        random_program(seed)  # asserts internally


def test_statements_hashable_and_equal():
    assert leg() == leg()
    assert len({leg(), leg()}) == 1
    f1 = ForStmt.rotation(4, 90, Axis.Y, (leg(),))
    f2 = ForStmt.rotation(4, 90, Axis.Y, (leg(),))
    assert f1 == f2 and hash(f1) == hash(f2)
