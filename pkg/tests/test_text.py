"""Text grammar: canonical printing, parsing, and error reporting."""
import pytest

from voxscript.dsl import (Axis, DrawStmt, ForStmt, Program, Semantics, ShapeKind,
                           parse_text, print_text)
from voxscript.errors import DslSemanticError, DslSyntaxError

from randprog import random_program

CANONICAL = """\
draw(Top, Cub, P=(8,20,8), G=(2,16,16))
for(Trans, i=4, u=(0,0,6)) {
  draw(Leg, Cyl, P=(4,0,4), G=(18,2))
}
for(Rot, i=4, theta=90, axis=Y) {
  draw(Leg, Cub, P=(4,0,15), G=(18,2,2))
}
"""


def test_print_canonical_form():
    p = Program((
        DrawStmt(Semantics.TOP, ShapeKind.CUBOID, (8, 20, 8), (2, 16, 16)),
        ForStmt.translation(4, (0, 0, 6),
                            (DrawStmt(Semantics.LEG, ShapeKind.CYLINDER, (4, 0, 4), (18, 2)),)),
        ForStmt.rotation(4, 90, Axis.Y,
                         (DrawStmt(Semantics.LEG, ShapeKind.CUBOID, (4, 0, 15), (18, 2, 2)),)),
    ))
    assert print_text(p) == CANONICAL


def test_parse_canonical_form():
    p = parse_text(CANONICAL)
    assert len(p.statements) == 3
    assert print_text(p) == CANONICAL


def test_nested_loop_indentation():
    src = ("for(Trans, i=2, u=(12,0,0)) {\n"
           "  for(Trans, i=2, u=(0,0,12)) {\n"
           "    draw(Leg, Cub, P=(9,0,9), G=(20,2,2))\n"
           "  }\n"
           "}\n")
    assert print_text(parse_text(src)) == src


def test_whitespace_insensitive_parse():
    a = parse_text("draw(Top,Cub,P=(8,20,8),G=(2,16,16))")
    b = parse_text("  draw( Top , Cub , P=( 8 , 20 , 8 ) , G=( 2 , 16 , 16 ) )  \n")
    assert a == b


def test_tilted_cuboid_roundtrip():
    src = "draw(Back, Cub, P=(10,11,7), G=(12,3,18,-15))\n"
    assert print_text(parse_text(src)) == src


def test_roundtrip_random_programs():
    for seed in range(100):
        p = random_program(seed)
        assert parse_text(print_text(p)) == p


def test_syntax_error_position():
    with pytest.raises(DslSyntaxError) as exc:
        parse_text("draw(Top, Cub, P=(8,20,8) G=(2,16,16))")
    assert exc.value.line == 1
    assert exc.value.col > 1
    assert exc.value.expected


def test_syntax_error_unknown_name():
    with pytest.raises(DslSyntaxError):
        parse_text("draw(Shelf, Cub, P=(0,0,0), G=(1,1,1))")
    with pytest.raises(DslSyntaxError):
        parse_text("draw(Top, Sphere, P=(0,0,0), G=(1,1))")


def test_syntax_error_bad_character():
    with pytest.raises(DslSyntaxError) as exc:
        parse_text("draw(Top, Cub, P=(0,0,0), G=(1,1,1));")
    assert exc.value.line == 1


def test_syntax_error_unclosed_block():
    with pytest.raises(DslSyntaxError):
        parse_text("for(Trans, i=2, u=(0,0,1)) {\n  draw(Top, Cub, P=(0,0,0), G=(1,1,1))\n")


def test_geometry_arity_checked_at_parse():
    with pytest.raises(DslSyntaxError):
        parse_text("draw(Leg, Cyl, P=(0,0,0), G=(1,1,1))")
    with pytest.raises(DslSyntaxError):
        parse_text("draw(Top, Cub, P=(0,0,0), G=(1,1))")


def test_semantic_error_on_invalid_program():
    with pytest.raises(DslSemanticError) as exc:
        parse_text("draw(Top, Cub, P=(99,0,0), G=(2,2,2))")
    assert exc.value.path == "stmt[0]"


def test_validate_flag_skips_semantics():
    p = parse_text("draw(Top, Cub, P=(99,0,0), G=(2,2,2))", validate=False)
    assert p.statements[0].position == (99, 0, 0)


def test_rotation_axis_names():
    for ax in "XYZ":
        p = parse_text(f"for(Rot, i=2, theta=45, axis={ax}) {{\n"
                       "  draw(Leg, Cyl, P=(4,0,4), G=(18,2))\n}\n")
        assert p.statements[0].axis is Axis[ax]


def test_negative_numbers():
    p = parse_text("for(Trans, i=2, u=(-3,0,4)) {\n"
                   "  draw(Back, Cub, P=(10,11,7), G=(12,3,18,-15))\n}\n")
    f = p.statements[0]
    assert f.step == (-3, 0, 4)
    assert f.body[0].geometry[3] == -15


def test_empty_source_is_empty_program():
    assert parse_text("") == Program(())
    assert print_text(Program(())) == ""
