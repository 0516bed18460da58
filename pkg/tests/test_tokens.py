"""Token codec: id layout, encode/decode, line and JSON containers."""
import json

import pytest

from voxscript.dsl import (Axis, DrawStmt, ForStmt, N_ARG_SLOTS, Program, Semantics,
                           ShapeKind, TokenProgram, TokenStep, VOCAB_SIZE, detokenize,
                           draw_token_id, format_token_lines, parse_token_lines,
                           token_program_from_json, token_program_to_json, tokenize,
                           vocabulary)
from voxscript.errors import TokenError

from randprog import random_program


def test_id_layout():
    assert N_ARG_SLOTS == 7
    assert VOCAB_SIZE == 76
    assert draw_token_id(Semantics.LEG, ShapeKind.CUBOID) == 1
    assert draw_token_id(Semantics.LEG, ShapeKind.LINE) == 6
    assert draw_token_id(Semantics.TOP, ShapeKind.CUBOID) == 7
    assert draw_token_id(Semantics.BEAM, ShapeKind.LINE) == 72


def test_vocabulary_table():
    vocab = vocabulary()
    assert len(vocab) == VOCAB_SIZE
    assert vocab[0] == "Vacant"
    assert vocab[73] == "ForTrans"
    assert vocab[74] == "ForRot"
    assert vocab[75] == "EndFor"
    assert "Leg" in vocab[1] and "Cub" in vocab[1]


def test_tokenize_known_program():
    p = Program((
        DrawStmt(Semantics.TOP, ShapeKind.CUBOID, (8, 20, 8), (2, 16, 16)),
        ForStmt.translation(4, (0, 0, 6),
                            (DrawStmt(Semantics.LEG, ShapeKind.CYLINDER, (4, 0, 4), (18, 2)),)),
        ForStmt.rotation(4, 90, Axis.Y,
                         (DrawStmt(Semantics.LEG, ShapeKind.CUBOID, (4, 0, 15), (18, 2, 2)),)),
    ))
    t = tokenize(p)
    rows = [(s.id,) + tuple(s.args) for s in t.steps]
    assert rows == [
        (7, 8, 20, 8, 2, 16, 16, 0),
        (73, 4, 0, 0, 6, 0, 0, 0),
        (2, 4, 0, 4, 18, 2, 0, 0),
        (75, 0, 0, 0, 0, 0, 0, 0),
        (74, 4, 90, 1, 0, 0, 0, 0),
        (1, 4, 0, 15, 18, 2, 2, 0),
        (75, 0, 0, 0, 0, 0, 0, 0),
    ]


def test_roundtrip_random_programs():
    for seed in range(100):
        p = random_program(seed)
        assert detokenize(tokenize(p)) == p


def test_vacant_steps_dropped():
    p = random_program(3)
    t = tokenize(p)
    padded = TokenProgram(t.steps[:1] + (TokenStep(0, (0,) * 7),) + t.steps[1:])
    assert detokenize(padded) == p


def test_cuboid_tilt_uses_seventh_slot():
    d = DrawStmt(Semantics.BACK, ShapeKind.CUBOID, (10, 11, 7), (12, 3, 18, -15))
    t = tokenize(Program((d,)))
    assert tuple(t.steps[0].args) == (10, 11, 7, 12, 3, 18, -15)
    assert detokenize(t).statements[0].geometry == (12, 3, 18, -15)


def test_end_without_open():
    with pytest.raises(TokenError) as exc:
        detokenize(TokenProgram((TokenStep(75, (0,) * 7),)))
    assert exc.value.step == 0


def test_unclosed_loop():
    with pytest.raises(TokenError):
        detokenize(TokenProgram((TokenStep(73, (2, 1, 0, 0, 0, 0, 0)),)))


def test_unknown_id():
    with pytest.raises(TokenError):
        detokenize(TokenProgram((TokenStep(76, (0,) * 7),)))
    with pytest.raises(TokenError):
        detokenize(TokenProgram((TokenStep(-1, (0,) * 7),)))


def test_bad_axis_code():
    with pytest.raises(TokenError):
        detokenize(TokenProgram((
            TokenStep(74, (2, 90, 3, 0, 0, 0, 0)),
            TokenStep(1, (0, 0, 0, 1, 1, 1, 0)),
            TokenStep(75, (0,) * 7),
        )))


def test_line_format_roundtrip():
    for seed in range(30):
        t = tokenize(random_program(seed))
        assert parse_token_lines(format_token_lines(t)) == t


def test_line_format_shape():
    t = tokenize(random_program(1))
    for line in format_token_lines(t).strip().splitlines():
        assert len(line.split()) == 1 + N_ARG_SLOTS


def test_line_format_errors():
    with pytest.raises(TokenError):
        parse_token_lines("1 2 3\n")
    with pytest.raises(TokenError):
        parse_token_lines("x 0 0 0 0 0 0 0\n")


def test_json_container_roundtrip():
    t = tokenize(random_program(5))
    blob = token_program_to_json(t)
    assert blob["n_ids"] == VOCAB_SIZE
    assert blob["n_args"] == N_ARG_SLOTS
    assert blob["vocabulary"]["75"] == "EndFor" or blob["vocabulary"][75] == "EndFor"
    json.dumps(blob)  # must be serializable as-is
    assert token_program_from_json(blob) == t


def test_tokenize_rejects_invalid_program():
    from voxscript.errors import InvalidProgramError
    bad = Program((DrawStmt(Semantics.LEG, ShapeKind.CYLINDER, (99, 0, 0), (18, 2)),))
    with pytest.raises(InvalidProgramError):
        tokenize(bad)
