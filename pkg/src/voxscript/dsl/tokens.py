"""Flat token encoding of programs.

Each statement becomes one step: an integer id plus a fixed row of
``N_ARG_SLOTS`` numbers, zero-padded. Draw ids encode the (semantics, shape)
pair; loops contribute a header step, their body steps, and an end marker.
Id 0 is the vacant token, which carries no content and is dropped on decode.

Row layouts (unused trailing slots are zero):

    draw        x  y  z  g1 g2 g3 g4
    loop trans  i  ux uy uz 0  0  0
    loop rot    i  theta axis(0/1/2) 0 0 0 0
    end / vacant  all zeros
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import NamedTuple

from ..errors import InvalidProgramError, TokenError
from .ast import (
    Axis,
    DrawStmt,
    ForStmt,
    LoopMode,
    Program,
    Semantics,
    ShapeKind,
    canon_number,
    format_number,
    validate_program,
)

N_ARG_SLOTS = 7

_SEMANTICS = tuple(Semantics)
_SHAPES = tuple(ShapeKind)
_AXES = tuple(Axis)

VACANT_ID = 0
_FIRST_DRAW_ID = 1
_N_DRAW_IDS = len(_SEMANTICS) * len(_SHAPES)
FOR_TRANSLATION_ID = _FIRST_DRAW_ID + _N_DRAW_IDS
FOR_ROTATION_ID = FOR_TRANSLATION_ID + 1
END_FOR_ID = FOR_ROTATION_ID + 1
VOCAB_SIZE = END_FOR_ID + 1

_DRAW_ID = {
    (sem, shp): _FIRST_DRAW_ID + i * len(_SHAPES) + j
    for i, sem in enumerate(_SEMANTICS)
    for j, shp in enumerate(_SHAPES)
}
_DRAW_BY_ID = {v: k for k, v in _DRAW_ID.items()}


def draw_token_id(semantics: Semantics, shape: ShapeKind) -> int:
    return _DRAW_ID[(semantics, shape)]


def vocabulary() -> dict:
    """Stable id -> name table, identical across runs and platforms."""
    table = {VACANT_ID: "Vacant"}
    for (sem, shp), i in _DRAW_ID.items():
        table[i] = f"Draw:{sem.value}:{shp.value}"
    table[FOR_TRANSLATION_ID] = "ForTrans"
    table[FOR_ROTATION_ID] = "ForRot"
    table[END_FOR_ID] = "EndFor"
    return table


class TokenStep(NamedTuple):
    id: int
    args: tuple


@dataclass(frozen=True)
class TokenProgram:
    steps: tuple = ()

    def __post_init__(self):
        object.__setattr__(
            self,
            "steps",
            tuple(TokenStep(int(i), tuple(canon_number(a) for a in args)) for i, args in self.steps),
        )

    def __len__(self):
        return len(self.steps)


def _row(*values) -> tuple:
    vals = tuple(canon_number(v) for v in values)
    return vals + (0,) * (N_ARG_SLOTS - len(vals))


def tokenize(p: Program) -> TokenProgram:
    """Encode a valid program as a pre-order step sequence."""
    report = validate_program(p)
    if not report.ok:
        raise InvalidProgramError(report)
    steps: list[TokenStep] = []

    def walk(stmt):
        if isinstance(stmt, DrawStmt):
            steps.append(TokenStep(draw_token_id(stmt.semantics, stmt.shape),
                                   _row(*stmt.position, *stmt.geometry)))
            return
        if stmt.mode is LoopMode.TRANSLATION:
            steps.append(TokenStep(FOR_TRANSLATION_ID, _row(stmt.times, *stmt.step)))
        else:
            steps.append(TokenStep(FOR_ROTATION_ID,
                                   _row(stmt.times, stmt.angle, _AXES.index(stmt.axis))))
        for s in stmt.body:
            walk(s)
        steps.append(TokenStep(END_FOR_ID, _row()))

    for s in p.statements:
        walk(s)
    return TokenProgram(tuple(steps))


def _int_arg(v, step_index, what):
    v = canon_number(v)
    if not isinstance(v, int):
        raise TokenError(step_index, f"{what} must be an integer, got {v!r}")
    return v


def _decode_draw(step_id, args, step_index) -> DrawStmt:
    sem, shp = _DRAW_BY_ID[step_id]
    pos = tuple(_int_arg(a, step_index, "position") for a in args[:3])
    lo, hi = 2, 2
    if shp in (ShapeKind.RECTANGLE, ShapeKind.LINE):
        lo = hi = 3
    elif shp is ShapeKind.CUBOID:
        lo, hi = 3, 4
    n = hi if (hi > lo and args[3 + hi - 1] != 0) else lo
    return DrawStmt(sem, shp, pos, tuple(args[3:3 + n]))


def detokenize(t: TokenProgram) -> Program:
    """Exact inverse of :func:`tokenize` on its image; vacant steps vanish."""
    root: list = []
    stack: list[tuple] = []  # (header step index, header TokenStep, body list)
    for idx, step in enumerate(t.steps):
        sid, args = step.id, step.args
        target = stack[-1][2] if stack else root
        if sid == VACANT_ID:
            continue
        if sid == END_FOR_ID:
            if not stack:
                raise TokenError(idx, "end-of-loop marker without an open loop")
            hidx, header, body = stack.pop()
            target = stack[-1][2] if stack else root
            if header.id == FOR_TRANSLATION_ID:
                times = _int_arg(header.args[0], hidx, "times")
                u = tuple(_int_arg(a, hidx, "step u") for a in header.args[1:4])
                target.append(ForStmt.translation(times, u, body))
            else:
                times = _int_arg(header.args[0], hidx, "times")
                code = _int_arg(header.args[2], hidx, "axis code")
                if not 0 <= code < len(_AXES):
                    raise TokenError(hidx, f"axis code {code} outside 0..{len(_AXES) - 1}")
                target.append(ForStmt.rotation(times, header.args[1], _AXES[code], body))
        elif sid in (FOR_TRANSLATION_ID, FOR_ROTATION_ID):
            stack.append((idx, step, []))
        elif sid in _DRAW_BY_ID:
            target.append(_decode_draw(sid, args, idx))
        else:
            raise TokenError(idx, f"unknown token id {sid}")
    if stack:
        raise TokenError(stack[-1][0], "loop header never closed")
    return Program(tuple(root))


def format_token_lines(t: TokenProgram) -> str:
    """One step per line: ``id a1 .. a7`` in decimal."""
    lines = [" ".join([str(s.id)] + [format_number(a) for a in s.args]) for s in t.steps]
    return "".join(line + "\n" for line in lines)


def _parse_number(text, lineno):
    try:
        return int(text)
    except ValueError:
        pass
    try:
        return canon_number(float(text))
    except ValueError:
        raise TokenError(lineno, f"not a number: {text!r}") from None


def parse_token_lines(src: str) -> TokenProgram:
    steps = []
    for lineno, line in enumerate(src.splitlines()):
        if not line.strip():
            continue
        fields = line.split()
        if len(fields) != 1 + N_ARG_SLOTS:
            raise TokenError(lineno, f"expected {1 + N_ARG_SLOTS} fields, got {len(fields)}")
        sid = _parse_number(fields[0], lineno)
        if not isinstance(sid, int) or sid < 0:
            raise TokenError(lineno, f"id must be a non-negative integer, got {fields[0]!r}")
        steps.append(TokenStep(sid, tuple(_parse_number(f, lineno) for f in fields[1:])))
    return TokenProgram(tuple(steps))


def token_program_to_json(t: TokenProgram) -> dict:
    """Self-describing container: vocabulary table plus step rows."""
    return {
        "n_ids": VOCAB_SIZE,
        "n_args": N_ARG_SLOTS,
        "vocabulary": {str(k): v for k, v in vocabulary().items()},
        "steps": [[s.id, list(s.args)] for s in t.steps],
    }


def token_program_from_json(obj: dict) -> TokenProgram:
    steps = []
    for idx, entry in enumerate(obj.get("steps", [])):
        if len(entry) != 2 or len(entry[1]) != N_ARG_SLOTS:
            raise TokenError(idx, "each step must be [id, [7 args]]")
        steps.append(TokenStep(int(entry[0]), tuple(canon_number(a) for a in entry[1])))
    return TokenProgram(tuple(steps))
