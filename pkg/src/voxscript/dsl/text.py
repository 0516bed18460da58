"""Text form of programs: a small recursive-descent parser and a printer.

The surface syntax is one statement per line:

    draw(Top, Cub, P=(8,20,8), G=(2,16,16))
    for(Trans, i=4, u=(0,0,6)) {
      draw(Leg, Cyl, P=(4,0,4), G=(18,2))
    }
    for(Rot, i=4, theta=90, axis=Y) { ... }

Whitespace and newlines are insignificant to the parser; the printer emits
the canonical layout (2-space indent per nesting level).
"""
from __future__ import annotations

from typing import NamedTuple

from ..errors import DslSemanticError, DslSyntaxError
from .ast import (
    Axis,
    DrawStmt,
    ForStmt,
    GEOMETRY_ARITY,
    Program,
    Semantics,
    ShapeKind,
    format_number,
    validate_program,
)

_PUNCT = "(){},="


class _Token(NamedTuple):
    kind: str   # "name", "number", one of _PUNCT, or "eof"
    text: str
    value: object
    line: int
    col: int


def _lex(src: str) -> list[_Token]:
    toks = []
    line, col, i, n = 1, 1, 0, len(src)
    while i < n:
        c = src[i]
        if c == "\n":
            line += 1
            col = 1
            i += 1
            continue
        if c in " \t\r":
            i += 1
            col += 1
            continue
        if c in _PUNCT:
            toks.append(_Token(c, c, c, line, col))
            i += 1
            col += 1
            continue
        if c.isalpha() or c == "_":
            j = i
            while j < n and (src[j].isalnum() or src[j] == "_"):
                j += 1
            toks.append(_Token("name", src[i:j], src[i:j], line, col))
            col += j - i
            i = j
            continue
        if c.isdigit() or (c == "-" and i + 1 < n and (src[i + 1].isdigit() or src[i + 1] == ".")):
            j = i + 1
            seen_dot = False
            while j < n and (src[j].isdigit() or (src[j] == "." and not seen_dot)):
                seen_dot = seen_dot or src[j] == "."
                j += 1
            text = src[i:j]
            value = float(text) if "." in text else int(text)
            toks.append(_Token("number", text, value, line, col))
            col += j - i
            i = j
            continue
        raise DslSyntaxError(f"unexpected character {c!r}", line, col)
    toks.append(_Token("eof", "", None, line, col))
    return toks


class _Parser:
    def __init__(self, toks):
        self.toks = toks
        self.pos = 0

    @property
    def cur(self) -> _Token:
        return self.toks[self.pos]

    def fail(self, expected):
        t = self.cur
        what = "end of input" if t.kind == "eof" else repr(t.text)
        raise DslSyntaxError(f"unexpected {what}", t.line, t.col, expected)

    def eat(self, kind, text=None) -> _Token:
        t = self.cur
        if t.kind != kind or (text is not None and t.text != text):
            self.fail((text or kind,))
        self.pos += 1
        return t

    def eat_name(self, *options) -> _Token:
        t = self.cur
        if t.kind != "name" or (options and t.text not in options):
            self.fail(options or ("name",))
        self.pos += 1
        return t

    def eat_int(self) -> int:
        t = self.cur
        if t.kind != "number" or not isinstance(t.value, int):
            self.fail(("integer",))
        self.pos += 1
        return t.value

    def eat_number(self):
        t = self.cur
        if t.kind != "number":
            self.fail(("number",))
        self.pos += 1
        return t.value

    def int_triple(self) -> tuple:
        self.eat("(")
        a = self.eat_int()
        self.eat(",")
        b = self.eat_int()
        self.eat(",")
        c = self.eat_int()
        self.eat(")")
        return (a, b, c)

    def program(self, *, top=False) -> list:
        stmts = []
        stop = "eof" if top else "}"
        while True:
            t = self.cur
            if t.kind == stop:
                return stmts
            if t.kind == "name" and t.text == "draw":
                stmts.append(self.draw())
            elif t.kind == "name" and t.text == "for":
                stmts.append(self.for_stmt())
            else:
                self.fail(("draw", "for") if top else ("draw", "for", "}"))

    def draw(self) -> DrawStmt:
        self.eat_name("draw")
        self.eat("(")
        sem_tok = self.eat_name(*(s.value for s in Semantics))
        self.eat(",")
        shp_tok = self.eat_name(*(s.value for s in ShapeKind))
        shape = ShapeKind(shp_tok.text)
        self.eat(",")
        self.eat_name("P")
        self.eat("=")
        pos = self.int_triple()
        self.eat(",")
        self.eat_name("G")
        self.eat("=")
        self.eat("(")
        geom = [self.eat_number()]
        while self.cur.kind == ",":
            self.eat(",")
            geom.append(self.eat_number())
        self.eat(")")
        self.eat(")")
        lo, hi = GEOMETRY_ARITY[shape]
        if not lo <= len(geom) <= hi:
            want = str(lo) if lo == hi else f"{lo} or {hi}"
            raise DslSyntaxError(
                f"{shape.value} takes {want} geometry arguments, got {len(geom)}",
                sem_tok.line, sem_tok.col,
            )
        return DrawStmt(Semantics(sem_tok.text), shape, pos, tuple(geom))

    def for_stmt(self) -> ForStmt:
        self.eat_name("for")
        self.eat("(")
        mode = self.eat_name("Trans", "Rot")
        self.eat(",")
        self.eat_name("i")
        self.eat("=")
        times = self.eat_int()
        self.eat(",")
        if mode.text == "Trans":
            self.eat_name("u")
            self.eat("=")
            step = self.int_triple()
            self.eat(")")
            body = self.block_body()
            return ForStmt.translation(times, step, body)
        self.eat_name("theta")
        self.eat("=")
        angle = self.eat_number()
        self.eat(",")
        self.eat_name("axis")
        self.eat("=")
        axis = Axis(self.eat_name("X", "Y", "Z").text)
        self.eat(")")
        body = self.block_body()
        return ForStmt.rotation(times, angle, axis, body)

    def block_body(self) -> tuple:
        self.eat("{")
        body = self.program()
        self.eat("}")
        return tuple(body)


def parse_text(src: str, *, validate: bool = True) -> Program:
    """Parse source text; optionally reject programs that break value rules."""
    p = _Parser(_lex(src))
    program = Program(tuple(p.program(top=True)))
    if validate:
        report = validate_program(program)
        if not report.ok:
            v = report.violations[0]
            raise DslSemanticError(v.path, v.message)
    return program


def _print_stmt(s, depth, out):
    pad = "  " * depth
    if isinstance(s, DrawStmt):
        pos = ",".join(format_number(v) for v in s.position)
        geom = ",".join(format_number(v) for v in s.geometry)
        out.append(f"{pad}draw({s.semantics.value}, {s.shape.value}, P=({pos}), G=({geom}))")
        return
    if s.step is not None:
        u = ",".join(format_number(v) for v in s.step)
        head = f"{pad}for(Trans, i={s.times}, u=({u})) {{"
    else:
        head = f"{pad}for(Rot, i={s.times}, theta={format_number(s.angle)}, axis={s.axis.value}) {{"
    out.append(head)
    for child in s.body:
        _print_stmt(child, depth + 1, out)
    out.append(f"{pad}}}")


def print_text(p: Program) -> str:
    """Canonical text form; empty program prints as empty text."""
    out: list[str] = []
    for s in p.statements:
        _print_stmt(s, 0, out)
    return "".join(line + "\n" for line in out)
