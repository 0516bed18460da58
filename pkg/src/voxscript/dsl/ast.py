"""Statement types for the voxel drawing language.

A program is an ordered list of statements. A ``draw`` statement places one
labeled primitive; a ``for`` statement repeats a sub-program under a
per-iteration translation or rotation. Values are immutable; every operation
over them is a pure function.
"""
from __future__ import annotations

import enum
from dataclasses import dataclass
from typing import Union


class Semantics(enum.Enum):
    """Part label attached to a drawn primitive.

    TOP covers seat and table tops, HBAR horizontal bars, VBOARD vertical
    boards such as arm panels, BACKSUP back-support posts, BEAM armrest
    beams. The label never changes the geometry a statement produces.
    """

    LEG = "Leg"
    TOP = "Top"
    LAYER = "Layer"
    SUPPORT = "Support"
    BASE = "Base"
    SIDEBOARD = "Sideboard"
    HBAR = "HBar"
    VBOARD = "VBoard"
    LOCKER = "Locker"
    BACK = "Back"
    BACKSUP = "BackSup"
    BEAM = "Beam"


class ShapeKind(enum.Enum):
    CUBOID = "Cub"
    CYLINDER = "Cyl"
    CIRCLE = "Cir"
    SQUARE = "Sqr"
    RECTANGLE = "Rect"
    LINE = "Line"


class LoopMode(enum.Enum):
    TRANSLATION = "Trans"
    ROTATION = "Rot"


class Axis(enum.Enum):
    X = "X"
    Y = "Y"
    Z = "Z"


# (min arity, max arity) of the geometry tuple per shape kind.
GEOMETRY_ARITY = {
    ShapeKind.CUBOID: (3, 4),
    ShapeKind.CYLINDER: (2, 2),
    ShapeKind.CIRCLE: (2, 2),
    ShapeKind.SQUARE: (2, 2),
    ShapeKind.RECTANGLE: (3, 3),
    ShapeKind.LINE: (3, 3),
}


def canon_number(v):
    """Collapse integral floats to int so equal programs compare equal."""
    if isinstance(v, float) and v.is_integer():
        return int(v)
    return v


def format_number(v) -> str:
    """Render a numeric argument: integers bare, floats via repr."""
    v = canon_number(v)
    if isinstance(v, int):
        return str(v)
    return repr(float(v))


@dataclass(frozen=True)
class DrawStmt:
    """One primitive: a part label, a shape kind, a position, and geometry.

    Geometry layout by kind: Cub (t, r1, r2[, ang]), Rect (t, r1, r2),
    Cyl/Cir/Sqr (t, r), Line (x2, y2, z2). A Cub tilt angle of exactly 0 is
    stored by omission so structurally equal programs have one spelling.
    """

    semantics: Semantics
    shape: ShapeKind
    position: tuple
    geometry: tuple

    def __post_init__(self):
        object.__setattr__(self, "position", tuple(canon_number(c) for c in self.position))
        geom = tuple(canon_number(g) for g in self.geometry)
        if self.shape is ShapeKind.CUBOID and len(geom) == 4 and geom[3] == 0:
            geom = geom[:3]
        object.__setattr__(self, "geometry", geom)


@dataclass(frozen=True)
class ForStmt:
    """Repeat ``body`` ``times`` times, translating or rotating per iteration.

    Translation carries an integer step triple; rotation carries a per-step
    angle in degrees and an axis through the grid center. Only the fields of
    the active mode are populated.
    """

    mode: LoopMode
    times: int
    body: tuple
    step: tuple | None = None
    angle: float | None = None
    axis: Axis | None = None

    def __post_init__(self):
        object.__setattr__(self, "body", tuple(self.body))
        if self.step is not None:
            object.__setattr__(self, "step", tuple(canon_number(c) for c in self.step))
        if self.angle is not None:
            object.__setattr__(self, "angle", canon_number(self.angle))

    @classmethod
    def translation(cls, times, step, body):
        return cls(mode=LoopMode.TRANSLATION, times=times, step=tuple(step), body=tuple(body))

    @classmethod
    def rotation(cls, times, angle, axis, body):
        return cls(mode=LoopMode.ROTATION, times=times, angle=angle, axis=axis, body=tuple(body))


Statement = Union[DrawStmt, ForStmt]

# A block is the unit of execution: one DrawStmt, or one ForStmt with its
# whole body. At the top level of a program the two notions coincide.
Block = Statement


@dataclass(frozen=True)
class Program:
    statements: tuple = ()

    def __post_init__(self):
        object.__setattr__(self, "statements", tuple(self.statements))


@dataclass(frozen=True)
class Limits:
    """Overridable validation and execution budgets."""

    max_top_level: int = 32
    max_expanded: int = 1024
    max_for_depth: int = 3
    max_coord: int = 31
    max_extent: int = 32
    max_tilt: float = 45.0


DEFAULT_LIMITS = Limits()


@dataclass(frozen=True)
class Violation:
    path: str
    message: str


@dataclass(frozen=True)
class ValidationReport:
    ok: bool
    violations: tuple


def blocks(p: Program) -> list:
    """Partition a program into blocks, preserving order.

    Every top-level statement is its own block, so concatenating the result
    reproduces ``p.statements`` exactly.
    """
    return list(p.statements)


def expanded_size(stmt: Statement) -> int:
    """Number of primitives the statement produces once loops are unrolled."""
    if isinstance(stmt, DrawStmt):
        return 1
    return stmt.times * sum(expanded_size(s) for s in stmt.body)


def for_depth(stmt: Statement) -> int:
    """Loop nesting depth: 0 for a draw, 1 + deepest body loop for a for."""
    if isinstance(stmt, DrawStmt):
        return 0
    inner = max((for_depth(s) for s in stmt.body), default=0)
    return 1 + inner


def _is_int(v) -> bool:
    return isinstance(v, int) and not isinstance(v, bool)


def _check_coord_triple(values, lo, hi, what, path, out):
    if len(values) != 3:
        out.append(Violation(path, f"{what} must have 3 components, got {len(values)}"))
        return
    for i, v in enumerate(values):
        if not _is_int(v):
            out.append(Violation(path, f"{what}[{i}] must be an integer, got {v!r}"))
        elif not lo <= v <= hi:
            out.append(Violation(path, f"{what}[{i}] = {v} outside [{lo}, {hi}]"))


def _check_extent(v, name, path, out, limits):
    if not _is_int(v):
        out.append(Violation(path, f"{name} must be an integer, got {v!r}"))
    elif not 1 <= v <= limits.max_extent:
        out.append(Violation(path, f"{name} = {v} outside [1, {limits.max_extent}]"))


def _check_draw(d: DrawStmt, path, out, limits):
    if not isinstance(d.semantics, Semantics):
        out.append(Violation(path, f"unknown semantics {d.semantics!r}"))
    if not isinstance(d.shape, ShapeKind):
        out.append(Violation(path, f"unknown shape kind {d.shape!r}"))
        return
    _check_coord_triple(d.position, 0, limits.max_coord, "position", path, out)
    lo, hi = GEOMETRY_ARITY[d.shape]
    n = len(d.geometry)
    if not lo <= n <= hi:
        want = str(lo) if lo == hi else f"{lo} or {hi}"
        out.append(Violation(path, f"{d.shape.value} takes {want} geometry entries, got {n}"))
        return
    g = d.geometry
    if d.shape is ShapeKind.LINE:
        _check_coord_triple(g, 0, limits.max_coord, "endpoint", path, out)
    elif d.shape in (ShapeKind.CYLINDER, ShapeKind.CIRCLE, ShapeKind.SQUARE):
        _check_extent(g[0], "t", path, out, limits)
        _check_extent(g[1], "r", path, out, limits)
    else:  # CUBOID, RECTANGLE
        for v, name in zip(g[:3], ("t", "r1", "r2")):
            _check_extent(v, name, path, out, limits)
        if n == 4:
            ang = g[3]
            if not isinstance(ang, (int, float)) or isinstance(ang, bool):
                out.append(Violation(path, f"ang must be a number, got {ang!r}"))
            elif not -limits.max_tilt <= ang <= limits.max_tilt:
                out.append(Violation(path, f"ang = {ang} outside [-{limits.max_tilt}, {limits.max_tilt}]"))


def _check_for(f: ForStmt, path, depth, out, limits):
    if not _is_int(f.times) or f.times < 2:
        out.append(Violation(path, f"times must be an integer >= 2, got {f.times!r}"))
    if f.mode is LoopMode.TRANSLATION:
        if f.step is None:
            out.append(Violation(path, "translation loop missing step u"))
        else:
            if len(f.step) != 3 or not all(_is_int(c) for c in f.step):
                out.append(Violation(path, f"step u must be an integer triple, got {f.step!r}"))
        if f.angle is not None or f.axis is not None:
            out.append(Violation(path, "translation loop must not carry angle/axis"))
    elif f.mode is LoopMode.ROTATION:
        if f.angle is None or not isinstance(f.angle, (int, float)) or isinstance(f.angle, bool):
            out.append(Violation(path, f"rotation loop needs a numeric angle, got {f.angle!r}"))
        if not isinstance(f.axis, Axis):
            out.append(Violation(path, f"rotation loop needs an axis, got {f.axis!r}"))
        if f.step is not None:
            out.append(Violation(path, "rotation loop must not carry step u"))
    else:
        out.append(Violation(path, f"unknown loop mode {f.mode!r}"))
    if depth + 1 > limits.max_for_depth:
        out.append(Violation(path, f"loop nesting deeper than {limits.max_for_depth}"))
    if not f.body:
        out.append(Violation(path, "loop body is empty"))
        return
    if _is_int(f.times) and f.times >= 2 and expanded_size(f) > limits.max_expanded:
        out.append(Violation(
            path, f"loop expands to {expanded_size(f)} primitives (budget {limits.max_expanded})"
        ))
    for j, s in enumerate(f.body):
        _check_stmt(s, f"{path}.body[{j}]", depth + 1, out, limits)


def _check_stmt(s, path, depth, out, limits):
    if isinstance(s, DrawStmt):
        _check_draw(s, path, out, limits)
    elif isinstance(s, ForStmt):
        _check_for(s, path, depth, out, limits)
    else:
        out.append(Violation(path, f"not a statement: {s!r}"))


def validate_program(p: Program, limits: Limits = DEFAULT_LIMITS) -> ValidationReport:
    """Check every type invariant; report violations instead of raising."""
    out: list[Violation] = []
    if len(p.statements) > limits.max_top_level:
        out.append(Violation(
            "stmt", f"{len(p.statements)} top-level statements (limit {limits.max_top_level})"
        ))
    for i, s in enumerate(p.statements):
        _check_stmt(s, f"stmt[{i}]", 0, out, limits)
    return ValidationReport(ok=not out, violations=tuple(out))
