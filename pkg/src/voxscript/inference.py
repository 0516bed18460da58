"""Fit a program to a target grid by greedy discrete search.

One block is accepted per round: candidates are seeded from the residual
(target voxels not yet reconstructed), the best few are polished by
integer coordinate descent, and the single best survivor is kept if it
clears a minimum gain. Scores are recomputed from the full grids every
time; nothing is updated incrementally.
"""
from __future__ import annotations

import enum
from dataclasses import dataclass, field

import numpy as np
from scipy import ndimage

from .dsl.ast import Axis, DrawStmt, ForStmt, LoopMode, Program, Semantics, ShapeKind
from .errors import ShapeMismatchError
from .executor import execute_block, execute_program
from .metrics import BCE_EPS, LossWeights, iou, weighted_bce

_WRAP_TIMES = (2, 3, 4, 5)
# A pattern repeated twice overlaps itself by exactly half its mass when
# shifted one period, so the detector threshold must sit below 0.5.
_PERIOD_MIN_OVERLAP = 0.45
_WRAP_MAX_COMPONENTS = 6
_WRAP_BODIES_PER_COMPONENT = 3
# Translation-wrapper bodies may be anchored anywhere inside the first
# period along the detected axis, not just at a component's first seed.
_WRAP_MAX_SLAB_BODIES = 32
_SCORE_EPS = 1e-12


class LossKind(enum.Enum):
    IOU_GAIN = "IoUGain"
    WEIGHTED_BCE = "WeightedBCE"


@dataclass(frozen=True)
class SearchConfig:
    max_blocks: int = 10
    beam_width: int = 8
    min_gain: float = 0.002
    refine_rounds: int = 3
    candidate_grid_stride: int = 2
    loss: LossKind = LossKind.IOU_GAIN
    weights: LossWeights = field(default_factory=LossWeights)
    budget: int = 200_000

    def __post_init__(self):
        for name in ("max_blocks", "beam_width", "refine_rounds", "candidate_grid_stride"):
            if getattr(self, name) < 1:
                raise ValueError(f"{name} must be >= 1")
        if not self.min_gain > 0:
            raise ValueError("min_gain must be > 0")
        if not self.budget > 0:
            raise ValueError("budget must be > 0")


@dataclass(frozen=True)
class FitResult:
    program: Program
    score_trace: tuple  # (accepted block, iou after accepting it)
    final_iou: float
    executor_calls: int
    budget_exhausted: bool = False


class _Budget:
    def __init__(self, limit: int):
        self.limit = int(limit)
        self.calls = 0
        self.exhausted = False

    def spend(self) -> bool:
        if self.calls >= self.limit:
            self.exhausted = True
            return False
        self.calls += 1
        return True


def _run(res, p, d) -> int:
    """Consecutive occupied voxels from p (inclusive) along direction d."""
    n = 0
    x, y, z = p
    dx, dy, dz = d
    sx, sy, sz = res.shape
    while 0 <= x < sx and 0 <= y < sy and 0 <= z < sz and res[x, y, z]:
        n += 1
        x, y, z = x + dx, y + dy, z + dz
    return n


# Walk directions for line seeds: all sign patterns with >= 2 moving axes,
# one of each opposite pair.
_LINE_DIRS = tuple(
    (dx, dy, dz)
    for dx in (-1, 0, 1)
    for dy in (-1, 0, 1)
    for dz in (-1, 0, 1)
    if (dx, dy, dz) > (0, 0, 0) and (dx != 0) + (dy != 0) + (dz != 0) >= 2
)


def _label_semantics(shape, pos, geom, dims) -> Semantics:
    """Deterministic part label from geometry alone; never affects voxels."""
    cx, cz = dims[0] // 2, dims[2] // 2
    if shape is ShapeKind.LINE:
        return Semantics.BASE
    grounded = pos[1] == 0
    if shape in (ShapeKind.CYLINDER, ShapeKind.CIRCLE):
        t, r = geom[0], geom[1]
        if t <= 3:
            return Semantics.TOP
        if abs(pos[0] - cx) <= 2 and abs(pos[2] - cz) <= 2:
            return Semantics.SUPPORT
        return Semantics.LEG if grounded else Semantics.BACKSUP
    if shape is ShapeKind.SQUARE:
        return Semantics.BASE if grounded else Semantics.LAYER
    h = geom[0]
    ex, ez = geom[1], geom[2]
    if ex <= 4 and ez <= 4:
        if h <= 2:
            return Semantics.BEAM
        return Semantics.LEG if grounded else Semantics.BACKSUP
    if h <= 3:
        if grounded:
            return Semantics.BASE
        return Semantics.TOP if pos[1] >= dims[1] // 4 else Semantics.LAYER
    if min(ex, ez) <= 3:
        if grounded:
            return Semantics.SIDEBOARD
        return Semantics.BACK if ex <= ez else Semantics.VBOARD
    return Semantics.LOCKER if grounded else Semantics.BACK


def _make_draw(shape, pos, geom, dims) -> DrawStmt:
    return DrawStmt(_label_semantics(shape, pos, geom, dims), shape, pos, geom)


def _periodic_steps(res) -> list:
    """Per axis, the smallest shift under which the grid best overlaps itself."""
    found = []
    for axis in range(3):
        n = res.shape[axis]
        best = None  # (fraction, k)
        for k in range(2, n):
            front = res[(slice(None),) * axis + (slice(k, None),)]
            back = res[(slice(None),) * axis + (slice(0, n - k),)]
            fc = int(front.sum())
            bc = int(back.sum())
            m = min(fc, bc)
            if m == 0:
                break
            frac = int((front & back).sum()) / m
            if frac >= _PERIOD_MIN_OVERLAP and (best is None or frac > best[0] + 1e-9):
                best = (frac, k)
        if best is not None:
            found.append((axis, best[1]))
    return found


def propose_candidates(residual, config: SearchConfig = SearchConfig()) -> list:
    """Candidate blocks seeded from the residual's occupied structure.

    Draw candidates: the bounding-box cuboid, plus cuboid / cylinder /
    line seeds grown from occupied points of a stride lattice. Loop
    candidates wrap the seeds at the first occupied lattice point, using
    self-overlap-detected translation steps and 360/times rotations.
    """
    res = np.asarray(residual, dtype=bool)
    occ = np.argwhere(res)
    if len(occ) == 0:
        return []
    dims = res.shape
    lo = occ.min(axis=0)
    hi = occ.max(axis=0)
    labels, n_comp = ndimage.label(res, structure=np.ones((3, 3, 3), dtype=bool))
    steps = _periodic_steps(res)
    seen = set()
    draws: list = []
    # wrapper bodies: the seeds at the first lattice point of each component
    buckets: dict = {}
    # per detected (axis, k): seeds anchored within the first period slab
    slabs: dict = {ak: [] for ak in steps}

    def add(shape, pos, geom, bucket=None):
        key = (shape, pos, geom)
        if key in seen:
            return
        seen.add(key)
        d = _make_draw(shape, pos, geom, dims)
        draws.append(d)
        if bucket is not None and len(bucket) < _WRAP_BODIES_PER_COMPONENT:
            bucket.append(d)
        if shape is not ShapeKind.LINE:
            for (axis, k), bodies in slabs.items():
                if pos[axis] - int(lo[axis]) < k and len(bodies) < _WRAP_MAX_SLAB_BODIES:
                    bodies.append(d)

    ext = np.minimum(hi - lo + 1, 32)
    add(ShapeKind.CUBOID, tuple(int(v) for v in lo),
        (int(ext[1]), int(ext[0]), int(ext[2])))
    # end-to-end lines: exact for any single rendered segment. Two scan
    # orders, since the extreme voxel under one order can be off by one
    # when several voxels tie on the leading axis.
    occ_t = np.argwhere(res.transpose(2, 1, 0))[:, ::-1]
    for a, b in ((occ[0], occ[-1]), (occ_t[0], occ_t[-1])):
        add(ShapeKind.LINE, tuple(int(v) for v in a), tuple(int(v) for v in b))

    # One seed point per stride cell: the cell's first occupied voxel.
    # Snapping (rather than testing the lattice corner itself) keeps thin
    # structures at off-lattice coordinates reachable.
    s = config.candidate_grid_stride
    for x0 in range(int(lo[0]), int(hi[0]) + 1, s):
        for y0 in range(int(lo[1]), int(hi[1]) + 1, s):
            for z0 in range(int(lo[2]), int(hi[2]) + 1, s):
                cell = res[x0:x0 + s, y0:y0 + s, z0:z0 + s]
                if not cell.any():
                    continue
                cx, cy, cz = np.argwhere(cell)[0]
                x, y, z = x0 + int(cx), y0 + int(cy), z0 + int(cz)
                lab = int(labels[x, y, z])
                bucket = None
                if lab not in buckets and len(buckets) < _WRAP_MAX_COMPONENTS:
                    bucket = buckets.setdefault(lab, [])
                p = (x, y, z)
                t = _run(res, p, (0, 1, 0))
                r1 = _run(res, p, (1, 0, 0))
                r2 = _run(res, p, (0, 0, 1))
                add(ShapeKind.CUBOID, p, (min(t, 32), min(r1, 32), min(r2, 32)), bucket)
                xm = _run(res, p, (-1, 0, 0))
                zm = _run(res, p, (0, 0, -1))
                rad = min(r1, r2, xm, zm) - 1
                if rad >= 1:
                    add(ShapeKind.CYLINDER, p, (min(t, 32), rad), bucket)
                # disc seed snapped to the midpoint of the opposing runs, so
                # rim points still yield a usable cylinder; radius is taken
                # from fresh runs at the snapped center
                cx, cz = x + (r1 - xm) // 2, z + (r2 - zm) // 2
                if (cx, cz) != (x, z) and res[cx, y, cz]:
                    c = (cx, y, cz)
                    rc = min(_run(res, c, (1, 0, 0)), _run(res, c, (-1, 0, 0)),
                             _run(res, c, (0, 0, 1)), _run(res, c, (0, 0, -1))) - 1
                    if rc >= 1:
                        tc = _run(res, c, (0, 1, 0))
                        add(ShapeKind.CYLINDER, c, (min(tc, 32), rc), bucket)
                for d in _LINE_DIRS:
                    for sign in (1, -1):
                        vec = (sign * d[0], sign * d[1], sign * d[2])
                        n = _run(res, p, vec)
                        if n >= 4:
                            end = (x + (n - 1) * vec[0], y + (n - 1) * vec[1],
                                   z + (n - 1) * vec[2])
                            add(ShapeKind.LINE, p, end, bucket)

    loops: list = []
    wrapped = set()

    def add_trans(times, u, body):
        key = (times, u, body)
        if key not in wrapped:
            wrapped.add(key)
            loops.append(ForStmt.translation(times, u, (body,)))

    for (axis, k), bodies in slabs.items():
        u = tuple(k if i == axis else 0 for i in range(3))
        for body in bodies:
            for times in _WRAP_TIMES:
                add_trans(times, u, body)
    for lab in sorted(buckets):
        for body in buckets[lab]:
            for axis, k in steps:
                u = tuple(k if i == axis else 0 for i in range(3))
                for times in _WRAP_TIMES:
                    add_trans(times, u, body)
            for times in _WRAP_TIMES:
                loops.append(ForStmt.rotation(times, 360 // times, Axis.Y, (body,)))

    cap = max(1, config.budget // (2 * config.max_blocks))
    return (draws + loops)[:cap]


def _counts(block_grid, truth_res, false_free):
    a = int((block_grid & truth_res).sum())
    b = int((block_grid & false_free).sum())
    return a, b


def _score_from_counts(a, b, i0, u0, config: SearchConfig) -> float:
    if config.loss is LossKind.IOU_GAIN:
        before = i0 / u0 if u0 else 1.0
        after = (i0 + a) / (u0 + b) if (u0 + b) else 1.0
        return after - before
    w = config.weights
    return (w.w1 * a - w.w0 * b) * float(np.log((1.0 - BCE_EPS) / BCE_EPS))


def score_block(b, target, current, config: SearchConfig = SearchConfig()) -> float:
    """Improvement from adding block b to the reconstruction.

    IoUGain: change in IoU against the target. WeightedBCE: decrease in
    the weighted cross-entropy treating occupancy as a hard {eps, 1-eps}
    prediction. Positive is better under both.
    """
    target = np.asarray(target, dtype=bool)
    current = np.asarray(current, dtype=bool)
    if target.shape != current.shape:
        raise ShapeMismatchError(f"grid dims differ: {target.shape} vs {current.shape}")
    union = current | execute_block(b, target.shape)
    if config.loss is LossKind.IOU_GAIN:
        return iou(union, target) - iou(current, target)
    w = config.weights

    def as_pred(g):
        return np.where(g, 1.0 - BCE_EPS, BCE_EPS)

    return weighted_bce(as_pred(current), target, w) - weighted_bce(as_pred(union), target, w)


# ------------------------------------------------------------- refinement

def _get_param(block, path):
    if isinstance(block, ForStmt):
        head = path[0]
        if head == "body":
            return _get_param(block.body[path[1]], path[2:])
        if head == "times":
            return block.times
        if head == "step":
            return block.step[path[1]]
        return block.angle
    head = path[0]
    if head == "pos":
        return block.position[path[1]]
    if head == "geom":
        return block.geometry[path[1]]
    return block.geometry[3] if len(block.geometry) == 4 else 0  # ang


def _set_param(block, path, value):
    from dataclasses import replace

    if isinstance(block, ForStmt):
        head = path[0]
        if head == "body":
            body = list(block.body)
            body[path[1]] = _set_param(body[path[1]], path[2:], value)
            return replace(block, body=tuple(body))
        if head == "times":
            return replace(block, times=value)
        if head == "step":
            u = list(block.step)
            u[path[1]] = value
            return replace(block, step=tuple(u))
        return replace(block, angle=value)
    head = path[0]
    if head == "pos":
        pos = list(block.position)
        pos[path[1]] = value
        return replace(block, position=tuple(pos))
    if head == "geom":
        geom = list(block.geometry)
        geom[path[1]] = value
        return replace(block, geometry=tuple(geom))
    return replace(block, geometry=block.geometry[:3] + (value,))  # ang


def _param_paths(block, dims) -> list:
    """(path, step, low, high) for every adjustable integer parameter."""
    out = []
    if isinstance(block, ForStmt):
        out.append((("times",), 1, 2, 16))
        if block.mode is LoopMode.TRANSLATION:
            for i in range(3):
                out.append((("step", i), 1, -(dims[i] - 1), dims[i] - 1))
        else:
            out.append((("angle",), 5, -355, 355))
        for j, sub in enumerate(block.body):
            if isinstance(sub, DrawStmt):
                out.extend((("body", j) + p, d, lo, hi)
                           for p, d, lo, hi in _param_paths(sub, dims))
        return out
    for i in range(3):
        out.append((("pos", i), 1, 0, dims[i] - 1))
    if block.shape is ShapeKind.LINE:
        for i in range(3):
            out.append((("geom", i), 1, 0, dims[i] - 1))
    else:
        for i in range(len(block.geometry[:3])):
            out.append((("geom", i), 1, 1, 32))
        if block.shape is ShapeKind.CUBOID:
            # coarse steps jump plateaus where one degree moves no voxel,
            # fine steps land on the exact tilt
            out.append((("ang",), 5, -45, 45))
            out.append((("ang",), 1, -45, 45))
    return out


def _refine(block, score, truth_res, false_free, i0, u0, config, budget) -> tuple:
    """Coordinate descent; returns (block, score). Never scores worse."""
    dims = truth_res.shape

    def rescore(b):
        if not budget.spend():
            return None
        g = execute_block(b, dims)
        a, bad = _counts(g, truth_res, false_free)
        return _score_from_counts(a, bad, i0, u0, config)

    for _ in range(config.refine_rounds):
        improved = False
        for path, delta, lo, hi in _param_paths(block, dims):
            for direction in (delta, -delta):
                while True:
                    v = _get_param(block, path) + direction
                    if not lo <= v <= hi:
                        break
                    nb = _set_param(block, path, v)
                    s = rescore(nb)
                    if s is None:
                        return block, score
                    if s > score + _SCORE_EPS:
                        block, score = nb, s
                        improved = True
                    else:
                        break
        if not improved:
            break
    return block, score


def refine_block(b, target, current, config: SearchConfig = SearchConfig()):
    """Polish one block against the target; result never scores worse."""
    target = np.asarray(target, dtype=bool)
    current = np.asarray(current, dtype=bool)
    truth_res = target & ~current
    false_free = ~target & ~current
    i0 = int((current & target).sum())
    u0 = int((current | target).sum())
    budget = _Budget(config.budget)
    g = execute_block(b, target.shape)
    a, bad = _counts(g, truth_res, false_free)
    s0 = _score_from_counts(a, bad, i0, u0, config)
    refined, _ = _refine(b, s0, truth_res, false_free, i0, u0, config, budget)
    return refined


def _relabel(block, dims):
    """Reassign part labels after refinement moved the geometry."""
    if isinstance(block, DrawStmt):
        return _make_draw(block.shape, block.position, block.geometry, dims)
    from dataclasses import replace
    body = tuple(_relabel(s, dims) for s in block.body)
    return replace(block, body=body)


def fit_program(target, config: SearchConfig = SearchConfig()) -> FitResult:
    """Greedy block-by-block reconstruction of the target grid."""
    target = np.asarray(target, dtype=bool)
    dims = target.shape
    budget = _Budget(config.budget)
    current = np.zeros(dims, dtype=bool)
    accepted: list = []
    trace: list = []
    if not target.any():
        return FitResult(Program(()), (), 1.0, 0, False)
    while len(accepted) < config.max_blocks and not budget.exhausted:
        residual = target & ~current
        if not residual.any():
            break
        candidates = propose_candidates(residual, config)
        if not candidates:
            break
        false_free = ~target & ~current
        i0 = int((current & target).sum())
        u0 = int((current | target).sum())
        scored = []
        for idx, cand in enumerate(candidates):
            if not budget.spend():
                break
            g = execute_block(cand, dims)
            a, b = _counts(g, residual, false_free)
            scored.append((_score_from_counts(a, b, i0, u0, config), idx, cand))
        if not scored:
            break
        scored.sort(key=lambda t: (-t[0], t[1]))
        refined = []
        for s0, idx, cand in scored[: config.beam_width]:
            rb, rs = _refine(cand, s0, residual, false_free, i0, u0, config, budget)
            refined.append((rs, idx, rb))
        refined.sort(key=lambda t: (-t[0], t[1]))
        best_score, _, best_block = refined[0]
        if best_score < config.min_gain:
            break
        best_block = _relabel(best_block, dims)
        current |= execute_block(best_block, dims)
        accepted.append(best_block)
        trace.append((best_block, iou(current, target)))
    return FitResult(
        program=Program(tuple(accepted)),
        score_trace=tuple(trace),
        final_iou=iou(current, target),
        executor_calls=budget.calls,
        budget_exhausted=budget.exhausted,
    )
