"""Piping schematic document: pipes, block library, block instances, dimensions.

Coordinates of pipes are real-space mm.  Block geometry and cut intervals
are given in the block's library plane, in paper mm; the drawing scale
denominator converts them to real-space mm when a block is attached.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Optional

import numpy as np

from . import vectors as vo
from .errors import (
    AxoError,
    CutOutOfRange,
    InvalidAttachment,
    InvalidOrientation,
    InvalidRun,
    NotCollinear,
    OverlappingBlocks,
    UnknownPipe,
)
from .linear import PlacementOp, ProjectionOp, default_isometric
from .numeric import COORD_TOL, FLOAT, ORT_TOL, TolLike, as_tol, freeze
from .offsets import AxisIndex, OffsetContext, axis_ort, to_revi

_W = np.float64

#: dimension line distance from the measured pipe, paper mm
DIM_LINE_OFFSET = 12.0
#: extension line overshoot past the dimension line, paper mm
EXT_OVERSHOOT = 10.0
#: text anchor distance above the dimension line, paper mm
TEXT_GAP = 2.0

#: plane axes tried for blocks and dimensions, most preferred first
PLANE_AXIS_PREFERENCE = (AxisIndex.PZ, AxisIndex.PX, AxisIndex.PY)


@dataclass(frozen=True, eq=False)
class Pipe:
    id: str
    a: np.ndarray
    b: np.ndarray
    list_no: int = 0

    def __post_init__(self):
        object.__setattr__(self, "a", freeze(self.a))
        object.__setattr__(self, "b", freeze(self.b))
        if self.a.shape != (3,) or self.b.shape != (3,):
            raise ValueError(f"pipe {self.id!r} endpoints must be V3")

    @property
    def length(self) -> np.float32:
        return vo.dist3(self.a, self.b)


@dataclass(frozen=True, eq=False)
class Block:
    """Library symbol.  ``cut`` is ``(x0, x1)`` along the library X axis or ``None``."""

    id: str
    polylines: tuple = ()
    cut: Optional[tuple] = None

    def __post_init__(self):
        lines = []
        for pl in self.polylines:
            arr = freeze(pl)
            if arr.ndim != 2 or arr.shape[1] != 2:
                raise ValueError(f"block {self.id!r} polylines must be lists of V2")
            lines.append(arr)
        object.__setattr__(self, "polylines", tuple(lines))
        if self.cut is not None:
            x0, x1 = self.cut
            object.__setattr__(self, "cut", (float(FLOAT(x0)), float(FLOAT(x1))))

    @property
    def has_cut(self) -> bool:
        return self.cut is not None and self.cut[1] > self.cut[0]


@dataclass(frozen=True)
class BlockInstance:
    block: str
    pipe: str
    t: float
    plane_axis: int
    id: str = ""

    def __post_init__(self):
        object.__setattr__(self, "t", float(FLOAT(self.t)))
        if not self.id:
            object.__setattr__(self, "id", f"{self.block}@{self.pipe}")


@dataclass(frozen=True, eq=False)
class Schematic:
    anchor: np.ndarray = field(default_factory=lambda: freeze((0.0, 0.0)))
    scale_denominator: float = 1.0
    projection: ProjectionOp = field(default_factory=default_isometric)
    pipes: tuple = ()
    library: tuple = ()
    instances: tuple = ()
    offsets: OffsetContext = field(default_factory=OffsetContext)
    dimension_runs: tuple = ()

    def __post_init__(self):
        object.__setattr__(self, "anchor", freeze(self.anchor))
        for name in ("pipes", "library", "instances"):
            object.__setattr__(self, name, tuple(getattr(self, name)))
        object.__setattr__(self, "dimension_runs", tuple(tuple(r) for r in self.dimension_runs))

    def pipe(self, pipe_id) -> Pipe:
        for p in self.pipes:
            if p.id == pipe_id:
                return p
        raise UnknownPipe(f"no pipe with id {pipe_id!r}")

    def block(self, block_id) -> Block:
        for b in self.library:
            if b.id == block_id:
                return b
        raise KeyError(block_id)

    def instances_on(self, pipe_id) -> list:
        return [inst for inst in self.instances if inst.pipe == pipe_id]


@dataclass(frozen=True, eq=False)
class DimensionEntity:
    """One chain dimension: the true length plus its visible-space geometry."""

    pipe: str
    value: np.float32
    ext1: tuple
    ext2: tuple
    dim_line: tuple
    text_anchor: np.ndarray


@dataclass(frozen=True)
class Diagnostic:
    severity: str
    entity_id: str
    code: str
    message: str

    def format(self) -> str:
        return f"{self.severity} {self.entity_id} {self.code} {self.message}"


def pipe_ort(s: Schematic, list_no: int) -> np.ndarray:
    """Unit direction of the pipe at position ``list_no`` (0-based) of the pipe list."""
    if not 0 <= int(list_no) < len(s.pipes):
        raise UnknownPipe(f"no pipe at list position {list_no}")
    p = s.pipes[int(list_no)]
    return vo.dir_ort3(p.a, p.b)


def allowed_plane_axes(u, tol: TolLike = None) -> list:
    """Positive axes that can span a block plane together with pipe direction ``u``."""
    tol = as_tol(tol, ORT_TOL)
    out = []
    for k in PLANE_AXIS_PREFERENCE:
        try:
            vo.collinear_scalar(axis_ort(k), u, tol)
        except NotCollinear:
            out.append(k)
    return out


def build_placement(s: Schematic, inst: BlockInstance, tol: TolLike = None) -> PlacementOp:
    """Operator taking the block's library plane onto its pipe.

    Library X runs along the pipe; library Y runs along the chosen plane axis
    made orthogonal to the pipe.  Both are scaled by the drawing scale
    denominator, and the library origin lands ``t`` mm from the pipe start.
    """
    eps = as_tol(tol).eps
    pipe = s.pipe(inst.pipe)
    length = float(pipe.length)
    if not -eps <= inst.t <= length + eps:
        raise InvalidAttachment(f"{inst.id}: t={inst.t:g} outside pipe {pipe.id} of length {length:g}")
    try:
        k = AxisIndex(int(inst.plane_axis))
    except ValueError:
        raise InvalidOrientation(f"{inst.id}: {inst.plane_axis!r} is not an axis index") from None
    a = pipe.a.astype(_W)
    u = vo.dir_ort3(pipe.a, pipe.b).astype(_W)
    if AxisIndex(abs(k)) not in allowed_plane_axes(u):
        raise InvalidOrientation(f"{inst.id}: plane axis {int(k)} is parallel to pipe {pipe.id}")
    e = axis_ort(k).astype(_W)
    w = e - np.dot(e, u) * u
    w = w / np.linalg.norm(w)
    n = float(s.scale_denominator)
    return PlacementOp(a + inst.t * u, np.stack([u * n, w * n], axis=-1))


def cut_intervals(s: Schematic, pipe: Pipe, tol: TolLike = None) -> list:
    """Sorted ``(lo, hi, instance)`` cut-outs on ``pipe``, in mm from its start.

    Raises :class:`CutOutOfRange` for a cut leaving ``[0, L]`` and
    :class:`OverlappingBlocks` when two cut-outs share interior points.
    Cut-outs that merely touch are allowed.
    """
    eps = as_tol(tol).eps
    n = float(s.scale_denominator)
    length = float(pipe.length)
    spans = []
    for inst in s.instances_on(pipe.id):
        blk = s.block(inst.block)
        if not blk.has_cut:
            continue
        lo = inst.t + blk.cut[0] * n
        hi = inst.t + blk.cut[1] * n
        if lo < -eps or hi > length + eps:
            raise CutOutOfRange(f"{inst.id}: cut [{lo:g}, {hi:g}] leaves pipe {pipe.id} [0, {length:g}]")
        spans.append((lo, hi, inst))
    spans.sort(key=lambda sp: (sp[0], sp[1]))
    reach = None
    for lo, hi, inst in spans:
        if reach is not None and lo < reach[0]:
            raise OverlappingBlocks(
                f"cut-outs of {reach[1].id} and {inst.id} overlap on pipe {pipe.id}",
                ids=(reach[1].id, inst.id),
            )
        if reach is None or hi > reach[0]:
            reach = (hi, inst)
    return spans


def cut_segments(s: Schematic, pipe: Pipe, tol: TolLike = None) -> list:
    """Visible pieces of ``pipe`` once block cut-outs are removed, as V3 pairs."""
    length = float(pipe.length)
    a = pipe.a.astype(_W)
    delta = pipe.b.astype(_W) - a

    def at(param):
        return freeze(a + delta * (param / length))

    pieces = []
    cursor = 0.0
    for lo, hi, _ in cut_intervals(s, pipe, tol):
        lo, hi = max(lo, 0.0), min(hi, length)
        if lo > cursor:
            pieces.append((cursor, lo))
        cursor = max(cursor, hi)
    if length > cursor:
        pieces.append((cursor, length))
    return [
        (pipe.a if lo == 0.0 else at(lo), pipe.b if hi == length else at(hi))
        for lo, hi in pieces
    ]


def chain_dimensions(s: Schematic, run, tol: TolLike = None) -> list:
    """Chain dimensions for a run of connected, parallel, same-direction pipes.

    Values are real-space lengths; the geometry is in visible space, so the
    dimension follows displaced pipes while still stating the true length.
    Extension lines run along the first allowed plane axis of the run.
    """
    tol = as_tol(tol)
    pipes = [s.pipe(pid) for pid in run]
    if not pipes:
        raise InvalidRun("empty dimension run")
    u0 = vo.dir_ort3(pipes[0].a, pipes[0].b)
    for prev, nxt in zip(pipes, pipes[1:]):
        if vo.dist3(prev.b, nxt.a) > tol.eps:
            raise InvalidRun(f"pipes {prev.id} and {nxt.id} are not connected end to start")
        try:
            k = vo.collinear_scalar(u0, vo.dir_ort3(nxt.a, nxt.b), ORT_TOL)
        except NotCollinear:
            raise InvalidRun(f"pipe {nxt.id} is not parallel to {pipes[0].id}") from None
        if k <= 0:
            raise InvalidRun(f"pipe {nxt.id} runs against {pipes[0].id}")
    e = axis_ort(allowed_plane_axes(u0)[0]).astype(_W)
    n = float(s.scale_denominator)
    dim_off = e * DIM_LINE_OFFSET * n
    ext_end = e * (DIM_LINE_OFFSET + EXT_OVERSHOOT) * n
    text_off = e * (DIM_LINE_OFFSET + TEXT_GAP) * n

    out = []
    for p in pipes:
        a = to_revi(p.a, s.offsets, p.id, tol).astype(_W)
        b = to_revi(p.b, s.offsets, p.id, tol).astype(_W)
        out.append(DimensionEntity(
            pipe=p.id,
            value=p.length,
            ext1=(freeze(a), freeze(a + ext_end)),
            ext2=(freeze(b), freeze(b + ext_end)),
            dim_line=(freeze(a + dim_off), freeze(b + dim_off)),
            text_anchor=freeze((a + b) / 2 + text_off),
        ))
    return out


def validate(s: Schematic, tol: TolLike = None) -> list:
    """Every invariant violation in ``s`` as a :class:`Diagnostic`; empty when clean."""
    tol = as_tol(tol, COORD_TOL)
    diags = []

    def report(entity, code, message):
        diags.append(Diagnostic("error", str(entity), code, message))

    n = s.scale_denominator
    if not (np.isfinite(n) and n > 0):
        report("meta", "InvalidScale", f"scale denominator must be positive, got {n!r}")
        return diags

    pipe_ids = {}
    sound_pipes = set()
    for p in s.pipes:
        if p.id in pipe_ids:
            report(p.id, "DuplicateId", "pipe id used more than once")
            continue
        pipe_ids[p.id] = p
        if not (np.all(np.isfinite(p.a)) and np.all(np.isfinite(p.b))):
            report(p.id, "InvalidValue", "pipe endpoint is not finite")
        elif not p.length > tol.eps:
            report(p.id, "DegenerateVector", f"pipe length {float(p.length):g} is not above {tol.eps:g}")
        else:
            sound_pipes.add(p.id)

    blocks = {}
    for b in s.library:
        if b.id in blocks:
            report(b.id, "DuplicateId", "block id used more than once")
            continue
        blocks[b.id] = b
        if b.cut is not None:
            x0, x1 = b.cut
            if x0 > x1:
                report(b.id, "InvalidBlock", f"cut [{x0:g}, {x1:g}] is reversed")
            elif x1 > x0 and not x0 <= 0 <= x1:
                report(b.id, "InvalidBlock", f"cut [{x0:g}, {x1:g}] does not contain the anchor")

    bad_attach = set()
    inst_ids = set()
    for inst in s.instances:
        if inst.id in inst_ids:
            report(inst.id, "DuplicateId", "instance id used more than once")
        inst_ids.add(inst.id)
        ok = True
        if inst.block not in blocks:
            report(inst.id, "UnknownBlock", f"block {inst.block!r} is not in the library")
            ok = False
        if inst.pipe not in pipe_ids:
            report(inst.id, "UnknownPipe", f"pipe {inst.pipe!r} does not exist")
            ok = False
        elif inst.pipe not in sound_pipes:
            ok = False
        if ok:
            try:
                build_placement(s, inst, tol)
            except AxoError as exc:
                report(inst.id, exc.code, str(exc))
                ok = False
        if not ok:
            bad_attach.add(inst.pipe)

    for i, off in enumerate(s.offsets.local):
        entity = f"offsets.local[{i}]"
        if not off.pipes:
            report(entity, "EmptyBranch", "local offset names no pipes")
        for pid in sorted(off.pipes):
            if pid not in pipe_ids:
                report(entity, "UnknownPipe", f"pipe {pid!r} does not exist")

    for i, run in enumerate(s.dimension_runs):
        entity = f"dimension_runs[{i}]"
        missing = [pid for pid in run if pid not in pipe_ids]
        for pid in missing:
            report(entity, "UnknownPipe", f"pipe {pid!r} does not exist")
        if missing or any(pid not in sound_pipes for pid in run):
            continue
        try:
            chain_dimensions(s, run, tol)
        except AxoError as exc:
            report(entity, exc.code, str(exc))

    for pid in sorted(sound_pipes, key=lambda x: pipe_ids[x].list_no):
        if pid in bad_attach:
            continue
        try:
            cut_intervals(s, pipe_ids[pid], tol)
        except OverlappingBlocks as exc:
            report(pid, exc.code, str(exc))
        except CutOutOfRange as exc:
            report(pid, exc.code, str(exc))
    return diags
