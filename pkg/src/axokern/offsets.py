"""Axis indices and the real-space <-> visible-space <-> paper transforms.

Pipe endpoints live in real 3D space (mm of the full-size object).  The
visible space is the same frame after conventional displacements:

* a general offset moves everything on the positive side of an oriented
  plane by ``d``;
* a local offset moves the points of an explicit set of pipes by ``d``.

General offsets are processed first, front to back, each testing the point
as already displaced by the earlier ones; local offsets follow.  A point
within ``eps`` of a plane stays put, so junctions on the plane are shared
by both sides.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass
from typing import Iterable, Optional

import numpy as np

from .errors import AmbiguousInverse, DegenerateVector, InvalidScale, NotAxisAligned, UnknownPipe
from .linear import OrientedPlane, ProjectionOp
from .numeric import FLOAT, ORT_TOL, TolLike, as_tol, freeze, v_eq

_W = np.float64


class AxisIndex(enum.IntEnum):
    PX = 1
    PY = 2
    PZ = 3
    NX = -1
    NY = -2
    NZ = -3

    def __neg__(self):
        return AxisIndex(-int(self))


def axis_ort(k) -> np.ndarray:
    k = AxisIndex(int(k))
    out = np.zeros(3)
    out[abs(k) - 1] = 1.0 if k > 0 else -1.0
    return freeze(out)


def axis_index(v, tol: TolLike = None) -> AxisIndex:
    """Signed axis whose ort matches the direction of ``v`` within ``tol``.

    ``tol`` bounds each component of the normalized vector, so it is
    dimensionless; only an exactly zero ``v`` is degenerate.
    """
    eps = as_tol(tol, ORT_TOL).eps
    v = np.asarray(v, dtype=FLOAT).astype(_W)
    n = float(np.linalg.norm(v))
    if not (n > 0 and math.isfinite(n)):
        raise DegenerateVector(f"cannot take the direction of {v.tolist()}")
    u = freeze(v / n)
    i = int(np.argmax(np.abs(u)))
    k = AxisIndex((i + 1) if u[i] > 0 else -(i + 1))
    if not v_eq(u, axis_ort(k), eps):
        raise NotAxisAligned(f"direction {u.tolist()} is not along a coordinate axis")
    return k


class OffsetMode(str, enum.Enum):
    ALL = "all"
    GENERAL = "general"
    LOCAL = "local"
    NONE = "none"

    @property
    def uses_general(self):
        return self in (OffsetMode.ALL, OffsetMode.GENERAL)

    @property
    def uses_local(self):
        return self in (OffsetMode.ALL, OffsetMode.LOCAL)


@dataclass(frozen=True, eq=False)
class GeneralOffset:
    plane: OrientedPlane
    d: np.ndarray

    def __post_init__(self):
        d = freeze(self.d)
        if d.shape != (3,) or not np.all(np.isfinite(d)):
            raise ValueError(f"offset displacement must be a finite V3, got {self.d!r}")
        object.__setattr__(self, "d", d)


@dataclass(frozen=True, eq=False)
class LocalOffset:
    pipes: frozenset
    d: np.ndarray

    def __post_init__(self):
        object.__setattr__(self, "pipes", frozenset(self.pipes))
        d = freeze(self.d)
        if d.shape != (3,) or not np.all(np.isfinite(d)):
            raise ValueError(f"offset displacement must be a finite V3, got {self.d!r}")
        object.__setattr__(self, "d", d)


@dataclass(frozen=True)
class OffsetContext:
    """Ordered offsets plus the mode filter.

    ``pipe_ids``, when given, is the set of pipe ids a membership argument may
    name; anything else raises :class:`UnknownPipe`.
    """

    general: tuple = ()
    local: tuple = ()
    mode: OffsetMode = OffsetMode.ALL
    pipe_ids: Optional[frozenset] = None

    def __post_init__(self):
        object.__setattr__(self, "general", tuple(self.general))
        object.__setattr__(self, "local", tuple(self.local))
        object.__setattr__(self, "mode", OffsetMode(self.mode))
        if self.pipe_ids is not None:
            object.__setattr__(self, "pipe_ids", frozenset(self.pipe_ids))

    def with_mode(self, mode) -> "OffsetContext":
        return OffsetContext(self.general, self.local, OffsetMode(mode), self.pipe_ids)


def _check_membership(ctx: OffsetContext, membership):
    if membership is not None and ctx.pipe_ids is not None and membership not in ctx.pipe_ids:
        raise UnknownPipe(f"pipe {membership!r} is not part of the schematic")


def _active_local(ctx: OffsetContext, membership) -> Iterable[LocalOffset]:
    if membership is None or not ctx.mode.uses_local:
        return ()
    return [lo for lo in ctx.local if membership in lo.pipes]


def revi_displacement(p, ctx: OffsetContext, membership=None, tol: TolLike = None) -> np.ndarray:
    """Total displacement ``to_revi`` adds to ``p``, rounded once to float32.

    Points that trigger the same offsets get a bit-identical displacement.
    """
    _check_membership(ctx, membership)
    eps = as_tol(tol).eps
    p = np.asarray(p, dtype=FLOAT).astype(_W)
    total = np.zeros_like(p)
    if ctx.mode.uses_general:
        for off in ctx.general:
            hit = off.plane.signed_distance(p + total) > eps
            total = total + np.where(hit[..., None], off.d.astype(_W), 0.0)
    for off in _active_local(ctx, membership):
        total = total + off.d.astype(_W)
    return freeze(total)


def to_revi(p, ctx: OffsetContext, membership=None, tol: TolLike = None) -> np.ndarray:
    """Real-space point(s) to visible space."""
    d = revi_displacement(p, ctx, membership, tol)
    return freeze(np.asarray(p, dtype=FLOAT).astype(_W) + d.astype(_W))


def from_revi(q, ctx: OffsetContext, membership=None, tol: TolLike = None) -> np.ndarray:
    """Visible-space point(s) back to real space; inverse of :func:`to_revi`.

    Offsets are undone back to front.  A general offset is undone when the
    point with its displacement removed lies on the plane's positive side.
    :class:`AmbiguousInverse` is raised when that un-shifted point is within
    ``eps`` of the plane, or when both readings are consistent (displacements
    pointing into the plane overlap the two half-spaces).  Points in the gap
    an offset opens have no preimage and are returned unchanged there.
    """
    _check_membership(ctx, membership)
    eps = as_tol(tol).eps
    cur = np.asarray(q, dtype=FLOAT).astype(_W)
    for off in reversed(list(_active_local(ctx, membership))):
        cur = cur - off.d.astype(_W)
    if ctx.mode.uses_general:
        for off in reversed(ctx.general):
            d = off.d.astype(_W)
            h_in = off.plane.signed_distance(cur - d)
            h_out = off.plane.signed_distance(cur)
            shifted = h_in > eps
            if np.any(np.abs(h_in) <= eps) or np.any(shifted & (h_out <= eps)):
                raise AmbiguousInverse("point lies on an offset plane after un-shifting")
            cur = cur - np.where(shifted[..., None], d, 0.0)
    return freeze(cur)


def revi_to_paper(p, proj: ProjectionOp, anchor, scale_denominator) -> np.ndarray:
    """Visible-space point(s) to paper mm: project, divide by the scale, anchor."""
    n = float(scale_denominator)
    if not (math.isfinite(n) and n > 0):
        raise InvalidScale(f"scale denominator must be positive, got {scale_denominator!r}")
    p = np.asarray(p, dtype=FLOAT).astype(_W)
    m = proj.m.astype(_W)
    img = np.einsum("ij,...j->...i", m, p) + proj.shift.astype(_W)
    return freeze(img / n + np.asarray(anchor, dtype=FLOAT).astype(_W))
