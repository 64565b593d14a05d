"""Matrix-vector products, composition, determinants and the affine operators.

Three operator kinds move geometry between coordinate systems:

``ProjectionOp``  (V2 shift, M23)  3D model space -> 2D drawing
``PlacementOp``   (V3 shift, M32)  block library plane -> 3D model space
``TransitionOp``  (V2 shift, M22)  block library plane -> 2D drawing
"""

from __future__ import annotations

import math
from dataclasses import InitVar, dataclass

import numpy as np

from .errors import DegenerateInput, DegenerateVector, InvalidPlane, InvalidScale, NotCollinear
from .numeric import FLOAT, ORT_EPS, ORT_TOL, TolLike, as_tol, freeze, unbox
from .vectors import collinear_scalar

_W = np.float64


def _mat(m, shape) -> np.ndarray:
    arr = np.asarray(m, dtype=FLOAT)
    if arr.shape[-2:] != shape:
        raise ValueError(f"expected matrix shape {shape}, got {arr.shape}")
    return arr.astype(_W)


def _vec(v, n) -> np.ndarray:
    arr = np.asarray(v, dtype=FLOAT)
    if arr.shape[-1:] != (n,):
        raise ValueError(f"expected trailing dimension {n}, got shape {arr.shape}")
    return arr.astype(_W)


def _mv(m, v, shape):
    return np.einsum("...ij,...j->...i", _mat(m, shape), _vec(v, shape[1]))


def mul_m22_v2(m, v) -> np.ndarray:
    return freeze(_mv(m, v, (2, 2)))


def mul_m23_v3(m, v) -> np.ndarray:
    return freeze(_mv(m, v, (2, 3)))


def mul_m32_v2(m, v) -> np.ndarray:
    return freeze(_mv(m, v, (3, 2)))


def mul_m33_v3(m, v) -> np.ndarray:
    return freeze(_mv(m, v, (3, 3)))


def compose_2332(a, b) -> np.ndarray:
    """``a @ b`` for an M23 and an M32, giving an M22."""
    return freeze(np.einsum("...ij,...jk->...ik", _mat(a, (2, 3)), _mat(b, (3, 2))))


def det22(m) -> np.float32:
    m = _mat(m, (2, 2))
    d = m[..., 0, 0] * m[..., 1, 1] - m[..., 0, 1] * m[..., 1, 0]
    return FLOAT(d) if np.ndim(d) == 0 else freeze(d)


def columns(e1, e2) -> np.ndarray:
    """M32 whose columns are the two V3 arguments."""
    return freeze(np.stack([_vec(e1, 3), _vec(e2, 3)], axis=-1))


@dataclass(frozen=True, eq=False)
class ProjectionOp:
    """Affine map ``p -> m p + shift`` from a 3D system to a 2D one.

    Construction rejects rank-deficient ``m`` unless ``check=False``.
    """

    shift: np.ndarray
    m: np.ndarray
    check: InitVar[bool] = True

    def __post_init__(self, check):
        object.__setattr__(self, "shift", freeze(_vec(self.shift, 2)))
        object.__setattr__(self, "m", freeze(_mat(self.m, (2, 3))))
        if self.shift.shape != (2,) or self.m.shape != (2, 3):
            raise ValueError("ProjectionOp holds a single V2 shift and M23")
        if check:
            r1, r2 = self.m.astype(_W)
            area = np.linalg.norm(np.cross(r1, r2))
            if not area > ORT_EPS * np.linalg.norm(r1) * np.linalg.norm(r2):
                raise DegenerateInput("projection matrix has rank below 2")


@dataclass(frozen=True, eq=False)
class PlacementOp:
    """Affine map ``q -> m q + shift`` from a block's library plane into 3D."""

    shift: np.ndarray
    m: np.ndarray
    check: InitVar[bool] = True

    def __post_init__(self, check):
        object.__setattr__(self, "shift", freeze(_vec(self.shift, 3)))
        object.__setattr__(self, "m", freeze(_mat(self.m, (3, 2))))
        if self.shift.shape != (3,) or self.m.shape != (3, 2):
            raise ValueError("PlacementOp holds a single V3 shift and M32")
        if check:
            try:
                collinear_scalar(self.m[:, 0], self.m[:, 1])
            except NotCollinear:
                return
            except DegenerateVector:
                pass
            raise DegenerateInput("placement columns are collinear; the block plane is not 2D")


@dataclass(frozen=True, eq=False)
class TransitionOp:
    """Affine map ``q -> m q + shift`` between two 2D systems."""

    shift: np.ndarray
    m: np.ndarray

    def __post_init__(self):
        object.__setattr__(self, "shift", freeze(_vec(self.shift, 2)))
        object.__setattr__(self, "m", freeze(_mat(self.m, (2, 2))))


@dataclass(frozen=True, eq=False)
class OrientedPlane:
    """The plane ``{p : n.p == c}``; its positive side is ``n.p > c``."""

    n: np.ndarray
    c: float

    def __post_init__(self):
        n = freeze(_vec(self.n, 3))
        if n.shape != (3,) or not abs(float(np.linalg.norm(n.astype(_W))) - 1.0) <= ORT_EPS:
            raise InvalidPlane(f"plane normal {n.tolist()} is not a unit vector")
        object.__setattr__(self, "n", n)
        object.__setattr__(self, "c", FLOAT(self.c))

    def signed_distance(self, p):
        """``n.p - c`` in double precision."""
        return _vec(p, 3) @ self.n.astype(_W) - _W(self.c)


def apply_projection(op: ProjectionOp, p) -> np.ndarray:
    return freeze(_mv(op.m, p, (2, 3)) + op.shift.astype(_W))


def apply_placement(op: PlacementOp, q) -> np.ndarray:
    return freeze(_mv(op.m, q, (3, 2)) + op.shift.astype(_W))


def apply_transition(op: TransitionOp, q) -> np.ndarray:
    return freeze(_mv(op.m, q, (2, 2)) + op.shift.astype(_W))


def compose_transition(proj: ProjectionOp, place: PlacementOp) -> TransitionOp:
    """Single operator equal to placing a block and then projecting it."""
    shift = _mv(proj.m, place.shift, (2, 3)) + proj.shift.astype(_W)
    return TransitionOp(shift, compose_2332(proj.m, place.m))


def invert_transition(op: TransitionOp, tol: TolLike = None) -> TransitionOp:
    eps = as_tol(tol, ORT_TOL).eps
    m = op.m.astype(_W)
    d = m[0, 0] * m[1, 1] - m[0, 1] * m[1, 0]
    if not abs(d) > eps:
        raise DegenerateInput(f"transition matrix is singular (det {d:g})")
    inv = np.array([[m[1, 1], -m[0, 1]], [-m[1, 0], m[0, 0]]]) / d
    return TransitionOp(-(inv @ op.shift.astype(_W)), inv)


def plane_collapses(m, e1, e2, tol: TolLike = None) -> bool:
    """Whether ``m`` maps the plane spanned by ``e1`` and ``e2`` onto a line or point.

    The test is ``|det(m [e1|e2])| <= eps |e1| |e2|``, so the verdict does not
    change when either spanning vector is rescaled.
    """
    tol = as_tol(tol, ORT_TOL)
    try:
        collinear_scalar(e1, e2, tol)
    except NotCollinear:
        pass
    except DegenerateVector as exc:
        raise DegenerateInput("plane spanning vector is zero") from exc
    else:
        raise DegenerateInput("plane spanning vectors are parallel")
    a, b = _vec(e1, 3), _vec(e2, 3)
    img = np.einsum("...ij,...jk->...ik", _mat(m, (2, 3)), np.stack([a, b], axis=-1))
    d = img[..., 0, 0] * img[..., 1, 1] - img[..., 0, 1] * img[..., 1, 0]
    limit = tol.eps * np.linalg.norm(a, axis=-1) * np.linalg.norm(b, axis=-1)
    return unbox(np.abs(d) <= limit)


def default_isometric(scale=1.0) -> ProjectionOp:
    """Isometric projection with Z vertical and view direction (1, 1, 1).

    X goes down-right at 30 degrees, Y down-left at 30 degrees, Z straight up;
    every axis ort maps to a drawing vector of length ``scale``.
    """
    s = float(scale)
    if not (math.isfinite(s) and s > 0):
        raise InvalidScale(f"projection scale must be positive, got {scale!r}")
    h = math.sqrt(3.0) / 2.0
    m = np.array([[h, -h, 0.0], [-0.5, -0.5, 1.0]]) * s
    return ProjectionOp((0.0, 0.0), m)
