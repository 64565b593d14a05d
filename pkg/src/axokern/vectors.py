"""V2/V3 arithmetic: additive ops, scaling, products, lengths, orts and distances.

All functions broadcast over leading axes.  Scalar results come back as
``numpy.float32``; vector results as read-only float32 arrays.
"""

from __future__ import annotations

import numpy as np

from .errors import DegenerateVector, NotCollinear
from .numeric import FLOAT, ORT_TOL, TolLike, as_tol, freeze

_W = np.float64


def _wide(v, n=None) -> np.ndarray:
    arr = np.asarray(v, dtype=FLOAT)
    if n is not None and arr.shape[-1:] != (n,):
        raise ValueError(f"expected trailing dimension {n}, got shape {arr.shape}")
    return arr.astype(_W)


def _scalar(x):
    x = np.asarray(x)
    return FLOAT(x) if x.ndim == 0 else freeze(x)


def _same_dim(a, b):
    a = _wide(a)
    b = _wide(b)
    if a.shape[-1] != b.shape[-1]:
        raise ValueError(f"dimension mismatch: {a.shape[-1]} vs {b.shape[-1]}")
    return a, b


def zero(dim: int) -> np.ndarray:
    if dim not in (2, 3):
        raise ValueError(f"only V2 and V3 exist, got dimension {dim}")
    return freeze(np.zeros(dim))


def negate(v) -> np.ndarray:
    return freeze(-_wide(v))


def add(a, b) -> np.ndarray:
    a, b = _same_dim(a, b)
    return freeze(a + b)


def sub(a, b) -> np.ndarray:
    a, b = _same_dim(a, b)
    return freeze(a - b)


def scale(v, s) -> np.ndarray:
    s = np.asarray(s, dtype=FLOAT).astype(_W)
    return freeze(_wide(v) * s[..., None] if s.ndim else _wide(v) * s)


def scale_run(buffer, start: int, count: int, s) -> np.ndarray:
    """Copy of a flat Float buffer with ``count`` elements from ``start`` multiplied by ``s``."""
    flat = np.array(buffer, dtype=FLOAT)
    view = flat.reshape(-1)
    start, count = int(start), int(count)
    if start < 0 or count < 0 or start + count > view.size:
        raise IndexError(f"run [{start}, {start + count}) outside buffer of {view.size}")
    run = view[start:start + count].astype(_W) * _W(FLOAT(s))
    view[start:start + count] = run.astype(FLOAT)
    flat.setflags(write=False)
    return flat


def dot2(a, b) -> np.float32:
    a, b = _wide(a, 2), _wide(b, 2)
    return _scalar(a[..., 0] * b[..., 0] + a[..., 1] * b[..., 1])


def dot3(a, b) -> np.float32:
    a, b = _wide(a, 3), _wide(b, 3)
    return _scalar(a[..., 0] * b[..., 0] + a[..., 1] * b[..., 1] + a[..., 2] * b[..., 2])


def rot90ccw(y) -> np.ndarray:
    y = _wide(y, 2)
    return freeze(np.stack([-y[..., 1], y[..., 0]], axis=-1))


def perp_dot(x, y) -> np.float32:
    """Dot of ``x`` with ``y`` turned 90 degrees counter-clockwise (X right, Y up).

    For a unit ``y`` the magnitude is the distance from point ``x`` to the
    line through the origin along ``y``.
    """
    x, y = _wide(x, 2), _wide(y, 2)
    return _scalar(x[..., 1] * y[..., 0] - x[..., 0] * y[..., 1])


def _norm(v: np.ndarray) -> np.ndarray:
    return np.sqrt(np.sum(v * v, axis=-1))


def len2(v) -> np.float32:
    return _scalar(_norm(_wide(v, 2)))


def len3(v) -> np.float32:
    return _scalar(_norm(_wide(v, 3)))


def _unit(v: np.ndarray, eps: float) -> np.ndarray:
    n = _norm(v)
    bad = ~(n > eps)
    if np.any(bad):
        raise DegenerateVector(f"vector length {float(np.min(n)):g} is not above {eps:g}")
    return freeze(v / n[..., None])


def ort2(v, tol: TolLike = None) -> np.ndarray:
    return _unit(_wide(v, 2), as_tol(tol).eps)


def ort3(v, tol: TolLike = None) -> np.ndarray:
    return _unit(_wide(v, 3), as_tol(tol).eps)


def dist2(a, b) -> np.float32:
    return len2(sub(b, a))


def dist3(a, b) -> np.float32:
    return len3(sub(b, a))


def dir_ort2(a, b, tol: TolLike = None) -> np.ndarray:
    """Unit vector pointing from ``a`` to ``b``."""
    return _unit(_wide(b, 2) - _wide(a, 2), as_tol(tol).eps)


def dir_ort3(a, b, tol: TolLike = None) -> np.ndarray:
    return _unit(_wide(b, 3) - _wide(a, 3), as_tol(tol).eps)


def cross3(a, b) -> np.ndarray:
    a, b = _wide(a, 3), _wide(b, 3)
    return freeze(np.stack([
        a[..., 1] * b[..., 2] - a[..., 2] * b[..., 1],
        a[..., 2] * b[..., 0] - a[..., 0] * b[..., 2],
        a[..., 0] * b[..., 1] - a[..., 1] * b[..., 0],
    ], axis=-1))


def collinear_scalar(x, y, tol: TolLike = None) -> np.float32:
    """The ``k`` with ``y == k * x`` for collinear ``x`` and ``y``.

    ``k`` is the least-squares coefficient ``x.y / x.x``.  The pair is accepted
    when the residual ``|y - k x|`` is at most ``eps * max(1, |y|)``; otherwise
    :class:`NotCollinear` is raised.  A zero ``x`` raises :class:`DegenerateVector`.
    """
    eps = as_tol(tol, ORT_TOL).eps
    x, y = _wide(x, 3), _wide(y, 3)
    xx = np.sum(x * x, axis=-1)
    if np.any(~(np.sqrt(xx) > eps)):
        raise DegenerateVector("collinearity base vector is zero")
    k = np.sum(x * y, axis=-1) / xx
    residual = _norm(y - k[..., None] * x)
    limit = eps * np.maximum(1.0, _norm(y))
    if np.any(~(residual <= limit)):
        raise NotCollinear(f"residual {float(np.max(residual)):g} exceeds allowed {float(np.min(limit)):g}")
    return _scalar(k)
