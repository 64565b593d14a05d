"""Single-precision numeric carriers, flat element addressing and tolerant comparisons.

Vectors and matrices are plain read-only ``numpy.float32`` arrays:

* ``V2``/``V3`` have shape ``(2,)``/``(3,)``
* ``M22``, ``M23``, ``M32``, ``M33`` are row-major with shape ``(rows, cols)``

Every kernel operation also accepts stacks of such values (extra leading
axes) and broadcasts over them.  Results are always rounded back to float32;
widening to float64 happens only inside a single operation.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Union

import numpy as np

FLOAT = np.float32

#: default absolute tolerance for coordinates, mm
COORD_EPS = 1e-3
#: default absolute tolerance for dimensionless quantities (ort components)
ORT_EPS = 1e-5


@dataclass(frozen=True)
class Tolerance:
    """Absolute comparison threshold in the unit of the compared quantity.

    The boundary is inclusive, so ``eps == 0`` means exact equality.
    """

    eps: float

    def __post_init__(self):
        eps = float(np.float32(self.eps))
        if not np.isfinite(eps) or eps < 0:
            raise ValueError(f"tolerance must be finite and non-negative, got {self.eps!r}")
        object.__setattr__(self, "eps", eps)


COORD_TOL = Tolerance(COORD_EPS)
ORT_TOL = Tolerance(ORT_EPS)

TolLike = Union[Tolerance, float, None]


def as_tol(tol: TolLike, default: Tolerance = COORD_TOL) -> Tolerance:
    if tol is None:
        return default
    if isinstance(tol, Tolerance):
        return tol
    return Tolerance(tol)


def freeze(arr) -> np.ndarray:
    """Round to float32 and mark read-only."""
    out = np.array(arr, dtype=FLOAT)
    out.setflags(write=False)
    return out


def as_float(x) -> np.float32:
    return FLOAT(x)


def _sized(values, shape, name):
    arr = freeze(values)
    if arr.shape != shape:
        raise ValueError(f"{name} expects shape {shape}, got {arr.shape}")
    return arr


def v2(x, y) -> np.ndarray:
    return freeze([x, y])


def v3(x, y, z) -> np.ndarray:
    return freeze([x, y, z])


def m22(rows) -> np.ndarray:
    return _sized(rows, (2, 2), "M22")


def m23(rows) -> np.ndarray:
    return _sized(rows, (2, 3), "M23")


def m32(rows) -> np.ndarray:
    return _sized(rows, (3, 2), "M32")


def m33(rows) -> np.ndarray:
    return _sized(rows, (3, 3), "M33")


def identity(n: int) -> np.ndarray:
    return freeze(np.eye(n))


def _check_index(agg: np.ndarray, i) -> int:
    i = int(i)
    if not 0 <= i < agg.size:
        raise IndexError(f"flat index {i} outside [0, {agg.size})")
    return i


def get_elem(agg, i) -> np.float32:
    """Element at flat row-major index ``i``."""
    agg = np.asarray(agg, dtype=FLOAT)
    return FLOAT(agg.reshape(-1)[_check_index(agg, i)])


def set_elem(agg, i, value) -> np.ndarray:
    """Copy of ``agg`` with the element at flat index ``i`` replaced."""
    out = np.array(agg, dtype=FLOAT)
    out.reshape(-1)[_check_index(out, i)] = FLOAT(value)
    out.setflags(write=False)
    return out


def unbox(x):
    """Plain Python scalar for 0-d results, the array otherwise."""
    x = np.asarray(x)
    return x.item() if x.ndim == 0 else x


def is_zero(v, tol: TolLike = None):
    eps = as_tol(tol).eps
    return unbox(np.abs(np.asarray(v, dtype=FLOAT).astype(np.float64)) <= eps)


def is_one(v, tol: TolLike = None):
    eps = as_tol(tol).eps
    return unbox(np.abs(np.asarray(v, dtype=FLOAT).astype(np.float64) - 1.0) <= eps)


def v_eq(a, b, tol: TolLike = None):
    """Componentwise equality within ``tol``; reduces over the last axis.

    Reflexive and symmetric but not transitive.
    """
    a = np.asarray(a, dtype=FLOAT).astype(np.float64)
    b = np.asarray(b, dtype=FLOAT).astype(np.float64)
    if a.shape[-1] != b.shape[-1]:
        raise ValueError(f"dimension mismatch: {a.shape[-1]} vs {b.shape[-1]}")
    eps = as_tol(tol).eps
    return unbox(np.all(np.abs(a - b) <= eps, axis=-1))
