"""JSON schematic documents.

Layout::

    {
      "meta": {"anchor": [x, y], "scale_denominator": N,
               "projection": {"m": [[...], [...]], "shift": [x, y]}},
      "pipes": [{"id": "P1", "a": [x, y, z], "b": [x, y, z]}],
      "library": [{"id": "valve", "cut": [x0, x1], "polylines": [[[x, y], ...]]}],
      "instances": [{"block": "valve", "pipe": "P1", "t": 400, "plane_axis": 1}],
      "offsets": {"general": [{"n": [...], "c": c, "d": [...]}],
                  "local": [{"pipes": ["P3"], "d": [...]}]},
      "dimension_runs": [["P1", "P2"]]
    }

``projection`` is optional (default isometric), as are ``cut``, the
instance ``id`` and every top-level key except ``meta``.
"""

from __future__ import annotations

import json
import math
from pathlib import Path

import numpy as np

from .errors import DegenerateInput, InvalidPlane, ParseError, ValidationFailed
from .linear import OrientedPlane, ProjectionOp, default_isometric
from .model import Block, BlockInstance, Diagnostic, Pipe, Schematic, validate
from .offsets import GeneralOffset, LocalOffset, OffsetContext


def _numbers(value, n, where):
    if not isinstance(value, (list, tuple)) or len(value) != n:
        raise ParseError(f"{where}: expected a list of {n} numbers")
    out = []
    for i, x in enumerate(value):
        if isinstance(x, bool) or not isinstance(x, (int, float)) or not math.isfinite(x):
            raise ParseError(f"{where}[{i}]: expected a finite number, got {x!r}")
        out.append(float(x))
    return out


def _number(value, where):
    return _numbers([value], 1, where)[0]


def _field(obj, key, where, default=...):
    if not isinstance(obj, dict):
        raise ParseError(f"{where}: expected an object")
    if key not in obj:
        if default is ...:
            raise ParseError(f"{where}.{key}: missing field")
        return default
    return obj[key]


def _list(value, where):
    if not isinstance(value, list):
        raise ParseError(f"{where}: expected a list")
    return value


def _ident(value, where):
    if not isinstance(value, str) or not value:
        raise ParseError(f"{where}: expected a non-empty string id")
    return value


def parse_schematic(doc) -> tuple:
    """Build a :class:`Schematic` from decoded JSON.

    Returns ``(schematic, diagnostics)`` where the diagnostics cover problems
    found while building operators (bad plane normals, rank-deficient
    projections); the offending entities are left out of the schematic.
    Structural problems raise :class:`ParseError`.
    """
    diags = []
    meta = _field(doc, "meta", "document")
    anchor = _numbers(_field(meta, "anchor", "meta", [0.0, 0.0]), 2, "meta.anchor")
    scale = _number(_field(meta, "scale_denominator", "meta", 1.0), "meta.scale_denominator")

    proj_doc = _field(meta, "projection", "meta", None)
    projection = default_isometric(1.0)
    if proj_doc is not None:
        rows = _list(_field(proj_doc, "m", "meta.projection"), "meta.projection.m")
        if len(rows) != 2:
            raise ParseError("meta.projection.m: expected 2 rows")
        m = [_numbers(r, 3, f"meta.projection.m[{i}]") for i, r in enumerate(rows)]
        shift = _numbers(_field(proj_doc, "shift", "meta.projection", [0.0, 0.0]), 2, "meta.projection.shift")
        try:
            projection = ProjectionOp(shift, m)
        except DegenerateInput as exc:
            diags.append(Diagnostic("error", "meta.projection", "DegenerateProjection", str(exc)))

    pipes = []
    for i, raw in enumerate(_list(_field(doc, "pipes", "document", []), "pipes")):
        where = f"pipes[{i}]"
        pipes.append(Pipe(
            id=_ident(_field(raw, "id", where), f"{where}.id"),
            a=_numbers(_field(raw, "a", where), 3, f"{where}.a"),
            b=_numbers(_field(raw, "b", where), 3, f"{where}.b"),
            list_no=i,
        ))

    library = []
    for i, raw in enumerate(_list(_field(doc, "library", "document", []), "library")):
        where = f"library[{i}]"
        cut = _field(raw, "cut", where, None)
        polylines = []
        for j, pl in enumerate(_list(_field(raw, "polylines", where, []), f"{where}.polylines")):
            polylines.append([_numbers(pt, 2, f"{where}.polylines[{j}][{k}]")
                              for k, pt in enumerate(_list(pl, f"{where}.polylines[{j}]"))])
        library.append(Block(
            id=_ident(_field(raw, "id", where), f"{where}.id"),
            polylines=polylines,
            cut=None if cut is None else tuple(_numbers(cut, 2, f"{where}.cut")),
        ))

    instances = []
    for i, raw in enumerate(_list(_field(doc, "instances", "document", []), "instances")):
        where = f"instances[{i}]"
        block = _ident(_field(raw, "block", where), f"{where}.block")
        pipe = _ident(_field(raw, "pipe", where), f"{where}.pipe")
        axis = _field(raw, "plane_axis", where)
        if isinstance(axis, bool) or not isinstance(axis, int):
            raise ParseError(f"{where}.plane_axis: expected an integer axis index")
        inst_id = _field(raw, "id", where, None)
        instances.append(BlockInstance(
            block=block,
            pipe=pipe,
            t=_number(_field(raw, "t", where), f"{where}.t"),
            plane_axis=axis,
            id=_ident(inst_id, f"{where}.id") if inst_id is not None else f"{block}@{pipe}#{i}",
        ))

    offsets_doc = _field(doc, "offsets", "document", {})
    general = []
    for i, raw in enumerate(_list(_field(offsets_doc, "general", "offsets", []), "offsets.general")):
        where = f"offsets.general[{i}]"
        n = _numbers(_field(raw, "n", where), 3, f"{where}.n")
        c = _number(_field(raw, "c", where), f"{where}.c")
        d = _numbers(_field(raw, "d", where), 3, f"{where}.d")
        try:
            general.append(GeneralOffset(OrientedPlane(n, c), d))
        except InvalidPlane as exc:
            diags.append(Diagnostic("error", where, exc.code, str(exc)))
    local = []
    for i, raw in enumerate(_list(_field(offsets_doc, "local", "offsets", []), "offsets.local")):
        where = f"offsets.local[{i}]"
        ids = [_ident(x, f"{where}.pipes") for x in _list(_field(raw, "pipes", where), f"{where}.pipes")]
        local.append(LocalOffset(frozenset(ids), _numbers(_field(raw, "d", where), 3, f"{where}.d")))

    runs = []
    for i, run in enumerate(_list(_field(doc, "dimension_runs", "document", []), "dimension_runs")):
        runs.append(tuple(_ident(x, f"dimension_runs[{i}]") for x in _list(run, f"dimension_runs[{i}]")))

    s = Schematic(
        anchor=anchor,
        scale_denominator=scale,
        projection=projection,
        pipes=pipes,
        library=library,
        instances=instances,
        offsets=OffsetContext(general, local, pipe_ids=frozenset(p.id for p in pipes)),
        dimension_runs=runs,
    )
    return s, diags


def read_schematic(path, tol=None) -> tuple:
    """``(schematic, diagnostics)`` for a document file, without raising on diagnostics."""
    try:
        text = Path(path).read_text(encoding="utf-8")
    except UnicodeDecodeError as exc:
        raise ParseError(f"{path}: not UTF-8 ({exc})") from exc
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ParseError(f"{path}: line {exc.lineno} column {exc.colno}: {exc.msg}") from exc
    s, diags = parse_schematic(doc)
    return s, diags + validate(s, tol)


def load_schematic(path, tol=None) -> Schematic:
    """Parse and validate a document; raises :class:`ValidationFailed` on any diagnostic."""
    s, diags = read_schematic(path, tol)
    if diags:
        raise ValidationFailed(diags, s)
    return s


def _floats(arr):
    return [float(x) for x in np.asarray(arr, dtype=np.float32).reshape(-1)]


def schematic_to_dict(s: Schematic) -> dict:
    """Inverse of :func:`parse_schematic`; float32 values survive the round trip bit for bit."""
    g = s.offsets
    return {
        "meta": {
            "anchor": _floats(s.anchor),
            "scale_denominator": float(s.scale_denominator),
            "projection": {
                "m": [_floats(row) for row in s.projection.m],
                "shift": _floats(s.projection.shift),
            },
        },
        "pipes": [{"id": p.id, "a": _floats(p.a), "b": _floats(p.b)} for p in s.pipes],
        "library": [
            {
                "id": b.id,
                "cut": None if b.cut is None else list(b.cut),
                "polylines": [[_floats(pt) for pt in pl] for pl in b.polylines],
            }
            for b in s.library
        ],
        "instances": [
            {"id": i.id, "block": i.block, "pipe": i.pipe, "t": i.t, "plane_axis": int(i.plane_axis)}
            for i in s.instances
        ],
        "offsets": {
            "general": [
                {"n": _floats(o.plane.n), "c": float(o.plane.c), "d": _floats(o.d)} for o in g.general
            ],
            "local": [{"pipes": sorted(o.pipes), "d": _floats(o.d)} for o in g.local],
        },
        "dimension_runs": [list(r) for r in s.dimension_runs],
    }
