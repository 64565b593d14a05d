"""2.5D geometry kernel and SVG renderer for axonometric piping schematics."""

from .errors import AxoError
from .io import load_schematic, read_schematic, schematic_to_dict
from .linear import (
    OrientedPlane,
    PlacementOp,
    ProjectionOp,
    TransitionOp,
    apply_placement,
    apply_projection,
    apply_transition,
    default_isometric,
    plane_collapses,
)
from .model import Block, BlockInstance, Pipe, Schematic, validate
from .numeric import Tolerance, m22, m23, m32, m33, v2, v3
from .offsets import AxisIndex, GeneralOffset, LocalOffset, OffsetContext, OffsetMode, from_revi, to_revi
from .render import RenderOptions, emit_svg, render

__version__ = "0.1.0"

__all__ = [
    "AxisIndex",
    "AxoError",
    "Block",
    "BlockInstance",
    "GeneralOffset",
    "LocalOffset",
    "OffsetContext",
    "OffsetMode",
    "OrientedPlane",
    "Pipe",
    "PlacementOp",
    "ProjectionOp",
    "RenderOptions",
    "Schematic",
    "Tolerance",
    "TransitionOp",
    "apply_placement",
    "apply_projection",
    "apply_transition",
    "default_isometric",
    "emit_svg",
    "from_revi",
    "load_schematic",
    "m22",
    "m23",
    "m32",
    "m33",
    "plane_collapses",
    "read_schematic",
    "render",
    "schematic_to_dict",
    "to_revi",
    "v2",
    "v3",
    "validate",
]
