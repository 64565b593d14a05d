"""Schematic -> 2D paper-space scene -> SVG."""

from __future__ import annotations

import dataclasses
from dataclasses import dataclass, field
from pathlib import Path
from typing import Optional
from xml.sax.saxutils import escape

import numpy as np

from .errors import DegenerateProjection, ValidationFailed
from .linear import PlacementOp, ProjectionOp, TransitionOp, apply_transition, compose_transition, plane_collapses
from .model import Diagnostic, Schematic, build_placement, chain_dimensions, cut_segments, validate
from .numeric import FLOAT, ORT_TOL, as_tol, v_eq
from .offsets import OffsetMode, revi_to_paper, to_revi

_W = np.float64

SVG_MARGIN = 10.0


@dataclass(frozen=True)
class RenderOptions:
    """Rendering switches.  Widths and font size are paper mm."""

    projection_override: Optional[ProjectionOp] = None
    scale_denominator: Optional[float] = None
    mode: OffsetMode = OffsetMode.ALL
    pipe_width: float = 0.5
    thin_width: float = 0.25
    font_size: float = 3.5
    tol: Optional[float] = None
    collapse_tol: float = ORT_TOL.eps
    output: Optional[str] = None

    def __post_init__(self):
        object.__setattr__(self, "mode", OffsetMode(self.mode))
        for name in ("pipe_width", "thin_width", "font_size"):
            if not getattr(self, name) > 0:
                raise ValueError(f"{name} must be positive")


@dataclass(frozen=True, eq=False)
class Segment:
    a: np.ndarray
    b: np.ndarray
    source: str = ""


@dataclass(frozen=True, eq=False)
class Polyline:
    points: np.ndarray
    source: str = ""


@dataclass(frozen=True, eq=False)
class Text:
    anchor: np.ndarray
    text: str
    source: str = ""


@dataclass(eq=False)
class RenderedScene:
    """Paper-mm primitives grouped in emission order."""

    pipes: list = field(default_factory=list)
    blocks: list = field(default_factory=list)
    dimensions: list = field(default_factory=list)
    pipe_width: float = 0.5
    thin_width: float = 0.25
    font_size: float = 3.5

    def points(self):
        for seg in self.pipes:
            yield seg.a
            yield seg.b
        for pl in self.blocks:
            yield from pl.points
        for item in self.dimensions:
            if isinstance(item, Segment):
                yield item.a
                yield item.b
            else:
                yield item.anchor

    def is_empty(self) -> bool:
        return not (self.pipes or self.blocks or self.dimensions)


def effective_schematic(s: Schematic, opts: RenderOptions) -> Schematic:
    """``s`` with the option overrides applied."""
    changes = {"offsets": s.offsets.with_mode(opts.mode)}
    if opts.projection_override is not None:
        changes["projection"] = opts.projection_override
    if opts.scale_denominator is not None:
        changes["scale_denominator"] = float(opts.scale_denominator)
    return dataclasses.replace(s, **changes)


def paper_transition(s: Schematic, place: PlacementOp) -> TransitionOp:
    """Library plane -> paper for a placed block, following its pipe's offsets."""
    n = float(s.scale_denominator)
    t = compose_transition(s.projection, place)
    shift = t.shift.astype(_W) / n + s.anchor.astype(_W)
    return TransitionOp(shift, t.m.astype(_W) / n)


def render(s: Schematic, opts: RenderOptions = RenderOptions()) -> RenderedScene:
    """Project a validated schematic onto paper.

    Raises :class:`ValidationFailed` when the document has diagnostics and
    :class:`DegenerateProjection` when a block plane projects onto a line.
    """
    s = effective_schematic(s, opts)
    tol = as_tol(opts.tol)
    diags = validate(s, tol)
    if diags:
        raise ValidationFailed(diags, s)
    ctx = s.offsets

    placements = []
    collapsed = []
    for inst in s.instances:
        place = build_placement(s, inst, tol)
        if plane_collapses(s.projection.m, place.m[:, 0], place.m[:, 1], opts.collapse_tol):
            collapsed.append(Diagnostic(
                "error", inst.id, "DegenerateProjection",
                "block plane projects onto a line under the current projection",
            ))
        placements.append((inst, place))
    if collapsed:
        raise DegenerateProjection(f"{len(collapsed)} block plane(s) collapse", collapsed)

    def paper(p):
        return revi_to_paper(p, s.projection, s.anchor, s.scale_denominator)

    scene = RenderedScene(pipe_width=opts.pipe_width, thin_width=opts.thin_width, font_size=opts.font_size)
    for pipe in s.pipes:
        for a, b in cut_segments(s, pipe, tol):
            scene.pipes.append(Segment(
                paper(to_revi(a, ctx, pipe.id, tol)),
                paper(to_revi(b, ctx, pipe.id, tol)),
                pipe.id,
            ))

    for inst, place in placements:
        moved = PlacementOp(to_revi(place.shift, ctx, inst.pipe, tol), place.m)
        trans = paper_transition(s, moved)
        for pl in s.block(inst.block).polylines:
            scene.blocks.append(Polyline(apply_transition(trans, pl), inst.id))

    for run in s.dimension_runs:
        prev_ext = None
        for dim in chain_dimensions(s, run, tol):
            ext1 = (paper(dim.ext1[0]), paper(dim.ext1[1]))
            if prev_ext is None or not (v_eq(prev_ext[0], ext1[0], tol) and v_eq(prev_ext[1], ext1[1], tol)):
                scene.dimensions.append(Segment(*ext1, dim.pipe))
            scene.dimensions.append(Segment(paper(dim.dim_line[0]), paper(dim.dim_line[1]), dim.pipe))
            ext2 = (paper(dim.ext2[0]), paper(dim.ext2[1]))
            scene.dimensions.append(Segment(*ext2, dim.pipe))
            scene.dimensions.append(Text(paper(dim.text_anchor), f"{float(dim.value):.0f}", dim.pipe))
            prev_ext = ext2
    return scene


def _fmt(x) -> str:
    out = f"{float(FLOAT(x)):.3f}"
    return "0.000" if out == "-0.000" else out


def _pt(p) -> str:
    return f"{_fmt(p[0])},{_fmt(p[1])}"


def svg_string(scene: RenderedScene) -> str:
    """SVG 1.1 text for ``scene``: 1 user unit = 1 paper mm, Y flipped by one group transform."""
    pts = np.array([np.asarray(p, dtype=_W) for p in scene.points()]).reshape(-1, 2)
    if len(pts):
        lo, hi = pts.min(axis=0), pts.max(axis=0)
    else:
        lo = hi = np.zeros(2)
    x0 = lo[0] - SVG_MARGIN
    y0 = -hi[1] - SVG_MARGIN
    w = hi[0] - lo[0] + 2 * SVG_MARGIN
    h = hi[1] - lo[1] + 2 * SVG_MARGIN

    out = [
        '<?xml version="1.0" encoding="UTF-8" standalone="no"?>',
        f'<svg xmlns="http://www.w3.org/2000/svg" version="1.1" '
        f'width="{_fmt(w)}mm" height="{_fmt(h)}mm" viewBox="{_fmt(x0)} {_fmt(y0)} {_fmt(w)} {_fmt(h)}">',
        '<g transform="scale(1,-1)" fill="none" stroke="black" stroke-linecap="round" stroke-linejoin="round">',
        f'<g id="pipes" stroke-width="{_fmt(scene.pipe_width)}">',
    ]

    def line(seg):
        return (f'<line x1="{_fmt(seg.a[0])}" y1="{_fmt(seg.a[1])}" '
                f'x2="{_fmt(seg.b[0])}" y2="{_fmt(seg.b[1])}"/>')

    out.extend(line(seg) for seg in scene.pipes)
    out.append("</g>")
    out.append(f'<g id="blocks" stroke-width="{_fmt(scene.thin_width)}">')
    out.extend(f'<polyline points="{" ".join(_pt(p) for p in pl.points)}"/>' for pl in scene.blocks)
    out.append("</g>")
    out.append(f'<g id="dimensions" stroke-width="{_fmt(scene.thin_width)}">')
    for item in scene.dimensions:
        if isinstance(item, Segment):
            out.append(line(item))
        else:
            out.append(
                f'<text transform="translate({_fmt(item.anchor[0])},{_fmt(item.anchor[1])}) scale(1,-1)" '
                f'font-size="{_fmt(scene.font_size)}" font-family="sans-serif" text-anchor="middle" '
                f'fill="black" stroke="none">{escape(item.text)}</text>'
            )
    out.append("</g>")
    out.append("</g>")
    out.append("</svg>")
    return "\n".join(out) + "\n"


def emit_svg(scene: RenderedScene, path) -> None:
    Path(path).write_text(svg_string(scene), encoding="utf-8", newline="\n")
