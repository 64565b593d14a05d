"""``axokern`` command line: render, validate and dump schematic documents.

Exit codes: 0 success, 1 I/O or parse error, 2 validation diagnostics,
3 degenerate projection.
"""

from __future__ import annotations

import sys

import click

from .errors import DegenerateInput, DegenerateProjection, ParseError, ValidationFailed
from .io import load_schematic, read_schematic
from .linear import ProjectionOp
from .model import build_placement
from .numeric import COORD_EPS
from .offsets import OffsetMode, revi_to_paper, to_revi
from .render import RenderOptions, effective_schematic, emit_svg, render

EXIT_OK = 0
EXIT_IO = 1
EXIT_DIAGNOSTICS = 2
EXIT_DEGENERATE = 3

MODES = [m.value for m in OffsetMode]


def _fail(message, code):
    click.echo(message, err=True)
    sys.exit(code)


def _report(diags):
    for d in diags:
        click.echo(d.format())


def _parse_projection(text):
    try:
        vals = [float(x) for x in text.split(",")]
    except ValueError:
        raise click.BadParameter("expected six comma-separated numbers") from None
    if len(vals) != 6:
        raise click.BadParameter(f"expected six comma-separated numbers, got {len(vals)}")
    return [vals[:3], vals[3:]]


def _load(path, tol):
    try:
        return load_schematic(path, tol)
    except OSError as exc:
        _fail(f"error: cannot read {path}: {exc.strerror or exc}", EXIT_IO)
    except ParseError as exc:
        _fail(f"error: {exc}", EXIT_IO)
    except ValidationFailed as exc:
        _report(exc.diagnostics)
        sys.exit(EXIT_DIAGNOSTICS)


@click.group()
def main():
    """Axonometric piping schematics: JSON document in, SVG drawing out."""


@main.command("render")
@click.argument("input_path", metavar="INPUT")
@click.option("-o", "--output", required=True, help="SVG file to write.")
@click.option("--mode", type=click.Choice(MODES), default="all", show_default=True,
              help="Which offsets displace the drawing.")
@click.option("--projection", default=None, metavar="m11,m12,m13,m21,m22,m23",
              help="Override the projection matrix (row-major M23).")
@click.option("--scale", "scale", type=float, default=None, metavar="N",
              help="Override the drawing scale denominator.")
@click.option("--tol", type=float, default=COORD_EPS, show_default=True, metavar="EPS",
              help="Coordinate tolerance, mm.")
def render_cmd(input_path, output, mode, projection, scale, tol):
    """Render INPUT to an SVG drawing."""
    s = _load(input_path, tol)
    override = None
    if projection is not None:
        m = _parse_projection(projection)
        try:
            override = ProjectionOp(s.projection.shift, m)
        except DegenerateInput as exc:
            _fail(f"error: --projection: {exc}", EXIT_DEGENERATE)
    if scale is not None and not scale > 0:
        _fail("error: --scale must be positive", EXIT_IO)
    opts = RenderOptions(projection_override=override, scale_denominator=scale,
                         mode=mode, tol=tol, output=output)
    try:
        scene = render(s, opts)
    except ValidationFailed as exc:
        _report(exc.diagnostics)
        sys.exit(EXIT_DIAGNOSTICS)
    except DegenerateProjection as exc:
        _report(exc.diagnostics)
        sys.exit(EXIT_DEGENERATE)
    try:
        emit_svg(scene, output)
    except OSError as exc:
        _fail(f"error: cannot write {output}: {exc.strerror or exc}", EXIT_IO)


@main.command("validate")
@click.argument("input_path", metavar="INPUT")
@click.option("--tol", type=float, default=COORD_EPS, show_default=True, metavar="EPS")
def validate_cmd(input_path, tol):
    """Check INPUT; print one diagnostic per line."""
    try:
        _, diags = read_schematic(input_path, tol)
    except OSError as exc:
        _fail(f"error: cannot read {input_path}: {exc.strerror or exc}", EXIT_IO)
    except ParseError as exc:
        _fail(f"error: {exc}", EXIT_IO)
    if diags:
        _report(diags)
        sys.exit(EXIT_DIAGNOSTICS)


@main.command("dump")
@click.argument("input_path", metavar="INPUT")
@click.option("--stage", type=click.Choice(["rein", "revi", "paper"]), default="rein", show_default=True)
@click.option("--mode", type=click.Choice(MODES), default="all", show_default=True)
@click.option("--tol", type=float, default=COORD_EPS, show_default=True, metavar="EPS")
def dump_cmd(input_path, stage, mode, tol):
    """Print pipe endpoints and block anchors at one transform stage."""
    s = effective_schematic(_load(input_path, tol), RenderOptions(mode=mode))

    def stage_point(p, member):
        if stage == "rein":
            return p
        q = to_revi(p, s.offsets, member, tol)
        if stage == "revi":
            return q
        return revi_to_paper(q, s.projection, s.anchor, s.scale_denominator)

    def show(entity, label, p):
        coords = " ".join(f"{float(x):.3f}" for x in p)
        click.echo(f"{entity} {label} {coords}")

    for pipe in s.pipes:
        show(pipe.id, "a", stage_point(pipe.a, pipe.id))
        show(pipe.id, "b", stage_point(pipe.b, pipe.id))
    for inst in s.instances:
        show(inst.id, "anchor", stage_point(build_placement(s, inst, tol).shift, inst.pipe))


if __name__ == "__main__":
    main()
