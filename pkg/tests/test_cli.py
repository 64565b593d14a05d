import json

import pytest
from click.testing import CliRunner

from axokern.cli import main


@pytest.fixture
def runner():
    return CliRunner()


def write(tmp_path, doc, name="doc.axo.json"):
    path = tmp_path / name
    path.write_text(doc if isinstance(doc, str) else json.dumps(doc), encoding="utf-8")
    return str(path)


def test_render_writes_svg(runner, riser_path, tmp_path):
    out = tmp_path / "out.svg"
    result = runner.invoke(main, ["render", str(riser_path), "-o", str(out)])
    assert result.exit_code == 0, result.output
    assert out.read_text() == (riser_path.parent / "sample_riser.svg").read_text()


def test_render_options(runner, riser_path, tmp_path):
    out = tmp_path / "out.svg"
    result = runner.invoke(main, ["render", str(riser_path), "-o", str(out), "--mode", "none",
                                  "--projection", "1,0,0,0,0,1", "--scale", "10", "--tol", "0.01"])
    assert result.exit_code == 0, result.output
    assert "<line" in out.read_text()


def test_malformed_file_exit_1(runner, tmp_path):
    path = write(tmp_path, '{"meta": {"anchor": [0, 0]}, "pipes": [}')
    result = runner.invoke(main, ["render", path, "-o", str(tmp_path / "x.svg")])
    assert result.exit_code == 1
    result = runner.invoke(main, ["validate", path])
    assert result.exit_code == 1


def test_missing_file_exit_1(runner, tmp_path):
    result = runner.invoke(main, ["validate", str(tmp_path / "nope.json")])
    assert result.exit_code == 1


def test_dangling_reference_exit_2(runner, riser_path, tmp_path):
    doc = json.loads(riser_path.read_text())
    doc["instances"][0]["pipe"] = "P9"
    path = write(tmp_path, doc)
    result = runner.invoke(main, ["validate", path])
    assert result.exit_code == 2
    (line,) = result.output.strip().splitlines()
    severity, entity, code, message = line.split(" ", 3)
    assert (severity, entity, code) == ("error", "V1", "UnknownPipe")
    assert "P9" in message
    result = runner.invoke(main, ["render", path, "-o", str(tmp_path / "x.svg")])
    assert result.exit_code == 2
    assert "P9" in result.output


def test_validate_clean_exit_0(runner, riser_path):
    result = runner.invoke(main, ["validate", str(riser_path)])
    assert result.exit_code == 0
    assert result.output == ""


def test_collapsing_block_exit_3(runner, tmp_path):
    doc = {
        "meta": {"scale_denominator": 1},
        "pipes": [{"id": "D", "a": [0, 0, 0], "b": [1000, 1000, 1000]}],
        "library": [{"id": "v", "cut": [-5, 5], "polylines": [[[-5, -2], [5, 2]]]}],
        "instances": [{"id": "V", "block": "v", "pipe": "D", "t": 500, "plane_axis": 1}],
    }
    result = runner.invoke(main, ["render", write(tmp_path, doc), "-o", str(tmp_path / "x.svg")])
    assert result.exit_code == 3
    assert "V DegenerateProjection" in result.output


def test_collapsing_projection_override_exit_3(runner, riser_path, tmp_path):
    # looking along X flattens the valve plane (spanned by Z and X) onto the Z line
    result = runner.invoke(main, ["render", str(riser_path), "-o", str(tmp_path / "x.svg"),
                                  "--projection", "0,1,0,0,0,1"])
    assert result.exit_code == 3


def test_dump_stages(runner, riser_path):
    rein = runner.invoke(main, ["dump", str(riser_path)]).output.splitlines()
    assert "P2 b 2000.000 0.000 3000.000" in rein
    revi = runner.invoke(main, ["dump", str(riser_path), "--stage", "revi"]).output.splitlines()
    assert "P2 b 2000.000 0.000 2000.000" in revi
    paper = runner.invoke(main, ["dump", str(riser_path), "--stage", "paper"]).output.splitlines()
    assert "P1 a 150.000 100.000" in paper
    assert len(paper) == 7
