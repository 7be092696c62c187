import io
import json
import shutil

import pytest

from conftest import FIXTURES
from kthresh.cli import AnalysisDocument, analyze, run
from kthresh.classes import ClassSpec
from kthresh.core import GridFunction, GridSpec, parse_function


def call(*argv):
    out, err = io.StringIO(), io.StringIO()
    code = run(list(argv), out=out, err=err)
    return code, out.getvalue(), err.getvalue()


@pytest.fixture
def workdir(tmp_path):
    for p in FIXTURES.iterdir():
        shutil.copy(p, tmp_path / p.name)
    return tmp_path


def test_analyze_triangle_polytopal(workdir):
    code, out, _ = call("analyze", str(workdir / "fixture_triangle.json"), "--class", "polytopal")
    assert code == 0
    doc = json.loads(out)
    assert doc["j_count"] == 1 and len(doc["essential"]) == 13
    assert doc["essential"] == sorted(doc["essential"])
    assert doc["checks"]["d_set_equals_delta_zeros"] is True


def test_analyze_square(workdir):
    code, out, _ = call("analyze", str(workdir / "fixture_example1.json"), "--class", "polytopal")
    doc = json.loads(out)
    assert code == 0 and doc["j_count"] == 1 and len(doc["essential"]) == 12
    code, out, _ = call("analyze", str(workdir / "fixture_example1.json"), "--class", "2threshold")
    doc = json.loads(out)
    assert doc["essential"] == [[0, 3], [1, 1], [1, 2], [2, 1], [2, 2], [3, 3]]
    assert doc["j_count"] == 2 and doc["sigma"] == 7


def test_analyze_svg(workdir):
    svg = workdir / "out.svg"
    code, _, _ = call("analyze", str(workdir / "fixture_example1.json"), "--class", "2threshold",
                      "--svg", str(svg), "--layers", "ones,zeros,essential")
    assert code == 0
    text = svg.read_text()
    assert text.count('class="star"') == 6 and text.count('class="point') == 16


def test_analyze_errors(workdir):
    code, out, err = call("analyze", str(workdir / "missing.json"))
    assert code == 1 and out == "" and "missing.json" in err
    bad = workdir / "bad.json"
    bad.write_text('{"d":2,"n":3,"ones":[[3,0]]}')
    assert call("analyze", str(bad))[0] == 1
    xor = workdir / "xor.json"
    xor.write_text('{"d":2,"n":2,"ones":[[0,0],[1,1]]}')
    code, _, err = call("analyze", str(xor), "--class", "threshold")
    assert code == 1 and "not a member" in err
    assert call("analyze", str(xor), "--class", "kthreshold:x")[0] == 2
    assert call("analyze", str(xor), "--class", "quadratic")[0] == 2


def test_usage_errors():
    assert call()[0] == 2
    assert call("frobnicate")[0] == 2
    assert call("verify", "--suite", "nope")[0] == 2
    assert call("verify", "--suite", "perimeter")[0] == 2
    assert call("verify", "--suite", "sf", "--seed", "3")[0] == 2
    assert call("enumerate", "--n", "3")[0] == 2


def test_enumerate():
    code, out, _ = call("enumerate", "--n", "3", "--class", "2threshold", "--count-only")
    assert (code, out.strip()) == (0, "189")
    code, out, _ = call("enumerate", "--n", "2", "--class", "threshold")
    lines = out.strip().splitlines()
    assert code == 0 and len(lines) == 14
    assert all(parse_function(line).grid == GridSpec(2, 2) for line in lines)
    code, _, err = call("enumerate", "--n", "9", "--class", "2threshold")
    assert code == 1 and "n <= 6" in err


def test_verify_suites():
    code, out, _ = call("verify", "--suite", "deltap", "--n-max", "4")
    assert code == 0 and "violations: 0" in out
    code, out, _ = call("verify", "--suite", "perimeter", "--seed", "11", "--samples", "20")
    assert code == 0 and "violations: 0" in out and "seed: 11" in out
    code, out, _ = call("verify", "--suite", "seplines", "--n-max", "4")
    assert code == 0 and "violations: 0" in out
    code, _, err = call("verify", "--suite", "sf", "--n-max", "9")
    assert code == 1 and "n_max" in err


def test_family(tmp_path):
    code, out, _ = call("family", "--n", "21", "--out", str(tmp_path / "f.json"), "--svg", str(tmp_path / "f.svg"))
    assert code == 0
    doc = json.loads(out)
    assert doc["m"] == 5 and doc["distinguishing_count"] == 162 and len(doc["teaching_set"]) == 9
    f = parse_function((tmp_path / "f.json").read_text())
    assert f.grid == GridSpec(2, 21)
    assert (tmp_path / "f.svg").read_text().startswith("<svg")
    assert call("family", "--n", "20")[0] == 1


def test_count_mts(workdir):
    code, out, _ = call("count-mts", str(workdir / "fixture_example1.json"), "--class", "2threshold", "--cap", "1")
    doc = json.loads(out)
    assert code == 0 and doc["j_count"] == 2 and len(doc["witnesses"]) == 1


def test_analysis_document_roundtrip(triangle):
    doc = analyze(triangle, ClassSpec.polytopal(triangle.grid))
    assert AnalysisDocument.from_json(doc.to_json()) == doc
    doc = analyze(GridFunction.zero(GridSpec(2, 3)), ClassSpec.polytopal(GridSpec(2, 3)))
    assert AnalysisDocument.from_json(doc.to_json()) == doc
    assert len(doc.essential) == 9 and "d_set_equals_delta_zeros" not in doc.checks


def test_module_entry_point():
    import subprocess
    import sys

    res = subprocess.run([sys.executable, "-m", "kthresh", "enumerate", "--n", "2", "--class", "polytopal",
                          "--count-only"], capture_output=True, text=True)
    assert res.returncode == 0 and res.stdout.strip() == "16"
