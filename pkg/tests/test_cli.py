import json
import random
import subprocess
import sys
import xml.etree.ElementTree as ET
from pathlib import Path

import pytest

from helpers import mixed_family, run_cli
from uncertainsets.ingest import serialize
from uncertainsets.model import SetDef, SetFamily

DATA = Path(__file__).resolve().parent.parent / "datasets"
TOY = DATA / "toy_enrollment.json"
PROB = DATA / "toy_enrollment_probabilities.json"
DEFINED = DATA / "courses_defined.json"


def test_validate():
    code, out, _ = run_cli(["validate", TOY])
    assert code == 0
    assert out == b"valid: 4 sets, 6 elements, 5 membership entries\n"


def test_classify_toy():
    code, out, _ = run_cli(["classify", TOY])
    assert code == 0
    lines = out.decode().splitlines()
    assert lines[0] == "membership: U>0 (set membership / undefined uncertainty)"
    assert lines[2] == "element attributes: U=0 (element attributes / certainty)"


def test_render_fans_to_file(tmp_path):
    out = tmp_path / "out.svg"
    code, stdout, err = run_cli(["render", TOY, "--view", "bipartite", "--variant", "fans", "-o", out])
    assert code == 0 and stdout == b"" and err == ""
    root = ET.fromstring(out.read_bytes())
    assert sum(1 for el in root.iter() if el.get("data-role") == "fan-stub") == 10


def test_render_to_stdout_matches_file(tmp_path):
    out = tmp_path / "out.svg"
    run_cli(["render", PROB, "--view", "bipartite", "--variant", "probability", "-o", out])
    code, stdout, _ = run_cli(["render", PROB, "--view", "bipartite", "--variant", "probability"])
    assert code == 0 and stdout == out.read_bytes()


def test_euler_with_four_sets(tmp_path):
    big = tmp_path / "big.json"
    big.write_bytes(serialize(SetFamily(tuple(SetDef(s) for s in "ABCD"))))
    code, out, err = run_cli(["render", big, "--view", "euler"])
    assert code == 1 and out == b""
    assert "UnsupportedSetCount" in err and "matrix" in err


def test_aggregate_text_and_json():
    code, out, _ = run_cli(["aggregate", DEFINED, "--attribute", "age"])
    assert code == 0
    text = out.decode().splitlines()
    assert text[0].split() == ["scope", "value", "certainty", "n_known", "n_flagged", "n_missing"]
    assert any(line.split()[:3] == ["{H,M}", "19.5000", "1.0000"] for line in text)
    code, out, _ = run_cli(["aggregate", DEFINED, "--attribute", "residency", "--target", "international",
                            "--scope", "sets", "--format", "json", "--certainty-rule", "over-given"])
    rows = json.loads(out)
    assert [r["scope"] for r in rows] == ["F", "H", "M"]
    assert all(0 <= r["certainty"] <= 1 for r in rows)


def test_aggregate_unknown_attribute():
    code, out, err = run_cli(["aggregate", TOY, "--attribute", "x"])
    assert code == 1 and "unknown attribute" in err


def test_aggregate_refuses_uncertain_membership(tmp_path):
    path = tmp_path / "mixed.json"
    path.write_bytes(serialize(mixed_family(random.Random(5), 30, 3)))
    code, out, err = run_cli(["aggregate", path, "--attribute", "score"])
    assert code == 1 and out == b"" and "MembershipUncertain" in err


def test_proportion_needs_target():
    code, _, err = run_cli(["aggregate", DEFINED, "--attribute", "residency"])
    assert code == 2 and "--target" in err


@pytest.mark.parametrize("args", [
    ["render", TOY],
    ["render", TOY, "--view", "pie"],
    ["render", TOY, "--view", "bipartite", "--variant", "plain"],
    ["render", TOY, "--view", "aggregate-matrix"],
    ["render", TOY, "--view", "dotplot"],
    ["frobnicate"],
    ["classify", TOY, "--bogus"],
])
def test_usage_errors(args):
    code, _, _ = run_cli(args)
    assert code == 2


def test_dataset_errors(tmp_path):
    bad = tmp_path / "bad.json"
    bad.write_text('{"sets": [{"id": "A", "extra": 1}]}')
    code, _, err = run_cli(["validate", bad])
    assert code == 1 and "UnknownField" in err and "line 1" in err
    code, out, err = run_cli(["validate", bad, "--lenient"])
    assert code == 0 and "warning:" in err
    dup = tmp_path / "dup.json"
    dup.write_text('{"sets": [{"id": "A"}, {"id": "A"}]}')
    code, _, err = run_cli(["validate", dup])
    assert code == 1 and "DuplicateSetId" in err
    code, _, err = run_cli(["validate", tmp_path / "missing.json"])
    assert code == 1


def test_theme_and_legend_flags(tmp_path):
    theme = tmp_path / "theme.json"
    theme.write_text('{"width_min": 1.0}')
    code, out, _ = run_cli(["render", TOY, "--view", "bipartite", "--theme", theme, "--legend", "off"])
    assert code == 0
    root = ET.fromstring(out)
    links = [el for el in root.iter() if el.get("data-role") == "uncertain-link"]
    assert {el.get("stroke-width") for el in links} == {"1"}
    assert not any(el.get("data-role") == "legend" for el in root.iter())
    theme.write_text('{"nope": 1}')
    code, _, err = run_cli(["render", TOY, "--view", "bipartite", "--theme", theme])
    assert code == 1 and "unknown theme keys" in err


def test_euler_attribute_picks_texture_for_blanket_uncertainty():
    code, out, _ = run_cli(["render", DATA / "courses_undefined.json", "--view", "euler", "--attribute", "age"])
    assert code == 0 and b'data-role="disclaimer"' in out and b"url(#hatch)" in out
    code, out, _ = run_cli(["render", DEFINED, "--view", "euler", "--attribute", "age"])
    assert code == 0 and b"stroke-dasharray" in out and b"url(#hatch)" not in out


def test_size_color_fallback_warns_once():
    code, _, err = run_cli(["render", PROB, "--view", "membership-matrix", "--variant", "size-color"])
    assert code == 0
    assert err.count("warning:") == 1


def test_stdin_input():
    proc = subprocess.run([sys.executable, "-m", "uncertainsets", "classify", "-"],
                          input=TOY.read_bytes(), capture_output=True, check=False)
    assert proc.returncode == 0
    assert proc.stdout.startswith(b"membership: U>0")


def test_module_entrypoint_exit_code():
    proc = subprocess.run([sys.executable, "-m", "uncertainsets", "render", str(TOY), "--view", "euler"],
                          capture_output=True, check=False)
    assert proc.returncode == 1
