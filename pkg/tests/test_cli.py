import json
import subprocess
import sys
from pathlib import Path

import pytest

from thurston_bound.cli import main

EXAMPLES = Path(__file__).resolve().parents[1] / "examples"


def run(capsys, *argv):
    code = main([str(a) for a in argv])
    out, err = capsys.readouterr()
    return code, out, err


def test_compute_ropelength_link(capsys):
    code, out, _ = run(capsys, "compute", "--pres", EXAMPLES / "ropelength-link.gp",
                       "--psi", "1,0", "--beta3", "0", "--link")
    assert code == 0
    report = json.loads(out)
    assert report["schema"] == 1 and report["beta1"] == 2
    assert report["alexander_polynomial"] == "0"
    c, = report["classes"]
    assert (c["r0"], c["delta0"], c["delta0_bar"]) == (1, 4, 0)
    kinds = {v["kind"]: v for v in c["verdicts"]}
    assert kinds["thurston-lower-bound"]["value"] == 3
    assert kinds["ropelength"]["value"]["expr"] == "2*pi*(1+sqrt(3))"
    fib = next(v for v in report["verdicts"] if v["kind"] == "fibering-obstruction")
    assert fib["fired"]


def test_compute_pd_text_output(capsys):
    code, out, _ = run(capsys, "compute", "--pd", EXAMPLES / "trefoil.json", "--beta3", "0", "--format", "text")
    assert code == 0
    assert "Alexander polynomial: t^2 - t + 1" in out
    assert "thurston-lower-bound: >= 1" in out


def test_compute_grid_and_skew_oracle(capsys):
    code, out, _ = run(capsys, "compute", "--pres", EXAMPLES / "three-torus.gp", "--beta3", "1",
                       "--psi", "all-grid:1", "--verify-skew-oracle")
    assert code == 0
    report = json.loads(out)
    assert len(report["classes"]) == 13
    assert report["skew_oracle"] == "agrees"
    assert all(c["r0"] == 0 and c["delta0"] == 0 for c in report["classes"])


def test_pd_reports_components(capsys):
    code, out, _ = run(capsys, "compute", "--pd", EXAMPLES / "hopf.json", "--beta3", "0")
    assert code == 0
    report = json.loads(out)
    assert report["components"] == 2
    assert sorted(c.get("meridian_of_component") for c in report["classes"] if "meridian_of_component" in c) == [0, 1]


@pytest.mark.parametrize(
    "argv",
    [
        ["compute", "--pres", EXAMPLES / "trefoil.gp", "--beta3", "0", "--psi", "1,2"],
        ["compute", "--pres", EXAMPLES / "trefoil.gp", "--beta3", "0", "--psi", "x"],
        ["compute", "--pres", EXAMPLES / "trefoil.gp", "--beta3", "0", "--psi", "0"],
        ["compute", "--pres", EXAMPLES / "trefoil.gp", "--beta3", "0", "--psi", "all-grid:0"],
        ["compute", "--pres", EXAMPLES / "missing.gp", "--beta3", "0"],
        ["compute", "--pd", EXAMPLES / "trefoil.gp", "--beta3", "0"],
    ],
)
def test_bad_input_exits_2(capsys, argv):
    code, _, err = run(capsys, *argv)
    assert code == 2
    assert err.startswith("error:")


def test_beta1_zero_exits_2(tmp_path, capsys):
    f = tmp_path / "finite.gp"
    f.write_text("<a | a^5>")
    code, _, err = run(capsys, "compute", "--pres", f, "--beta3", "1")
    assert code == 2 and "beta_1 = 0" in err


def test_syntax_error_reports_position(tmp_path, capsys):
    f = tmp_path / "bad.gp"
    f.write_text("<a, b |\n a c>")
    code, _, err = run(capsys, "compute", "--pres", f, "--beta3", "0")
    assert code == 2 and "line 2" in err


def test_wirtinger_and_jacobian(capsys):
    code, out, _ = run(capsys, "wirtinger", EXAMPLES / "trefoil.json")
    assert code == 0
    assert "# components: 1" in out
    assert out.strip().splitlines()[-1].startswith("<a, b, c |")
    code, out, _ = run(capsys, "jacobian", "--pres", EXAMPLES / "trefoil.gp")
    assert code == 0
    assert "1 - t^-1 + t^-2" in out


def test_skew_demo(tmp_path, capsys):
    f = tmp_path / "m.tsv"
    f.write_text("# field: QQ(z1)\ngen\\rel\tr1\tr2\ng1\tt - z1\t0\ng2\t0\tt^2 + t + z1\n")
    code, _, err = run(capsys, "skew-demo", f)
    assert code == 2 and "--linearize" in err
    code, out, _ = run(capsys, "skew-demo", f, "--linearize")
    assert code == 0
    data = json.loads(out)
    assert data["torsion_rank"] == 3 and data["replay"] is True
    assert data["torsion_rank"] <= data["bound"]


def test_console_script_entry_point():
    proc = subprocess.run(
        [sys.executable, "-m", "thurston_bound.cli", "compute", "--pres", str(EXAMPLES / "figure-eight.gp"),
         "--beta3", "0", "--psi", "1"],
        capture_output=True, text=True, check=True,
    )
    report = json.loads(proc.stdout)
    assert report["classes"][0]["delta0"] == 2
