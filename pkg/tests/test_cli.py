import json
import re
import subprocess
import sys

import pytest

from polyratio.cli import main
from polyratio.constructions import basic_setup, four_square_example
from polyratio.setup import load_setup


def run(capsys, *argv):
    code = main([str(a) for a in argv])
    out, err = capsys.readouterr()
    return code, out, err


def test_gen_basic(tmp_path, capsys):
    path = tmp_path / "s.json"
    code, _, _ = run(capsys, "gen", "--setup", "basic", "--k", 5, "--n", 4, "--out", path)
    assert code == 0
    s = load_setup(path)
    assert len(s) == 5
    for p, q in zip(s.pieces, basic_setup(5, 4).pieces):
        assert abs(p.rotation - q.rotation) <= 1e-15 and p.n == q.n


def test_gen_four_square_exact(tmp_path, capsys):
    path = tmp_path / "fs.json"
    assert run(capsys, "gen", "--setup", "four-square", "--out", path)[0] == 0
    doc = json.loads(path.read_text())
    assert doc["loops"][1][0] == ["149/650", "399/650"]
    assert load_setup(path) == four_square_example()


def test_gen_shifted_records_eps(tmp_path, capsys):
    path = tmp_path / "t.json"
    run(capsys, "gen", "--setup", "shifted", "--k", 4, "--n", 3, "--eps", 0.05, "--out", path)
    doc = json.loads(path.read_text())
    assert len(doc["polygons"]) == 4 and doc["meta"]["eps"] == 0.05


@pytest.mark.parametrize(
    "argv",
    [
        ["gen", "--setup", "basic"],
        ["gen", "--setup", "basic", "--k", "2", "--n", "4"],
        ["gen", "--setup", "four-square", "--k", "3"],
        ["gen", "--setup", "nonsense"],
        ["verify", "common-centre"],
        ["sweep", "--max-n", "2"],
        [],
    ],
)
def test_usage_errors(argv, capsys):
    code, _, err = run(capsys, *argv)
    assert code == 2 and err


def test_ratio_four_square_exact(tmp_path, capsys):
    path = tmp_path / "fs.json"
    run(capsys, "gen", "--setup", "four-square", "--out", path)
    code, out, _ = run(capsys, "ratio", path, "--exact")
    assert code == 0 and "ratio > 4: true" in out
    code, out, _ = run(capsys, "ratio", path, "--exact", "--json")
    doc = json.loads(out)
    assert doc["ratio_exceeds_single"] is True and 4.01 <= doc["ratio"] <= 4.03


def test_ratio_single_square(tmp_path, capsys):
    path = tmp_path / "sq.json"
    run(capsys, "gen", "--setup", "basic", "--k", 1, "--n", 4, "--out", path)
    code, out, _ = run(capsys, "ratio", path)
    assert code == 0 and "ratio: 4\n" in out


def test_ratio_figure6(tmp_path, capsys):
    path = tmp_path / "f6.json"
    run(capsys, "gen", "--setup", "figure6", "--out", path)
    doc = json.loads(run(capsys, "ratio", path, "--json")[1])
    assert abs(doc["ratio"] - 4.28) <= 0.02


def test_ratio_exact_rejects_parametric(tmp_path, capsys):
    path = tmp_path / "b.json"
    run(capsys, "gen", "--setup", "basic", "--k", 1, "--n", 4, "--out", path)
    code, _, err = run(capsys, "ratio", path, "--exact")
    assert code == 3 and "not-rational" in err


def test_ratio_geometry_error(tmp_path, capsys):
    path = tmp_path / "amb.json"
    doc = {"loops": [[[0.5, 0.5], [-0.5, 0.5], [-0.5, -0.5], [0.5, -0.5]],
                     [[0.5 + 1e-11, 0.1], [0.2, 0.9], [-0.4, 0.6], [-0.1, -0.2]]]}
    path.write_text(json.dumps(doc))
    code, _, err = run(capsys, "ratio", path)
    assert code == 3 and "tolerance-ambiguity" in err


def test_verify_commands(tmp_path, capsys):
    assert run(capsys, "verify", "squares", "--eps", 0.05)[0] == 0
    code, out, _ = run(capsys, "verify", "common-centre", "--k", 7, "--n", 3)
    assert code == 0 and "PASS" in out
    assert run(capsys, "verify", "triangles")[0] == 0
    assert run(capsys, "verify", "squares", "--eps", 10)[0] == 3
    # an impossible tolerance makes the lemma check fail
    assert run(capsys, "verify", "common-centre", "--k", 7, "--n", 3, "--tol", 1e-20)[0] == 1


def test_verify_pattern(tmp_path, capsys):
    path = tmp_path / "b.json"
    run(capsys, "gen", "--setup", "basic", "--k", 5, "--n", 4, "--out", path)
    code, out, _ = run(capsys, "verify", "pattern", "--setup", path, "--poly", 0, "--dx", 0, "--dy", 0.05)
    assert out.startswith("preserved: ") and code in (0, 1)
    code, out, _ = run(capsys, "verify", "pattern", "--setup", path, "--poly", 0, "--dx", 0.05, "--dy", 0, "--json")
    assert code == 0 and json.loads(out)["preserved"] is True
    code, _, _ = run(capsys, "verify", "pattern", "--setup", path, "--poly", 0, "--dx", 10, "--dy", 0)
    assert code == 1


def test_sweep(tmp_path, capsys):
    path = tmp_path / "sweep.csv"
    assert run(capsys, "sweep", "--max-k", 5, "--max-n", 4, "--out", path)[0] == 0
    lines = path.read_bytes().decode().split("\n")
    assert lines[0] == "k,n,ratio_single,ratio_shifted,delta,predicted,observed,eps_used"
    rows = {tuple(l.split(",")[:2]): l.split(",") for l in lines[1:] if l}
    assert rows[("5", "4")][6] == "true" and rows[("4", "3")][6] == "true"
    assert rows[("1", "3")][6] == "false"


def test_optimize_and_refine(tmp_path, capsys):
    src = tmp_path / "b.json"
    run(capsys, "gen", "--setup", "basic", "--k", 5, "--n", 4, "--out", src)
    out_path = tmp_path / "r.json"
    code, out, _ = run(capsys, "optimize", src, "--iters", 50, "--seed", 42, "--moves", 0, "--out", out_path)
    assert code == 0 and "best ratio" in out
    doc = json.loads(out_path.read_text())
    assert doc["best_ratio"] > 4.0
    cfg = tmp_path / "cfg.json"
    cfg.write_text(json.dumps({"iterations": 2, "step_scale": 0.01}))
    assert run(capsys, "optimize", src, "--config", cfg, "--refine")[0] == 0
    assert run(capsys, "optimize", src, "--anneal", 0.01, 0.99, "--iters", 5)[0] == 0


def test_optimize_initial_failure(tmp_path, capsys):
    path = tmp_path / "two.json"
    path.write_text(json.dumps({"polygons": [{"n": 4, "center": [0, 0]}, {"n": 4, "center": [5, 0]}]}))
    assert run(capsys, "optimize", path, "--iters", 2)[0] == 3


def test_render(tmp_path, capsys):
    path = tmp_path / "s.json"
    run(capsys, "gen", "--setup", "shifted", "--k", 5, "--n", 4, "--out", path)
    svg1, svg2 = tmp_path / "a.svg", tmp_path / "b.svg"
    run(capsys, "render", path, "--out", svg1, "--union", "--labels")
    run(capsys, "render", path, "--out", svg2, "--union", "--labels")
    text = svg1.read_text()
    assert svg1.read_bytes() == svg2.read_bytes()
    assert text.count("<path") == 5
    union_points = re.search(r'<g id="union"[^>]*><polygon points="([^"]*)"', text).group(1)
    assert len(union_points.split()) == 40


def test_render_single_square(tmp_path, capsys):
    path = tmp_path / "sq.json"
    run(capsys, "gen", "--setup", "basic", "--k", 1, "--n", 4, "--out", path)
    run(capsys, "render", path, "--out", tmp_path / "sq.svg")
    assert (tmp_path / "sq.svg").read_text().count("<path") == 1


def test_tolerance_env(tmp_path):
    path = tmp_path / "sq.json"
    path.write_text(json.dumps({"polygons": [{"n": 4}]}))
    env = {"POLYRATIO_TOL": "1e-7", "PATH": ""}
    code = "import polyratio.geom as g; print(g.get_tolerance())"
    out = subprocess.run([sys.executable, "-c", code], env=env, capture_output=True, text=True).stdout
    assert out.strip() == "1e-07"


def test_entry_point(tmp_path):
    proc = subprocess.run([sys.executable, "-m", "polyratio.cli", "verify", "common-centre", "--k", "5", "--n", "4"],
                          capture_output=True, text=True)
    assert proc.returncode == 0 and "PASS" in proc.stdout
