import csv
import json
import subprocess
import sys

import pytest

from gdof_mimo.channel_model import SystemConfig
from gdof_mimo.cli import fmt, grid_values, main, run_sweep, sweep_cells
from gdof_mimo.closed_form import gdof


def _rows(path):
    lines = [ln for ln in path.read_text().splitlines() if not ln.startswith("#")]
    return list(csv.DictReader(lines))


def test_gdof_command(capsys):
    assert main(["gdof", "--m", "1", "--n", "2", "--a1", "0.5", "--a2", "0.2"]) == 0
    out = capsys.readouterr().out
    assert "GDOF 0.8" in out and "face 1" in out
    assert out.strip().splitlines()[-1] == "1,2,0.5,0.2,WEAK,0.8,T1.b1,1"


def test_gdof_mixed_face(capsys):
    assert main(["gdof", "--a1", "1.5", "--a2", "0.5"]) == 0
    assert "face 7" in capsys.readouterr().out


@pytest.mark.parametrize(
    "argv",
    [
        ["gdof", "--a1", "1.0", "--a2", "0.5"],
        ["gdof", "--a1", "0.2", "--a2", "0.5"],
        ["gdof", "--n", "3", "--a1", "0.5", "--a2", "0.2"],
        ["achievable", "--a1", "0.5", "--a2", "0.2", "--rhos", "1e6"],
        ["sweep", "--step", "-1"],
        ["det", "--a1", "0.5", "--a2", "0.2", "--levels", "1"],
    ],
)
def test_domain_errors_exit_2(argv, capsys):
    assert main(argv) == 2
    assert "error" in capsys.readouterr().err


def test_boundary_message(capsys):
    main(["gdof", "--a1", "1.0", "--a2", "0.5"])
    assert "boundary" in capsys.readouterr().err


def test_unwritable_exit_3(tmp_path):
    bad = tmp_path / "missing" / "x.csv"
    assert main(["sweep", "--step", "0.5", "--out", str(bad)]) == 3


def test_sweep_full_grid(tmp_path, capsys):
    out = tmp_path / "region.csv"
    assert main(["sweep", "--m", "1", "--n", "2", "--step", "0.05", "--max", "2.0", "--out", str(out)]) == 0
    err = capsys.readouterr().err
    text = out.read_text().splitlines()
    assert text[0].startswith("# ")
    rows = _rows(out)
    assert 690 <= len(rows) <= 750
    assert "skipped" in err
    keys = [(float(r["alpha1"]), float(r["alpha2"])) for r in rows]
    assert keys == sorted(keys)
    for r in rows[::37]:
        g = gdof(SystemConfig(1, 2, float(r["alpha1"]), float(r["alpha2"])))
        assert float(r["gdof"]) == pytest.approx(g.value, rel=1e-9)
        assert r["regime"] == str(g.regime) and int(r["face_id"]) == g.face_id
    assert min(float(r["gdof"]) for r in rows) >= 2 / 3 - 1e-9


def test_sweep_cells_skip_boundaries():
    cells, skipped = sweep_cells(0.5, 2.0, None)
    kept = {(a, b) for _, _, a, b in cells}
    assert kept == {(1.5, 0.5)}
    assert skipped == 9 - 1
    assert grid_values(0.1, 0.35) == [0.1, 0.2, 0.3]


def test_sweep_slice_faces(tmp_path):
    out = tmp_path / "slice.csv"
    assert main(["sweep", "--a2", "0.2", "--step", "0.01", "--out", str(out), "--reproducible"]) == 0
    rows = _rows(out)
    assert all(float(r["alpha2"]) == 0.2 for r in rows)
    weak = [r for r in rows if r["regime"] == "WEAK"]
    faces = [int(r["face_id"]) for r in weak]
    # face 4 at small alpha1, interior faces, then face 4 again near alpha1 = 1
    runs = [f for k, f in enumerate(faces) if k == 0 or f != faces[k - 1]]
    assert runs == [4, 2, 1, 3, 4]
    for r in weak:
        if int(r["face_id"]) == 4:
            assert float(r["gdof"]) == pytest.approx(1 - 0.2 / 2)


def test_sweep_verify_small():
    rows, skipped = run_sweep(1, 2, 0.5, 2.0, verify=True, seed=0, rhos=(1e6, 1e9))
    assert len(rows) == 1 and skipped == 8
    r = rows[0]
    assert r.achievable_slope is not None and r.outer_slope is not None
    assert r.achievable_slope == pytest.approx(r.gdof, abs=0.1)


def test_sweep_parallel_matches_serial():
    a, _ = run_sweep(1, 2, 0.5, 2.0, a2=0.5, verify=True, jobs=1)
    b, _ = run_sweep(1, 2, 0.5, 2.0, a2=0.5, verify=True, jobs=2)
    assert a == b


def test_verify_lemma(capsys):
    assert main(["verify-lemma", "--r", "2", "--n", "5", "--exps", "1.0,0.6,0.2"]) == 0
    out = capsys.readouterr().out
    measured = float(out.split("measured slope ")[1].split(",")[0])
    assert "predicted prelog 3.4" in out and abs(measured - 3.4) <= 0.02


def test_verify_lemma_unsorted(capsys):
    assert main(["verify-lemma", "--r", "1", "--n", "2", "--exps", "0.2,0.6"]) == 2


def test_gap_command(capsys):
    assert main(["gap", "--m", "1", "--n", "2", "--a1", "0.9", "--a2", "0.7", "--rhos", "1e4,1e6,1e8"]) == 0
    out = capsys.readouterr().out
    slope = float(out.split("gap slope ")[1].split()[0])
    assert abs(slope) < 0.05


def test_achievable_and_outer_commands(tmp_path, capsys):
    out = tmp_path / "a.csv"
    assert main(["achievable", "--a1", "1.5", "--a2", "0.5", "--trials", "2", "--out", str(out)]) == 0
    assert len(_rows(out)) == 2
    assert main(["outer", "--a1", "0.9", "--a2", "0.7"]) == 0
    assert "many-to-one" in capsys.readouterr().out


def test_det_command(tmp_path, capsys):
    dump = tmp_path / "model.txt"
    assert main(["det", "--a1", "0.5", "--a2", "0.2", "--levels", "10", "--dump", str(dump)]) == 0
    out = capsys.readouterr().out
    assert "capacity 8 bits" in out and "target L*gdof 8" in out and "assumptions PASS" in out
    assert dump.read_text().startswith("# L=10")


def test_config_file(tmp_path, capsys):
    cfg = tmp_path / "c.json"
    cfg.write_text(json.dumps({"a1": 0.6, "a2": 0.45}))
    assert main(["gdof", "--config", str(cfg)]) == 0
    assert "GDOF 0.775" in capsys.readouterr().out
    # flags win over the file
    assert main(["gdof", "--config", str(cfg), "--a2", "0.2"]) == 0
    assert "GDOF 0.8" in capsys.readouterr().out


def test_config_file_missing(tmp_path):
    assert main(["gdof", "--config", str(tmp_path / "nope.json")]) == 3


@pytest.mark.parametrize(
    "argv",
    [
        ["gdof", "--a1", "0.5", "--a2", "0.2"],
        ["sweep", "--step", "0.1"],
        ["verify-lemma", "--r", "1", "--n", "2", "--exps", "1.0,0.5,0.3"],
        ["achievable", "--a1", "0.5", "--a2", "0.2", "--trials", "2"],
        ["outer", "--a1", "1.4", "--a2", "1.1"],
        ["gap", "--a1", "0.9", "--a2", "0.7"],
        ["det", "--a1", "1.4", "--a2", "1.1", "--levels", "6"],
    ],
)
def test_reproducible_csv(argv, tmp_path):
    outs = []
    for k in range(2):
        p = tmp_path / f"run{k}.csv"
        assert main(argv + ["--seed", "3", "--reproducible", "--out", str(p)]) == 0
        outs.append(p.read_bytes())
    assert outs[0] == outs[1]
    assert not outs[0].startswith(b"#")


def test_fmt():
    assert fmt(2 / 3) == "0.6666666667"
    assert fmt(3) == "3"


def test_console_entry():
    res = subprocess.run(
        [sys.executable, "-m", "gdof_mimo.cli", "gdof", "--a1", "1.4", "--a2", "1.1"],
        capture_output=True,
        text=True,
    )
    assert res.returncode == 0 and "STRONG" in res.stdout
