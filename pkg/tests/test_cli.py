import json

import pytest

from spinclone.cli import main


def run(tmp_path, *argv):
    # Global flags precede the subcommand.
    return main(["--out-dir", str(tmp_path)] + [str(a) for a in argv])


def read_rows(path):
    lines = path.read_text().strip().splitlines()
    header = lines[0].split(",")
    return header, [dict(zip(header, ln.split(","))) for ln in lines[1:]]


def test_fig2_outputs(tmp_path):
    assert run(tmp_path, "fig2") == 0
    header, rows = read_rows(tmp_path / "fig2_theta.csv")
    assert header[0] == "theta"
    assert len(rows) == 181
    mid = rows[90]
    assert abs(float(mid["F_xy_numeric"]) - 0.853553391) < 1e-6
    assert abs(float(mid["F_heis_numeric"]) - 5.0 / 6.0) < 1e-6
    assert mid["F_pcc"] == mid["F_xy_analytic"]
    _, inset = read_rows(tmp_path / "fig2_inset.csv")
    assert len(inset) == 6
    four = next(r for r in inset if r["M"] == "4")
    assert abs(float(four["F_xy_analytic"]) - 0.75) < 1e-9
    assert abs(float(four["F_heis_analytic"]) - 0.7) < 1e-9
    assert four["F_pcc"] == ""   # no stored reference, never extrapolated
    assert (tmp_path / "fig2.manifest").exists()


def test_fig2_deterministic(tmp_path):
    (tmp_path / "a").mkdir()
    (tmp_path / "b").mkdir()
    assert run(tmp_path / "a", "fig2") == 0
    assert run(tmp_path / "b", "fig2") == 0
    for name in ("fig2_theta.csv", "fig2_inset.csv"):
        assert ((tmp_path / "a" / name).read_bytes()
                == (tmp_path / "b" / name).read_bytes())


def test_tree_command(tmp_path):
    assert run(tmp_path, "--t-points", 2001, "tree") == 0
    header, rows = read_rows(tmp_path / "tree.csv")
    assert [r["k"] + r["j"] for r in rows] == ["20", "21", "22", "31", "32"]
    deep = next(r for r in rows if r["k"] == "2" and r["j"] == "2")
    assert abs(float(deep["F"]) - 0.676) <= 0.005
    assert abs(float(deep["F_star_formula"]) - 0.676776695) <= 1e-8
    manifest = (tmp_path / "tree.manifest").read_text()
    assert "command=tree" in manifest
    assert "sha256=" in manifest


def test_disorder_command(tmp_path):
    assert run(tmp_path, "disorder") == 0
    _, rows = read_rows(tmp_path / "disorder.csv")
    assert [r["M"] for r in rows] == ["2", "3", "4"]
    assert all(r["samples"] == "500" for r in rows)
    star2 = rows[0]
    assert float(star2["relative_drop"]) < 0.002
    assert (tmp_path / "networks" / "star_2.txt").exists()


def test_disorder_command_byte_deterministic(tmp_path):
    (tmp_path / "a").mkdir()
    (tmp_path / "b").mkdir()
    assert run(tmp_path / "a", "--seed", 5, "disorder") == 0
    assert run(tmp_path / "b", "--seed", 5, "disorder") == 0
    assert ((tmp_path / "a" / "disorder.csv").read_bytes()
            == (tmp_path / "b" / "disorder.csv").read_bytes())


def test_fig3_command(tmp_path):
    assert run(tmp_path, "--gamma-grid", "1e-3,1e-2", "--n-traj", 400,
               "fig3") == 0
    _, rows = read_rows(tmp_path / "fig3.csv")
    # gamma = 0 is always prepended: 3 gammas x 2 protocols x 2 sizes
    assert len(rows) == 12
    by_key = {(r["protocol"], r["M"], r["gamma_over_J"]): float(r["F"])
              for r in rows}
    assert abs(by_key[("circuit", "2", "0")] - 0.853553391) < 1e-8
    assert abs(by_key[("circuit", "3", "0")] - 0.788675135) < 1e-8
    for m in ("2", "3"):
        assert (by_key[("network", m, "0.001")]
                > by_key[("circuit", m, "0.001")])


def test_table1_command_small_grid(tmp_path):
    # A deliberately coarse scan still emits all rows with deviation and
    # flag columns; headline tolerances are only claimed at full density.
    assert run(tmp_path, "--t-points", 3001, "table1") == 0
    header, rows = read_rows(tmp_path / "table1.csv")
    assert len(rows) == 7
    assert "deviation" in header and "flag" in header
    assert "F_at_ref_point" in header
    pairs = {(r["N"], r["M"]) for r in rows}
    assert ("2", "3") in pairs and ("4", "5") in pairs


def test_json_format(tmp_path):
    assert run(tmp_path, "--format", "json", "disorder") == 0
    records = json.loads((tmp_path / "disorder.json").read_text())
    assert len(records) == 3
    assert records[0]["M"] == 2


def test_gamma_grid_parsing():
    from spinclone.cli import _parse_gamma_grid
    values = _parse_gamma_grid("1e-4:1e-1:10")
    assert len(values) == 10
    assert abs(values[0] - 1e-4) < 1e-12
    assert abs(values[3] - 1e-3) < 1e-12
    assert _parse_gamma_grid("0.5,0.25") == [0.5, 0.25]


def test_unknown_command_rejected():
    with pytest.raises(SystemExit):
        main(["frobnicate"])
