import math

import numpy as np
import pytest

from angdil.cli import main
from angdil.ingest import sample_mapping, write_sampled_map
from angdil.mapping import AngularReparam, RadialPower
from angdil.pipeline import CHECK_COLUMNS, PROFILE_COLUMNS
from angdil.report import read_csv


def run(argv, capsys=None):
    code = main([str(a) for a in argv])
    return code


def folded_sample_file(tmp_path, seed=1234):
    """A sampled map with a fold at a seeded random angle."""
    rng = np.random.default_rng(seed)
    shift = rng.uniform(0, 2 * math.pi)
    m = AngularReparam((1.5 * math.cos(shift),), (-1.5 * math.sin(shift),))
    sm = sample_mapping(m, np.arange(1, 17) / 16, 64)
    return write_sampled_map(tmp_path / "folded.csv", sm), shift


def test_profile_columns_and_values(tmp_path):
    out = tmp_path / "o"
    assert run(["profile", "--map", "radial_power", "--alpha", 2, "--r-count", 5, "--out", out]) == 0
    rows = read_csv(out / "profile.csv")
    assert list(rows[0]) == PROFILE_COLUMNS
    assert len(rows) == 5
    for row in rows:
        r = float(row["r"])
        assert float(row["S_green"]) == pytest.approx(math.pi * r ** 4, rel=1e-12)
        assert float(row["area_gap"]) <= 1e-7 * max(1, float(row["S_green"]))
    assert (out / "profile.json").is_file()


def test_profile_is_deterministic(tmp_path):
    a, b = tmp_path / "a", tmp_path / "b"
    for d in (a, b):
        assert run(["profile", "--map", "suite", "--p", "2,3", "--r-count", 4, "--out", d, "--plots"]) == 0
    for name in ("profile.csv", "profile.json", "area.svg"):
        assert (a / name).read_bytes() == (b / name).read_bytes()


def test_check_suite_passes(tmp_path, capsys):
    out = tmp_path / "o"
    code = run(["check", "--map", "suite", "--p", "2,3", "--r-count", 6, "--out", out,
                "--checks", "lemma1,theorem1,theorem2,corollary1"])
    assert code == 0
    rows = read_csv(out / "checks.csv")
    assert list(rows[0]) == CHECK_COLUMNS
    ids = {r["inequality_id"] for r in rows}
    assert {"regularity", "lemma1", "theorem1_p2", "theorem1_pgt2", "theorem2_p2",
            "corollary1_printed", "corollary1_rederived"} <= ids
    assert "asserted checks passed" in capsys.readouterr().out


def test_check_env_output_dir(tmp_path, monkeypatch):
    monkeypatch.setenv("ANGDIL_OUT", str(tmp_path / "env"))
    assert run(["check", "--map", "identity", "--r-count", 3, "--checks", "lemma1", "--format", "csv"]) == 0
    assert (tmp_path / "env" / "checks.csv").is_file()
    assert not (tmp_path / "env" / "checks.json").exists()


def test_folded_sampled_map_fails_with_located_row(tmp_path, capsys):
    path, shift = folded_sample_file(tmp_path)
    out = tmp_path / "o"
    code = run(["check", "--map", "sampled", "--path", path, "--out", out])
    assert code == 1
    rows = [r for r in read_csv(out / "checks.csv") if r["inequality_id"] == "regularity"]
    assert len(rows) == 1 and rows[0]["pass"] == "false"
    assert float(rows[0]["margin"]) < 0
    theta = float(rows[0]["note"].split(";")[0].split("=")[1])
    # h = theta + 1.5 sin(theta - shift), so h' is most negative at theta = pi + shift
    gap = (theta - (math.pi + shift)) % (2 * math.pi)
    assert min(gap, 2 * math.pi - gap) < 0.1
    assert "skipped" in capsys.readouterr().out


def test_ingest_verify(tmp_path, capsys):
    good = write_sampled_map(tmp_path / "good.json", sample_mapping(RadialPower(2), np.arange(1, 9) / 8, 32))
    assert run(["ingest-verify", good, "--n-r", 8, "--n-theta", 32]) == 0
    bad, _ = folded_sample_file(tmp_path)
    assert run(["ingest-verify", bad]) == 1
    assert "J=" in capsys.readouterr().out


def test_invalid_input_exit_2(tmp_path, capsys):
    assert run(["check", "--p", "1.5", "--out", tmp_path / "o"]) == 2
    err = capsys.readouterr().err
    assert "p_list[0]" in err
    assert not (tmp_path / "o").exists()
    broken = tmp_path / "broken.csv"
    broken.write_text("r,theta,re,im\n0.5,0,zz,0\n")
    assert run(["ingest-verify", broken]) == 2
    assert run(["check", "--map", "sampled", "--path", tmp_path / "none.csv"]) == 2


def test_unwritable_output_exit_3(tmp_path):
    blocker = tmp_path / "file"
    blocker.write_text("x")
    assert run(["profile", "--r-count", 2, "--out", blocker / "sub"]) == 3


def test_schwarz(tmp_path, capsys):
    out = tmp_path / "o"
    assert run(["schwarz", "--map", "radial_power", "--alpha", 2, "--out", out, "--plots"]) == 0
    proxy = read_csv(out / "schwarz_proxy.csv")
    assert float(proxy[0]["proxy_liminf"]) == pytest.approx(1.0, rel=1e-6)
    assert (out / "schwarz.svg").is_file()
    assert "liminf proxy" in capsys.readouterr().out


def test_check_plots(tmp_path):
    out = tmp_path / "o"
    assert run(["check", "--map", "identity", "--r-count", 4, "--checks", "theorem1,lemma1",
                "--out", out, "--plots"]) == 0
    assert (out / "area_vs_bound.svg").read_text().startswith("<?xml")
    assert (out / "margins.svg").is_file()


def test_selftest(capsys):
    assert run(["selftest"]) == 0
    lines = capsys.readouterr().out.strip().splitlines()
    assert len(lines) == 26 and all(line.startswith("[PASS]") for line in lines)


def test_config_file(tmp_path):
    cfg = tmp_path / "c.yaml"
    cfg.write_text("map:\n  family: twist\n  coeffs: [1.0]\ngrid:\n  count: 3\nchecks: [lemma1]\n")
    assert run(["check", "--config", cfg, "--out", tmp_path / "o"]) == 0
    cfg.write_text("grid:\n  count: one\n")
    assert run(["check", "--config", cfg, "--out", tmp_path / "o"]) == 2
