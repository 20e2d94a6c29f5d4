import math
import os
import subprocess
from pathlib import Path

import numpy as np
import pandas as pd
import pytest

import rmtdeco

CLI = os.environ.get("RMTDECO_CLI")
PURITY_COLUMNS = ["t", "mean", "std", "count"]
ANALYTICS_COLUMNS = ["t", "f", "s1", "s2", "s3", "s4", "s5", "short_time", "i_min_coe", "i_infinity"]
TABLE_COLUMNS = ["n", "m", "N", "short_coeff", "i_min_coe", "i_infinity"]


def test_closed_forms():
    assert rmtdeco.i_min_coe(4, 4) == pytest.approx(2450 / 5168, rel=1e-14)
    assert rmtdeco.i_infinity(4, 4) == pytest.approx(65088 / 134640, rel=1e-14)
    assert rmtdeco.short_time_coefficient(10, 10) == pytest.approx(27 / 17)
    assert rmtdeco.weak_variance(0.03, 16) == pytest.approx(1.0135)
    assert rmtdeco.time_scales(16)["heisenberg_time"] == pytest.approx(16 * math.pi / math.sqrt(3))
    f = rmtdeco.f_uniform(np.array([0.0, math.pi / (2 * math.sqrt(3))]))
    np.testing.assert_allclose(f, [1.0, 2 / math.pi], rtol=1e-14)
    assert rmtdeco.spectral_averages(0.0) == (1.0, 1.0, 1.0, 1.0, 1.0)


def test_spectra_and_hamiltonians():
    levels = rmtdeco.sample_spectrum("poisson", 50, seed=3)
    assert levels.shape == (50,)
    assert np.all(np.diff(levels) >= 0)
    assert np.all(np.abs(levels) <= math.sqrt(3))
    np.testing.assert_array_equal(levels, rmtdeco.sample_spectrum("poisson", 50, seed=3))

    energies, vectors = rmtdeco.build_strong(3, 4, "goe", seed=1)
    assert energies.shape == (12,)
    np.testing.assert_allclose(vectors.T @ vectors, np.eye(12), atol=1e-12)

    energies, _ = rmtdeco.build_weak(2, 2, "goe", "poisson", 0.1, seed=1)
    assert energies.shape == (4,)


def test_purity_and_errors():
    bell = np.array([1, 0, 0, 1], dtype=complex) / math.sqrt(2)
    assert rmtdeco.purity(bell, 2, 2) == pytest.approx(0.5)
    with pytest.raises(ValueError):
        rmtdeco.purity(bell, 2, 3)
    with pytest.raises(rmtdeco.DimensionError):
        rmtdeco.build_strong(0, 3)
    with pytest.raises(rmtdeco.ConfigError):
        rmtdeco.run_config("model = strong\nn = x\n")


def test_experiments_are_reproducible():
    times = np.linspace(0, 5, 11)
    a = rmtdeco.run_strong(3, 3, "goe", times, ensemble=40, seed=2, workers=1)
    b = rmtdeco.run_strong(3, 3, "goe", times, ensemble=40, seed=2, workers=3)
    for key in ("t", "mean", "std", "count"):
        np.testing.assert_array_equal(a[key], b[key])
    assert a["mean"][0] == pytest.approx(1.0)
    assert np.all(a["count"] == 40)
    assert len(a["trajectories"]) == 1

    c = rmtdeco.run_config("model = strong\nkind = picket\nn = 1\nm = 5\ntmax = 3\npoints = 4\nensemble = 8\n")
    np.testing.assert_allclose(c["mean"], 1.0, atol=1e-10)

    w = rmtdeco.run_weak(2, 2, "goe", "goe", 0.05, times, ensemble=16, seed=1)
    assert w["mean"].shape == times.shape

    mean, se = rmtdeco.coe_min_purity_mc(2, 2, 4000, seed=1)
    assert abs(mean - rmtdeco.i_min_coe(2, 2)) <= 4 * se
    mean, se = rmtdeco.stationary_purity_mc(2, 2, 4000, seed=1)
    assert abs(mean - rmtdeco.i_infinity(2, 2)) <= 4 * se


@pytest.mark.skipif(CLI is None, reason="RMTDECO_CLI not set")
def test_cli_csv_schemas(tmp_path: Path):
    out = tmp_path / "fig2"
    subprocess.run([CLI, "preset", "fig2", "--ensemble", "50", "--points", "40", "--out", str(out)], check=True)
    purity = pd.read_csv(out / "goe" / "purity.csv")
    assert list(purity.columns) == PURITY_COLUMNS + ["traj_0"]
    assert purity["t"].is_monotonic_increasing
    assert (purity["count"] == 50).all()
    assert ((purity["mean"] - purity["std"]) <= purity["mean"]).all()
    assert purity["mean"].between(0.25 - 1e-9, 1 + 1e-9).all()

    analytics = pd.read_csv(out / "goe" / "analytics.csv")
    assert list(analytics.columns) == ANALYTICS_COLUMNS
    np.testing.assert_array_equal(analytics["t"], purity["t"])
    assert (analytics["s4"] == 1.0).all()
    assert analytics["i_min_coe"].nunique() == 1
    assert analytics["i_infinity"].iloc[0] == pytest.approx(rmtdeco.i_infinity(4, 4), rel=1e-15)

    assert (out / "manifest.txt").read_text().startswith("artifact = rmtdeco")

    subprocess.run([CLI, "tables", "--n", "1", "4", "--m", "4", "--out", str(tmp_path)], check=True)
    table = pd.read_csv(tmp_path / "closed_forms.csv")
    assert list(table.columns) == TABLE_COLUMNS
    assert table.loc[0, "i_min_coe"] == pytest.approx(1.0)
    assert table.loc[1, "i_infinity"] == pytest.approx(0.483422, abs=1e-6)
    assert (tmp_path / "closed_forms.csv").read_text() == rmtdeco.closed_forms_csv([1, 4], [4])
