"""End-to-end checks for the command line interface.

Everything runs through ``main(argv)`` against temporary directories, so
these tests double as a guard that the documented CSV schemas and exit
codes stay stable.  Heavy numerics are exercised elsewhere; the series
used here are short.
"""

import csv
import json

import numpy as np
import pytest

from parma.cli import (
    ColumnSpec,
    ingest_csv,
    load_model,
    main,
    model_from_dict,
    reproduce_sim,
    save_model,
)
from parma.core import (
    ConfigError,
    DataError,
    IncompleteCycle,
    ModelKind,
    ParmaModel,
)
from parma.estimation import fit_par1
from parma.simulate import SimConfig, simulate


def write_rows(path, rows, header=("year", "month", "value")):
    with path.open("w", newline="") as fh:
        writer = csv.writer(fh)
        writer.writerow(header)
        writer.writerows(rows)


def series_rows(values, nu, year0=1960, base=1):
    return [(year0 + t // nu, base + t % nu, v) for t, v in enumerate(values)]


@pytest.fixture()
def ar_model():
    return ParmaModel.par1(
        mu=[10.0, -3.0, 0.5, 4.0],
        phi=[0.4, -0.3, 0.5, 0.2],
        sigma2=[1.0, 2.0, 0.5, 1.5],
    )


@pytest.fixture()
def ar_csv(tmp_path, ar_model):
    """A nu=4 periodic AR(1) sample in the default column layout."""
    series = simulate(SimConfig(model=ar_model, n_cycles=200, seed=7))
    path = tmp_path / "input.csv"
    write_rows(path, series_rows(series.values, 4))
    return path


# ---------------------------------------------------------------------------
# ingest


def test_ingest_reads_shuffled_complete_cycles(tmp_path):
    values = np.arange(8.0)
    rows = series_rows(values, 4)
    rows[1], rows[6] = rows[6], rows[1]  # order on disk must not matter
    path = tmp_path / "s.csv"
    write_rows(path, rows)
    series = ingest_csv(path, ColumnSpec(), nu=4)
    assert series.nu == 4
    assert series.n_cycles == 2
    np.testing.assert_array_equal(series.values, values)


def test_ingest_infers_season_base(tmp_path):
    values = [3.0, 1.0, 4.0, 1.5, 9.0, 2.6]
    zero = tmp_path / "zero.csv"
    one = tmp_path / "one.csv"
    write_rows(zero, series_rows(values, 3, base=0))
    write_rows(one, series_rows(values, 3, base=1))
    a = ingest_csv(zero, ColumnSpec(), nu=3)
    b = ingest_csv(one, ColumnSpec(), nu=3)
    np.testing.assert_array_equal(a.values, b.values)


def test_ingest_rejects_missing_column(tmp_path):
    path = tmp_path / "s.csv"
    write_rows(path, [(1960, 1, 1.0)], header=("year", "month", "flux"))
    with pytest.raises(DataError, match="'value' not found"):
        ingest_csv(path, ColumnSpec(), nu=1)


def test_ingest_rejects_missing_value_marker(tmp_path):
    rows = series_rows([1.0, 2.0, 3.0, 4.0], 2)
    rows[1] = (1960, 2, "---")
    path = tmp_path / "s.csv"
    write_rows(path, rows)
    with pytest.raises(DataError, match=r"missing value marker '---' at year=1960, month=2"):
        ingest_csv(path, ColumnSpec(), nu=2)


def test_ingest_rejects_non_numeric_value(tmp_path):
    rows = series_rows([1.0, 2.0], 2)
    rows[0] = (1960, 1, "n/a?")
    path = tmp_path / "s.csv"
    write_rows(path, rows)
    with pytest.raises(DataError, match="non-numeric value"):
        ingest_csv(path, ColumnSpec(), nu=2)


def test_ingest_rejects_non_integer_season(tmp_path):
    path = tmp_path / "s.csv"
    write_rows(path, [(1960, "Jan", 1.0), (1960, 2, 2.0)])
    with pytest.raises(DataError, match="non-integer year/month"):
        ingest_csv(path, ColumnSpec(), nu=2)


def test_ingest_rejects_duplicate_cell(tmp_path):
    rows = series_rows([1.0, 2.0], 2) + [(1960, 2, 5.0)]
    path = tmp_path / "s.csv"
    write_rows(path, rows)
    with pytest.raises(DataError, match="duplicated year=1960, month=2"):
        ingest_csv(path, ColumnSpec(), nu=2)


def test_ingest_rejects_season_outside_period(tmp_path):
    rows = series_rows([1.0, 2.0, 3.0, 4.0], 4) + [(1960, 6, 9.0)]
    path = tmp_path / "s.csv"
    write_rows(path, rows)
    with pytest.raises(DataError, match=r"month=6 outside 1..4 \(period 4\)"):
        ingest_csv(path, ColumnSpec(), nu=4)


def test_ingest_names_first_missing_cell(tmp_path):
    rows = [r for r in series_rows(np.arange(8.0), 4) if r[:2] != (1961, 3)]
    path = tmp_path / "s.csv"
    write_rows(path, rows)
    with pytest.raises(IncompleteCycle, match="missing year=1961, month=3"):
        ingest_csv(path, ColumnSpec(), nu=4)


def test_ingest_names_missing_middle_year(tmp_path):
    rows = series_rows([1.0, 2.0], 2, year0=1960) + series_rows(
        [3.0, 4.0], 2, year0=1962
    )
    path = tmp_path / "s.csv"
    write_rows(path, rows)
    with pytest.raises(IncompleteCycle, match="missing year=1961, month=1"):
        ingest_csv(path, ColumnSpec(), nu=2)


def test_ingest_empty_and_headerless_files(tmp_path):
    empty = tmp_path / "empty.csv"
    empty.write_text("")
    with pytest.raises(DataError, match="empty file"):
        ingest_csv(empty, ColumnSpec(), nu=2)
    header_only = tmp_path / "header.csv"
    header_only.write_text("year,month,value\n")
    with pytest.raises(DataError, match="no data rows"):
        ingest_csv(header_only, ColumnSpec(), nu=2)


def test_columnspec_from_arg():
    spec = ColumnSpec.from_arg(" yr , mo , sun ")
    assert (spec.year, spec.season, spec.value) == ("yr", "mo", "sun")
    with pytest.raises(ConfigError, match="expects"):
        ColumnSpec.from_arg("yr,mo")
    with pytest.raises(ConfigError, match="expects"):
        ColumnSpec.from_arg("yr,,sun")


# ---------------------------------------------------------------------------
# model JSON round trips


def test_model_json_round_trip(tmp_path, ar_model):
    path = tmp_path / "m.json"
    save_model(path, ar_model, {"n_iter": 7})
    back = load_model(path)
    assert back.kind is ModelKind.PAR1
    np.testing.assert_allclose(back.mu.values, ar_model.mu.values)
    np.testing.assert_allclose(back.phi.values, ar_model.phi.values)
    np.testing.assert_allclose(back.sigma2.values, ar_model.sigma2.values)
    assert json.loads(path.read_text())["fit"] == {"n_iter": 7}

    ma = ParmaModel.parma11([0.5, -0.4], [0.2, 0.1])
    save_model(path, ma)
    back = load_model(path)
    assert back.kind is ModelKind.PARMA11
    np.testing.assert_allclose(back.theta.values, ma.theta.values)
    np.testing.assert_allclose(back.sigma2.values, [1.0, 1.0])


def test_model_json_rejects_malformed(tmp_path):
    with pytest.raises(DataError, match="malformed model record"):
        model_from_dict({"kind": "par1", "phi": [0.5]})
    bad = tmp_path / "bad.json"
    bad.write_text("{not json")
    with pytest.raises(DataError, match="cannot read model JSON"):
        load_model(bad)
    with pytest.raises(DataError, match="cannot read model JSON"):
        load_model(tmp_path / "absent.json")


# ---------------------------------------------------------------------------
# subcommands


def read_table(path):
    with path.open(newline="") as fh:
        rows = list(csv.reader(fh))
    return rows[0], rows[1:]


def test_simulate_outputs_and_determinism(tmp_path):
    args = ["simulate", "--seed", "11", "--cycles", "20"]
    out1 = tmp_path / "a"
    out2 = tmp_path / "b"
    assert main(args + ["--outdir", str(out1)]) == 0
    assert main(args + ["--outdir", str(out2)]) == 0

    header, rows = read_table(out1 / "series.csv")
    assert header == ["cycle", "season", "value"]
    assert len(rows) == 20 * 12  # default model has twelve seasons
    assert rows[0][:2] == ["0", "0"]
    assert rows[-1][:2] == ["19", "11"]

    manifest = json.loads((out1 / "manifest.json").read_text())
    assert manifest["command"] == "simulate"
    assert manifest["seed"] == 11
    assert manifest["model"]["kind"] == "parma11"
    # identical runs must produce byte-identical outputs (no timestamps)
    assert (out1 / "series.csv").read_bytes() == (out2 / "series.csv").read_bytes()
    assert (out1 / "manifest.json").read_bytes() == (out2 / "manifest.json").read_bytes()


def test_simulate_from_model_json(tmp_path, ar_model):
    path = tmp_path / "m.json"
    save_model(path, ar_model)
    out = tmp_path / "out"
    code = main(
        [
            "simulate",
            "--outdir",
            str(out),
            "--model-json",
            str(path),
            "--cycles",
            "8",
            "--seed",
            "2",
        ]
    )
    assert code == 0
    _, rows = read_table(out / "series.csv")
    assert len(rows) == 8 * 4
    assert all(np.isfinite(float(r[2])) for r in rows)


def test_fit_outputs(tmp_path, ar_csv):
    out = tmp_path / "fit"
    code = main(
        [
            "fit",
            "--input",
            str(ar_csv),
            "--outdir",
            str(out),
            "--period",
            "4",
            "--model",
            "par1",
        ]
    )
    assert code == 0

    model = load_model(out / "model.json")
    assert model.kind is ModelKind.PAR1
    # the fitted means are exactly the per-season column means
    _, rows = read_table(ar_csv)
    values = np.array([float(r[2]) for r in rows]).reshape(-1, 4)
    np.testing.assert_allclose(model.mu.values, values.mean(axis=0), atol=1e-12)

    header, rows = read_table(out / "psi.csv")
    assert header == ["lag", "season", "value"]
    assert len(rows) == 4  # one moving-average lag per season for PAR(1)

    header, rows = read_table(out / "innovations_trace.csv")
    assert header == ["n", "season", "v"]
    assert len(rows) == (7 + 1) * 4

    manifest = json.loads((out / "manifest.json").read_text())
    assert manifest["n_cycles"] == 200
    assert manifest["model"] == "par1"


def test_fit_with_custom_columns(tmp_path):
    model = ParmaModel.par1([0.0, 1.0], [0.3, -0.2], [1.0, 1.0])
    series = simulate(SimConfig(model=model, n_cycles=150, seed=5))
    path = tmp_path / "s.csv"
    write_rows(path, series_rows(series.values, 2), header=("t", "s", "v"))
    out = tmp_path / "out"
    code = main(
        [
            "fit",
            "--input",
            str(path),
            "--outdir",
            str(out),
            "--period",
            "2",
            "--model",
            "par1",
            "--columns",
            "t,s,v",
        ]
    )
    assert code == 0
    assert (out / "model.json").exists()


def test_compress_fourier_coeff_schema(tmp_path, ar_csv):
    out = tmp_path / "comp"
    code = main(
        [
            "compress",
            "--input",
            str(ar_csv),
            "--outdir",
            str(out),
            "--period",
            "4",
            "--model",
            "par1",
            "--transform",
            "fourier",
        ]
    )
    assert code == 0

    header, rows = read_table(out / "coeffs.csv")
    assert header == ["family", "index", "value", "se", "z", "significant", "retained"]
    families = {r[0] for r in rows}
    assert families == {"mu", "phi", "sigma2"}
    assert len(rows) == 3 * 4
    for row in rows:
        if row[1] == "0":  # the mean coefficient is kept, never tested
            assert row[4] == ""
            assert row[6] == "true"
        else:
            assert row[4] != ""
        assert row[5] in ("true", "false")
        assert row[6] in ("true", "false")

    compressed = load_model(out / "model_compressed.json")
    assert compressed.kind is ModelKind.PAR1
    manifest = json.loads((out / "manifest.json").read_text())
    retained = manifest["retained"]
    assert retained["total"] == sum(retained[f] for f in families)


def test_compress_wavelet_on_parma11(tmp_path):
    model = ParmaModel.parma11([0.5, 0.4, 0.6, 0.3], [0.2, 0.1, 0.3, 0.2])
    series = simulate(SimConfig(model=model, n_cycles=300, seed=9))
    path = tmp_path / "s.csv"
    write_rows(path, series_rows(series.values, 4))
    out = tmp_path / "out"
    code = main(
        [
            "compress",
            "--input",
            str(path),
            "--outdir",
            str(out),
            "--period",
            "4",
            "--model",
            "parma11",
            "--transform",
            "wavelet",
            "--wavelet",
            "haar",
        ]
    )
    assert code == 0
    _, rows = read_table(out / "coeffs.csv")
    assert {r[0] for r in rows} == {"phi", "theta"}
    assert len(rows) == 2 * 4
    manifest = json.loads((out / "manifest.json").read_text())
    assert manifest["wavelet"] == "haar"


def test_diagnose_outputs(tmp_path, ar_csv):
    series = ingest_csv(ar_csv, ColumnSpec(), nu=4)
    fit = fit_par1(series)
    model_path = tmp_path / "model.json"
    save_model(model_path, fit.model)

    out = tmp_path / "diag"
    code = main(
        [
            "diagnose",
            "--input",
            str(ar_csv),
            "--outdir",
            str(out),
            "--period",
            "4",
            "--model-json",
            str(model_path),
            "--lags",
            "5,10",
            "--bins",
            "12",
        ]
    )
    assert code == 0

    header, rows = read_table(out / "acf.csv")
    assert header == ["lag", "rho", "band"]
    assert len(rows) == 10
    assert len({r[2] for r in rows}) == 1  # one common band level

    header, rows = read_table(out / "boxpierce.csv")
    assert header == ["lag", "q", "p"]
    assert [r[0] for r in rows] == ["5", "10"]
    assert all(0.0 <= float(r[2]) <= 1.0 for r in rows)

    ks_lines = (out / "ks.txt").read_text().splitlines()
    assert ks_lines[0].startswith("statistic=")
    assert 0.0 <= float(ks_lines[1].split("=")[1]) <= 1.0

    _, rows = read_table(out / "histogram.csv")
    assert len(rows) == 12
    _, rows = read_table(out / "normal_curve.csv")
    assert len(rows) == 200

    manifest = json.loads((out / "manifest.json").read_text())
    assert set(manifest["box_pierce"]) == {"5", "10"}
    assert "p" in manifest["box_pierce"]["5"]


# ---------------------------------------------------------------------------
# exit codes


def test_config_errors_exit_2(tmp_path, ar_csv):
    out = str(tmp_path / "out")
    base = ["--input", str(ar_csv), "--outdir", out, "--period", "4"]
    assert main(["simulate", "--outdir", out, "--cycles", "0"]) == 2
    assert (
        main(
            ["compress", *base, "--model", "par1", "--transform", "wavelet",
             "--wavelet", "la99"]
        )
        == 2
    )
    assert main(["fit", *base, "--model", "parma11", "--iters", "1"]) == 2

    model_path = tmp_path / "m.json"
    save_model(model_path, ParmaModel.parma11([0.5] * 4, [0.2] * 4))
    assert (
        main(["diagnose", *base, "--model-json", str(model_path), "--lags", "a,b"])
        == 2
    )


def test_data_errors_exit_3(tmp_path):
    rows = [r for r in series_rows(np.arange(8.0), 4) if r[:2] != (1960, 2)]
    gap = tmp_path / "gap.csv"
    write_rows(gap, rows)
    out = str(tmp_path / "out")
    base = ["--outdir", out, "--period", "4", "--model", "par1"]
    assert main(["fit", "--input", str(gap), *base]) == 3

    assert main(["fit", "--input", str(tmp_path / "absent.csv"), *base]) == 3

    ok = tmp_path / "ok.csv"
    write_rows(ok, series_rows(np.arange(8.0), 4))
    assert main(["fit", "--input", str(ok), *base, "--columns", "y,m,v"]) == 3
    assert (
        main(
            ["diagnose", "--input", str(ok), "--outdir", out, "--period", "4",
             "--model-json", str(tmp_path / "absent.json")]
        )
        == 3
    )


def test_numerical_errors_exit_4(tmp_path):
    flat = tmp_path / "flat.csv"
    write_rows(flat, series_rows([5.0] * 40, 2))
    out = str(tmp_path / "out")
    code = main(
        ["fit", "--input", str(flat), "--outdir", out, "--period", "2",
         "--model", "par1"]
    )
    assert code == 4


# ---------------------------------------------------------------------------
# the packaged simulation study


def test_reproduce_sim_report(tmp_path):
    out = tmp_path / "study"
    report = reproduce_sim(out, seed=3, cycles=200, lags=[10, 20])

    assert set(report["diagnostics"]) == {"full", "fourier", "wavelet"}
    for tag in ("full", "fourier", "wavelet"):
        diag = report["diagnostics"][tag]
        assert set(diag["box_pierce"]) == {"10", "20"}
        assert 0.0 <= diag["ks"]["p"] <= 1.0
        for name in ("residuals", "acf", "boxpierce", "histogram", "normal_curve"):
            assert (out / f"{name}_{tag}.csv").exists()
    for family in ("fourier", "wavelet"):
        counts = report["retained"][family]
        assert counts["total"] == counts["phi"] + counts["theta"]
        assert 2 <= counts["total"] <= 24
        assert (out / f"coeffs_{family}.csv").exists()
        assert (out / f"model_{family}.json").exists()
    assert (out / "model_full.json").exists()
    assert json.loads((out / "report.json").read_text())["seed"] == 3


def test_reproduce_sim_subcommand(tmp_path):
    out = tmp_path / "study"
    code = main(
        [
            "reproduce-sim",
            "--outdir",
            str(out),
            "--seed",
            "3",
            "--cycles",
            "150",
            "--lags",
            "10,20",
        ]
    )
    assert code == 0
    manifest = json.loads((out / "manifest.json").read_text())
    assert manifest["command"] == "reproduce-sim"
    assert manifest["cycles"] == 150
