"""Batch command line front end.

Subcommands cover the full workflow: ``simulate`` writes a sample path,
``fit`` estimates a model from a CSV, ``compress`` runs the
coefficient-significance shrinkage in Fourier or wavelet space,
``diagnose`` checks residual whiteness and normality, and
``reproduce-sim`` chains the whole simulation study end to end.

Every command is deterministic given its arguments (manifests record
them, never wall-clock time), writes into ``--outdir``, and exits 0 on
success, 2 on configuration errors, 3 on data errors, and 4 on numerical
failures, printing the error class name on stderr.

Output file schemas (columns are fixed; golden tests pin them):

- series.csv: cycle,season,value
- coeffs.csv: family,index,value,se,z,significant,retained
  (z is empty for index 0, which is never tested)
- residuals.csv: t,value
- acf.csv: lag,rho,band
- boxpierce.csv: lag,q,p
- histogram.csv: bin_lo,bin_hi,density  (normal_curve.csv: x,pdf)
"""

from __future__ import annotations

import argparse
import csv
import json
import sys
from dataclasses import dataclass
from pathlib import Path

import numpy as np

from . import __version__
from .core import (
    ConfigError,
    DataError,
    IncompleteCycle,
    ModelKind,
    NumericalError,
    ParmaModel,
    PeriodicSeries,
    TransformReport,
)
from .diagnostics import box_pierce as _box_pierce
from .diagnostics import acf as _acf
from .diagnostics import histogram as _histogram
from .diagnostics import ks_normal as _ks_normal
from .estimation import FitResult, fit_par1, fit_parma11, innovations, residuals
from .fourier import compress_model_fourier
from .simulate import SimConfig, reproduction_model, simulate
from .wavelet import WaveletSpec, compress_model


@dataclass(frozen=True)
class ColumnSpec:
    """Names of the (cycle, season, value) columns in an input CSV.

    The season base (0 or 1) is inferred from the smallest season label
    in the file, so both calendar months 1..12 and season indices 0..11
    ingest without extra configuration.  Values matching a missing-data
    marker are rejected rather than imputed.
    """

    year: str = "year"
    season: str = "month"
    value: str = "value"
    missing_markers: tuple[str, ...] = ("---", "", "NA", "NaN")

    @staticmethod
    def from_arg(arg: str) -> "ColumnSpec":
        parts = [p.strip() for p in arg.split(",")]
        if len(parts) != 3 or not all(parts):
            raise ConfigError(
                f"--columns expects 'year,season,value' names, got {arg!r}"
            )
        return ColumnSpec(year=parts[0], season=parts[1], value=parts[2])


def ingest_csv(path: str | Path, spec: ColumnSpec, nu: int) -> PeriodicSeries:
    """Read a seasonal series whose rows form complete consecutive cycles.

    Rows may appear in any order; they are sorted by (year, season).
    Missing (year, season) combinations, duplicated rows, missing-value
    markers, and non-numeric values are all errors, named precisely.
    """
    path = Path(path)
    cells: dict[tuple[int, int], float] = {}
    try:
        fh = path.open(newline="")
    except OSError as exc:
        raise DataError(f"{path}: cannot read ({exc})") from None
    with fh:
        reader = csv.DictReader(fh)
        if reader.fieldnames is None:
            raise DataError(f"{path}: empty file")
        for col in (spec.year, spec.season, spec.value):
            if col not in reader.fieldnames:
                raise DataError(
                    f"{path}: column {col!r} not found (have {reader.fieldnames})"
                )
        for row in reader:
            raw_year = (row[spec.year] or "").strip()
            raw_season = (row[spec.season] or "").strip()
            raw_value = (row[spec.value] or "").strip()
            try:
                year = int(raw_year)
                season = int(raw_season)
            except ValueError:
                raise DataError(
                    f"{path}: non-integer {spec.year}/{spec.season} in row {row!r}"
                ) from None
            if raw_value in spec.missing_markers:
                raise DataError(
                    f"{path}: missing value marker {raw_value!r} at "
                    f"{spec.year}={year}, {spec.season}={season}"
                )
            try:
                value = float(raw_value)
            except ValueError:
                raise DataError(
                    f"{path}: non-numeric value {raw_value!r} at "
                    f"{spec.year}={year}, {spec.season}={season}"
                ) from None
            if (year, season) in cells:
                raise DataError(
                    f"{path}: duplicated {spec.year}={year}, {spec.season}={season}"
                )
            cells[(year, season)] = value

    if not cells:
        raise DataError(f"{path}: no data rows")
    base = min(season for _, season in cells)
    bad = [k for k in cells if not base <= k[1] < base + nu]
    if bad:
        year, season = sorted(bad)[0]
        raise DataError(
            f"{path}: {spec.season}={season} outside {base}..{base + nu - 1} "
            f"(period {nu}) at {spec.year}={year}"
        )
    years = sorted({year for year, _ in cells})
    values = []
    for year in range(years[0], years[-1] + 1):
        for season in range(base, base + nu):
            if (year, season) not in cells:
                raise IncompleteCycle(
                    f"{path}: missing {spec.year}={year}, {spec.season}={season}"
                )
            values.append(cells[(year, season)])
    return PeriodicSeries(np.array(values), nu)


# ---------------------------------------------------------------------------
# model (de)serialization


def model_to_dict(model: ParmaModel) -> dict:
    out = {
        "kind": model.kind.value,
        "nu": model.nu,
        "phi": [float(v) for v in model.phi.values],
        "sigma2": [float(v) for v in model.sigma2.values],
    }
    if model.mu is not None:
        out["mu"] = [float(v) for v in model.mu.values]
    if model.theta is not None:
        out["theta"] = [float(v) for v in model.theta.values]
    return out


def model_from_dict(data: dict) -> ParmaModel:
    try:
        kind = ModelKind(data["kind"])
        if kind is ModelKind.PAR1:
            return ParmaModel.par1(data["mu"], data["phi"], data["sigma2"])
        return ParmaModel.parma11(data["phi"], data["theta"])
    except (KeyError, TypeError) as exc:
        raise DataError(f"malformed model record: {exc}") from None


def save_model(path: Path, model: ParmaModel, settings: dict | None = None) -> None:
    record = model_to_dict(model)
    if settings:
        record["fit"] = settings
    path.write_text(json.dumps(record, indent=2, sort_keys=True) + "\n")


def load_model(path: str | Path) -> ParmaModel:
    path = Path(path)
    try:
        data = json.loads(path.read_text())
    except (OSError, json.JSONDecodeError) as exc:
        raise DataError(f"{path}: cannot read model JSON ({exc})") from None
    return model_from_dict(data)


# ---------------------------------------------------------------------------
# small output helpers


def _fmt(x) -> str:
    if isinstance(x, (bool, np.bool_)):
        return "true" if x else "false"
    if isinstance(x, float) and np.isnan(x):
        return ""
    if isinstance(x, float):
        return f"{x:.12g}"
    return str(x)


def _write_csv(path: Path, header: list[str], rows) -> None:
    with path.open("w", newline="") as fh:
        writer = csv.writer(fh)
        writer.writerow(header)
        for row in rows:
            writer.writerow([_fmt(v) for v in row])


def _write_manifest(outdir: Path, command: str, params: dict) -> None:
    record = {"command": command, "version": __version__, **params}
    (outdir / "manifest.json").write_text(
        json.dumps(record, indent=2, sort_keys=True) + "\n"
    )


def _write_series(path: Path, series: PeriodicSeries) -> None:
    rows = (
        (t // series.nu, t % series.nu, float(v))
        for t, v in enumerate(series.values)
    )
    _write_csv(path, ["cycle", "season", "value"], rows)


def _coeff_rows(reports: dict[str, TransformReport]):
    for family, rep in reports.items():
        for i in range(rep.values.size):
            yield (
                family,
                i,
                float(rep.values[i]),
                float(rep.se[i]),
                float(rep.z[i]),
                bool(rep.significant[i]),
                bool(rep.retained[i]),
            )


def _write_coeffs(path: Path, reports: dict[str, TransformReport]) -> None:
    _write_csv(
        path,
        ["family", "index", "value", "se", "z", "significant", "retained"],
        _coeff_rows(reports),
    )


def _retained_summary(reports: dict[str, TransformReport]) -> dict:
    counts = {family: rep.n_retained for family, rep in reports.items()}
    counts["total"] = sum(counts.values())
    return counts


def _parse_lags(arg: str) -> list[int]:
    try:
        lags = [int(p) for p in arg.split(",") if p.strip()]
    except ValueError:
        raise ConfigError(f"--lags expects integers like '20,30', got {arg!r}") from None
    if not lags or any(lag < 1 for lag in lags):
        raise ConfigError(f"--lags must be positive, got {arg!r}")
    return lags


def _outdir(args) -> Path:
    out = Path(args.outdir)
    out.mkdir(parents=True, exist_ok=True)
    return out


def _fit_series(series: PeriodicSeries, model_kind: str, n_iter: int) -> FitResult:
    if model_kind == "par1":
        return fit_par1(series, n_iter=n_iter)
    return fit_parma11(series, n_iter=n_iter)


def _diagnose_to(
    outdir: Path,
    tag: str,
    model: ParmaModel,
    series: PeriodicSeries,
    lags: list[int],
    bins: int,
) -> dict:
    """Residual diagnostics for one model; returns the summary dict."""
    res = residuals(model, series)
    suffix = f"_{tag}" if tag else ""
    _write_csv(
        outdir / f"residuals{suffix}.csv",
        ["t", "value"],
        ((t + 1, float(v)) for t, v in enumerate(res)),
    )
    rho, band = _acf(res, max(lags))
    _write_csv(
        outdir / f"acf{suffix}.csv",
        ["lag", "rho", "band"],
        ((k + 1, float(r), band) for k, r in enumerate(rho)),
    )
    bp = {lag: _box_pierce(res, lag) for lag in lags}
    _write_csv(
        outdir / f"boxpierce{suffix}.csv",
        ["lag", "q", "p"],
        ((lag, q, p) for lag, (q, p) in bp.items()),
    )
    ks_stat, ks_p = _ks_normal(res)
    (outdir / f"ks{suffix}.txt").write_text(
        f"statistic={ks_stat:.12g}\np_value={ks_p:.12g}\n"
    )
    hist = _histogram(res, bins)
    _write_csv(
        outdir / f"histogram{suffix}.csv",
        ["bin_lo", "bin_hi", "density"],
        (
            (float(hist.edges[i]), float(hist.edges[i + 1]), float(hist.density[i]))
            for i in range(hist.density.size)
        ),
    )
    _write_csv(
        outdir / f"normal_curve{suffix}.csv",
        ["x", "pdf"],
        zip(hist.curve_x.tolist(), hist.curve_y.tolist()),
    )
    return {
        "box_pierce": {str(lag): {"q": q, "p": p} for lag, (q, p) in bp.items()},
        "ks": {"statistic": ks_stat, "p": ks_p},
    }


def _render_svg(outdir: Path, tag: str) -> None:
    try:
        import matplotlib
    except ImportError:
        raise ConfigError(
            "--svg requires matplotlib (install the 'plot' extra)"
        ) from None
    matplotlib.use("Agg")
    import matplotlib.pyplot as plt

    suffix = f"_{tag}" if tag else ""
    with (outdir / f"acf{suffix}.csv").open() as fh:
        rows = list(csv.DictReader(fh))
    lags = [int(r["lag"]) for r in rows]
    rho = [float(r["rho"]) for r in rows]
    band = float(rows[0]["band"])
    fig, ax = plt.subplots(figsize=(6, 3))
    ax.stem(lags, rho)
    ax.axhline(band, linestyle="--", linewidth=0.8)
    ax.axhline(-band, linestyle="--", linewidth=0.8)
    ax.set_xlabel("lag")
    ax.set_ylabel("acf")
    fig.tight_layout()
    fig.savefig(outdir / f"acf{suffix}.svg")
    plt.close(fig)

    with (outdir / f"histogram{suffix}.csv").open() as fh:
        hrows = list(csv.DictReader(fh))
    with (outdir / f"normal_curve{suffix}.csv").open() as fh:
        crows = list(csv.DictReader(fh))
    fig, ax = plt.subplots(figsize=(6, 3))
    for r in hrows:
        lo, hi = float(r["bin_lo"]), float(r["bin_hi"])
        ax.bar(lo, float(r["density"]), width=hi - lo, align="edge", alpha=0.6)
    ax.plot([float(r["x"]) for r in crows], [float(r["pdf"]) for r in crows])
    ax.set_xlabel("residual")
    ax.set_ylabel("density")
    fig.tight_layout()
    fig.savefig(outdir / f"histogram{suffix}.svg")
    plt.close(fig)


# ---------------------------------------------------------------------------
# subcommands


def cmd_simulate(args) -> None:
    outdir = _outdir(args)
    model = load_model(args.model_json) if args.model_json else reproduction_model()
    cfg = SimConfig(
        model=model,
        n_cycles=args.cycles,
        burn_in_cycles=args.burn_in,
        seed=args.seed,
    )
    series = simulate(cfg)
    _write_series(outdir / "series.csv", series)
    _write_manifest(
        outdir,
        "simulate",
        {
            "seed": args.seed,
            "cycles": args.cycles,
            "burn_in_cycles": args.burn_in,
            "model": model_to_dict(model),
        },
    )


def cmd_fit(args) -> None:
    outdir = _outdir(args)
    spec = ColumnSpec.from_arg(args.columns)
    series = ingest_csv(args.input, spec, args.period)
    fit = _fit_series(series, args.model, args.iters)
    save_model(
        outdir / "model.json",
        fit.model,
        {"n_iter": fit.n_iter, "n_cycles": fit.n_cycles},
    )
    _write_csv(
        outdir / "psi.csv",
        ["lag", "season", "value"],
        (
            (j, i, float(fit.psi.psi_at(j).values[i]))
            for j in range(1, fit.psi.j_max + 1)
            for i in range(fit.nu)
        ),
    )
    state = innovations(fit.gamma, fit.n_iter)
    _write_csv(
        outdir / "innovations_trace.csv",
        ["n", "season", "v"],
        (
            (n, i, float(state.v[n, i]))
            for n in range(fit.n_iter + 1)
            for i in range(fit.nu)
        ),
    )
    _write_manifest(
        outdir,
        "fit",
        {
            "input": str(args.input),
            "period": args.period,
            "model": args.model,
            "n_iter": args.iters,
            "n_cycles": series.n_cycles,
        },
    )


def cmd_compress(args) -> None:
    outdir = _outdir(args)
    spec = ColumnSpec.from_arg(args.columns)
    series = ingest_csv(args.input, spec, args.period)
    fit = _fit_series(series, args.model, args.iters)
    if args.transform == "wavelet":
        wspec = WaveletSpec.from_name(args.wavelet)
        compressed, reports = compress_model(fit, args.alpha, wspec)
    else:
        compressed, reports = compress_model_fourier(fit, args.alpha)
    _write_coeffs(outdir / "coeffs.csv", reports)
    save_model(
        outdir / "model_compressed.json",
        compressed,
        {"n_iter": fit.n_iter, "n_cycles": fit.n_cycles},
    )
    save_model(outdir / "model.json", fit.model, {"n_iter": fit.n_iter})
    _write_manifest(
        outdir,
        "compress",
        {
            "input": str(args.input),
            "period": args.period,
            "model": args.model,
            "n_iter": args.iters,
            "transform": args.transform,
            "wavelet": args.wavelet if args.transform == "wavelet" else None,
            "alpha": args.alpha,
            "retained": _retained_summary(reports),
        },
    )


def cmd_diagnose(args) -> None:
    outdir = _outdir(args)
    spec = ColumnSpec.from_arg(args.columns)
    series = ingest_csv(args.input, spec, args.period)
    model = load_model(args.model_json)
    lags = _parse_lags(args.lags)
    summary = _diagnose_to(outdir, "", model, series, lags, args.bins)
    if args.svg:
        _render_svg(outdir, "")
    _write_manifest(
        outdir,
        "diagnose",
        {
            "input": str(args.input),
            "model_json": str(args.model_json),
            "period": args.period,
            "lags": lags,
            "bins": args.bins,
            **summary,
        },
    )


def reproduce_sim(
    outdir: Path,
    seed: int = 0,
    cycles: int = 500,
    n_iter: int = 7,
    alpha: float = 0.05,
    wavelet_name: str = "haar",
    lags: list[int] | None = None,
    burn_in: int = 10,
    bins: int = 30,
) -> dict:
    """Run the simulation study end to end; returns the report dict.

    Simulates the strongly periodic PARMA_12(1,1), fits by 7 rounds of
    the innovations algorithm, compresses in both Fourier and wavelet
    space, and diagnoses the residuals of all three models (full,
    Fourier, wavelet).
    """
    lags = lags or [20, 50, 100]
    outdir.mkdir(parents=True, exist_ok=True)
    model = reproduction_model()
    series = simulate(
        SimConfig(model=model, n_cycles=cycles, burn_in_cycles=burn_in, seed=seed)
    )
    _write_series(outdir / "series.csv", series)
    fit = fit_parma11(series, n_iter=n_iter)
    save_model(outdir / "model_full.json", fit.model, {"n_iter": n_iter})

    fourier_model, fourier_reports = compress_model_fourier(fit, alpha)
    _write_coeffs(outdir / "coeffs_fourier.csv", fourier_reports)
    save_model(outdir / "model_fourier.json", fourier_model)

    wspec = WaveletSpec.from_name(wavelet_name)
    wavelet_model, wavelet_reports = compress_model(fit, alpha, wspec)
    _write_coeffs(outdir / "coeffs_wavelet.csv", wavelet_reports)
    save_model(outdir / "model_wavelet.json", wavelet_model)

    report = {
        "seed": seed,
        "cycles": cycles,
        "n_iter": n_iter,
        "alpha": alpha,
        "wavelet": wavelet_name,
        "true_model": model_to_dict(model),
        "retained": {
            "fourier": _retained_summary(fourier_reports),
            "wavelet": _retained_summary(wavelet_reports),
        },
        "diagnostics": {},
    }
    for tag, m in (
        ("full", fit.model),
        ("fourier", fourier_model),
        ("wavelet", wavelet_model),
    ):
        report["diagnostics"][tag] = _diagnose_to(outdir, tag, m, series, lags, bins)
    (outdir / "report.json").write_text(
        json.dumps(report, indent=2, sort_keys=True) + "\n"
    )
    return report


def cmd_reproduce_sim(args) -> None:
    outdir = _outdir(args)
    report = reproduce_sim(
        outdir,
        seed=args.seed,
        cycles=args.cycles,
        n_iter=args.iters,
        alpha=args.alpha,
        wavelet_name=args.wavelet,
        lags=_parse_lags(args.lags),
        burn_in=args.burn_in,
        bins=args.bins,
    )
    _write_manifest(
        outdir,
        "reproduce-sim",
        {k: report[k] for k in ("seed", "cycles", "n_iter", "alpha", "wavelet")},
    )


# ---------------------------------------------------------------------------
# parser


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="parma",
        description="Periodic ARMA fitting with Fourier/wavelet parameter compression.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def add_common_io(p, need_input=True):
        if need_input:
            p.add_argument("--input", required=True, help="input series CSV")
        p.add_argument("--outdir", required=True, help="output directory")
        p.add_argument("--period", type=int, default=12, help="season count nu")
        p.add_argument(
            "--columns",
            default="year,month,value",
            help="comma-separated year,season,value column names",
        )

    p_sim = sub.add_parser("simulate", help="generate a sample path")
    p_sim.add_argument("--outdir", required=True)
    p_sim.add_argument("--seed", type=int, default=0)
    p_sim.add_argument("--cycles", type=int, default=500)
    p_sim.add_argument("--burn-in", type=int, default=10, dest="burn_in")
    p_sim.add_argument(
        "--model-json",
        default=None,
        help="model parameters to simulate (default: the built-in study model)",
    )
    p_sim.set_defaults(func=cmd_simulate)

    p_fit = sub.add_parser("fit", help="estimate a model from a series CSV")
    add_common_io(p_fit)
    p_fit.add_argument("--model", choices=("par1", "parma11"), required=True)
    p_fit.add_argument("--iters", type=int, default=7, help="innovations iterations")
    p_fit.set_defaults(func=cmd_fit)

    p_comp = sub.add_parser("compress", help="fit, test coefficients, and shrink")
    add_common_io(p_comp)
    p_comp.add_argument("--model", choices=("par1", "parma11"), required=True)
    p_comp.add_argument("--iters", type=int, default=7)
    p_comp.add_argument("--transform", choices=("fourier", "wavelet"), required=True)
    p_comp.add_argument("--alpha", type=float, default=0.05)
    p_comp.add_argument(
        "--wavelet", default="haar", help="wavelet family: haar or la1..la10"
    )
    p_comp.set_defaults(func=cmd_compress)

    p_diag = sub.add_parser("diagnose", help="residual whiteness and normality")
    add_common_io(p_diag)
    p_diag.add_argument("--model-json", required=True)
    p_diag.add_argument("--lags", default="20,30")
    p_diag.add_argument("--bins", type=int, default=30)
    p_diag.add_argument("--svg", action="store_true", help="also render SVG plots")
    p_diag.set_defaults(func=cmd_diagnose)

    p_rep = sub.add_parser(
        "reproduce-sim", help="full simulation study: simulate, fit, compress, diagnose"
    )
    p_rep.add_argument("--outdir", required=True)
    p_rep.add_argument("--seed", type=int, default=0)
    p_rep.add_argument("--cycles", type=int, default=500)
    p_rep.add_argument("--iters", type=int, default=7)
    p_rep.add_argument("--alpha", type=float, default=0.05)
    p_rep.add_argument("--wavelet", default="haar")
    p_rep.add_argument("--lags", default="20,50,100")
    p_rep.add_argument("--burn-in", type=int, default=10, dest="burn_in")
    p_rep.add_argument("--bins", type=int, default=30)
    p_rep.set_defaults(func=cmd_reproduce_sim)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        args.func(args)
    except ConfigError as exc:
        print(f"{type(exc).__name__}: {exc}", file=sys.stderr)
        return 2
    except DataError as exc:
        print(f"{type(exc).__name__}: {exc}", file=sys.stderr)
        return 3
    except NumericalError as exc:
        print(f"{type(exc).__name__}: {exc}", file=sys.stderr)
        return 4
    except ValueError as exc:
        print(f"{type(exc).__name__}: {exc}", file=sys.stderr)
        return 2
    return 0


if __name__ == "__main__":
    sys.exit(main())
