"""End-to-end monthly-sunshine workflow: ingest, fit, compress, diagnose.

Reads the bundled 25-year monthly sunshine series, fits a periodic
AR(1) with per-month means and innovation variances (two innovations
sweeps, enough for an AR fit), then shrinks the 48 fitted parameters
in Fourier space and in LA(7) wavelet space.  Prints retained
coefficient counts and residual whiteness/normality checks for the
full fit and both compressed models.
"""

import argparse
from pathlib import Path

from parma.cli import ColumnSpec, ingest_csv
from parma.diagnostics import box_pierce, ks_normal
from parma.estimation import fit_par1, residuals
from parma.fourier import compress_model_fourier
from parma.wavelet import WaveletSpec, compress_model

REPO = Path(__file__).resolve().parents[1]
LAGS = (20, 30, 40)


def describe(tag: str, model, series) -> None:
    res = residuals(model, series)
    cells = "".join(f"  BP p({lag})={box_pierce(res, lag)[1]:.4f}" for lag in LAGS)
    print(f"{tag:<8}{cells}  KS p={ks_normal(res)[1]:.4f}")


def main() -> None:
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("--csv", type=Path, default=REPO / "data" / "sunshine.csv")
    parser.add_argument("--alpha", type=float, default=0.05)
    parser.add_argument("--wavelet", default="la7")
    args = parser.parse_args()

    series = ingest_csv(args.csv, ColumnSpec(value="sun"), nu=12)
    print(f"{series.values.size} observations, {series.n_cycles} cycles of 12")

    fit = fit_par1(series, n_iter=2)

    fourier_model, fourier_reports = compress_model_fourier(fit, args.alpha)
    spec = WaveletSpec.from_name(args.wavelet)
    wavelet_model, wavelet_reports = compress_model(fit, args.alpha, spec)

    for name, reports in (("fourier", fourier_reports), ("wavelet", wavelet_reports)):
        kept = {fam: rep.n_retained for fam, rep in reports.items()}
        total = sum(kept.values())
        parts = ", ".join(f"{fam} {n}" for fam, n in kept.items())
        print(f"{name}: kept {total} of 48 coefficients ({parts})")

    describe("full", fit.model, series)
    describe("fourier", fourier_model, series)
    describe("wavelet", wavelet_model, series)


if __name__ == "__main__":
    main()
