"""Residual diagnostics: autocorrelation, portmanteau, normality, histogram.

These back the whiteness and normality checks run on model residuals.
All of them treat the input as a single unstructured sequence; the
periodic structure has already been absorbed by the model whose
residuals are being checked.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np
from scipy import stats


def acf(x: np.ndarray, max_lag: int) -> tuple[np.ndarray, float]:
    """Sample autocorrelations rho_1..rho_max_lag and the 1.96/sqrt(n) band.

    rho_k = sum (x_t - xbar)(x_{t+k} - xbar) / sum (x_t - xbar)^2.
    """
    x = np.asarray(x, dtype=float)
    n = x.size
    if n <= max_lag:
        raise ValueError(f"need more than {max_lag} observations, got {n}")
    if max_lag < 1:
        raise ValueError(f"max_lag must be >= 1, got {max_lag}")
    centered = x - x.mean()
    denom = float(centered @ centered)
    if denom == 0.0:
        raise ValueError("zero-variance input has no autocorrelation")
    rho = np.array(
        [float(centered[:-k] @ centered[k:]) / denom for k in range(1, max_lag + 1)]
    )
    return rho, 1.96 / np.sqrt(n)


def box_pierce(x: np.ndarray, lag: int) -> tuple[float, float]:
    """Portmanteau whiteness statistic Q = n * sum_{k<=lag} rho_k^2.

    The p-value is the chi-square(lag) upper tail, with no adjustment for
    fitted parameters.
    """
    x = np.asarray(x, dtype=float)
    rho, _ = acf(x, lag)
    q = float(x.size * np.sum(rho**2))
    return q, float(stats.chi2.sf(q, df=lag))


def ks_normal(x: np.ndarray) -> tuple[float, float]:
    """One-sample Kolmogorov-Smirnov test of standardized input against
    the standard normal.

    The input is standardized by its own sample mean and standard
    deviation first, and the p-value uses the asymptotic Kolmogorov
    distribution.  No correction is made for the estimated moments, so
    the test is mildly anti-conservative.
    """
    x = np.asarray(x, dtype=float)
    if x.size < 8:
        raise ValueError(f"need at least 8 observations, got {x.size}")
    sd = x.std(ddof=1)
    if sd == 0.0:
        raise ValueError("zero-variance input cannot be standardized")
    z = (x - x.mean()) / sd
    result = stats.kstest(z, "norm", method="asymp")
    return float(result.statistic), float(result.pvalue)


@dataclass(frozen=True)
class HistogramSummary:
    """Equal-width density histogram with an overlaid normal curve."""

    edges: np.ndarray  # bins + 1 edges spanning [min, max]
    density: np.ndarray  # normalized so the histogram integrates to 1
    curve_x: np.ndarray  # 200 sample points for the fitted normal pdf
    curve_y: np.ndarray


def histogram(x: np.ndarray, bins: int) -> HistogramSummary:
    """Density histogram over [min, max] plus a 200-point normal overlay
    using the sample mean and standard deviation."""
    x = np.asarray(x, dtype=float)
    if bins < 1:
        raise ValueError(f"bins must be >= 1, got {bins}")
    if x.size == 0:
        raise ValueError("empty input")
    lo, hi = float(x.min()), float(x.max())
    density, edges = np.histogram(x, bins=bins, range=(lo, hi), density=True)
    curve_x = np.linspace(lo, hi, 200)
    curve_y = stats.norm.pdf(curve_x, loc=x.mean(), scale=x.std(ddof=1))
    return HistogramSummary(edges=edges, density=density, curve_x=curve_x, curve_y=curve_y)
