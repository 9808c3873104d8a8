"""Orthogonal discrete wavelet transforms of seasonal parameter vectors.

The transform matrix for a power-of-two length nu' is built by cascading
one analysis level at a time: each level splits the current
approximation into half-length approximation and detail via circular
(periodic) filtering with the family's scaling/wavelet filter pair.
Periodic boundaries keep every level exactly orthogonal no matter how
long the filter is relative to the block, because wrapped taps
accumulate additively.  Rows are ordered scaling coefficient first, then
detail blocks coarsest to finest, so a length-16 transform yields
[V_4, W_1 (1 coeff), W_2 (2), W_3 (4), W_4 (8)].

Supported families: Haar and the Daubechies least-asymmetric (symlet)
filters with 1..10 vanishing moments (1 coincides with Haar).  The
scaling filters are embedded as a constant table; they were produced by
spectral factorization of the Daubechies half-band polynomial, choosing
the root set with minimal phase nonlinearity (see
scripts/mint_la_filters.py), and are validated here by the sum and
even-shift orthonormality invariants at import time.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np
from scipy.special import ndtri

from .core import (
    CovMatrix,
    NumericalError,
    SeasonalVector,
    TransformReport,
    next_pow2,
    periodic_extend_cov,
    periodic_extend_vector,
)

_HAAR_SCALING = (2.0**-0.5, 2.0**-0.5)

# Least-asymmetric scaling filters, indexed by vanishing moments.
_LA_SCALING = {
    2: (
        0.48296291314453416,
        0.8365163037378079,
        0.2241438680420134,
        -0.12940952255126037,
    ),
    3: (
        0.33267055295008263,
        0.8068915093110925,
        0.45987750211849154,
        -0.13501102001025458,
        -0.08544127388202666,
        0.03522629188570953,
    ),
    4: (
        0.032223100604051466,
        -0.012603967262031304,
        -0.09921954357663353,
        0.29785779560530606,
        0.8037387518051321,
        0.497618667632775,
        -0.029635527646002493,
        -0.07576571478950221,
    ),
    5: (
        0.019538882735249827,
        -0.021101834024689042,
        -0.17532808990805623,
        0.01660210576451085,
        0.633978963456792,
        0.7234076904040407,
        0.19939753397685558,
        -0.039134249302313844,
        0.02951949092570626,
        0.027333068344998768,
    ),
    6: (
        0.015404109327044824,
        0.0034907120842221626,
        -0.11799011114852002,
        -0.04831174258569806,
        0.49105594192797375,
        0.787641141028651,
        0.3379294217281658,
        -0.07263752278637658,
        -0.02106029251237085,
        0.04472490177078139,
        0.0017677118642540077,
        -0.00780070832503238,
    ),
    7: (
        0.0022918339540537714,
        -0.003283297847466811,
        -0.01812660513133846,
        0.020464207577546033,
        0.04474234946835238,
        -0.1010109208684203,
        -0.05680447688966697,
        0.4836109156822677,
        0.7819215932917282,
        0.3602184609062602,
        -0.06413128980738582,
        -0.06490800354718848,
        0.017213376300804502,
        0.012015419283549189,
    ),
    8: (
        -0.019883739922647154,
        -0.06717412463965154,
        0.04144808519763596,
        0.47688535443576624,
        0.7653942781692984,
        0.36762893004184954,
        -0.14985528793888034,
        -0.10132992607872751,
        0.0980679192572725,
        0.03457506408662447,
        -0.03656312076613487,
        -0.002575118350207546,
        0.009584780849382047,
        -0.0012248970903731172,
        -0.0010861336593789538,
        0.00032149878126697947,
    ),
    9: (
        3.93473203162716e-05,
        -0.0002519631889427101,
        0.00023038576352319597,
        0.0018476468830562265,
        -0.00428150368246343,
        -0.004723204757751397,
        0.022361662123679096,
        0.00025094711483145197,
        -0.06763282906132997,
        0.03072568147933338,
        0.14854074933810638,
        -0.09684078322297646,
        -0.2932737832791749,
        0.13319738582500756,
        0.6572880780513005,
        0.6048231236901112,
        0.24383467461259034,
        0.038077947363878345,
    ),
    10: (
        -0.0019882883686792472,
        -0.004341236937440164,
        0.012700475419076335,
        0.030511026911256154,
        -0.040242888077662325,
        -0.08218805983250194,
        0.24488259585257724,
        0.7204501885769493,
        0.6148193322796635,
        0.046621375170575054,
        -0.16495157677310635,
        0.008155683304710943,
        0.05691784146926938,
        -0.0189121087961115,
        -0.01880702601022112,
        0.008425500851817718,
        0.004164787520068239,
        -0.0017935084613655654,
        -0.0003884721244380399,
        0.0001779203986575584,
    ),
}


def _check_scaling_filter(h: np.ndarray, label: str) -> None:
    """Filter admissibility: sum sqrt(2), unit norm, orthonormal even shifts."""
    if abs(h.sum() - math.sqrt(2.0)) > 1e-10:
        raise NumericalError(f"{label}: scaling filter does not sum to sqrt(2)")
    for shift in range(0, h.size - 1, 2):
        target = 1.0 if shift == 0 else 0.0
        if abs(np.dot(h[shift:], h[: h.size - shift]) - target) > 1e-12:
            raise NumericalError(
                f"{label}: even-shift orthonormality fails at shift {shift}"
            )


@dataclass(frozen=True)
class WaveletSpec:
    """An orthonormal wavelet family choice; boundary handling is always
    periodic."""

    kind: str  # "haar" or "la"
    vanishing_moments: int | None = None

    def __post_init__(self):
        if self.kind == "haar":
            if self.vanishing_moments not in (None, 1):
                raise ValueError("haar has exactly one vanishing moment")
        elif self.kind == "la":
            vm = self.vanishing_moments
            if vm is None or not 1 <= vm <= 10:
                raise ValueError(
                    f"least-asymmetric filters cover 1..10 vanishing moments, got {vm}"
                )
        else:
            raise ValueError(f"unknown wavelet family {self.kind!r}")

    @staticmethod
    def haar() -> "WaveletSpec":
        return WaveletSpec("haar")

    @staticmethod
    def least_asymmetric(vanishing_moments: int) -> "WaveletSpec":
        return WaveletSpec("la", vanishing_moments)

    @staticmethod
    def from_name(name: str) -> "WaveletSpec":
        """Parse 'haar' or 'laK' (for example 'la7')."""
        if name == "haar":
            return WaveletSpec.haar()
        if name.startswith("la") and name[2:].isdigit():
            return WaveletSpec.least_asymmetric(int(name[2:]))
        raise ValueError(f"unknown wavelet name {name!r}; expected 'haar' or 'la1'..'la10'")

    @property
    def name(self) -> str:
        if self.kind == "haar":
            return "haar"
        return f"la{self.vanishing_moments}"

    def filters(self) -> tuple[np.ndarray, np.ndarray]:
        """(scaling h, wavelet g) with the quadrature relation
        g_m = (-1)^m h_{L-1-m}."""
        if self.kind == "haar" or self.vanishing_moments == 1:
            h = np.array(_HAAR_SCALING)
        else:
            h = np.array(_LA_SCALING[self.vanishing_moments])
        _check_scaling_filter(h, self.name)
        signs = np.where(np.arange(h.size) % 2 == 0, 1.0, -1.0)
        g = signs * h[::-1]
        return h, g


def _analysis_pair(n: int, h: np.ndarray, g: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    """One cascade level: (n/2 x n) circular filter-and-downsample matrices.

    Row k of the approximation matrix holds h_m at column (2k + m) mod n;
    taps that wrap onto the same column accumulate, which is what keeps
    the level orthogonal when the filter is longer than the block.
    """
    half = n // 2
    approx = np.zeros((half, n))
    detail = np.zeros((half, n))
    for k in range(half):
        for m in range(h.size):
            col = (2 * k + m) % n
            approx[k, col] += h[m]
            detail[k, col] += g[m]
    return approx, detail


_MATRIX_CACHE: dict[tuple[str, int], np.ndarray] = {}


def dwt_matrix(spec: WaveletSpec, nu_prime: int) -> np.ndarray:
    """Full-depth orthogonal DWT matrix of order nu' (a power of two >= 2).

    Row 0 is the scaling coefficient V_J; rows are then detail blocks
    W_1 (coarsest, 1 coefficient) through W_J (finest, nu'/2).  The
    result is cached per (family, nu') and returned read-only.
    """
    if nu_prime < 2 or next_pow2(nu_prime) != nu_prime:
        raise ValueError(f"transform length must be a power of two >= 2, got {nu_prime}")
    key = (spec.name, nu_prime)
    cached = _MATRIX_CACHE.get(key)
    if cached is not None:
        return cached

    h, g = spec.filters()
    approx_rows = np.eye(nu_prime)
    details = []  # finest first
    n = nu_prime
    while n >= 2:
        lo, hi = _analysis_pair(n, h, g)
        details.append(hi @ approx_rows)
        approx_rows = lo @ approx_rows
        n //= 2
    w = np.vstack([approx_rows] + details[::-1])

    err = float(np.abs(w @ w.T - np.eye(nu_prime)).max())
    if err > 1e-10:
        raise NumericalError(
            f"DWT matrix for {spec.name}, length {nu_prime}, is not orthogonal "
            f"(max deviation {err:.3e}); filter table is corrupt"
        )
    w.flags.writeable = False
    _MATRIX_CACHE[key] = w
    return w


@dataclass(frozen=True)
class DwtCoeffs:
    """DWT coefficients ordered [V_J, W_1, W_2, ..., W_J]."""

    w: np.ndarray
    nu_prime: int

    def __post_init__(self):
        w = np.asarray(self.w, dtype=float)
        if w.shape != (self.nu_prime,):
            raise ValueError(f"expected {self.nu_prime} coefficients, got {w.shape}")
        if self.nu_prime < 2 or next_pow2(self.nu_prime) != self.nu_prime:
            raise ValueError(f"length must be a power of two >= 2, got {self.nu_prime}")
        w = w.copy()
        w.flags.writeable = False
        object.__setattr__(self, "w", w)

    @property
    def depth(self) -> int:
        return self.nu_prime.bit_length() - 1

    @property
    def scaling(self) -> float:
        return float(self.w[0])

    def block(self, j: int) -> np.ndarray:
        """Detail block W_j, 1 <= j <= depth; 2^{j-1} coefficients."""
        if not 1 <= j <= self.depth:
            raise ValueError(f"detail level must be in 1..{self.depth}, got {j}")
        return self.w[2 ** (j - 1) : 2**j]

    def labels(self) -> list[str]:
        out = [f"V{self.depth}"]
        for j in range(1, self.depth + 1):
            out += [f"W{j}.{k}" for k in range(2 ** (j - 1))]
        return out


def to_dwt(x: np.ndarray | SeasonalVector, spec: WaveletSpec) -> DwtCoeffs:
    """Transform a power-of-two-length vector; w[0] = sqrt(n) * mean(x)."""
    values = x.values if isinstance(x, SeasonalVector) else np.asarray(x, dtype=float)
    return DwtCoeffs(dwt_matrix(spec, values.size) @ values, values.size)


def from_dwt(coeffs: DwtCoeffs, spec: WaveletSpec) -> np.ndarray:
    """Exact inverse transform via the transpose of the orthogonal matrix."""
    return dwt_matrix(spec, coeffs.nu_prime).T @ coeffs.w


def dwt_cov(cov: CovMatrix, spec: WaveletSpec) -> CovMatrix:
    """Coefficient covariance R_W = W Sigma W' (Sigma already extended)."""
    w = dwt_matrix(spec, cov.dim)
    return CovMatrix(w @ cov.values @ w.T, f"dwt-{spec.name}({cov.provenance})")


def bonferroni_threshold(alpha: float, nu_prime: int) -> float:
    """Two-sided normal critical value at per-coefficient level
    alpha/(nu' - 1).

    nu' - 1 is the number of tested coefficients (everything except the
    scaling/DC coefficient).
    """
    if not 0.0 < alpha < 1.0:
        raise ValueError(f"alpha must be in (0, 1), got {alpha}")
    if nu_prime < 2:
        raise ValueError(f"need at least one tested coefficient, got nu'={nu_prime}")
    alpha_star = alpha / (nu_prime - 1)
    return float(ndtri(1.0 - alpha_star / 2.0))


def wavelet_test(
    x_hat: SeasonalVector,
    cov: CovMatrix,
    n_cycles: int,
    alpha: float,
    spec: WaveletSpec,
) -> TransformReport:
    """Bonferroni significance test of the DWT coefficients of x_hat.

    The vector and its covariance are periodically extended to the
    nearest power of two nu' (identity when nu already is one), then
    Z_i = w_i / sqrt(R_W[i,i] / N) for i = 1..nu'-1 is referred to the
    two-sided threshold at level alpha/(nu'-1).  The scaling coefficient
    W_0 is never tested and always retained.
    """
    nu = x_hat.nu
    if cov.dim != nu:
        raise ValueError(f"covariance is {cov.dim}x{cov.dim}, vector has period {nu}")
    if n_cycles < 1:
        raise ValueError(f"n_cycles must be >= 1, got {n_cycles}")

    nu_prime = next_pow2(max(nu, 2))
    extended = periodic_extend_vector(x_hat.values, nu_prime)
    cov_ext = periodic_extend_cov(cov, nu_prime) if nu_prime != nu else cov
    coeffs = to_dwt(extended, spec)
    r = dwt_cov(cov_ext, spec)
    r_diag = np.diag(r.values)
    if r_diag.min() <= 0.0:
        raise NumericalError(
            "transformed covariance has a non-positive diagonal entry; "
            "Z statistics are undefined"
        )
    se = np.sqrt(r_diag / n_cycles)

    z = np.full(nu_prime, np.nan)
    z[1:] = coeffs.w[1:] / se[1:]
    threshold = bonferroni_threshold(alpha, nu_prime)
    significant = np.zeros(nu_prime, dtype=bool)
    significant[1:] = np.abs(z[1:]) > threshold
    retained = significant.copy()
    retained[0] = True
    compressed = np.where(retained, coeffs.w, 0.0)
    return TransformReport(
        transform="wavelet",
        family=x_hat.role.value,
        values=coeffs.w,
        se=se,
        z=z,
        significant=significant,
        retained=retained,
        threshold=threshold,
        compressed=compressed,
    )


def compress_model(fit, alpha: float, spec: WaveletSpec):
    """Shrink every parameter family of a fitted model in wavelet space.

    For each family (mu, phi, sigma2 for PAR(1); phi, theta for
    PARMA(1,1)): build the matching null covariance from the fit's pooled
    estimates, test the coefficients, zero the insignificant ones,
    reconstruct, and truncate back to the first nu entries.  Returns the
    compressed model and the per-family reports.  The compressed model
    must still be valid (stationary phi, positive sigma2); a fit extreme
    enough to violate that raises from the model constructor.
    """
    from .asymptotics import h0_covariance
    from .core import ParmaModel, Role

    reports: dict[str, TransformReport] = {}
    rebuilt: dict[Role, np.ndarray] = {}
    for vec in fit.model.families():
        cov = h0_covariance(fit, vec.role)
        report = wavelet_test(vec, cov, fit.n_cycles, alpha, spec)
        reports[vec.role.value] = report
        nu_prime = report.compressed.size
        values = from_dwt(DwtCoeffs(report.compressed, nu_prime), spec)
        rebuilt[vec.role] = values[: fit.nu]
    return ParmaModel.from_family_values(fit.model.kind, rebuilt), reports
