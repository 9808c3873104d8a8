"""Fourier representation of seasonal parameter vectors.

A length-nu seasonal vector x has the harmonic expansion

    x_t = c_0 + sum_r [ c_r cos(2 pi r t / nu) + s_r sin(2 pi r t / nu) ],

with r up to nu/2 (even nu; the Nyquist term has no sine) or (nu-1)/2
(odd nu).  The coefficient vector f = [c_0, c_1, s_1, ...] is obtained by
the factored linear map f = L P U x, where U is the unitary DFT matrix,
P pairs each conjugate row of U into its cosine and sine combinations,
and the diagonal L rescales into the natural coefficient units above.
P U is a real orthogonal matrix; L carries all of the non-unit scaling,
so covariance propagation is done in the orthonormal P U basis and the
reported coefficients in L-scaled units.  The two choices give identical
Z statistics.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .core import CovMatrix, NumericalError, SeasonalVector, TransformReport
from .wavelet import bonferroni_threshold

_IMAG_TOL = 1e-12


def lpu_matrices(nu: int) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
    """The factors (L, P, U) of the Fourier coefficient map f = L P U x.

    U is the unitary DFT matrix nu^{-1/2} exp(-i 2 pi r t / nu).  P has
    rows selecting c_0, then (c_r, s_r) pairs via the conjugate-symmetric
    combinations 2^{-1/2}(row_r +/- row_{nu-r}), and for even nu a final
    row selecting the Nyquist cosine.  L = diag(nu^{-1/2}, sqrt(2/nu),
    ..., sqrt(2/nu)[, nu^{-1/2} if nu even]).
    """
    if nu < 1:
        raise ValueError(f"period must be positive, got {nu}")
    t = np.arange(nu)
    u = np.exp(-2j * np.pi * np.outer(t, t) / nu) / np.sqrt(nu)

    p = np.zeros((nu, nu), dtype=complex)
    p[0, 0] = 1.0
    inv_sqrt2 = 2.0**-0.5
    for r in range(1, (nu - 1) // 2 + 1):
        p[2 * r - 1, r] = inv_sqrt2
        p[2 * r - 1, nu - r] = inv_sqrt2
        p[2 * r, r] = 1j * inv_sqrt2
        p[2 * r, nu - r] = -1j * inv_sqrt2
    if nu % 2 == 0 and nu > 1:
        p[nu - 1, nu // 2] = 1.0

    diag = np.full(nu, np.sqrt(2.0 / nu))
    diag[0] = nu**-0.5
    if nu % 2 == 0:
        diag[-1] = nu**-0.5
    return np.diag(diag), p, u


def fourier_basis(nu: int) -> np.ndarray:
    """The real orthogonal matrix P U (rows: orthonormal cosine/sine basis).

    Raises NumericalError if the product has imaginary residue above
    1e-12, which would signal an indexing bug in P.
    """
    _, p, u = lpu_matrices(nu)
    pu = p @ u
    residue = float(np.abs(pu.imag).max())
    if residue > _IMAG_TOL:
        raise NumericalError(
            f"P U has imaginary residue {residue:.3e}; the pairing matrix "
            "P does not cancel the DFT phases"
        )
    return pu.real


def fourier_map(nu: int) -> np.ndarray:
    """The real coefficient map G = L (P U), so that (G x)[0] = mean(x)."""
    l, _, _ = lpu_matrices(nu)
    return l @ fourier_basis(nu)


@dataclass(frozen=True)
class FourierCoeffs:
    """Harmonic coefficients [c_0, c_1, s_1, ...] of a seasonal vector."""

    f: np.ndarray
    nu: int

    def __post_init__(self):
        f = np.asarray(self.f, dtype=float)
        if f.shape != (self.nu,):
            raise ValueError(f"expected {self.nu} coefficients, got shape {f.shape}")
        f = f.copy()
        f.flags.writeable = False
        object.__setattr__(self, "f", f)

    @property
    def c0(self) -> float:
        return float(self.f[0])

    def labels(self) -> list[str]:
        """Names ['c0', 'c1', 's1', ...] aligned with the coefficient order."""
        out = ["c0"]
        for r in range(1, (self.nu - 1) // 2 + 1):
            out += [f"c{r}", f"s{r}"]
        if self.nu % 2 == 0 and self.nu > 1:
            out.append(f"c{self.nu // 2}")
        return out


def to_fourier(x: SeasonalVector | np.ndarray) -> FourierCoeffs:
    """Coefficients of a seasonal vector; index 0 is the season mean."""
    values = x.values if isinstance(x, SeasonalVector) else np.asarray(x, dtype=float)
    nu = values.size
    return FourierCoeffs(fourier_map(nu) @ values, nu)


def from_fourier(f: FourierCoeffs) -> np.ndarray:
    """Invert the coefficient map via its factors: x = (P U)' L^{-1} f."""
    l, _, _ = lpu_matrices(f.nu)
    return fourier_basis(f.nu).T @ (f.f / np.diag(l))


def fourier_cov(cov: CovMatrix) -> CovMatrix:
    """Covariance of the orthonormal-basis coefficients, (P U) Sigma (P U)'."""
    basis = fourier_basis(cov.dim)
    return CovMatrix(basis @ cov.values @ basis.T, f"fourier({cov.provenance})")


def fourier_test(
    x_hat: SeasonalVector, cov: CovMatrix, n_cycles: int, alpha: float
) -> TransformReport:
    """Bonferroni significance test of the harmonic coefficients of x_hat.

    Under the stationarity null every coefficient except c_0 is zero, so
    each Z_i = f_i / se_i, i = 1..nu-1, is referred to the two-sided
    normal threshold at level alpha/(nu - 1).  c_0 is never tested and is
    always retained; insignificant coefficients are zeroed in
    ``compressed``.  No power-of-two extension happens here: the harmonic
    basis exists at the native period.
    """
    nu = x_hat.nu
    if cov.dim != nu:
        raise ValueError(f"covariance is {cov.dim}x{cov.dim}, vector has period {nu}")
    if n_cycles < 1:
        raise ValueError(f"n_cycles must be >= 1, got {n_cycles}")
    if not 0.0 < alpha < 1.0:
        raise ValueError(f"alpha must be in (0, 1), got {alpha}")

    l, _, _ = lpu_matrices(nu)
    coeffs = to_fourier(x_hat)
    r = fourier_cov(cov)
    r_diag = np.diag(r.values)
    if r_diag.min() <= 0.0:
        raise NumericalError(
            "transformed covariance has a non-positive diagonal entry; "
            "Z statistics are undefined"
        )
    se = np.diag(l) * np.sqrt(r_diag / n_cycles)

    z = np.full(nu, np.nan)
    z[1:] = coeffs.f[1:] / se[1:]
    threshold = bonferroni_threshold(alpha, nu) if nu > 1 else np.inf
    significant = np.zeros(nu, dtype=bool)
    significant[1:] = np.abs(z[1:]) > threshold
    retained = significant.copy()
    retained[0] = True
    compressed = np.where(retained, coeffs.f, 0.0)
    return TransformReport(
        transform="fourier",
        family=x_hat.role.value,
        values=coeffs.f,
        se=se,
        z=z,
        significant=significant,
        retained=retained,
        threshold=threshold,
        compressed=compressed,
    )


def compress_model_fourier(fit, alpha: float):
    """Shrink every parameter family of a fitted model in harmonic space.

    Same pipeline as the wavelet version but in the native-period Fourier
    basis: per family, build the null covariance from pooled estimates,
    test, zero insignificant coefficients, and reconstruct.  Returns the
    compressed model and the per-family reports.
    """
    from .asymptotics import h0_covariance
    from .core import ParmaModel, Role

    reports: dict[str, TransformReport] = {}
    rebuilt: dict[Role, np.ndarray] = {}
    for vec in fit.model.families():
        cov = h0_covariance(fit, vec.role)
        report = fourier_test(vec, cov, fit.n_cycles, alpha)
        reports[vec.role.value] = report
        rebuilt[vec.role] = from_fourier(FourierCoeffs(report.compressed, vec.nu))
    return ParmaModel.from_family_values(fit.model.kind, rebuilt), reports
