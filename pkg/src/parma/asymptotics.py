"""Asymptotic covariance matrices for seasonal parameter estimators.

Every seasonal estimator vector here (per-season means, innovation
variances, AR and MA coefficients) is asymptotically normal at rate
sqrt(N) in the number of cycles.  Under the stationarity null, where the
true parameters do not vary with season, each covariance matrix has a
closed form in the pooled (season-averaged) parameter values.  Those
closed forms are what the coefficient significance tests plug in.

The PARMA(1,1) coefficient covariances Q (for phi-hat) and S (for
theta-hat) are assembled from the predictor-weight covariance blocks
V_lk via delta-method factor matrices H and M.  The cyclic shift matrix
Pi, with (Pi x)_i = x_{i+1 mod nu}, carries all of the season bookkeeping.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .core import (
    MU_GENERAL_TRUNCATED,
    MU_H0,
    PHI_H0_IDENTITY,
    Q_H0,
    S_H0,
    SIGMA2_H0,
    CovMatrix,
    ModelKind,
    Role,
)
from .estimation import FitResult


def pi_matrix(nu: int) -> np.ndarray:
    """Cyclic shift matrix: ones at (i, <i+1>), so (Pi x)_i = x_{<i+1>}.

    Pi is orthogonal with Pi' = Pi^{-1} and Pi^nu = I.
    """
    if nu < 1:
        raise ValueError(f"period must be positive, got {nu}")
    pi = np.zeros((nu, nu))
    idx = np.arange(nu)
    pi[idx, (idx + 1) % nu] = 1.0
    return pi


def _pi_power(nu: int, m: int) -> np.ndarray:
    """Pi^m for any integer m (negative powers via the transpose)."""
    pi = np.zeros((nu, nu))
    idx = np.arange(nu)
    pi[idx, (idx + m) % nu] = 1.0
    return pi


@dataclass(frozen=True)
class PooledParams:
    """Season-averaged estimates used to evaluate the H0 closed forms.

    Pooling averages the per-season *estimates*, never the data:
    gamma(h) = nu^{-1} sum_m gamma_m(h), phi = nu^{-1} sum_m phi_m, and
    likewise for theta, the psi weights and sigma2.  Fields that do not
    exist for the fitted model kind are None (theta and psi2 for PAR(1)).
    """

    gamma: np.ndarray  # pooled gamma(h), h = 0..h_max
    phi: float
    sigma2: float
    psi1: float
    psi2: float | None = None
    theta: float | None = None

    def __post_init__(self):
        gamma = np.asarray(self.gamma, dtype=float)
        gamma.flags.writeable = False
        object.__setattr__(self, "gamma", gamma)

    @property
    def gamma0(self) -> float:
        return float(self.gamma[0])

    @staticmethod
    def from_fit(fit: FitResult) -> "PooledParams":
        gamma = fit.gamma.mean(axis=0)
        if fit.model.kind is ModelKind.PAR1:
            phi = float(fit.model.phi.values.mean())
            return PooledParams(
                gamma=gamma,
                phi=phi,
                sigma2=float(fit.model.sigma2.values.mean()),
                psi1=phi,
            )
        return PooledParams(
            gamma=gamma,
            phi=float(fit.model.phi.values.mean()),
            sigma2=float(fit.psi.sigma2.values.mean()),
            psi1=float(fit.psi.psi_at(1).values.mean()),
            psi2=float(fit.psi.psi_at(2).values.mean()),
            theta=float(fit.model.theta.values.mean()),
        )


def _check_stationary(phi: float) -> None:
    if not abs(phi) < 1.0:
        raise ValueError(f"|phi| must be < 1 for the H0 forms, got {phi}")


def sigma_mu_h0(gamma0: float, phi: float, nu: int) -> CovMatrix:
    """Covariance of sqrt(N)(mu-hat - mu) under the stationarity null.

    Diagonal gamma(0)(1+r)/(1-r) with r = phi^nu; entry (i,j), j > i, is
    gamma(0)(phi^{j-i} + phi^{nu+i-j})/(1-r); symmetric.
    """
    _check_stationary(phi)
    r = phi**nu
    out = np.empty((nu, nu))
    for i in range(nu):
        out[i, i] = gamma0 * (1.0 + r) / (1.0 - r)
        for j in range(i + 1, nu):
            val = gamma0 * (phi ** (j - i) + phi ** (nu + i - j)) / (1.0 - r)
            out[i, j] = out[j, i] = val
    return CovMatrix(out, MU_H0)


def sigma_sigma2_h0(gamma0: float, phi: float, nu: int) -> CovMatrix:
    """Covariance of sqrt(N)(sigma2-hat - sigma2) under the stationarity null."""
    _check_stationary(phi)
    r = phi**nu
    g2 = gamma0 * gamma0
    denom = 1.0 - r * r
    diag = (
        2.0 * g2 * (1.0 + phi ** (2 * nu)) / denom
        - 2.0 * phi * 2.0 * g2 * (phi + phi ** (2 * nu - 1)) / denom
        + phi * phi * g2 * (phi * phi + (1.0 + 3.0 * r * r) / denom)
    )
    out = np.empty((nu, nu))
    for i in range(nu):
        out[i, i] = diag
        for j in range(i + 1, nu):
            d = j - i
            val = (
                2.0 * g2 * (phi ** (2 * d) + phi ** (2 * (nu - d))) / denom
                - 2.0 * g2 * phi * (phi ** (2 * d - 1) + phi ** (2 * nu - 2 * d + 1)) / denom
                - 2.0 * g2 * phi * (phi ** (2 * d + 1) + phi ** (2 * nu - 2 * d - 1)) / denom
                + 2.0 * g2 * phi * phi * (phi ** (2 * d) + phi ** (2 * (nu - d))) / denom
            )
            out[i, j] = out[j, i] = val
    return CovMatrix(out, SIGMA2_H0)


def sigma_phi_h0(nu: int) -> CovMatrix:
    """Covariance of sqrt(N)(phi-hat - phi) for PAR(1) under the null.

    With equal innovation variances across seasons, the general form
    diag(sigma_{i-1}^{-2} sigma_i^2) collapses to the identity.
    """
    return CovMatrix(np.eye(nu), PHI_H0_IDENTITY)


def vlk_general(
    psi: np.ndarray, sigma2: np.ndarray, l: int, k: int
) -> np.ndarray:
    """Predictor-weight covariance block V_lk with seasonal inputs.

    V_lk = sum_{j=1}^{min(l,k)} (F_{l-j} Pi^{-(l-j)}) B_j (F_{k-j} Pi^{-(k-j)})'
    with F_j = diag(psi_i(j)), F_0 = I, and B_j = diag(sigma2_i sigma2_{<i-j>}).
    Cov(sqrt(N) psi-hat_t(l), sqrt(N) psi-hat_s(k)) is the (t, s) entry with
    s = <t - l + k>; all other entries vanish.

    Parameters
    ----------
    psi : (j_max, nu) array
        Row j-1 holds the lag-j weights psi_i(j).  Rows beyond
        max(l, k) - 1 are not touched.
    sigma2 : (nu,) array
        Innovation variances by season.
    l, k : int
        Block indices, >= 1.
    """
    psi = np.atleast_2d(np.asarray(psi, dtype=float))
    sigma2 = np.asarray(sigma2, dtype=float)
    nu = sigma2.size
    if min(l, k) < 1:
        raise ValueError(f"block indices must be >= 1, got ({l}, {k})")
    if max(l, k) - 1 > psi.shape[0]:
        raise ValueError(
            f"need psi weights up to lag {max(l, k) - 1}, got {psi.shape[0]} rows"
        )

    def f_mat(j: int) -> np.ndarray:
        return np.eye(nu) if j == 0 else np.diag(psi[j - 1])

    idx = np.arange(nu)
    total = np.zeros((nu, nu))
    for j in range(1, min(l, k) + 1):
        b = np.diag(sigma2 * sigma2[(idx - j) % nu])
        left = f_mat(l - j) @ _pi_power(nu, -(l - j))
        right = f_mat(k - j) @ _pi_power(nu, -(k - j))
        total += left @ b @ right.T
    return total


def build_vlk_h0(psi1: float, l: int, k: int, nu: int) -> np.ndarray:
    """Closed-form V_lk, l, k in {1, 2}, under the stationarity null.

    V_11 = I, V_12 = psi(1) Pi, V_21 = psi(1) Pi', V_22 = (psi(1)^2 + 1) I.
    These are the general blocks evaluated at constant seasonal inputs
    psi_i(1) = psi(1), psi_i(2) arbitrary, sigma2_i = 1.
    """
    if not (1 <= l <= 2 and 1 <= k <= 2):
        raise ValueError(f"closed forms cover l, k in {{1, 2}}, got ({l}, {k})")
    if l == k == 1:
        return np.eye(nu)
    if l == 1:
        return psi1 * pi_matrix(nu)
    if k == 1:
        return psi1 * pi_matrix(nu).T
    return (psi1 * psi1 + 1.0) * np.eye(nu)


def _h_matrices(psi1: float, psi2: float, nu: int) -> tuple[np.ndarray, np.ndarray]:
    """H_1 = -F_2 Pi^{-1} F_1^{-2} and H_2 = Pi^{-1} F_1^{-1} Pi with
    F_j = psi(j) I."""
    if psi1 == 0.0:
        raise ValueError("psi(1) = 0: F_1 is not invertible")
    pi = pi_matrix(nu)
    f1_inv = np.eye(nu) / psi1
    f2 = psi2 * np.eye(nu)
    h1 = -f2 @ pi.T @ f1_inv @ f1_inv
    h2 = pi.T @ f1_inv @ pi
    return h1, h2


def _vlk_table(psi1: float, nu: int) -> dict[tuple[int, int], np.ndarray]:
    return {(l, k): build_vlk_h0(psi1, l, k, nu) for l in (1, 2) for k in (1, 2)}


def q_matrix_h0(psi1: float, psi2: float, nu: int) -> CovMatrix:
    """Covariance Q of sqrt(N)(phi-hat - phi) for PARMA(1,1) under the null.

    Q = sum_{l,k in {1,2}} H_l V_lk H_k'; with pooled inputs this collapses
    to a constant diagonal, (psi2^2/psi1^4 - 2 psi2/psi1^2 + (psi1^2+1)/psi1^2) I.
    """
    h1, h2 = _h_matrices(psi1, psi2, nu)
    v = _vlk_table(psi1, nu)
    h = {1: h1, 2: h2}
    q = sum(h[l] @ v[l, k] @ h[k].T for l in (1, 2) for k in (1, 2))
    return CovMatrix(q, Q_H0)


def s_matrix_h0(
    psi1: float, psi2: float, nu: int, *, m1_identity_sign: int = -1
) -> CovMatrix:
    """Covariance S of sqrt(N)(theta-hat - theta) for PARMA(1,1) under the null.

    S = sum_{l,k in {1,2}} M_l V_lk M_k' with
    M_1 = m1_identity_sign * I - F_2 Pi^{-1} F_1^{-2} and M_2 = Pi^{-1} F_1^{-1} Pi.

    The sign of the identity block in M_1 differs between published
    variants of this formula.  The two choices agree on the diagonal of S
    and differ only in the sign of the off-diagonal band, so diagonal-only
    checks cannot tell them apart; the Monte Carlo covariance of theta-hat
    does, and it matches m1_identity_sign = -1, the default.  +1 is kept
    selectable for comparison.
    """
    if m1_identity_sign not in (-1, 1):
        raise ValueError(f"m1_identity_sign must be -1 or +1, got {m1_identity_sign}")
    h1, h2 = _h_matrices(psi1, psi2, nu)
    v = _vlk_table(psi1, nu)
    m = {1: m1_identity_sign * np.eye(nu) + h1, 2: h2}
    s = sum(m[l] @ v[l, k] @ m[k].T for l in (1, 2) for k in (1, 2))
    return CovMatrix(s, S_H0)


def sigma_mu_general_truncated(gamma: np.ndarray, nu: int, n_trunc: int) -> CovMatrix:
    """Truncated series form of the seasonal-mean covariance.

    sum_{n=-n_trunc}^{n_trunc} B_n Pi^n with B_n = diag(gamma_i(n)) and
    negative lags read periodically as gamma_i(-n) = gamma_{<i-n>}(n).
    Converges geometrically in n_trunc; used as a cross-check for the
    closed form sigma_mu_h0 rather than in the test pipeline.
    """
    gamma = np.asarray(gamma, dtype=float)
    if gamma.shape[0] != nu:
        raise ValueError(f"gamma table has {gamma.shape[0]} seasons, expected {nu}")
    if n_trunc < 0:
        raise ValueError(f"n_trunc must be >= 0, got {n_trunc}")
    if gamma.shape[1] < n_trunc + 1:
        raise ValueError(
            f"need lags 0..{n_trunc}, table only has {gamma.shape[1] - 1}"
        )
    idx = np.arange(nu)
    total = np.diag(gamma[:, 0]).astype(float)
    for n in range(1, n_trunc + 1):
        total += np.diag(gamma[:, n]) @ _pi_power(nu, n)
        total += np.diag(gamma[(idx - n) % nu, n]) @ _pi_power(nu, -n)
    return CovMatrix(total, MU_GENERAL_TRUNCATED)


def h0_covariance(fit: FitResult, family: Role) -> CovMatrix:
    """The null covariance matching one parameter family of a fitted model.

    PAR(1) supports MU, SIGMA2 and PHI; PARMA(1,1) supports PHI and THETA.
    """
    pooled = PooledParams.from_fit(fit)
    nu = fit.nu
    if fit.model.kind is ModelKind.PAR1:
        if family is Role.MU:
            return sigma_mu_h0(pooled.gamma0, pooled.phi, nu)
        if family is Role.SIGMA2:
            return sigma_sigma2_h0(pooled.gamma0, pooled.phi, nu)
        if family is Role.PHI:
            return sigma_phi_h0(nu)
        raise ValueError(f"no null covariance for {family.value} in a PAR(1)")
    if family is Role.PHI:
        return q_matrix_h0(pooled.psi1, pooled.psi2, nu)
    if family is Role.THETA:
        return s_matrix_h0(pooled.psi1, pooled.psi2, nu)
    raise ValueError(f"no null covariance for {family.value} in a PARMA(1,1)")
