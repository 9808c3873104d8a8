"""Sample moments and the innovations algorithm for periodic series.

The innovations recursion computes, for every base season ``i``, the
coefficients theta_{n,j}^{(i)} of the one-step best linear predictor of
Y_{i+n} from (Y_i, ..., Y_{i+n-1}) together with its mean-square error
v_{n,i}.  After ``n`` iterations, theta_{n,j}^{(<i-n>)} estimates the
moving-average weight psi_i(j) of season ``i`` and v_{n,<i-n>} estimates
its innovation variance.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .core import (
    DivisionBySmallPsi,
    ModelKind,
    NonPositivePredictionVariance,
    ParmaModel,
    PeriodicSeries,
    Role,
    SeasonalVector,
    seasonal_index,
)

PSI_DIVISION_FLOOR = 1e-8


def sample_mu(y: PeriodicSeries) -> SeasonalVector:
    """Per-season sample means mu_i = (1/N) sum_j y[j*nu + i]."""
    means = y.values.reshape(y.n_cycles, y.nu).mean(axis=0)
    return SeasonalVector(means, Role.MU)


def sample_autocov(y: PeriodicSeries, i: int, m: int, *, center: bool = True) -> float:
    """Seasonal sample autocovariance gamma_i(m).

    Averages (y[j*nu+i] - mu_i)(y[j*nu+i+m] - mu_<i+m>) over cycles j,
    dropping terms whose second index runs past the sample; the divisor is
    always N.  With ``center=False`` the seasonal means are not subtracted
    (used when the model is defined without a mean term).
    """
    if not 0 <= i < y.nu:
        raise ValueError(f"season {i} outside [0, {y.nu})")
    if m < 0:
        raise ValueError(f"lag must be >= 0, got {m}")
    n, nu = y.n_cycles, y.nu
    count = (n * nu - 1 - i - m) // nu + 1
    if count <= 0:
        return 0.0
    a = y.values[i :: nu][:count].astype(float)
    b = y.values[i + m :: nu][:count].astype(float)
    if center:
        mu = y.values.reshape(n, nu).mean(axis=0)
        a = a - mu[i]
        b = b - mu[seasonal_index(i + m, nu)]
    return float(a @ b) / n


def seasonal_autocovariances(
    y: PeriodicSeries, max_lag: int, *, center: bool = True
) -> np.ndarray:
    """Table gamma[i, m] of sample autocovariances, i < nu, 0 <= m <= max_lag."""
    gamma = np.empty((y.nu, max_lag + 1))
    for i in range(y.nu):
        for m in range(max_lag + 1):
            gamma[i, m] = sample_autocov(y, i, m, center=center)
    return gamma


@dataclass(frozen=True)
class InnovationsState:
    """Predictor coefficients theta[n, j, i] and error variances v[n, i]."""

    nu: int
    n_max: int
    theta: np.ndarray  # (n_max+1, n_max+1, nu); theta[n, j, i] for 1 <= j <= n
    v: np.ndarray  # (n_max+1, nu)

    def theta_at(self, n: int, j: int, i: int) -> float:
        if not 1 <= j <= n <= self.n_max:
            raise ValueError(f"need 1 <= j <= n <= {self.n_max}, got n={n}, j={j}")
        return float(self.theta[n, j, seasonal_index(i, self.nu)])

    def v_at(self, n: int, i: int) -> float:
        if not 0 <= n <= self.n_max:
            raise ValueError(f"need 0 <= n <= {self.n_max}, got {n}")
        return float(self.v[n, seasonal_index(i, self.nu)])


def innovations(gamma: np.ndarray, n_iter: int) -> InnovationsState:
    """Run the periodic innovations recursion on an autocovariance table.

    Parameters
    ----------
    gamma : (nu, >= n_iter+1) array
        gamma[i, m] = Cov(Y_{i}, Y_{i+m}); season indices wrap periodically.
    n_iter : int
        Number of recursion steps (>= 1).

    Returns
    -------
    InnovationsState

    Raises
    ------
    NonPositivePredictionVariance
        If any v_{n,i} <= 0, which signals a singular prediction problem.
    """
    gamma = np.asarray(gamma, dtype=float)
    nu = gamma.shape[0]
    if n_iter < 1:
        raise ValueError(f"n_iter must be >= 1, got {n_iter}")
    if gamma.shape[1] < n_iter + 1:
        raise ValueError(
            f"need lags 0..{n_iter}, table only has {gamma.shape[1] - 1}"
        )

    theta = np.zeros((n_iter + 1, n_iter + 1, nu))
    v = np.zeros((n_iter + 1, nu))
    for i in range(nu):
        v[0, i] = gamma[i, 0]
        if v[0, i] <= 0:
            raise NonPositivePredictionVariance(0, i, v[0, i])

    for n in range(1, n_iter + 1):
        for i in range(nu):
            for k in range(n):
                acc = gamma[(i + k) % nu, n - k]
                for j in range(k):
                    acc -= theta[k, k - j, i] * theta[n, n - j, i] * v[j, i]
                theta[n, n - k, i] = acc / v[k, i]
            err = gamma[(i + n) % nu, 0]
            for j in range(n):
                err -= theta[n, n - j, i] ** 2 * v[j, i]
            v[n, i] = err
            if v[n, i] <= 0:
                raise NonPositivePredictionVariance(n, i, v[n, i])

    theta.flags.writeable = False
    v.flags.writeable = False
    return InnovationsState(nu=nu, n_max=n_iter, theta=theta, v=v)


@dataclass(frozen=True)
class PsiEstimate:
    """Moving-average weight estimates psi_i(j) and innovation variances."""

    psi: tuple[SeasonalVector, ...]  # psi[j-1] holds the lag-j weights
    sigma2: SeasonalVector

    def psi_at(self, j: int) -> SeasonalVector:
        return self.psi[j - 1]

    @property
    def j_max(self) -> int:
        return len(self.psi)


def psi_sigma_from_innovations(
    state: InnovationsState, n: int, j_max: int
) -> PsiEstimate:
    """Read psi_i(j) = theta_{n,j}^{(<i-n>)} and sigma2_i = v_{n,<i-n>}."""
    if not 1 <= j_max <= n <= state.n_max:
        raise ValueError(f"need 1 <= j_max <= n <= {state.n_max}")
    nu = state.nu
    base = [(i - n) % nu for i in range(nu)]
    psi = tuple(
        SeasonalVector(
            [state.theta[n, j, base[i]] for i in range(nu)], Role.PSI, lag=j
        )
        for j in range(1, j_max + 1)
    )
    sigma2 = SeasonalVector([state.v[n, base[i]] for i in range(nu)], Role.SIGMA2)
    return PsiEstimate(psi=psi, sigma2=sigma2)


def parma11_from_psi(
    psi1: np.ndarray, psi2: np.ndarray, *, floor: float = PSI_DIVISION_FLOOR
) -> tuple[np.ndarray, np.ndarray]:
    """Invert the causal-weight recursion: phi_t = psi_t(2)/psi_{t-1}(1),
    theta_t = phi_t - psi_t(1)."""
    psi1 = np.asarray(psi1, dtype=float)
    psi2 = np.asarray(psi2, dtype=float)
    nu = psi1.size
    phi = np.empty(nu)
    for t in range(nu):
        prev = psi1[(t - 1) % nu]
        if abs(prev) < floor:
            raise DivisionBySmallPsi(t, prev, floor)
        phi[t] = psi2[t] / prev
    return phi, phi - psi1


@dataclass(frozen=True)
class FitResult:
    """A fitted model plus the sample quantities the fit was read from."""

    model: ParmaModel
    psi: PsiEstimate
    gamma: np.ndarray  # seasonal sample autocovariances, lags 0..n_iter
    n_cycles: int
    n_iter: int

    @property
    def nu(self) -> int:
        return self.model.nu


def fit_par1(y: PeriodicSeries, n_iter: int = 7) -> FitResult:
    """Fit a PAR(1) by the innovations method on the mean-adjusted series."""
    mu = sample_mu(y)
    gamma = seasonal_autocovariances(y, n_iter, center=True)
    state = innovations(gamma, n_iter)
    psi = psi_sigma_from_innovations(state, n_iter, 1)
    model = ParmaModel(
        kind=ModelKind.PAR1,
        mu=mu,
        phi=SeasonalVector(psi.psi_at(1).values, Role.PHI),
        sigma2=psi.sigma2,
    )
    return FitResult(model=model, psi=psi, gamma=gamma, n_cycles=y.n_cycles, n_iter=n_iter)


def fit_parma11(y: PeriodicSeries, n_iter: int = 7) -> FitResult:
    """Fit a PARMA(1,1) by the innovations method; the series is used as-is
    (the model has no mean term)."""
    if n_iter < 2:
        raise ValueError("PARMA(1,1) needs n_iter >= 2 (psi(2) is required)")
    gamma = seasonal_autocovariances(y, n_iter, center=False)
    state = innovations(gamma, n_iter)
    psi = psi_sigma_from_innovations(state, n_iter, 2)
    phi, theta = parma11_from_psi(psi.psi_at(1).values, psi.psi_at(2).values)
    model = ParmaModel.parma11(phi, theta)
    return FitResult(model=model, psi=psi, gamma=gamma, n_cycles=y.n_cycles, n_iter=n_iter)


def residuals(model: ParmaModel, y: PeriodicSeries) -> np.ndarray:
    """One-step residuals of the model on the series, indices 1..N*nu-1.

    PARMA(1,1): eps_t = y_t - phi_t y_{t-1} + theta_t eps_{t-1}, eps_0 = 0.
    PAR(1): delta_t = (Y_t - phi_t Y_{t-1}) / sigma_t with Y_t = y_t - mu_t.
    """
    if model.nu != y.nu:
        raise ValueError(f"model period {model.nu} != series period {y.nu}")
    n_obs = len(y)
    nu = model.nu
    phi = model.phi.values
    if model.kind is ModelKind.PARMA11:
        theta = model.theta.values
        eps = np.empty(n_obs)
        eps[0] = 0.0
        vals = y.values
        for t in range(1, n_obs):
            s = t % nu
            eps[t] = vals[t] - phi[s] * vals[t - 1] + theta[s] * eps[t - 1]
        return eps[1:]
    centered = y.values - np.tile(model.mu.values, y.n_cycles)
    sigma = np.sqrt(model.sigma2.values)
    t = np.arange(1, n_obs)
    s = t % nu
    return (centered[1:] - phi[s] * centered[:-1]) / sigma[s]
