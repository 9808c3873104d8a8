"""Domain types and seasonal index arithmetic shared by every module.

A series with period ``nu`` is viewed as ``N`` stacked cycles; the season of
observation ``t`` is ``t mod nu``.  Parameter families (means, AR and MA
coefficients, innovation variances) live in length-``nu`` vectors, one entry
per season.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass, field

import numpy as np


class ParmaError(Exception):
    """Base class for all errors raised by this package."""


class ConfigError(ParmaError):
    """Invalid run configuration (bad flag values, unknown model kind...)."""


class DataError(ParmaError):
    """Input data violates the declared layout."""


class NumericalError(ParmaError):
    """A numeric procedure failed (singular system, lost stationarity...)."""


class IncompleteCycle(DataError):
    """Rows do not form complete consecutive cycles."""


class NonPositivePredictionVariance(NumericalError):
    """Innovations recursion produced v_{n,i} <= 0 (singular covariance)."""

    def __init__(self, n, i, value):
        self.n, self.i, self.value = n, i, value
        super().__init__(f"prediction variance v[{n}][{i}] = {value:.6g} <= 0")


class DivisionBySmallPsi(NumericalError):
    """|psi_{t-1}(1)| fell below the division floor in the PARMA(1,1) map."""

    def __init__(self, t, value, floor):
        self.t = t
        super().__init__(
            f"|psi_{{{t}}}(1)| = {abs(value):.3g} below floor {floor:.0e}"
        )


class StationarityError(NumericalError):
    """|prod phi_t| >= 1: the periodic AR recursion would diverge."""


def seasonal_index(b: int, nu: int) -> int:
    """Season of time index ``b``, always in ``[0, nu)`` even for b < 0."""
    if nu < 1:
        raise ValueError(f"period must be positive, got {nu}")
    return b % nu


def next_pow2(n: int) -> int:
    """Smallest power of two >= n."""
    if n < 1:
        raise ValueError(f"need n >= 1, got {n}")
    return 1 << (n - 1).bit_length()


def _frozen(values, dtype=float) -> np.ndarray:
    out = np.asarray(values, dtype=dtype).copy()
    out.flags.writeable = False
    return out


class Role(enum.Enum):
    MU = "mu"
    PHI = "phi"
    THETA = "theta"
    SIGMA2 = "sigma2"
    PSI = "psi"


class ModelKind(enum.Enum):
    PAR1 = "par1"
    PARMA11 = "parma11"


@dataclass(frozen=True)
class PeriodicSeries:
    """Observations ``values`` of length ``n_cycles * nu``."""

    values: np.ndarray
    nu: int
    n_cycles: int = field(init=False)

    def __post_init__(self):
        values = _frozen(self.values)
        if self.nu < 1:
            raise ValueError(f"period must be positive, got {self.nu}")
        if values.ndim != 1 or values.size == 0 or values.size % self.nu:
            raise ValueError(
                f"series length {values.size} is not a positive multiple of nu={self.nu}"
            )
        if not np.all(np.isfinite(values)):
            raise ValueError("series contains non-finite values")
        object.__setattr__(self, "values", values)
        object.__setattr__(self, "n_cycles", values.size // self.nu)

    def __len__(self):
        return self.values.size

    def season(self, i: int) -> np.ndarray:
        """All observations whose time index is congruent to i mod nu."""
        return self.values[seasonal_index(i, self.nu) :: self.nu]


@dataclass(frozen=True)
class SeasonalVector:
    """One per-season parameter family as a length-``nu`` vector."""

    values: np.ndarray
    role: Role
    lag: int | None = None  # only for Role.PSI: which psi-weight this is

    def __post_init__(self):
        values = _frozen(self.values)
        if values.ndim != 1 or values.size == 0:
            raise ValueError("seasonal vector must be a nonempty 1-d array")
        if not np.all(np.isfinite(values)):
            raise ValueError(f"{self.role.value} vector contains non-finite values")
        if self.role is Role.SIGMA2 and not np.all(values > 0):
            raise ValueError("sigma2 entries must be strictly positive")
        if (self.lag is not None) != (self.role is Role.PSI):
            raise ValueError("lag is set exactly when role is PSI")
        object.__setattr__(self, "values", values)

    @property
    def nu(self) -> int:
        return self.values.size


@dataclass(frozen=True)
class ParmaModel:
    """A PAR(1) or PARMA(1,1) model with one parameter value per season.

    PAR(1):      Y_t = phi_t Y_{t-1} + eps_t,  eps_t ~ (0, sigma2_t),
                 observed series = mu_t + Y_t.
    PARMA(1,1):  y_t = phi_t y_{t-1} + eps_t - theta_t eps_{t-1},
                 eps_t ~ (0, 1), no mean term.
    """

    kind: ModelKind
    phi: SeasonalVector
    sigma2: SeasonalVector
    mu: SeasonalVector | None = None
    theta: SeasonalVector | None = None

    def __post_init__(self):
        nu = self.phi.nu
        if self.kind is ModelKind.PAR1:
            if self.theta is not None:
                raise ValueError("PAR(1) has no theta")
            if self.mu is None:
                raise ValueError("PAR(1) needs mu")
        else:
            if self.mu is not None:
                raise ValueError("PARMA(1,1) has no mean term")
            if self.theta is None:
                raise ValueError("PARMA(1,1) needs theta")
            if not np.allclose(self.sigma2.values, 1.0):
                raise ValueError("PARMA(1,1) noise variance is fixed at 1")
        for vec in (self.phi, self.sigma2, self.mu, self.theta):
            if vec is not None and vec.nu != nu:
                raise ValueError("parameter vectors disagree on period")
        prod = float(np.prod(self.phi.values))
        if not abs(prod) < 1.0:
            raise StationarityError(
                f"|prod phi| = {abs(prod):.6g} >= 1, model is not periodically stationary"
            )

    @property
    def nu(self) -> int:
        return self.phi.nu

    def families(self) -> tuple[SeasonalVector, ...]:
        """The parameter vectors subject to coefficient testing, in a
        fixed order: (mu, phi, sigma2) for PAR(1), (phi, theta) for
        PARMA(1,1)."""
        if self.kind is ModelKind.PAR1:
            return (self.mu, self.phi, self.sigma2)
        return (self.phi, self.theta)

    @staticmethod
    def from_family_values(kind: ModelKind, values: dict) -> "ParmaModel":
        """Rebuild a model from per-family value arrays keyed by Role."""
        if kind is ModelKind.PAR1:
            return ParmaModel.par1(
                values[Role.MU], values[Role.PHI], values[Role.SIGMA2]
            )
        return ParmaModel.parma11(values[Role.PHI], values[Role.THETA])

    @staticmethod
    def par1(mu, phi, sigma2) -> "ParmaModel":
        return ParmaModel(
            kind=ModelKind.PAR1,
            mu=SeasonalVector(mu, Role.MU),
            phi=SeasonalVector(phi, Role.PHI),
            sigma2=SeasonalVector(sigma2, Role.SIGMA2),
        )

    @staticmethod
    def parma11(phi, theta) -> "ParmaModel":
        phi = SeasonalVector(phi, Role.PHI)
        return ParmaModel(
            kind=ModelKind.PARMA11,
            phi=phi,
            theta=SeasonalVector(theta, Role.THETA),
            sigma2=SeasonalVector(np.ones(phi.nu), Role.SIGMA2),
        )


# provenance tags for CovMatrix
MU_H0 = "mu_h0"
SIGMA2_H0 = "sigma2_h0"
PHI_H0_IDENTITY = "phi_h0_identity"
Q_H0 = "q_h0"
S_H0 = "s_h0"
MU_GENERAL_TRUNCATED = "mu_general_truncated"


def extended(source: str) -> str:
    return f"extended({source})"


@dataclass(frozen=True)
class CovMatrix:
    """Symmetric asymptotic covariance with a tag naming the formula used."""

    values: np.ndarray
    provenance: str

    def __post_init__(self):
        values = np.asarray(self.values, dtype=float)
        if values.ndim != 2 or values.shape[0] != values.shape[1]:
            raise ValueError(f"covariance must be square, got shape {values.shape}")
        scale = np.abs(values).max() or 1.0
        if np.abs(values - values.T).max() > 1e-10 * scale:
            raise ValueError(f"covariance ({self.provenance}) is not symmetric")
        if np.diag(values).min() < -1e-10 * scale:
            raise ValueError(f"covariance ({self.provenance}) has a negative diagonal")
        object.__setattr__(self, "values", _frozen((values + values.T) / 2.0))

    @property
    def dim(self) -> int:
        return self.values.shape[0]


@dataclass(frozen=True)
class TransformReport:
    """Per-coefficient test summary for one seasonal vector under one transform.

    ``values`` are the transform coefficients of the estimated vector, ``se``
    their standard errors, and ``z = values/se``.  Index 0 (the DC / scaling
    coefficient) is never tested: its z is NaN and it is always retained.
    ``compressed`` holds the coefficients with the insignificant ones zeroed.
    """

    transform: str
    family: str
    values: np.ndarray
    se: np.ndarray
    z: np.ndarray
    significant: np.ndarray
    retained: np.ndarray
    threshold: float
    compressed: np.ndarray

    def __post_init__(self):
        for name in ("values", "se", "z", "compressed"):
            object.__setattr__(self, name, _frozen(getattr(self, name)))
        for name in ("significant", "retained"):
            object.__setattr__(self, name, _frozen(getattr(self, name), dtype=bool))

    @property
    def n_retained(self) -> int:
        return int(self.retained.sum())


def periodic_extend_vector(x, nu_prime: int) -> np.ndarray:
    """Wrap a length-nu vector periodically up to length ``nu_prime``.

    ``nu_prime`` must be a power of two >= nu; when nu is already a power of
    two and nu_prime == nu this is the identity.
    """
    values = x.values if isinstance(x, SeasonalVector) else np.asarray(x, dtype=float)
    nu = values.size
    if nu_prime < nu or next_pow2(nu_prime) != nu_prime:
        raise ValueError(f"nu'={nu_prime} must be a power of two >= nu={nu}")
    idx = np.arange(nu_prime) % nu
    return values[idx]


def periodic_extend_cov(cov: CovMatrix, nu_prime: int) -> CovMatrix:
    """Wrap a covariance: result[i][j] = cov[<i>][<j>] with period cov.dim."""
    nu = cov.dim
    if nu_prime < nu or next_pow2(nu_prime) != nu_prime:
        raise ValueError(f"nu'={nu_prime} must be a power of two >= nu={nu}")
    idx = np.arange(nu_prime) % nu
    return CovMatrix(cov.values[np.ix_(idx, idx)], extended(cov.provenance))
