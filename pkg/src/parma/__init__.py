"""Periodic ARMA modeling with Fourier and wavelet parameter compression."""

from .asymptotics import (
    PooledParams,
    build_vlk_h0,
    h0_covariance,
    pi_matrix,
    q_matrix_h0,
    s_matrix_h0,
    sigma_mu_general_truncated,
    sigma_mu_h0,
    sigma_phi_h0,
    sigma_sigma2_h0,
    vlk_general,
)
from .core import (
    ConfigError,
    CovMatrix,
    DataError,
    DivisionBySmallPsi,
    IncompleteCycle,
    ModelKind,
    NonPositivePredictionVariance,
    NumericalError,
    ParmaError,
    ParmaModel,
    PeriodicSeries,
    Role,
    SeasonalVector,
    StationarityError,
    TransformReport,
    next_pow2,
    periodic_extend_cov,
    periodic_extend_vector,
    seasonal_index,
)
from .diagnostics import HistogramSummary, acf, box_pierce, histogram, ks_normal
from .estimation import (
    FitResult,
    InnovationsState,
    PsiEstimate,
    fit_par1,
    fit_parma11,
    innovations,
    parma11_from_psi,
    psi_sigma_from_innovations,
    residuals,
    sample_autocov,
    sample_mu,
    seasonal_autocovariances,
)
from .fourier import (
    FourierCoeffs,
    compress_model_fourier,
    fourier_basis,
    fourier_cov,
    fourier_map,
    fourier_test,
    from_fourier,
    lpu_matrices,
    to_fourier,
)
from .simulate import SimConfig, replication_seed, reproduction_model, simulate
from .wavelet import (
    DwtCoeffs,
    WaveletSpec,
    bonferroni_threshold,
    compress_model,
    dwt_cov,
    dwt_matrix,
    from_dwt,
    to_dwt,
    wavelet_test,
)

__version__ = "0.1.0"

__all__ = [
    "ConfigError",
    "CovMatrix",
    "DataError",
    "DivisionBySmallPsi",
    "DwtCoeffs",
    "FitResult",
    "FourierCoeffs",
    "HistogramSummary",
    "IncompleteCycle",
    "InnovationsState",
    "ModelKind",
    "NonPositivePredictionVariance",
    "NumericalError",
    "ParmaError",
    "ParmaModel",
    "PeriodicSeries",
    "PooledParams",
    "PsiEstimate",
    "Role",
    "SeasonalVector",
    "SimConfig",
    "StationarityError",
    "TransformReport",
    "WaveletSpec",
    "acf",
    "bonferroni_threshold",
    "box_pierce",
    "build_vlk_h0",
    "compress_model",
    "compress_model_fourier",
    "dwt_cov",
    "dwt_matrix",
    "fit_par1",
    "fit_parma11",
    "fourier_basis",
    "fourier_cov",
    "fourier_map",
    "fourier_test",
    "from_dwt",
    "from_fourier",
    "h0_covariance",
    "histogram",
    "innovations",
    "ks_normal",
    "lpu_matrices",
    "next_pow2",
    "parma11_from_psi",
    "periodic_extend_cov",
    "periodic_extend_vector",
    "pi_matrix",
    "psi_sigma_from_innovations",
    "q_matrix_h0",
    "replication_seed",
    "reproduction_model",
    "residuals",
    "s_matrix_h0",
    "sample_autocov",
    "sample_mu",
    "seasonal_autocovariances",
    "seasonal_index",
    "sigma_mu_general_truncated",
    "sigma_mu_h0",
    "sigma_phi_h0",
    "sigma_sigma2_h0",
    "simulate",
    "to_dwt",
    "to_fourier",
    "vlk_general",
    "wavelet_test",
    "__version__",
]
