"""Nearest-neighbor estimation of Shannon entropy and varentropy.

The package estimates the entropy and the varentropy (the variance of the
information content -log f(X)) of an i.i.d. multivariate sample from its
first-nearest-neighbor distances, verifies the integral conditions on the
density under which those estimates are asymptotically unbiased and
L2-consistent, and ships a Monte Carlo harness that demonstrates both
properties at desk scale.
"""

__version__ = "0.1.0"

from .conditions import (
    BallAverageProfile,
    ConditionReport,
    FunctionalEstimate,
    ball_average_profile,
    condition_report,
    density_ratio_floor,
    domination_constants,
    estimate_k_functional,
    estimate_q_functional,
    estimate_t_functional,
    inequality_suite,
    integrability_gauge,
    local_average,
    tail_log_moment_identity,
)
from .distributions import (
    Exponential,
    NormalDiag,
    NormalFull,
    OracleValues,
    Pareto,
    StudentT,
    Uniform,
    parse_distribution,
    quadrature_oracle,
    sample_distribution,
)
from .estimator import (
    EULER_GAMMA,
    PI_SQUARED_OVER_6,
    EstimateReport,
    VarentropyEstimator,
    estimate,
    gumbel_log_moments,
    unit_ball_volume,
    zeta,
)
from .experiments import (
    CampaignConfig,
    McReport,
    NormalityScreen,
    NormalityTestResult,
    NullCalibration,
    build_null_calibration,
    normality_screen,
    run_campaign,
)
from .neighbors import NnDistances, nn_distances, pairwise_min_distance
from .streams import substream

__all__ = [
    "BallAverageProfile",
    "CampaignConfig",
    "ConditionReport",
    "EULER_GAMMA",
    "EstimateReport",
    "Exponential",
    "FunctionalEstimate",
    "McReport",
    "NnDistances",
    "NormalDiag",
    "NormalFull",
    "NormalityScreen",
    "NormalityTestResult",
    "NullCalibration",
    "OracleValues",
    "PI_SQUARED_OVER_6",
    "Pareto",
    "StudentT",
    "Uniform",
    "VarentropyEstimator",
    "ball_average_profile",
    "build_null_calibration",
    "condition_report",
    "density_ratio_floor",
    "domination_constants",
    "estimate",
    "estimate_k_functional",
    "estimate_q_functional",
    "estimate_t_functional",
    "gumbel_log_moments",
    "inequality_suite",
    "integrability_gauge",
    "local_average",
    "nn_distances",
    "normality_screen",
    "pairwise_min_distance",
    "parse_distribution",
    "quadrature_oracle",
    "run_campaign",
    "sample_distribution",
    "substream",
    "tail_log_moment_identity",
    "unit_ball_volume",
    "zeta",
]
