from pivotal_predict.bayes import (
    CoincidenceReport,
    ConsistencyReport,
    PriorSpec,
    check_consistency,
    coincidence_sweep,
    likelihood_error,
    likelihood_theta,
    posterior_error_A,
    posterior_error_B,
    posterior_theta,
    prior_predictive,
)
from pivotal_predict.config import (
    ModelConfig,
    load_model_config,
    parse_model_config,
    read_density_csv,
    read_report,
    write_density_csv,
    write_report,
    write_sample_csv,
)
from pivotal_predict.density import (
    GridDensity,
    GridSpec,
    SummaryStats,
    cdf,
    convolve,
    cross_correlate,
    direct_convolve,
    normalize,
    pointwise_product,
    quantile,
    reflect,
    resample,
    sample,
    shift,
    summarize,
    sup_norm,
)
from pivotal_predict.exceptions import (
    ConfigError,
    ConfigSchemaError,
    ConfigSyntaxError,
    DegenerateDensityError,
    DomainError,
    GridMismatchError,
    NoOverlapError,
    PivotalError,
    ValidationError,
)
from pivotal_predict.montecarlo import (
    CoverageReport,
    coverage_experiment,
    hit_sequence,
    simulate_pair,
    simulate_pairs,
    theta_invariance_check,
)
from pivotal_predict.noise import Family, MixtureComponent, NoiseSpec, realize
from pivotal_predict.pivotal import (
    MeasurementModel,
    PredictiveInterval,
    PredictiveResult,
    known_theta_predictive,
    pivot_density,
    predictive_density,
)
from pivotal_predict.runner import CoverageRunner
from pivotal_predict.stubs import IntervalRule, ReportProtocol

__all__ = [
    "CoincidenceReport",
    "ConfigError",
    "ConfigSchemaError",
    "ConfigSyntaxError",
    "ConsistencyReport",
    "CoverageReport",
    "CoverageRunner",
    "DegenerateDensityError",
    "DomainError",
    "Family",
    "GridDensity",
    "GridMismatchError",
    "GridSpec",
    "IntervalRule",
    "MeasurementModel",
    "MixtureComponent",
    "ModelConfig",
    "NoOverlapError",
    "NoiseSpec",
    "PivotalError",
    "PredictiveInterval",
    "PredictiveResult",
    "PriorSpec",
    "ReportProtocol",
    "SummaryStats",
    "ValidationError",
    "cdf",
    "check_consistency",
    "coincidence_sweep",
    "convolve",
    "coverage_experiment",
    "cross_correlate",
    "direct_convolve",
    "hit_sequence",
    "known_theta_predictive",
    "likelihood_error",
    "likelihood_theta",
    "load_model_config",
    "normalize",
    "parse_model_config",
    "pivot_density",
    "pointwise_product",
    "posterior_error_A",
    "posterior_error_B",
    "posterior_theta",
    "predictive_density",
    "prior_predictive",
    "quantile",
    "read_density_csv",
    "read_report",
    "realize",
    "reflect",
    "resample",
    "sample",
    "shift",
    "simulate_pair",
    "simulate_pairs",
    "summarize",
    "sup_norm",
    "theta_invariance_check",
    "write_density_csv",
    "write_report",
    "write_sample_csv",
]
