"""Wasserstein GAN training with gradient penalty, exact empirical transport
distances and quantile confidence intervals."""

from ._core import (
    Architecture,
    CoverageReport,
    HistoryRecord,
    Interval,
    Network,
    TrainConfig,
    TrainedModel,
    TransportEstimate,
    WarmupSchedule,
    brute_force_w1,
    coverage,
    empirical_cdf,
    exact_w1,
    generate,
    quantile_interval,
    sample_latent,
    synth_conditional,
    synth_unconditional,
    train,
)

__all__ = [
    "Architecture",
    "CoverageReport",
    "HistoryRecord",
    "Interval",
    "Network",
    "TrainConfig",
    "TrainedModel",
    "TransportEstimate",
    "WarmupSchedule",
    "brute_force_w1",
    "coverage",
    "empirical_cdf",
    "exact_w1",
    "generate",
    "quantile_interval",
    "sample_latent",
    "synth_conditional",
    "synth_unconditional",
    "train",
]

__version__ = "0.1.0"
