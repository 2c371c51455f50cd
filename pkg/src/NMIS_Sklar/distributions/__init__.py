from .joint import JointPMF, from_samples, joint_cdf, marginal, rescale, validate
from .margins import UNIT_INTERVAL, Margin, RanSet, cdf, pit_distribution, quantile, ran

__all__ = [
    "JointPMF",
    "validate",
    "joint_cdf",
    "marginal",
    "from_samples",
    "rescale",
    "Margin",
    "RanSet",
    "UNIT_INTERVAL",
    "cdf",
    "quantile",
    "ran",
    "pit_distribution",
]
