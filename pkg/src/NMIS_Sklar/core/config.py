# Store package-level configuration
# Default settings for connectors/exporters/verifications
# CLI flags and run profiles override these per invocation

from dataclasses import dataclass, field
from pathlib import Path

from .numerics import TolerancePolicy, Track

@dataclass
class SklarConfig:
    """Global configuration for NMIS Sklar"""

    # Default paths
    library_path: Path = Path(__file__).parent.parent / "library"

    # Connector defaults
    csv_delimiter: str = ","
    csv_encoding: str = "utf-8"
    default_track: Track = "rational"

    # Exporter defaults
    json_indent: int = 2

    # Float-track tolerances
    tolerance: TolerancePolicy = field(default_factory=TolerancePolicy)

    # Iterative proportional fitting
    ipf_max_iter: int = 100_000

    # Verification sweeps
    seed: int = 0
    n_boxes: int = 1000
    probe_resolution: int = 100
    alpha_resolution: int = 16
    lazy_resolution: int = 16

    def __post_init__(self):
        if self.ipf_max_iter < 1:
            raise ValueError("ipf_max_iter must be at least 1")

# Global config instance
config = SklarConfig()
