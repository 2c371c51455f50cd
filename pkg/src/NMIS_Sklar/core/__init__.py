from .config import SklarConfig, config
from .numerics import DEFAULT_POLICY, TolerancePolicy

__all__ = ["SklarConfig", "config", "TolerancePolicy", "DEFAULT_POLICY"]
