"""
NMIS Sklar - Sklar's theorem for discrete and continuous margins

Extract the subcopula of a joint distribution, extend it to copulas,
compose copulas with margins, and measure how much of the dependence
information survives when margins are discrete.

Example:
    from NMIS_Sklar import SklarBridge

    bridge = SklarBridge()
    joint = bridge.load("pA.csv")
    result = bridge.demo_nonunique(joint)
"""

__version__ = "0.1.0"

# Main API
from .core.bridge import SklarBridge
from .core.config import config
from .core.numerics import TolerancePolicy

# Distributions
from .distributions.joint import JointPMF, from_samples, rescale, validate
from .distributions.margins import Margin, RanSet

# Copulas
from .copulas.subcopula import Subcopula, extract, verify_representation, verify_subcopula_axioms
from .copulas.extension import (
    Copula,
    extend_checkerboard,
    extend_patchwork,
    extensions_coincide,
    verify_copula_axioms,
)
from .copulas.compose import roundtrip_check, sklar_compose
from .copulas.registry import extensions

# Dependence
from .dependence.measures import kendall_tau, margin_sensitivity, spearman_rho_checkerboard
from .dependence.marginfree import DiscreteCopula, ipf, scaling_invariance_check

# Connectors / exporters
from .connectors.factory import ConnectorFactory
from .exporters.factory import ExporterFactory

# Reports
from .models.reports import CoincidenceResult, CommandResult, Report

# Exceptions
from .core.exception import (
    SklarError,
    NumericsError,
    DomainError,
    MarginError,
    JointValidationError,
    DimensionError,
    SubcopulaError,
    ExtensionError,
    CompositionError,
    UnsupportedOperationError,
    SupportError,
    ScalingError,
    ConnectorError,
    ExporterError,
    ProfileError,
)

__all__ = [
    # Version
    "__version__",
    # Main
    "SklarBridge",
    "config",
    "TolerancePolicy",
    # Distributions
    "JointPMF",
    "Margin",
    "RanSet",
    "validate",
    "from_samples",
    "rescale",
    # Copulas
    "Subcopula",
    "Copula",
    "extract",
    "verify_representation",
    "verify_subcopula_axioms",
    "extend_checkerboard",
    "extend_patchwork",
    "extensions_coincide",
    "verify_copula_axioms",
    "sklar_compose",
    "roundtrip_check",
    "extensions",
    # Dependence
    "kendall_tau",
    "spearman_rho_checkerboard",
    "margin_sensitivity",
    "DiscreteCopula",
    "ipf",
    "scaling_invariance_check",
    # Connectors / exporters
    "ConnectorFactory",
    "ExporterFactory",
    # Reports
    "Report",
    "CoincidenceResult",
    "CommandResult",
    # Exceptions
    "SklarError",
    "NumericsError",
    "DomainError",
    "MarginError",
    "JointValidationError",
    "DimensionError",
    "SubcopulaError",
    "ExtensionError",
    "CompositionError",
    "UnsupportedOperationError",
    "SupportError",
    "ScalingError",
    "ConnectorError",
    "ExporterError",
    "ProfileError",
]
