from .marginfree import DiscreteCopula, IpfDiagnostics, ipf, odds_ratios, scaling_invariance_check
from .measures import (
    MeasureReport,
    SensitivityTable,
    kendall_tau,
    margin_sensitivity,
    measures,
    rho_of_copula,
    spearman_rho,
    spearman_rho_checkerboard,
)

__all__ = [
    "DiscreteCopula",
    "IpfDiagnostics",
    "ipf",
    "odds_ratios",
    "scaling_invariance_check",
    "MeasureReport",
    "SensitivityTable",
    "kendall_tau",
    "spearman_rho",
    "spearman_rho_checkerboard",
    "rho_of_copula",
    "measures",
    "margin_sensitivity",
]
