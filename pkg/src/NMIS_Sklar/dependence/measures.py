"""
Population dependence measures of discrete joints.

Kendall's tau is the tau_a concordance of two independent draws (ties
count for neither side). Spearman's rho is 12 * integral(C) - 3 for a copula
C extending the joint's subcopula; its value depends on which extension is
picked, so the checkerboard value is reported next to the patchwork-M one.
"""

import logging
import math
from fractions import Fraction
from typing import Any, Dict, Optional, Sequence, Tuple

import numpy as np
from pydantic import BaseModel, ConfigDict, Field

from ..copulas.extension import CopulaLike, copula_integral
from ..copulas.registry import extensions
from ..copulas.subcopula import extract
from ..core.exception import SupportError, UnsupportedOperationError
from ..core.numerics import Scalar, format_scalar, zero
from ..distributions.joint import JointPMF, rescale
from .marginfree import DiscreteCopula, IpfDiagnostics, ipf, odds_ratios

logger = logging.getLogger(__name__)


class MeasureReport(BaseModel):
    """Kendall's tau and Spearman's rho of one joint."""

    model_config = ConfigDict(frozen=True, arbitrary_types_allowed=True)

    tau: Scalar
    rho: Scalar
    rho_patchwork_m: Optional[Scalar] = Field(
        default=None,
        description="rho under the patchwork-M extension of the same subcopula",
    )
    notes: Dict[str, str] = Field(default_factory=dict)

    def to_json(self) -> Dict[str, Any]:
        return {
            "tau": format_scalar(self.tau),
            "rho": format_scalar(self.rho),
            "rho_patchwork_m": format_scalar(self.rho_patchwork_m),
            "notes": dict(self.notes),
        }


class SensitivityTable(BaseModel):
    """
    Measures of a joint and of its diagonal rescaling, with both IPF cores.

    Diagonal scaling keeps every odds ratio, and so the IPF core, but moves
    the margins and with them tau and rho.
    """

    model_config = ConfigDict(frozen=True, arbitrary_types_allowed=True)

    original: JointPMF
    scaled: JointPMF
    tau: Scalar
    tau_scaled: Scalar
    rho: Scalar
    rho_scaled: Scalar
    core: DiscreteCopula
    core_scaled: DiscreteCopula
    core_tau: float
    core_tau_scaled: float
    core_rho: float
    core_rho_scaled: float
    fit: IpfDiagnostics
    fit_scaled: IpfDiagnostics
    odds_ratios_equal: Optional[bool] = None
    odds_ratio_witness: Optional[Tuple[int, int, int, int]] = Field(
        default=None,
        description="(i, i2, k, k2) of the first cross-product ratio the rescaling changed",
    )

    @property
    def converged(self) -> bool:
        return self.fit.converged and self.fit_scaled.converged

    def rows(self):
        """(measure, original, scaled, delta) rows for tabular output."""
        return [
            ("tau", self.tau, self.tau_scaled, self.tau_scaled - self.tau),
            ("rho", self.rho, self.rho_scaled, self.rho_scaled - self.rho),
            ("core_tau", self.core_tau, self.core_tau_scaled, self.core_tau_scaled - self.core_tau),
            ("core_rho", self.core_rho, self.core_rho_scaled, self.core_rho_scaled - self.core_rho),
        ]

    def to_json(self) -> Dict[str, Any]:
        return {
            "scaled_joint": self.scaled.to_json(),
            "measures": [
                {
                    "measure": name,
                    "original": format_scalar(a),
                    "scaled": format_scalar(b),
                    "delta": format_scalar(delta),
                }
                for name, a, b, delta in self.rows()
            ],
            "core": self.core.mass.tolist(),
            "core_scaled": self.core_scaled.mass.tolist(),
            "ipf": {"original": self.fit.to_json(), "scaled": self.fit_scaled.to_json()},
            "odds_ratios_equal": self.odds_ratios_equal,
            "odds_ratio_witness": self.odds_ratio_witness,
        }


def _require_bivariate(j: JointPMF, measure: str) -> None:
    if j.dims != 2:
        raise UnsupportedOperationError(f"{measure} is implemented for d=2 only, got d={j.dims}")


def kendall_tau(j: JointPMF) -> Scalar:
    """
    Kendall's tau_a of a bivariate joint, exact on the rational track.

    With L[i,k] the mass strictly below-left of cell (i,k) and U[i,k] the
    mass strictly above-left, tau = 2 sum p*L - 2 sum p*U.

    Raises:
        UnsupportedOperationError: If d != 2
    """
    _require_bivariate(j, "Kendall's tau")
    p = j.mass
    rows, cols = p.shape
    padded = np.full((rows + 1, cols + 1), zero(j.track), dtype=object)
    padded[1:, 1:] = np.cumsum(np.cumsum(p, axis=0), axis=1)
    below_left = padded[:-1, :-1]
    above_left = padded[:-1, -1:] - padded[:-1, 1:]
    tau = 2 * (p * below_left).sum() - 2 * (p * above_left).sum()
    return Fraction(tau) if j.track == "rational" else float(tau)


def rho_of_copula(c: CopulaLike) -> Scalar:
    """Spearman's rho 12 * integral(C) - 3 of a bivariate copula."""
    if c.dims != 2:
        raise UnsupportedOperationError(f"Spearman's rho is implemented for d=2 only, got d={c.dims}")
    return 12 * copula_integral(c) - 3


def spearman_rho(j: JointPMF, method: str = "checkerboard") -> Scalar:
    """
    Spearman's rho of j under the named extension of its subcopula.

    Raises:
        UnsupportedOperationError: If d != 2
    """
    _require_bivariate(j, "Spearman's rho")
    c = extensions.apply(method, extract(j))
    return rho_of_copula(c)


def spearman_rho_checkerboard(j: JointPMF) -> Scalar:
    """Spearman's rho of j's checkerboard copula."""
    return spearman_rho(j, "checkerboard")


def measures(j: JointPMF) -> MeasureReport:
    """tau, checkerboard rho and the patchwork-M rho of a bivariate joint."""
    tau = kendall_tau(j)
    rho = spearman_rho_checkerboard(j)
    rho_m = spearman_rho(j, "patchwork-m")
    logger.info("tau=%s rho=%s rho(patchwork-M)=%s", tau, rho, rho_m)
    return MeasureReport(
        tau=tau,
        rho=rho,
        rho_patchwork_m=rho_m,
        notes={
            "tau": "tau_a: concordant minus discordant probability, ties count for neither",
            "rho": "12 * integral of the checkerboard copula - 3",
        },
    )


def _same_ratio(a: Scalar, b: Scalar, rel_tol: float) -> bool:
    if isinstance(a, Fraction) and isinstance(b, Fraction):
        return a == b
    return math.isclose(a, b, rel_tol=rel_tol)


def margin_sensitivity(
    j: JointPMF,
    weights: Sequence[Sequence[Any]],
    tol: Optional[float] = None,
    max_iter: Optional[int] = None,
    rel_tol: float = 1e-9,
) -> SensitivityTable:
    """
    Compare tau and rho of j with those of its diagonal rescaling
    mass'(i,k) proportional to a[i] b[k] mass(i,k), and fit both IPF cores.

    Raises:
        UnsupportedOperationError: If d != 2
        ScalingError: If a weight is not strictly positive
    """
    _require_bivariate(j, "Margin sensitivity")
    scaled = rescale(j, weights)
    core, fit = ipf(j, tol=tol, max_iter=max_iter)
    core_scaled, fit_scaled = ipf(scaled, tol=tol, max_iter=max_iter)
    core_joint, core_scaled_joint = core.to_joint(), core_scaled.to_joint()
    witness = None
    try:
        before, after = odds_ratios(j), odds_ratios(scaled)
    except SupportError:
        # zero cells: no odds ratios to compare
        equal = None
    else:
        changed = [key for key in before if not _same_ratio(before[key], after[key], rel_tol)]
        equal = not changed
        witness = changed[0] if changed else None
    return SensitivityTable(
        original=j,
        scaled=scaled,
        tau=kendall_tau(j),
        tau_scaled=kendall_tau(scaled),
        rho=spearman_rho_checkerboard(j),
        rho_scaled=spearman_rho_checkerboard(scaled),
        core=core,
        core_scaled=core_scaled,
        core_tau=float(kendall_tau(core_joint)),
        core_tau_scaled=float(kendall_tau(core_scaled_joint)),
        core_rho=float(spearman_rho_checkerboard(core_joint)),
        core_rho_scaled=float(spearman_rho_checkerboard(core_scaled_joint)),
        fit=fit,
        fit_scaled=fit_scaled,
        odds_ratios_equal=equal,
        odds_ratio_witness=witness,
    )
