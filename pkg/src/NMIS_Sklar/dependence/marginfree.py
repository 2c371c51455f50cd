"""
Margin-free core of a discrete joint.

Iterative proportional fitting rescales the slices of a mass array,
axis after axis, until every one-dimensional margin is discrete uniform.
Every sweep multiplies the array by positive per-axis factors, so all
cross-product (odds) ratios are preserved and the limit depends on the
input only through them.
"""

import logging
from itertools import combinations
from typing import Any, Dict, List, Optional, Sequence, Tuple, Union

import numpy as np
from pydantic import BaseModel, ConfigDict, Field, model_validator

from ..core.config import config
from ..core.exception import DimensionError, DomainError, SupportError
from ..core.numerics import DEFAULT_POLICY, Coordinate, Scalar, TolerancePolicy
from ..distributions.joint import JointPMF, rescale
from ..models.reports import Report

logger = logging.getLogger(__name__)


class DiscreteCopula(BaseModel):
    """
    Float mass array whose margins are (approximately) discrete uniform.

    ``axes`` keeps the atom labels of the joint it was fitted from.
    """

    model_config = ConfigDict(frozen=True, arbitrary_types_allowed=True)

    axes: Tuple[Tuple[Coordinate, ...], ...]
    mass: np.ndarray

    @model_validator(mode="after")
    def _check(self) -> "DiscreteCopula":
        if self.mass.shape != tuple(len(a) for a in self.axes):
            raise DimensionError(f"Mass shape {self.mass.shape} does not match the axes")
        if (self.mass < 0).any():
            raise SupportError("A discrete copula cannot carry negative mass")
        self.mass.flags.writeable = False
        return self

    @property
    def dims(self) -> int:
        return self.mass.ndim

    @property
    def shape(self) -> Tuple[int, ...]:
        return tuple(self.mass.shape)

    def margin_error(self) -> float:
        """L1 distance of all one-dimensional margins to uniform."""
        return _margin_error(self.mass)

    def to_joint(self) -> JointPMF:
        """The core as a float-track joint on the original atoms."""
        return JointPMF(axes=self.axes, mass=self.mass / self.mass.sum(), track="float")

    def to_json(self) -> Dict[str, Any]:
        return {
            "dims": self.dims,
            "shape": list(self.shape),
            "mass": self.mass.tolist(),
        }


class IpfDiagnostics(BaseModel):
    model_config = ConfigDict(frozen=True)

    iterations: int
    final_margin_error: float
    converged: bool
    tol: float
    error_trail: List[float] = Field(default_factory=list, repr=False)
    witness: Optional[Tuple[int, int]] = Field(
        default=None,
        description="(axis, slice) farthest from its uniform share when not converged",
    )

    @model_validator(mode="after")
    def _check(self) -> "IpfDiagnostics":
        if self.converged != (self.final_margin_error <= self.tol):
            raise ValueError("converged must equal final_margin_error <= tol")
        return self

    def to_json(self) -> Dict[str, Any]:
        return self.model_dump(exclude={"error_trail"})


def _slice_sums(mass: np.ndarray, axis: int) -> np.ndarray:
    others = tuple(k for k in range(mass.ndim) if k != axis)
    return mass.sum(axis=others)


def _margin_error(mass: np.ndarray) -> float:
    return float(sum(
        np.abs(_slice_sums(mass, k) - 1.0 / mass.shape[k]).sum() for k in range(mass.ndim)
    ))


def _worst_slice(mass: np.ndarray) -> Tuple[int, int]:
    deviations = [np.abs(_slice_sums(mass, k) - 1.0 / mass.shape[k]) for k in range(mass.ndim)]
    axis = max(range(mass.ndim), key=lambda k: deviations[k].max())
    return axis, int(np.argmax(deviations[axis]))


def _as_float_mass(j: Union[JointPMF, np.ndarray]) -> np.ndarray:
    if isinstance(j, JointPMF):
        return j.to_float().mass.astype(float)
    return np.asarray(j, dtype=float)


def ipf(
    j: JointPMF,
    tol: Optional[float] = None,
    max_iter: Optional[int] = None,
    policy: TolerancePolicy = DEFAULT_POLICY,
) -> Tuple[DiscreteCopula, IpfDiagnostics]:
    """
    Fit uniform margins to j by iterative proportional fitting.

    One sweep rescales the slices of every axis in turn; sweeps repeat until
    the L1 margin error is at most tol or max_iter sweeps have run. At least
    one sweep always runs. Non-convergence is reported in the diagnostics,
    not raised.

    Args:
        j: Joint with d >= 2
        tol: Target L1 margin error (default: policy.ipf_margin_tol)
        max_iter: Maximum number of sweeps (default: config.ipf_max_iter)

    Raises:
        SupportError: If a slice carries no mass (uniform margins unreachable)
        DomainError: If tol <= 0 or max_iter < 1
    """
    tol = policy.ipf_margin_tol if tol is None else tol
    max_iter = config.ipf_max_iter if max_iter is None else max_iter
    if tol <= 0:
        raise DomainError(f"IPF tolerance must be positive, got {tol}")
    if max_iter < 1:
        raise DomainError(f"IPF needs max_iter >= 1, got {max_iter}")

    mass = _as_float_mass(j).copy()
    for k in range(mass.ndim):
        empty = np.flatnonzero(_slice_sums(mass, k) == 0)
        if empty.size:
            raise SupportError(
                f"Slice {int(empty[0])} of axis {k} carries no mass; a uniform margin is unreachable"
            )

    trail: List[float] = []
    error = np.inf
    iterations = 0
    while iterations < max_iter:
        for k in range(mass.ndim):
            shape = [1] * mass.ndim
            shape[k] = mass.shape[k]
            factor = (1.0 / mass.shape[k]) / _slice_sums(mass, k)
            mass *= factor.reshape(shape)
        iterations += 1
        error = _margin_error(mass)
        trail.append(error)
        logger.debug("IPF sweep %d: margin error %.3e", iterations, error)
        if error <= tol:
            break

    converged = error <= tol
    if converged:
        logger.info("IPF converged after %d sweep(s), margin error %.3e", iterations, error)
    else:
        logger.warning("IPF stopped after %d sweeps without convergence (error %.3e)", iterations, error)
    axes = j.axes if isinstance(j, JointPMF) else tuple(tuple(range(n)) for n in mass.shape)
    core = DiscreteCopula(axes=axes, mass=mass)
    diagnostics = IpfDiagnostics(
        iterations=iterations,
        final_margin_error=error,
        converged=converged,
        tol=tol,
        error_trail=trail,
        witness=None if converged else _worst_slice(mass),
    )
    return core, diagnostics


def odds_ratios(j: Union[JointPMF, DiscreteCopula, np.ndarray]) -> Dict[Tuple[int, int, int, int], Scalar]:
    """
    Every 2x2 cross-product ratio m[i,k] m[i2,k2] / (m[i,k2] m[i2,k]) of a 2D
    mass array, keyed by (i, i2, k, k2) with i < i2 and k < k2.

    Exact on the rational track.

    Raises:
        DimensionError: If the array is not two-dimensional
        SupportError: If a cell is zero
    """
    mass = j.mass if isinstance(j, (JointPMF, DiscreteCopula)) else np.asarray(j)
    if mass.ndim != 2:
        raise DimensionError(f"Odds ratios need a 2D array, got d={mass.ndim}")
    if any(v == 0 for v in mass.flat):
        raise SupportError("Odds ratios need strictly positive cells")
    rows, cols = mass.shape
    return {
        (i, i2, k, k2): (mass[i, k] * mass[i2, k2]) / (mass[i, k2] * mass[i2, k])
        for i, i2 in combinations(range(rows), 2)
        for k, k2 in combinations(range(cols), 2)
    }


def scaling_invariance_check(
    j: JointPMF,
    weights: Sequence[Sequence[Any]],
    tol: float = 1e-8,
    policy: TolerancePolicy = DEFAULT_POLICY,
) -> Report:
    """
    Check that j and its diagonal rescaling share the same IPF core.

    The cores are fitted at min(tol, policy.ipf_margin_tol) and compared in
    sup norm.

    Raises:
        ScalingError: If a weight is not strictly positive
    """
    scaled = rescale(j, weights)
    fit_tol = min(tol, policy.ipf_margin_tol)
    core, first = ipf(j, tol=fit_tol, policy=policy)
    scaled_core, second = ipf(scaled, tol=fit_tol, policy=policy)
    difference = np.abs(core.mass - scaled_core.mass)
    cell = np.unravel_index(int(np.argmax(difference)), difference.shape)
    worst = float(difference[cell])
    passed = bool(worst <= tol) and first.converged and second.converged
    witness = tuple(j.axes[k][i] for k, i in enumerate(cell))
    logger.info("Scaling invariance: sup-norm core distance %.3e", worst)
    message = ""
    if not (first.converged and second.converged):
        message = "IPF did not converge"
    elif not passed:
        message = f"IPF cores differ by {worst:.3e} at cell {witness}"
    return Report(
        check="scaling_invariance",
        passed=passed,
        max_discrepancy=worst,
        witness=None if passed else witness,
        message=message,
        details={
            "tol": tol,
            "iterations": [first.iterations, second.iterations],
            "converged": [first.converged, second.converged],
        },
    )
