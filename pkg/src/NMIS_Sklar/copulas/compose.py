"""
Building a joint distribution from a copula and margins, and the Sklar
roundtrip check.
"""

import logging
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Any, Optional, Sequence

import numpy as np

from ..core.exception import CompositionError, DimensionError, JointValidationError
from ..core.numerics import DEFAULT_POLICY, Scalar, TolerancePolicy, is_exact, nonnegative, zero
from ..distributions.joint import JointPMF
from ..distributions.margins import Margin
from ..models.reports import Report
from .extension import CopulaLike
from .registry import extensions
from .subcopula import extract

logger = logging.getLogger(__name__)


@dataclass(frozen=True, eq=False)
class ComposedJoint:
    """
    Joint distribution x -> C(F_1(x_1), ..., F_d(x_d)).

    ``derived`` holds the materialized mass when every margin is discrete.
    """

    copula: CopulaLike
    margins: tuple
    derived: Optional[JointPMF] = field(default=None)

    @property
    def dims(self) -> int:
        return len(self.margins)

    def cdf(self, x: Sequence[Any]) -> Scalar:
        if len(x) != self.dims:
            raise DimensionError(f"Point has {len(x)} coordinates, joint has d={self.dims}")
        return self.copula([m.cdf(xk) for m, xk in zip(self.margins, x)])


def _materialize(copula: CopulaLike, margins: Sequence[Margin]) -> JointPMF:
    levels = [(zero(m.track),) + m.levels for m in margins]
    shape = tuple(len(lv) for lv in levels)
    raw = np.empty(shape, dtype=object)
    for index in np.ndindex(shape):
        raw[index] = copula([levels[k][i] for k, i in enumerate(index)])
    # exact only when the margins and every copula value are exact
    exact = all(m.track == "rational" for m in margins) and all(is_exact(v) for v in raw.flat)
    if exact:
        mass = np.vectorize(Fraction, otypes=[object])(raw)
    else:
        mass = raw.astype(float)
    # successive differences along every axis = inclusion-exclusion per cell
    for k in range(len(margins)):
        mass = np.diff(mass, axis=k)
    for index in np.ndindex(mass.shape):
        if not nonnegative(mass[index]):
            raise CompositionError(
                f"Composed mass {mass[index]} is negative at cell {index}; the evaluator is not a copula"
            )
        if not exact and mass[index] < 0:
            mass[index] = 0.0
    if not exact:
        mass = mass.astype(float)
    axes = tuple(m.atoms for m in margins)
    try:
        return JointPMF(axes=axes, mass=mass, track="rational" if exact else "float")
    except JointValidationError as e:
        raise CompositionError(f"Composed mass is not a distribution: {e}")


def sklar_compose(c: CopulaLike, margins: Sequence[Margin]) -> ComposedJoint:
    """
    Compose a copula with univariate margins.

    When every margin is discrete the joint mass is materialized on the atom
    grid; otherwise only the CDF evaluator is available.

    Raises:
        DimensionError: If c.dims differs from the number of margins
        CompositionError: If a derived cell mass is negative
    """
    margins = tuple(margins)
    if c.dims != len(margins):
        raise DimensionError(f"Copula has d={c.dims} but {len(margins)} margins were given")
    derived = None
    if all(m.is_discrete for m in margins):
        derived = _materialize(c, margins)
        logger.debug("Materialized composed joint on a %s grid", derived.shape)
    return ComposedJoint(copula=c, margins=margins, derived=derived)


def roundtrip_check(
    j: JointPMF,
    method: str = "checkerboard",
    policy: TolerancePolicy = DEFAULT_POLICY,
) -> Report:
    """
    Extract H from j, extend it with ``method``, compose with j's own margins
    and compare the result with j cell by cell.
    """
    h = extract(j)
    copula = extensions.apply(method, h)
    composed = sklar_compose(copula, j.margins())
    derived = composed.derived
    positions = [{atom: i for i, atom in enumerate(axis)} for axis in derived.axes]

    worst, worst_cell = None, None
    for index in np.ndindex(j.shape):
        coordinates = tuple(j.axes[k][i] for k, i in enumerate(index))
        mapped = [positions[k].get(x) for k, x in enumerate(coordinates)]
        # atoms missing from the derived grid carry zero marginal mass
        other = zero(derived.track) if None in mapped else derived.mass[tuple(mapped)]
        discrepancy = abs(j.mass[index] - other)
        if worst is None or discrepancy > worst:
            worst, worst_cell = discrepancy, coordinates
    exact = is_exact(worst)
    passed = bool(worst == 0 if exact else worst <= policy.abs_tol)
    logger.info("Roundtrip via %s: max cell discrepancy %s", method, worst)
    return Report(
        check="roundtrip",
        passed=passed,
        max_discrepancy=worst,
        witness=worst_cell,
        message="" if passed else f"Composed joint differs from the input at cell {worst_cell}",
        details={"method": method, "cells": int(np.prod(j.shape))},
    )
