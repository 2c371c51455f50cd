"""
The unique subcopula H on the product of the margins' range sets.

For a discrete joint the domain is a finite grid and H is materialized as a
dense table; for a composed joint with continuous (or mixed) margins H is a
lazy evaluator guarded by range-set membership.
"""

import logging
from bisect import bisect_left
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import product
from typing import TYPE_CHECKING, Any, Callable, Dict, Optional, Sequence, Tuple, Union

import numpy as np

from ..core.exception import DimensionError, DomainError, SubcopulaError
from ..core.numerics import (
    INF,
    NEG_INF,
    DEFAULT_POLICY,
    Scalar,
    TolerancePolicy,
    format_scalar,
    is_exact,
    nonnegative,
    parse_scalar,
    same_value,
)
from ..distributions.joint import JointPMF
from ..distributions.margins import RanSet
from ..models.reports import Report

if TYPE_CHECKING:
    from .compose import ComposedJoint

logger = logging.getLogger(__name__)


@dataclass(frozen=True, eq=False)
class Subcopula:
    """
    Function H defined on domain[0] x ... x domain[d-1].

    Exactly one of ``table`` (finite grid) and ``evaluator`` (lazy) is set.
    """

    domain: Tuple[RanSet, ...]
    table: Optional[np.ndarray] = None
    evaluator: Optional[Callable[[Tuple[Any, ...]], Scalar]] = field(default=None, compare=False)

    def __post_init__(self):
        if (self.table is None) == (self.evaluator is None):
            raise SubcopulaError("A subcopula needs either a value table or an evaluator")
        if self.table is not None:
            if not all(r.is_finite() for r in self.domain):
                raise SubcopulaError("A value table needs a finite domain on every axis")
            shape = tuple(len(r.points) for r in self.domain)
            if self.table.shape != shape:
                raise SubcopulaError(f"Value table shape {self.table.shape} does not match grid {shape}")
            self.table.flags.writeable = False

    @property
    def dims(self) -> int:
        return len(self.domain)

    @property
    def is_materialized(self) -> bool:
        return self.table is not None

    @property
    def grid(self) -> Tuple[Tuple[Scalar, ...], ...]:
        """Grid points per axis (finite domains only)."""
        if not self.is_materialized:
            raise SubcopulaError("Lazy subcopula has no finite grid; use lattice()")
        return tuple(r.points for r in self.domain)

    def lattice(self, resolution: Optional[int] = None) -> Tuple[Tuple[Scalar, ...], ...]:
        """Finite probe set of the domain per axis."""
        return tuple(r.lattice(resolution) for r in self.domain)

    def in_domain(self, u: Sequence[Any]) -> bool:
        return len(u) == self.dims and all(r.contains(x) for r, x in zip(self.domain, u))

    def _index(self, u: Sequence[Any]) -> Tuple[int, ...]:
        index = []
        for k, (points, x) in enumerate(zip(self.grid, u)):
            i = bisect_left(points, x)
            if i == len(points) or points[i] != x:
                raise DomainError(f"{x} is not in the range set of axis {k}")
            index.append(i)
        return tuple(index)

    def __call__(self, u: Sequence[Any]) -> Scalar:
        if len(u) != self.dims:
            raise DimensionError(f"Point has {len(u)} coordinates, subcopula has d={self.dims}")
        if self.table is not None:
            return self.table[self._index(u)]
        if not self.in_domain(u):
            raise DomainError(f"{tuple(u)} is outside the subcopula domain")
        return self.evaluator(tuple(u))

    def with_value(self, index: Sequence[int], value: Any) -> "Subcopula":
        """Copy with one grid value replaced (no validation of the result)."""
        if not self.is_materialized:
            raise SubcopulaError("Only materialized subcopulas can be edited")
        table = self.table.copy()
        table[tuple(index)] = value
        return Subcopula(domain=self.domain, table=table)

    def to_json(self) -> Dict[str, Any]:
        if not self.is_materialized:
            raise SubcopulaError("Lazy subcopulas cannot be dumped as a grid")
        values = np.vectorize(format_scalar, otypes=[object])(self.table)
        return {
            "dims": self.dims,
            "grid": [[format_scalar(p) for p in points] for points in self.grid],
            "values": values.tolist(),
        }

    @classmethod
    def from_json(cls, data: Dict[str, Any]) -> "Subcopula":
        """Rebuild a materialized subcopula from its grid dump."""
        raw = np.array(data["values"], dtype=object)
        flat = [v for v in raw.flat] + [p for axis in data["grid"] for p in axis]
        track = "float" if any(isinstance(v, float) for v in flat) else "rational"
        grid = tuple(tuple(parse_scalar(p, track) for p in axis) for axis in data["grid"])
        table = np.empty(raw.shape, dtype=object if track == "rational" else float)
        for index in np.ndindex(raw.shape):
            table[index] = parse_scalar(raw[index], track)
        if "dims" in data and data["dims"] != len(grid):
            raise SubcopulaError(f"Declared dims={data['dims']} but grid gives d={len(grid)}")
        return cls(domain=tuple(RanSet(points=points) for points in grid), table=table)


def extract(joint: Union[JointPMF, "ComposedJoint"]) -> Subcopula:
    """
    Subcopula of a joint distribution.

    For a JointPMF, H(u) = F(quantile_1(u_1), ..., quantile_d(u_d)) on every
    point of the product of range sets. A ComposedJoint with continuous or
    mixed margins yields the lazy evaluator of the same formula.
    """
    if isinstance(joint, JointPMF):
        margins = joint.margins()
        domain = tuple(m.ran() for m in margins)
        shape = tuple(len(r.points) for r in domain)
        table = np.empty(shape, dtype=object if joint.track == "rational" else float)
        preimages = [[m.quantile(u) for u in r.points] for m, r in zip(margins, domain)]
        for index in np.ndindex(shape):
            table[index] = joint.cdf([preimages[k][i] for k, i in enumerate(index)])
        logger.debug("Extracted subcopula on a %s grid", shape)
        return Subcopula(domain=domain, table=table)

    if joint.derived is not None:
        return extract(joint.derived)
    margins = list(joint.margins)
    domain = tuple(m.ran() for m in margins)

    def evaluate(u: Tuple[Any, ...]) -> Scalar:
        return joint.cdf([m.quantile(x) for m, x in zip(margins, u)])

    return Subcopula(domain=domain, evaluator=evaluate)


def subcopula_is_copula(h: Subcopula) -> bool:
    """True when the domain is all of [0,1]^d, leaving no room for extension."""
    return all(r.is_full() for r in h.domain)


def _midpoint(a: Any, b: Any) -> Any:
    if isinstance(a, float) or isinstance(b, float):
        return (a + b) / 2
    return Fraction(a + b) / 2


def _probe_axis(axis: Sequence[Any]) -> Tuple[Any, ...]:
    midpoints = [_midpoint(a, b) for a, b in zip(axis, axis[1:])]
    return (NEG_INF,) + tuple(sorted(list(axis) + midpoints)) + (INF,)


def verify_representation(
    j: JointPMF,
    h: Subcopula,
    policy: TolerancePolicy = DEFAULT_POLICY,
) -> Report:
    """
    Check F(x) = H(F_1(x_1), ..., F_d(x_d)) over the probe grid.

    Per axis the probes are -inf, every atom, every between-atom midpoint and
    +inf; for step CDFs this reaches every value the identity can take.
    """
    if j.dims != h.dims:
        raise DimensionError(f"Joint has d={j.dims}, subcopula has d={h.dims}")
    margins = j.margins()
    probe_axes = [_probe_axis(axis) for axis in j.axes]
    images = [[m.cdf(x) for x in probes] for m, probes in zip(margins, probe_axes)]
    worst = None
    worst_point = None
    probes = 0
    for index in product(*(range(len(p)) for p in probe_axes)):
        probes += 1
        x = tuple(probe_axes[k][i] for k, i in enumerate(index))
        u = tuple(images[k][i] for k, i in enumerate(index))
        if not h.in_domain(u):
            return Report(
                check="representation",
                passed=False,
                witness=x,
                message=f"Margin image {u} lies outside the subcopula domain",
                details={"probes": probes},
            )
        discrepancy = abs(j.cdf(x) - h(u))
        if worst is None or discrepancy > worst:
            worst, worst_point = discrepancy, x
    exact = is_exact(worst)
    passed = bool(worst == 0 if exact else worst <= policy.abs_tol)
    logger.info("Representation check over %d probes: max discrepancy %s", probes, worst)
    return Report(
        check="representation",
        passed=passed,
        max_discrepancy=worst,
        witness=None if passed else worst_point,
        message="" if passed else "F differs from H composed with the margins",
        details={"probes": probes, "track": "rational" if exact else "float"},
    )


def _grid_values(h: Subcopula, resolution: Optional[int]) -> Tuple[Tuple[Tuple[Any, ...], ...], np.ndarray]:
    if h.is_materialized:
        return h.grid, h.table
    lattice = h.lattice(resolution)
    table = np.empty(tuple(len(a) for a in lattice), dtype=object)
    for index in np.ndindex(table.shape):
        table[index] = h(tuple(lattice[k][i] for k, i in enumerate(index)))
    return lattice, table


def verify_subcopula_axioms(
    h: Subcopula,
    resolution: Optional[int] = None,
    policy: TolerancePolicy = DEFAULT_POLICY,
) -> Report:
    """
    Grid-restricted copula axioms: groundedness, margin condition
    H(1,..,alpha,..,1) = alpha, nonnegative volume of every grid cell.

    Lazy subcopulas are checked on their range-set lattice at the given
    resolution.
    """
    grid, table = _grid_values(h, resolution)
    d = h.dims
    checked = {"grounded": 0, "margins": 0, "cells": 0}

    for k in range(d):
        if grid[k][0] != 0 or grid[k][-1] != 1:
            return Report(check="subcopula_axioms", passed=False, message=f"Axis {k} grid must span 0..1")
    for index in np.ndindex(table.shape):
        if 0 not in index:
            continue
        checked["grounded"] += 1
        if not same_value(table[index], 0, policy):
            return Report(
                check="subcopula_axioms",
                passed=False,
                max_discrepancy=abs(table[index]),
                witness=tuple(grid[a][i] for a, i in enumerate(index)),
                message=f"Not grounded on axis {index.index(0)}",
                details={"axis": index.index(0)},
            )

    for k in range(d):
        index = [len(axis) - 1 for axis in grid]
        for i, alpha in enumerate(grid[k]):
            index[k] = i
            value = table[tuple(index)]
            checked["margins"] += 1
            if not same_value(value, alpha, policy):
                return Report(
                    check="subcopula_axioms",
                    passed=False,
                    max_discrepancy=abs(value - alpha),
                    witness=tuple(grid[a][index[a]] for a in range(d)),
                    message=f"Margin condition fails on axis {k} at alpha={alpha}",
                    details={"axis": k, "alpha": alpha, "value": value},
                )

    volumes = table
    for k in range(d):
        volumes = np.diff(volumes, axis=k)
    for index in np.ndindex(volumes.shape):
        checked["cells"] += 1
        if not nonnegative(volumes[index], policy):
            lower = tuple(grid[k][i] for k, i in enumerate(index))
            upper = tuple(grid[k][i + 1] for k, i in enumerate(index))
            return Report(
                check="subcopula_axioms",
                passed=False,
                max_discrepancy=-volumes[index],
                witness=(lower, upper),
                message=f"Negative volume {volumes[index]} on box {lower}..{upper}",
                details={"volume": volumes[index]},
            )

    return Report(
        check="subcopula_axioms",
        passed=True,
        max_discrepancy=Fraction(0) if all(is_exact(v) for v in table.flat) else 0.0,
        details=checked,
    )
