"""
d-dimensional discrete joint distributions on a finite grid.

Masses are stored densely. On the rational track the array has dtype
``object`` and holds ``Fraction`` values, so numpy reductions (sum, cumsum,
diff) stay exact; on the float track it is a float64 array.
"""

import logging
from bisect import bisect_right
from collections import Counter
from fractions import Fraction
from typing import Any, Dict, List, Optional, Sequence, Tuple

import numpy as np
from pydantic import BaseModel, ConfigDict, PrivateAttr, model_validator

from ..core.config import config
from ..core.exception import DimensionError, JointValidationError, ScalingError
from ..core.numerics import (
    NEG_INF,
    Coordinate,
    Scalar,
    Track,
    format_scalar,
    parse_coordinate,
    parse_scalar,
    zero,
)
from .margins import Margin

logger = logging.getLogger(__name__)


def _as_mass_array(values: Any, track: Track) -> np.ndarray:
    if track == "rational":
        raw = np.array(values, dtype=object)
        parsed = np.empty(raw.shape, dtype=object)
        for index in np.ndindex(raw.shape):
            parsed[index] = parse_scalar(raw[index], "rational")
        return parsed
    raw = np.array(values, dtype=object)
    parsed = np.empty(raw.shape, dtype=float)
    for index in np.ndindex(raw.shape):
        parsed[index] = parse_scalar(raw[index], "float")
    return parsed


class JointPMF(BaseModel):
    """
    Probability mass on the grid axes[0] x ... x axes[d-1].

    Build instances through ``validate`` (or ``from_samples``) rather than
    the constructor: ``validate`` parses values and normalizes counts.
    """

    model_config = ConfigDict(frozen=True, arbitrary_types_allowed=True)

    axes: Tuple[Tuple[Coordinate, ...], ...]
    mass: np.ndarray
    track: Track = "rational"

    _cumulative: np.ndarray = PrivateAttr()
    _marginals: Dict[int, Margin] = PrivateAttr(default_factory=dict)

    @model_validator(mode="after")
    def _check(self) -> "JointPMF":
        if len(self.axes) < 2:
            raise JointValidationError(f"A joint distribution needs d >= 2, got d={len(self.axes)}")
        shape = tuple(len(axis) for axis in self.axes)
        if self.mass.shape != shape:
            raise JointValidationError(
                f"Mass array shape {self.mass.shape} does not match axes lengths {shape}"
            )
        for k, axis in enumerate(self.axes):
            if any(b <= a for a, b in zip(axis, axis[1:])):
                raise JointValidationError(f"Axis {k} atoms must be strictly increasing")
        for index in np.ndindex(self.mass.shape):
            if self.mass[index] < 0:
                raise JointValidationError(
                    f"Negative mass {self.mass[index]} at cell {index}", cell=index
                )
        total = self.mass.sum()
        if self.track == "rational":
            if total != 1:
                raise JointValidationError(f"Masses sum to {total}, expected exactly 1")
        elif abs(total - 1) > config.tolerance.abs_tol:
            raise JointValidationError(f"Masses sum to {total!r}, expected 1 within tolerance")
        self.mass.flags.writeable = False
        cumulative = self.mass
        for axis in range(self.dims):
            cumulative = np.cumsum(cumulative, axis=axis)
        cumulative.flags.writeable = False
        self._cumulative = cumulative
        return self

    @property
    def dims(self) -> int:
        return len(self.axes)

    @property
    def shape(self) -> Tuple[int, ...]:
        return tuple(self.mass.shape)

    def cdf(self, x: Sequence[Any]) -> Scalar:
        """Joint CDF at x on the extended reals."""
        if len(x) != self.dims:
            raise DimensionError(f"Point has {len(x)} coordinates, joint has d={self.dims}")
        index = []
        for axis, coordinate in zip(self.axes, x):
            if coordinate == NEG_INF:
                return zero(self.track)
            i = bisect_right(axis, coordinate)
            if i == 0:
                return zero(self.track)
            index.append(i - 1)
        return self._cumulative[tuple(index)]

    def marginal(self, axis: int) -> Margin:
        """
        Discrete margin along one axis (0-based).

        Atoms with zero marginal mass are left out; they change neither the
        CDF nor its range set.
        """
        if not 0 <= axis < self.dims:
            raise DimensionError(f"Axis {axis} out of range for d={self.dims}")
        if axis not in self._marginals:
            others = tuple(k for k in range(self.dims) if k != axis)
            sums = self.mass.sum(axis=others)
            atoms, masses = [], []
            for atom, mass in zip(self.axes[axis], sums):
                if mass > 0:
                    atoms.append(atom)
                    masses.append(mass)
            if len(atoms) < len(self.axes[axis]):
                logger.warning(
                    "Dropped %d zero-mass atom(s) from marginal %d",
                    len(self.axes[axis]) - len(atoms), axis,
                )
            if self.track == "float":
                masses = [float(m) for m in masses]
            self._marginals[axis] = Margin(kind="discrete", atoms=tuple(atoms), masses=tuple(masses))
        return self._marginals[axis]

    def margins(self) -> List[Margin]:
        return [self.marginal(k) for k in range(self.dims)]

    def to_float(self) -> "JointPMF":
        """Float-track copy."""
        if self.track == "float":
            return self
        return JointPMF(axes=self.axes, mass=self.mass.astype(float), track="float")

    def to_json(self) -> Dict[str, Any]:
        values = np.vectorize(format_scalar, otypes=[object])(self.mass) if self.track == "rational" else self.mass
        return {
            "dims": self.dims,
            "axes": [[format_scalar(a) for a in axis] for axis in self.axes],
            "mass": {"format": "dense", "values": values.tolist()},
            "track": self.track,
        }

    @classmethod
    def from_json(cls, data: Dict[str, Any], counts: bool = False) -> "JointPMF":
        """Build a joint from its JSON schema."""
        mass = data.get("mass", {})
        if mass.get("format", "dense") != "dense":
            raise JointValidationError(f"Unsupported mass format: {mass.get('format')!r}")
        joint = validate(
            data["axes"],
            mass["values"],
            counts=counts,
            track=data.get("track", config.default_track),
        )
        if "dims" in data and data["dims"] != joint.dims:
            raise JointValidationError(f"Declared dims={data['dims']} but axes give d={joint.dims}")
        return joint


def validate(
    axes: Sequence[Sequence[Any]],
    mass: Any,
    counts: bool = False,
    track: Optional[Track] = None,
) -> JointPMF:
    """
    Validate raw axes and mass values into a JointPMF.

    Args:
        axes: Per-dimension atom coordinates (strictly increasing)
        mass: Nested array of probabilities, or of counts when counts=True
        counts: Normalize by the total instead of requiring a sum of 1
        track: 'rational' (exact) or 'float'

    Returns:
        Validated JointPMF

    Raises:
        JointValidationError: On negative cells, shape mismatch or bad total
    """
    track = track or config.default_track
    parsed_axes = tuple(tuple(parse_coordinate(a) for a in axis) for axis in axes)
    try:
        values = _as_mass_array(mass, track)
    except Exception as e:
        raise JointValidationError(f"Cannot read mass values: {e}")
    if values.ndim != len(parsed_axes):
        raise JointValidationError(
            f"Mass array has {values.ndim} dimensions but {len(parsed_axes)} axes were given"
        )
    if counts:
        for index in np.ndindex(values.shape):
            if values[index] < 0:
                raise JointValidationError(f"Negative count {values[index]} at cell {index}", cell=index)
        total = values.sum()
        if total == 0:
            raise JointValidationError("Counts sum to zero")
        values = values / total
    return JointPMF(axes=parsed_axes, mass=values, track=track)


def joint_cdf(j: JointPMF, x: Sequence[Any]) -> Scalar:
    """Joint CDF of j at x."""
    return j.cdf(x)


def marginal(j: JointPMF, axis: int) -> Margin:
    """Marginal distribution of j along axis (0-based)."""
    return j.marginal(axis)


def from_samples(records: Sequence[Sequence[Any]]) -> JointPMF:
    """
    Empirical joint from observed d-vectors (exact relative frequencies).

    Raises:
        JointValidationError: If records are empty or ragged
    """
    if not records:
        raise JointValidationError("No records to ingest")
    dims = len(records[0])
    if any(len(r) != dims for r in records):
        raise JointValidationError("Records have inconsistent dimensions")
    parsed = [tuple(parse_coordinate(v) for v in r) for r in records]
    axes = tuple(tuple(sorted({r[k] for r in parsed})) for k in range(dims))
    positions = [{atom: i for i, atom in enumerate(axis)} for axis in axes]
    tally = Counter(tuple(positions[k][r[k]] for k in range(dims)) for r in parsed)
    n = len(parsed)
    mass = np.full(tuple(len(axis) for axis in axes), Fraction(0), dtype=object)
    for index, count in tally.items():
        mass[index] = Fraction(count, n)
    logger.debug("Ingested %d records into a %s grid", n, mass.shape)
    return JointPMF(axes=axes, mass=mass, track="rational")


def rescale(j: JointPMF, weights: Sequence[Sequence[Any]]) -> JointPMF:
    """
    Diagonal scaling: mass'(i_1..i_d) proportional to w_1[i_1]...w_d[i_d] mass(i_1..i_d).

    Raises:
        ScalingError: If a weight is not strictly positive or has the wrong length
    """
    if len(weights) != j.dims:
        raise ScalingError(f"Expected {j.dims} weight vectors, got {len(weights)}")
    scaled = j.mass.copy()
    for k, vector in enumerate(weights):
        parsed = [parse_scalar(w, j.track) for w in vector]
        if len(parsed) != len(j.axes[k]):
            raise ScalingError(f"Axis {k} needs {len(j.axes[k])} weights, got {len(parsed)}")
        if any(w <= 0 for w in parsed):
            raise ScalingError(f"Scaling weights must be strictly positive on axis {k}")
        shape = [1] * j.dims
        shape[k] = len(parsed)
        factor = np.array(parsed, dtype=object if j.track == "rational" else float).reshape(shape)
        scaled = scaled * factor
    total = scaled.sum()
    if total == 0:
        raise ScalingError("Scaled joint has zero total mass")
    return JointPMF(axes=j.axes, mass=scaled / total, track=j.track)
