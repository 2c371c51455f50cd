"""
Extending a subcopula to a copula on [0,1]^d.

Every extension locates the point's cell through ``RanSet.bracket`` on each
axis and applies a closed-form in-cell formula:

- checkerboard: multilinear interpolation of H (the cell's H-volume spread
  uniformly over the cell); any d >= 2;
- patchwork (d = 2): grid-line sections interpolated linearly, the cell's
  volume laid out along a copula shape K (M, W, or the product PI).

On axes where the point belongs to the range set the bracket degenerates
and the extension reads H directly, so a subcopula whose domain is all of
[0,1]^d is its own unique extension.
"""

import logging
import math
from dataclasses import dataclass, field
from enum import Enum
from fractions import Fraction
from itertools import product
from typing import Any, Callable, Dict, Optional, Protocol, Sequence, Tuple

import numpy as np

from ..core.config import config
from ..core.exception import DimensionError, DomainError, ExtensionError, UnsupportedOperationError
from ..core.numerics import (
    DEFAULT_POLICY,
    Scalar,
    TolerancePolicy,
    box_volume,
    is_exact,
    nonnegative,
    same_value,
)
from ..models.reports import CoincidenceResult, Report
from .subcopula import Subcopula, verify_subcopula_axioms

logger = logging.getLogger(__name__)


class CopulaLike(Protocol):
    """Anything evaluable on [0,1]^d with a known dimension."""

    dims: int

    def __call__(self, u: Sequence[Any]) -> Scalar: ...


class CopulaKind(str, Enum):
    CHECKERBOARD = "checkerboard"
    PATCHWORK_M = "patchwork_m"
    PATCHWORK_W = "patchwork_w"
    PATCHWORK_PI = "patchwork_pi"


class Fill(str, Enum):
    """Copula shape laid out inside each patchwork cell."""

    M = "M"
    W = "W"
    PI = "PI"


_FILL_SHAPES: Dict[Fill, Callable[[Any, Any], Any]] = {
    Fill.M: lambda s, t: min(s, t),
    Fill.W: lambda s, t: max(s + t - 1, 0),
    Fill.PI: lambda s, t: s * t,
}

# integral of K over the unit square
_FILL_INTEGRALS: Dict[Fill, Fraction] = {
    Fill.M: Fraction(1, 3),
    Fill.W: Fraction(1, 6),
    Fill.PI: Fraction(1, 4),
}

_PATCHWORK_KINDS = {
    Fill.M: CopulaKind.PATCHWORK_M,
    Fill.W: CopulaKind.PATCHWORK_W,
    Fill.PI: CopulaKind.PATCHWORK_PI,
}


def _check_point(u: Sequence[Any], dims: int) -> None:
    if len(u) != dims:
        raise DimensionError(f"Point has {len(u)} coordinates, copula has d={dims}")
    for x in u:
        if not 0 <= x <= 1:
            raise DomainError(f"{x} is outside [0, 1]")


def _multilinear(h: Subcopula, u: Sequence[Any], brackets: Sequence[Tuple[Any, Any]]) -> Scalar:
    factors = []
    for x, (lo, hi) in zip(u, brackets):
        if lo == hi:
            factors.append(((lo, 1),))
        else:
            w = (x - lo) / (hi - lo)
            factors.append(((lo, 1 - w), (hi, w)))
    total: Scalar = Fraction(0)
    for combo in product(*factors):
        weight = math.prod(w for _, w in combo)
        if weight:
            total += weight * h(tuple(p for p, _ in combo))
    return total


def _patchwork(
    h: Subcopula,
    u: Sequence[Any],
    brackets: Sequence[Tuple[Any, Any]],
    fill: Fill,
) -> Scalar:
    (a0, a1), (b0, b1) = brackets
    if a0 == a1 or b0 == b1:
        # degenerate cell: no fill term
        return _multilinear(h, u, brackets)
    s = (u[0] - a0) / (a1 - a0)
    t = (u[1] - b0) / (b1 - b0)
    h00, h01 = h((a0, b0)), h((a0, b1))
    h10, h11 = h((a1, b0)), h((a1, b1))
    volume = h11 - h10 - h01 + h00
    return h00 + (h01 - h00) * t + (h10 - h00) * s + volume * _FILL_SHAPES[fill](s, t)


@dataclass(frozen=True, eq=False)
class Copula:
    """
    Extension of a subcopula (its skeleton) to [0,1]^d.

    Example:
        c = extend_checkerboard(extract(joint))
        c((Fraction(1, 4), Fraction(1, 4)))
    """

    kind: CopulaKind
    skeleton: Subcopula
    fill: Optional[Fill] = None

    def __post_init__(self):
        if self.kind != CopulaKind.CHECKERBOARD:
            if self.skeleton.dims != 2:
                raise UnsupportedOperationError(
                    f"Patchwork extensions are implemented for d=2 only, got d={self.skeleton.dims}"
                )
            if self.fill is None or _PATCHWORK_KINDS[self.fill] != self.kind:
                raise ExtensionError(f"Copula kind {self.kind.value} needs a matching fill")

    @property
    def dims(self) -> int:
        return self.skeleton.dims

    @property
    def name(self) -> str:
        return self.kind.value

    def __call__(self, u: Sequence[Any]) -> Scalar:
        _check_point(u, self.dims)
        brackets = [r.bracket(x) for r, x in zip(self.skeleton.domain, u)]
        if self.kind == CopulaKind.CHECKERBOARD:
            return _multilinear(self.skeleton, u, brackets)
        return _patchwork(self.skeleton, u, brackets, self.fill)

    def to_json(self) -> Dict[str, Any]:
        return {"kind": self.kind.value, "skeleton": self.skeleton.to_json()}

    @classmethod
    def from_json(cls, data: Dict[str, Any]) -> "Copula":
        """Rebuild a copula from its descriptor."""
        try:
            kind = CopulaKind(data["kind"])
        except (KeyError, ValueError):
            raise ExtensionError(f"Unknown copula kind: {data.get('kind')!r}")
        skeleton = Subcopula.from_json(data["skeleton"])
        if kind == CopulaKind.CHECKERBOARD:
            return extend_checkerboard(skeleton)
        fill = next(f for f, k in _PATCHWORK_KINDS.items() if k == kind)
        return extend_patchwork(skeleton, fill)


@dataclass(frozen=True, eq=False)
class FunctionCopula:
    """Closed-form copula such as the independence copula PI or the bounds M and W."""

    name: str
    dims: int
    function: Callable[[Tuple[Any, ...]], Scalar] = field(repr=False)
    integral: Optional[Fraction] = None

    def __call__(self, u: Sequence[Any]) -> Scalar:
        _check_point(u, self.dims)
        return self.function(tuple(u))


def independence_copula(dims: int = 2) -> FunctionCopula:
    return FunctionCopula("independence", dims, lambda u: math.prod(u), Fraction(1, 2 ** dims))


def comonotone_copula(dims: int = 2) -> FunctionCopula:
    return FunctionCopula("comonotone", dims, min, Fraction(1, dims + 1))


def countermonotone_copula() -> FunctionCopula:
    return FunctionCopula("countermonotone", 2, lambda u: max(u[0] + u[1] - 1, 0), Fraction(1, 6))


def _require_valid(h: Subcopula) -> None:
    report = verify_subcopula_axioms(h)
    if not report.passed:
        raise ExtensionError(f"Cannot extend an invalid subcopula: {report.message}")


def extend_checkerboard(h: Subcopula, validate: bool = True) -> Copula:
    """
    Checkerboard (multilinear) extension.

    Raises:
        ExtensionError: If h fails the subcopula axioms
    """
    if validate:
        _require_valid(h)
    return Copula(kind=CopulaKind.CHECKERBOARD, skeleton=h)


def extend_patchwork(h: Subcopula, fill: Fill | str = Fill.M, validate: bool = True) -> Copula:
    """
    Patchwork extension with cells filled by M, W or PI (d = 2).

    Raises:
        UnsupportedOperationError: If d != 2
        ExtensionError: If h fails the subcopula axioms
    """
    fill = Fill(fill.upper() if isinstance(fill, str) else fill)
    if h.dims != 2:
        raise UnsupportedOperationError(f"Patchwork extensions are implemented for d=2 only, got d={h.dims}")
    if validate:
        _require_valid(h)
    return Copula(kind=_PATCHWORK_KINDS[fill], skeleton=h, fill=fill)


def _alphas(resolution: int, rng: np.random.Generator, extra: int = 8) -> list:
    values = {Fraction(i, resolution) for i in range(resolution + 1)}
    for _ in range(extra):
        values.add(_random_unit(rng))
    return sorted(values)


def _random_unit(rng: np.random.Generator) -> Fraction:
    den = int(rng.integers(2, 1001))
    return Fraction(int(rng.integers(0, den + 1)), den)


def verify_copula_axioms(
    c: CopulaLike,
    n_boxes: Optional[int] = None,
    seed: Optional[int] = None,
    policy: TolerancePolicy = DEFAULT_POLICY,
) -> Report:
    """
    Check groundedness, uniform margins and nonnegative box volumes.

    Groundedness and margins are probed on a deterministic alpha grid plus
    seeded random rationals; volumes on n_boxes seeded random boxes. All
    probes are rational, so exact copulas are checked exactly.
    """
    n_boxes = config.n_boxes if n_boxes is None else n_boxes
    seed = config.seed if seed is None else seed
    rng = np.random.default_rng(seed)
    d = c.dims
    alphas = _alphas(config.alpha_resolution, rng)
    checked = {"grounded": 0, "margins": 0, "boxes": 0}

    for k in range(d):
        for alpha in alphas:
            for rest in (alpha, Fraction(1)):
                point = [rest] * d
                point[k] = Fraction(0)
                value = c(point)
                checked["grounded"] += 1
                if not same_value(value, 0, policy):
                    return Report(
                        check="copula_axioms",
                        passed=False,
                        max_discrepancy=abs(value),
                        witness=tuple(point),
                        message=f"Not grounded on axis {k}",
                        details={"axis": k, **checked},
                    )
            point = [Fraction(1)] * d
            point[k] = alpha
            value = c(point)
            checked["margins"] += 1
            if not same_value(value, alpha, policy):
                return Report(
                    check="copula_axioms",
                    passed=False,
                    max_discrepancy=abs(value - alpha),
                    witness=tuple(point),
                    message=f"Margin condition fails on axis {k} at alpha={alpha}",
                    details={"axis": k, "alpha": alpha, "value": value, **checked},
                )

    for _ in range(n_boxes):
        lower, upper = [], []
        for _k in range(d):
            a, b = sorted((_random_unit(rng), _random_unit(rng)))
            lower.append(a)
            upper.append(b)
        volume = box_volume(c, lower, upper)
        checked["boxes"] += 1
        if not nonnegative(volume, policy):
            return Report(
                check="copula_axioms",
                passed=False,
                max_discrepancy=-volume,
                witness=(tuple(lower), tuple(upper)),
                message=f"Negative volume {volume}",
                details={"volume": volume, **checked},
            )

    logger.info("Copula axioms hold on %s", checked)
    return Report(check="copula_axioms", passed=True, details={"seed": seed, **checked})


def verify_grid_agreement(
    c: Copula,
    resolution: Optional[int] = None,
    policy: TolerancePolicy = DEFAULT_POLICY,
) -> Report:
    """Check C = H on every skeleton grid point (lattice of the domain when lazy)."""
    h = c.skeleton
    lattice = h.lattice(resolution)
    worst, witness, probes = None, None, 0
    for u in product(*lattice):
        probes += 1
        discrepancy = abs(c(u) - h(u))
        if worst is None or discrepancy > worst:
            worst, witness = discrepancy, u
    passed = bool(worst == 0 if is_exact(worst) else worst <= policy.abs_tol)
    return Report(
        check="grid_agreement",
        passed=passed,
        max_discrepancy=worst,
        witness=None if passed else witness,
        message="" if passed else "Extension departs from its skeleton on the grid",
        details={"kind": c.kind.value, "probes": probes},
    )


def extensions_coincide(
    c1: CopulaLike,
    c2: CopulaLike,
    resolution: Optional[int] = None,
) -> CoincidenceResult:
    """
    Largest |c1 - c2| over the lattice {i/resolution}^d, with the first
    lattice point (lexicographic) attaining it.
    """
    if c1.dims != c2.dims:
        raise DimensionError(f"Copulas have d={c1.dims} and d={c2.dims}")
    resolution = resolution or config.probe_resolution
    axis = [Fraction(i, resolution) for i in range(resolution + 1)]
    worst, witness, values = None, None, (None, None)
    probes = 0
    for u in product(axis, repeat=c1.dims):
        probes += 1
        v1, v2 = c1(u), c2(u)
        difference = abs(v1 - v2)
        if worst is None or difference > worst:
            worst, witness, values = difference, u, (v1, v2)
    logger.info("Extensions differ by at most %s (at %s)", worst, witness)
    return CoincidenceResult(
        max_difference=worst,
        witness=witness,
        first_value=values[0],
        second_value=values[1],
        resolution=resolution,
        probes=probes,
    )


def copula_integral(c: CopulaLike) -> Scalar:
    """
    Closed-form integral of c over [0,1]^d.

    Checkerboard: each cell contributes its volume times the mean of its
    corner values. Patchwork: linear part plus cell H-volume times the
    integral of the fill shape.

    Raises:
        UnsupportedOperationError: For lazy skeletons or unknown evaluators
    """
    if isinstance(c, FunctionCopula):
        if c.integral is None:
            raise UnsupportedOperationError(f"No closed-form integral for {c.name}")
        return c.integral
    if not isinstance(c, Copula) or not c.skeleton.is_materialized:
        raise UnsupportedOperationError("Closed-form integral needs a finite skeleton")
    grid, table = c.skeleton.grid, c.skeleton.table
    widths = [np.diff(np.array(points, dtype=object)) for points in grid]
    area = widths[0]
    for w in widths[1:]:
        area = np.multiply.outer(area, w)

    if c.kind == CopulaKind.CHECKERBOARD:
        means = table
        for k in range(c.dims):
            n = means.shape[k]
            means = (np.take(means, range(n - 1), axis=k) + np.take(means, range(1, n), axis=k)) / 2
        return (means * area).sum()

    h00, h01 = table[:-1, :-1], table[:-1, 1:]
    h10, h11 = table[1:, :-1], table[1:, 1:]
    volume = h11 - h10 - h01 + h00
    cells = (h01 + h10) / 2 + volume * _FILL_INTEGRALS[c.fill]
    return (cells * area).sum()
