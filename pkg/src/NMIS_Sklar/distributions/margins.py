"""
Univariate distribution functions.

A ``Margin`` is either a discrete distribution (finitely many atoms) or a
continuous piecewise-linear CDF. Both are evaluated on the extended real
line, expose the generalized inverse and their range set ``Ran F``.
"""

import logging
from bisect import bisect_left, bisect_right
from fractions import Fraction
from typing import Any, Dict, Literal, Optional, Tuple

from pydantic import BaseModel, ConfigDict, PrivateAttr, model_validator

from ..core.config import config
from ..core.exception import DomainError, MarginError
from ..core.numerics import (
    INF,
    NEG_INF,
    Coordinate,
    Scalar,
    Track,
    format_scalar,
    is_exact,
    one,
    parse_coordinate,
    parse_scalar,
    track_of,
    zero,
)

logger = logging.getLogger(__name__)


class RanSet(BaseModel):
    """
    Range set of a CDF: finitely many points plus closed intervals of [0,1].

    Always contains 0 and 1.
    """

    model_config = ConfigDict(frozen=True, arbitrary_types_allowed=True)

    points: Tuple[Scalar, ...]
    intervals: Tuple[Tuple[Scalar, Scalar], ...] = ()

    @model_validator(mode="after")
    def _check(self) -> "RanSet":
        if not self.points or self.points[0] != 0 or self.points[-1] != 1:
            raise MarginError("Ran set must contain 0 and 1 as extreme points")
        if any(b <= a for a, b in zip(self.points, self.points[1:])):
            raise MarginError("Ran set points must be strictly increasing")
        previous_hi = None
        for lo, hi in self.intervals:
            if not (0 <= lo < hi <= 1):
                raise MarginError(f"Invalid Ran interval [{lo}, {hi}]")
            if previous_hi is not None and lo <= previous_hi:
                raise MarginError("Ran intervals must be disjoint and sorted")
            previous_hi = hi
        return self

    def contains(self, u: Any) -> bool:
        """Exact membership test."""
        if any(lo <= u <= hi for lo, hi in self.intervals):
            return True
        i = bisect_left(self.points, u)
        return i < len(self.points) and self.points[i] == u

    def bracket(self, u: Any) -> Tuple[Any, Any]:
        """
        Closest members of the set below and above u.

        Returns (u, u) when u itself belongs to the set.
        """
        if not 0 <= u <= 1:
            raise DomainError(f"{u} is outside [0, 1]")
        if self.contains(u):
            return u, u
        i = bisect_right(self.points, u)
        below, above = self.points[i - 1], self.points[i]
        for lo, hi in self.intervals:
            if below < hi < u:
                below = hi
            if u < lo < above:
                above = lo
        return below, above

    def is_full(self) -> bool:
        """True when the set is all of [0, 1]."""
        return any(lo == 0 and hi == 1 for lo, hi in self.intervals)

    def is_finite(self) -> bool:
        return not self.intervals

    def lattice(self, resolution: Optional[int] = None) -> Tuple[Scalar, ...]:
        """
        Finite probe set: all points plus the multiples of 1/resolution that
        fall inside an interval.
        """
        if self.is_finite():
            return self.points
        resolution = resolution or config.lazy_resolution
        members = set(self.points)
        for lo, hi in self.intervals:
            members.add(lo)
            members.add(hi)
            for i in range(resolution + 1):
                t = Fraction(i, resolution)
                if lo <= t <= hi:
                    members.add(t)
        return tuple(sorted(members))

    def to_json(self) -> Dict[str, Any]:
        return {
            "points": [format_scalar(p) for p in self.points],
            "intervals": [[format_scalar(lo), format_scalar(hi)] for lo, hi in self.intervals],
        }


UNIT_INTERVAL = RanSet(points=(Fraction(0), Fraction(1)), intervals=((Fraction(0), Fraction(1)),))


class Margin(BaseModel):
    """
    Univariate distribution function.

    Discrete margins carry strictly increasing atoms with strictly positive
    masses; piecewise-linear margins carry breakpoints (x, F(x)) with x
    strictly increasing, F nondecreasing from 0 to 1.

    Example:
        coin = Margin.discrete([0, 1], ["1/2", "1/2"])
        coin.cdf(0)          # Fraction(1, 2)
        coin.quantile("3/4") # 1
    """

    model_config = ConfigDict(frozen=True, arbitrary_types_allowed=True)

    kind: Literal["discrete", "piecewise_linear"]
    atoms: Tuple[Coordinate, ...] = ()
    masses: Tuple[Scalar, ...] = ()
    breakpoints: Tuple[Tuple[Coordinate, Scalar], ...] = ()

    _levels: Tuple[Scalar, ...] = PrivateAttr(default=())

    @model_validator(mode="after")
    def _check(self) -> "Margin":
        if self.kind == "discrete":
            self._check_discrete()
        else:
            self._check_piecewise_linear()
        return self

    def _check_discrete(self) -> None:
        if not self.atoms or len(self.atoms) != len(self.masses):
            raise MarginError("Discrete margin needs as many masses as atoms (at least one)")
        if any(b <= a for a, b in zip(self.atoms, self.atoms[1:])):
            raise MarginError("Discrete atoms must be strictly increasing")
        for atom, mass in zip(self.atoms, self.masses):
            if not mass > 0:
                raise MarginError(f"Mass at atom {atom} must be strictly positive, got {mass}")
        total = sum(self.masses)
        track = self.track
        if track == "rational":
            if total != 1:
                raise MarginError(f"Masses sum to {total}, expected exactly 1")
        elif abs(total - 1) > config.tolerance.abs_tol:
            raise MarginError(f"Masses sum to {total!r}, expected 1 within tolerance")
        levels = []
        running = zero(track)
        for mass in self.masses[:-1]:
            running += mass
            levels.append(running)
        levels.append(one(track))
        self._levels = tuple(levels)

    def _check_piecewise_linear(self) -> None:
        if len(self.breakpoints) < 2:
            raise MarginError("Piecewise-linear margin needs at least two breakpoints")
        xs = [x for x, _ in self.breakpoints]
        fs = [f for _, f in self.breakpoints]
        if any(b <= a for a, b in zip(xs, xs[1:])):
            raise MarginError("Breakpoint abscissae must be strictly increasing")
        if any(b < a for a, b in zip(fs, fs[1:])):
            raise MarginError("Breakpoint CDF values must be nondecreasing")
        if fs[0] != 0 or fs[-1] != 1:
            raise MarginError("Piecewise-linear CDF must start at 0 and end at 1")
        self._levels = tuple(fs)

    @classmethod
    def discrete(cls, atoms, masses, track: Optional[Track] = None) -> "Margin":
        """Build a discrete margin, parsing masses such as "2/5"."""
        if track is None:
            track = "float" if any(isinstance(m, float) for m in masses) else "rational"
        return cls(
            kind="discrete",
            atoms=tuple(parse_coordinate(a) for a in atoms),
            masses=tuple(parse_scalar(m, track) for m in masses),
        )

    @classmethod
    def piecewise_linear(cls, breakpoints) -> "Margin":
        """Build a continuous margin from (x, F(x)) pairs."""
        track: Track = "float" if any(isinstance(v, float) for bp in breakpoints for v in bp) else "rational"
        return cls(
            kind="piecewise_linear",
            breakpoints=tuple(
                (parse_coordinate(x), parse_scalar(f, track)) for x, f in breakpoints
            ),
        )

    @classmethod
    def uniform(cls) -> "Margin":
        """Uniform distribution on [0, 1]."""
        return cls.piecewise_linear([(0, 0), (1, 1)])

    @property
    def track(self) -> Track:
        if self.kind == "discrete":
            return track_of(self.masses)
        return track_of(f for _, f in self.breakpoints)

    @property
    def is_discrete(self) -> bool:
        return self.kind == "discrete"

    @property
    def levels(self) -> Tuple[Scalar, ...]:
        """Cumulative values at the atoms (discrete) or breakpoints."""
        return self._levels

    def cdf(self, x: Any) -> Scalar:
        """F(x) on the extended real line; right-continuous."""
        track = self.track
        if x == NEG_INF:
            return zero(track)
        if x == INF:
            return one(track)
        if self.kind == "discrete":
            i = bisect_right(self.atoms, x)
            return zero(track) if i == 0 else self._levels[i - 1]
        xs = [bx for bx, _ in self.breakpoints]
        if x <= xs[0]:
            return zero(track)
        if x >= xs[-1]:
            return one(track)
        i = bisect_right(xs, x)
        (x0, f0), (x1, f1) = self.breakpoints[i - 1], self.breakpoints[i]
        return f0 + (f1 - f0) * (x - x0) / (x1 - x0)

    def quantile(self, u: Any) -> Coordinate:
        """
        Generalized inverse inf{x : F(x) >= u}.

        quantile(0) is -inf by the inf convention.

        Raises:
            DomainError: If u is outside [0, 1]
        """
        if isinstance(u, str):
            u = parse_scalar(u, self.track)
        if not 0 <= u <= 1:
            raise DomainError(f"Quantile level {u} is outside [0, 1]")
        if u == 0:
            return NEG_INF
        i = bisect_left(self._levels, u)
        if self.kind == "discrete":
            return self.atoms[i]
        (x0, f0), (x1, f1) = self.breakpoints[i - 1], self.breakpoints[i]
        return x0 + (u - f0) * (x1 - x0) / (f1 - f0)

    def ran(self) -> RanSet:
        """The set of values taken by F over the extended reals."""
        if self.kind == "piecewise_linear":
            return UNIT_INTERVAL
        return RanSet(points=(zero(self.track),) + self._levels)

    def pit_distribution(self) -> "Margin":
        """Distribution of F(X) for X drawn from this margin."""
        if self.kind == "piecewise_linear":
            # continuous F pushes X forward to the uniform law
            return Margin.uniform()
        return Margin(kind="discrete", atoms=self._levels, masses=self.masses)

    def to_json(self) -> Dict[str, Any]:
        if self.kind == "discrete":
            return {
                "kind": "discrete",
                "atoms": [format_scalar(a) for a in self.atoms],
                "masses": [format_scalar(m) for m in self.masses],
            }
        return {
            "kind": "piecewise_linear",
            "breakpoints": [[format_scalar(x), format_scalar(f)] for x, f in self.breakpoints],
        }

    @classmethod
    def from_json(cls, data: Dict[str, Any]) -> "Margin":
        """Build a margin from its JSON schema."""
        kind = data.get("kind")
        if kind == "discrete":
            return cls.discrete(data["atoms"], data["masses"])
        if kind == "piecewise_linear":
            return cls.piecewise_linear(data["breakpoints"])
        raise MarginError(f"Unknown margin kind: {kind!r}")


def cdf(m: Margin, x: Any) -> Scalar:
    """F(x) for margin m."""
    return m.cdf(x)


def quantile(m: Margin, u: Any) -> Coordinate:
    """Generalized inverse of margin m at level u."""
    return m.quantile(u)


def ran(m: Margin) -> RanSet:
    """Range set of margin m."""
    return m.ran()


def pit_distribution(m: Margin) -> Margin:
    """Distribution of m's probability integral transform."""
    return m.pit_distribution()
