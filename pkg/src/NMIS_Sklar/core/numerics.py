"""
Scalar arithmetic kernel.

Two tracks live side by side:

- the exact track uses ``fractions.Fraction`` and is where every algebraic
  identity of the package is checked (equality means equality);
- the float track uses ``float`` together with a ``TolerancePolicy`` and is
  where iterative fitting and quadrature run.

A ``Scalar`` is either of the two. Helpers here never silently move a value
from one track to the other.
"""

import math
from fractions import Fraction
from itertools import product
from typing import Any, Callable, Iterable, Literal, Sequence, Tuple, Union

from pydantic import BaseModel, ConfigDict, PositiveFloat

from .exception import NumericsError

Scalar = Union[Fraction, float]
Coordinate = Union[int, Fraction, float]
Track = Literal["rational", "float"]

INF = math.inf
NEG_INF = -math.inf


class TolerancePolicy(BaseModel):
    """Tolerances used on the float track."""

    model_config = ConfigDict(frozen=True)

    abs_tol: PositiveFloat = 1e-12
    ipf_margin_tol: PositiveFloat = 1e-10
    quadrature_rel_tol: PositiveFloat = 1e-8


DEFAULT_POLICY = TolerancePolicy()


def rational(num: int, den: int) -> Fraction:
    """
    Build an exact rational in lowest terms.

    Args:
        num: Numerator
        den: Denominator (non-zero)

    Returns:
        Canonical Fraction, sign carried by the numerator

    Raises:
        NumericsError: If den is zero
    """
    if den == 0:
        raise NumericsError(f"Zero denominator in rational({num}, {den})")
    return Fraction(int(num), int(den))


def approx_eq(a: float, b: float, policy: TolerancePolicy = DEFAULT_POLICY) -> bool:
    """True iff |a - b| <= policy.abs_tol. Both inputs must be finite."""
    if not (math.isfinite(a) and math.isfinite(b)):
        raise NumericsError(f"approx_eq needs finite inputs, got {a!r} and {b!r}")
    return bool(abs(a - b) <= policy.abs_tol)


def is_exact(value: Any) -> bool:
    """True for values living on the exact track."""
    return isinstance(value, (Fraction, int)) and not isinstance(value, bool)


def track_of(values: Iterable[Any]) -> Track:
    """'rational' when every value is exact, 'float' otherwise."""
    return "rational" if all(is_exact(v) for v in values) else "float"


def zero(track: Track) -> Scalar:
    return Fraction(0) if track == "rational" else 0.0


def one(track: Track) -> Scalar:
    return Fraction(1) if track == "rational" else 1.0


def parse_scalar(value: Any, track: Track = "rational") -> Scalar:
    """
    Parse a probability-like value onto a track.

    Accepts Fraction, int, float and strings such as "2/5", "0.4" or "1".
    On the rational track decimal text is read exactly ("0.1" is 1/10).

    Raises:
        NumericsError: If the value cannot be parsed
    """
    if isinstance(value, bool):
        raise NumericsError(f"Boolean is not a scalar: {value!r}")
    try:
        if track == "rational":
            if isinstance(value, Fraction):
                return value
            if isinstance(value, float):
                if not math.isfinite(value):
                    raise NumericsError(f"Non-finite scalar: {value!r}")
                # shortest repr, so 0.1 reads as 1/10
                return Fraction(repr(value))
            if isinstance(value, int):
                return Fraction(value)
            return Fraction(str(value).strip())
        if isinstance(value, str):
            return float(Fraction(value.strip()))
        result = float(value)
    except (ValueError, ZeroDivisionError, TypeError) as e:
        raise NumericsError(f"Cannot parse scalar {value!r}: {e}")
    if not math.isfinite(result):
        raise NumericsError(f"Non-finite scalar: {value!r}")
    return result


def parse_coordinate(value: Any) -> Coordinate:
    """
    Parse an atom coordinate: int when integral text, else an exact Fraction.

    Floats passed in directly are kept as floats.
    """
    if isinstance(value, bool):
        raise NumericsError(f"Boolean is not a coordinate: {value!r}")
    if isinstance(value, (int, Fraction, float)):
        return value
    text = str(value).strip()
    if text in ("inf", "+inf"):
        return INF
    if text == "-inf":
        return NEG_INF
    try:
        return int(text)
    except ValueError:
        pass
    try:
        parsed = Fraction(text)
    except (ValueError, ZeroDivisionError):
        raise NumericsError(f"Cannot parse coordinate {value!r}")
    return int(parsed) if parsed.denominator == 1 else parsed


def format_scalar(value: Any) -> Any:
    """JSON-ready form: Fraction -> "num/den", ±inf -> "inf"/"-inf", others unchanged."""
    if isinstance(value, Fraction):
        return f"{value.numerator}/{value.denominator}"
    if isinstance(value, float) and math.isinf(value):
        return "inf" if value > 0 else "-inf"
    return value


def box_volume(
    fn: Callable[[Tuple[Any, ...]], Scalar],
    lower: Sequence[Any],
    upper: Sequence[Any],
) -> Scalar:
    """
    Inclusion-exclusion volume of fn over the box [lower, upper].

    Sums fn at the 2^d corners with sign (-1)^(number of lower coordinates).
    """
    if len(lower) != len(upper):
        raise NumericsError("Box corners have different dimensions")
    total: Scalar = 0
    for choice in product((0, 1), repeat=len(lower)):
        corner = tuple(upper[k] if c else lower[k] for k, c in enumerate(choice))
        sign = -1 if (len(choice) - sum(choice)) % 2 else 1
        total += sign * fn(corner)
    return total


def nonnegative(value: Scalar, policy: TolerancePolicy = DEFAULT_POLICY) -> bool:
    """Exact sign test on the rational track, tolerant test on the float track."""
    if is_exact(value):
        return value >= 0
    return value >= -policy.abs_tol


def same_value(a: Scalar, b: Scalar, policy: TolerancePolicy = DEFAULT_POLICY) -> bool:
    """Exact equality when both are exact, approx_eq otherwise."""
    if is_exact(a) and is_exact(b):
        return a == b
    return approx_eq(float(a), float(b), policy)
