"""
Verification report models.

Every check in the package returns a ``Report`` instead of raising when the
property under test fails; the witness makes the failure reproducible.
"""

from typing import Any, Dict, Optional, Tuple

from pydantic import BaseModel, ConfigDict, Field

from ..core.numerics import Scalar


class Report(BaseModel):
    """Outcome of one verification."""

    model_config = ConfigDict(frozen=True, arbitrary_types_allowed=True)

    check: str = Field(description="Name of the verified property")
    passed: bool
    max_discrepancy: Optional[Scalar] = Field(
        default=None,
        description="Largest violation observed (0 on the exact track when passed)",
    )
    witness: Optional[Tuple[Any, ...]] = Field(
        default=None,
        description="Point, cell or box at which the worst violation occurs",
    )
    message: str = ""
    details: Dict[str, Any] = Field(default_factory=dict)

    def __bool__(self) -> bool:
        return self.passed


class CoincidenceResult(BaseModel):
    """Largest pointwise difference between two copulas on a probe lattice."""

    model_config = ConfigDict(frozen=True, arbitrary_types_allowed=True)

    max_difference: Scalar
    witness: Tuple[Any, ...]
    first_value: Scalar
    second_value: Scalar
    resolution: int
    probes: int


class CommandResult(BaseModel):
    """
    Outcome of one bridge command: a JSON-ready payload plus the verdict the
    CLI turns into its exit code.
    """

    model_config = ConfigDict(frozen=True, arbitrary_types_allowed=True)

    command: str
    passed: bool = True
    payload: Dict[str, Any] = Field(default_factory=dict)
    table: Optional[Any] = Field(default=None, exclude=True, description="Object for CSV projection")

    def to_json(self) -> Dict[str, Any]:
        return {"command": self.command, "passed": self.passed, **self.payload}
