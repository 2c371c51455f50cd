"""
Base exporter protocol and the JSON-ready value conversion shared by all
exporters.
"""

import math
from abc import ABC, abstractmethod
from enum import Enum
from fractions import Fraction
from pathlib import Path
from typing import Any, Optional

import numpy as np
from pydantic import BaseModel

from ..core.numerics import format_scalar


def to_jsonable(value: Any) -> Any:
    """
    Convert report content into plain JSON values.

    Fractions become "num/den", infinities "inf"/"-inf", tuples and arrays
    lists; objects with a ``to_json`` method are asked for their own form.
    """
    if hasattr(value, "to_json") and not isinstance(value, type):
        return to_jsonable(value.to_json())
    if isinstance(value, BaseModel):
        fields = type(value).model_fields
        return {name: to_jsonable(getattr(value, name)) for name, f in fields.items() if not f.exclude}
    if isinstance(value, dict):
        return {str(k): to_jsonable(v) for k, v in value.items()}
    if isinstance(value, (list, tuple)):
        return [to_jsonable(v) for v in value]
    if isinstance(value, np.ndarray):
        return [to_jsonable(v) for v in value.tolist()]
    if isinstance(value, np.generic):
        return to_jsonable(value.item())
    if isinstance(value, Enum):
        return value.value
    if isinstance(value, bool) or value is None or isinstance(value, (int, str)):
        return value
    if isinstance(value, (Fraction, float)):
        return format_scalar(value) if isinstance(value, Fraction) or math.isinf(value) else value
    return str(value)


class BaseExporter(ABC):
    """Abstract base class for report exporters."""

    @abstractmethod
    def export(
        self,
        data: Any,
        output_path: Optional[Path | str] = None
    ) -> str:
        """
        Render data in the target format.

        Args:
            data: Report, model or plain mapping to export
            output_path: Path to write output (optional)

        Returns:
            Rendered text

        Raises:
            ExporterError: If the data cannot be rendered or written
        """
        pass
