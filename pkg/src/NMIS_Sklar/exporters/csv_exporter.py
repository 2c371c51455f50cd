"""
CSV exporter: flat projection of reports, joints and discrete copulas.
"""

import csv
import io
import logging
from pathlib import Path
from typing import Any, Dict, Iterable, List, Optional

import numpy as np

from .base import BaseExporter, to_jsonable
from ..core.config import config
from ..core.exception import ExporterError

logger = logging.getLogger(__name__)


def _flatten(data: Dict[str, Any], prefix: str = "") -> Dict[str, Any]:
    flat: Dict[str, Any] = {}
    for key, value in data.items():
        name = f"{prefix}{key}"
        if isinstance(value, dict):
            flat.update(_flatten(value, f"{name}."))
        elif isinstance(value, list):
            flat[name] = " ".join(str(v) for v in _walk(value))
        else:
            flat[name] = value
    return flat


def _walk(values: Iterable[Any]) -> Iterable[Any]:
    for v in values:
        if isinstance(v, list):
            yield "(" + " ".join(str(x) for x in _walk(v)) + ")"
        else:
            yield v


class CSVExporter(BaseExporter):
    """
    Flat CSV rendering.

    - objects exposing ``rows()`` (tables) give one line per row;
    - joints and discrete copulas give the long layout ``x1,...,xd,prob``;
    - any other report becomes a single ``field,value`` listing.
    """

    def __init__(self, delimiter: Optional[str] = None):
        self.delimiter = delimiter or config.csv_delimiter

    def _table(self, data: Any) -> List[List[Any]]:
        if hasattr(data, "rows"):
            return [["measure", "original", "scaled", "delta"]] + [
                [to_jsonable(v) for v in row] for row in data.rows()
            ]
        if hasattr(data, "axes") and hasattr(data, "mass"):
            dims = len(data.axes)
            table = [[f"x{k + 1}" for k in range(dims)] + ["prob"]]
            for index, value in _cells(data.mass):
                table.append(
                    [to_jsonable(data.axes[k][i]) for k, i in enumerate(index)] + [to_jsonable(value)]
                )
            return table
        flat = _flatten(to_jsonable(data))
        return [["field", "value"]] + [[k, flat[k]] for k in sorted(flat)]

    def export(self, data: Any, output_path: Optional[Path | str] = None) -> str:
        buffer = io.StringIO()
        writer = csv.writer(buffer, delimiter=self.delimiter, lineterminator="\n")
        try:
            writer.writerows(self._table(data))
        except (TypeError, ValueError, AttributeError) as e:
            raise ExporterError(f"Failed to render CSV: {e}")
        text = buffer.getvalue()
        if output_path:
            try:
                Path(output_path).write_text(text, encoding="utf-8")
            except OSError as e:
                raise ExporterError(f"Failed to write {output_path}: {e}")
            logger.info("Wrote CSV report to %s", output_path)
        return text


def _cells(mass: np.ndarray):
    for index in np.ndindex(mass.shape):
        yield index, mass[index]
