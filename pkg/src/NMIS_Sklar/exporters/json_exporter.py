"""
JSON exporter: the canonical report format.
"""

import json
import logging
from pathlib import Path
from typing import Any, Optional

from .base import BaseExporter, to_jsonable
from ..core.config import config
from ..core.exception import ExporterError

logger = logging.getLogger(__name__)


class JSONExporter(BaseExporter):
    """
    Deterministic JSON: stable key order, fixed indent, trailing newline.

    Example:
        text = JSONExporter().export(report)
    """

    def __init__(self, indent: Optional[int] = None):
        self.indent = config.json_indent if indent is None else indent

    def export(self, data: Any, output_path: Optional[Path | str] = None) -> str:
        try:
            text = json.dumps(to_jsonable(data), indent=self.indent, sort_keys=True, allow_nan=False) + "\n"
        except (TypeError, ValueError) as e:
            raise ExporterError(f"Failed to serialize report: {e}")
        if output_path:
            try:
                Path(output_path).write_text(text, encoding="utf-8")
            except OSError as e:
                raise ExporterError(f"Failed to write {output_path}: {e}")
            logger.info("Wrote JSON report to %s", output_path)
        return text
