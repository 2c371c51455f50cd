"""
Excel connector for bivariate contingency tables (.xlsx).
"""

import logging
from pathlib import Path
from typing import Any, List, Optional

from openpyxl import load_workbook

from .base import BaseConnector, check_rectangular
from ..core.exception import ConnectorError
from ..core.numerics import Track, parse_coordinate
from ..distributions.joint import JointPMF

logger = logging.getLogger(__name__)


class ExcelConnector(BaseConnector):
    """
    Same layout as the 2D CSV: atom labels across the header row and down
    the first column, cell values in the body.

    Numeric cells arrive as int or float; text cells such as "2/5" are
    parsed exactly.

    Example:
        joint = ExcelConnector(sheet_name="pA").load("tables.xlsx")
    """

    def __init__(
        self,
        sheet_name: Optional[str] = None,
        header_row: int = 1,
        counts: bool = False,
        track: Optional[Track] = None,
    ):
        """
        Args:
            sheet_name: Sheet to read (active sheet if None)
            header_row: Row number holding the axis-1 labels (1-indexed)
        """
        super().__init__(counts=counts, track=track)
        self.sheet_name = sheet_name
        self.header_row = header_row

    def parse(self, source: Path | str) -> List[List[Any]]:
        try:
            wb = load_workbook(Path(source), read_only=True, data_only=True)
        except FileNotFoundError:
            raise ConnectorError(f"Excel file not found: {source}")
        except Exception as e:
            raise ConnectorError(f"Failed to open Excel file: {e}")
        try:
            if self.sheet_name:
                if self.sheet_name not in wb.sheetnames:
                    raise ConnectorError(
                        f"Sheet '{self.sheet_name}' not found. Available: {wb.sheetnames}"
                    )
                sheet = wb[self.sheet_name]
            else:
                sheet = wb.active
            rows = []
            for row in sheet.iter_rows(min_row=self.header_row, values_only=True):
                if all(cell is None for cell in row):
                    continue
                rows.append(list(row))
        finally:
            wb.close()
        if not rows:
            raise ConnectorError("No table found in Excel sheet")
        # trailing empty columns
        width = max(max((i + 1 for i, v in enumerate(r) if v is not None), default=0) for r in rows)
        return [r[:width] for r in rows]

    def load(self, source: Path | str) -> JointPMF:
        rows = self.parse(source)
        if len(rows) < 2 or len(rows[0]) < 2:
            raise ConnectorError("A 2D table needs a header row and a label column")
        header, body = rows[0], rows[1:]
        check_rectangular(body, len(header))
        try:
            columns = [parse_coordinate(v) for v in header[1:]]
            index = [parse_coordinate(row[0]) for row in body]
        except Exception as e:
            raise ConnectorError(f"Bad atom label: {e}")
        mass = [[0 if v is None else v for v in row[1:]] for row in body]
        logger.debug("Read a %dx%d sheet from %s", len(index), len(columns), source)
        return self._build([index, columns], mass)
