import csv
import logging
from pathlib import Path
from typing import Any, List, Optional

import numpy as np

from .base import BaseConnector, check_rectangular
from ..core.config import config
from ..core.exception import ConnectorError
from ..core.numerics import Track, parse_coordinate
from ..distributions.joint import JointPMF

logger = logging.getLogger(__name__)


class _CSVReader(BaseConnector):

    def __init__(
        self,
        delimiter: Optional[str] = None,
        encoding: Optional[str] = None,
        counts: bool = False,
        track: Optional[Track] = None,
    ):
        """
        Args:
            delimiter: Column delimiter (auto-detect if None)
            encoding: File encoding (default from config)
            counts: Cells hold counts to be normalized
            track: 'rational' (exact) or 'float'
        """
        super().__init__(counts=counts, track=track)
        self.delimiter = delimiter
        self.encoding = encoding or config.csv_encoding

    def parse(self, source: Path | str) -> List[List[str]]:
        """
        Read the CSV file as stripped rows, skipping blank lines.

        Raises:
            ConnectorError: If the file is missing or unreadable
        """
        try:
            with open(Path(source), "r", encoding=self.encoding, newline="") as f:
                delimiter = self.delimiter
                if delimiter is None:
                    sample = f.read(4096)
                    f.seek(0)
                    try:
                        delimiter = csv.Sniffer().sniff(sample, delimiters=",;\t").delimiter
                    except csv.Error:
                        delimiter = config.csv_delimiter
                rows = [
                    [cell.strip() for cell in row]
                    for row in csv.reader(f, delimiter=delimiter)
                    if any(cell.strip() for cell in row)
                ]
        except FileNotFoundError:
            raise ConnectorError(f"CSV file not found: {source}")
        except (OSError, UnicodeDecodeError, csv.Error) as e:
            raise ConnectorError(f"Failed to parse CSV: {e}")
        if not rows:
            raise ConnectorError(f"CSV file is empty: {source}")
        return rows

    def get_schema(self) -> dict:
        schema = super().get_schema()
        schema.update({"delimiter": self.delimiter or "(sniffed)", "encoding": self.encoding})
        return schema


class CSV2DConnector(_CSVReader):
    """
    Bivariate contingency table.

    The first row holds the axis-1 atom labels (top-left cell ignored), the
    first column the axis-0 atom labels; remaining cells are probabilities
    (or counts with ``counts=True``).

    Example:
        joint = CSV2DConnector().load("pA.csv")
    """

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
        mass = [row[1:] for row in body]
        logger.debug("Read a %dx%d table from %s", len(index), len(columns), source)
        return self._build([index, columns], mass)


class CSVLongConnector(_CSVReader):
    """
    Long-format joint for any d: header ``x1,...,xd,prob``, one cell per row.

    Cells missing from the file carry zero mass; a cell may appear once.
    """

    def load(self, source: Path | str) -> JointPMF:
        rows = self.parse(source)
        header, body = rows[0], rows[1:]
        if len(header) < 3 or header[-1].lower() not in ("prob", "p", "mass", "count"):
            raise ConnectorError("Long CSV needs a header x1,...,xd,prob")
        check_rectangular(body, len(header))
        dims = len(header) - 1
        try:
            cells = [tuple(parse_coordinate(v) for v in row[:dims]) for row in body]
        except Exception as e:
            raise ConnectorError(f"Bad atom coordinate: {e}")
        axes = [sorted({cell[k] for cell in cells}) for k in range(dims)]
        positions = [{atom: i for i, atom in enumerate(axis)} for axis in axes]
        mass: Any = np.full(tuple(len(a) for a in axes), "0", dtype=object)
        seen = set()
        for cell, row in zip(cells, body):
            if cell in seen:
                raise ConnectorError(f"Long CSV lists cell {cell} more than once")
            seen.add(cell)
            mass[tuple(positions[k][x] for k, x in enumerate(cell))] = row[-1]
        logger.debug("Read %d cells on a %s grid from %s", len(body), mass.shape, source)
        return self._build(axes, mass.tolist())
