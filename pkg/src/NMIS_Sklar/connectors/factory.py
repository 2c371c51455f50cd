"""
Connector Factory for creating joint-distribution readers.

Provides a factory pattern to instantiate connectors by input format name.
"""

from pathlib import Path
from typing import Any, Dict, Type

from .base import BaseConnector
from .csv_connector import CSV2DConnector, CSVLongConnector
from .excel_connector import ExcelConnector
from .json_connector import JSONConnector
from ..core.exception import ConnectorError


class ConnectorFactory:
    """Factory for creating data connectors."""

    _connectors: Dict[str, Type[BaseConnector]] = {
        "csv2d": CSV2DConnector,
        "csv-long": CSVLongConnector,
        "json": JSONConnector,
        "excel": ExcelConnector,
    }

    _suffixes: Dict[str, str] = {
        ".json": "json",
        ".xlsx": "excel",
        ".csv": "csv2d",
    }

    @classmethod
    def create(cls, connector_type: str, **kwargs: Any) -> BaseConnector:
        """
        Create a connector instance.

        Args:
            connector_type: 'csv2d', 'csv-long', 'json' or 'excel'
            **kwargs: Arguments to pass to the connector constructor

        Raises:
            ConnectorError: If the connector type is unknown
        """
        connector_type = connector_type.lower()
        if connector_type not in cls._connectors:
            available = ", ".join(cls._connectors.keys())
            raise ConnectorError(
                f"Unknown input format: '{connector_type}'. Available: {available}"
            )
        return cls._connectors[connector_type](**kwargs)

    @classmethod
    def detect(cls, source: Path | str) -> str:
        """Input format from the file suffix (CSV defaults to the 2D layout)."""
        suffix = Path(source).suffix.lower()
        if suffix not in cls._suffixes:
            raise ConnectorError(f"Cannot infer the input format of '{source}'; pass --format")
        return cls._suffixes[suffix]

    @classmethod
    def register(cls, name: str, connector_class: Type[BaseConnector]) -> None:
        """Register a new connector type."""
        cls._connectors[name.lower()] = connector_class

    @classmethod
    def list_connectors(cls) -> list:
        """List available connector types."""
        return list(cls._connectors.keys())
