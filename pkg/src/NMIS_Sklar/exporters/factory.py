"""
Exporter Factory for creating report writers.
"""

from typing import Any, Dict, Type

from .base import BaseExporter
from .csv_exporter import CSVExporter
from .json_exporter import JSONExporter
from ..core.exception import ExporterError


class ExporterFactory:
    """Factory for creating exporters."""

    _exporters: Dict[str, Type[BaseExporter]] = {
        "json": JSONExporter,
        "csv": CSVExporter,
    }

    @classmethod
    def create(cls, exporter_type: str, **kwargs: Any) -> BaseExporter:
        """
        Create an exporter instance.

        Args:
            exporter_type: 'json' or 'csv'
            **kwargs: Arguments to pass to exporter constructor

        Raises:
            ExporterError: If the exporter type is unknown
        """
        exporter_type = exporter_type.lower()
        if exporter_type not in cls._exporters:
            available = ", ".join(cls._exporters.keys())
            raise ExporterError(
                f"Unknown output format: '{exporter_type}'. Available: {available}"
            )
        return cls._exporters[exporter_type](**kwargs)

    @classmethod
    def register(cls, name: str, exporter_class: Type[BaseExporter]) -> None:
        """Register a new exporter type."""
        cls._exporters[name.lower()] = exporter_class

    @classmethod
    def list_exporters(cls) -> list:
        """List available exporter types."""
        return sorted(cls._exporters.keys())
