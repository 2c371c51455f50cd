from .base import BaseExporter, to_jsonable
from .csv_exporter import CSVExporter
from .factory import ExporterFactory
from .json_exporter import JSONExporter

__all__ = ["BaseExporter", "CSVExporter", "JSONExporter", "ExporterFactory", "to_jsonable"]
