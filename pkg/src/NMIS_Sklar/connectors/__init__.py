from .base import BaseConnector
from .csv_connector import CSV2DConnector, CSVLongConnector
from .excel_connector import ExcelConnector
from .factory import ConnectorFactory
from .json_connector import JSONConnector, load_margins, read_json

__all__ = [
    "BaseConnector",
    "CSV2DConnector",
    "CSVLongConnector",
    "ExcelConnector",
    "JSONConnector",
    "ConnectorFactory",
    "load_margins",
    "read_json",
]
