"""
JSON connector for joints, margin lists and copula descriptors.
"""

import json
import logging
from pathlib import Path
from typing import Any, List

from .base import BaseConnector
from ..core.exception import ConnectorError, SklarError
from ..distributions.joint import JointPMF
from ..distributions.margins import Margin

logger = logging.getLogger(__name__)


def read_json(source: Path | str) -> Any:
    """
    Load a JSON document from a file.

    Raises:
        ConnectorError: If the file is missing or not valid JSON
    """
    try:
        with open(Path(source), "r", encoding="utf-8") as f:
            return json.load(f)
    except FileNotFoundError:
        raise ConnectorError(f"JSON file not found: {source}")
    except (OSError, json.JSONDecodeError) as e:
        raise ConnectorError(f"Failed to parse JSON: {e}")


class JSONConnector(BaseConnector):
    """
    Joint in the package JSON schema::

        {"dims": 2, "axes": [[0, 1], [0, 1]],
         "mass": {"format": "dense", "values": [["2/5", "1/10"], ["1/10", "2/5"]]}}

    A top-level ``"track"`` overrides the connector's track.
    """

    def parse(self, source: Path | str) -> Any:
        data = read_json(source)
        if not isinstance(data, dict) or "axes" not in data or "mass" not in data:
            raise ConnectorError("Joint JSON needs 'axes' and 'mass'")
        return data

    def load(self, source: Path | str) -> JointPMF:
        data = dict(self.parse(source))
        data.setdefault("track", self.track)
        try:
            joint = JointPMF.from_json(data, counts=self.counts)
        except SklarError:
            raise
        except (KeyError, TypeError, ValueError) as e:
            raise ConnectorError(f"Malformed joint JSON: {e}")
        logger.debug("Loaded a %s joint from %s", joint.shape, source)
        return joint


def load_margins(source: Path | str) -> List[Margin]:
    """
    Read a list of margins, either a bare list or ``{"margins": [...]}``.

    Raises:
        ConnectorError: If the document is not a list of margin objects
    """
    data = read_json(source)
    if isinstance(data, dict):
        data = data.get("margins")
    if not isinstance(data, list) or not data:
        raise ConnectorError("Margins JSON must be a non-empty list of margins")
    try:
        return [Margin.from_json(item) for item in data]
    except SklarError:
        raise
    except (KeyError, TypeError, ValueError) as e:
        raise ConnectorError(f"Malformed margin JSON: {e}")
