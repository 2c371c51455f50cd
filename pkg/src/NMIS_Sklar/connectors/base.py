from abc import ABC, abstractmethod
from pathlib import Path
from typing import Any, Dict, List, Optional, Sequence

from ..core.config import config
from ..core.exception import ConnectorError, SklarError
from ..core.numerics import Track
from ..distributions.joint import JointPMF, validate


class BaseConnector(ABC):
    """
    Abstract base class for joint-distribution sources.

    Connectors read raw rows with ``parse`` and turn them into a validated
    JointPMF with ``load``.
    """

    def __init__(self, counts: bool = False, track: Optional[Track] = None):
        """
        Args:
            counts: Cells hold counts to be normalized by their total
            track: 'rational' (exact) or 'float'
        """
        self.counts = counts
        self.track = track or config.default_track

    @abstractmethod
    def parse(self, source: Path | str) -> Any:
        """
        Read the raw content of source.

        Raises:
            ConnectorError: If the source cannot be read
        """
        pass

    @abstractmethod
    def load(self, source: Path | str) -> JointPMF:
        """
        Read source into a validated joint.

        Raises:
            ConnectorError: If the source cannot be read
            JointValidationError: If the cells are not a distribution
        """
        pass

    def _build(self, axes: Sequence[Sequence[Any]], mass: Any) -> JointPMF:
        try:
            return validate(axes, mass, counts=self.counts, track=self.track)
        except SklarError:
            raise
        except Exception as e:
            raise ConnectorError(f"Cannot build a joint from the source: {e}")

    def get_schema(self) -> Dict[str, Any]:
        """Describe the input layout this connector expects."""
        return {
            "connector": self.__class__.__name__,
            "description": self.__doc__,
            "counts": self.counts,
            "track": self.track,
        }


def check_rectangular(rows: List[List[Any]], width: int) -> None:
    """Raise unless every row has width cells."""
    for i, row in enumerate(rows):
        if len(row) != width:
            raise ConnectorError(f"Row {i + 1} has {len(row)} cells, expected {width}")
