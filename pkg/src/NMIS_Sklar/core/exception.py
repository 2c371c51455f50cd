# Provide helpful error messages for the user

from typing import Optional, Tuple


class SklarError(Exception):
    """Base exception for NMIS Sklar"""
    pass

class NumericsError(SklarError):
    """Raised when a scalar cannot be built or compared"""
    pass

class DomainError(SklarError):
    """Raised when an argument lies outside the domain of an operation"""
    pass

class MarginError(SklarError):
    """Raised when a univariate margin is malformed"""
    pass

class JointValidationError(SklarError):
    """Raised when a joint mass array is not a probability distribution"""

    def __init__(self, message: str, cell: Optional[Tuple[int, ...]] = None):
        super().__init__(message)
        self.cell = cell

class DimensionError(SklarError):
    """Raised when objects of different dimensions are combined"""
    pass

class SubcopulaError(SklarError):
    """Raised when a subcopula cannot be built or queried"""
    pass

class ExtensionError(SklarError):
    """Raised when a subcopula cannot be extended to a copula"""
    pass

class CompositionError(SklarError):
    """Raised when a copula and margins do not compose into a distribution"""
    pass

class UnsupportedOperationError(SklarError):
    """Raised when an operation is not available for the given dimension or kind"""
    pass

class SupportError(SklarError):
    """Raised when uniform margins cannot be reached from the mass support"""
    pass

class ScalingError(SklarError):
    """Raised when scaling weights are not strictly positive"""
    pass

class ConnectorError(SklarError):
    """Raised when connector fails to parse"""
    pass

class ExporterError(SklarError):
    """Raised when export fails"""
    pass

class ProfileError(SklarError):
    """Raised when a run profile is invalid"""
    pass
