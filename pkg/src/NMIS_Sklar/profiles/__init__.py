from .loader import ProfileLoader

__all__ = ["ProfileLoader"]
