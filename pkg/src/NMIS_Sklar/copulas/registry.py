"""
Extension registry.

Maps method names used by the CLI, run profiles and the roundtrip check to
functions turning a subcopula into a copula.
"""

from functools import partial
from typing import Callable, Dict, List

from ..core.exception import ExtensionError
from .extension import Copula, Fill, extend_checkerboard, extend_patchwork
from .subcopula import Subcopula

Extender = Callable[[Subcopula], Copula]


class ExtensionRegistry:
    """Registry of available extension methods."""

    def __init__(self):
        self._extenders: Dict[str, Extender] = {}
        self._register_builtin()

    def _register_builtin(self):
        self.register("checkerboard", extend_checkerboard)
        for fill in Fill:
            extender = partial(extend_patchwork, fill=fill)
            self.register(f"patchwork-{fill.value.lower()}", extender)
            self.register(f"patchwork_{fill.value.lower()}", extender)

    def register(self, name: str, func: Extender) -> None:
        """Register an extension method."""
        self._extenders[name.lower()] = func

    def get(self, name: str) -> Extender:
        """
        Get an extension method by name.

        Raises:
            ExtensionError: If no method is registered under the name
        """
        key = name.lower()
        if key not in self._extenders:
            available = ", ".join(self.list())
            raise ExtensionError(f"Unknown extension method: '{name}'. Available: {available}")
        return self._extenders[key]

    def apply(self, name: str, h: Subcopula) -> Copula:
        """Extend h with the named method."""
        return self.get(name)(h)

    def list(self) -> List[str]:
        """Registered names, dash spelling first."""
        return sorted(self._extenders, key=lambda n: ("_" in n, n))


extensions = ExtensionRegistry()
