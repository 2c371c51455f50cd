"""
YAML run-profile loader with Yamale validation.

A profile presets the options of a CLI run; flags given on the command line
override it.
"""

from pathlib import Path
from typing import Any, Dict, Optional

import yaml
import yamale

from ..core.exception import ProfileError

# profile section -> {key in the section: run option}
_SECTIONS = {
    "input": {"format": "input_format", "counts": "counts", "track": "track"},
    "run": {
        "method": "method",
        "tol": "tol",
        "max_iter": "max_iter",
        "seed": "seed",
        "n_boxes": "n_boxes",
        "resolution": "resolution",
    },
    "output": {"format": "output_format"},
}


class ProfileLoader:
    """Load and validate run-profile YAML files."""

    def __init__(self, schema_path: Optional[Path] = None):
        """
        Args:
            schema_path: Path to Yamale schema (uses the packaged one if None)
        """
        if schema_path is None:
            schema_path = Path(__file__).parent / "profile_schema.yaml"
        self.schema_path = schema_path
        self._schema = None

    @property
    def schema(self):
        """Lazy load the Yamale schema."""
        if self._schema is None:
            self._schema = yamale.make_schema(str(self.schema_path))
        return self._schema

    def load(self, profile_file: Path | str) -> Dict[str, Any]:
        """
        Load and validate a profile file.

        Returns:
            Validated profile document

        Raises:
            ProfileError: If the file is missing or fails validation
        """
        profile_path = Path(profile_file)
        if not profile_path.exists():
            raise ProfileError(f"Profile file not found: {profile_path}")
        try:
            data = yamale.make_data(str(profile_path))
            yamale.validate(self.schema, data)
        except yamale.YamaleError as e:
            errors = [f"  - {error}" for result in e.results for error in result.errors]
            raise ProfileError(f"Invalid profile '{profile_path.name}':\n" + "\n".join(errors))
        except yaml.YAMLError as e:
            raise ProfileError(f"YAML syntax error in {profile_path.name}: {e}")
        document = data[0][0]
        tol = (document.get("run") or {}).get("tol")
        if tol is not None and tol <= 0:
            raise ProfileError(f"Invalid profile '{profile_path.name}': tol must be positive")
        return document

    def options(self, profile_file: Path | str) -> Dict[str, Any]:
        """
        Flatten a profile into run options (input_format, method, tol, ...).

        Keys absent from the profile are left out.
        """
        document = self.load(profile_file)
        options: Dict[str, Any] = {}
        for section, keys in _SECTIONS.items():
            for key, option in keys.items():
                value = (document.get(section) or {}).get(key)
                if value is not None:
                    options[option] = value
        return options
