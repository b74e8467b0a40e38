"""Configuration for the cospectral family builder - single source of truth."""
import json
import os
from dataclasses import dataclass, field
from pathlib import Path
from typing import Any, Dict, Optional

from .config_loader import get_env_int, load_dotenv

load_dotenv()


def _is_int(value: Any) -> bool:
    return isinstance(value, int) and not isinstance(value, bool)


@dataclass
class Config:
    """Central configuration (paths, parallelism, size caps)."""

    base_dir: Path = field(default_factory=lambda: Path.cwd())
    families_dir: Path = field(init=False)
    certificates_dir: Path = field(init=False)
    exports_dir: Path = field(init=False)
    logs_dir: Path = field(init=False)

    # Parallelism cap; None reads COSPEC_THREADS at first use, else all cores
    threads: Optional[int] = None

    # Desk-scale caps
    iso_size_cap: int = 512
    triplet_cap: int = 40
    corpus_max_n: int = 8

    # Run log under logs_dir (off unless requested)
    log_to_file: bool = False

    _config_loaded: bool = field(default=False, repr=False)
    _config_path: Optional[Path] = field(default=None, repr=False)

    def __post_init__(self) -> None:
        self.base_dir = Path(self.base_dir)
        self._refresh_paths()

    def worker_count(self) -> int:
        """Effective parallelism: explicit threads, then COSPEC_THREADS, then cpu count."""
        if self.threads is not None:
            return self.threads
        return max(1, get_env_int("COSPEC_THREADS") or os.cpu_count() or 1)

    def validate(self) -> None:
        """Validate config values; collect every problem before failing."""
        errors = []
        if self.threads is None:
            try:
                self.worker_count()
            except ValueError as e:
                errors.append(str(e))
        elif not _is_int(self.threads) or self.threads < 1:
            errors.append(f"threads must be an integer >= 1, got {self.threads!r}")
        if not _is_int(self.iso_size_cap) or self.iso_size_cap < 1:
            errors.append(f"iso_size_cap must be an integer >= 1, got {self.iso_size_cap!r}")
        if not _is_int(self.triplet_cap) or self.triplet_cap < 3:
            errors.append(f"triplet_cap must be an integer >= 3, got {self.triplet_cap!r}")
        if not _is_int(self.corpus_max_n) or not 1 <= self.corpus_max_n <= 8:
            errors.append(f"corpus_max_n must be an integer within 1..8, got {self.corpus_max_n!r}")
        if not isinstance(self.log_to_file, bool):
            errors.append(f"log_to_file must be true or false, got {self.log_to_file!r}")
        if errors:
            raise ValueError(f"Config validation failed: {'; '.join(errors)}")

    def apply_overrides(self, overrides: Dict[str, Any]) -> None:
        """Apply overrides from CLI or config file."""
        allowed = {"base_dir", "threads", "iso_size_cap", "triplet_cap", "corpus_max_n", "log_to_file"}
        for key, value in overrides.items():
            if key.startswith("_"):
                # Allow metadata keys like _comment without failing
                continue
            if key not in allowed:
                raise ValueError(f"Unknown config key: {key}")
            if key == "base_dir":
                if not isinstance(value, (str, Path)):
                    raise ValueError(f"base_dir must be a path string, got {value!r}")
                value = Path(value).expanduser()
            setattr(self, key, value)
        self._refresh_paths()

    def load_from_file(self, path: Path) -> Dict[str, Any]:
        """Load configuration from JSON config file."""
        if not path.exists():
            raise FileNotFoundError(f"Config file not found: {path}")
        data = json.loads(path.read_text(encoding="utf-8"))
        if not isinstance(data, dict):
            raise ValueError("Config file must contain a JSON object")
        self.apply_overrides(data)
        self._config_loaded = True
        self._config_path = path
        return data

    def _refresh_paths(self) -> None:
        """Refresh dependent paths when overrides change."""
        self.families_dir = self.base_dir / "families"
        self.certificates_dir = self.base_dir / "certificates"
        self.exports_dir = self.base_dir / "exports"
        self.logs_dir = self.base_dir / "logs"


# Global config instance; run.py applies --config/--threads before use
config = Config()


def load_config(config_path: str) -> Config:
    """Load config from file path and validate it."""
    path = Path(config_path).resolve()
    config.load_from_file(path)
    config.validate()
    return config
