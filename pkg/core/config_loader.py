"""Environment and .env file loading utilities."""
import os
from pathlib import Path
from typing import Optional

_dotenv_values: dict = {}


def load_dotenv(env_path: Optional[Path] = None) -> None:
    """Load .env file from project root if exists."""
    env_path = env_path or Path(__file__).parent.parent / ".env"
    if not env_path.exists():
        return
    with open(env_path, encoding="utf-8") as f:
        for line in f:
            line = line.strip()
            if not line or line.startswith("#") or "=" not in line:
                continue
            key, value = line.split("=", 1)
            _dotenv_values[key.strip()] = value.strip()


def get_env_key(key: str) -> Optional[str]:
    """Get key from .env (priority) or environment."""
    return _dotenv_values.get(key, os.environ.get(key))


def get_env_int(key: str) -> Optional[int]:
    """Integer env value, or None when unset. Garbage fails loud."""
    raw = get_env_key(key)
    if raw is None or raw == "":
        return None
    try:
        return int(raw)
    except ValueError as exc:
        raise ValueError(f"{key} must be an integer, got {raw!r}") from exc
