"""Run logging - every condition verdict, construction step and check outcome."""
from datetime import datetime
from pathlib import Path
from typing import Optional


class RunLogger:
    """Logs construction and verification events for a run."""

    def __init__(self, log_dir: Path, run_id: str) -> None:
        self.log_dir = log_dir
        self.run_id = run_id
        self.log_file = log_dir / f"run_{run_id}.log"
        self.log_dir.mkdir(parents=True, exist_ok=True)
        self._write(f"=== RUN {run_id} STARTED at {datetime.now().isoformat()} ===\n")

    def _write(self, msg: str) -> None:
        with open(self.log_file, "a", encoding="utf-8") as f:
            f.write(msg + "\n")

    def log_command(self, argv: list) -> None:
        self._write(f"Command: {' '.join(argv)}")

    def log_condition(self, condition: str, holds: bool, witness: str) -> None:
        self._write(f"[condition {condition}] {'HOLDS' if holds else 'FAILS'}: {witness}")

    def log_construction(self, builder: str, size: int, order: int, detail: str = "") -> None:
        self._write(f"\n[{builder}] built {size} member(s) on {order} vertices")
        if detail:
            self._write(f"[{builder}] {detail}")

    def log_check(self, name: str, passed: bool, witness: str = "") -> None:
        line = f"[check {name}] {'PASS' if passed else 'FAIL'}"
        self._write(f"{line}: {witness}" if witness else line)

    def log_warning(self, msg: str) -> None:
        self._write(f"WARNING: {msg}")

    def log_error(self, where: str, error: str) -> None:
        self._write(f"\n[{where}] ERROR: {error}")

    def log_run_complete(self, exit_code: int) -> None:
        self._write(f"\n=== RUN {self.run_id} COMPLETED (exit {exit_code}) at {datetime.now().isoformat()} ===")


# Global logger instance
_logger: Optional[RunLogger] = None


def init_logger(log_dir: Path, run_id: str) -> RunLogger:
    global _logger
    _logger = RunLogger(log_dir, run_id)
    return _logger


def get_logger() -> Optional[RunLogger]:
    return _logger


def close_logger() -> None:
    global _logger
    _logger = None
