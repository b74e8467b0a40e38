"""Family files and certificates on disk."""
from pathlib import Path
from typing import List, Optional, Sequence

from .graph import Graph, format_graph6_lines
from .verify import Certificate


class ResultStore:
    """Stores family files (<name>.g6) and their certificates (<name>.cert.json)."""

    def __init__(self, store_dir: Path) -> None:
        self.store_dir = Path(store_dir)

    def save_family(self, name: str, graphs: Sequence[Graph], header: Sequence[str] = ()) -> Path:
        """One graph6 per line, '#' header comments first."""
        path = self._family_path(name)
        path.parent.mkdir(parents=True, exist_ok=True)
        path.write_text(format_graph6_lines(graphs, header), encoding="utf-8")
        return path

    def save_certificate(self, name: str, certificate: Certificate) -> Path:
        path = self._certificate_path(name)
        path.parent.mkdir(parents=True, exist_ok=True)
        path.write_text(certificate.to_json() + "\n", encoding="utf-8")
        return path

    def load_certificate(self, name: str) -> Optional[Certificate]:
        path = self._certificate_path(name)
        if not path.exists():
            return None
        return Certificate.from_json(path.read_text(encoding="utf-8"))

    def has_family(self, name: str) -> bool:
        return self._family_path(name).exists()

    def list_families(self) -> List[str]:
        """Stored family names, sorted."""
        if not self.store_dir.exists():
            return []
        return sorted(p.stem for p in self.store_dir.glob("*.g6"))

    def _family_path(self, name: str) -> Path:
        return self.store_dir / f"{name}.g6"

    def _certificate_path(self, name: str) -> Path:
        return self.store_dir / f"{name}.cert.json"
