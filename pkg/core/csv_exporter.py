"""CSV export of construction results, one row per family member."""
import csv
import json
from pathlib import Path
from typing import Dict, List, Optional

from .config import config
from .graph import edge_count
from .isomorphism import CanonicalSizeError, canonical_form


class CSVExporter:
    """Exports a construction result's members to CSV for data analysis."""

    def export(self, result, output_name: str, out_dir: Optional[Path] = None) -> Path:
        rows = self._build_rows(result)
        filepath = Path(out_dir or config.exports_dir) / f"{output_name}.csv"
        self._write_csv(rows, filepath)
        return filepath

    def _build_rows(self, result) -> List[Dict]:
        rows: List[Dict] = []
        for idx, (member, origin) in enumerate(zip(result.family.members, result.provenance)):
            try:
                canon = canonical_form(member).canon_g6
            except CanonicalSizeError:
                canon = ""
            rows.append(
                {
                    "index": idx,
                    "provenance": json.dumps(origin.to_dict(), sort_keys=True),
                    "order": member.n,
                    "edges": edge_count(member),
                    "canon_g6": canon,
                    "condition_used": result.condition_used,
                }
            )
        return rows

    def _write_csv(self, rows: List[Dict], filepath: Path) -> None:
        if not rows:
            print("No members to export")
            return

        fieldnames = list(rows[0].keys())
        filepath.parent.mkdir(parents=True, exist_ok=True)

        with open(filepath, "w", newline="", encoding="utf-8") as f:
            writer = csv.DictWriter(f, fieldnames=fieldnames)
            writer.writeheader()
            writer.writerows(rows)

        print(f"CSV exported: {filepath} ({len(rows)} rows)")
