"""Cospectral family value type."""
from dataclasses import dataclass
from typing import Optional, Tuple

from .graph import Graph
from .spectrum import CharPoly, SpectrumKind


class FamilyError(ValueError):
    """Family missing a precondition (unverified, empty, wrong kind)."""


@dataclass(frozen=True)
class CospectralFamily:
    """Connected, mutually cospectral, pairwise non-isomorphic graphs when verified."""

    members: Tuple[Graph, ...]
    kind: SpectrumKind
    char_poly: Optional[CharPoly]
    verified: bool

    @property
    def size(self) -> int:
        return len(self.members)

    @property
    def order(self) -> int:
        return self.members[0].n

    def require_verified(self, role: str = "family") -> None:
        if not self.verified:
            raise FamilyError(f"{role} is not a verified cospectral family")

    def __iter__(self):
        return iter(self.members)

    def __len__(self) -> int:
        return len(self.members)

    def __getitem__(self, idx: int) -> Graph:
        return self.members[idx]
