"""Independent certification of cospectral families.

Everything is recomputed from the raw member graphs; flags set by the builders
are never trusted. Failures are certificate contents, not exceptions.
"""
import json
from dataclasses import asdict, dataclass, field
from itertools import combinations
from pathlib import Path
from typing import Any, Dict, List, Optional, Sequence, Tuple

from .config import config
from .family import CospectralFamily, FamilyError
from .graph import Graph, emit_graph6, is_connected, read_graph6_lines
from .isomorphism import CanonicalSizeError, canonical_form
from .logger import get_logger
from .parallel_executor import map_parallel
from .spectrum import SpectrumKind, char_poly, spectral_key

CHECK_NAMES = ("connected", "equal_order", "equal_char_poly", "non_isomorphic")


class TripletCapError(ValueError):
    """Too many graphs for brute-force triplet enumeration."""


class SpectrumKindMismatch(ValueError):
    """Two families compared under different matrices."""


@dataclass
class CheckResult:
    passed: bool
    witness: str = ""


@dataclass
class ConditionVerdict:
    holds: bool
    witness: str = ""


@dataclass
class Certificate:
    """Machine-readable verification record; valid iff every check passed."""

    kind: str
    members: List[str]
    order: int
    char_poly: List[str]
    checks: Dict[str, CheckResult]
    conditions: Dict[str, ConditionVerdict] = field(default_factory=dict)
    provenance: List[Dict[str, Any]] = field(default_factory=list)
    condition_used: str = ""
    warnings: List[str] = field(default_factory=list)

    @property
    def valid(self) -> bool:
        return bool(self.checks) and all(c.passed for c in self.checks.values())

    def failed_checks(self) -> List[str]:
        return [name for name, c in self.checks.items() if not c.passed]

    def to_dict(self) -> Dict[str, Any]:
        data = asdict(self)
        data["valid"] = self.valid
        return data

    @classmethod
    def from_dict(cls, data: Dict[str, Any]) -> "Certificate":
        return cls(
            kind=data["kind"],
            members=list(data["members"]),
            order=int(data["order"]),
            char_poly=[str(c) for c in data["char_poly"]],
            checks={k: CheckResult(**v) for k, v in data["checks"].items()},
            conditions={k: ConditionVerdict(**v) for k, v in data.get("conditions", {}).items()},
            provenance=list(data.get("provenance", [])),
            condition_used=data.get("condition_used", ""),
            warnings=list(data.get("warnings", [])),
        )

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), indent=2, sort_keys=True)

    @classmethod
    def from_json(cls, text: str) -> "Certificate":
        return cls.from_dict(json.loads(text))


def _canon_or_none(g: Graph) -> Optional[str]:
    try:
        return canonical_form(g).canon_g6
    except CanonicalSizeError:
        return None


def verify_family(graphs: Sequence[Graph], kind: SpectrumKind) -> Certificate:
    """Check connectivity, equal order, equal CharPoly and pairwise non-isomorphism."""
    if not graphs:
        raise ValueError("verify_family needs a non-empty list of graphs")
    kind = SpectrumKind(kind)
    graphs = list(graphs)
    connected = map_parallel(is_connected, graphs)
    orders = [g.n for g in graphs]
    polys = map_parallel(lambda g: char_poly(g, kind), graphs)
    canons = map_parallel(_canon_or_none, graphs)
    checks: Dict[str, CheckResult] = {}
    warnings: List[str] = []

    bad = [i for i, ok in enumerate(connected) if not ok]
    checks["connected"] = CheckResult(not bad, f"member {bad[0]} is disconnected" if bad else "")

    bad = [i for i, n in enumerate(orders) if n != orders[0]]
    checks["equal_order"] = CheckResult(
        not bad, f"member {bad[0]} has order {orders[bad[0]]}, member 0 has order {orders[0]}" if bad else "")

    bad = [i for i, p in enumerate(polys) if p != polys[0]]
    checks["equal_char_poly"] = CheckResult(
        not bad, f"member {bad[0]} has {polys[bad[0]]}, member 0 has {polys[0]}" if bad else "")

    if any(c is None for c in canons):
        big = [i for i, c in enumerate(canons) if c is None]
        warnings.append(f"members {big} exceed the isomorphism size cap {config.iso_size_cap}")
        checks["non_isomorphic"] = CheckResult(False, f"member {big[0]} exceeds the isomorphism size cap")
    else:
        first_seen: Dict[str, int] = {}
        witness = ""
        for j, canon in enumerate(canons):
            if canon in first_seen:
                witness = f"members {first_seen[canon]} and {j} share canonical form {canon}"
                break
            first_seen[canon] = j
        checks["non_isomorphic"] = CheckResult(not witness, witness)

    log = get_logger()
    if log:
        for name, result in checks.items():
            log.log_check(name, result.passed, result.witness)
        for w in warnings:
            log.log_warning(w)

    return Certificate(
        kind=kind.value,
        members=[c if c is not None else emit_graph6(g).decode("ascii") for c, g in zip(canons, graphs)],
        order=orders[0],
        char_poly=polys[0].to_strings(),
        checks=checks,
        warnings=warnings,
    )


def make_family(graphs: Sequence[Graph], kind: SpectrumKind) -> CospectralFamily:
    """Wrap graphs as a family whose verified flag comes from a fresh verify_family."""
    kind = SpectrumKind(kind)
    cert = verify_family(graphs, kind)
    poly = char_poly(graphs[0], kind) if cert.checks["equal_char_poly"].passed else None
    return CospectralFamily(tuple(graphs), kind, poly, cert.valid)


def load_family(path: Path, kind: SpectrumKind) -> CospectralFamily:
    """Read a family file (one graph6 per line) and verify it."""
    graphs = [g for _, g in read_graph6_lines(Path(path).read_text(encoding="utf-8"))]
    if not graphs:
        raise FamilyError(f"Family file {path} contains no graphs")
    return make_family(graphs, kind)


def verify_cross_spectra(g_fam: CospectralFamily, h_fam: CospectralFamily) -> Tuple[bool, str]:
    """True iff the two families' spectra (with orders) differ; recomputed from member 0 of each."""
    if SpectrumKind(g_fam.kind) is not SpectrumKind(h_fam.kind):
        raise SpectrumKindMismatch(f"Families use different spectra: {g_fam.kind} vs {h_fam.kind}")
    g_fam.require_verified("first family")
    h_fam.require_verified("second family")
    g0, h0 = g_fam.members[0], h_fam.members[0]
    if g0.n != h0.n:
        return True, f"orders differ ({g0.n} vs {h0.n})"
    if spectral_key(g0, g_fam.kind) != spectral_key(h0, h_fam.kind):
        return True, "equal orders, characteristic polynomials differ"
    return False, f"both families have characteristic polynomial {char_poly(g0, g_fam.kind)}"


def enumerate_cospectral_triplets(graphs: Sequence[Graph], kind: SpectrumKind) -> int:
    """Count 3-subsets that are connected, mutually cospectral and pairwise non-isomorphic."""
    graphs = list(graphs)
    if len(graphs) > config.triplet_cap:
        raise TripletCapError(f"{len(graphs)} graphs exceed the triplet enumeration cap {config.triplet_cap}")
    if len(graphs) < 3:
        return 0
    kind = SpectrumKind(kind)
    connected = map_parallel(is_connected, graphs)
    keys = map_parallel(lambda g: spectral_key(g, kind), graphs)
    canons = map_parallel(lambda g: canonical_form(g).canon_g6, graphs)
    count = 0
    for a, b, c in combinations(range(len(graphs)), 3):
        if not (connected[a] and connected[b] and connected[c]):
            continue
        if not keys[a] == keys[b] == keys[c]:
            continue
        if len({canons[a], canons[b], canons[c]}) == 3:
            count += 1
    return count


def certify(result, conditions: Optional[Dict[str, ConditionVerdict]] = None) -> Certificate:
    """verify_family on a construction result, plus its condition verdicts and provenance."""
    cert = verify_family(result.family.members, result.family.kind)
    cert.conditions = dict(conditions if conditions is not None else result.conditions)
    cert.provenance = [p.to_dict() for p in result.provenance]
    cert.condition_used = result.condition_used
    return cert
