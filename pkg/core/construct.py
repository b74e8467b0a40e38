"""Cospectral family constructions from Cartesian products of seed families.

Builders:
  build_product_family  all p*q products, when one of the three conditions holds
  build_relaxed_family  the p+q-1 cross through a coprime pair
  fallback_family       max(p, q) products sharing one seed member
  build_power_family    one product per weak composition of k into p parts
  extend_by_singleton   a family of size p from one connected graph of coprime order

Every builder re-verifies its output; the certificate is the source of truth.
"""
from dataclasses import dataclass
from math import comb, gcd
from typing import Dict, List, Optional, Sequence, Tuple, Union

from .cartesian import cartesian_product, graph_power, is_prime, prime_factorize, product_of, shared_factors
from .family import CospectralFamily
from .graph import Graph, is_connected
from .logger import get_logger
from .parallel_executor import map_parallel
from .verify import Certificate, ConditionVerdict, certify, make_family, verify_cross_spectra

CONDITION_ORDER = ("1", "2", "3")


class ConstructionError(ValueError):
    """A construction's hypothesis fails; the message carries a concrete witness."""


@dataclass(frozen=True)
class ProductIndex:
    """Member F_ij = G_i □ H_j (0-based)."""

    i: int
    j: int

    def to_dict(self) -> Dict[str, int]:
        return {"i": self.i, "j": self.j}


@dataclass(frozen=True)
class ExponentVector:
    """Multiplicities e_0..e_{p-1} of the seed members in one power-family product."""

    e: Tuple[int, ...]

    @property
    def k(self) -> int:
        return sum(self.e)

    @property
    def p(self) -> int:
        return len(self.e)

    def to_dict(self) -> Dict[str, List[int]]:
        return {"exponents": list(self.e)}


Provenance = Union[ProductIndex, ExponentVector]


@dataclass
class ConstructionResult:
    family: CospectralFamily
    provenance: List[Provenance]
    condition_used: str
    conditions: Dict[str, ConditionVerdict]
    certificate: Optional[Certificate] = None

    @property
    def valid(self) -> bool:
        return self.certificate is not None and self.certificate.valid


def _log_verdict(name: str, verdict: ConditionVerdict) -> None:
    log = get_logger()
    if log:
        log.log_condition(name, verdict.holds, verdict.witness)


def _require_inputs(*families: CospectralFamily) -> None:
    for idx, fam in enumerate(families):
        fam.require_verified(f"input family {idx}")


def _condition1(g_fam: CospectralFamily, h_fam: CospectralFamily) -> ConditionVerdict:
    for label, fam in (("G", g_fam), ("H", h_fam)):
        for idx, member in enumerate(fam.members):
            if member.n < 2 or not is_prime(member):
                factors = "K1" if member.n < 2 else " x ".join(
                    f"{canon}^{mult}" for canon, mult in prime_factorize(member).to_pairs())
                return ConditionVerdict(False, f"{label}[{idx}] is not prime: {factors}")
    return ConditionVerdict(True, f"all {g_fam.size + h_fam.size} members are prime")


def _condition2(g_fam: CospectralFamily, h_fam: CospectralFamily) -> ConditionVerdict:
    d = gcd(g_fam.order, h_fam.order)
    return ConditionVerdict(d == 1, f"gcd({g_fam.order}, {h_fam.order}) = {d}")


def _shared_pairs(g_fam: CospectralFamily, h_fam: CospectralFamily) -> List[Tuple[int, int, List[str]]]:
    pairs = [(i, j) for i in range(g_fam.size) for j in range(h_fam.size)]
    shared = map_parallel(lambda ij: shared_factors(g_fam.members[ij[0]], h_fam.members[ij[1]]), pairs)
    return [(i, j, s) for (i, j), s in zip(pairs, shared) if s]


def _condition3(g_fam: CospectralFamily, h_fam: CospectralFamily) -> ConditionVerdict:
    clashes = _shared_pairs(g_fam, h_fam)
    if not clashes:
        return ConditionVerdict(True, "no prime factor is shared across the families")
    i, j, shared = clashes[0]
    return ConditionVerdict(False, f"G[{i}] and H[{j}] share prime factor {shared[0]}")


def diagnose_conditions(g_fam: CospectralFamily, h_fam: CospectralFamily) -> Dict[str, ConditionVerdict]:
    """Verdict with witness for each of the three product conditions."""
    _require_inputs(g_fam, h_fam)
    verdicts = {"1": _condition1(g_fam, h_fam), "2": _condition2(g_fam, h_fam), "3": _condition3(g_fam, h_fam)}
    for name, verdict in verdicts.items():
        _log_verdict(name, verdict)
    return verdicts


def check_condition1(g_fam: CospectralFamily, h_fam: CospectralFamily) -> bool:
    """Every member of both families is Cartesian prime."""
    _require_inputs(g_fam, h_fam)
    return _condition1(g_fam, h_fam).holds


def check_condition2(g_fam: CospectralFamily, h_fam: CospectralFamily) -> bool:
    """The two family orders are coprime."""
    _require_inputs(g_fam, h_fam)
    return _condition2(g_fam, h_fam).holds


def check_condition3(g_fam: CospectralFamily, h_fam: CospectralFamily) -> bool:
    """No prime factor of a G-member is a prime factor of an H-member."""
    _require_inputs(g_fam, h_fam)
    return _condition3(g_fam, h_fam).holds


def _require_cross_spectra(g_fam: CospectralFamily, h_fam: CospectralFamily) -> None:
    distinct, witness = verify_cross_spectra(g_fam, h_fam)
    if not distinct:
        raise ConstructionError(f"Spectra of the two families are not distinct: {witness}")


def _finish(
    builder: str,
    members: List[Graph],
    provenance: List[Provenance],
    kind,
    condition_used: str,
    conditions: Dict[str, ConditionVerdict],
) -> ConstructionResult:
    family = make_family(members, kind)
    result = ConstructionResult(family, provenance, condition_used, conditions)
    result.certificate = certify(result)
    log = get_logger()
    if log:
        log.log_construction(builder, family.size, family.order, f"condition {condition_used}")
        if not result.certificate.valid:
            log.log_error(builder, f"output failed checks {result.certificate.failed_checks()}")
    return result


def _products(g_fam: CospectralFamily, h_fam: CospectralFamily, cells: Sequence[ProductIndex]) -> List[Graph]:
    return map_parallel(lambda c: cartesian_product(g_fam.members[c.i], h_fam.members[c.j]), cells)


def build_product_family(g_fam: CospectralFamily, h_fam: CospectralFamily) -> ConstructionResult:
    """All p*q products G_i □ H_j, row-major, under the first condition that holds."""
    _require_inputs(g_fam, h_fam)
    _require_cross_spectra(g_fam, h_fam)
    verdicts = diagnose_conditions(g_fam, h_fam)
    used = next((c for c in CONDITION_ORDER if verdicts[c].holds), None)
    if used is None:
        clashes = "; ".join(f"G[{i}]/H[{j}] share {', '.join(s)}" for i, j, s in _shared_pairs(g_fam, h_fam))
        raise ConstructionError(
            f"No product condition holds ({verdicts['1'].witness}; {verdicts['2'].witness}); shared factors: {clashes}")
    cells = [ProductIndex(i, j) for i in range(g_fam.size) for j in range(h_fam.size)]
    return _finish("product", _products(g_fam, h_fam, cells), list(cells), g_fam.kind, used, verdicts)


def find_coprime_pair(g_fam: CospectralFamily, h_fam: CospectralFamily) -> Optional[Tuple[int, int]]:
    """First (i, j) in row-major order with G_i and H_j sharing no prime factor."""
    _require_inputs(g_fam, h_fam)
    for i, g in enumerate(g_fam.members):
        for j, h in enumerate(h_fam.members):
            if not shared_factors(g, h):
                return i, j
    return None


def build_relaxed_family(
    g_fam: CospectralFamily,
    h_fam: CospectralFamily,
    i_star: Optional[int] = None,
    j_star: Optional[int] = None,
) -> ConstructionResult:
    """The p+q-1 products in row i_star and column j_star of the product grid."""
    _require_inputs(g_fam, h_fam)
    _require_cross_spectra(g_fam, h_fam)
    if (i_star is None) != (j_star is None):
        raise ValueError("Give both i_star and j_star, or neither for auto-selection")
    if i_star is None:
        pair = find_coprime_pair(g_fam, h_fam)
        if pair is None:
            raise ConstructionError("No coprime (G_i, H_j) pair exists; every pair shares a prime factor")
        i_star, j_star = pair
    if not 0 <= i_star < g_fam.size or not 0 <= j_star < h_fam.size:
        raise ValueError(f"Pair ({i_star}, {j_star}) is outside the {g_fam.size} x {h_fam.size} grid")
    shared = shared_factors(g_fam.members[i_star], h_fam.members[j_star])
    if shared:
        raise ConstructionError(f"G[{i_star}] and H[{j_star}] are not coprime: both have prime factor {shared[0]}")
    verdict = ConditionVerdict(True, f"G[{i_star}] and H[{j_star}] are coprime")
    _log_verdict("coprime-pair", verdict)
    cells = sorted({ProductIndex(i, j_star) for i in range(g_fam.size)}
                   | {ProductIndex(i_star, j) for j in range(h_fam.size)},
                   key=lambda c: (c.i, c.j))
    return _finish("relaxed", _products(g_fam, h_fam, cells), cells, g_fam.kind, "coprime-pair",
                   {"coprime-pair": verdict})


def fallback_family(g_fam: CospectralFamily, h_fam: CospectralFamily) -> ConstructionResult:
    """Column {G_i □ H_0} or row {G_0 □ H_j}, whichever is longer; column on ties."""
    _require_inputs(g_fam, h_fam)
    _require_cross_spectra(g_fam, h_fam)
    if g_fam.size >= h_fam.size:
        cells = [ProductIndex(i, 0) for i in range(g_fam.size)]
    else:
        cells = [ProductIndex(0, j) for j in range(h_fam.size)]
    return _finish("fallback", _products(g_fam, h_fam, cells), cells, g_fam.kind, "none", {})


def triplet_breakdown(p: int, q: int) -> Dict[str, int]:
    """The four summands of the new-triplet count for p x q seeds."""
    if p < 1 or q < 1:
        raise ValueError(f"p and q must be >= 1, got p={p}, q={q}")
    return {
        "cross_corner": (p - 1) * (q - 1),
        "row_triplets": (p - 1) * comb(q, 3),
        "column_triplets": (q - 1) * comb(p, 3),
        "cross_subsets": comb(p + q - 1, 3),
    }


def count_new_triplets(p: int, q: int) -> int:
    return sum(triplet_breakdown(p, q).values())


def weak_compositions(k: int, p: int) -> List[ExponentVector]:
    """All ways to write k as an ordered sum of p non-negative parts, colexicographic."""
    if k < 0 or p < 1:
        raise ValueError(f"Need k >= 0 and p >= 1, got k={k}, p={p}")
    out: List[Tuple[int, ...]] = []

    def rec(prefix: List[int], left: int) -> None:
        if len(prefix) == p - 1:
            out.append(tuple(prefix + [left]))
            return
        for part in range(left + 1):
            rec(prefix + [part], left - part)

    rec([], k)
    return [ExponentVector(e) for e in sorted(out, key=lambda e: e[::-1])]


def build_power_family(u_fam: CospectralFamily, k: int) -> ConstructionResult:
    """One member per weak composition e of k: the product of U_i taken e_i times."""
    _require_inputs(u_fam)
    if k < 1:
        raise ValueError(f"Power k must be >= 1, got {k}")
    members = u_fam.members
    for a in range(len(members)):
        for b in range(a + 1, len(members)):
            shared = shared_factors(members[a], members[b])
            if shared:
                raise ConstructionError(f"U[{a}] and U[{b}] are not coprime: both have prime factor {shared[0]}")
    verdict = ConditionVerdict(True, f"all {len(members)} seed members are pairwise coprime")
    _log_verdict("coprime-pair", verdict)
    vectors = weak_compositions(k, len(members))
    graphs = map_parallel(
        lambda vec: product_of(graph_power(u, e) for u, e in zip(members, vec.e) if e), vectors)
    return _finish("power", graphs, list(vectors), u_fam.kind, "coprime-pair", {"coprime-pair": verdict})


def power_family_size(k: int, p: int) -> int:
    return comb(k + p - 1, k)


def extend_by_singleton(g_fam: CospectralFamily, h: Graph) -> ConstructionResult:
    """Products G_i □ h for one connected graph h of order coprime to the family's."""
    _require_inputs(g_fam)
    if h.n == 0 or not is_connected(h):
        raise ConstructionError("The singleton graph must be connected and non-empty")
    d = gcd(g_fam.order, h.n)
    if d != 1:
        raise ConstructionError(f"Orders are not coprime: gcd({g_fam.order}, {h.n}) = {d}")
    return build_product_family(g_fam, make_family([h], g_fam.kind))


def construction_universe(g_fam: CospectralFamily, h_fam: CospectralFamily) -> List[Tuple[int, int, Graph]]:
    """The whole p x q product grid, row-major."""
    cells = [ProductIndex(i, j) for i in range(g_fam.size) for j in range(h_fam.size)]
    return [(c.i, c.j, g) for c, g in zip(cells, _products(g_fam, h_fam, cells))]
