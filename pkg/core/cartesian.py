"""Cartesian product, prime factorization, primality, coprimality and the maximal common factor."""
from collections import Counter
from dataclasses import dataclass
from functools import lru_cache, reduce
from typing import Dict, Iterable, List, Tuple

from .config import config
from .graph import EmptyGraphError, Graph, bits, edge_count, is_connected, parse_graph6
from .isomorphism import are_isomorphic, canonical_form
from .logger import get_logger

K1 = Graph.empty(1)


class FactorizationError(ValueError):
    """Input outside the domain of unique factorization (disconnected or trivial)."""


class FactorizationInternalError(RuntimeError):
    """Factorization failed its own reassembly check - a bug, never a silent wrong answer."""


@dataclass(frozen=True)
class FactorMultiset:
    """Prime factors in canonical form with multiplicities, sorted by canon_g6."""

    factors: Tuple[Tuple[Graph, int], ...]

    def canon_counts(self) -> Counter:
        return Counter({canonical_form(f).canon_g6: m for f, m in self.factors})

    def to_pairs(self) -> List[Tuple[str, int]]:
        return [(canonical_form(f).canon_g6, m) for f, m in self.factors]

    def expand(self) -> List[Graph]:
        return [f for f, m in self.factors for _ in range(m)]

    def reassemble(self) -> Graph:
        return product_of(self.expand())

    @property
    def size(self) -> int:
        return sum(m for _, m in self.factors)


@dataclass(frozen=True)
class CommonFactorDecomposition:
    """common □ residue_a ≅ a, common □ residue_b ≅ b, residues coprime."""

    common: Graph
    residue_a: Graph
    residue_b: Graph


def cartesian_product(g: Graph, h: Graph) -> Graph:
    """Vertex (u, v) is u * order(h) + v."""
    if g.n == 0 or h.n == 0:
        raise EmptyGraphError("Cartesian product needs non-empty factors")
    m = h.n
    rows = []
    for u in range(g.n):
        g_nbrs = bits(g.rows[u])
        for v in range(m):
            row = h.rows[v] << (u * m)
            for w in g_nbrs:
                row |= 1 << (w * m + v)
            rows.append(row)
    product = Graph(g.n * m, tuple(rows))
    if product.n > config.iso_size_cap:
        log = get_logger()
        if log:
            log.log_warning(f"product order {product.n} exceeds the isomorphism size cap {config.iso_size_cap}")
    return product


def product_of(graphs: Iterable[Graph]) -> Graph:
    """Left fold of the Cartesian product; K1 for no factors."""
    return reduce(cartesian_product, graphs, K1)


def graph_power(g: Graph, k: int) -> Graph:
    if k < 0:
        raise ValueError(f"Power must be >= 0, got {k}")
    return product_of([g] * k)


def prime_factorize(g: Graph) -> FactorMultiset:
    """Unique Cartesian prime factorization of a connected graph with n >= 2."""
    if g.n == 0:
        raise EmptyGraphError("Cannot factor the empty graph")
    if g.n == 1:
        raise FactorizationError("K1 is the trivial graph and has no prime factorization")
    if not is_connected(g):
        raise FactorizationError("Prime factorization is unique only for connected graphs; input is disconnected")
    return _factorize_cached(g)


@lru_cache(maxsize=2048)
def _factorize_cached(g: Graph) -> FactorMultiset:
    layers = _product_layers(g)
    grouped: Dict[str, List] = {}
    for layer in layers:
        factor = g.induced_subgraph(layer)
        canon = canonical_form(factor)
        entry = grouped.setdefault(canon.canon_g6, [parse_graph6(canon.canon_g6), 0])
        entry[1] += 1
    result = FactorMultiset(tuple((graph, mult) for _, (graph, mult) in sorted(grouped.items())))
    if g.n <= config.iso_size_cap and not are_isomorphic(result.reassemble(), g):
        raise FactorizationInternalError(f"Reassembled factors are not isomorphic to the input {g!r}")
    return result


def _edge_classes(g: Graph) -> List[List[Tuple[int, int]]]:
    """Closure of the square relation; each class is the edge set of one prime factor's layers."""
    edges = list(g.edges())
    index = {e: i for i, e in enumerate(edges)}
    parent = list(range(len(edges)))

    def eid(a: int, b: int) -> int:
        return index[(a, b) if a < b else (b, a)]

    def find(x: int) -> int:
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    def union(a: int, b: int) -> None:
        ra, rb = find(a), find(b)
        if ra != rb:
            parent[max(ra, rb)] = min(ra, rb)

    rows = g.rows
    for u in range(g.n):
        nbrs = bits(rows[u])
        for a, v in enumerate(nbrs):
            for w in nbrs[a + 1:]:
                e, f = eid(u, v), eid(u, w)
                if rows[v] >> w & 1:
                    union(e, f)
                    continue
                corners = bits(rows[v] & rows[w] & ~(1 << u))
                for x in corners:
                    union(e, eid(w, x))
                    union(f, eid(v, x))
                # edges of different factors span exactly one square, and it is chordless
                if len(corners) != 1 or rows[u] >> corners[0] & 1:
                    union(e, f)

    classes: Dict[int, List[Tuple[int, int]]] = {}
    for i, e in enumerate(edges):
        classes.setdefault(find(i), []).append(e)
    return [classes[root] for root in sorted(classes)]


def _components(n: int, rows: List[int]) -> List[int]:
    """Component id per vertex."""
    comp = [-1] * n
    current = 0
    for start in range(n):
        if comp[start] != -1:
            continue
        seen = frontier = 1 << start
        while frontier:
            reach = 0
            for v in bits(frontier):
                reach |= rows[v]
            frontier = reach & ~seen
            seen |= frontier
        for v in bits(seen):
            comp[v] = current
        current += 1
    return comp


def _product_layers(g: Graph) -> List[List[int]]:
    """Vertex sets of the layers through vertex 0, one per prime factor, validated as a product."""
    classes = _edge_classes(g)
    if len(classes) == 1:
        return [list(range(g.n))]
    n = g.n
    class_rows = []
    for cls in classes:
        rows = [0] * n
        for u, v in cls:
            rows[u] |= 1 << v
            rows[v] |= 1 << u
        class_rows.append(rows)

    layers: List[List[int]] = []
    coords: List[List[int]] = [[] for _ in range(n)]
    for c, rows_c in enumerate(class_rows):
        layer = _component_of(0, rows_c)
        layers.append(layer)
        position = {v: i for i, v in enumerate(layer)}
        others = [g.rows[v] & ~rows_c[v] for v in range(n)]
        comp = _components(n, others)
        anchor: Dict[int, int] = {}
        for v in layer:
            if comp[v] in anchor:
                raise FactorizationInternalError("Two layer vertices share a complementary component")
            anchor[comp[v]] = position[v]
        for v in range(n):
            if comp[v] not in anchor:
                raise FactorizationInternalError("A complementary component misses the layer through the base vertex")
            coords[v].append(anchor[comp[v]])

    size = 1
    for layer in layers:
        size *= len(layer)
    if size != n or len({tuple(c) for c in coords}) != n:
        raise FactorizationInternalError("Layer coordinates do not form a bijection onto the product")
    layer_graphs = [g.induced_subgraph(layer) for layer in layers]
    expected_edges = sum(edge_count(lg) * (n // lg.n) for lg in layer_graphs)
    if expected_edges != edge_count(g):
        raise FactorizationInternalError("Edge count does not match the product of the layers")
    for c, cls in enumerate(classes):
        for u, v in cls:
            diff = [i for i in range(len(classes)) if coords[u][i] != coords[v][i]]
            if diff != [c] or not layer_graphs[c].has_edge(coords[u][c], coords[v][c]):
                raise FactorizationInternalError(f"Edge ({u}, {v}) is not a product edge of factor {c}")
    return layers


def _component_of(start: int, rows: List[int]) -> List[int]:
    seen = frontier = 1 << start
    while frontier:
        reach = 0
        for v in bits(frontier):
            reach |= rows[v]
        frontier = reach & ~seen
        seen |= frontier
    return bits(seen)


def is_prime(g: Graph) -> bool:
    fm = prime_factorize(g)
    return len(fm.factors) == 1 and fm.factors[0][1] == 1


def are_coprime(g: Graph, h: Graph) -> bool:
    """No shared prime factor."""
    return not set(prime_factorize(g).canon_counts()) & set(prime_factorize(h).canon_counts())


def shared_factors(g: Graph, h: Graph) -> List[str]:
    """canon_g6 of the prime factors common to g and h, ascending; K1 shares nothing."""
    return sorted(set(_factor_counter(g)) & set(_factor_counter(h)))


def _factor_counter(g: Graph) -> Counter:
    # K1 has the empty factorization here so residues may be trivial
    if g.n == 1:
        return Counter()
    return prime_factorize(g).canon_counts()


def common_factor(g: Graph, h: Graph) -> CommonFactorDecomposition:
    """Product of the multiset intersection of prime factors, with the coprime residues."""
    for x in (g, h):
        if x.n == 0:
            raise EmptyGraphError("common_factor needs non-empty graphs")
        if not is_connected(x):
            raise FactorizationError("common_factor needs connected inputs")
    ca, cb = _factor_counter(g), _factor_counter(h)
    shared = ca & cb

    def build(counts: Counter) -> Graph:
        return product_of(parse_graph6(key) for key in sorted(counts.elements()))

    return CommonFactorDecomposition(build(shared), build(ca - shared), build(cb - shared))
