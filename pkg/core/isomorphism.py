"""Canonical labeling by partition refinement + backtracking, and isomorphism tests.

The search tree is the usual individualization-refinement tree: the root is the
equitable refinement of the (degree, sorted neighbor degrees) partition, a child
individualizes one vertex of the first smallest non-singleton cell, leaves are
discrete partitions. The canonical leaf minimizes (refinement traces along the
path, relabeled adjacency rows). Two leaves with equal traces and rows give an
automorphism; automorphisms fixing a node's individualized vertices prune the
node's children to one per orbit, and a leaf equivalent to an earlier leaf sends
the search back to the level where the two paths diverge.
"""
from collections import deque
from dataclasses import dataclass
from functools import lru_cache
from typing import Dict, List, Optional, Sequence, Tuple

from .config import config
from .graph import EmptyGraphError, Graph, bits, edge_count, emit_graph6

Cells = Dict[int, List[int]]


class CanonicalSizeError(ValueError):
    """Graph order above the canonical labeling cap."""


@dataclass(frozen=True)
class CanonicalForm:
    """canon_g6 encodes g.relabel(perm); perm[v] is the canonical label of v."""

    canon_g6: str
    perm: Tuple[int, ...]


@dataclass
class _Leaf:
    traces: List[tuple]
    key: Tuple[int, ...]
    perm: List[int]
    base: List[int]


def _refine(rows: Sequence[int], cells: Cells, queue: Sequence[int]) -> tuple:
    """Refine cells in place to an equitable partition; return the split trace."""
    pending = deque(queue)
    in_queue = set(queue)
    trace = []
    while pending:
        s = pending.popleft()
        in_queue.discard(s)
        mask = 0
        for v in cells[s]:
            mask |= 1 << v
        for start in sorted(cells):
            cell = cells[start]
            if len(cell) == 1:
                continue
            counts = [(rows[v] & mask).bit_count() for v in cell]
            if min(counts) == max(counts):
                continue
            groups: Dict[int, List[int]] = {}
            for v, c in zip(cell, counts):
                groups.setdefault(c, []).append(v)
            pos = start
            shape = []
            for c in sorted(groups):
                frag = groups[c]
                cells[pos] = frag
                shape.append((c, len(frag)))
                if pos not in in_queue:
                    pending.append(pos)
                    in_queue.add(pos)
                pos += len(frag)
            trace.append((s, start, tuple(shape)))
    return tuple(trace)


class _CanonicalSearch:
    def __init__(self, g: Graph) -> None:
        self.g = g
        self.n = g.n
        self.rows = g.rows
        self.first: Optional[_Leaf] = None
        self.best: Optional[_Leaf] = None
        self.automorphisms: List[Tuple[int, ...]] = []
        self._seen_automorphisms = set()

    def run(self) -> _Leaf:
        rows = self.rows
        degree = [row.bit_count() for row in rows]
        keys = {v: (degree[v], tuple(sorted(degree[u] for u in bits(rows[v])))) for v in range(self.n)}
        cells: Cells = {}
        shape = []
        pos = 0
        for key in sorted(set(keys.values())):
            cell = [v for v in range(self.n) if keys[v] == key]
            cells[pos] = cell
            shape.append((key, len(cell)))
            pos += len(cell)
        trace = _refine(rows, cells, sorted(cells))
        self._search(cells, [], [(tuple(shape), trace)])
        return self.best

    def _search(self, cells: Cells, base: List[int], traces: List[tuple]) -> Optional[int]:
        level = len(base)
        if self.best is not None and traces > self.best.traces[:len(traces)]:
            return None
        if len(cells) == self.n:
            return self._leaf(cells, base, traces)
        target = min((len(c), s) for s, c in cells.items() if len(c) > 1)[1]
        visited: List[int] = []
        roots: List[int] = []
        known = -1
        for v in list(cells[target]):
            if known != len(self.automorphisms):
                known = len(self.automorphisms)
                roots = self._orbit_roots(base)
            if any(roots[w] == roots[v] for w in visited):
                continue
            visited.append(v)
            child = dict(cells)
            child[target] = [v]
            child[target + 1] = [u for u in cells[target] if u != v]
            trace = (target, _refine(self.rows, child, [target]))
            jump = self._search(child, base + [v], traces + [trace])
            if jump is not None and jump < level:
                return jump
        return None

    def _leaf(self, cells: Cells, base: List[int], traces: List[tuple]) -> Optional[int]:
        perm = [0] * self.n
        for start, cell in cells.items():
            perm[cell[0]] = start
        relabeled = [0] * self.n
        for v, row in enumerate(self.rows):
            mapped = 0
            for u in bits(row):
                mapped |= 1 << perm[u]
            relabeled[perm[v]] = mapped
        leaf = _Leaf(traces, tuple(relabeled), perm, base)
        if self.first is None:
            self.first = self.best = leaf
            return None
        for other in (self.first, self.best):
            if other.traces == traces and other.key == leaf.key:
                self._record_automorphism(other.perm, perm)
                return _common_prefix(other.base, base)
        if (traces, leaf.key) < (self.best.traces, self.best.key):
            self.best = leaf
        return None

    def _record_automorphism(self, perm_a: List[int], perm_b: List[int]) -> None:
        inverse_b = [0] * self.n
        for v, label in enumerate(perm_b):
            inverse_b[label] = v
        gamma = tuple(inverse_b[perm_a[u]] for u in range(self.n))
        if gamma not in self._seen_automorphisms:
            self._seen_automorphisms.add(gamma)
            self.automorphisms.append(gamma)

    def _orbit_roots(self, base: List[int]) -> List[int]:
        """Orbit representative per vertex under the found automorphisms fixing base pointwise."""
        parent = list(range(self.n))

        def find(x: int) -> int:
            while parent[x] != x:
                parent[x] = parent[parent[x]]
                x = parent[x]
            return x

        for gamma in self.automorphisms:
            if any(gamma[b] != b for b in base):
                continue
            for u in range(self.n):
                ru, rg = find(u), find(gamma[u])
                if ru != rg:
                    parent[ru] = rg
        return [find(u) for u in range(self.n)]


def _common_prefix(a: List[int], b: List[int]) -> int:
    k = 0
    while k < len(a) and k < len(b) and a[k] == b[k]:
        k += 1
    return k


def canonical_form(g: Graph) -> CanonicalForm:
    """Deterministic, relabeling-invariant canonical form."""
    if g.n == 0:
        raise EmptyGraphError("Canonical form needs n >= 1")
    if g.n > config.iso_size_cap:
        raise CanonicalSizeError(f"Graph order {g.n} exceeds the canonical labeling cap {config.iso_size_cap}")
    return _canonical_cached(g)


@lru_cache(maxsize=8192)
def _canonical_cached(g: Graph) -> CanonicalForm:
    leaf = _CanonicalSearch(g).run()
    canon = g.relabel(leaf.perm)
    return CanonicalForm(emit_graph6(canon).decode("ascii"), tuple(leaf.perm))


def are_isomorphic(g: Graph, h: Graph) -> bool:
    """Order, edge count and degree multiset first, then canonical forms."""
    if g.n != h.n or edge_count(g) != edge_count(h):
        return False
    if g.degree_sequence() != h.degree_sequence():
        return False
    if g.n == 0:
        return True
    return canonical_form(g).canon_g6 == canonical_form(h).canon_g6
