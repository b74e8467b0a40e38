"""Small-graph corpora: exhaustive generation, graph6 files, seed family discovery."""
from dataclasses import dataclass, field
from itertools import combinations, permutations
from pathlib import Path
from typing import Dict, List, Sequence, Tuple

from .cartesian import is_prime, shared_factors
from .config import config
from .family import CospectralFamily
from .graph import Graph, format_graph6_lines, is_connected, parse_graph6, read_graph6_lines
from .isomorphism import canonical_form
from .logger import get_logger
from .parallel_executor import map_parallel, map_processes
from .spectrum import SpectrumKind, spectral_key
from .verify import make_family


class CorpusError(ValueError):
    """Corpus request outside the supported range, or an unusable corpus."""


@dataclass(frozen=True)
class CorpusEntry:
    graph: Graph
    line: int


@dataclass
class CorpusStats:
    total: int = 0
    connected: int = 0
    duplicate_canonical: int = 0


@dataclass
class Corpus:
    """Graphs with the 1-based line they came from."""

    entries: List[CorpusEntry] = field(default_factory=list)
    stats: CorpusStats = field(default_factory=CorpusStats)

    @property
    def graphs(self) -> List[Graph]:
        return [e.graph for e in self.entries]

    def __len__(self) -> int:
        return len(self.entries)


def corpus_from_entries(entries: Sequence[CorpusEntry]) -> Corpus:
    entries = list(entries)
    connected = map_parallel(lambda e: is_connected(e.graph), entries)
    canons = map_parallel(lambda e: canonical_form(e.graph).canon_g6, entries)
    stats = CorpusStats(
        total=len(entries),
        connected=sum(connected),
        duplicate_canonical=len(canons) - len(set(canons)),
    )
    return Corpus(entries, stats)


def read_corpus(path: Path) -> Corpus:
    """Parse a graph6 corpus file; entries keep their source line numbers."""
    path = Path(path)
    if not path.exists():
        raise FileNotFoundError(f"Corpus file not found: {path}")
    parsed = read_graph6_lines(path.read_text(encoding="utf-8"))
    if not parsed:
        raise CorpusError(f"Corpus file {path} contains no graphs")
    return corpus_from_entries([CorpusEntry(g, line) for line, g in parsed])


def write_corpus(corpus: Corpus, path: Path) -> Path:
    """Plain graph6 lines, no header, so line i holds entry i."""
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    path.write_text(format_graph6_lines(corpus.graphs), encoding="utf-8")
    return path


def _one_vertex_extensions(parent: Graph) -> List[str]:
    n = parent.n
    out = set()
    for mask in range(1, 1 << n):
        rows = [row | ((mask >> v & 1) << n) for v, row in enumerate(parent.rows)]
        rows.append(mask)
        out.add(canonical_form(Graph(n + 1, tuple(rows))).canon_g6)
    return sorted(out)


def generate_small_corpus(n_max: int) -> Corpus:
    """Every connected graph on 1..n_max vertices, one canonical representative per class."""
    if n_max < 1:
        raise CorpusError(f"n_max must be >= 1, got {n_max}")
    if n_max > config.corpus_max_n:
        raise CorpusError(f"n_max={n_max} exceeds the exhaustive enumeration limit {config.corpus_max_n}")
    # every connected graph loses a non-cut vertex to a connected graph on one vertex fewer
    levels: List[List[str]] = [[canonical_form(Graph.empty(1)).canon_g6]]
    for _ in range(2, n_max + 1):
        parents = [parse_graph6(c) for c in levels[-1]]
        children = set()
        for batch in map_processes(_one_vertex_extensions, parents):
            children.update(batch)
        levels.append(sorted(children))
    log = get_logger()
    if log:
        counts = ", ".join(f"n={i + 1}: {len(level)}" for i, level in enumerate(levels))
        log.log_construction("corpus", sum(len(level) for level in levels), n_max, counts)
    entries = []
    for level in levels:
        for canon in level:
            entries.append(CorpusEntry(parse_graph6(canon), len(entries) + 1))
    return Corpus(entries, CorpusStats(total=len(entries), connected=len(entries), duplicate_canonical=0))


def _greedy_coprime(members: List[Graph]) -> List[Graph]:
    kept: List[Graph] = []
    for g in members:
        if all(not shared_factors(g, other) for other in kept):
            kept.append(g)
    return kept


def find_seed_families(
    corpus: Corpus,
    kind: SpectrumKind,
    min_size: int = 2,
    require_coprime: bool = False,
    require_prime: bool = False,
) -> List[CospectralFamily]:
    """Group connected corpus graphs by spectrum; each group of distinct classes is a family."""
    if not corpus.entries:
        raise CorpusError("Corpus is empty")
    if min_size < 1:
        raise ValueError(f"min_size must be >= 1, got {min_size}")
    kind = SpectrumKind(kind)
    graphs = [g for g, ok in zip(corpus.graphs, map_parallel(is_connected, corpus.graphs)) if ok]
    canons = map_parallel(lambda g: canonical_form(g).canon_g6, graphs)
    keys = map_parallel(lambda g: spectral_key(g, kind), graphs)

    groups: Dict[Tuple[int, bytes], Dict[str, Graph]] = {}
    for g, canon, key in zip(graphs, canons, keys):
        groups.setdefault((g.n, key), {}).setdefault(canon, parse_graph6(canon))

    families: List[CospectralFamily] = []
    for group_key in sorted(groups, key=lambda k: (k[0], k[1], min(groups[k]))):
        members = [groups[group_key][c] for c in sorted(groups[group_key])]
        if require_prime:
            members = [g for g in members if g.n >= 2 and is_prime(g)]
        if require_coprime:
            members = _greedy_coprime(members)
        if len(members) < min_size:
            continue
        family = make_family(members, kind)
        if not family.verified:
            raise RuntimeError(f"Spectral group {group_key[1]!r} failed verification")
        families.append(family)
    return families


def _min_relabeled_key(n: int, rows: Sequence[int]) -> Tuple[int, ...]:
    best = None
    for perm in permutations(range(n)):
        relabeled = [0] * n
        for v in range(n):
            mapped = 0
            for u in range(n):
                if rows[v] >> u & 1:
                    mapped |= 1 << perm[u]
            relabeled[perm[v]] = mapped
        key = tuple(relabeled)
        if best is None or key < best:
            best = key
    return best


def brute_force_class_counts(n: int) -> int:
    """Connected classes on exactly n vertices by edge-subset enumeration and relabeling search."""
    if n < 1:
        raise ValueError(f"n must be >= 1, got {n}")
    pairs = list(combinations(range(n), 2))
    seen = set()
    for mask in range(1 << len(pairs)):
        rows = [0] * n
        for idx, (u, v) in enumerate(pairs):
            if mask >> idx & 1:
                rows[u] |= 1 << v
                rows[v] |= 1 << u
        if not is_connected(Graph(n, tuple(rows))):
            continue
        seen.add(_min_relabeled_key(n, rows))
    return len(seen)
