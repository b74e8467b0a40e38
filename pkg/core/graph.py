"""Immutable simple graphs on 0..n-1 with bitset adjacency, plus the graph6 codec."""
from dataclasses import dataclass
from typing import Iterable, Iterator, List, Sequence, Tuple, Union

GRAPH6_HEADER = b">>graph6<<"
GRAPH6_MAX_ORDER = 258047
_SHORT_SIZE_LIMIT = 62


class GraphError(ValueError):
    """Invalid graph construction or query."""


class EmptyGraphError(GraphError):
    """Graph with zero vertices where a non-trivial graph is required."""


class GraphTooLargeError(GraphError):
    """Order beyond the supported graph6 size encoding."""


class Graph6Error(GraphError):
    """Base class for graph6 decoding failures."""


class MalformedSizeError(Graph6Error):
    pass


class NonZeroPaddingError(Graph6Error):
    pass


class InvalidCharacterError(Graph6Error):
    pass


class TruncatedPayloadError(Graph6Error):
    pass


class ExcessPayloadError(Graph6Error):
    pass


class UnsupportedFormatError(Graph6Error):
    """sparse6 / digraph6 input."""


@dataclass(frozen=True)
class Graph:
    """Simple undirected graph; rows[v] is the neighbor bitset of v."""

    n: int
    rows: Tuple[int, ...]

    def __post_init__(self) -> None:
        if self.n < 0:
            raise GraphError(f"Negative vertex count: {self.n}")
        if len(self.rows) != self.n:
            raise GraphError(f"Expected {self.n} adjacency rows, got {len(self.rows)}")
        limit = 1 << self.n
        for v, row in enumerate(self.rows):
            if row < 0 or row >= limit:
                raise GraphError(f"Row {v} references vertices outside 0..{self.n - 1}")
            if row >> v & 1:
                raise GraphError(f"Self-loop at vertex {v}")
            rest = row
            while rest:
                low = rest & -rest
                u = low.bit_length() - 1
                if not self.rows[u] >> v & 1:
                    raise GraphError(f"Asymmetric adjacency between {v} and {u}")
                rest ^= low

    @classmethod
    def from_edges(cls, n: int, edges: Iterable[Tuple[int, int]]) -> "Graph":
        rows = [0] * n
        for u, v in edges:
            if u == v:
                raise GraphError(f"Self-loop at vertex {u}")
            if not (0 <= u < n and 0 <= v < n):
                raise GraphError(f"Edge ({u}, {v}) outside 0..{n - 1}")
            rows[u] |= 1 << v
            rows[v] |= 1 << u
        return cls(n, tuple(rows))

    @classmethod
    def empty(cls, n: int) -> "Graph":
        return cls(n, (0,) * n)

    @classmethod
    def complete(cls, n: int) -> "Graph":
        full = (1 << n) - 1
        return cls(n, tuple(full ^ (1 << v) for v in range(n)))

    @classmethod
    def path(cls, n: int) -> "Graph":
        return cls.from_edges(n, ((v, v + 1) for v in range(n - 1)))

    @classmethod
    def cycle(cls, n: int) -> "Graph":
        if n < 3:
            raise GraphError("A cycle needs at least 3 vertices")
        return cls.from_edges(n, ((v, (v + 1) % n) for v in range(n)))

    @classmethod
    def star(cls, leaves: int) -> "Graph":
        """K_{1,leaves} with the center at vertex 0."""
        return cls.from_edges(leaves + 1, ((0, v) for v in range(1, leaves + 1)))

    def neighbors(self, v: int) -> List[int]:
        return bits(self.rows[v])

    def degree(self, v: int) -> int:
        return self.rows[v].bit_count()

    def degree_sequence(self) -> List[int]:
        return sorted(row.bit_count() for row in self.rows)

    def has_edge(self, u: int, v: int) -> bool:
        return bool(self.rows[u] >> v & 1)

    def edges(self) -> Iterator[Tuple[int, int]]:
        """Edges (u, v) with u < v, ordered by u then v."""
        for u, row in enumerate(self.rows):
            for v in bits(row >> (u + 1) << (u + 1)):
                yield u, v

    def relabel(self, perm: Sequence[int]) -> "Graph":
        """Graph with vertex v renamed perm[v]; perm must be a permutation of 0..n-1."""
        if sorted(perm) != list(range(self.n)):
            raise GraphError("relabel needs a permutation of 0..n-1")
        rows = [0] * self.n
        for v, row in enumerate(self.rows):
            mapped = 0
            for u in bits(row):
                mapped |= 1 << perm[u]
            rows[perm[v]] = mapped
        return Graph(self.n, tuple(rows))

    def induced_subgraph(self, vertices: Sequence[int]) -> "Graph":
        """Subgraph on the given vertices, relabeled by their position in the sequence."""
        index = {v: i for i, v in enumerate(vertices)}
        rows = []
        for v in vertices:
            row = 0
            for u in bits(self.rows[v]):
                if u in index:
                    row |= 1 << index[u]
            rows.append(row)
        return Graph(len(vertices), tuple(rows))

    def __repr__(self) -> str:
        return f"Graph(n={self.n}, g6={emit_graph6(self).decode('ascii')!r})" if self.n else "Graph(n=0)"


def bits(mask: int) -> List[int]:
    """Indices of the set bits of mask, ascending."""
    out = []
    while mask:
        low = mask & -mask
        out.append(low.bit_length() - 1)
        mask ^= low
    return out


def order(g: Graph) -> int:
    return g.n


def edge_count(g: Graph) -> int:
    return sum(row.bit_count() for row in g.rows) // 2


def is_connected(g: Graph) -> bool:
    """True iff a traversal from vertex 0 reaches every vertex."""
    if g.n == 0:
        raise EmptyGraphError("Connectivity is undefined for the empty graph")
    full = (1 << g.n) - 1
    seen = frontier = 1
    while frontier:
        reach = 0
        for v in bits(frontier):
            reach |= g.rows[v]
        frontier = reach & ~seen
        seen |= frontier
    return seen == full


# ---------------------------------------------------------------------------
# graph6
# ---------------------------------------------------------------------------

def emit_graph6(g: Graph) -> bytes:
    """Encode g as graph6 (no header, no newline)."""
    n = g.n
    if n > GRAPH6_MAX_ORDER:
        raise GraphTooLargeError(f"graph6 size encoding supports n <= {GRAPH6_MAX_ORDER}, got {n}")
    if n <= _SHORT_SIZE_LIMIT:
        out = bytearray([n + 63])
    else:
        out = bytearray([126, (n >> 12 & 63) + 63, (n >> 6 & 63) + 63, (n & 63) + 63])
    chunk = filled = 0
    for j in range(1, n):
        row = g.rows[j]
        for i in range(j):
            chunk = chunk << 1 | (row >> i & 1)
            filled += 1
            if filled == 6:
                out.append(chunk + 63)
                chunk = filled = 0
    if filled:
        out.append((chunk << (6 - filled)) + 63)
    return bytes(out)


def parse_graph6(text: Union[bytes, str]) -> Graph:
    """Decode one graph6 string; surrounding whitespace and a >>graph6<< header are ignored."""
    if isinstance(text, str):
        try:
            data = text.encode("ascii")
        except UnicodeEncodeError as exc:
            raise InvalidCharacterError(f"Non-ASCII character at position {exc.start}") from exc
    else:
        data = bytes(text)
    data = data.strip()
    if data.startswith(GRAPH6_HEADER):
        data = data[len(GRAPH6_HEADER):]
    if not data:
        raise MalformedSizeError("Empty graph6 string")
    if data[:1] in (b":", b";", b"&") or data.startswith(b">>sparse6<<") or data.startswith(b">>digraph6<<"):
        raise UnsupportedFormatError("sparse6/digraph6 input is not supported")
    for pos, byte in enumerate(data):
        if not 63 <= byte <= 126:
            raise InvalidCharacterError(f"Byte {byte!r} at position {pos} is outside 63..126")

    if data[0] != 126:
        n, offset = data[0] - 63, 1
    else:
        if len(data) >= 2 and data[1] == 126:
            raise MalformedSizeError(f"Eight-byte size encoding (n > {GRAPH6_MAX_ORDER}) is not supported")
        if len(data) < 4:
            raise MalformedSizeError("Four-byte size encoding is truncated")
        n = (data[1] - 63) << 12 | (data[2] - 63) << 6 | (data[3] - 63)
        offset = 4
    if n == 0:
        raise EmptyGraphError("graph6 input encodes the empty graph (n=0)")

    nbits = n * (n - 1) // 2
    nbytes = (nbits + 5) // 6
    payload = data[offset:]
    if len(payload) < nbytes:
        raise TruncatedPayloadError(f"Expected {nbytes} payload bytes for n={n}, got {len(payload)}")
    if len(payload) > nbytes:
        raise ExcessPayloadError(f"Expected {nbytes} payload bytes for n={n}, got {len(payload)}")
    pad = nbytes * 6 - nbits
    if pad and (payload[-1] - 63) & ((1 << pad) - 1):
        raise NonZeroPaddingError("Trailing padding bits are not zero")

    rows = [0] * n
    k = 0
    for j in range(1, n):
        for i in range(j):
            if (payload[k // 6] - 63) >> (5 - k % 6) & 1:
                rows[i] |= 1 << j
                rows[j] |= 1 << i
            k += 1
    return Graph(n, tuple(rows))


def read_graph6_lines(text: str) -> List[Tuple[int, Graph]]:
    """Parse a family/corpus file body into (1-based line number, graph) pairs."""
    out = []
    for line_no, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        try:
            out.append((line_no, parse_graph6(line)))
        except GraphError as exc:
            raise type(exc)(f"line {line_no}: {exc}") from exc
    return out


def format_graph6_lines(graphs: Iterable[Graph], header: Sequence[str] = ()) -> str:
    lines = [f"# {h}" for h in header]
    lines.extend(emit_graph6(g).decode("ascii") for g in graphs)
    return "\n".join(lines) + "\n"
