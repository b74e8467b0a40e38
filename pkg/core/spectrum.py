"""Exact characteristic polynomials (adjacency / Laplacian) and spectral keys."""
from dataclasses import dataclass
from enum import Enum
from fractions import Fraction
from functools import lru_cache
from typing import List, Sequence, Tuple

import numpy as np

from .graph import EmptyGraphError, Graph, bits


class EigenvalueError(RuntimeError):
    """Symmetric eigensolver failed; symmetric integer matrices always converge, so this is a bug."""


class SpectrumKind(str, Enum):
    ADJACENCY = "adjacency"
    LAPLACIAN = "laplacian"

    @classmethod
    def parse(cls, name: str) -> "SpectrumKind":
        try:
            return cls(name.strip().lower())
        except ValueError as exc:
            raise ValueError(f"Unknown spectrum kind {name!r}. Use: adjacency, laplacian") from exc


class CharPolyMethod(str, Enum):
    FADDEEV_LEVERRIER = "faddeev_leverrier"
    INTERPOLATION = "interpolation"


@dataclass(frozen=True)
class CharPoly:
    """Monic integer polynomial det(xI - M); coeffs[i] is the coefficient of x^i."""

    coeffs: Tuple[int, ...]

    def __post_init__(self) -> None:
        if not self.coeffs or self.coeffs[-1] != 1:
            raise ValueError(f"Characteristic polynomial must be monic, got {self.coeffs}")

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    def evaluate(self, t: int) -> int:
        value = 0
        for c in reversed(self.coeffs):
            value = value * t + c
        return value

    def to_strings(self) -> List[str]:
        """Decimal coefficient strings, degree ascending (certificate form)."""
        return [str(c) for c in self.coeffs]

    @classmethod
    def from_strings(cls, items: Sequence[str]) -> "CharPoly":
        return cls(tuple(int(s) for s in items))

    def __str__(self) -> str:
        terms = []
        for power in range(self.degree, -1, -1):
            c = self.coeffs[power]
            if c == 0:
                continue
            mag = abs(c)
            if power == 0:
                body = str(mag)
            else:
                var = "x" if power == 1 else f"x^{power}"
                body = var if mag == 1 else f"{mag}{var}"
            if not terms:
                terms.append(body if c > 0 else f"-{body}")
            else:
                terms.append(f"+ {body}" if c > 0 else f"- {body}")
        return " ".join(terms) if terms else "0"


def matrix(g: Graph, kind: SpectrumKind) -> List[List[int]]:
    """Dense integer adjacency or Laplacian matrix."""
    rows = []
    for v in range(g.n):
        row = [0] * g.n
        sign = -1 if kind is SpectrumKind.LAPLACIAN else 1
        for u in bits(g.rows[v]):
            row[u] = sign
        if kind is SpectrumKind.LAPLACIAN:
            row[v] = g.degree(v)
        rows.append(row)
    return rows


def bareiss_determinant(m: Sequence[Sequence[int]]) -> int:
    """Exact fraction-free determinant of a square integer matrix."""
    a = [list(row) for row in m]
    n = len(a)
    if n == 0:
        return 1
    sign, prev = 1, 1
    for k in range(n - 1):
        if a[k][k] == 0:
            swap = next((i for i in range(k + 1, n) if a[i][k] != 0), None)
            if swap is None:
                return 0
            a[k], a[swap] = a[swap], a[k]
            sign = -sign
        pivot = a[k][k]
        for i in range(k + 1, n):
            aik = a[i][k]
            row_i, row_k = a[i], a[k]
            for j in range(k + 1, n):
                row_i[j] = (row_i[j] * pivot - aik * row_k[j]) // prev
        prev = pivot
    return sign * a[n - 1][n - 1]


def spanning_tree_count(g: Graph) -> int:
    """Matrix-Tree theorem: any cofactor of the Laplacian."""
    if g.n == 0:
        raise EmptyGraphError("Spanning trees of the empty graph are undefined")
    lap = matrix(g, SpectrumKind.LAPLACIAN)
    return bareiss_determinant([row[1:] for row in lap[1:]])


def char_poly(g: Graph, kind: SpectrumKind, method: CharPolyMethod = CharPolyMethod.FADDEEV_LEVERRIER) -> CharPoly:
    """det(xI - M) with exact integer coefficients."""
    if g.n == 0:
        raise EmptyGraphError("Characteristic polynomial needs n >= 1")
    return _char_poly_cached(g, SpectrumKind(kind), CharPolyMethod(method))


@lru_cache(maxsize=4096)
def _char_poly_cached(g: Graph, kind: SpectrumKind, method: CharPolyMethod) -> CharPoly:
    if method is CharPolyMethod.INTERPOLATION:
        return _by_interpolation(g, kind)
    return _by_faddeev_leverrier(g, kind)


def _by_faddeev_leverrier(g: Graph, kind: SpectrumKind) -> CharPoly:
    # M_1 = I; c_{n-k} = -tr(M M_k) / k; M_{k+1} = M M_k + c_{n-k} I.
    n = g.n
    laplacian = kind is SpectrumKind.LAPLACIAN
    nbrs = [np.array(bits(g.rows[v]), dtype=np.intp) for v in range(n)]
    degrees = [len(nb) for nb in nbrs]
    coeffs = [0] * (n + 1)
    coeffs[n] = 1
    current = np.zeros((n, n), dtype=object)
    for v in range(n):
        current[v, v] = 1
    for k in range(1, n + 1):
        product = np.zeros((n, n), dtype=object)
        for v in range(n):
            if degrees[v]:
                row = current[nbrs[v]].sum(axis=0)
                product[v] = degrees[v] * current[v] - row if laplacian else row
        trace = sum(int(product[v, v]) for v in range(n))
        c, rem = divmod(-trace, k)
        if rem:
            raise RuntimeError(f"Faddeev-LeVerrier step {k} produced a non-integer coefficient")
        coeffs[n - k] = c
        if k < n:
            for v in range(n):
                product[v, v] += c
            current = product
    return CharPoly(tuple(int(c) for c in coeffs))


def _by_interpolation(g: Graph, kind: SpectrumKind) -> CharPoly:
    # det(tI - M) at t = 0..n, then Newton divided differences.
    n = g.n
    m = matrix(g, kind)
    xs = list(range(n + 1))
    ys = []
    for t in xs:
        shifted = [[(t if i == j else 0) - m[i][j] for j in range(n)] for i in range(n)]
        ys.append(Fraction(bareiss_determinant(shifted)))
    table = list(ys)
    newton = [table[0]]
    for level in range(1, n + 1):
        table = [(table[i + 1] - table[i]) / (xs[i + level] - xs[i]) for i in range(len(table) - 1)]
        newton.append(table[0])
    poly = [Fraction(0)] * (n + 1)
    basis = [Fraction(1)]  # prod_{i<level} (x - xs[i]), ascending coefficients
    for level, a in enumerate(newton):
        for i, b in enumerate(basis):
            poly[i] += a * b
        if level < n:
            shifted = [Fraction(0)] + basis
            for i, b in enumerate(basis):
                shifted[i] -= xs[level] * b
            basis = shifted
    if any(c.denominator != 1 for c in poly):
        raise RuntimeError("Interpolated characteristic polynomial has non-integer coefficients")
    return CharPoly(tuple(int(c) for c in poly))


def cospectral(g: Graph, h: Graph, kind: SpectrumKind) -> bool:
    """Equal spectra only; callers add the non-isomorphism requirement themselves."""
    return g.n == h.n and char_poly(g, kind) == char_poly(h, kind)


def spectral_key(g: Graph, kind: SpectrumKind) -> bytes:
    """Grouping key, injective in (kind, order, CharPoly)."""
    kind = SpectrumKind(kind)
    coeffs = ",".join(char_poly(g, kind).to_strings())
    return f"{kind.value}:{g.n}:{coeffs}".encode("ascii")


def float_eigenvalues(g: Graph, kind: SpectrumKind) -> List[float]:
    """Ascending real eigenvalues; for reports and property tests, never for decisions."""
    if g.n == 0:
        raise EmptyGraphError("Eigenvalues need n >= 1")
    m = np.array(matrix(g, SpectrumKind(kind)), dtype=float)
    try:
        values = np.linalg.eigvalsh(m)
    except np.linalg.LinAlgError as exc:
        raise EigenvalueError(f"Eigenvalue iteration failed to converge: {exc}") from exc
    return sorted(float(v) for v in values)
