"""Graph objects for the square of a cycle and the exact matrices built from them.

Vertices of C_N^2 are 0..N-1 and v is adjacent to v +/- 1 and v +/- 2 (mod N).
Matrix entries are stored 0-based; wherever a docstring or a closed-form API
speaks of a 1-based index (i, j), the stored position is (i - 1, j - 1).
"""

import logging
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, List, NamedTuple, Sequence, Tuple, Union

import networkx as nx

from hitting_times.exact_numeric import RationalLike, as_fraction
from hitting_times.exceptions import UnsupportedN, VertexOutOfRange

logger = logging.getLogger(__name__)

# --- Configuration ---
MIN_N = 5
CYCLE_OFFSETS = [1, 2]


# --- Exact matrices ---


@dataclass(frozen=True)
class ExactMatrix:
    """Immutable dense matrix of Fractions."""

    rows: Tuple[Tuple[Fraction, ...], ...]

    def __post_init__(self):
        rows = tuple(tuple(as_fraction(v) for v in row) for row in self.rows)
        if not rows or not rows[0]:
            raise ValueError("ExactMatrix needs at least one row and one column")
        width = len(rows[0])
        if any(len(row) != width for row in rows):
            raise ValueError("ExactMatrix rows must all have the same length")
        object.__setattr__(self, "rows", rows)

    @classmethod
    def from_rows(cls, rows: Iterable[Iterable[RationalLike]]) -> "ExactMatrix":
        return cls(tuple(tuple(row) for row in rows))

    @classmethod
    def identity(cls, n: int) -> "ExactMatrix":
        return cls.from_rows([[1 if i == j else 0 for j in range(n)] for i in range(n)])

    @classmethod
    def zeros(cls, n_rows: int, n_cols: int) -> "ExactMatrix":
        return cls.from_rows([[0] * n_cols for _ in range(n_rows)])

    @classmethod
    def diagonal(cls, values: Sequence[RationalLike]) -> "ExactMatrix":
        n = len(values)
        return cls.from_rows([[values[i] if i == j else 0 for j in range(n)] for i in range(n)])

    @property
    def shape(self) -> Tuple[int, int]:
        return len(self.rows), len(self.rows[0])

    def __getitem__(self, index: Tuple[int, int]) -> Fraction:
        i, j = index
        return self.rows[i][j]

    def column(self, j: int) -> Tuple[Fraction, ...]:
        return tuple(row[j] for row in self.rows)

    def transpose(self) -> "ExactMatrix":
        return ExactMatrix(tuple(zip(*self.rows)))

    def __matmul__(self, other: Union["ExactMatrix", Sequence[RationalLike]]):
        if isinstance(other, ExactMatrix):
            if self.shape[1] != other.shape[0]:
                raise ValueError(f"Cannot multiply {self.shape} by {other.shape}")
            n_cols = other.shape[1]
            result: List[List[Fraction]] = []
            for row in self.rows:
                acc = [Fraction(0)] * n_cols
                for k, a in enumerate(row):
                    if a == 0:
                        continue
                    other_row = other.rows[k]
                    for j in range(n_cols):
                        b = other_row[j]
                        if b != 0:
                            acc[j] += a * b
                result.append(acc)
            return ExactMatrix.from_rows(result)
        vector = [as_fraction(v) for v in other]
        if self.shape[1] != len(vector):
            raise ValueError(f"Cannot multiply {self.shape} by a vector of length {len(vector)}")
        return tuple(sum((a * x for a, x in zip(row, vector) if a != 0 and x != 0), Fraction(0)) for row in self.rows)

    def _elementwise(self, other: "ExactMatrix", sign: int) -> "ExactMatrix":
        if not isinstance(other, ExactMatrix):
            return NotImplemented
        if self.shape != other.shape:
            raise ValueError(f"Shape mismatch: {self.shape} vs {other.shape}")
        return ExactMatrix(
            tuple(tuple(a + sign * b for a, b in zip(ra, rb)) for ra, rb in zip(self.rows, other.rows))
        )

    def __add__(self, other: "ExactMatrix") -> "ExactMatrix":
        return self._elementwise(other, 1)

    def __sub__(self, other: "ExactMatrix") -> "ExactMatrix":
        return self._elementwise(other, -1)

    def __mul__(self, scalar: RationalLike) -> "ExactMatrix":
        if isinstance(scalar, bool) or not isinstance(scalar, (int, Fraction)):
            return NotImplemented
        return ExactMatrix(tuple(tuple(a * scalar for a in row) for row in self.rows))

    __rmul__ = __mul__

    def __neg__(self) -> "ExactMatrix":
        return self * -1

    def minor(self, i: int, j: int) -> "ExactMatrix":
        """Deletes row i and column j (0-based)."""
        return ExactMatrix(
            tuple(tuple(v for c, v in enumerate(row) if c != j) for r, row in enumerate(self.rows) if r != i)
        )

    def is_symmetric(self) -> bool:
        n_rows, n_cols = self.shape
        return n_rows == n_cols and self == self.transpose()

    def to_lists(self) -> List[List[Fraction]]:
        return [list(row) for row in self.rows]

    def __str__(self) -> str:
        return "\n".join("[" + ", ".join(str(v) for v in row) + "]" for row in self.rows)


# --- C_N^2 ---


def require_supported_n(n: int) -> int:
    """Raises UnsupportedN unless n is an int >= MIN_N."""
    if isinstance(n, bool) or not isinstance(n, int):
        raise TypeError(f"N must be an int, got {type(n).__name__}")
    if n < MIN_N:
        raise UnsupportedN(n, MIN_N)
    return n


@dataclass(frozen=True)
class CycleSquare:
    """C_N^2: the cycle on N vertices plus every chord of length two."""

    n: int
    graph: nx.Graph = field(repr=False, compare=False)

    @property
    def vertices(self) -> Tuple[int, ...]:
        return tuple(range(self.n))

    @property
    def edges(self) -> Tuple[Tuple[int, int], ...]:
        return tuple(sorted((min(u, v), max(u, v)) for u, v in self.graph.edges()))

    def neighbors(self, v: int) -> Tuple[int, ...]:
        return tuple(sorted(self.graph.neighbors(v)))

    def degree(self, v: int) -> int:
        return self.graph.degree(v)

    def has_edge(self, u: int, v: int) -> bool:
        return self.graph.has_edge(u, v)


def build_graph(n: int) -> CycleSquare:
    """Builds C_N^2 for N >= 5 (N = 5 gives K_5)."""
    require_supported_n(n)
    graph = nx.circulant_graph(n, CYCLE_OFFSETS)
    logger.debug(f"Built C^2_{n} with {graph.number_of_edges()} edges")
    return CycleSquare(n=n, graph=graph)


def _laplacian_of(graph: nx.Graph, order: Sequence[int]) -> ExactMatrix:
    """Laplacian in the given node order; parallel edges add up, loops are ignored."""
    index = {v: k for k, v in enumerate(order)}
    size = len(order)
    rows = [[0] * size for _ in range(size)]
    for u, v in graph.edges():
        if u == v:
            continue
        a, b = index[u], index[v]
        rows[a][b] -= 1
        rows[b][a] -= 1
        rows[a][a] += 1
        rows[b][b] += 1
    return ExactMatrix.from_rows(rows)


def laplacian(g: CycleSquare) -> ExactMatrix:
    """The N x N Laplacian D - A of C_N^2."""
    return _laplacian_of(g.graph, g.vertices)


def reduced_laplacian(g: CycleSquare) -> ExactMatrix:
    """L': the Laplacian with vertex 0's row and column removed; row k holds vertex k + 1."""
    return laplacian(g).minor(0, 0)


class HalvedSystem(NamedTuple):
    matrix: ExactMatrix
    rhs: Tuple[Fraction, ...]


def build_H(n: int) -> HalvedSystem:
    """
    Folds L' h = 4*1 onto the symmetric half l = 1..floor(N/2).

    H(i, j) = L'(i, j) + L'(i, N - j), except for the middle column j = N/2 of an
    even N, which has no mirror. For even N the last row is halved so that H is
    symmetric, and its right-hand side becomes 2.

    Args:
        n: Cycle length, N >= 5.

    Returns:
        HalvedSystem(matrix, rhs) with a floor(N/2) x floor(N/2) matrix.
    """
    reduced = reduced_laplacian(build_graph(n))
    m = n // 2
    even = n % 2 == 0
    rows: List[List[Fraction]] = []
    for i in range(1, m + 1):
        row = []
        for j in range(1, m + 1):
            value = reduced[i - 1, j - 1]
            if not (even and j == m):
                value += reduced[i - 1, n - j - 1]
            row.append(value)
        rows.append(row)
    rhs = [Fraction(4)] * m
    if even:
        rows[-1] = [v / 2 for v in rows[-1]]
        rhs[-1] = Fraction(2)
    return HalvedSystem(ExactMatrix.from_rows(rows), tuple(rhs))


# --- Merged multigraph ---


def require_vertex(n: int, l: int) -> int:
    """Raises VertexOutOfRange unless 1 <= l <= N - 1."""
    if isinstance(l, bool) or not isinstance(l, int) or not 1 <= l <= n - 1:
        raise VertexOutOfRange(f"Vertex l must lie in 1..{n - 1} (got l={l})")
    return l


def merged_multigraph(g: CycleSquare, l: int) -> nx.MultiGraph:
    """
    Identifies vertices 0 and l of C_N^2.

    The merged vertex keeps the label 0. Edges between 0 and l would become loops
    and are dropped; every other edge is kept, so pairs adjacent to both 0 and l
    end up with multiplicity two.
    """
    require_vertex(g.n, l)

    def rep(v: int) -> int:
        return 0 if v == l else v

    merged = nx.MultiGraph()
    merged.add_nodes_from(v for v in g.vertices if v != l)
    merged.add_edges_from((rep(u), rep(v)) for u, v in g.graph.edges() if rep(u) != rep(v))
    logger.debug(f"Merged 0 and {l} in C^2_{g.n}: {merged.number_of_edges()} edges remain")
    return merged


def merged_laplacian(g: CycleSquare, l: int) -> ExactMatrix:
    """Laplacian of the 0/l-merged multigraph, merged vertex first, then the rest ascending."""
    merged = merged_multigraph(g, l)
    order = [0] + sorted(v for v in merged.nodes if v != 0)
    return _laplacian_of(merged, order)
