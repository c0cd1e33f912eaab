"""
Simple undirected graphs stored as adjacency-row bitsets.

Vertex ``v`` of a graph of order ``n`` is an integer in ``[0, n)``; ``rows[v]`` has bit ``u``
set exactly when ``u`` and ``v`` are adjacent. Graphs are immutable values.
"""

from collections.abc import Iterable, Iterator, Sequence
from dataclasses import dataclass
from pathlib import Path
from typing import Union

from .constants import (
    GRAPH6_BITS_PER_CHAR,
    GRAPH6_MAX_CHAR,
    GRAPH6_MAX_ORDER,
    GRAPH6_OFFSET,
    MAX_ORDER,
)
from .errors import Graph6Error, GraphError
from .logging_config import get_logger

logger = get_logger(__name__)

VertexId = int


def iter_bits(mask: int) -> Iterator[int]:
    """Yield the indices of the set bits of mask in ascending order."""
    while mask:
        low = mask & -mask
        yield low.bit_length() - 1
        mask ^= low


def vertex_mask(vertices: Iterable[int]) -> int:
    """Bitset with one bit per listed vertex."""
    mask = 0
    for v in vertices:
        mask |= 1 << v
    return mask


@dataclass(frozen=True)
class Graph:
    """A simple graph with at most 64 vertices."""

    order: int
    rows: tuple[int, ...]

    def __post_init__(self) -> None:
        if not 0 <= self.order <= MAX_ORDER:
            raise GraphError(f"order {self.order} outside 0..{MAX_ORDER}")
        if len(self.rows) != self.order:
            raise GraphError(f"expected {self.order} adjacency rows, got {len(self.rows)}")
        full = (1 << self.order) - 1
        for v, row in enumerate(self.rows):
            if row & ~full:
                raise GraphError(f"row {v} has bits beyond order {self.order}")
            if row >> v & 1:
                raise GraphError(f"loop at vertex {v}")
            for u in iter_bits(row):
                if not self.rows[u] >> v & 1:
                    raise GraphError(f"edge {v}-{u} is not symmetric")

    def __repr__(self) -> str:
        return f"Graph(order={self.order}, edges={self.edge_count})"

    @property
    def vertices(self) -> range:
        return range(self.order)

    @property
    def full_mask(self) -> int:
        return (1 << self.order) - 1

    @property
    def edge_count(self) -> int:
        return sum(bin(row).count("1") for row in self.rows) // 2

    def _check_vertex(self, v: int) -> None:
        if not 0 <= v < self.order:
            raise GraphError(f"vertex {v} out of range for order {self.order}")

    def has_edge(self, u: VertexId, v: VertexId) -> bool:
        self._check_vertex(u)
        self._check_vertex(v)
        return bool(self.rows[u] >> v & 1)

    def neighbors(self, v: VertexId) -> list[VertexId]:
        self._check_vertex(v)
        return list(iter_bits(self.rows[v]))

    def closed_row(self, v: VertexId) -> int:
        """Bitset of the closed neighbourhood N[v]."""
        return self.rows[v] | (1 << v)

    def degree(self, v: VertexId) -> int:
        self._check_vertex(v)
        return bin(self.rows[v]).count("1")

    def degrees(self) -> list[int]:
        return [bin(row).count("1") for row in self.rows]

    def edges(self) -> list[tuple[VertexId, VertexId]]:
        """Edges (u, v) with u < v in lexicographic order."""
        return [
            (u, v) for u in self.vertices for v in iter_bits(self.rows[u] >> (u + 1) << (u + 1))
        ]

    def adjacency_matrix(self) -> list[list[int]]:
        return [[row >> j & 1 for j in range(self.order)] for row in self.rows]

    def isolated_vertices(self) -> list[VertexId]:
        return [v for v in self.vertices if not self.rows[v]]

    def components(self) -> list[list[VertexId]]:
        """Connected components, each sorted, ordered by lowest vertex."""
        seen = 0
        result = []
        for start in self.vertices:
            if seen >> start & 1:
                continue
            component = frontier = 1 << start
            while frontier:
                reached = 0
                for v in iter_bits(frontier):
                    reached |= self.rows[v]
                frontier = reached & ~component
                component |= frontier
            seen |= component
            result.append(list(iter_bits(component)))
        return result

    def is_connected(self) -> bool:
        return self.order <= 1 or len(self.components()) == 1

    def complement(self) -> "Graph":
        full = self.full_mask
        return Graph(self.order, tuple(full & ~row & ~(1 << v) for v, row in enumerate(self.rows)))

    def induced_subgraph(self, keep: Iterable[VertexId]) -> "Graph":
        """Subgraph on keep, relabelled in ascending original order."""
        kept = sorted(set(keep))
        for v in kept:
            self._check_vertex(v)
        position = {v: i for i, v in enumerate(kept)}
        rows = []
        for v in kept:
            row = 0
            for u in iter_bits(self.rows[v]):
                if u in position:
                    row |= 1 << position[u]
            rows.append(row)
        return Graph(len(kept), tuple(rows))

    def delete_vertex(self, v: VertexId) -> "Graph":
        self._check_vertex(v)
        return self.induced_subgraph(u for u in self.vertices if u != v)

    def add_vertex(self, neighbors: Iterable[VertexId]) -> "Graph":
        """Append a new vertex (index ``order``) adjacent to the given vertices."""
        if self.order + 1 > MAX_ORDER:
            raise GraphError(f"order {self.order + 1} exceeds {MAX_ORDER}")
        new = self.order
        mask = 0
        for u in neighbors:
            self._check_vertex(u)
            mask |= 1 << u
        rows = [row | (1 << new) if mask >> v & 1 else row for v, row in enumerate(self.rows)]
        rows.append(mask)
        return Graph(new + 1, tuple(rows))

    def relabel(self, perm: Sequence[VertexId]) -> "Graph":
        """Image of the graph under v -> perm[v]."""
        if sorted(perm) != list(self.vertices):
            raise GraphError("relabel needs a permutation of the vertices")
        rows = [0] * self.order
        for v, row in enumerate(self.rows):
            image = 0
            for u in iter_bits(row):
                image |= 1 << perm[u]
            rows[perm[v]] = image
        return Graph(self.order, tuple(rows))


def from_edges(order: int, edges: Iterable[tuple[VertexId, VertexId]]) -> Graph:
    """Build a graph from an edge list; repeated edges are ignored, loops rejected."""
    if not 0 <= order <= MAX_ORDER:
        raise GraphError(f"order {order} outside 0..{MAX_ORDER}")
    rows = [0] * order
    for u, v in edges:
        if not (0 <= u < order and 0 <= v < order):
            raise GraphError(f"edge {u}-{v} out of range for order {order}")
        if u == v:
            raise GraphError(f"loop at vertex {u}")
        rows[u] |= 1 << v
        rows[v] |= 1 << u
    return Graph(order, tuple(rows))


def empty(n: int) -> Graph:
    """n isolated vertices."""
    return Graph(n, (0,) * n)


def complete(n: int) -> Graph:
    if n < 1:
        raise GraphError("complete graph needs n >= 1")
    full = (1 << n) - 1
    return Graph(n, tuple(full & ~(1 << v) for v in range(n)))


def path(n: int) -> Graph:
    if n < 1:
        raise GraphError("path needs n >= 1")
    return from_edges(n, ((i, i + 1) for i in range(n - 1)))


def cycle(n: int) -> Graph:
    if n < 3:
        raise GraphError("cycle needs n >= 3")
    return from_edges(n, ((i, (i + 1) % n) for i in range(n)))


def complete_multipartite(parts: Sequence[int]) -> Graph:
    """K_{n_1,...,n_l}: parts are independent sets, all pairs across parts adjacent."""
    if not parts:
        raise GraphError("complete_multipartite needs at least one part")
    if any(size < 1 for size in parts):
        raise GraphError(f"part sizes must be positive: {list(parts)}")
    order = sum(parts)
    if order > MAX_ORDER:
        raise GraphError(f"order {order} exceeds {MAX_ORDER}")

    full = (1 << order) - 1
    rows = []
    start = 0
    for size in parts:
        block = ((1 << size) - 1) << start
        rows.extend(full & ~block for _ in range(size))
        start += size
    return Graph(order, tuple(rows))


def disjoint_union(g: Graph, h: Graph) -> Graph:
    """G + H with the vertices of h shifted by g.order."""
    order = g.order + h.order
    if order > MAX_ORDER:
        raise GraphError(f"order {order} exceeds {MAX_ORDER}")
    return Graph(order, g.rows + tuple(row << g.order for row in h.rows))


def _upper_triangle_bits(g: Graph) -> Iterator[int]:
    """Upper-triangle adjacency bits in column-major order: (0,1), (0,2), (1,2), (0,3), ..."""
    for j in range(1, g.order):
        for i in range(j):
            yield g.rows[i] >> j & 1


def to_graph6(g: Graph) -> str:
    """Encode as short-form graph6 (no header)."""
    if g.order > GRAPH6_MAX_ORDER:
        raise GraphError(f"short-form graph6 holds at most {GRAPH6_MAX_ORDER} vertices")

    chars = [chr(g.order + GRAPH6_OFFSET)]
    bits = list(_upper_triangle_bits(g))
    bits.extend([0] * (-len(bits) % GRAPH6_BITS_PER_CHAR))
    for k in range(0, len(bits), GRAPH6_BITS_PER_CHAR):
        value = 0
        for bit in bits[k : k + GRAPH6_BITS_PER_CHAR]:
            value = value << 1 | bit
        chars.append(chr(value + GRAPH6_OFFSET))
    return "".join(chars)


def from_graph6(text: Union[str, bytes]) -> Graph:
    """Decode a short-form graph6 string; an optional ``>>graph6<<`` header is skipped."""
    if isinstance(text, bytes):
        text = text.decode("ascii", errors="replace")
    text = text.strip()
    offset = 0
    if text.startswith(">>graph6<<"):
        offset = len(">>graph6<<")
        text = text[offset:]
    if not text:
        raise Graph6Error("empty graph6 string", offset)

    values = []
    for i, ch in enumerate(text):
        value = ord(ch)
        if not GRAPH6_OFFSET <= value <= GRAPH6_MAX_CHAR:
            raise Graph6Error(f"invalid graph6 character {ch!r}", offset + i)
        values.append(value - GRAPH6_OFFSET)

    order = values[0]
    if order > GRAPH6_MAX_ORDER:
        raise Graph6Error("long-form graph6 is not supported", offset)

    nbits = order * (order - 1) // 2
    needed = -(-nbits // GRAPH6_BITS_PER_CHAR)
    if len(values) - 1 < needed:
        raise Graph6Error(
            f"truncated graph6: {needed} data bytes needed, {len(values) - 1} given",
            offset + len(values),
        )
    if len(values) - 1 > needed:
        raise Graph6Error("trailing characters after graph6 data", offset + 1 + needed)
    padding = needed * GRAPH6_BITS_PER_CHAR - nbits
    if needed and values[needed] & ((1 << padding) - 1):
        raise Graph6Error("nonzero padding bits in the last graph6 byte", offset + needed)

    rows = [0] * order
    k = 0
    for j in range(1, order):
        for i in range(j):
            value = values[1 + k // GRAPH6_BITS_PER_CHAR]
            if value >> (GRAPH6_BITS_PER_CHAR - 1 - k % GRAPH6_BITS_PER_CHAR) & 1:
                rows[i] |= 1 << j
                rows[j] |= 1 << i
            k += 1
    return Graph(order, tuple(rows))


def read_graph6_file(path: Path) -> list[Graph]:
    """Read a newline-delimited graph6 file, skipping blank lines."""
    graphs = []
    with open(path) as f:
        for lineno, line in enumerate(f, start=1):
            line = line.strip()
            if not line:
                continue
            try:
                graphs.append(from_graph6(line))
            except Graph6Error as e:
                raise Graph6Error(f"{path}:{lineno}: {e}") from e
    logger.debug(f"Read {len(graphs)} graphs from {path}")
    return graphs


def write_graph6_file(path: Path, graphs: Iterable[Graph]) -> int:
    """Write graphs one per line; returns the number written."""
    count = 0
    with open(path, "w") as f:
        for g in graphs:
            f.write(to_graph6(g) + "\n")
            count += 1
    logger.debug(f"Wrote {count} graphs to {path}")
    return count
